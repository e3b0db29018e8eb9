"""Readers and writers for scheme CSV, portfolio CSV and market JSON files."""
import csv
import io
import json
import re
from numbers import Integral

from models.market import Portfolio, validate_market
from models.scheme import MatrixScheme
from utils.rational import format_fraction, to_fraction

HEADER_CELL = re.compile(r'^[A-Za-z_][\w.\- ]*$')


class ParseError(ValueError):
    """File-format problem, located by 1-based line and column when known."""

    def __init__(self, message, path='<string>', line=None, column=None):
        self.message = message
        self.path = path
        self.line = line
        self.column = column
        super(ParseError, self).__init__(str(self))

    def __str__(self):
        where = self.path
        if self.line is not None:
            where += ':{}'.format(self.line)
            if self.column is not None:
                where += ':{}'.format(self.column)
        return '{}: {}'.format(where, self.message)


def _read_text(path):
    try:
        with open(path, 'r', encoding='utf-8', newline='') as fp:
            return fp.read()
    except UnicodeDecodeError as e:
        raise ParseError("not UTF-8 text: byte {} at offset {}".format(hex(e.object[e.start]), e.start), path)


def _csv_rows(text, path):
    """(line number, cells) for every non-blank CSV row."""
    for line_no, cells in enumerate(csv.reader(io.StringIO(text)), start=1):
        cells = [c.strip() for c in cells]
        if cells and any(cells):
            yield line_no, cells


def _parse_cells(cells, path, line_no):
    values = []
    for col, cell in enumerate(cells, start=1):
        try:
            values.append(to_fraction(cell))
        except (TypeError, ValueError):
            raise ParseError("not a rational: {!r}".format(cell), path, line_no, col)
    return values


def parse_rows(text, path='<string>', width=None):
    """Rational rows of a CSV body plus the optional header of state names."""
    header, rows = None, []
    for line_no, cells in _csv_rows(text, path):
        if header is None and not rows and all(HEADER_CELL.match(c) for c in cells):
            header = cells
            width = width if width is not None else len(cells)
            continue
        if width is None:
            width = len(cells)
        if len(cells) != width:
            raise ParseError("expected {} fields, found {}".format(width, len(cells)),
                             path, line_no, min(len(cells), width) + 1)
        rows.append(_parse_cells(cells, path, line_no))
    return header, rows, width


def parse_scheme(text, path='<string>'):
    """One act per row, one state per column; optional ``state_0,...`` header."""
    header, rows, width = parse_rows(text, path)
    return MatrixScheme(rows, width if width is not None else 1), header


def read_scheme(path):
    return parse_scheme(_read_text(path), path)


def write_scheme(scheme, fp, state_names=None):
    state_names = state_names or ['state_{}'.format(t) for t in range(scheme.state_count)]
    writer = csv.writer(fp, lineterminator='\n')
    writer.writerow(state_names)
    for act in scheme.acts:
        writer.writerow([format_fraction(v) for v in act])


def scheme_to_csv(scheme, state_names=None):
    out = io.StringIO()
    write_scheme(scheme, out, state_names)
    return out.getvalue()


def parse_portfolios(text, n_assets, path='<string>'):
    _, rows, _ = parse_rows(text, path, width=n_assets)
    return [Portfolio(tuple(r)) for r in rows]


def read_portfolios(path, n_assets):
    return parse_portfolios(_read_text(path), n_assets, path)


def _json_rational(value, path, where):
    if isinstance(value, bool) or not isinstance(value, (Integral, str)):
        raise ParseError("{}: expected an integer or a 'p/q' string, got {!r}".format(where, value), path)
    try:
        return to_fraction(value)
    except (TypeError, ValueError):
        raise ParseError("{}: not a rational: {!r}".format(where, value), path)


def _asset_name(entry, path, index):
    if isinstance(entry, str):
        return entry, entry.lower() == 'bond'
    if isinstance(entry, dict) and isinstance(entry.get('name'), str):
        return entry['name'], bool(entry.get('riskless', False)) or entry['name'].lower() == 'bond'
    raise ParseError("assets[{}]: expected a name or {{\"name\": ..., \"riskless\": ...}}".format(index), path)


def parse_market(text, path='<string>'):
    """Market JSON with ``assets``, ``states``, ``payoffs`` and ``prices``.

    Returns:
        (Market, asset names, state names). Market-level violations (the
        riskless row, the riskless price) surface as MarketError from
        validate_market; everything structural is a ParseError.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, path, e.lineno, e.colno)
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", path)
    for key in ('assets', 'states', 'payoffs', 'prices'):
        if key not in doc:
            raise ParseError("missing field {!r}".format(key), path)
    if not isinstance(doc['assets'], list) or not isinstance(doc['states'], list):
        raise ParseError("assets and states must be lists", path)
    assets = [_asset_name(a, path, i) for i, a in enumerate(doc['assets'])]
    states = doc['states']
    if not assets or not states:
        raise ParseError("assets and states must be non-empty lists", path)
    if not assets[0][1]:
        raise ParseError("the first asset must be named 'bond' or flagged riskless", path)
    payoffs, prices = doc['payoffs'], doc['prices']
    if not isinstance(payoffs, list) or len(payoffs) != len(assets):
        raise ParseError("payoffs must have one row per asset ({})".format(len(assets)), path)
    rows = []
    for i, row in enumerate(payoffs):
        if not isinstance(row, list) or len(row) != len(states):
            raise ParseError("payoffs[{}] must have one entry per state ({})".format(i, len(states)), path)
        rows.append([_json_rational(v, path, 'payoffs[{}][{}]'.format(i, t)) for t, v in enumerate(row)])
    if not isinstance(prices, list) or len(prices) != len(assets):
        raise ParseError("prices must have one entry per asset ({})".format(len(assets)), path)
    prices = [_json_rational(v, path, 'prices[{}]'.format(i)) for i, v in enumerate(prices)]
    market = validate_market(rows, prices)
    return market, [name for name, _ in assets], [str(s) for s in states]


def read_market(path):
    return parse_market(_read_text(path), path)


def market_to_json(market, assets=None, states=None):
    n, m = len(market.prices), len(market.payoffs[0])
    assets = assets or ['bond'] + ['asset_{}'.format(i) for i in range(1, n)]
    states = states or ['state_{}'.format(t) for t in range(m)]
    doc = {
        'assets': list(assets),
        'states': list(states),
        'payoffs': [[format_fraction(v) for v in row] for row in market.payoffs],
        'prices': [format_fraction(v) for v in market.prices],
    }
    return json.dumps(doc, indent=2) + '\n'
