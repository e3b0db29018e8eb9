import json
from fractions import Fraction

import pytest

from datasets.formats import (ParseError, market_to_json, parse_market, parse_portfolios, parse_scheme,
                              read_scheme, scheme_to_csv)
from models.market import MarketError, Portfolio, validate_market
from models.scheme import MatrixScheme

BINOMIAL = {
    'assets': ['bond', 'stock'],
    'states': ['up', 'down'],
    'payoffs': [['1', '1'], ['2', '1/2']],
    'prices': ['1', '1'],
}


def _market_text(**changes):
    doc = dict(BINOMIAL)
    doc.update(changes)
    return json.dumps(doc)


class TestSchemeCsv:

    def test_plain_rows(self):
        scheme, header = parse_scheme('1,0\n0,1\n')
        assert header is None
        assert scheme == MatrixScheme([[1, 0], [0, 1]])

    def test_header_and_rationals(self):
        scheme, header = parse_scheme('state_0,state_1\n1/2,-3\n')
        assert header == ['state_0', 'state_1']
        assert scheme.act(0) == (Fraction(1, 2), Fraction(-3))

    def test_ragged_rows(self):
        with pytest.raises(ParseError) as err:
            parse_scheme('1,0\n0,1,2\n', 'ragged.csv')
        assert err.value.line == 2
        assert err.value.column == 3
        assert str(err.value).startswith('ragged.csv:2:3:')

    def test_decimal_cell_refused(self):
        with pytest.raises(ParseError) as err:
            parse_scheme('1,0.5\n')
        assert (err.value.line, err.value.column) == (1, 2)

    def test_undecodable_bytes(self, tmp_path):
        path = tmp_path / 'utf16.csv'
        path.write_bytes(b'\xff\xfe1\x000\x00')
        with pytest.raises(ParseError):
            read_scheme(str(path))

    def test_bad_cell_located(self):
        with pytest.raises(ParseError) as err:
            parse_scheme('1,0\n0,x\n')
        assert (err.value.line, err.value.column) == (2, 2)

    def test_empty_scheme_with_header(self):
        scheme, _ = parse_scheme('state_0,state_1,state_2\n')
        assert len(scheme) == 0
        assert scheme.state_count == 3

    def test_blank_lines_skipped(self):
        scheme, _ = parse_scheme('\n1,2\n\n3,4\n')
        assert len(scheme) == 2

    def test_written_csv_reads_back(self, tmp_path):
        scheme = MatrixScheme([[Fraction(1, 3), -1], [0, 2]])
        path = tmp_path / 'scheme.csv'
        path.write_text(scheme_to_csv(scheme))
        assert read_scheme(str(path))[0] == scheme


class TestPortfolios:

    def test_width_enforced(self):
        assert parse_portfolios('1,0\n0,1/2\n', 2) == [Portfolio((1, 0)), Portfolio((0, Fraction(1, 2)))]
        with pytest.raises(ParseError):
            parse_portfolios('1,0,0\n', 2)


class TestMarketJson:

    def test_binomial(self):
        market, assets, states = parse_market(_market_text())
        assert assets == ['bond', 'stock']
        assert states == ['up', 'down']
        assert market.payoffs[1] == (2, Fraction(1, 2))

    def test_riskless_flag(self):
        market, assets, _ = parse_market(_market_text(assets=[{'name': 'cash', 'riskless': True}, 'stock']))
        assert assets == ['cash', 'stock']

    def test_first_asset_must_be_riskless(self):
        with pytest.raises(ParseError):
            parse_market(_market_text(assets=['stock', 'bond']))

    def test_integer_numbers_accepted(self):
        market, _, _ = parse_market(_market_text(prices=[1, 1]))
        assert market.prices == (1, 1)

    def test_floats_refused(self):
        with pytest.raises(ParseError):
            parse_market(_market_text(prices=[1, 0.5]))

    @pytest.mark.parametrize('field', ['assets', 'states'])
    def test_names_must_be_lists(self, field):
        with pytest.raises(ParseError):
            parse_market(_market_text(**{field: 5}))

    def test_exponent_string_refused(self):
        with pytest.raises(ParseError):
            parse_market(_market_text(prices=['1e0', '1']))

    def test_syntax_error_located(self):
        with pytest.raises(ParseError) as err:
            parse_market('{"assets": [\n  "bond",\n}', 'broken.json')
        assert err.value.line == 3

    def test_missing_field(self):
        doc = dict(BINOMIAL)
        del doc['prices']
        with pytest.raises(ParseError):
            parse_market(json.dumps(doc))

    def test_shape_mismatch(self):
        with pytest.raises(ParseError):
            parse_market(_market_text(payoffs=[['1', '1'], ['2']]))

    def test_riskless_row_violation(self):
        with pytest.raises(MarketError):
            parse_market(_market_text(payoffs=[['1', '2'], ['2', '1/2']]))

    def test_written_json_reads_back(self):
        market = validate_market([[1, 1, 1], ['-1/2', 0, 3]], ['9/10', '1/7'])
        assert parse_market(market_to_json(market))[0] == market
