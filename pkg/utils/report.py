"""JSON verdict reports written by the command-line front end."""
import collections
import hashlib
import json

from utils.rational import format_fraction, format_vector

EXIT_DECIDED = 0
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_INCONSISTENT = 4

VerdictReport = collections.namedtuple(
    'VerdictReport', ('command', 'input_digest', 'verdict', 'witness', 'elapsed_ms'))


def file_digest(path):
    h = hashlib.sha256()
    with open(path, 'rb') as fp:
        for chunk in iter(lambda: fp.read(1 << 16), b''):
            h.update(chunk)
    return 'sha256:' + h.hexdigest()


def serialize(report):
    return json.dumps(report._asdict(), sort_keys=True, indent=2) + '\n'


def parse(text):
    return VerdictReport(**json.loads(text))


def uncertainty_witness(witness):
    return None if witness is None else dict(witness._asdict())


def portfolio_witness(kind, portfolio, price, flows):
    return {
        'kind': kind,
        'portfolio': format_vector(portfolio.holdings),
        'cost': format_fraction(price),
        'cash_flows': format_vector(flows),
    }


def ranking_witness(ranking):
    return {str(act): rank for act, rank in sorted(ranking.ranks.items())}


def matrix_witness(rows):
    return [format_vector(row) for row in rows]


class InconsistencyError(RuntimeError):
    """Two independent decision procedures disagreed; carries the report."""

    def __init__(self, report, table=None):
        self.report = report
        self.table = table
        super(InconsistencyError, self).__init__(
            "{} found an inconsistency: {}".format(report.command, report.witness))
