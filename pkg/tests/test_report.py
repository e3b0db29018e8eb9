from fractions import Fraction

import pytest

from models.market import Portfolio
from models.scheme import MatrixScheme, Ranking, UncertaintyWitness
from utils.rational import to_fraction
from utils.report import (VerdictReport, file_digest, matrix_witness, parse, portfolio_witness,
                          ranking_witness, serialize, uncertainty_witness)
from utils.table import format_table, render_scheme


def test_report_round_trip():
    witness = portfolio_witness('strong_branch_1', Portfolio((Fraction(-1), Fraction(1, 3))),
                                Fraction(0), (Fraction(2, 3), Fraction(0)))
    report = VerdictReport('check-market', 'sha256:00', 'arbitrage', witness, 12)
    assert parse(serialize(report)) == report


def test_rationals_never_floats():
    witness = portfolio_witness('strong_branch_1', Portfolio((Fraction(1, 3),)), Fraction(-1, 7), (Fraction(5),))
    text = serialize(VerdictReport('check-market', 'sha256:00', 'arbitrage', witness, 0))
    assert '"1/3"' in text and '"-1/7"' in text and '"5"' in text
    assert [to_fraction(v) for v in parse(text).witness['portfolio']] == [Fraction(1, 3)]


def test_serialize_is_sorted_and_stable():
    report = VerdictReport('check-scheme', 'sha256:ab', 'uncertainty',
                           uncertainty_witness(UncertaintyWitness(0, 1, 1, 0)), 0)
    text = serialize(report)
    assert text == serialize(parse(text))
    assert text.index('"act_a"') < text.index('"act_b"') < text.index('"state_a"')


def test_ranking_and_matrix_witnesses():
    assert ranking_witness(Ranking({1: 0, 0: 1})) == {'0': 1, '1': 0}
    assert matrix_witness([(Fraction(1, 2), 0)]) == [['1/2', '0']]
    assert uncertainty_witness(None) is None


def test_file_digest(tmp_path):
    path = tmp_path / 'a.csv'
    path.write_text('1,0\n')
    other = tmp_path / 'b.csv'
    other.write_text('1,0\n')
    assert file_digest(str(path)) == file_digest(str(other))
    assert file_digest(str(path)).startswith('sha256:')


def test_tables():
    assert format_table([['a', 'bb'], ['-1', '2']]) == ' a   bb\n-1   2'
    text = render_scheme(MatrixScheme([[1, 0], [0, 1]]), witness=UncertaintyWitness(0, 1, 1, 0))
    assert text.splitlines()[1].split() == ['d0', '1*', '0*']


@pytest.mark.parametrize('text', ['0.1', '1e3', '1/0', '', '1/-2', 'nan'])
def test_only_integer_and_ratio_literals(text):
    with pytest.raises(ValueError):
        to_fraction(text)


def test_ratio_literals():
    assert to_fraction(' -3/6 ') == Fraction(-1, 2)
    assert to_fraction('+4') == 4
