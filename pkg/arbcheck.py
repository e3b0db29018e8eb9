import argparse
import logging
import sys
import time

from configs.config import parse_args, state_price_schedule
from datasets.formats import ParseError, read_market, read_portfolios, read_scheme, write_scheme
from models.market import (NONE, STATE_PRICE_SCHEDULE, MarketError, WitnessError, cash_flows,
                           corresponding_scheme, cost, discount_prices, find_arbitrage, find_weak_arbitrage,
                           profit_matrix)
from models.scheme import (DOMINATION, ENFORCED, MatrixScheme, SchemeError,
                           build_projection, build_two_distinct_projections,
                           contains_enforced_uncertainty, contains_uncertainty)
from utils.oracle import check_lemma1, check_theorem2, is_consistent
from utils.rational import format_vector
from utils.report import (EXIT_DECIDED, EXIT_INCONSISTENT, EXIT_INVALID, EXIT_PARSE, InconsistencyError,
                          VerdictReport, file_digest, matrix_witness, portfolio_witness, ranking_witness,
                          serialize, uncertainty_witness)
from utils.table import render_market, render_scheme

logger = logging.getLogger('arbcheck')

parser = argparse.ArgumentParser(
    description="Decide uncertainty in matrix decision schemes and arbitrage in finite markets.")
subparsers = parser.add_subparsers(dest='command', required=True)

common = argparse.ArgumentParser(add_help=False)
common.add_argument("--config", help="Path to a config file merged over configs/default.yaml.", default=None)
common.add_argument("--pretty", help="Print a text table before the JSON report.", action='store_true')
common.add_argument("--verbose", help="Log at DEBUG level on stderr.", action='store_true')


def _subcommand(name, help_text, path_help):
    sub = subparsers.add_parser(name, help=help_text, parents=[common])
    sub.add_argument("path", help=path_help)
    return sub


def _non_negative_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected an integer. Got {!r}".format(text))
    if value < 0:
        raise argparse.ArgumentTypeError("expected a non-negative integer. Got {}".format(value))
    return value


def _with_opts(sub):
    sub.add_argument("opts", nargs=argparse.REMAINDER,
                     help="Override config values. Example: verify.samples 200 report.timing False")
    return sub


_sub = _subcommand('check-scheme', "Does the scheme contain uncertainty?", "Scheme CSV.")
_sub.add_argument("--weak", help="Use enforced domination (strict in every state).", action='store_true')
_with_opts(_sub)

_sub = _subcommand('check-market', "Does the market admit an arbitrage portfolio?", "Market JSON.")
_sub.add_argument("--weak", help="Decide weak arbitrage (negative price, nonnegative cash-flows).",
                  action='store_true')
_sub.add_argument("--no-discount", help="Decide on the raw prices instead of p / p1.", action='store_true')
_with_opts(_sub)

_sub = _subcommand('projections', "One projection, and a second one when it is not unique.", "Scheme CSV.")
_sub.add_argument("--weak", help="Extend enforced domination instead of domination.", action='store_true')
_with_opts(_sub)

_sub = _subcommand('corresponding-scheme', "Profit matrix B and profit vectors of portfolios.", "Market JSON.")
_sub.add_argument("--portfolios", help="CSV of portfolios, one per row.", default=None)
_sub.add_argument("--out", help="Write the profit vectors as a scheme CSV here.", default=None)
_with_opts(_sub)

_sub = _subcommand('verify', "Cross-check the arbitrage detector against the scheme route.", "Market JSON.")
_sub.add_argument("--samples", help="Sampled portfolios.", type=_non_negative_int, default=None)
_sub.add_argument("--seed", help="Sampling seed.", type=_non_negative_int, default=None)
_sub.add_argument("--weak", help="Check the weak-arbitrage correspondence.", action='store_true')
_with_opts(_sub)


def _report(command, path, verdict, witness, start, timing):
    elapsed = int(round((time.perf_counter() - start) * 1000)) if timing else 0
    return VerdictReport(command, file_digest(path), verdict, witness, elapsed)


def cmd_check_scheme(path, weak=False, timing=True):
    start = time.perf_counter()
    scheme, header = read_scheme(path)
    witness = (contains_enforced_uncertainty if weak else contains_uncertainty)(scheme)
    verdict = 'no_uncertainty' if witness is None else 'uncertainty'
    logger.info("%s: %d acts, %d states, %s", path, len(scheme), scheme.state_count, verdict)
    report = _report('check-scheme', path, verdict, uncertainty_witness(witness), start, timing)
    return report, render_scheme(scheme, header, witness=witness)


def cmd_check_market(path, weak=False, discount=True, schedule=STATE_PRICE_SCHEDULE, timing=True):
    start = time.perf_counter()
    market, assets, states = read_market(path)
    verdict = (find_weak_arbitrage if weak else find_arbitrage)(market, discount, schedule)
    target = verdict.market
    if verdict.kind == NONE:
        psi = verdict.state_prices
        witness = {'state_prices': None if psi is None else format_vector(psi)}
    else:
        x = verdict.witness
        witness = portfolio_witness(verdict.kind, x, cost(target, x), cash_flows(target, x))
    witness['discounted'] = discount
    logger.info("%s: %s", path, verdict.kind)
    report = _report('check-market', path, 'no_arbitrage' if verdict.kind == NONE else 'arbitrage',
                     witness, start, timing)
    return report, render_market(target, assets, states)


def cmd_projections(path, weak=False, timing=True):
    start = time.perf_counter()
    scheme, header = read_scheme(path)
    relation = ENFORCED if weak else DOMINATION
    pair = build_two_distinct_projections(scheme, relation)
    rankings = [build_projection(scheme, relation)] if pair is None else list(pair)
    verdict = 'unique' if pair is None else 'not_unique'
    report = _report('projections', path, verdict,
                     {'relation': relation, 'rankings': [ranking_witness(r) for r in rankings]},
                     start, timing)
    table = '\n\n'.join(render_scheme(scheme, header, ranking=r) for r in rankings)
    return report, table


def cmd_corresponding_scheme(path, portfolios=None, out=None, timing=True):
    """B of the discounted market, and B^T x for every supplied portfolio.

    Without portfolios the scheme written is B itself: one act per asset.
    """
    start = time.perf_counter()
    market, assets, states = read_market(path)
    target = discount_prices(market)
    B = profit_matrix(target)
    witness = {'profit_matrix': matrix_witness(B)}
    if portfolios is not None:
        scheme = corresponding_scheme(target, read_portfolios(portfolios, len(assets)))
        witness['profits'] = matrix_witness(scheme.acts)
        names = ['x{}'.format(i) for i in range(len(scheme))]
    else:
        scheme = MatrixScheme(B, len(states))
        names = list(assets)
    if out is not None:
        with open(out, 'w', newline='') as fp:
            write_scheme(scheme, fp, states)
    report = _report('corresponding-scheme', path, 'computed', witness, start, timing)
    return report, render_scheme(scheme, states, act_names=names)


def _procedure(verdict):
    holdings = None if verdict.witness is None else format_vector(verdict.witness.holdings)
    return {'found': verdict.found, 'portfolio': holdings}


def _check(equivalence):
    return {
        'detector': _procedure(equivalence.procedure_a_verdict),
        'reference': _procedure(equivalence.procedure_b_verdict),
        'agree': equivalence.agree,
        'failures': list(equivalence.failures),
    }


def cmd_verify(path, samples=1000, seed=0, weak=False, radius=3, denominator=4, timing=True):
    """Raises InconsistencyError, carrying the full report, when the routes disagree."""
    start = time.perf_counter()
    market, assets, states = read_market(path)
    checks = [check_theorem2(market, samples, seed, weak, radius, denominator)]
    if not weak:
        checks.append(check_lemma1(market))
    scheme_check = _check(checks[0])
    scheme_check['dominated_pairs'] = checks[0].dominated_pairs
    witness = {'samples': samples, 'seed': seed, 'weak': weak, 'corresponding_scheme': scheme_check}
    if not weak:
        witness['positive_decision'] = _check(checks[1])
    consistent = all(is_consistent(c) for c in checks)
    report = _report('verify', path, 'consistent' if consistent else 'inconsistent', witness, start, timing)
    table = render_market(market, assets, states)
    if not consistent:
        raise InconsistencyError(report, table)
    return report, table


def run(config):
    timing = config['report.timing']
    command = config['command']
    if command == 'check-scheme':
        return cmd_check_scheme(config['path'], config['weak'], timing)
    if command == 'check-market':
        return cmd_check_market(config['path'], config['weak'], not config['no_discount'],
                                state_price_schedule(config), timing)
    if command == 'projections':
        return cmd_projections(config['path'], config['weak'], timing)
    if command == 'corresponding-scheme':
        return cmd_corresponding_scheme(config['path'], config['portfolios'], config['out'], timing)
    if command == 'verify':
        samples = config['samples'] if config['samples'] is not None else config['verify.samples']
        seed = config['seed'] if config['seed'] is not None else config['verify.seed']
        return cmd_verify(config['path'], samples, seed, config['weak'],
                          config['verify.radius'], config['verify.denominator'], timing)
    raise ValueError("unknown command {!r}".format(command))


def _check_counts(config):
    for key in ('verify.samples', 'verify.seed'):
        value = config[key]
        if isinstance(value, bool) or not isinstance(value, int) or value < 0:
            raise ValueError("{} must be a non-negative integer. Got {!r}".format(key, value))


def _emit(report, table, pretty):
    if pretty and table:
        sys.stdout.write(table + '\n\n')
    sys.stdout.write(serialize(report))


def main(argv=None):
    try:
        config = parse_args(parser, argv)
        _check_counts(config)
    except ValueError as e:
        parser.error(str(e))
    logging.basicConfig(stream=sys.stderr, level=logging.DEBUG if config['verbose'] else logging.WARNING,
                        format='%(levelname)s %(name)s: %(message)s')
    try:
        report, table = run(config)
    except ParseError as e:
        logger.error("%s", e)
        return EXIT_PARSE
    except OSError as e:
        logger.error("cannot read input: %s", e)
        return EXIT_PARSE
    except (SchemeError, MarketError) as e:
        logger.error("invalid input: %s", e)
        return EXIT_INVALID
    except WitnessError as e:
        logger.error("witness failed re-substitution: %s", e)
        return EXIT_INCONSISTENT
    except InconsistencyError as e:
        logger.error("%s", e)
        _emit(e.report, e.table, config['pretty'])
        return EXIT_INCONSISTENT
    _emit(report, table, config['pretty'])
    return EXIT_DECIDED


if __name__ == '__main__':
    sys.exit(main())
