import argparse
import collections
import logging
import os
import sys
import tempfile
import time
from fractions import Fraction

import numpy as np
from tqdm import tqdm

import arbcheck
from configs.config import parse_args, state_price_schedule
from datasets.formats import market_to_json, scheme_to_csv
from datasets.generators import (ARBITRAGE, NO_ARBITRAGE, UNCONSTRAINED, generate_market, make_instance_spec,
                                 random_scheme)
from models.market import NONE, find_arbitrage, validate_market
from models.scheme import (MatrixScheme, build_projection, build_two_distinct_projections, contains_uncertainty,
                           is_domination_connected, verify_projection)
from utils.oracle import (brute_force_uncertainty, check_lemma1, check_theorem2, enumerate_projections,
                          is_consistent, merged_relation)
from utils.report import serialize
from utils.table import format_table

logger = logging.getLogger('acceptance')

parser = argparse.ArgumentParser(description="Run the acceptance criteria at full scale.")
parser.add_argument("--config", help="Path to config file.", required=False, default='./configs/acceptance.yaml')
parser.add_argument("--verbose", help="Log at DEBUG level on stderr.", action='store_true')
parser.add_argument("opts", nargs=argparse.REMAINDER,
                    help="Modify the run. Example: markets.count 50 verify.samples 200")

CriterionResult = collections.namedtuple('CriterionResult', ('name', 'passed', 'total', 'seconds'))

DESK_EXAMPLES = {
    'dominated_asset.json': market_to_json(validate_market([[1, 1], [2, 1]], [1, 1]),
                                           ['bond', 'stock'], ['up', 'down']),
    'binomial.json': market_to_json(validate_market([[1, 1], [2, '1/2']], [1, 1]),
                                    ['bond', 'stock'], ['up', 'down']),
    'crossing_pair.csv': scheme_to_csv(MatrixScheme([[1, 0], [0, 1]])),
}
CLI_COMMANDS = (
    ('dominated_asset.json', 'check-market', 'arbitrage'),
    ('binomial.json', 'check-market', 'no_arbitrage'),
    ('crossing_pair.csv', 'check-scheme', 'uncertainty'),
)


def _timed(name, total, check, items):
    start = time.perf_counter()
    passed = 0
    for item in tqdm(items, total=total, desc=name, file=sys.stderr, leave=False):
        if check(item):
            passed += 1
        else:
            logger.warning("%s failed on %r", name, item)
    return CriterionResult(name, passed, total, time.perf_counter() - start)


def _schemes(rng, count, max_acts, max_states):
    return (random_scheme(rng, max_acts, max_states) for _ in range(count))


def uncertainty_bridge(scheme, cap):
    return (contains_uncertainty(scheme) is not None) == brute_force_uncertainty(scheme, cap=cap)


def projection_exists(scheme):
    return verify_projection(scheme, build_projection(scheme))


def projection_uniqueness(scheme, cap):
    if is_domination_connected(scheme):
        found = enumerate_projections(scheme, cap=cap)
        return found == {merged_relation(scheme)}
    first, second = build_two_distinct_projections(scheme)
    return (verify_projection(scheme, first) and verify_projection(scheme, second)
            and first.strict_pairs() != second.strict_pairs())


def generated_markets(config):
    rng = np.random.default_rng(config['seed'])
    classes = (NO_ARBITRAGE, ARBITRAGE, UNCONSTRAINED)
    markets = []
    for i in range(config['markets.count']):
        forced = classes[i % len(classes)]
        n = int(rng.integers(2 if forced == ARBITRAGE else 1, config['markets.max_assets'] + 1))
        m = int(rng.integers(1, config['markets.max_states'] + 1))
        spec = make_instance_spec(n, m, config['seed'] + i, forced,
                                  config['generator.entry_pool'], config['generator.riskless_prices'])
        markets.append(generate_market(spec))
    return markets


def _substitute(market, holdings):
    # plain sums, independent of the market module
    price = sum((p * x for p, x in zip(market.prices, holdings)), Fraction(0))
    flows = [sum((row[t] * x for row, x in zip(market.payoffs, holdings)), Fraction(0))
             for t in range(len(market.payoffs[0]))]
    return price, flows


def generator_sound(generated, schedule):
    verdict = find_arbitrage(generated.market, schedule=schedule)
    if generated.spec.forced_class == NO_ARBITRAGE:
        psi = verdict.state_prices
        if verdict.kind != NONE or psi is None or min(psi) <= 0:
            return False
        implied = [sum((a * s for a, s in zip(row, psi)), Fraction(0)) for row in verdict.market.payoffs]
        planted = [sum((a * s for a, s in zip(row, generated.generating_psi)), Fraction(0))
                   for row in generated.market.payoffs]
        return implied == list(verdict.market.prices) and planted == list(generated.market.prices)
    if generated.spec.forced_class == ARBITRAGE:
        if verdict.kind == NONE:
            return False
        price, flows = _substitute(verdict.market, verdict.witness.holdings)
        return price <= 0 and min(flows) >= 0 and (price < 0 or max(flows) > 0)
    return True


def exact_witness(generated, schedule):
    verdict = find_arbitrage(generated.market, schedule=schedule)
    if verdict.kind == NONE:
        psi = verdict.state_prices
        if psi is None:
            return False
        implied = [sum((a * s for a, s in zip(row, psi)), Fraction(0)) for row in verdict.market.payoffs]
        return all(isinstance(v, Fraction) for v in psi) and implied == list(verdict.market.prices)
    price, flows = _substitute(verdict.market, verdict.witness.holdings)
    exact = all(isinstance(v, Fraction) for v in verdict.witness.holdings)
    return exact and price <= 0 and min(flows) >= 0 and (price < 0 or max(flows) > 0)


def cli_stable(directory):
    for name, command, expected in CLI_COMMANDS:
        path = os.path.join(directory, name)
        command_fn = arbcheck.cmd_check_market if command == 'check-market' else arbcheck.cmd_check_scheme
        first, _ = command_fn(path, timing=False)
        second, _ = command_fn(path, timing=False)
        if first.verdict != expected or serialize(first) != serialize(second):
            return False
    return True


def main(config):
    results = []
    cap = config['oracle.enumeration_cap']
    schedule = state_price_schedule(config)
    rng = np.random.default_rng(config['seed'])

    count = config['schemes.bridge_count']
    results.append(_timed('uncertainty bridge', count, lambda s: uncertainty_bridge(s, cap),
                          _schemes(rng, count, config['schemes.bridge_max_acts'],
                                   config['schemes.bridge_max_states'])))
    count = config['schemes.projection_count']
    results.append(_timed('projection exists', count, projection_exists,
                          _schemes(rng, count, config['schemes.projection_max_acts'],
                                   config['schemes.projection_max_states'])))
    count = config['schemes.uniqueness_count']
    results.append(_timed('projection uniqueness', count, lambda s: projection_uniqueness(s, cap),
                          _schemes(rng, count, config['schemes.uniqueness_max_acts'],
                                   config['schemes.uniqueness_max_states'])))

    markets = generated_markets(config)
    samples = config['verify.samples']
    results.append(_timed('positive decision', len(markets), lambda g: is_consistent(check_lemma1(g.market)),
                          markets))
    results.append(_timed('corresponding scheme', len(markets),
                          lambda g: is_consistent(check_theorem2(
                              g.market, samples, g.spec.seed, radius=config['verify.radius'],
                              denominator=config['verify.denominator'])),
                          markets))
    results.append(_timed('generator soundness', len(markets), lambda g: generator_sound(g, schedule), markets))
    results.append(_timed('exact witnesses', len(markets), lambda g: exact_witness(g, schedule), markets))

    with tempfile.TemporaryDirectory() as directory:
        for name, text in DESK_EXAMPLES.items():
            with open(os.path.join(directory, name), 'w') as fp:
                fp.write(text)
        results.append(_timed('cli conformance', 1, cli_stable, [directory]))

    rows = [['criterion', 'passed', 'total', 'seconds']]
    rows += [[r.name, r.passed, r.total, '{:.2f}'.format(r.seconds)] for r in results]
    print(format_table(rows))
    return results


if __name__ == '__main__':
    try:
        hparams = parse_args(parser)
    except ValueError as e:
        parser.error(str(e))
    logging.basicConfig(stream=sys.stderr, level=logging.DEBUG if hparams['verbose'] else logging.INFO,
                        format='%(levelname)s %(name)s: %(message)s')
    outcome = main(hparams)
    sys.exit(0 if all(r.passed == r.total for r in outcome) else 1)
