"""Independent cross-checks of the scheme and market decision procedures.

The brute-force enumeration and the sampled dominance search below use their
own comparisons (numpy on exact values) instead of the models' predicates, so
that agreement between the two routes means something.
"""
import collections
import itertools
import logging
from fractions import Fraction

import numpy as np

from datasets.generators import sample_portfolio_grid
from models.market import (NONE, Portfolio, cash_flows, corresponding_scheme, cost, discount_prices,
                           find_arbitrage, find_weak_arbitrage, leverage, positive_decision_exists,
                           profit_matrix, strictly_positive_decision_exists)
from models.scheme import (DOMINATION, ENFORCED, SchemeError, contains_enforced_uncertainty,
                           contains_uncertainty)
from utils.rational import as_array, common_denominator

logger = logging.getLogger(__name__)

ENUMERATION_CAP = 5

ProcedureVerdict = collections.namedtuple('ProcedureVerdict', ('found', 'witness'))
EquivalenceReport = collections.namedtuple(
    'EquivalenceReport',
    ('instance', 'procedure_a_verdict', 'procedure_b_verdict', 'agree', 'dominated_pairs', 'failures'))


def is_consistent(report):
    return report.agree and not report.failures


def _below(u, v, relation):
    u, v = as_array(u), as_array(v)
    if relation == ENFORCED:
        return bool(np.all(u < v))
    return bool(np.all(u <= v) and np.any(u < v))


def enumerate_projections(scheme, relation=DOMINATION, cap=ENUMERATION_CAP):
    """Every strict relation induced by a weak order that extends the relation.

    Equal payoff vectors are merged first. Relations are returned as frozensets
    of (i, j) pairs over indices of the merged act list, so two rank maps
    inducing the same relation are counted once.
    """
    acts = list(dict.fromkeys(scheme.acts))
    k = len(acts)
    if k > cap:
        raise SchemeError("{} distinct acts exceed the enumeration cap of {}".format(k, cap))
    required = [(i, j) for i, j in itertools.permutations(range(k), 2)
                if _below(acts[i], acts[j], relation)]
    found = set()
    for ranks in itertools.product(range(k), repeat=k):
        if all(ranks[i] < ranks[j] for i, j in required):
            found.add(frozenset((i, j) for i, j in itertools.permutations(range(k), 2)
                                if ranks[i] < ranks[j]))
    return found


def brute_force_uncertainty(scheme, relation=DOMINATION, cap=ENUMERATION_CAP):
    """The scheme contains uncertainty iff more than one projection exists."""
    return len(enumerate_projections(scheme, relation, cap)) > 1


def merged_relation(scheme, relation=DOMINATION):
    acts = list(dict.fromkeys(scheme.acts))
    return frozenset((i, j) for i, j in itertools.permutations(range(len(acts)), 2)
                     if _below(acts[i], acts[j], relation))


def _dominance_matrix(profits, relation):
    lhs, rhs = profits[:, None, :], profits[None, :, :]
    if relation == ENFORCED:
        return np.all(lhs < rhs, axis=2)
    return np.all(lhs <= rhs, axis=2) & np.any(lhs < rhs, axis=2)


def sampled_dominated_pairs(market, count, seed, relation=DOMINATION, radius=3, denominator=4):
    """Search sampled portfolios for a dominated pair of profit vectors.

    Profits are computed on integers: B is scaled by its common denominator and
    portfolios by ``denominator``, which preserves every comparison.

    Returns:
        (number of dominated ordered pairs, certificate portfolio x2 - x1 or None).
    """
    rng = np.random.default_rng(seed)
    B = profit_matrix(market)
    scale = common_denominator([v for row in B for v in row])
    B_int = np.array([[int(v * scale) for v in row] for row in B], dtype=object)
    X_int = sample_portfolio_grid(rng, len(B), count, radius, denominator)
    bound = len(B) * int(np.abs(X_int).max(initial=0)) * int(max((abs(v) for v in B_int.flat), default=0))
    if bound < 2 ** 62:
        profits = X_int.dot(B_int.astype(np.int64))
    else:
        profits = X_int.astype(object).dot(B_int)
    dominated = _dominance_matrix(profits, relation)
    pairs = int(dominated.sum())
    if not pairs:
        return 0, None
    low, high = np.argwhere(dominated)[0]
    diff = X_int[high] - X_int[low]
    certificate = Portfolio(tuple(Fraction(int(v), denominator) for v in diff))
    logger.info("sampled route found %d dominated pairs; first (%d, %d)", pairs, low, high)
    return pairs, certificate


def _profits(market, x):
    # B^T x, computed here rather than through the market module
    return tuple(as_array(x.holdings).dot(as_array(profit_matrix(market))))


def check_lemma1(market):
    """find_arbitrage against the positive-decision route, plus the leverage roundtrip."""
    target = discount_prices(market)
    verdict = find_arbitrage(market)
    x = positive_decision_exists(target)
    failures = []
    if x is not None:
        d = _profits(target, x)
        if not _below((0,) * len(d), d, DOMINATION):
            failures.append("positive decision {} has profits {}".format(x.holdings, d))
        levered = leverage(target, x)
        if cost(target, levered) != 0 or cash_flows(target, levered) != d:
            failures.append("leverage roundtrip failed for {}".format(x.holdings))
    a = ProcedureVerdict(verdict.kind != NONE, verdict.witness)
    b = ProcedureVerdict(x is not None, x)
    return EquivalenceReport(market, a, b, a.found == b.found, 0, failures)


def check_theorem2(market, sample_count, seed, weak=False, radius=3, denominator=4):
    """Arbitrage detection against the corresponding scheme.

    Procedure A is the detector. Procedure B combines the exact positive
    decision route with a dominance search among sampled profit vectors. A
    dominated sampled pair next to a no-arbitrage verdict is a hard failure;
    sampling alone missing an arbitrage is not.
    """
    relation = ENFORCED if weak else DOMINATION
    target = discount_prices(market)
    verdict = (find_weak_arbitrage if weak else find_arbitrage)(market)
    exact = (strictly_positive_decision_exists if weak else positive_decision_exists)(target)
    pairs, certificate = sampled_dominated_pairs(target, sample_count, seed, relation, radius, denominator)
    failures = []

    if certificate is not None:
        d = _profits(target, certificate)
        if not _below((0,) * len(d), d, relation):
            failures.append("sampled certificate {} has profits {}".format(certificate.holdings, d))
        elif verdict.kind == NONE:
            failures.append("no-arbitrage verdict but sampled pair yields {}".format(certificate.holdings))

    if verdict.witness is not None:
        two_acts = corresponding_scheme(target, [verdict.witness, Portfolio((0,) * len(target.prices))])
        lacks = contains_enforced_uncertainty if weak else contains_uncertainty
        if lacks(two_acts) is not None:
            failures.append("witness {} and zero still contain uncertainty".format(verdict.witness.holdings))

    a = ProcedureVerdict(verdict.kind != NONE, verdict.witness)
    b = ProcedureVerdict(exact is not None or certificate is not None,
                         exact if exact is not None else certificate)
    return EquivalenceReport(market, a, b, a.found == b.found, pairs, failures)
