"""Deterministic random instances: markets of a forced class, schemes, portfolios."""
import collections
from fractions import Fraction

import numpy as np

from models.market import validate_market
from models.scheme import MatrixScheme
from utils.rational import as_array, to_fraction

ARBITRAGE = 'arbitrage'
NO_ARBITRAGE = 'no_arbitrage'
UNCONSTRAINED = 'unconstrained'
FORCED_CLASSES = (ARBITRAGE, NO_ARBITRAGE, UNCONSTRAINED)

MAX_ASSETS = 5
MAX_STATES = 5

DEFAULT_ENTRY_POOL = ('-1', '0', '1/2', '1', '3/2', '2', '3')
DEFAULT_RISKLESS_PRICES = ('1', '9/10', '4/5', '1/2')

InstanceSpec = collections.namedtuple(
    'InstanceSpec', ('n_assets', 'm_states', 'entry_pool', 'seed', 'forced_class', 'riskless_prices'))

# generating_psi is set for no_arbitrage instances, planted_pair (better, worse) for arbitrage ones
GeneratedMarket = collections.namedtuple(
    'GeneratedMarket', ('market', 'spec', 'generating_psi', 'planted_pair'))


def make_instance_spec(n_assets, m_states, seed, forced_class=UNCONSTRAINED,
                       entry_pool=DEFAULT_ENTRY_POOL, riskless_prices=DEFAULT_RISKLESS_PRICES):
    if forced_class not in FORCED_CLASSES:
        raise ValueError("forced_class must be one of {}. Got {!r}".format(FORCED_CLASSES, forced_class))
    if not 1 <= n_assets <= MAX_ASSETS or not 1 <= m_states <= MAX_STATES:
        raise ValueError("instances are capped at {} assets and {} states".format(MAX_ASSETS, MAX_STATES))
    if forced_class == ARBITRAGE and n_assets < 2:
        raise ValueError("planting an arbitrage needs at least two assets")
    entry_pool = tuple(sorted({to_fraction(v) for v in entry_pool}))
    riskless_prices = tuple(to_fraction(v) for v in riskless_prices)
    if not entry_pool:
        raise ValueError("entry_pool must not be empty")
    if not riskless_prices or not all(0 < v <= 1 for v in riskless_prices):
        raise ValueError("riskless prices must lie in (0, 1]")
    return InstanceSpec(n_assets, m_states, entry_pool, seed, forced_class, riskless_prices)


def _choice(rng, pool, size=None):
    idx = rng.integers(len(pool), size=size)
    if size is None:
        return pool[int(idx)]
    return [[pool[int(i)] for i in row] for row in np.atleast_2d(idx)]


def _payoffs(rng, spec):
    rows = [[Fraction(1)] * spec.m_states]
    if spec.n_assets > 1:
        rows += _choice(rng, spec.entry_pool, (spec.n_assets - 1, spec.m_states))
    return rows


def _positive_psi(rng, m, riskless_price):
    weights = [int(w) for w in rng.integers(1, 10, size=m)]
    total = sum(weights)
    return tuple(riskless_price * Fraction(w, total) for w in weights)


def generate_market(spec):
    """Market of the requested class; identical output for identical specs."""
    rng = np.random.default_rng(spec.seed)
    payoffs = _payoffs(rng, spec)
    p1 = _choice(rng, spec.riskless_prices)
    psi, planted = None, None
    if spec.forced_class == UNCONSTRAINED:
        prices = [p1] + [_choice(rng, spec.entry_pool) for _ in range(spec.n_assets - 1)]
    else:
        psi = _positive_psi(rng, spec.m_states, p1)
        prices = list(as_array(payoffs).dot(as_array(psi)))
    if spec.forced_class == ARBITRAGE:
        better = int(rng.integers(1, spec.n_assets))
        worse = int(rng.choice([i for i in range(spec.n_assets) if i != better]))
        positive = [v for v in spec.entry_pool if v > 0] or [Fraction(1)]
        bump = [Fraction(0) if rng.random() < 0.5 else _choice(rng, positive) for _ in range(spec.m_states)]
        bump[int(rng.integers(spec.m_states))] = _choice(rng, positive)
        payoffs[better] = [a + b for a, b in zip(payoffs[worse], bump)]
        prices[better] = prices[worse]
        psi, planted = None, (better, worse)
    return GeneratedMarket(validate_market(payoffs, prices), spec, psi, planted)


def random_scheme(rng, max_acts, max_states, pool=(0, 1, 2), min_acts=0):
    n_acts = int(rng.integers(min_acts, max_acts + 1))
    m = int(rng.integers(1, max_states + 1))
    pool = tuple(to_fraction(v) for v in pool)
    acts = [[pool[int(i)] for i in rng.integers(len(pool), size=m)] for _ in range(n_acts)]
    return MatrixScheme(acts, m)


def sample_portfolio_grid(rng, n_assets, count, radius=3, denominator=4):
    """Integer portfolios ``count x n`` scaled by ``denominator``.

    Row 0 is the zero portfolio, the first half are integer points of
    [-radius, radius]^n and the rest rationals with this denominator. Dividing
    by ``denominator`` gives the actual holdings.
    """
    count = max(count, 1)
    n_grid = (count - 1) // 2
    grid = rng.integers(-radius, radius + 1, size=(n_grid, n_assets)) * denominator
    rational = rng.integers(-radius * denominator, radius * denominator + 1,
                            size=(count - 1 - n_grid, n_assets))
    return np.vstack([np.zeros((1, n_assets), dtype=np.int64), grid, rational]).astype(np.int64)
