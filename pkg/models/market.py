"""Arrow-Debreu markets with a riskless first asset.

Payoffs ``A`` are n x m (asset rows, state columns), prices ``p`` have length
n. Arbitrage is decided exactly by rational linear feasibility; every witness
and certificate is re-checked by substitution before it is returned.
"""
import collections
import logging
from fractions import Fraction

from models.feasibility import OPTIMAL, feasible_point, linprog
from models.scheme import MatrixScheme
from utils.rational import as_array, to_matrix, to_vector

logger = logging.getLogger(__name__)

NONE = 'none'
STRONG_BRANCH_1 = 'strong_branch_1'
STRONG_BRANCH_2 = 'strong_branch_2'

Market = collections.namedtuple('Market', ('payoffs', 'prices'))
Portfolio = collections.namedtuple('Portfolio', ('holdings',))
# ``market`` is the market the decision ran on (discounted unless asked otherwise)
ArbitrageVerdict = collections.namedtuple(
    'ArbitrageVerdict', ('kind', 'witness', 'state_prices', 'market'))

# feasibility ladder for state prices: psi >= 1/2**k
STATE_PRICE_SCHEDULE = tuple(range(65))


class MarketError(ValueError):
    pass


class WitnessError(RuntimeError):
    """A solver result that fails re-substitution."""


def _confirm(ok, message, *args):
    if not ok:
        raise WitnessError(message.format(*args))


def _dims(market):
    return len(market.prices), len(market.payoffs[0])


def _holdings(market, x):
    holdings = to_vector(x.holdings if isinstance(x, Portfolio) else x)
    if len(holdings) != len(market.prices):
        raise MarketError("portfolio has {} holdings, market has {} assets".format(
            len(holdings), len(market.prices)))
    return holdings


def validate_market(payoffs, prices):
    """Build a Market, enforcing the riskless first row and 0 < p1 <= 1."""
    try:
        payoffs, prices = to_matrix(payoffs), to_vector(prices)
    except (TypeError, ValueError) as e:
        raise MarketError(str(e))
    if not payoffs or not payoffs[0]:
        raise MarketError("a market needs at least one asset and one state")
    m = len(payoffs[0])
    if any(len(row) != m for row in payoffs):
        raise MarketError("payoff rows differ in length")
    if len(prices) != len(payoffs):
        raise MarketError("{} prices for {} assets".format(len(prices), len(payoffs)))
    if any(v != 1 for v in payoffs[0]):
        raise MarketError("the first asset must pay 1 in every state. Got {}".format(
            [str(v) for v in payoffs[0]]))
    if not 0 < prices[0] <= 1:
        raise MarketError("the riskless price must lie in (0, 1]. Got {}".format(prices[0]))
    return Market(payoffs, prices)


def discount_prices(market):
    """Scale prices by 1/p1 so that the riskless asset costs exactly 1."""
    factor = 1 / market.prices[0]
    return Market(market.payoffs, tuple(v * factor for v in market.prices))


def riskless_rate(market):
    p1 = market.prices[0]
    return (1 - p1) / p1


def cash_flows(market, x):
    """A^T x, the portfolio's cash-flow in each state."""
    return tuple(as_array(market.payoffs).T.dot(as_array(_holdings(market, x))))


def cost(market, x):
    """p^T x."""
    return sum((p * h for p, h in zip(market.prices, _holdings(market, x))), Fraction(0))


def profit_matrix(market):
    """B = A - [p p ... p]."""
    return tuple(tuple(a - p for a in row) for row, p in zip(market.payoffs, market.prices))


def corresponding_scheme_payoff(market, x):
    """B^T x: profit of portfolio x in each state."""
    return tuple(as_array(profit_matrix(market)).T.dot(as_array(_holdings(market, x))))


def corresponding_scheme(market, portfolios):
    """Matrix scheme whose acts are the profit vectors of the given portfolios."""
    return MatrixScheme([corresponding_scheme_payoff(market, x) for x in portfolios],
                        _dims(market)[1])


def _is_semipositive(v):
    return all(e >= 0 for e in v) and any(e > 0 for e in v)


def classify_portfolio(market, x):
    """Which branch of the arbitrage definition x satisfies, by substitution."""
    price, flows = cost(market, x), cash_flows(market, x)
    if price <= 0 and _is_semipositive(flows):
        return STRONG_BRANCH_1
    if price < 0 and all(e >= 0 for e in flows):
        return STRONG_BRANCH_2
    return NONE


def verify_state_prices(market, psi):
    psi = to_vector(psi)
    if len(psi) != _dims(market)[1] or any(v <= 0 for v in psi):
        return False
    return tuple(as_array(market.payoffs).dot(as_array(psi))) == market.prices


def _branch_one(market):
    # p^T x <= 0, A^T x >= 0, sum_theta (A^T x)_theta = 1
    A = as_array(market.payoffs)
    A_ub = [list(market.prices)] + [list(-A[:, t]) for t in range(A.shape[1])]
    b_ub = [0] * len(A_ub)
    return feasible_point(A_ub, b_ub, [list(A.sum(axis=1))], [1])


def _branch_two(market):
    # p^T x = -1, A^T x >= 0
    A = as_array(market.payoffs)
    A_ub = [list(-A[:, t]) for t in range(A.shape[1])]
    return feasible_point(A_ub, [0] * len(A_ub), [list(market.prices)], [-1])


def _checked(market, x, expected):
    portfolio = Portfolio(tuple(x))
    kind = classify_portfolio(market, portfolio)
    _confirm(kind == expected or (expected == STRONG_BRANCH_2 and kind != NONE),
             "solver returned a non-witness {} for {}", x, expected)
    return portfolio


def _target(market, discount):
    return discount_prices(market) if discount else market


def find_arbitrage(market, discount=True, schedule=STATE_PRICE_SCHEDULE):
    """Decide strong arbitrage on the (discounted) market.

    Returns an ArbitrageVerdict; when there is no arbitrage and strictly
    positive state prices exist they are attached as a certificate.
    """
    target = _target(market, discount)
    x = _branch_one(target)
    if x is not None:
        return ArbitrageVerdict(STRONG_BRANCH_1, _checked(target, x, STRONG_BRANCH_1), None, target)
    x = _branch_two(target)
    if x is not None:
        witness = _checked(target, x, STRONG_BRANCH_2)
        return ArbitrageVerdict(classify_portfolio(target, witness), witness, None, target)
    return ArbitrageVerdict(NONE, None, state_prices(target, schedule), target)


def find_weak_arbitrage(market, discount=True, schedule=STATE_PRICE_SCHEDULE):
    """Only the second branch: p^T x < 0 with A^T x >= 0."""
    target = _target(market, discount)
    x = _branch_two(target)
    if x is not None:
        witness = Portfolio(tuple(x))
        flows = cash_flows(target, witness)
        _confirm(cost(target, witness) < 0 and all(e >= 0 for e in flows),
                 "solver returned a non-witness {}", x)
        return ArbitrageVerdict(STRONG_BRANCH_2, witness, None, target)
    return ArbitrageVerdict(NONE, None, state_prices(target, schedule), target)


def _require_discounted(market):
    if market.prices[0] != 1:
        raise MarketError("riskless price is {}; discount the market first".format(market.prices[0]))


def leverage(market, x):
    """x_bar = x - (p^T x) e_1: self-financing, with A^T x_bar = B^T x."""
    _require_discounted(market)
    holdings = _holdings(market, x)
    price = cost(market, holdings)
    levered = Portfolio((holdings[0] - price,) + holdings[1:])
    _confirm(cost(market, levered) == 0 and
             cash_flows(market, levered) == corresponding_scheme_payoff(market, holdings),
             "leveraged portfolio {} is not self-financing", levered.holdings)
    return levered


def weak_leverage(market, x):
    """From B^T x > 0 in every state, a portfolio with p^T x < 0 and A^T x >= 0."""
    levered = leverage(market, x)
    eps = min(cash_flows(market, levered))
    if eps <= 0:
        raise MarketError("profit vector is not strictly positive in every state")
    weak = Portfolio((levered.holdings[0] - eps,) + levered.holdings[1:])
    _confirm(cost(market, weak) < 0 and all(e >= 0 for e in cash_flows(market, weak)),
             "weak leverage {} is not a weak arbitrage", weak.holdings)
    return weak


def positive_decision_exists(market):
    """Positive decision: x with B^T x >= 0 and sum(B^T x) = 1, or None."""
    _require_discounted(market)
    B = as_array(profit_matrix(market))
    A_ub = [list(-B[:, t]) for t in range(B.shape[1])]
    x = feasible_point(A_ub, [0] * len(A_ub), [list(B.sum(axis=1))], [1])
    if x is None:
        return None
    portfolio = Portfolio(tuple(x))
    _confirm(_is_semipositive(corresponding_scheme_payoff(market, portfolio)),
             "profits of {} are not a positive decision", x)
    return portfolio


def strictly_positive_decision_exists(market):
    """Strictly positive decision: x with B^T x >= 1 in every state, or None."""
    _require_discounted(market)
    B = as_array(profit_matrix(market))
    A_ub = [list(-B[:, t]) for t in range(B.shape[1])]
    x = feasible_point(A_ub, [-1] * len(A_ub))
    if x is None:
        return None
    portfolio = Portfolio(tuple(x))
    _confirm(all(e > 0 for e in corresponding_scheme_payoff(market, portfolio)),
             "profits of {} are not strictly positive", x)
    return portfolio


def _max_min_state_price(market):
    # maximize t s.t. A psi = p, psi_theta >= t; variables (psi, t)
    m = _dims(market)[1]
    A_eq = [list(row) + [0] for row in market.payoffs]
    A_ub = []
    for t in range(m):
        row = [0] * (m + 1)
        row[t], row[m] = -1, 1
        A_ub.append(row)
    res = linprog([0] * m + [-1], A_ub, [0] * m, A_eq, list(market.prices))
    if res.status != OPTIMAL:
        return None, None
    return res.x[m], res.x[:m]


def state_prices(market, schedule=STATE_PRICE_SCHEDULE):
    """Strictly positive psi with p = A psi, or None.

    The max-min LP decides existence; a psi on the first rung 1/2**k of the
    schedule lying below the optimum is preferred, falling back to the max-min
    optimum itself when the optimum is below every rung.
    """
    best, psi = _max_min_state_price(market)
    if best is None or best <= 0:
        return None
    m = _dims(market)[1]
    for k in schedule:
        floor = Fraction(1, 2 ** k)
        if floor > best:
            continue
        # psi_theta >= floor  <=>  -psi_theta <= -floor
        A_ub = [[-1 if j == t else 0 for j in range(m)] for t in range(m)]
        rung = feasible_point(A_ub, [-floor] * m, [list(r) for r in market.payoffs], list(market.prices))
        if rung is not None:
            logger.debug("state prices found at floor 1/2**%d", k)
            psi = rung
        break
    psi = tuple(psi)
    _confirm(verify_state_prices(market, psi), "state prices {} failed re-substitution", psi)
    return psi
