from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import small_markets
from models import market as market_lib
from models.market import (NONE, STRONG_BRANCH_1, STRONG_BRANCH_2, MarketError, Portfolio, WitnessError,
                           cash_flows, classify_portfolio, corresponding_scheme, corresponding_scheme_payoff, cost,
                           discount_prices, find_arbitrage, find_weak_arbitrage, leverage,
                           positive_decision_exists, profit_matrix, riskless_rate, state_prices,
                           strictly_positive_decision_exists, validate_market, verify_state_prices,
                           weak_leverage)
from models.scheme import contains_uncertainty


class TestValidateMarket:

    def test_riskless_row_required(self):
        with pytest.raises(MarketError):
            validate_market([[1, 2]], [1])

    def test_riskless_price_range(self):
        with pytest.raises(MarketError):
            validate_market([[1, 1]], [0])
        with pytest.raises(MarketError):
            validate_market([[1, 1]], ['3/2'])

    def test_dimension_mismatch(self):
        with pytest.raises(MarketError):
            validate_market([[1, 1], [2, 0]], [1])
        with pytest.raises(MarketError):
            validate_market([[1, 1], [2]], [1, 1])

    def test_riskless_rate(self):
        assert riskless_rate(validate_market([[1, 1]], ['4/5'])) == Fraction(1, 4)


class TestFindArbitrage:

    def test_dominated_asset(self, dominated):
        verdict = find_arbitrage(dominated)
        assert verdict.kind == STRONG_BRANCH_1
        assert verdict.witness == Portfolio((Fraction(-1), Fraction(1)))
        assert cost(dominated, verdict.witness) == 0
        assert cash_flows(dominated, verdict.witness) == (1, 0)
        assert verdict.state_prices is None

    def test_binomial_state_prices(self, binomial):
        verdict = find_arbitrage(binomial)
        assert verdict.kind == NONE
        assert verdict.witness is None
        assert verdict.state_prices == (Fraction(1, 3), Fraction(2, 3))

    def test_single_asset_discounted(self):
        market = validate_market([[1, 1]], ['1/2'])
        verdict = find_arbitrage(market)
        assert verdict.kind == NONE
        assert verdict.market.prices == (1,)
        assert verdict.state_prices == (Fraction(1, 2), Fraction(1, 2))

    def test_branch_two_portfolio(self):
        # the second asset costs less than nothing and pays nothing
        market = validate_market([[1, 1], [0, 0]], [1, -1])
        assert classify_portfolio(market, Portfolio((0, 1))) == STRONG_BRANCH_2
        assert find_arbitrage(market).kind != NONE
        assert find_weak_arbitrage(market).kind == STRONG_BRANCH_2

    @given(small_markets())
    @settings(max_examples=80, deadline=None)
    def test_verdicts_resubstitute(self, market):
        verdict = find_arbitrage(market)
        target = verdict.market
        assert target.prices[0] == 1
        if verdict.kind == NONE:
            assert verify_state_prices(target, verdict.state_prices)
        else:
            assert classify_portfolio(target, verdict.witness) != NONE

    @given(small_markets())
    @settings(max_examples=60, deadline=None)
    def test_discounting_keeps_the_class(self, market):
        discounted = find_arbitrage(market).kind == NONE
        raw = find_arbitrage(market, discount=False).kind == NONE
        assert discounted == raw

    @given(small_markets())
    @settings(max_examples=60, deadline=None)
    def test_discounting_keeps_the_weak_class(self, market):
        discounted = find_weak_arbitrage(market).kind == NONE
        raw = find_weak_arbitrage(market, discount=False).kind == NONE
        assert discounted == raw

    @given(small_markets(), st.sampled_from([Fraction(1, 7), Fraction(1), Fraction(5)]))
    @settings(max_examples=60, deadline=None)
    def test_scaled_witness_is_a_witness(self, market, scale):
        for verdict in (find_arbitrage(market), find_weak_arbitrage(market)):
            if verdict.kind != NONE:
                scaled = Portfolio(tuple(scale * h for h in verdict.witness.holdings))
                kind = classify_portfolio(verdict.market, verdict.witness)
                assert kind != NONE
                assert classify_portfolio(verdict.market, scaled) == kind

    @given(small_markets())
    @settings(max_examples=60, deadline=None)
    def test_state_prices_exclude_arbitrage(self, market):
        psi = state_prices(discount_prices(market))
        if psi is not None:
            assert verify_state_prices(discount_prices(market), psi)
            assert find_arbitrage(market).kind == NONE

    def test_non_witness_raises(self, dominated, monkeypatch):
        monkeypatch.setattr(market_lib, '_branch_one', lambda market: [0, 0])
        with pytest.raises(WitnessError):
            find_arbitrage(dominated)

    @given(small_markets())
    @settings(max_examples=60, deadline=None)
    def test_weak_arbitrage_implies_arbitrage(self, market):
        if find_weak_arbitrage(market).kind != NONE:
            assert find_arbitrage(market).kind != NONE


class TestPositiveDecision:

    def test_requires_discounted_prices(self):
        with pytest.raises(MarketError):
            positive_decision_exists(validate_market([[1, 1]], ['1/2']))

    def test_dominated(self, dominated):
        x = positive_decision_exists(dominated)
        profits = corresponding_scheme_payoff(dominated, x)
        assert min(profits) >= 0 and sum(profits) == 1

    def test_binomial(self, binomial):
        assert positive_decision_exists(binomial) is None
        assert strictly_positive_decision_exists(binomial) is None

    @given(small_markets())
    @settings(max_examples=60, deadline=None)
    def test_agrees_with_detector(self, market):
        target = discount_prices(market)
        found = positive_decision_exists(target)
        assert (found is None) == (find_arbitrage(market).kind == NONE)
        if found is not None:
            levered = leverage(target, found)
            assert cost(target, levered) == 0
            assert cash_flows(target, levered) == corresponding_scheme_payoff(target, found)
            two_acts = corresponding_scheme(target, [found, Portfolio((0,) * len(target.prices))])
            assert contains_uncertainty(two_acts) is None

    @given(small_markets())
    @settings(max_examples=60, deadline=None)
    def test_weak_route(self, market):
        target = discount_prices(market)
        x = strictly_positive_decision_exists(target)
        assert (x is None) == (find_weak_arbitrage(market).kind == NONE)
        if x is not None:
            weak = weak_leverage(target, x)
            assert cost(target, weak) < 0
            assert min(cash_flows(target, weak)) >= 0


class TestHelpers:

    def test_profit_matrix(self, binomial):
        assert profit_matrix(binomial) == ((0, 0), (1, Fraction(-1, 2)))

    def test_corresponding_scheme(self, binomial):
        scheme = corresponding_scheme(binomial, [Portfolio((1, 0)), Portfolio((0, 1))])
        assert scheme.acts == ((0, 0), (1, Fraction(-1, 2)))

    def test_wrong_length_portfolio(self, binomial):
        with pytest.raises(MarketError):
            cost(binomial, Portfolio((1, 2, 3)))

    def test_classify(self, dominated):
        assert classify_portfolio(dominated, Portfolio((-1, 1))) == STRONG_BRANCH_1
        assert classify_portfolio(dominated, Portfolio((1, 0))) == NONE

    def test_weak_leverage_needs_strict_profits(self, dominated):
        with pytest.raises(MarketError):
            weak_leverage(dominated, Portfolio((-1, 1)))

    def test_state_prices_absent(self, dominated):
        assert state_prices(dominated) is None
        assert not verify_state_prices(dominated, (Fraction(1, 2), Fraction(1, 2)))

    def test_leverage_examples(self, binomial):
        assert leverage(binomial, Portfolio((1, 1))) == Portfolio((Fraction(-1), Fraction(1)))
        assert cash_flows(binomial, Portfolio((-1, 1))) == (1, Fraction(-1, 2))
        assert leverage(binomial, Portfolio((0, 0))) == Portfolio((0, 0))
        with pytest.raises(MarketError):
            leverage(validate_market([[1, 1]], ['1/2']), Portfolio((1,)))

    def test_identical_assets_at_different_prices(self):
        market = validate_market([[1, 1], [1, 1]], [1, '1/2'])
        verdict = find_weak_arbitrage(market)
        assert verdict.kind == STRONG_BRANCH_2
        assert cost(verdict.market, verdict.witness) < 0
        assert find_weak_arbitrage(validate_market([[1, 1], [2, 1]], [1, 1])).kind == NONE

    def test_lone_bond(self):
        market = validate_market([[1, 1]], [1])
        assert positive_decision_exists(market) is None
        psi = state_prices(market)
        assert sum(psi) == 1 and min(psi) > 0
