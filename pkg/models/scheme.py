"""Finite matrix decision schemes.

A scheme is a finite state set {0..m-1} together with a list of acts, each act
a vector of exact rational consequences. This module decides domination,
uncertainty (non-uniqueness of the projection of preference of consequences)
and builds projections constructively as integer rank maps.
"""
import collections
import itertools

import networkx as nx

from utils.rational import to_vector

DOMINATION = 'domination'
ENFORCED = 'enforced'
RELATIONS = (DOMINATION, ENFORCED)

UncertaintyWitness = collections.namedtuple(
    'UncertaintyWitness', ('act_a', 'act_b', 'state_a', 'state_b'))


class SchemeError(ValueError):
    pass


class MatrixScheme:
    """Matrix decision scheme with ``state_count`` states and a list of acts.

    Acts at distinct indices with equal payoff vectors are the same element of
    the act set; the list form exists for indexing only.
    """

    def __init__(self, acts, state_count=None):
        acts = tuple(to_vector(a) for a in acts)
        if state_count is None:
            if not acts:
                raise SchemeError("state_count is required for a scheme without acts")
            state_count = len(acts[0])
        if not isinstance(state_count, int) or state_count < 1:
            raise SchemeError("state_count must be a positive integer. Got {}".format(state_count))
        for i, act in enumerate(acts):
            if len(act) != state_count:
                raise SchemeError("act {} has {} entries, expected {}".format(i, len(act), state_count))
        self.state_count = state_count
        self.acts = acts

    def __len__(self):
        return len(self.acts)

    def __eq__(self, other):
        return (isinstance(other, MatrixScheme) and self.state_count == other.state_count
                and self.acts == other.acts)

    def __hash__(self):
        return hash((self.state_count, self.acts))

    def __repr__(self):
        return 'MatrixScheme(state_count={}, acts={})'.format(
            self.state_count, [[str(v) for v in a] for a in self.acts])

    def act(self, i):
        if not isinstance(i, int) or not 0 <= i < len(self.acts):
            raise IndexError("act index {} out of range for {} acts".format(i, len(self.acts)))
        return self.acts[i]

    def same_act(self, i, j):
        return self.act(i) == self.act(j)


class Ranking:
    """A projection represented by integer ranks; lower rank is less preferred.

    ``rank(x) < rank(y)`` induces ``x ≺ y``; equal ranks are indifferent. Any
    rank map induces an asymmetric, negatively transitive relation.
    """

    def __init__(self, ranks):
        self.ranks = {int(k): int(v) for k, v in dict(ranks).items()}
        if any(v < 0 for v in self.ranks.values()):
            raise SchemeError("ranks must be non-negative")

    @classmethod
    def from_order(cls, order):
        """Strict linear order from act indices listed least preferred first."""
        return cls({act: rank for rank, act in enumerate(order)})

    def __len__(self):
        return len(self.ranks)

    def __eq__(self, other):
        return isinstance(other, Ranking) and self.ranks == other.ranks

    def __repr__(self):
        return 'Ranking({})'.format(dict(sorted(self.ranks.items())))

    def precedes(self, i, j):
        return self.ranks[i] < self.ranks[j]

    def is_linear(self):
        return len(set(self.ranks.values())) == len(self.ranks)

    def strict_pairs(self):
        return frozenset((i, j) for i in self.ranks for j in self.ranks if self.precedes(i, j))


def _check_relation(relation):
    if relation not in RELATIONS:
        raise ValueError("relation must be one of {}. Got {!r}".format(RELATIONS, relation))


def dominates(scheme, i, j):
    """True iff act i ≺ act j: weakly below in every state, strictly in one."""
    a, b = scheme.act(i), scheme.act(j)
    return all(x <= y for x, y in zip(a, b)) and any(x < y for x, y in zip(a, b))


def strictly_dominates(scheme, i, j):
    """Enforced domination ≺*: strictly below in every state."""
    a, b = scheme.act(i), scheme.act(j)
    return all(x < y for x, y in zip(a, b))


def related(scheme, i, j, relation=DOMINATION):
    _check_relation(relation)
    if relation == DOMINATION:
        return dominates(scheme, i, j)
    return strictly_dominates(scheme, i, j)


def _comparable(scheme, i, j, relation):
    return (scheme.same_act(i, j) or related(scheme, i, j, relation)
            or related(scheme, j, i, relation))


def is_domination_connected(scheme, relation=DOMINATION):
    """Every pair of distinct acts is comparable; duplicates count as one act."""
    return all(_comparable(scheme, i, j, relation)
               for i, j in itertools.combinations(range(len(scheme)), 2))


def contains_uncertainty(scheme):
    """Witness of a crossing pair, or None when domination is connected.

    Pairs are scanned in lexicographic index order; ``state_a`` is the first
    state where act_a is worse, ``state_b`` the first where act_b is worse.
    """
    for a, b in itertools.combinations(range(len(scheme)), 2):
        da, db = scheme.act(a), scheme.act(b)
        state_a = next((t for t in range(scheme.state_count) if da[t] < db[t]), None)
        state_b = next((t for t in range(scheme.state_count) if db[t] < da[t]), None)
        if state_a is not None and state_b is not None:
            return UncertaintyWitness(a, b, state_a, state_b)
    return None


def contains_enforced_uncertainty(scheme):
    """Uncertainty relative to ≺*; the witness states carry weak inequalities."""
    for a, b in itertools.combinations(range(len(scheme)), 2):
        if _comparable(scheme, a, b, ENFORCED):
            continue
        da, db = scheme.act(a), scheme.act(b)
        state_a = next(t for t in range(scheme.state_count) if da[t] <= db[t])
        state_b = next(t for t in range(scheme.state_count) if db[t] <= da[t])
        return UncertaintyWitness(a, b, state_a, state_b)
    return None


def find_dominated_pair(scheme, relation=DOMINATION):
    """First (i, j) with act i ≺ act j: a pair of acts without uncertainty."""
    for i, j in itertools.product(range(len(scheme)), repeat=2):
        if related(scheme, i, j, relation):
            return i, j
    return None


def is_antichain(scheme, relation=DOMINATION):
    return find_dominated_pair(scheme, relation) is None


def relation_graph(scheme, relation=DOMINATION):
    """DiGraph on act indices with an edge i -> j whenever act i ≺ act j."""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(scheme)))
    graph.add_edges_from((i, j) for i, j in itertools.permutations(range(len(scheme)), 2)
                         if related(scheme, i, j, relation))
    return graph


def extend_with_pair(scheme, low, high, relation=DOMINATION):
    """Extend the relation so that ``low`` precedes ``high``.

    x ≺' y  iff  x ≺ y  or  [(x ≺ low or x = low) and (high ≺ y or y = high)],
    where equality is equality of payoff vectors. ``low`` and ``high`` must be
    incomparable; the result is again a strict partial order.
    """
    if _comparable(scheme, low, high, relation):
        raise SchemeError("acts {} and {} are comparable; nothing to extend".format(low, high))
    base = relation_graph(scheme, relation)
    graph = base.copy()
    for x, y in itertools.permutations(range(len(scheme)), 2):
        below_low = scheme.same_act(x, low) or base.has_edge(x, low)
        above_high = scheme.same_act(y, high) or base.has_edge(high, y)
        if below_low and above_high:
            graph.add_edge(x, y)
    return graph


def _linearize(graph):
    # ties between incomparable acts go to the lowest index
    return Ranking.from_order(nx.lexicographical_topological_sort(graph))


def build_projection(scheme, relation=DOMINATION):
    """Strict linear order extending the relation."""
    return _linearize(relation_graph(scheme, relation))


def build_two_distinct_projections(scheme, relation=DOMINATION):
    """Two projections ordering an incomparable pair oppositely, or None.

    The first places ``act_a`` below ``act_b``, the second the reverse.
    """
    _check_relation(relation)
    witness = contains_uncertainty(scheme) if relation == DOMINATION \
        else contains_enforced_uncertainty(scheme)
    if witness is None:
        return None
    a, b = witness.act_a, witness.act_b
    first = build_projection(scheme, relation)
    if not first.precedes(a, b):
        first = _linearize(extend_with_pair(scheme, a, b, relation))
    second = _linearize(extend_with_pair(scheme, b, a, relation))
    return first, second


def verify_projection(scheme, ranking, relation=DOMINATION):
    """Every related pair (i, j) has rank(i) < rank(j)."""
    missing = [i for i in range(len(scheme)) if i not in ranking.ranks]
    if missing:
        raise SchemeError("ranking is not total; no rank for acts {}".format(missing))
    return all(ranking.precedes(i, j)
               for i, j in itertools.permutations(range(len(scheme)), 2)
               if related(scheme, i, j, relation))


def indifferent(ranking, i, j):
    return ranking.ranks[i] == ranking.ranks[j]
