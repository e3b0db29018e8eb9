"""Plain-text tables of schemes and markets for ``--pretty`` output."""
from utils.rational import format_fraction


def format_table(rows):
    """Left-aligned columns; negative numbers keep their sign column."""
    rows = [[str(v) for v in r] for r in rows]
    rows = [[v if v and v[0] == '-' else ' ' + v for v in r] for r in rows]
    widths = [0] * max((len(r) for r in rows), default=0)
    for r in rows:
        for j, v in enumerate(r):
            widths[j] = max(widths[j], len(v))
    return '\n'.join('  '.join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in rows)


def render_scheme(scheme, state_names=None, ranking=None, witness=None, act_names=None):
    """Acts as rows, states as columns; witness cells are starred.

    A starred pair of cells shows the crossing: each act is worse than the
    other in one of the two starred states.
    """
    state_names = state_names or ['state_{}'.format(t) for t in range(scheme.state_count)]
    act_names = act_names or ['d{}'.format(i) for i in range(len(scheme))]
    marked = set()
    if witness is not None:
        marked = {(witness.act_a, witness.state_a), (witness.act_b, witness.state_a),
                  (witness.act_a, witness.state_b), (witness.act_b, witness.state_b)}
    header = ['act'] + list(state_names) + (['rank'] if ranking is not None else [])
    rows = [header]
    for i, act in enumerate(scheme.acts):
        cells = [act_names[i]]
        for t, v in enumerate(act):
            cells.append(format_fraction(v) + ('*' if (i, t) in marked else ''))
        if ranking is not None:
            cells.append(ranking.ranks[i])
        rows.append(cells)
    return format_table(rows)


def render_market(market, assets=None, states=None):
    n, m = len(market.prices), len(market.payoffs[0])
    assets = assets or ['asset_{}'.format(i) for i in range(n)]
    states = states or ['state_{}'.format(t) for t in range(m)]
    rows = [['asset'] + list(states) + ['price']]
    for name, row, price in zip(assets, market.payoffs, market.prices):
        rows.append([name] + [format_fraction(v) for v in row] + [format_fraction(price)])
    return format_table(rows)
