"""Seeded verification suites, one per theorem family.

Every suite returns a :class:`SuiteReport`. Suites that produce strong
shelling orders push ``(complex, order)`` pairs into an optional ``sink`` so
the ideal suite can re-check them for linear quotients.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Callable, Optional

from .bipartite import (
    NotDecomposable,
    UpwardSequences,
    bipartite_code,
    bipartition,
    connected_bipartite_graphs,
    construct_from_sequences,
    decompose,
    eccentric_center,
    is_ferrers,
    lex_strong_shelling,
    staircase_ok,
)
from .clutters import complete_clutter, e_chordal_peo, is_w_chordal, layered_matroid
from .complexes import complement_complex, dual_of_independence, expand
from .core import Clutter, Graph, Labeling, SimplicialComplex, Tree, iter_bits, maximal_sets
from .generic_tree import generic_matrix, gt_report, prufer_trees
from .graphs import (
    QuotientMap,
    blow_up,
    complement_graph,
    edge_complex,
    find_peo,
    induced_subgraph,
    peo_to_strong_shelling,
    quotient_graph,
)
from .ideals import (
    MonomialIdeal,
    alexander_dual,
    brute_force_dual,
    find_linear_quotients,
    generator_order,
    linear_quotients_in_order,
    to_ideal,
)
from .shelling import (
    FacetOrder,
    find_shelling,
    find_strong_shelling,
    oracle_strong_shellable,
)

Sink = Optional[list]
DEFAULT_SEED = 2017


@dataclass
class SuiteReport:
    name: str
    checked: int = 0
    failures: int = 0
    first_failure: str | None = None
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def check(self, condition: bool, describe: Callable[[], str] | str) -> bool:
        self.checked += 1
        if not condition:
            self.failures += 1
            if self.first_failure is None:
                self.first_failure = describe() if callable(describe) else describe
        return condition

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "checked": self.checked,
            "failures": self.failures,
            "first_failure": self.first_failure,
            "details": self.details,
            "seconds": round(self.seconds, 3),
        }


def _timed(fn):
    def run(*args, **kwargs) -> SuiteReport:
        start = time.perf_counter()
        report = fn(*args, **kwargs)
        report.seconds = time.perf_counter() - start
        return report

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


def _emit(sink: Sink, order: FacetOrder | None) -> None:
    if sink is not None and order is not None:
        sink.append(order)


def path_complex(n: int) -> SimplicialComplex:
    """L_n: the path on n vertices as a one-dimensional complex."""
    u = Labeling.range(n)
    if n == 1:
        return SimplicialComplex(u, (1,))
    return SimplicialComplex(u, tuple((1 << i) | (1 << (i + 1)) for i in range(n - 1)))


def all_graphs(n: int):
    pairs = list(combinations(range(n), 2))
    u = Labeling.range(n)
    for bits in range(1 << len(pairs)):
        yield Graph.from_masks(u, [(1 << a) | (1 << b) for k, (a, b) in enumerate(pairs) if bits >> k & 1])


def random_graph(rng: random.Random, n: int, p: float | None = None) -> Graph:
    p = rng.random() if p is None else p
    edges = [(1 << a) | (1 << b) for a, b in combinations(range(n), 2) if rng.random() < p]
    return Graph.from_masks(Labeling.range(n), edges)


def random_pure_complex(rng: random.Random, n: int, k: int, count: int | None = None) -> SimplicialComplex:
    pool = [sum(1 << v for v in c) for c in combinations(range(n), k)]
    count = rng.randint(1, len(pool)) if count is None else min(count, len(pool))
    facets = rng.sample(pool, count)
    return SimplicialComplex(Labeling.range(n), tuple(maximal_sets(facets)))


def random_complex(rng: random.Random, n: int, count: int) -> SimplicialComplex:
    sets = [rng.randrange(1, 1 << n) for _ in range(count)]
    return SimplicialComplex(Labeling.range(n), tuple(maximal_sets(sets)))


@_timed
def lpath(sink: Sink = None, max_n: int = 8) -> SuiteReport:
    """Strong shellability of L_n holds exactly for n <= 4; shellability always."""
    rep = SuiteReport("lpath")
    for n in range(2, max_n + 1):
        cx = path_complex(n)
        ss = find_strong_shelling(cx)
        _emit(sink, ss)
        rep.check((ss is not None) == (n <= 4), f"L_{n}: strong shelling found = {ss is not None}")
        rep.check(find_shelling(cx) is not None, f"L_{n} not shellable")
    return rep


def _equivalence_row(g: Graph, sink: Sink) -> tuple[bool, bool, bool, bool]:
    ss = find_strong_shelling(edge_complex(g))
    _emit(sink, ss)
    chordal = find_peo(complement_graph(g)) is not None
    built = peo_to_strong_shelling(g)
    _emit(sink, built)
    lq = find_linear_quotients(to_ideal(g)) is not None
    return ss is not None, chordal, built is not None, lq


@_timed
def equivalence5(seed: int = DEFAULT_SEED, count: int = 200, sink: Sink = None) -> SuiteReport:
    """ESS, complement chordal, constructive order and linear quotients agree."""
    rep = SuiteReport("equivalence5")
    ess = 0
    graphs = list(all_graphs(5))
    rng = random.Random(seed)
    graphs += [random_graph(rng, 7) for _ in range(count)]
    for g in graphs:
        row = _equivalence_row(g, sink)
        ess += row[0]
        rep.check(len(set(row)) == 1, lambda g=g, row=row: f"{g}: {row}")
    rep.details = {"graphs": len(graphs), "ess": ess}
    return rep


@_timed
def oracle(seed: int = DEFAULT_SEED, count: int = 100, max_facets: int = 6, sink: Sink = None) -> SuiteReport:
    """Backtracking search agrees with trying every facet permutation."""
    rep = SuiteReport("oracle")
    seen = set()
    pool = [path_complex(n) for n in range(2, 9)]
    pool += [edge_complex(g) for g in all_graphs(5)]
    rng = random.Random(seed)
    # the same draws as the n = 7 half of equivalence5
    pool += [edge_complex(random_graph(rng, 7)) for _ in range(200)]
    pool = [cx for cx in pool if cx.is_pure]
    for i in range(count):
        n = rng.randint(2, 6)
        if i % 2:
            cx = random_pure_complex(rng, n, rng.randint(1, min(3, n)), rng.randint(1, max_facets))
        else:
            cx = random_complex(rng, n, rng.randint(1, max_facets))
        pool.append(cx)
    for cx in pool:
        if len(cx.facets) > max_facets or (cx.universe, cx.facets) in seen:
            continue
        seen.add((cx.universe, cx.facets))
        truth = oracle_strong_shellable(cx, max_facets)
        order = find_strong_shelling(cx)
        _emit(sink, order)
        found = order is not None
        rep.check(truth == found, lambda cx=cx, t=truth: f"{cx}: oracle {t}, search {not t}")
    rep.details = {"complexes": rep.checked}
    return rep


def random_uniform_clutter(rng: random.Random, n: int, d: int) -> Clutter:
    p = rng.random()
    edges = [sum(1 << v for v in c) for c in combinations(range(n), d) if rng.random() < p]
    return Clutter(Labeling.range(n), tuple(maximal_sets(edges)))


@_timed
def clutter_chordal(seed: int = DEFAULT_SEED, count: int = 200, sink: Sink = None) -> SuiteReport:
    """Chordal 3-uniform clutters have strongly shellable I(c_3(C))^dual."""
    rep = SuiteReport("clutter-chordal")
    rng = random.Random(seed)
    w_count = e_count = 0
    for _ in range(count):
        c = random_uniform_clutter(rng, rng.randint(3, 6), 3)
        w = is_w_chordal(c)
        e = e_chordal_peo(c) is not None
        w_count += w
        e_count += e
        if w or e:
            order = find_strong_shelling(dual_of_independence(c, 3))
            _emit(sink, order)
            rep.check(order is not None, lambda c=c: f"chordal {c} but dual complex not SS")
    for n in range(1, 7):
        for d in range(0, 4):
            rep.check(e_chordal_peo(complete_clutter(n, d)) is not None, f"K_{n}^{d} not E-chordal")
    layered = 0
    for nx in range(1, 4):
        for ny in range(1, 4):
            for lam in range(1, nx + ny + 1):
                for i in range(max(0, lam - ny), min(lam, nx) + 1):
                    for j in range(i, min(lam, nx) + 1):
                        cx = layered_matroid(range(1, nx + 1), range(nx + 1, nx + ny + 1), lam, i, j)
                        order = find_strong_shelling(cx)
                        _emit(sink, order)
                        layered += 1
                        rep.check(order is not None, f"layered matroid {nx},{ny},{lam},{i},{j} not SS")
    rep.details = {"clutters": count, "w_chordal": w_count, "e_chordal": e_count, "layered": layered}
    return rep


@_timed
def expansion(seed: int = DEFAULT_SEED, count: int = 200, expand_count: int = 100, sink: Sink = None) -> SuiteReport:
    """SS is invariant under complement complexes and expansions."""
    rep = SuiteReport("expansion")
    rng = random.Random(seed)
    ss_count = 0
    for i in range(count):
        n = rng.randint(3, 5)
        k = rng.randint(2, n - 1)
        cx = random_pure_complex(rng, n, k, rng.randint(2, 6))
        base = find_strong_shelling(cx)
        _emit(sink, base)
        ss_count += base is not None
        comp = find_strong_shelling(complement_complex(cx))
        _emit(sink, comp)
        rep.check((base is None) == (comp is None), lambda cx=cx: f"complement disagrees on {cx}")
        if i < expand_count:
            s = [rng.randint(1, 2) for _ in range(n)]
            ex = find_strong_shelling(expand(cx, s))
            _emit(sink, ex)
            rep.check((base is None) == (ex is None), lambda cx=cx, s=s: f"expansion {s} disagrees on {cx}")
    rep.details = {"complexes": count, "strongly_shellable": ss_count}
    return rep


def _is_ess(g: Graph, sink: Sink) -> bool:
    order = find_strong_shelling(edge_complex(g))
    _emit(sink, order)
    return order is not None


def random_ess_graph(rng: random.Random, max_n: int = 6) -> Graph:
    while True:
        g = random_graph(rng, rng.randint(2, max_n))
        if find_peo(complement_graph(g)) is not None and g.edges:
            return g


def random_proper_quotient(rng: random.Random, g: Graph) -> QuotientMap:
    """Merge random pairs of non-adjacent classes until a coin says stop."""
    classes = [1 << v for v in range(g.n)]
    while rng.random() < 0.7:
        pairs = [
            (a, b)
            for a, b in combinations(range(len(classes)), 2)
            if not any(g.adj[v] & classes[b] for v in iter_bits(classes[a]))
        ]
        if not pairs:
            break
        a, b = rng.choice(pairs)
        classes[a] |= classes.pop(b)
    mapping = {}
    for k, cls in enumerate(classes):
        for v in iter_bits(cls):
            mapping[g.universe.labels[v]] = f"c{k}"
    return QuotientMap.of(g, mapping)


@_timed
def preservation(seed: int = DEFAULT_SEED, count: int = 100, moves: int = 50, sink: Sink = None) -> SuiteReport:
    """ESS passes to induced subgraphs, proper quotients and blow-ups."""
    rep = SuiteReport("preservation")
    rng = random.Random(seed)
    graphs = [random_ess_graph(rng) for _ in range(count)]
    for g in graphs:
        for w in range(1, 1 << g.n):
            sub = induced_subgraph(g, w)
            rep.check(_is_ess(sub, sink), lambda g=g, w=w: f"induced {g.universe.render(w)} of {g} not ESS")
    for k in range(moves):
        g = graphs[k % len(graphs)]
        f = random_proper_quotient(rng, g)
        rep.check(f.is_proper(), "generated quotient map is not proper")
        h = quotient_graph(g, f)
        rep.check(_is_ess(h, sink), lambda g=g, h=h: f"quotient {h} of {g} not ESS")
        v = rng.randrange(g.n)
        m = rng.randint(1, 10 - g.n + 1)
        b = blow_up(g, v, m)
        rep.check(_is_ess(b, sink), lambda g=g, v=v, m=m: f"blow-up of {g} at {v} x{m} not ESS")
    rep.details = {"graphs": count, "quotients": moves, "blow_ups": moves}
    return rep


T1_MATRIX = [
    ["-x_{1,2}", "x_{2,1}", "0", "0"],
    ["-x_{1,3}", "0", "x_{3,1}", "0"],
    ["-x_{1,4}", "0", "0", "x_{4,1}"],
]
T2_MATRIX = [
    ["-x_{1,2}", "x_{2,1}", "0", "0"],
    ["0", "-x_{2,3}", "x_{3,2}", "0"],
    ["0", "0", "-x_{3,4}", "x_{4,3}"],
]


def example_trees() -> tuple[Tree, Tree]:
    u = Labeling.range(4)
    t1 = Tree.from_masks(u, [u.mask("12"), u.mask("13"), u.mask("14")])
    t2 = Tree.from_masks(u, [u.mask("12"), u.mask("23"), u.mask("34")])
    return t1, t2


@_timed
def trees7(max_n: int = 7, sink: Sink = None) -> SuiteReport:
    """Every gt_report check for all labelled trees with 3..max_n vertices."""
    rep = SuiteReport("trees7")
    counts = {}
    for n in range(3, max_n + 1):
        k = 0
        for tree in prufer_trees(n):
            r = gt_report(tree)
            _emit(sink, r.ess_order)
            _emit(sink, r.strong_order)
            k += 1
            rep.check(r.ok, lambda r=r: f"{r.tree}: failed {r.failed()}")
        counts[n] = k
    t1, t2 = example_trees()
    rep.check(generic_matrix(t1).dense() == T1_MATRIX, "A(T1) differs")
    rep.check(generic_matrix(t2).dense() == T2_MATRIX, "A(T2) differs")
    rep.details = {"trees": counts}
    return rep


def exhaustive_ferrers(g: Graph) -> bool:
    parts = bipartition(g)
    if parts is None:
        return False
    xs, ys = (list(iter_bits(p)) for p in parts)
    return any(
        staircase_ok(g, px, py) for px in permutations(xs) for py in permutations(ys)
    )


SAMPLE_SEQUENCES = UpwardSequences.of((4, 3, 2), (2, 1, 0, 0))


@_timed
def bipartite7(seed: int = DEFAULT_SEED, max_n: int = 7, sink: Sink = None) -> SuiteReport:
    """Three-way equivalence, Ferrers equivalence and round trips.

    The enumeration is exhaustive, so ``seed`` only orders base vertices.
    """
    rep = SuiteReport("bipartite7")
    rng = random.Random(seed)
    total = ess_total = 0
    for n in range(1, max_n + 1):
        for g in connected_bipartite_graphs(n):
            total += 1
            ess = _is_ess(g, sink)
            ess_total += ess
            bases = list(range(g.n))
            rng.shuffle(bases)
            decs = []
            for w in bases:
                try:
                    decs.append(decompose(g, w))
                except NotDecomposable:
                    pass
            every = len(decs) == g.n
            some = bool(decs)
            rep.check(ess == every == some, lambda g=g, e=ess, k=len(decs): f"{g}: ESS={e}, bases={k}")
            if g.edges:
                ferrers = is_ferrers(g) is not None
                rep.check(ferrers == ess, lambda g=g: f"{g}: Ferrers disagrees with ESS")
                rep.check(ferrers == exhaustive_ferrers(g), lambda g=g: f"{g}: degree-sorted Ferrers test wrong")
            for dec in decs:
                built = construct_from_sequences(dec.sequences)
                rep.check(bipartite_code(built) == bipartite_code(g), lambda g=g: f"{g}: round trip not isomorphic")
                order = lex_strong_shelling(g, dec.w)
                _emit(sink, order)
                rep.check(order.status == "strong", "lex order not strong")
            if ess and g.edges:
                try:
                    eccentric_center(g)
                    rep.check(True, "")
                except Exception as exc:  # noqa: BLE001 - report any failure
                    rep.check(False, f"{g}: no eccentric centre ({exc})")
    fig = construct_from_sequences(SAMPLE_SEQUENCES)
    rec = decompose(fig, "w").sequences
    rep.check(rec == SAMPLE_SEQUENCES, f"sample instance recovered {rec}")
    rep.details = {"graphs": total, "ess": ess_total}
    return rep


def _ideal_pool(sink: list) -> list[MonomialIdeal]:
    pool = {}
    for order in sink:
        cx = order.complex
        if cx.facets and 0 not in cx.facets:
            ideal = to_ideal(cx)
            pool[ideal] = ideal
    return list(pool.values())


@_timed
def ideals(seed: int = DEFAULT_SEED, sink: Sink = None, count: int = 200) -> SuiteReport:
    """Duality involution, strong-order transfer, and the brute-force dual."""
    rep = SuiteReport("ideals")
    if sink is None:
        sink = []
        lpath(sink=sink)
        for g in all_graphs(5):
            _emit(sink, find_strong_shelling(edge_complex(g)))
    transfers = 0
    for order in sink:
        cx = order.complex
        if not cx.is_pure or not cx.facets:
            continue
        ideal = to_ideal(cx)
        seq = generator_order(ideal, order.facets)
        transfers += 1
        rep.check(
            bool(linear_quotients_in_order(ideal, seq)),
            lambda cx=cx, o=order: f"order {o.named()} of {cx} lacks linear quotients",
        )
    pool = _ideal_pool(sink)
    for ideal in pool:
        rep.check(alexander_dual(alexander_dual(ideal)) == ideal, lambda i=ideal: f"dual not involutive on {i}")
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(1, 12)
        gens = [rng.randrange(1, 1 << n) for _ in range(rng.randint(1, 6))]
        ideal = MonomialIdeal.of(Labeling.range(n), gens)
        rep.check(alexander_dual(ideal) == brute_force_dual(ideal), lambda i=ideal: f"dual of {i} disagrees")
    rep.details = {"transfers": transfers, "ideals": len(pool), "random": count}
    return rep


SUITES = {
    "lpath": lpath,
    "equivalence5": equivalence5,
    "oracle": oracle,
    "clutter-chordal": clutter_chordal,
    "expansion": expansion,
    "trees7": trees7,
    "preservation": preservation,
    "bipartite7": bipartite7,
    "ideals": ideals,
}


__all__ = [
    "DEFAULT_SEED",
    "SUITES",
    "SuiteReport",
    "all_graphs",
    "bipartite7",
    "clutter_chordal",
    "equivalence5",
    "expansion",
    "ideals",
    "lpath",
    "oracle",
    "path_complex",
    "preservation",
    "trees7",
]
