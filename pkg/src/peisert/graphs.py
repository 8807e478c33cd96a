"""Peisert graphs: construction, clique counts, and closed forms.

The graph on F_q (q = p^{2t}, p = 3 mod 4) joins a and b when a - b
falls in H = <g^4> union g<g^4>, i.e. when dlog(a-b) mod 4 is 0 or 1.
Adjacency is stored as one Python big-int bitset per vertex, which
makes neighborhood intersections single machine-word-parallel ANDs;
brute-force clique counting walks ordered neighborhoods and never
assumes any structure theorem, so it can serve as the independent
oracle for the closed-form counts.

Closed forms: k3 = q(q-1)(q-5)/48, and k4 via the quartic-character
hypergeometric value together with the normalized representation
q = u^2 + 2v^2.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial, isqrt

import numpy as np

from .charsum import CharCtx, char_ctx
from .ffield import FieldCtx, PrimePower, build_field

THEOREM_TUPLE = (1, 1, 3, 0, 0)  # numerator chi4, chi4, chi4^3; denominator eps, eps

DEFAULT_BRUTE_BOUNDS = {3: 6561, 4: 961, 5: 361}


class BruteForceBoundError(ValueError):
    pass


class PeisertGraph:
    """Vertex set F_q with bitset adjacency; immutable after build."""

    def __init__(self, ctx: FieldCtx):
        self.ctx = ctx
        self.q = ctx.q
        dl = ctx.dlog_table
        res = (dl % 4).astype(np.int64)
        res[0] = 4
        self.residue_class = res
        h_bool = res <= 1
        self.h_bool = h_bool
        self.h_elements = np.nonzero(h_bool)[0]

        # well-definedness: -1 must be a fourth power so that
        # a-b and b-a share a residue class
        if ctx.dlog(ctx.minus_one()) % 4 != 0:
            raise AssertionError("-1 is not a fourth power; edges ill-defined")

        q = ctx.q
        neg = ctx.neg_table
        adj: list[int] = []
        chunk = max(1, (1 << 22) // q)
        xs_all = np.arange(q)
        for lo in range(0, q, chunk):
            xs = xs_all[lo:lo + chunk]
            diff = ctx.add_outer(xs, neg)      # enc(x - b) per column b
            rows = h_bool[diff]
            packed = np.packbits(rows, axis=1, bitorder="little")
            for r in packed:
                adj.append(int.from_bytes(r.tobytes(), "little"))
        self.adj = adj
        self.adj_gt = [a >> (v + 1) << (v + 1) for v, a in enumerate(adj)]

    def has_edge(self, a: int, b: int) -> bool:
        return a != b and bool((self.adj[a] >> b) & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.adj[v])


def build_graph(ctx: FieldCtx) -> PeisertGraph:
    return PeisertGraph(ctx)


def _bits(x: int) -> list[int]:
    out = []
    while x:
        lsb = x & -x
        out.append(lsb.bit_length() - 1)
        x ^= lsb
    return out


# ---------------------------------------------------------------------------
# brute-force clique counting (the oracle)


def _count_from(candidates: int, depth: int, adj_gt: list[int]) -> int:
    """Number of (depth)-subsets of the candidate set forming cliques,
    where candidates are pairwise constrained via ordered adjacency."""
    if depth == 1:
        return candidates.bit_count()
    total = 0
    x = candidates
    while x:
        lsb = x & -x
        v = lsb.bit_length() - 1
        x ^= lsb
        nxt = candidates & adj_gt[v]
        if nxt:
            total += _count_from(nxt, depth - 1, adj_gt)
    return total


def _count_stripe(args) -> int:
    start, step, m = args
    adj_gt = _PAR_GRAPH
    total = 0
    for u in range(start, len(adj_gt), step):
        c = adj_gt[u]
        if c:
            total += _count_from(c, m - 1, adj_gt)
    return total


_PAR_GRAPH: list[int] | None = None


def brute_cliques(g: PeisertGraph, m: int, *, workers: int = 1,
                  max_brute_q: int | None = None) -> int:
    """Exact number of m-cliques by ordered neighborhood intersection."""
    if m not in (3, 4, 5):
        raise ValueError("brute counting supports m in {3, 4, 5}")
    bound = max_brute_q if max_brute_q is not None else DEFAULT_BRUTE_BOUNDS[m]
    if g.q > bound:
        raise BruteForceBoundError(
            f"q={g.q} exceeds brute-force bound {bound} for m={m}")

    if workers > 1 and hasattr(os, "fork"):
        import multiprocessing as mp
        global _PAR_GRAPH
        _PAR_GRAPH = g.adj_gt
        try:
            stripes = workers * 4
            with mp.get_context("fork").Pool(workers) as pool:
                parts = pool.map(_count_stripe,
                                 [(s, stripes, m) for s in range(stripes)])
            return sum(parts)
        finally:
            _PAR_GRAPH = None

    adj_gt = g.adj_gt
    total = 0
    for u in range(g.q):
        c = adj_gt[u]
        if c:
            total += _count_from(c, m - 1, adj_gt)
    return total


# ---------------------------------------------------------------------------
# closed forms


def k3_formula(q: int) -> int:
    num = q * (q - 1) * (q - 5)
    if num % 48:
        raise ArithmeticError(f"triangle formula not integral at q={q}")
    return num // 48


@dataclass(frozen=True)
class UVRep:
    """q = u^2 + 2v^2 with u = 3 (mod 4), and p does not divide u
    when p = 3 (mod 8)."""

    u: int
    v: int


def uv_solve(pp: PrimePower) -> UVRep:
    """Enumerate representations q = u^2 + 2v^2 and apply the sign and
    divisibility normalization; exactly one u must survive."""
    q, p = pp.q, pp.p
    survivors = []
    v = 0
    while 2 * v * v <= q:
        rem = q - 2 * v * v
        r = isqrt(rem)
        if r * r == rem:
            for u in {r, -r}:
                if u % 4 != 3:
                    continue
                if p % 8 == 3 and u % p == 0:
                    continue
                survivors.append(UVRep(u, v))
        v += 1
    if len(survivors) != 1:
        raise ArithmeticError(
            f"normalization of q={q} as u^2+2v^2 left {len(survivors)} "
            f"candidates: {survivors}")
    return survivors[0]


@dataclass(frozen=True)
class CliqueReport:
    """Paired brute-force and closed-form counts with the formula's
    intermediates (absent entries are None)."""

    q: int
    m: int
    brute: int | None
    formula: int | None
    u: int | None = None
    rho: int | None = None
    q2_f32: int | None = None

    @property
    def consistent(self) -> bool:
        if self.brute is None or self.formula is None:
            return True
        return self.brute == self.formula


def k4_formula(cs: CharCtx) -> CliqueReport:
    """k4 = q(q-1)/3072 * [2(q^2-20q+81) + 2u(-p)^t + 3*q^2*3F2]."""
    f = cs.field
    q, p, t = f.q, f.p, f.t
    rep = uv_solve(f.pp)
    s = cs.q2_f32_int(THEOREM_TUPLE)
    bracket = 2 * (q * q - 20 * q + 81) + 2 * rep.u * (-p) ** t + 3 * s
    num = q * (q - 1) * bracket
    if num % 3072:
        raise ArithmeticError(f"k4 formula not integral at q={q}")
    k4 = num // 3072
    if k4 < 0:
        raise ArithmeticError(f"k4 formula negative at q={q}")
    return CliqueReport(q=q, m=4, brute=None, formula=k4,
                        u=rep.u, rho=cs.rho, q2_f32=s)


def clique_report(g: PeisertGraph, m: int, *, workers: int = 1,
                  max_brute_q: int | None = None,
                  cs: CharCtx | None = None) -> CliqueReport:
    """Brute and closed-form counts side by side (either may be absent:
    brute above its size bound, formula for m = 5)."""
    brute = None
    try:
        brute = brute_cliques(g, m, workers=workers, max_brute_q=max_brute_q)
    except BruteForceBoundError:
        pass
    if m == 3:
        return CliqueReport(q=g.q, m=3, brute=brute, formula=k3_formula(g.q))
    if m == 4:
        rep = k4_formula(cs or char_ctx(g.ctx))
        return CliqueReport(q=g.q, m=4, brute=brute, formula=rep.formula,
                            u=rep.u, rho=rep.rho, q2_f32=rep.q2_f32)
    return CliqueReport(q=g.q, m=m, brute=brute, formula=None)


# ---------------------------------------------------------------------------
# structure checks


@dataclass
class StructureReport:
    q: int
    degree_ok: bool
    symmetry_ok: bool
    self_complement_ok: bool
    translation_ok: bool
    quartic_scaling_ok: bool
    minus_one_quartic_ok: bool
    g_independence_ok: bool | None
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def structural_checks(g: PeisertGraph, *, pairwise_limit: int = 121,
                      rng=None) -> StructureReport:
    """Witness checks: regularity, symmetry, the complement map x -> g^2 x,
    translation and fourth-power-scaling automorphisms, -1 in <g^4>, and
    (for q <= pairwise_limit) independence from the primitive element."""
    ctx = g.ctx
    q = ctx.q
    failures: list[str] = []

    degs = {v: g.degree(v) for v in range(q)}
    degree_ok = all(d == (q - 1) // 2 for d in degs.values())
    if not degree_ok:
        bad = next(v for v, d in degs.items() if d != (q - 1) // 2)
        failures.append(f"degree({bad}) = {degs[bad]} != (q-1)/2")

    minus_one_quartic_ok = ctx.dlog(ctx.minus_one()) % 4 == 0
    if not minus_one_quartic_ok:
        failures.append("-1 is not a fourth power")

    exhaustive = q <= pairwise_limit
    symmetry_ok = True
    self_complement_ok = True
    translation_ok = True
    quartic_scaling_ok = True

    # complement witness at set level: g^2 * H must be exactly F_q^* - H
    shifted = np.zeros(q, dtype=bool)
    g2 = ctx.pow_(ctx.g, 2)
    for x in g.h_elements:
        shifted[ctx.mul(g2, int(x))] = True
    comp = ~g.h_bool
    comp[0] = False
    if not np.array_equal(shifted, comp):
        self_complement_ok = False
        failures.append("g^2 * H is not the complement of H")

    if rng is None:
        import random
        rng = random.Random(20240)

    if exhaustive:
        pairs = [(a, b) for a in range(q) for b in range(a + 1, q)]
    else:
        pairs = [(rng.randrange(q), rng.randrange(q)) for _ in range(2000)]
        pairs = [(a, b) for a, b in pairs if a != b]

    for a, b in pairs:
        if g.has_edge(a, b) != g.has_edge(b, a):
            symmetry_ok = False
            failures.append(f"asymmetric pair ({a}, {b})")
            break
    sigma = [ctx.mul(g2, x) for x in range(q)]
    for a, b in pairs:
        if g.has_edge(a, b) == g.has_edge(sigma[a], sigma[b]):
            self_complement_ok = False
            failures.append(f"complement map fails at ({a}, {b})")
            break
    shifts = [ctx.g, ctx.antilog(rng.randrange(q - 1)), 1]
    for c in shifts:
        tau = [ctx.add(x, c) for x in range(q)]
        for a, b in pairs:
            if g.has_edge(a, b) != g.has_edge(tau[a], tau[b]):
                translation_ok = False
                failures.append(f"translation by {c} fails at ({a}, {b})")
                break
        if not translation_ok:
            break
    quartics = [ctx.pow_(ctx.g, 4), ctx.pow_(ctx.g, 4 * rng.randrange(1, q - 1))]
    for hmul in quartics:
        mu = [ctx.mul(hmul, x) for x in range(q)]
        for a, b in pairs:
            if g.has_edge(a, b) != g.has_edge(mu[a], mu[b]):
                quartic_scaling_ok = False
                failures.append(f"scaling by {hmul} fails at ({a}, {b})")
                break
        if not quartic_scaling_ok:
            break

    g_independence_ok: bool | None = None
    if exhaustive:
        g_independence_ok = True
        base = g.h_bool
        order = q - 1
        dl = ctx.dlog_table
        for gp in ctx.primitive_elements():
            d = ctx.dlog(gp)
            dinv = pow(d, -1, order)
            cls = (dinv * dl[1:]) % order % 4
            hb = np.zeros(q, dtype=bool)
            hb[1:] = cls <= 1
            if not np.array_equal(hb, base):
                g_independence_ok = False
                failures.append(f"edge set differs for primitive element {gp}")
                break

    return StructureReport(q=q, degree_ok=degree_ok, symmetry_ok=symmetry_ok,
                           self_complement_ok=self_complement_ok,
                           translation_ok=translation_ok,
                           quartic_scaling_ok=quartic_scaling_ok,
                           minus_one_quartic_ok=minus_one_quartic_ok,
                           g_independence_ok=g_independence_ok,
                           failures=failures)


# ---------------------------------------------------------------------------
# the neighborhood subgraph of 0 and the counting identities through it


class HSubgraph:
    """Subgraph induced by H (the neighborhood of vertex 0)."""

    def __init__(self, g: PeisertGraph):
        self.graph = g
        self.vertices = [int(v) for v in g.h_elements]
        index = {v: i for i, v in enumerate(self.vertices)}
        n = len(self.vertices)
        adj = []
        for v in self.vertices:
            row = 0
            x = g.adj[v]
            while x:
                lsb = x & -x
                w = lsb.bit_length() - 1
                x ^= lsb
                j = index.get(w)
                if j is not None:
                    row |= 1 << j
            adj.append(row)
        self.adj = adj
        self.adj_gt = [a >> (i + 1) << (i + 1) for i, a in enumerate(adj)]
        self.index = index

    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def triangle_count(self) -> int:
        total = 0
        for i in range(len(self.vertices)):
            c = self.adj_gt[i]
            if c:
                total += _count_from(c, 2, self.adj_gt)
        return total

    def triangles_through(self, vertex: int) -> int:
        """Triangles of the subgraph containing the given original vertex."""
        i = self.index[vertex]
        nbrs = self.adj[i]
        total = 0
        x = nbrs
        while x:
            lsb = x & -x
            j = lsb.bit_length() - 1
            x ^= lsb
            total += (nbrs & self.adj_gt[j]).bit_count()
        return total


@dataclass
class HSubgraphReport:
    q: int
    edges: int
    edges_expected: int
    k3_whole: int | None
    k3_from_edges: int
    k4_whole: int | None
    k4_from_triangles: int
    tri_through_one: int
    tri_through_g: int
    failures: list[str]

    @property
    def ok(self) -> bool:
        return not self.failures


def h_subgraph_checks(g: PeisertGraph, *, workers: int = 1,
                      max_brute_q: int | None = None) -> HSubgraphReport:
    """Counting identities relating the whole graph to the subgraph on H:

    * edges(<H>) = (q-1)(q-5)/16,
    * k3(whole) = (q/3) * edges(<H>),
    * k4(whole) = (q/4) * k3(<H>)  (when brute k4 is affordable),
    * k3(<H>) = ((q-1)/12) * [k3(<H>,1) + k3(<H>,g)] with equal summands.
    """
    ctx = g.ctx
    q = ctx.q
    failures: list[str] = []
    sub = HSubgraph(g)

    edges = sub.edge_count()
    edges_expected = (q - 1) * (q - 5) // 16
    if edges != edges_expected:
        failures.append(f"edges(<H>) = {edges} != {edges_expected}")

    k3_whole = None
    try:
        k3_whole = brute_cliques(g, 3, workers=workers, max_brute_q=max_brute_q)
    except BruteForceBoundError:
        pass
    k3_from_edges = q * edges // 3
    if q * edges % 3:
        failures.append("q * edges(<H>) not divisible by 3")
    if k3_whole is not None and k3_whole != k3_from_edges:
        failures.append(f"k3 = {k3_whole} != (q/3)*edges(<H>) = {k3_from_edges}")

    tri = sub.triangle_count()
    k4_whole = None
    try:
        k4_whole = brute_cliques(g, 4, workers=workers, max_brute_q=max_brute_q)
    except BruteForceBoundError:
        pass
    if q * tri % 4:
        failures.append("q * k3(<H>) not divisible by 4")
    k4_from_triangles = q * tri // 4
    if k4_whole is not None and k4_whole != k4_from_triangles:
        failures.append(f"k4 = {k4_whole} != (q/4)*k3(<H>) = {k4_from_triangles}")

    t1 = sub.triangles_through(1)
    tg = sub.triangles_through(ctx.g)
    if t1 != tg:
        failures.append(f"k3(<H>,1) = {t1} != k3(<H>,g) = {tg}")
    if (q - 1) * (t1 + tg) % 12:
        failures.append("(q-1)[k3(<H>,1)+k3(<H>,g)] not divisible by 12")
    elif tri != (q - 1) * (t1 + tg) // 12:
        failures.append(
            f"k3(<H>) = {tri} != ((q-1)/12)[k3(<H>,1)+k3(<H>,g)]")

    return HSubgraphReport(q=q, edges=edges, edges_expected=edges_expected,
                           k3_whole=k3_whole, k3_from_edges=k3_from_edges,
                           k4_whole=k4_whole,
                           k4_from_triangles=k4_from_triangles,
                           tri_through_one=t1, tri_through_g=tg,
                           failures=failures)


# ---------------------------------------------------------------------------
# asymptotics


def clique_density_limit(m: int) -> Fraction:
    """lim k_m / q^m = 1 / (2^C(m,2) * m!)."""
    return Fraction(1, 2 ** comb(m, 2) * factorial(m))


def _le_int_sqrt(x: int, y: int, q: int) -> bool:
    """Exact test x <= y * sqrt(q) for integers with y >= 0."""
    if x <= 0:
        return True
    return x * x <= y * y * q


@dataclass
class AsymptoticRow:
    q: int
    m: int
    count: int
    ratio: float
    limit: float
    deviation: float
    envelope: float
    within: bool


def _sandwich_ok(m: int, q: int, k_m: int, k_prev: int) -> bool:
    """Exact two-sided envelope for k_m given k_{m-1}:
    |m * 4^(m-1) * q * k_m - 2^(m-1) (q-m+1) q k_{m-1}| <=
    2^(2m) (1 + 2^m * 3m * sqrt(q)) (3^(m-1) - 1) q k_{m-1}."""
    lhs_center = m * 4 ** (m - 1) * q * k_m - 2 ** (m - 1) * (q - m + 1) * q * k_prev
    c_flat = 2 ** (2 * m) * (3 ** (m - 1) - 1) * q * k_prev
    c_sqrt = 2 ** (2 * m) * 2 ** m * 3 * m * (3 ** (m - 1) - 1) * q * k_prev
    # |lhs_center| <= c_flat + c_sqrt * sqrt(q)
    return _le_int_sqrt(abs(lhs_center) - c_flat, c_sqrt, q)


def _envelope_halfwidth(m: int, q: int) -> float:
    return (2 ** (2 * m) * (1 + 2 ** m * 3 * m * q ** 0.5)
            * (3 ** (m - 1) - 1)) / (m * 4 ** (m - 1) * q)


def asymptotic_scan(m: int, q_list: list[int], *, workers: int = 1,
                    max_brute_q: int | None = None) -> list[AsymptoticRow]:
    """Clique-density ratios k_m/q^m against the limiting value.

    m = 3 is checked against the exact closed-form deviation bound
    1/(8q); m = 4, 5 against the explicit sqrt(q)-envelope relative to
    k_{m-1} (counts via formula for m <= 4, brute force for m = 5).
    """
    if m not in (3, 4, 5):
        raise ValueError("asymptotic scan supports m in {3, 4, 5}")
    limit = clique_density_limit(m)
    rows = []
    for q in q_list:
        field = build_field(q_to_pt(q)[0], q_to_pt(q)[1])
        if m == 3:
            k = k3_formula(q)
            dev = abs(Fraction(k, q ** 3) - limit)
            env = Fraction(1, 8 * q)
            within = dev <= env
        elif m == 4:
            k = k4_formula(char_ctx(field)).formula
            k_prev = k3_formula(q)
            dev = abs(Fraction(k, q ** 4) - limit)
            env = Fraction(_envelope_halfwidth(m, q) * Fraction(k_prev, q ** 3))
            within = _sandwich_ok(4, q, k, k_prev)
        else:
            g = build_graph(field)
            k = brute_cliques(g, 5, workers=workers, max_brute_q=max_brute_q)
            k_prev = k4_formula(char_ctx(field)).formula
            dev = abs(Fraction(k, q ** 5) - limit)
            env = Fraction(_envelope_halfwidth(m, q) * Fraction(k_prev, q ** 4))
            within = _sandwich_ok(5, q, k, k_prev)
        rows.append(AsymptoticRow(q=q, m=m, count=k, ratio=float(Fraction(k, q ** m)),
                                  limit=float(limit), deviation=float(dev),
                                  envelope=float(env), within=within))
    return rows


def hyper_value_decay_ok(q: int, q2_f32: int) -> bool:
    """Smallness envelope |3F2| <= 1/(2 sqrt(q)), exactly 4*S^2 <= q^3."""
    return 4 * q2_f32 * q2_f32 <= q ** 3


def q_to_pt(q: int) -> tuple[int, int]:
    """Factor q = p^{2t}; raises for malformed q."""
    from .ffield import prime_factors
    ps = prime_factors(q)
    if len(ps) != 1:
        raise ValueError(f"q={q} is not a prime power")
    p = ps[0]
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    if q != 1 or k % 2:
        raise ValueError("q must be an even power of p")
    return p, k // 2
