"""Coset graphs of dual punctured codes, realized as Cayley graphs on syndromes.

A vertex is a syndrome ``(s0, s1)`` over Z_q, encoded as ``s1*q + s0``.  Two
syndromes are adjacent when they differ by ``lam * col_i`` for a nonzero
scalar ``lam`` and a column ``col_i`` of the punctured generator matrix.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from math import isqrt

import numpy as np

from .codes import CodeSpec, closed_form_distribution
from .puncture import PuncturedCode, projectivity_check, punctured_code
from .ring import ring_init

DEFAULT_VERTEX_BUDGET = 10**6
FULL_CHECK_LIMIT = 4096
DEFAULT_SEED = 20190101
DEFAULT_SAMPLES = 20000


class NotStronglyRegular(ValueError):
    def __init__(self, msg, witness=None):
        super().__init__(msg)
        self.witness = witness


class TrivialGraph(NotStronglyRegular):
    """Complete or edgeless graph: one of lambda/mu is undefined."""


class NotProjective(ValueError):
    pass


@dataclass(frozen=True)
class CosetGraph:
    q: int
    dim: int
    connection: np.ndarray  # shape (k, dim), sorted by encoding

    @property
    def vertex_count(self) -> int:
        return self.q**self.dim

    @property
    def degree(self) -> int:
        return len(self.connection)

    def encode(self, vecs: np.ndarray) -> np.ndarray:
        vecs = np.asarray(vecs, dtype=np.int64)
        weights = self.q ** np.arange(self.dim, dtype=np.int64)
        return vecs @ weights

    def decode(self, codes) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        return np.stack([(codes // self.q**i) % self.q for i in range(self.dim)], axis=-1)

    @property
    def connection_codes(self) -> np.ndarray:
        return self.encode(self.connection)

    def membership(self) -> np.ndarray:
        mask = np.zeros(self.vertex_count, dtype=bool)
        mask[self.connection_codes] = True
        return mask

    def neighbors(self, u: int) -> np.ndarray:
        vec = self.decode(u)
        return np.sort(self.encode((vec[None, :] + self.connection) % self.q))

    def edges(self):
        """Unordered edges ``(u, v)`` with ``u < v``, ascending."""
        conn = self.connection
        for u in range(self.vertex_count):
            nb = self.encode((self.decode(u)[None, :] + conn) % self.q)
            for v in np.sort(nb[nb > u]).tolist():
                yield u, v

    def adjacency(self) -> np.ndarray:
        v = self.vertex_count
        adj = np.zeros((v, v), dtype=np.int8)
        verts = self.decode(np.arange(v))
        for s in self.connection:
            adj[np.arange(v), self.encode((verts + s) % self.q)] = 1
        return adj


def cayley_graph(q: int, connection) -> CosetGraph:
    """Cayley graph on Z_q^dim from an explicit connection set (rows of ``connection``)."""
    conn = np.asarray(connection, dtype=np.int64) % q
    if conn.ndim == 1:
        conn = conn[:, None]
    g = CosetGraph(q, conn.shape[1], conn)
    codes = g.connection_codes
    order = np.argsort(codes)
    conn = conn[order]
    if len(np.unique(codes)) != len(codes):
        raise ValueError("connection set has repeated elements")
    if np.any(codes == 0):
        raise ValueError("connection set contains zero")
    g = CosetGraph(q, conn.shape[1], conn)
    neg = set(g.encode((-conn) % q).tolist())
    if neg != set(g.connection_codes.tolist()):
        raise ValueError("connection set is not closed under negation")
    return g


def build_coset_graph(pc: PuncturedCode) -> CosetGraph:
    if not projectivity_check(pc.generator, pc.q, pc.p).projective:
        raise NotProjective("coset graph requires a projective code")
    q = pc.q
    lam = np.arange(1, q, dtype=np.int64)
    conn = np.concatenate([np.stack([(lam * c0) % q, (lam * c1) % q], axis=1) for c0, c1 in pc.columns()])
    g = cayley_graph(q, conn)
    assert g.degree == pc.n * (q - 1)
    return g


def coset_graph(spec: CodeSpec) -> CosetGraph:
    return build_coset_graph(punctured_code(spec, ring_init(spec.p, spec.h)))


# -- SRG parameters -------------------------------------------------------------


@dataclass
class SrgParams:
    v: int
    eta: int
    lam: int
    mu: int
    r: int
    s: int
    f: int
    g: int
    extra: dict = field(default_factory=dict)

    @property
    def tuple4(self) -> tuple[int, int, int, int]:
        return self.v, self.eta, self.lam, self.mu

    def invariant_failures(self) -> list[str]:
        bad = []
        if self.eta * (self.eta - self.lam - 1) != self.mu * (self.v - self.eta - 1):
            bad.append("eta(eta-lambda-1) != mu(v-eta-1)")
        for x in (self.r, self.s):
            if x * x - (self.lam - self.mu) * x - (self.eta - self.mu) != 0:
                bad.append(f"{x} is not a root of the eigenvalue quadratic")
        if 1 + self.f + self.g != self.v:
            bad.append("1 + f + g != v")
        if self.eta + self.f * self.r + self.g * self.s != 0:
            bad.append("eta + f r + g s != 0")
        return bad


def srg_from_counts(v: int, eta: int, lam: int, mu: int) -> SrgParams:
    """Exact restricted eigenvalues and multiplicities from ``(v, eta, lambda, mu)``."""
    b = lam - mu
    disc = b * b + 4 * (eta - mu)
    root = isqrt(disc)
    if root * root != disc or (b + root) % 2:
        raise NotStronglyRegular(f"non-integral eigenvalues (discriminant {disc})")
    r, s = (b + root) // 2, (b - root) // 2
    num = 2 * eta + (v - 1) * b
    if num % root or ((v - 1) - num // root) % 2:
        raise NotStronglyRegular("non-integral multiplicities")
    f = ((v - 1) - num // root) // 2
    g = ((v - 1) + num // root) // 2
    return SrgParams(v, eta, lam, mu, r, s, f, g)


def common_neighbor_counts(graph: CosetGraph) -> np.ndarray:
    """``counts[w] = |N(0) & N(w)|`` for every vertex ``w``."""
    conn = graph.connection
    counts = np.zeros(graph.vertex_count, dtype=np.int64)
    step = max(1, 2_000_000 // max(1, len(conn)))
    for lo in range(0, len(conn), step):
        diff = (conn[lo : lo + step, None, :] - conn[None, :, :]) % graph.q
        counts += np.bincount(graph.encode(diff).ravel(), minlength=graph.vertex_count)
    return counts


def _classify_counts(graph: CosetGraph, vertices: np.ndarray, counts: np.ndarray):
    adj = graph.membership()[vertices]
    nz = vertices != 0
    adj_counts = set(counts[adj & nz].tolist())
    non_counts = set(counts[~adj & nz].tolist())
    if not non_counts or not adj_counts:
        raise TrivialGraph("graph is complete or edgeless; lambda or mu is undefined")
    for label, vals, mask in (("adjacent", adj_counts, adj), ("non-adjacent", non_counts, ~adj)):
        if len(vals) != 1:
            typical = Counter(counts[mask & nz].tolist()).most_common(1)[0][0]
            witness = int(vertices[mask & nz][counts[mask & nz] != typical][0])
            raise NotStronglyRegular(
                f"{label} common-neighbour counts vary: {sorted(vals)}",
                witness=graph.decode(witness).tolist(),
            )
    return adj_counts.pop(), non_counts.pop()


def verify_srg(
    graph: CosetGraph,
    mode: str = "base",
    vertex_budget: int = DEFAULT_VERTEX_BUDGET,
    seed: int = DEFAULT_SEED,
    samples: int = DEFAULT_SAMPLES,
) -> SrgParams:
    """Check strong regularity exactly and return the parameters.

    ``mode='base'`` uses vertex-transitivity: common neighbours of vertex 0
    and every other vertex.  ``mode='full'`` squares the adjacency matrix
    (only for ``v <= 4096``).  Above ``vertex_budget`` a seeded sample of
    difference vectors is checked and its size recorded in ``extra``.
    """
    v, eta = graph.vertex_count, graph.degree
    extra = {"mode": mode}
    if mode == "full":
        if v > FULL_CHECK_LIMIT:
            raise ValueError(f"full check limited to {FULL_CHECK_LIMIT} vertices")
        adj = graph.adjacency().astype(np.float64)
        if not np.array_equal(adj, adj.T) or adj.diagonal().any():
            raise NotStronglyRegular("adjacency is not symmetric and loopless")
        deg = adj.sum(axis=1)
        if np.any(deg != eta):
            raise NotStronglyRegular("graph is not regular")
        sq = np.rint(adj @ adj).astype(np.int64)
        off = ~np.eye(v, dtype=bool)
        a_vals = set(sq[(adj == 1) & off].tolist())
        n_vals = set(sq[(adj == 0) & off].tolist())
        if not a_vals or not n_vals:
            raise TrivialGraph("graph is complete or edgeless; lambda or mu is undefined")
        if len(a_vals) != 1 or len(n_vals) != 1:
            raise NotStronglyRegular(f"counts vary: adjacent {sorted(a_vals)}, non-adjacent {sorted(n_vals)}")
        lam, mu = a_vals.pop(), n_vals.pop()
    elif v <= vertex_budget:
        counts = common_neighbor_counts(graph)
        lam, mu = _classify_counts(graph, np.arange(v), counts)
    else:
        rng = np.random.default_rng(seed)
        verts = np.unique(np.concatenate([graph.connection_codes, rng.integers(1, v, size=samples)]))
        member = graph.membership()
        counts = np.array(
            [member[graph.encode((graph.decode(w)[None, :] - graph.connection) % graph.q)].sum() for w in verts]
        )
        lam, mu = _classify_counts(graph, verts, counts)
        extra.update(mode="sampled", sampled=len(verts), seed=seed)
    params = srg_from_counts(v, eta, lam, mu)
    params.extra = extra
    failures = params.invariant_failures()
    if failures:
        raise NotStronglyRegular("; ".join(failures))
    return params


def predicted_srg(spec: CodeSpec) -> SrgParams:
    """Parameters predicted from the punctured weights ``n_hat - 1`` and ``n_hat``.

    Eigenvalue for weight w is ``n_hat (q-1) - q w``; multiplicities are the
    examples-consistent frequencies, with theorem-variant ones in ``extra``.
    """
    if spec.degenerate:
        from .codes import DegenerateSpec

        raise DegenerateSpec(f"{spec.label()} is degenerate")
    q, nh = spec.q, spec.punctured_length
    eta = nh * (q - 1)
    r = eta - q * (nh - 1)
    s = eta - q * nh
    mu = eta + r * s
    lam = mu + r + s
    freq = closed_form_distribution(spec, "examples_consistent").as_dict()
    theo = closed_form_distribution(spec, "theorem").as_dict()
    w1 = spec.n - spec.m
    return SrgParams(
        q * q,
        eta,
        lam,
        mu,
        r,
        s,
        freq.get(w1, 0),
        freq.get(spec.n, 0),
        extra={"theorem_f": theo.get(w1, 0), "theorem_g": theo.get(spec.n, 0)},
    )


@dataclass
class LatinSquareReport:
    N: int
    M: int
    family_match: bool
    multiplicities_match: bool
    general_match: tuple[int, int] | None
    printed_lambda: int
    printed_lambda_feasible: bool

    @property
    def latin_square(self) -> bool:
        return self.family_match


def latin_square_params(N: int, M: int) -> tuple[int, int, int, int]:
    return N * N, M * (N - 1), N - 2 + (M - 1) * (M - 2), M * (M - 1)


def latin_square_classify(params: SrgParams, spec: CodeSpec) -> LatinSquareReport:
    """Compare against the Latin-square family with ``N = p^h`` and ``M = p + 1``.

    ``general_match`` reports any ``(N, M)`` realizing the parameters, and
    ``printed_lambda`` evaluates the alternative ``(M-1)(N-2) + N - 2`` form
    for comparison.
    """
    N, M = spec.q, spec.p + 1
    fam = params.tuple4 == latin_square_params(N, M)
    mult = (params.f, params.g) == (M * (N - 1), (N - M + 1) * (N - 1))
    general = None
    Ng = isqrt(params.v)
    if Ng * Ng == params.v and Ng > 1 and params.eta % (Ng - 1) == 0:
        Mg = params.eta // (Ng - 1)
        if params.tuple4 == latin_square_params(Ng, Mg):
            general = (Ng, Mg)
    printed = (M - 1) * (N - 2) + N - 2
    v, eta, mu = params.v, M * (N - 1), M * (M - 1)
    feasible = eta * (eta - printed - 1) == mu * (v - eta - 1)
    return LatinSquareReport(N, M, fam, mult, general, printed, feasible)


# -- finite-level covers ----------------------------------------------------------


@dataclass
class CoverReport:
    p: int
    h_low: int
    fiber_sizes: set
    bad_edges: int
    collapsed_per_vertex: set
    fiber_neighbor_counts: set
    missing_neighbors: int
    vertices_checked: int
    sampled: bool

    @property
    def ok(self) -> bool:
        return (
            self.fiber_sizes == {self.p * self.p}
            and self.bad_edges == 0
            and len(self.collapsed_per_vertex) == 1
            and len(self.fiber_neighbor_counts) == 1
            and self.missing_neighbors == 0
        )

    @property
    def collapsed(self) -> int | None:
        return next(iter(self.collapsed_per_vertex)) if len(self.collapsed_per_vertex) == 1 else None

    @property
    def fiber_constant(self) -> int | None:
        return next(iter(self.fiber_neighbor_counts)) if len(self.fiber_neighbor_counts) == 1 else None


def cover_check(
    spec: CodeSpec,
    h_low: int,
    vertex_budget: int = DEFAULT_VERTEX_BUDGET,
    seed: int = DEFAULT_SEED,
    samples: int = DEFAULT_SAMPLES,
) -> CoverReport:
    """Check reduction mod p^h_low from the level h_low+1 graph to the level h_low graph.

    Checks that fibers have size p^2, that every edge maps to an edge or
    collapses to a point, and that for each vertex u and each neighbour y of
    its image, the number of neighbours of u over y is one constant.
    """
    lo = coset_graph(CodeSpec(spec.p, h_low, spec.d))
    hi = coset_graph(CodeSpec(spec.p, h_low + 1, spec.d))
    q_lo, q_hi = lo.q, hi.q
    v_hi = hi.vertex_count

    def proj(codes):
        return lo.encode(hi.decode(codes) % q_lo)

    fibers = np.bincount(proj(np.arange(v_hi)), minlength=lo.vertex_count)
    member_lo = lo.membership()

    sampled = v_hi > vertex_budget
    if sampled:
        rng = np.random.default_rng(seed)
        verts = np.unique(rng.integers(0, v_hi, size=samples))
    else:
        verts = np.arange(v_hi)

    bad = 0
    missing = 0
    collapsed, per_fiber = set(), set()
    conn_hi, conn_lo = hi.connection, lo.connection
    step = max(1, 1_000_000 // len(conn_hi))
    for start in range(0, len(verts), step):
        chunk = verts[start : start + step]
        u = hi.decode(chunk)
        nb = (u[:, None, :] + conn_hi[None, :, :]) % q_hi
        img_u = u % q_lo
        img_nb = nb % q_lo
        delta = lo.encode((img_nb - img_u[:, None, :]) % q_lo)
        is_collapsed = delta == 0
        bad += int(np.count_nonzero(~is_collapsed & ~member_lo[delta]))
        collapsed.update(np.count_nonzero(is_collapsed, axis=1).tolist())
        # per vertex: multiplicity of each low-level neighbour difference
        k_lo = len(conn_lo)
        lo_rank = np.full(lo.vertex_count, -1, dtype=np.int64)
        lo_rank[lo.connection_codes] = np.arange(k_lo)
        ranks = lo_rank[delta]
        rows = np.repeat(np.arange(len(chunk)), ranks.shape[1])
        flat = ranks.ravel()
        keep = flat >= 0
        hist = np.zeros((len(chunk), k_lo), dtype=np.int64)
        np.add.at(hist, (rows[keep], flat[keep]), 1)
        missing += int(np.count_nonzero(hist == 0))
        per_fiber.update(np.unique(hist[hist > 0]).tolist())
    return CoverReport(
        p=spec.p,
        h_low=h_low,
        fiber_sizes=set(fibers.tolist()),
        bad_edges=bad,
        collapsed_per_vertex=collapsed,
        fiber_neighbor_counts=per_fiber,
        missing_neighbors=missing,
        vertices_checked=len(verts),
        sampled=sampled,
    )


def write_edgelist(graph: CosetGraph, path) -> int:
    count = 0
    with open(path, "w") as fh:
        for u, v in graph.edges():
            fh.write(f"{u} {v}\n")
            count += 1
    return count
