"""Column dependence classes, punctured projective codes and optimality checks."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .codes import (
    CodeSpec,
    DegenerateSpec,
    GeneratorMatrix,
    WeightDistribution,
    build_code,
    enumerate_rows,
    weight_distribution_enum,
)
from .ring import RingParams


class ConsistencyError(AssertionError):
    pass


def det2(col_a, col_b, q: int) -> int:
    return (col_a[0] * col_b[1] - col_a[1] * col_b[0]) % q


@dataclass(frozen=True)
class DependencePartition:
    classes: tuple[tuple[int, ...], ...]
    class_size: int

    @property
    def count(self) -> int:
        return len(self.classes)


def dependence_classes(G: GeneratorMatrix, spec: CodeSpec) -> DependencePartition:
    """Group columns whose 2x2 determinant is divisible by p.

    Each pairwise verdict is cross-checked against the exponent test
    ``(j - k) * d * (p - 1) = 0 mod p^2 - 1``.
    """
    if spec.degenerate:
        raise DegenerateSpec(f"{spec.label()} is degenerate; no dependence structure to puncture")
    p, n = spec.p, G.n
    order = p * p - 1
    cols = [G.column(j) for j in range(n)]
    dep = np.zeros((n, n), dtype=bool)
    for j in range(n):
        for k in range(n):
            by_det = det2(cols[j], cols[k], G.q) % p == 0
            lj, lk = G.labels[j], G.labels[k]
            by_exp = ((lj - lk) * spec.d * (p - 1)) % order == 0
            if by_det != by_exp:
                raise ConsistencyError(f"columns {lj}, {lk}: determinant test {by_det}, exponent test {by_exp}")
            dep[j, k] = by_det
    classes, assigned = [], set()
    for j in range(n):
        if j in assigned:
            continue
        members = tuple(int(k) for k in np.flatnonzero(dep[j]))
        if any(not dep[a, b] for a in members for b in members):
            raise ConsistencyError("dependence relation is not transitive")
        classes.append(members)
        assigned.update(members)
    sizes = {len(c) for c in classes}
    if len(sizes) != 1:
        raise ConsistencyError(f"non-uniform class sizes {sorted(sizes)}")
    return DependencePartition(tuple(classes), sizes.pop())


@dataclass(frozen=True)
class PuncturedCode:
    generator: np.ndarray  # shape (2, n_hat)
    representative_labels: tuple[int, ...]
    q: int
    p: int
    spec: CodeSpec | None = None

    @property
    def n(self) -> int:
        return self.generator.shape[1]

    def columns(self) -> list[tuple[int, int]]:
        return [(int(a), int(b)) for a, b in self.generator.T]


def puncture(G: GeneratorMatrix, spec: CodeSpec) -> PuncturedCode:
    """Keep the smallest-label column of each dependence class."""
    part = dependence_classes(G, spec)
    reps = sorted(min(G.labels[j] for j in cls) for cls in part.classes)
    pos = [G.labels.index(r) for r in reps]
    return PuncturedCode(G.rows[:, pos].copy(), tuple(reps), G.q, G.p, spec)


def punctured_code(spec: CodeSpec, ring: RingParams | None = None) -> PuncturedCode:
    return puncture(build_code(spec, ring), spec)


def punctured_distribution(pc: PuncturedCode, workers: int = 1) -> WeightDistribution:
    return WeightDistribution.from_counts(enumerate_rows(pc.generator, pc.q, workers=workers))


@dataclass
class ProjectivityReport:
    zero_columns: list[int]
    dependent_pairs: list[tuple[int, int]]

    @property
    def projective(self) -> bool:
        return not self.zero_columns and not self.dependent_pairs


def projectivity_check(generator: np.ndarray, q: int, p: int) -> ProjectivityReport:
    """Dual distance >= 3 test for a two-row matrix over Z_q.

    A column ``= 0 mod p`` carries a dual word of weight 1, and a pair of
    columns whose determinant is divisible by p has a nontrivial kernel, i.e.
    a dual word of weight <= 2.
    """
    cols = [(int(a), int(b)) for a, b in np.asarray(generator).T]
    zero = [j for j, c in enumerate(cols) if c[0] % p == 0 and c[1] % p == 0]
    pairs = [(j, k) for j, k in combinations(range(len(cols)), 2) if det2(cols[j], cols[k], q) % p == 0]
    return ProjectivityReport(zero, pairs)


def dual_low_weight_words(generator: np.ndarray, q: int) -> list[tuple[int, ...]]:
    """Brute-force search for nonzero dual words of weight <= 2 (small q only)."""
    cols = [(int(a), int(b)) for a, b in np.asarray(generator).T]
    n = len(cols)
    found = []
    for j in range(n):
        for lam in range(1, q):
            if (lam * cols[j][0]) % q == 0 and (lam * cols[j][1]) % q == 0:
                found.append((j, lam))
    lam = np.arange(1, q)
    for j, k in combinations(range(n), 2):
        s0 = (lam[:, None] * cols[j][0] + lam[None, :] * cols[k][0]) % q
        s1 = (lam[:, None] * cols[j][1] + lam[None, :] * cols[k][1]) % q
        hits = np.argwhere((s0 == 0) & (s1 == 0))
        found.extend((j, int(lam[a]), k, int(lam[b])) for a, b in hits)
    return found


@dataclass
class GriesmerReport:
    length: int
    d_min: int
    bound: int

    @property
    def holds(self) -> bool:
        return self.length >= self.bound

    @property
    def equality(self) -> bool:
        return self.length == self.bound


def griesmer_check(spec: CodeSpec, ring: RingParams | None = None, dist: WeightDistribution | None = None) -> GriesmerReport:
    """Rank-2 bound ``n >= d + ceil(d/p)`` with d taken from enumeration."""
    if spec.d != 1:
        raise ValueError("the Griesmer claim concerns C_1 only")
    dist = dist or weight_distribution_enum(spec, ring, use_orbits=True)
    dm = dist.min_distance
    return GriesmerReport(spec.n, dm, dm + -(-dm // spec.p))


@dataclass
class MDRReport:
    length: int
    free_rank2: bool
    d_min: int

    @property
    def singleton_bound(self) -> int:
        return self.length - 2 + 1

    @property
    def mdr(self) -> bool:
        return self.free_rank2 and self.d_min == self.singleton_bound


def mdr_check(pc: PuncturedCode, dist: WeightDistribution | None = None) -> MDRReport:
    """Free rank 2 means the span has ``q^2`` words; MDR means ``d = n - 1``."""
    dist = dist or punctured_distribution(pc)
    free = dist.total == pc.q**2 and dist.as_dict().get(0) == 1
    return MDRReport(pc.n, free, dist.min_distance)
