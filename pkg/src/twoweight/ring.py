"""Exact arithmetic in Z_{p^h} and the Galois ring GR(p^h, 2).

Elements of GR(p^h, 2) are stored in coordinates ``c0 + c1*w`` where ``w`` is
the class of the variable modulo a monic quadratic whose reduction mod p is
irreducible.  Residues of Z_{p^h} are plain Python ints in ``[0, q)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

Pair = tuple[int, int]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _smallest_irreducible_quadratic(p: int) -> Pair:
    """Return ``(a0, a1)`` for the lexicographically smallest irreducible
    ``x^2 + a1*x + a0`` over F_p (compared on ``(a1, a0)``)."""
    for a1 in range(p):
        for a0 in range(p):
            if all((x * x + a1 * x + a0) % p for x in range(p)):
                return a0, a1
    raise AssertionError("no irreducible quadratic")  # unreachable for prime p


@dataclass(frozen=True)
class GRElem:
    """Element ``c0 + c1*w`` of a Galois ring."""

    c0: int
    c1: int
    ring: "RingParams" = field(repr=False, compare=False)

    def __eq__(self, other):
        if not isinstance(other, GRElem):
            return NotImplemented
        return self.ring.key == other.ring.key and (self.c0, self.c1) == (other.c0, other.c1)

    def __hash__(self):
        return hash((self.ring.key, self.c0, self.c1))

    @property
    def pair(self) -> Pair:
        return self.c0, self.c1

    @property
    def index(self) -> int:
        return self.ring.index(self.pair)

    def _check(self, other: "GRElem") -> None:
        if not isinstance(other, GRElem) or other.ring.key != self.ring.key:
            raise ValueError("operands belong to different rings")

    def _lift(self, other):
        if isinstance(other, int):
            return self.ring.elem(other)
        self._check(other)
        return other

    def __add__(self, other):
        o = self._lift(other)
        return self.ring.wrap(self.ring.add(self.pair, o.pair))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return self.ring.wrap(self.ring.sub(self.pair, o.pair))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return self.ring.wrap(self.ring.neg(self.pair))

    def __mul__(self, other):
        o = self._lift(other)
        return self.ring.wrap(self.ring.mul(self.pair, o.pair))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return self.ring.wrap(self.ring.pow(self.pair, e))

    def is_unit(self) -> bool:
        return self.ring.is_unit(self.pair)

    def __str__(self):
        return f"{self.c0} + {self.c1}*w"


def gr_arith(a: GRElem, b, op: str) -> GRElem:
    """Apply ``op`` in {'add', 'sub', 'mul', 'pow'}; for 'pow', ``b`` is an int."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "pow":
        if not isinstance(b, int) or b < 0:
            raise ValueError("pow needs a non-negative integer exponent")
        return a**b
    raise ValueError(f"unknown op {op!r}")


@dataclass(frozen=True)
class RingParams:
    """GR(p^h, 2) with a fixed modulus ``x^2 + a1*x + a0`` and Teichmueller generator.

    Build instances with :func:`ring_init`.
    """

    p: int
    h: int
    modulus: Pair  # (a0, a1)
    experimental: bool = False

    @property
    def q(self) -> int:
        return self.p**self.h

    @property
    def size(self) -> int:
        return self.q * self.q

    @property
    def key(self) -> tuple:
        return (self.p, self.h, self.modulus)

    # -- raw pair arithmetic -------------------------------------------------

    def add(self, x: Pair, y: Pair) -> Pair:
        q = self.q
        return (x[0] + y[0]) % q, (x[1] + y[1]) % q

    def sub(self, x: Pair, y: Pair) -> Pair:
        q = self.q
        return (x[0] - y[0]) % q, (x[1] - y[1]) % q

    def neg(self, x: Pair) -> Pair:
        q = self.q
        return (-x[0]) % q, (-x[1]) % q

    def mul(self, x: Pair, y: Pair) -> Pair:
        # w^2 = -a1*w - a0
        q = self.q
        a0, a1 = self.modulus
        hi = x[1] * y[1]
        return (x[0] * y[0] - a0 * hi) % q, (x[0] * y[1] + x[1] * y[0] - a1 * hi) % q

    def scale(self, u: int, x: Pair) -> Pair:
        q = self.q
        return (u * x[0]) % q, (u * x[1]) % q

    def pow(self, x: Pair, e: int) -> Pair:
        if e < 0:
            raise ValueError("negative exponent")
        result: Pair = (1 % self.q, 0)
        base = x
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def is_unit(self, x: Pair) -> bool:
        return x[0] % self.p != 0 or x[1] % self.p != 0

    def index(self, x: Pair) -> int:
        return x[1] * self.q + x[0]

    def from_index(self, i: int) -> Pair:
        return i % self.q, i // self.q

    # -- vectorized arithmetic ------------------------------------------------

    def mul_arrays(self, x0, x1, y0, y1):
        q = self.q
        a0, a1 = self.modulus
        hi = x1 * y1
        return (x0 * y0 - a0 * hi) % q, (x0 * y1 + x1 * y0 - a1 * hi) % q

    def trace_arrays(self, x0, x1):
        """Vectorized trace, using the Z_q-linearity ``Tr(c0 + c1 w) = c0 Tr(1) + c1 Tr(w)``."""
        t1 = self.trace_pair((0, 1))
        return (2 * np.asarray(x0) + t1 * np.asarray(x1)) % self.q

    # -- element construction -----------------------------------------------

    def wrap(self, x: Pair) -> GRElem:
        return GRElem(x[0], x[1], self)

    def elem(self, c0: int, c1: int = 0) -> GRElem:
        return GRElem(c0 % self.q, c1 % self.q, self)

    @property
    def zero(self) -> GRElem:
        return self.elem(0)

    @property
    def one(self) -> GRElem:
        return self.elem(1)

    @property
    def omega(self) -> GRElem:
        return self.elem(0, 1)

    def elements(self):
        for i in range(self.size):
            yield self.wrap(self.from_index(i))

    # -- Teichmueller structure ---------------------------------------------

    def lift_pair(self, z: Pair) -> Pair:
        e = self.p * self.p
        w = z
        while True:
            nxt = self.pow(w, e)
            if nxt == w:
                return w
            w = nxt

    @cached_property
    def residue_generator(self) -> Pair:
        """Smallest generator of F_{p^2}^* in the order ``c1*p + c0``."""
        p = self.p
        order = p * p - 1
        factors = prime_factors(order)
        for c1 in range(p):
            for c0 in range(p):
                if (c0, c1) == (0, 0):
                    continue
                x = (c0, c1)
                if all(self._pow_mod_p(x, order // f) != (1, 0) for f in factors):
                    return x
        raise AssertionError("residue field has no generator")

    def _pow_mod_p(self, x: Pair, e: int) -> Pair:
        y = self.pow(x, e)
        return y[0] % self.p, y[1] % self.p

    @cached_property
    def xi_pair(self) -> Pair:
        return self.lift_pair(self.residue_generator)

    @property
    def xi(self) -> GRElem:
        return self.wrap(self.xi_pair)

    @cached_property
    def unit_order(self) -> int:
        return self.p * self.p - 1

    @cached_property
    def teich_powers(self) -> tuple[Pair, ...]:
        """``xi^k`` for ``k = 0 .. p^2-2``."""
        out = [(1 % self.q, 0)]
        for _ in range(self.unit_order - 1):
            out.append(self.mul(out[-1], self.xi_pair))
        return tuple(out)

    @cached_property
    def teich_table(self) -> tuple[GRElem, ...]:
        """Entry 0 is zero, entry ``i`` (1 <= i <= p^2-1) is ``xi^i``."""
        pw = self.teich_powers
        return (self.zero,) + tuple(self.wrap(pw[i % self.unit_order]) for i in range(1, self.unit_order + 1))

    @cached_property
    def log_table(self) -> dict[Pair, int]:
        """Teichmueller unit coordinates -> exponent in ``[0, p^2-1)``."""
        return {t: k for k, t in enumerate(self.teich_powers)}

    @cached_property
    def teich_set(self) -> frozenset[Pair]:
        return frozenset(self.teich_powers) | {(0, 0)}

    @cached_property
    def minus_one_is_teichmuller(self) -> bool:
        return self.neg((1 % self.q, 0)) in self.teich_set

    def digits_pair(self, z: Pair) -> list[Pair]:
        p, q = self.p, self.q
        out = []
        cur = z
        for _ in range(self.h):
            t = self.lift_pair((cur[0] % p, cur[1] % p))
            out.append(t)
            diff = self.sub(cur, t)
            assert diff[0] % p == 0 and diff[1] % p == 0
            cur = (diff[0] // p, diff[1] // p)
        return out

    def frobenius_pair(self, z: Pair) -> Pair:
        acc: Pair = (0, 0)
        scale = 1
        for t in self.digits_pair(z):
            acc = self.add(acc, self.scale(scale, self.pow(t, self.p)))
            scale *= self.p
        return acc

    def trace_pair(self, z: Pair) -> int:
        s = self.add(z, self.frobenius_pair(z))
        if s[1] != 0:
            raise ArithmeticError(f"trace of {z} has nonzero w-coordinate {s[1]}; Frobenius is broken")
        return s[0]

    def check_invariants(self) -> None:
        p, order = self.p, self.unit_order
        a0, a1 = self.modulus
        assert all((x * x + a1 * x + a0) % p for x in range(p)), "modulus reducible mod p"
        one = (1 % self.q, 0)
        assert self.pow(self.xi_pair, order) == one
        for f in prime_factors(order):
            assert self.pow(self.xi_pair, order // f) != one
        assert len(self.teich_table) == p * p
        for t in self.teich_table:
            assert self.pow(t.pair, p * p) == t.pair

    def info(self) -> dict:
        a0, a1 = self.modulus
        return {
            "p": self.p,
            "h": self.h,
            "q": self.q,
            "modulus": f"x^2 + {a1}*x + {a0}",
            "xi": list(self.xi_pair),
            "teichmuller_size": len(self.teich_table),
            "experimental": self.experimental,
            "minus_one_teichmuller": self.minus_one_is_teichmuller,
        }


_RING_CACHE: dict[tuple[int, int], RingParams] = {}


def ring_init(p: int, h: int) -> RingParams:
    """Build GR(p^h, 2).  ``p = 2`` is accepted and tagged experimental."""
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if not isinstance(h, int) or h < 1:
        raise ValueError(f"h={h} must be a positive integer")
    if p ** (2 * h) > 2**62:
        raise ValueError("p^(2h) exceeds the exact int64 range used by the enumeration kernels")
    key = (p, h)
    if key not in _RING_CACHE:
        ring = RingParams(p, h, _smallest_irreducible_quadratic(p), experimental=(p == 2))
        ring.check_invariants()
        _RING_CACHE[key] = ring
    return _RING_CACHE[key]


def teichmuller_lift(z: GRElem) -> GRElem:
    return z.ring.wrap(z.ring.lift_pair(z.pair))


def teich_digits(z: GRElem) -> list[GRElem]:
    return [z.ring.wrap(t) for t in z.ring.digits_pair(z.pair)]


def frobenius(z: GRElem) -> GRElem:
    return z.ring.wrap(z.ring.frobenius_pair(z.pair))


def trace(z: GRElem) -> int:
    return z.ring.trace_pair(z.pair)
