"""Exact arithmetic in a truncated Grassmann algebra.

Elements of Lambda_N over Q(i): finite sums  sum_S  c_S * th_{s1}...th_{sk}
indexed by strictly sorted subsets S of {1..N}.  The generators th_k
anticommute, so the algebra is Z/2-graded by |S| mod 2; the scalar part
(S empty) is the body.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Dict, Tuple

from .scalars import GaussianRational

Index = Tuple[int, ...]

DEFAULT_GENERATORS = 6


def default_generator_count() -> int:
    """Engine-wide default N, overridable through SUPERSYMP_GENERATORS."""
    raw = os.environ.get("SUPERSYMP_GENERATORS")
    if raw is None:
        return DEFAULT_GENERATORS
    n = int(raw)
    if n < 0:
        raise ValueError("SUPERSYMP_GENERATORS must be >= 0")
    return n


class NotInvertible(ArithmeticError):
    """Raised when inverting a Grassmann number with zero body."""


class DimensionError(ValueError):
    """Operands built over different generator counts."""


def _merge_sign(a: Index, b: Index) -> Tuple[int, Index]:
    """Sign and sorted union of two disjoint sorted index tuples.

    Returns sign 0 when the tuples intersect (a squared generator).
    """
    if not a:
        return 1, b
    if not b:
        return 1, a
    out = []
    i = j = 0
    sign = 1
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return 0, ()
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        else:
            # b[j] jumps over the remaining len(a) - i generators of a
            if (len(a) - i) % 2:
                sign = -sign
            out.append(b[j])
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return sign, tuple(out)


class GrassmannNumber:
    """Element of Lambda_N with Gaussian-rational coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Dict[Index, GaussianRational] | None = None):
        self.n = n
        self.terms: Dict[Index, GaussianRational] = {}
        if terms:
            for idx, c in terms.items():
                c = GaussianRational.coerce(c)
                if c.is_zero():
                    continue
                idx = tuple(idx)
                if any(not (1 <= k <= n) for k in idx):
                    raise ValueError(f"generator index out of range in {idx}")
                if list(idx) != sorted(set(idx)):
                    raise ValueError(f"index set {idx} is not strictly sorted")
                self.terms[idx] = c

    # -- constructors ---------------------------------------------------

    @staticmethod
    def scalar(value, n: int | None = None) -> "GrassmannNumber":
        if n is None:
            n = default_generator_count()
        return GrassmannNumber(n, {(): GaussianRational.coerce(value)})

    @staticmethod
    def generator(k: int, n: int | None = None) -> "GrassmannNumber":
        if n is None:
            n = default_generator_count()
        return GrassmannNumber(n, {(k,): GaussianRational(1)})

    @staticmethod
    def zero(n: int | None = None) -> "GrassmannNumber":
        if n is None:
            n = default_generator_count()
        return GrassmannNumber(n, {})

    def coerce_other(self, x) -> "GrassmannNumber":
        if isinstance(x, GrassmannNumber):
            if x.n != self.n:
                raise DimensionError(f"generator counts differ: {self.n} vs {x.n}")
            return x
        return GrassmannNumber(self.n, {(): GaussianRational.coerce(x)})

    # -- structure -------------------------------------------------------

    def body(self) -> GaussianRational:
        return self.terms.get((), GaussianRational(0))

    def soul(self) -> "GrassmannNumber":
        return GrassmannNumber(self.n, {k: v for k, v in self.terms.items() if k})

    def parity_part(self, parity: int) -> "GrassmannNumber":
        return GrassmannNumber(
            self.n, {k: v for k, v in self.terms.items() if len(k) % 2 == parity}
        )

    def homogeneous_parts(self) -> Dict[int, "GrassmannNumber"]:
        out = {}
        for p in (0, 1):
            part = self.parity_part(p)
            if part.terms:
                out[p] = part
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        parities = {len(k) % 2 for k in self.terms}
        return len(parities) <= 1

    def parity(self) -> int:
        """Parity of a homogeneous element (0 for the zero element)."""
        parities = {len(k) % 2 for k in self.terms}
        if len(parities) > 1:
            raise ValueError("element is not homogeneous")
        return parities.pop() if parities else 0

    def is_scalar(self) -> bool:
        return all(k == () for k in self.terms)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = self.coerce_other(other)
        terms = dict(self.terms)
        for idx, c in other.terms.items():
            s = terms.get(idx, GaussianRational(0)) + c
            if s.is_zero():
                terms.pop(idx, None)
            else:
                terms[idx] = s
        return GrassmannNumber(self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        return GrassmannNumber(self.n, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self.coerce_other(other))

    def __rsub__(self, other):
        return self.coerce_other(other) + (-self)

    def __mul__(self, other):
        other = self.coerce_other(other)
        terms: Dict[Index, GaussianRational] = {}
        for ia, ca in self.terms.items():
            for ib, cb in other.terms.items():
                sign, idx = _merge_sign(ia, ib)
                if sign == 0:
                    continue
                c = ca * cb
                if sign < 0:
                    c = -c
                s = terms.get(idx, GaussianRational(0)) + c
                if s.is_zero():
                    terms.pop(idx, None)
                else:
                    terms[idx] = s
        return GrassmannNumber(self.n, terms)

    def __rmul__(self, other):
        return self.coerce_other(other) * self

    def involution(self) -> "GrassmannNumber":
        """x0 + x1 -> x0 - x1."""
        return GrassmannNumber(
            self.n,
            {k: (v if len(k) % 2 == 0 else -v) for k, v in self.terms.items()},
        )

    def inverse(self) -> "GrassmannNumber":
        """Inverse via the finite geometric series in the nilpotent part."""
        b = self.body()
        if b.is_zero():
            raise NotInvertible("zero body")
        binv = b.inverse()
        # x = b(1 + u) with u nilpotent; x^-1 = b^-1 sum (-u)^k
        u = self.soul() * binv
        acc = GrassmannNumber.scalar(1, self.n)
        power = GrassmannNumber.scalar(1, self.n)
        for _ in range(self.n):
            power = power * (-u)
            if power.is_zero():
                break
            acc = acc + power
        return acc * binv

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = self.coerce_other(other)
        if not isinstance(other, GrassmannNumber):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.terms.items(), key=lambda kv: kv[0]))))

    # -- rendering -----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        chunks = []
        for idx in sorted(self.terms, key=lambda k: (len(k), k)):
            c = self.terms[idx]
            word = "*".join(f"th{k}" for k in idx)
            cs = str(c)
            needs_parens = ("+" in cs[1:]) or ("-" in cs[1:].replace("*i", ""))
            if idx == ():
                chunk = f"({cs})" if needs_parens else cs
            elif c == GaussianRational(1):
                chunk = word
            elif c == GaussianRational(-1):
                chunk = f"-{word}"
            else:
                chunk = (f"({cs})" if needs_parens else cs) + "*" + word
            chunks.append(chunk)
        out = chunks[0]
        for chunk in chunks[1:]:
            if chunk.startswith("-"):
                out += " - " + chunk[1:]
            else:
                out += " + " + chunk
        return out

    def __repr__(self):
        return f"<Grassmann {self}>"


def gr_mul(a: GrassmannNumber, b: GrassmannNumber) -> GrassmannNumber:
    return a * b


def gr_inverse(a: GrassmannNumber) -> GrassmannNumber:
    return a.inverse()


def involution(a: GrassmannNumber) -> GrassmannNumber:
    return a.involution()


def body(a: GrassmannNumber) -> GaussianRational:
    return a.body()
