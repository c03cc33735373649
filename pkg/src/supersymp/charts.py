"""Polynomial superfunctions and vector fields on a coordinate chart.

A chart carries p even and q odd coordinate names.  A superfunction is a
polynomial

    f = sum  c_{a,w} * x^a * xi_{w1} ... xi_{wk}

with Grassmann-number coefficients written on the far left, even exponent
vectors a and strictly sorted odd words w.  Odd coordinates anticommute among
themselves and with the odd part of the coefficients, which is where every
sign in this module comes from.

Derivatives are left derivatives: d/dxi strikes xi after moving it to the
left through the coefficient and the earlier odd letters.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Tuple

from .grassmann import DimensionError, GrassmannNumber, default_generator_count
from .scalars import GaussianRational

ExpKey = Tuple[Tuple[int, ...], Tuple[int, ...]]  # (even exponents, odd word)


class ChartMismatch(ValueError):
    """Operands live on different charts."""


class UnknownCoordinate(KeyError):
    pass


@dataclass(frozen=True)
class Chart:
    """Names and parities of the coordinates of a p|q chart."""

    name: str
    even: Tuple[str, ...]
    odd: Tuple[str, ...]
    generators: int = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.generators is None:
            object.__setattr__(self, "generators", default_generator_count())
        object.__setattr__(self, "even", tuple(self.even))
        object.__setattr__(self, "odd", tuple(self.odd))
        names = self.even + self.odd
        if len(set(names)) != len(names):
            raise ValueError("coordinate names must be distinct")

    @property
    def coords(self) -> Tuple[str, ...]:
        return self.even + self.odd

    def parity(self, name: str) -> int:
        if name in self.even:
            return 0
        if name in self.odd:
            return 1
        raise UnknownCoordinate(name)

    def even_index(self, name: str) -> int:
        return self.even.index(name)

    def odd_index(self, name: str) -> int:
        return self.odd.index(name)

    # constructors for the basic objects on this chart

    def zero(self) -> "SuperFunction":
        return SuperFunction(self, {})

    def one(self) -> "SuperFunction":
        return self.constant(1)

    def constant(self, value) -> "SuperFunction":
        if isinstance(value, GrassmannNumber):
            if value.n != self.generators:
                raise DimensionError("Grassmann generator count differs from chart")
            coeff = value
        else:
            coeff = GrassmannNumber.scalar(GaussianRational.coerce(value), self.generators)
        key = ((0,) * len(self.even), ())
        return SuperFunction(self, {key: coeff})

    def var(self, name: str) -> "SuperFunction":
        if name in self.even:
            exps = [0] * len(self.even)
            exps[self.even_index(name)] = 1
            key = (tuple(exps), ())
        elif name in self.odd:
            key = ((0,) * len(self.even), (self.odd_index(name),))
        else:
            raise UnknownCoordinate(name)
        return SuperFunction(self, {key: GrassmannNumber.scalar(1, self.generators)})

    def vector_field(self, components: Mapping[str, "SuperFunction | int | Fraction"]) -> "VectorField":
        comps = {}
        for name, sf in components.items():
            if name not in self.coords:
                raise UnknownCoordinate(name)
            if not isinstance(sf, SuperFunction):
                sf = self.constant(sf)
            if not sf.is_zero():
                comps[name] = sf
        return VectorField(self, comps)


def _odd_word_product(w1: Tuple[int, ...], w2: Tuple[int, ...]) -> Tuple[int, Tuple[int, ...]]:
    """Sign and sorted concatenation of two odd coordinate words."""
    if not w1:
        return 1, w2
    if not w2:
        return 1, w1
    out = []
    i = j = 0
    sign = 1
    while i < len(w1) and j < len(w2):
        if w1[i] == w2[j]:
            return 0, ()
        if w1[i] < w2[j]:
            out.append(w1[i])
            i += 1
        else:
            if (len(w1) - i) % 2:
                sign = -sign
            out.append(w2[j])
            j += 1
    out.extend(w1[i:])
    out.extend(w2[j:])
    return sign, tuple(out)


class SuperFunction:
    """Polynomial superfunction in canonical form."""

    __slots__ = ("chart", "terms")

    def __init__(self, chart: Chart, terms: Dict[ExpKey, GrassmannNumber]):
        self.chart = chart
        self.terms = {k: c for k, c in terms.items() if not c.is_zero()}

    # -- bookkeeping ----------------------------------------------------

    def _check(self, other: "SuperFunction") -> None:
        if other.chart != self.chart:
            raise ChartMismatch(f"{other.chart.name} vs {self.chart.name}")

    def coerce(self, x) -> "SuperFunction":
        if isinstance(x, SuperFunction):
            self._check(x)
            return x
        if isinstance(x, GrassmannNumber):
            return self.chart.constant(x)
        return self.chart.constant(GaussianRational.coerce(x))

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        zero_key = ((0,) * len(self.chart.even), ())
        return all(k == zero_key for k in self.terms)

    def constant_value(self) -> GrassmannNumber:
        zero_key = ((0,) * len(self.chart.even), ())
        if not self.is_constant():
            raise ValueError("not a constant superfunction")
        return self.terms.get(zero_key, GrassmannNumber.zero(self.chart.generators))

    def total_degree(self) -> int:
        return max((sum(e) + len(w) for (e, w) in self.terms), default=0)

    def monomials(self) -> Iterable[ExpKey]:
        return self.terms.keys()

    # -- parity ------------------------------------------------------------

    def parity_part(self, parity: int) -> "SuperFunction":
        """Terms of total parity (odd word length + coefficient parity)."""
        out: Dict[ExpKey, GrassmannNumber] = {}
        for (e, w), c in self.terms.items():
            want = (parity - len(w)) % 2
            part = c.parity_part(want)
            if not part.is_zero():
                out[(e, w)] = part
        return SuperFunction(self.chart, out)

    def homogeneous_parts(self) -> Dict[int, "SuperFunction"]:
        parts = {}
        for p in (0, 1):
            f = self.parity_part(p)
            if not f.is_zero():
                parts[p] = f
        return parts

    def is_homogeneous(self) -> bool:
        return len(self.homogeneous_parts()) <= 1

    def parity(self) -> int:
        parts = self.homogeneous_parts()
        if len(parts) > 1:
            raise ValueError("superfunction is not homogeneous")
        return next(iter(parts), 0)

    # -- ring operations ------------------------------------------------------

    def __add__(self, other):
        other = self.coerce(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            s = terms.get(k)
            s = c if s is None else s + c
            if s.is_zero():
                terms.pop(k, None)
            else:
                terms[k] = s
        return SuperFunction(self.chart, terms)

    __radd__ = __add__

    def __neg__(self):
        return SuperFunction(self.chart, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self.coerce(other))

    def __rsub__(self, other):
        return self.coerce(other) + (-self)

    def __mul__(self, other):
        other = self.coerce(other)
        out: Dict[ExpKey, GrassmannNumber] = {}
        for (e1, w1), c1 in self.terms.items():
            for (e2, w2), c2 in other.terms.items():
                sign_w, w = _odd_word_product(w1, w2)
                if sign_w == 0:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                # move c2 left through the odd word w1
                for p, c2p in c2.homogeneous_parts().items():
                    sign = sign_w * (-1 if (p * len(w1)) % 2 else 1)
                    c = c1 * c2p
                    if sign < 0:
                        c = -c
                    key = (e, w)
                    s = out.get(key)
                    s = c if s is None else s + c
                    if s.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = s
        return SuperFunction(self.chart, out)

    def __rmul__(self, other):
        return self.coerce(other) * self

    def scale(self, scalar) -> "SuperFunction":
        scalar = GaussianRational.coerce(scalar)
        return SuperFunction(self.chart, {k: c * scalar for k, c in self.terms.items()})

    # -- calculus ----------------------------------------------------------

    def partial(self, coord: str) -> "SuperFunction":
        parity = self.chart.parity(coord)
        out: Dict[ExpKey, GrassmannNumber] = {}
        if parity == 0:
            i = self.chart.even_index(coord)
            for (e, w), c in self.terms.items():
                if e[i] == 0:
                    continue
                e2 = list(e)
                e2[i] -= 1
                key = (tuple(e2), w)
                add = c * e[i]
                s = out.get(key)
                s = add if s is None else s + add
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        else:
            j = self.chart.odd_index(coord)
            for (e, w), c in self.terms.items():
                if j not in w:
                    continue
                pos = w.index(j)
                w2 = w[:pos] + w[pos + 1:]
                # move xi_j left through pos earlier letters and the odd
                # part of the coefficient
                add = GrassmannNumber.zero(self.chart.generators)
                for p, cp in c.homogeneous_parts().items():
                    sign = -1 if (pos + p) % 2 else 1
                    add = add + (cp if sign > 0 else -cp)
                if add.is_zero():
                    continue
                key = (e, w2)
                s = out.get(key)
                s = add if s is None else s + add
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return SuperFunction(self.chart, out)

    def evaluate(self, point: Mapping[str, object]) -> GrassmannNumber:
        """Evaluate at a real point: even coords from `point`, odd coords 0."""
        values: List[GaussianRational] = []
        for name in self.chart.even:
            if name not in point:
                raise KeyError(f"missing value for coordinate {name}")
            v = point[name]
            if isinstance(v, GrassmannNumber):
                raise ValueError("real point evaluation expects scalar values")
            values.append(GaussianRational.coerce(v))
        total = GrassmannNumber.zero(self.chart.generators)
        for (e, w), c in self.terms.items():
            if w:
                continue
            factor = GaussianRational(1)
            for exp, v in zip(e, values):
                for _ in range(exp):
                    factor = factor * v
            total = total + c * factor
        return total

    # -- comparison / rendering ------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational, GrassmannNumber)):
            other = self.coerce(other)
        if not isinstance(other, SuperFunction):
            return NotImplemented
        return self.chart == other.chart and self.terms == other.terms

    def __hash__(self):
        return hash((self.chart, tuple(sorted(self.terms.items(), key=lambda kv: kv[0]))))

    def _term_str(self, key: ExpKey, coeff: GrassmannNumber) -> str:
        e, w = key
        factors = []
        cs = str(coeff)
        if not coeff.is_scalar() or not (coeff == 1):
            simple = coeff.is_scalar() and not any(
                ch in cs[1:] for ch in "+-"
            )
            factors.append(cs if simple else f"({cs})")
        for name, exp in zip(self.chart.even, e):
            if exp == 1:
                factors.append(name)
            elif exp > 1:
                factors.append(f"{name}^{exp}")
        for j in w:
            factors.append(self.chart.odd[j])
        if not factors:
            return "1"
        return "*".join(factors)

    def __str__(self):
        if not self.terms:
            return "0"
        keys = sorted(self.terms, key=lambda k: (sum(k[0]) + len(k[1]), k))
        chunks = [self._term_str(k, self.terms[k]) for k in keys]
        out = chunks[0]
        for chunk in chunks[1:]:
            if chunk.startswith("-") and "(" not in chunk[:2]:
                out += " - " + chunk[1:]
            else:
                out += " + " + chunk
        return out

    def __repr__(self):
        return f"<SuperFunction {self} on {self.chart.name}>"


def partial(f: SuperFunction, coord: str) -> SuperFunction:
    return f.partial(coord)


class CFunction:
    """C-valued function f = f0*c0 + f1*c1 on a chart."""

    __slots__ = ("f0", "f1")

    def __init__(self, f0: SuperFunction, f1: SuperFunction):
        if f0.chart != f1.chart:
            raise ChartMismatch("components on different charts")
        self.f0 = f0
        self.f1 = f1

    @property
    def chart(self) -> Chart:
        return self.f0.chart

    @staticmethod
    def from_parts(chart: Chart, f0=None, f1=None) -> "CFunction":
        f0 = chart.zero() if f0 is None else f0
        f1 = chart.zero() if f1 is None else f1
        return CFunction(f0, f1)

    def component(self, alpha: int) -> SuperFunction:
        return self.f0 if alpha == 0 else self.f1

    def piece(self, alpha: int, beta: int) -> SuperFunction:
        """Homogeneous piece f^alpha_beta (parity beta part of f^alpha)."""
        return self.component(alpha).parity_part(beta)

    def is_zero(self) -> bool:
        return self.f0.is_zero() and self.f1.is_zero()

    def is_constant(self) -> bool:
        return self.f0.is_constant() and self.f1.is_constant()

    def parity_part(self, parity: int) -> "CFunction":
        """Homogeneous part of the C-valued function, c-basis parities included."""
        return CFunction(self.f0.parity_part(parity), self.f1.parity_part((parity + 1) % 2))

    def is_homogeneous(self) -> bool:
        return sum(1 for p in (0, 1) if not self.parity_part(p).is_zero()) <= 1

    def parity(self) -> int:
        nonzero = [p for p in (0, 1) if not self.parity_part(p).is_zero()]
        if len(nonzero) > 1:
            raise ValueError("C-valued function is not homogeneous")
        return nonzero[0] if nonzero else 0

    def __add__(self, other: "CFunction") -> "CFunction":
        return CFunction(self.f0 + other.f0, self.f1 + other.f1)

    def __neg__(self):
        return CFunction(-self.f0, -self.f1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, scalar) -> "CFunction":
        return CFunction(self.f0.scale(scalar), self.f1.scale(scalar))

    def __eq__(self, other):
        if not isinstance(other, CFunction):
            return NotImplemented
        return self.f0 == other.f0 and self.f1 == other.f1

    def __hash__(self):
        return hash((self.f0, self.f1))

    def __str__(self):
        return f"({self.f0})*c0 + ({self.f1})*c1"

    __repr__ = __str__


class VectorField:
    """First-order differential operator X = sum_z X^z d/dz, coefficients left."""

    __slots__ = ("chart", "components")

    def __init__(self, chart: Chart, components: Dict[str, SuperFunction]):
        self.chart = chart
        comps = {}
        for name, sf in components.items():
            if name not in chart.coords:
                raise UnknownCoordinate(name)
            if sf.chart != chart:
                raise ChartMismatch("component on a different chart")
            if not sf.is_zero():
                comps[name] = sf
        self.components = comps

    def component(self, name: str) -> SuperFunction:
        return self.components.get(name, self.chart.zero())

    def is_zero(self) -> bool:
        return not self.components

    # parity of the operator: component for z has parity eps(X) + eps(z)

    def parity_part(self, parity: int) -> "VectorField":
        comps = {}
        for name, sf in self.components.items():
            part = sf.parity_part((parity + self.chart.parity(name)) % 2)
            if not part.is_zero():
                comps[name] = part
        return VectorField(self.chart, comps)

    def homogeneous_parts(self) -> Dict[int, "VectorField"]:
        out = {}
        for p in (0, 1):
            part = self.parity_part(p)
            if not part.is_zero():
                out[p] = part
        return out

    def is_homogeneous(self) -> bool:
        return len(self.homogeneous_parts()) <= 1

    def parity(self) -> int:
        parts = self.homogeneous_parts()
        if len(parts) > 1:
            raise ValueError("vector field is not homogeneous")
        return next(iter(parts), 0)

    def __add__(self, other: "VectorField") -> "VectorField":
        if other.chart != self.chart:
            raise ChartMismatch("vector fields on different charts")
        comps = dict(self.components)
        for name, sf in other.components.items():
            s = comps.get(name)
            s = sf if s is None else s + sf
            if s.is_zero():
                comps.pop(name, None)
            else:
                comps[name] = s
        return VectorField(self.chart, comps)

    def __neg__(self):
        return VectorField(self.chart, {k: -v for k, v in self.components.items()})

    def __sub__(self, other):
        return self + (-other)

    def left_multiply(self, f: SuperFunction) -> "VectorField":
        return VectorField(self.chart, {k: f * v for k, v in self.components.items()})

    def scale(self, scalar) -> "VectorField":
        return VectorField(self.chart, {k: v.scale(scalar) for k, v in self.components.items()})

    def __call__(self, f):
        return self.apply(f)

    def apply(self, f):
        """X f = sum_z X^z d_z f, componentwise on C-valued functions."""
        if isinstance(f, CFunction):
            return CFunction(self.apply(f.f0), self.apply(f.f1))
        if not isinstance(f, SuperFunction):
            raise TypeError("vector fields act on superfunctions")
        if f.chart != self.chart:
            raise ChartMismatch("function on a different chart")
        total = self.chart.zero()
        for name, comp in self.components.items():
            total = total + comp * f.partial(name)
        return total

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.chart == other.chart and self.components == other.components

    def __hash__(self):
        return hash((self.chart, tuple(sorted(self.components.items()))))

    def __str__(self):
        if not self.components:
            return "0"
        chunks = []
        for name in self.chart.coords:
            if name in self.components:
                chunks.append(f"({self.components[name]})*d/d{name}")
        return " + ".join(chunks)

    __repr__ = __str__


def vf_apply(x: VectorField, f):
    return x.apply(f)


def vf_commutator(x: VectorField, y: VectorField) -> VectorField:
    """Graded commutator [X,Y], extended bilinearly over homogeneous parts."""
    if x.chart != y.chart:
        raise ChartMismatch("vector fields on different charts")
    chart = x.chart
    result = VectorField(chart, {})
    for px, xp in x.homogeneous_parts().items():
        for py, yp in y.homogeneous_parts().items():
            sign = -1 if (px * py) % 2 else 1
            comps: Dict[str, SuperFunction] = {}
            for name in set(xp.components) | set(yp.components):
                c = xp.apply(yp.component(name)) - yp.apply(xp.component(name)).scale(sign)
                if not c.is_zero():
                    comps[name] = c
            result = result + VectorField(chart, comps)
    return result
