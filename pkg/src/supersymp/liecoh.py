"""Super Lie algebras by structure constants and their cohomology with
values in the trivial 1|1-dimensional module C.

Chains are even left multilinear graded skew-symmetric maps; a k-chain is
stored by its values on non-decreasing basis tuples (repetitions allowed on
odd indices only).  The coboundary uses the repeated-contraction convention:

    (dc)(v0..vk) = (-1)^k sum_{i<j} (-1)^(j + sum_{i<p<j} eps_p eps_j)
                                   c(v0 .. v_{i-1} [v_i,v_j] v_{i+1} .. ^v_j .. vk)

whose degree-2 instance is exactly the graded Jacobi obstruction of the
central extension built from a 2-cochain.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from . import linalg
from .scalars import GaussianRational

CValue = Tuple[Fraction, Fraction]  # coordinates along (c0, c1)
Key = Tuple[int, ...]

ZERO_C: CValue = (Fraction(0), Fraction(0))


def _cadd(a: CValue, b: CValue) -> CValue:
    return (a[0] + b[0], a[1] + b[1])


def _cscale(a: CValue, s: Fraction) -> CValue:
    return (a[0] * s, a[1] * s)


class SuperLieAlgebra:
    """Finite-dimensional super Lie algebra given by structure constants.

    brackets[(i, j)] maps basis index k to the coefficient of e_k in
    [e_i, e_j]; entries for (j, i) are filled in by graded skew-symmetry.
    """

    def __init__(self, parities: Sequence[int], brackets: Mapping[Tuple[int, int], Mapping[int, Fraction]]):
        self.parities = tuple(int(p) % 2 for p in parities)
        n = len(self.parities)
        table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
        for (i, j), vec in brackets.items():
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"basis index out of range in bracket ({i},{j})")
            clean = {k: Fraction(v) for k, v in vec.items() if Fraction(v) != 0}
            for k in clean:
                if (self.parities[i] + self.parities[j]) % 2 != self.parities[k]:
                    raise ValueError(f"parity mismatch in [e{i},e{j}] -> e{k}")
            if clean:
                table[(i, j)] = clean
        # graded skew closure: [e_j, e_i] = -(-1)^(eps_i eps_j) [e_i, e_j]
        full: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
        for (i, j), vec in table.items():
            sign = -1 if (self.parities[i] * self.parities[j]) % 2 == 0 else 1
            mirror = {k: sign * v for k, v in vec.items()}
            if (j, i) in table:
                if table[(j, i)] != mirror:
                    raise ValueError(f"brackets ({i},{j}) and ({j},{i}) are not graded skew")
            full[(i, j)] = dict(vec)
            full[(j, i)] = mirror
        self.brackets = full

    @property
    def dimension(self) -> int:
        return len(self.parities)

    def dim_split(self) -> Tuple[int, int]:
        p = sum(1 for e in self.parities if e == 0)
        return p, len(self.parities) - p

    def bracket_basis(self, i: int, j: int) -> Dict[int, Fraction]:
        return self.brackets.get((i, j), {})

    def bracket(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Dict[int, Fraction]:
        out: Dict[int, Fraction] = {}
        for i, a in u.items():
            for j, b in v.items():
                for k, c in self.bracket_basis(i, j).items():
                    val = out.get(k, Fraction(0)) + a * b * c
                    if val == 0:
                        out.pop(k, None)
                    else:
                        out[k] = val
        return out

    def is_abelian(self) -> bool:
        return not self.brackets


def jacobi_check(g: SuperLieAlgebra) -> Tuple[bool, Optional[Tuple[int, int, int]]]:
    """Graded Jacobi identity; returns (ok, first violating triple)."""
    n = g.dimension
    eps = g.parities
    for i in range(n):
        for j in range(n):
            for k in range(n):
                acc: Dict[int, Fraction] = {}

                def add(sign: int, outer: int, inner: Dict[int, Fraction]):
                    for m, c in g.bracket({outer: Fraction(1)}, inner).items():
                        val = acc.get(m, Fraction(0)) + sign * c
                        if val == 0:
                            acc.pop(m, None)
                        else:
                            acc[m] = val

                add(1 if (eps[i] * eps[k]) % 2 == 0 else -1, i, g.bracket_basis(j, k))
                add(1 if (eps[j] * eps[i]) % 2 == 0 else -1, j, g.bracket_basis(k, i))
                add(1 if (eps[k] * eps[j]) % 2 == 0 else -1, k, g.bracket_basis(i, j))
                if acc:
                    return False, (i, j, k)
    return True, None


# ----------------------------------------------------------------------
# cochains
# ----------------------------------------------------------------------


def sort_with_sign(parities: Sequence[int], key: Iterable[int]) -> Tuple[int, Key]:
    """Sort a basis tuple, tracking the graded skew sign.

    An adjacent swap of distinct entries a, b costs -(-1)^(eps_a eps_b);
    a repeated even entry kills the tuple (sign 0).
    """
    items = list(key)
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            a, b = items[j - 1], items[j]
            sign *= -1 if (parities[a] * parities[b]) % 2 == 0 else 1
            items[j - 1], items[j] = b, a
            j -= 1
    for i in range(1, len(items)):
        if items[i] == items[i - 1] and parities[items[i]] == 0:
            return 0, ()
    return sign, tuple(items)


def canonical_keys(parities: Sequence[int], degree: int) -> List[Key]:
    keys = []
    for key in combinations_with_replacement(range(len(parities)), degree):
        ok = all(
            not (key[i] == key[i - 1] and parities[key[i]] == 0)
            for i in range(1, len(key))
        )
        if ok:
            keys.append(key)
    return keys


class CECochain:
    """Even C-valued k-cochain on a super Lie algebra."""

    def __init__(self, g: SuperLieAlgebra, degree: int, values: Mapping[Key, CValue] | None = None):
        self.g = g
        self.degree = degree
        self.values: Dict[Key, CValue] = {}
        if values:
            for key, val in values.items():
                sign, canon = sort_with_sign(g.parities, key)
                if sign == 0:
                    if val != ZERO_C:
                        raise ValueError(f"value on vanishing tuple {key}")
                    continue
                val = (Fraction(val[0]) * sign, Fraction(val[1]) * sign)
                parity = sum(g.parities[i] for i in canon) % 2
                if val[1 - parity] != 0:
                    raise ValueError(
                        f"evenness violated on {key}: component c{1 - parity} must vanish"
                    )
                if val == ZERO_C:
                    continue
                if canon in self.values and self.values[canon] != val:
                    raise ValueError(f"conflicting values on tuple {canon}")
                self.values[canon] = val

    def evaluate(self, key: Sequence[int]) -> CValue:
        sign, canon = sort_with_sign(self.g.parities, key)
        if sign == 0:
            return ZERO_C
        val = self.values.get(canon, ZERO_C)
        return _cscale(val, Fraction(sign))

    def evaluate_vectors(self, vectors: Sequence[Mapping[int, Fraction]]) -> CValue:
        """Evaluate on rational-coefficient vectors (real coefficients)."""
        total = ZERO_C
        idxs = [list(v.items()) for v in vectors]

        def rec(pos: int, prefix: List[int], coeff: Fraction):
            nonlocal total
            if pos == len(idxs):
                total = _cadd(total, _cscale(self.evaluate(tuple(prefix)), coeff))
                return
            for i, c in idxs[pos]:
                rec(pos + 1, prefix + [i], coeff * c)

        rec(0, [], Fraction(1))
        return total

    def is_zero(self) -> bool:
        return not self.values

    def __add__(self, other: "CECochain") -> "CECochain":
        assert other.g is self.g or other.g.parities == self.g.parities
        vals = dict(self.values)
        for k, v in other.values.items():
            s = _cadd(vals.get(k, ZERO_C), v)
            if s == ZERO_C:
                vals.pop(k, None)
            else:
                vals[k] = s
        out = CECochain(self.g, self.degree)
        out.values = vals
        return out

    def __neg__(self):
        out = CECochain(self.g, self.degree)
        out.values = {k: (-v[0], -v[1]) for k, v in self.values.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s: Fraction) -> "CECochain":
        s = Fraction(s)
        out = CECochain(self.g, self.degree)
        if s != 0:
            out.values = {k: _cscale(v, s) for k, v in self.values.items()}
        return out

    def __eq__(self, other):
        if not isinstance(other, CECochain):
            return NotImplemented
        return self.degree == other.degree and self.values == other.values

    def __hash__(self):
        return hash((self.degree, tuple(sorted(self.values.items()))))

    def __repr__(self):
        inner = ", ".join(f"{k}: ({v[0]},{v[1]})" for k, v in sorted(self.values.items()))
        return f"<{self.degree}-cochain {{{inner}}}>"


def ce_coboundary(c: CECochain, g: SuperLieAlgebra | None = None) -> CECochain:
    """Coboundary C^k -> C^(k+1) with the repeated-contraction sign."""
    g = g or c.g
    eps = g.parities
    k = c.degree
    out_vals: Dict[Key, CValue] = {}
    outer_sign = -1 if k % 2 else 1
    for key in canonical_keys(eps, k + 1):
        total = ZERO_C
        for i in range(k + 1):
            for j in range(i + 1, k + 1):
                interior = sum(eps[key[p]] for p in range(i + 1, j)) * eps[key[j]]
                sign = outer_sign * (-1 if (j + interior) % 2 else 1)
                rest = key[:i] + key[i + 1:j] + key[j + 1:]
                for m, coeff in g.bracket_basis(key[i], key[j]).items():
                    val = c.evaluate((rest[:i] + (m,) + rest[i:]))
                    total = _cadd(total, _cscale(val, Fraction(sign) * coeff))
        if total != ZERO_C:
            out_vals[key] = total
    out = CECochain(g, k + 1)
    out.values = out_vals
    return out


# ----------------------------------------------------------------------
# H^2 and central extensions
# ----------------------------------------------------------------------


def _cochain_dof(g: SuperLieAlgebra, degree: int) -> List[Tuple[Key, int]]:
    """Scalar degrees of freedom: each canonical tuple stores exactly its
    parity-matching C-component."""
    out = []
    for key in canonical_keys(g.parities, degree):
        alpha = sum(g.parities[i] for i in key) % 2
        out.append((key, alpha))
    return out


def _cochain_to_vector(c: CECochain, dof) -> List[GaussianRational]:
    return [GaussianRational(c.values.get(key, ZERO_C)[alpha]) for key, alpha in dof]


def _vector_to_cochain(g: SuperLieAlgebra, degree: int, dof, vec) -> CECochain:
    vals: Dict[Key, CValue] = {}
    for (key, alpha), v in zip(dof, vec):
        v = Fraction(v.re) if isinstance(v, GaussianRational) else Fraction(v)
        if v != 0:
            val = [Fraction(0), Fraction(0)]
            val[alpha] = v
            vals[key] = (val[0], val[1])
    out = CECochain(g, degree)
    out.values = vals
    return out


def _coboundary_matrix(g: SuperLieAlgebra, degree: int):
    """Matrix of d: C^degree -> C^(degree+1) in the canonical bases."""
    dof_src = _cochain_dof(g, degree)
    dof_dst = _cochain_dof(g, degree + 1)
    cols = []
    for key, alpha in dof_src:
        basis = CECochain(g, degree)
        val = [Fraction(0), Fraction(0)]
        val[alpha] = Fraction(1)
        basis.values = {key: (val[0], val[1])}
        cols.append(_cochain_to_vector(ce_coboundary(basis, g), dof_dst))
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(len(dof_dst))]
    return rows, dof_src, dof_dst


@dataclass
class H2Report:
    dim_c2: int
    dim_z2: int
    dim_b2: int
    dim_h2: int
    representatives: List[CECochain]


def h2(g: SuperLieAlgebra) -> H2Report:
    """Second cohomology with values in C, with representative cocycles."""
    d2, dof2, _ = _coboundary_matrix(g, 2)
    d1, dof1, dof2b = _coboundary_matrix(g, 1)
    z_basis = linalg.nullspace(d2) if d2 else [
        [GaussianRational(1 if i == j else 0) for i in range(len(dof2))] for j in range(len(dof2))
    ]
    b_cols = []
    if d1 and dof1:
        for j in range(len(dof1)):
            b_cols.append([d1[i][j] for i in range(len(dof2))])
    dim_b = linalg.rank(b_cols) if b_cols else 0
    # representatives: z-vectors independent modulo the coboundaries
    reps: List[CECochain] = []
    span = [v for v in b_cols]
    for z in z_basis:
        if not linalg.in_span(span, z):
            reps.append(_vector_to_cochain(g, 2, dof2, z))
            span = span + [z]
    return H2Report(
        dim_c2=len(dof2),
        dim_z2=len(z_basis),
        dim_b2=dim_b,
        dim_h2=len(z_basis) - dim_b,
        representatives=reps,
    )


def central_extension(g: SuperLieAlgebra, omega: CECochain) -> SuperLieAlgebra:
    """g x C with bracket [(v,e),(w,f)] = ([v,w], Omega(v,w)).

    The central basis vectors c0, c1 are appended at indices n and n+1.
    The result satisfies Jacobi exactly when d(omega) = 0; build it and
    check, a failure is a reported outcome, not an exception.
    """
    if omega.degree != 2:
        raise ValueError("central extensions are built from 2-cochains")
    n = g.dimension
    parities = g.parities + (0, 1)
    brackets: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for (i, j), vec in g.brackets.items():
        brackets[(i, j)] = dict(vec)
    for i in range(n):
        for j in range(i, n):
            val = omega.evaluate((i, j))
            if val == ZERO_C:
                continue
            entry = brackets.setdefault((i, j), {})
            if val[0]:
                entry[n] = entry.get(n, Fraction(0)) + val[0]
            if val[1]:
                entry[n + 1] = entry.get(n + 1, Fraction(0)) + val[1]
    cleaned = {k: v for k, v in brackets.items() if k[0] <= k[1]}
    return SuperLieAlgebra(parities, cleaned)


def extension_equivalent(omega1: CECochain, omega2: CECochain, g: SuperLieAlgebra) -> Tuple[bool, Optional[CECochain]]:
    """Solvability of omega1 - omega2 = dF for an even 1-cochain F."""
    diff = omega1 - omega2
    d1, dof1, dof2 = _coboundary_matrix(g, 1)
    rhs = _cochain_to_vector(diff, dof2)
    if not dof1:
        ok = all(x.is_zero() for x in rhs)
        return ok, (CECochain(g, 1) if ok else None)
    sol = linalg.solve(d1, rhs)
    if sol is None:
        return False, None
    return True, _vector_to_cochain(g, 1, dof1, sol)


def transported_bracket_isomorphic(g: SuperLieAlgebra, omega1: CECochain, omega2: CECochain, f: CECochain) -> bool:
    """Check phi(v,e) = (v, e + F(v)) carries the omega1-extension onto the
    omega2-extension: omega1 = omega2 + dF transported on all basis pairs."""
    df = ce_coboundary(f, g)
    target = omega2 + df
    return omega1 == target


# ----------------------------------------------------------------------
# cocycles from geometry
# ----------------------------------------------------------------------


def pullback_class(g: SuperLieAlgebra, x: Sequence[Fraction], xbar: Sequence[Fraction]) -> CECochain:
    """The 2-cocycle (v,w) -> <[v,w], mu> at a real point mu of the dual.

    mu is given by its 2n real coordinates: x_i (nonzero only on even
    slots) and xbar_i (nonzero only on odd slots).
    """
    eps = g.parities
    n = g.dimension
    x = [Fraction(v) for v in x]
    xbar = [Fraction(v) for v in xbar]
    for i in range(n):
        if eps[i] == 1 and x[i] != 0:
            raise ValueError(f"non-real point: odd coordinate x_{i} nonzero")
        if eps[i] == 0 and xbar[i] != 0:
            raise ValueError(f"non-real point: odd coordinate xbar_{i} nonzero")
    vals: Dict[Key, CValue] = {}
    for key in canonical_keys(eps, 2):
        i, j = key
        c0 = Fraction(0)
        c1 = Fraction(0)
        for m, coeff in g.bracket_basis(i, j).items():
            sign = -1 if eps[m] % 2 else 1
            c0 += coeff * sign * x[m]
            c1 += coeff * xbar[m]
        if c0 or c1:
            vals[key] = (c0, c1)
    return CECochain(g, 2, vals)


def class_difference(g: SuperLieAlgebra, point1, point2) -> Tuple[CECochain, Optional[CECochain]]:
    """Difference of pullback cocycles at two points, with a coboundary
    witness F solving dF = difference when one exists."""
    c1 = pullback_class(g, *point1)
    c2 = pullback_class(g, *point2)
    diff = c1 - c2
    ok, witness = extension_equivalent(c1, c2, g)
    return diff, (witness if ok else None)


def momentum_cocycle(g: SuperLieAlgebra, momentum, bracket) -> Tuple[CECochain, bool]:
    """Cocycle  Omega_J(v,w) = {<v,J>, <w,J>} - <[v,w], J>  on basis pairs.

    `momentum` maps a basis index to the C-valued function <e_i, J> on some
    chart; `bracket` is the Poisson bracket of two such functions.  Returns
    the cochain of constant values and a flag reporting whether every entry
    really was coordinate-independent.
    """
    eps = g.parities
    vals: Dict[Key, CValue] = {}
    constant = True
    for key in canonical_keys(eps, 2):
        i, j = key
        f = bracket(momentum(i), momentum(j))
        for m, coeff in g.bracket_basis(i, j).items():
            f = f - momentum(m).scale(coeff)
        if not f.is_constant():
            constant = False
            continue
        v0 = f.f0.constant_value()
        v1 = f.f1.constant_value()
        if not (v0.is_scalar() and v1.is_scalar()):
            constant = False
            continue
        c0, c1 = v0.body(), v1.body()
        if not c0.is_rational() or not c1.is_rational():
            raise ValueError("momentum cocycle has non-rational entries")
        if c0.re or c1.re:
            vals[key] = (c0.re, c1.re)
    return CECochain(g, 2, vals), constant
