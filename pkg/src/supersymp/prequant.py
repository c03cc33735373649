"""Local-chart model of the D-prequantum connection and its operators.

Everything here happens on one trivializing chart: base coordinates plus an
even fiber coordinate t (taken mod d) and an odd fiber coordinate tau.  The
connection is alpha = theta + dt + dtau with d(theta) = omega; doubled, its
parts are (theta_0 + dt) c0 and (theta_1 + dtau) c1.

Sections of the associated line model are stored by their reduced part: the
equivariant function e^(-it/hbar) s(base) enters only through the formal
substitution d/dt -> -i/hbar, with hbar = 1 and i an exact Gaussian unit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .charts import CFunction, Chart, SuperFunction, VectorField
from .forms import CKForm, KForm, contract, ext_d, lie_derivative, lift_form, lift_function
from .scalars import GaussianRational
from .symplectic import SymplecticData, require_hamiltonian_field

MINUS_I = GaussianRational(0, -1)


class PrequantChart:
    """Base symplectic data, a potential theta with d(theta) = omega, and
    the two fiber coordinates of the structure group."""

    def __init__(
        self,
        data: SymplecticData,
        theta: KForm,
        d: Fraction | int = 0,
        fiber_even: str = "t",
        fiber_odd: str = "tau",
    ):
        if theta.degree != 1:
            raise ValueError("the potential must be a 1-form")
        if ext_d(theta) != data.omega:
            raise ValueError("potential does not satisfy d(theta) = omega")
        self.base = data
        self.theta = theta
        self.d = Fraction(d)
        base_chart = data.chart
        if fiber_even in base_chart.coords or fiber_odd in base_chart.coords:
            raise ValueError("fiber coordinate names collide with the base chart")
        self.total = Chart(
            base_chart.name + "_total",
            base_chart.even + (fiber_even,),
            base_chart.odd + (fiber_odd,),
            base_chart.generators,
        )
        self.fiber_even = fiber_even
        self.fiber_odd = fiber_odd
        theta0 = lift_form(theta.parity_part(0), self.total)
        theta1 = lift_form(theta.parity_part(1), self.total)
        self.alpha = CKForm(
            theta0 + KForm.differential(self.total, fiber_even),
            theta1 + KForm.differential(self.total, fiber_odd),
        )

    # -- infinitesimal symmetries ---------------------------------------

    def eta_field(self, f: CFunction, ansatz_degree: Optional[int] = None) -> VectorField:
        """The unique connection symmetry with i_eta doubled-alpha = -f.

        eta_f = X_f - (f0 + <X_f, theta_0>) d/dt - (f1 + <X_f, theta_1>) d/dtau.
        """
        xf = require_hamiltonian_field(f, self.base, ansatz_degree)
        coeff0 = f.f0 + contract(xf, self.theta.parity_part(0)).as_function()
        coeff1 = f.f1 + contract(xf, self.theta.parity_part(1)).as_function()
        comps = {name: lift_function(c, self.total) for name, c in xf.components.items()}
        if not coeff0.is_zero():
            comps[self.fiber_even] = -lift_function(coeff0, self.total)
        if not coeff1.is_zero():
            comps[self.fiber_odd] = -lift_function(coeff1, self.total)
        return VectorField(self.total, comps)

    def symmetry_check(self, z: VectorField) -> bool:
        """Does z preserve the doubled connection form componentwise?"""
        return lie_derivative(z, self.alpha).is_zero()

    def project_field(self, z: VectorField) -> VectorField:
        """Drop the fiber components: the pushforward to the base."""
        base_chart = self.base.chart
        comps = {}
        for name, c in z.components.items():
            if name in (self.fiber_even, self.fiber_odd):
                continue
            comps[name] = _restrict_function(c, base_chart)
        return VectorField(base_chart, comps)


def _restrict_function(f: SuperFunction, target: Chart) -> SuperFunction:
    """Reinterpret a fiber-independent function on the base chart."""
    src = f.chart
    even_map = {i: target.even.index(n) for i, n in enumerate(src.even) if n in target.even}
    odd_map = {j: target.odd.index(n) for j, n in enumerate(src.odd) if n in target.odd}
    terms = {}
    for (e, w), c in f.terms.items():
        for i, exp in enumerate(e):
            if exp and i not in even_map:
                raise ValueError("function depends on a fiber coordinate")
        if any(j not in odd_map for j in w):
            raise ValueError("function depends on a fiber coordinate")
        e2 = [0] * len(target.even)
        for i, exp in enumerate(e):
            if exp:
                e2[even_map[i]] = exp
        w2 = tuple(sorted(odd_map[j] for j in w))
        terms[(tuple(e2), w2)] = c
    return SuperFunction(target, terms)


@dataclass
class Section:
    """Reduced section: a superfunction on the base chart."""

    fun: SuperFunction

    def __add__(self, other: "Section") -> "Section":
        return Section(self.fun + other.fun)

    def __sub__(self, other: "Section") -> "Section":
        return Section(self.fun - other.fun)

    def scale(self, s) -> "Section":
        return Section(self.fun.scale(s))

    def is_zero(self) -> bool:
        return self.fun.is_zero()

    def __eq__(self, other):
        return isinstance(other, Section) and self.fun == other.fun


def quantum_op(f: CFunction, s: Section, chart: PrequantChart, ansatz_degree: Optional[int] = None) -> Section:
    """Q(f) s = -i hbar nabla_(X_f) s + f0 s with hbar = 1.

    In the trivialization nabla_X s = X s + i <X, theta_0> s, so
    Q(f) s = -i X_f(s) + <X_f, theta_0> s + f0 s, all exact in Q(i).
    """
    xf = require_hamiltonian_field(f, chart.base, ansatz_degree)
    pairing = contract(xf, chart.theta.parity_part(0)).as_function()
    out = xf.apply(s.fun).scale(MINUS_I) + pairing * s.fun + f.f0 * s.fun
    return Section(out)


def rep_check(
    f: CFunction,
    g: CFunction,
    chart: PrequantChart,
    sections: Sequence[Section],
    ansatz_degree: Optional[int] = None,
) -> bool:
    """[Q(f), Q(g)] = -i hbar Q({f, g}) on the sample sections.

    The commutator is graded: for homogeneous f, g the operators carry the
    parities of f and g.
    """
    from .symplectic import poisson_bracket

    bracket = poisson_bracket(f, g, chart.base, ansatz_degree)
    pf = f.parity() if not f.is_zero() else 0
    pg = g.parity() if not g.is_zero() else 0
    sign = -1 if (pf * pg) % 2 else 1
    for s in sections:
        lhs = quantum_op(f, quantum_op(g, s, chart), chart) - quantum_op(
            g, quantum_op(f, s, chart), chart
        ).scale(sign)
        rhs = quantum_op(bracket, s, chart).scale(MINUS_I)
        if lhs != rhs:
            return False
    return True
