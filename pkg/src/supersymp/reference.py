"""Bundled reference examples.

The worked examples that the engine is expected to reproduce exactly: the
2|2 mixed-form counterexample, the 2|1 degenerate-but-homogeneously
non-degenerate chart with its Poisson algebra, and the 3|3 super Heisenberg
data with its three coadjoint orbit types.  Tests and the ``verify-paper``
command both consume these builders.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .charts import CFunction, Chart, SuperFunction, VectorField
from .forms import KForm, wedge


def d(chart: Chart, name: str) -> KForm:
    return KForm.differential(chart, name)


# ----------------------------------------------------------------------
# 2|2 chart: omega = dx^dy + dxi^deta + dx^dxi with the two mixed fields
# whose commutator is not even locally hamiltonian in the naive sense.
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class MixedCounterexample:
    chart: Chart
    omega: KForm
    X: VectorField
    Y: VectorField


def mixed_counterexample(generators: int | None = None) -> MixedCounterexample:
    chart = Chart("M22", ("x", "y"), ("xi", "eta"), generators)
    omega = (
        wedge(d(chart, "x"), d(chart, "y"))
        + wedge(d(chart, "xi"), d(chart, "eta"))
        + wedge(d(chart, "x"), d(chart, "xi"))
    )
    y, xi, eta = chart.var("y"), chart.var("xi"), chart.var("eta")
    X = chart.vector_field({"x": y.scale(2), "eta": y.scale(-2)})
    Y = chart.vector_field({"xi": -xi, "eta": eta, "y": xi})
    return MixedCounterexample(chart, omega, X, Y)


# ----------------------------------------------------------------------
# 2|1 chart: omega = dx^dy + dx^dxi, degenerate but homogeneously
# non-degenerate; its Poisson algebra is the three-function family
#   f = (a(x) + y c(x)) c0 + (b(x) + xi c(x)) c1.
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class MixedChart21:
    chart: Chart
    omega: KForm
    theta: KForm  # potential with d(theta) = omega


def mixed_chart_21(generators: int | None = None) -> MixedChart21:
    chart = Chart("M21", ("x", "y"), ("xi",), generators)
    omega = wedge(d(chart, "x"), d(chart, "y")) + wedge(d(chart, "x"), d(chart, "xi"))
    x = chart.var("x")
    theta = d(chart, "y").left_multiply(x) + d(chart, "xi").left_multiply(x)
    return MixedChart21(chart, omega, theta)


def poisson_member_21(data: MixedChart21, a, b, c) -> CFunction:
    """Member (a(x) + y c(x)) c0 + (b(x) + xi c(x)) c1 of the 2|1 algebra.

    a, b, c are polynomials in x given as coefficient sequences.
    """
    chart = data.chart
    x, y, xi = chart.var("x"), chart.var("y"), chart.var("xi")

    def poly(coeffs) -> SuperFunction:
        acc = chart.zero()
        xpow = chart.one()
        for coeff in coeffs:
            acc = acc + xpow.scale(Fraction(coeff))
            xpow = xpow * x
        return acc

    ca, cb, cc = poly(a), poly(b), poly(c)
    return CFunction(ca + y * cc, cb + xi * cc)


# ----------------------------------------------------------------------
# Even 2|0 chart: omega = dx^dy with potential theta = x dy.
# ----------------------------------------------------------------------


def even_chart_20(generators: int | None = None) -> MixedChart21:
    chart = Chart("M20", ("x", "y"), (), generators)
    omega = wedge(d(chart, "x"), d(chart, "y"))
    theta = d(chart, "y").left_multiply(chart.var("x"))
    return MixedChart21(chart, omega, theta)


# ----------------------------------------------------------------------
# The 3|3 graded skew-symmetric pairing.  Stored as Omega[i][j] =
# Omega(e_i, e_j) (0-based); the even and odd components are the parity
# 0 and parity 1 pieces of the pairing.
# ----------------------------------------------------------------------

HEISENBERG_33_PARITIES = (0, 0, 0, 1, 1, 1)

HEISENBERG_33_PAIRING = (
    (0, -1, 0, -1, 0, 0),
    (1, 0, 0, 0, 0, 0),
    (0, 0, 0, 0, -1, 0),
    (1, 0, 0, 0, 0, 0),
    (0, 0, 1, 0, 1, 0),
    (0, 0, 0, 0, 0, -1),
)


def heisenberg_33():
    from .heisenberg import HeisenbergSpec

    n = 6
    eps = HEISENBERG_33_PARITIES
    omega0 = [[Fraction(0)] * n for _ in range(n)]
    omega1 = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            v = Fraction(HEISENBERG_33_PAIRING[i][j])
            if (eps[i] + eps[j]) % 2 == 0:
                omega0[i][j] = v
            else:
                omega1[i][j] = v
    return HeisenbergSpec(eps, omega0, omega1)
