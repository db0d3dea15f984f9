"""Residual- and past-lifetime measures, their identities, bounds and orderings.

Residual measures condition on survival past t (densities divided by the
survivals at t, integrals over (t, inf)); past measures condition on failure
by t (cdfs, integrals over (0, t)).  Signs are fixed so that both dynamic
relative extropies are nonnegative and split as sums of the two directional
divergences, mirroring the static layer:

* residual relative   d_r(f,g,t) = (1/2) int_t^inf (f/S_F(t) - g/S_G(t))^2
* residual divergence J_r(f|g,t) = (1/2) int_t^inf (f/S_F(t) - g/S_G(t)) f/S_F(t)
* past relative       d_p(f,g,t) = (1/2) int_0^t   (f/F(t)   - g/G(t))^2
* past divergence     J_p(f|g,t) = (1/2) int_0^t   (f/F(t)   - g/G(t)) f/F(t)

The differential identity asserted for d_r is

    d_r' - d_r (h_X + h_Y) = (h_Y - h_X)(J_t(X) - J_t(Y)) - (1/2)(h_X - h_Y)^2,

which is what the sum of the two divergence equations yields and what two
exponentials satisfy exactly.  A variant with (h_X + h_Y)^2 in the last term
circulates; it fails on exponentials and is inconsistent at f = g, but can be
evaluated via ``form="printed"`` for comparison.

Past measures accept ``atom_convention``: "ac" integrates densities only;
"paper" also folds a point mass at the left endpoint into the quadratic forms
as its squared conditional mass, reproducing the constant-reversed-hazard
closed forms with their leading "1 +" bracket.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import DenominatorUnderflow, InsufficientGrid, InvalidParameter
from .models import DistributionModel, MeasureReport
from .quadrature import IntegralResult, QuadratureSpec, integrate, truncation_point

__all__ = [
    "TimeGrid",
    "DynamicVerdict",
    "DynamicOrderings",
    "residual_extropy",
    "past_extropy",
    "residual_inaccuracy",
    "past_inaccuracy",
    "residual_relative",
    "past_relative",
    "residual_divergence",
    "past_divergence",
    "hazard_repr_inaccuracy",
    "hazard_repr_relative",
    "ode_check_relative",
    "ode_check_divergence",
    "bound_checks",
    "constancy_detector",
    "dynamic_orderings",
    "global_decompositions",
]


@dataclass(frozen=True)
class TimeGrid:
    """Strictly increasing evaluation times plus a finite-difference step."""

    points: tuple[float, ...]
    fd_step: float | None = None

    def __post_init__(self):
        if len(self.points) < 1:
            raise InsufficientGrid("grid needs at least one point")
        if any(b <= a for a, b in zip(self.points, self.points[1:])):
            raise InvalidParameter("grid points must be strictly increasing")

    def step(self) -> float:
        if self.fd_step is not None:
            return self.fd_step
        span = self.points[-1] - self.points[0]
        return max(1e-4 * span, 1e-6)


@dataclass(frozen=True)
class DynamicVerdict:
    """Outcome of a grid-based identity, bound or constancy check."""

    kind: str
    holds: bool
    max_abs_residual: float
    tolerance: float
    per_point: tuple[tuple[float, float, float], ...]
    hypothesis_met: bool | None = None
    note: str = ""


def _q(q: QuadratureSpec | None) -> QuadratureSpec:
    return q or QuadratureSpec()


def _survival_at(d: DistributionModel, t: float, q: QuadratureSpec) -> float:
    sf = float(d.survival(t))
    if sf <= q.denominator_floor:
        raise DenominatorUnderflow(f"{d.label}: survival({t:g}) = {sf:.3e} below floor")
    return sf


def _cdf_at(d: DistributionModel, t: float, q: QuadratureSpec) -> float:
    cd = float(d.cdf(t))
    if cd <= q.denominator_floor:
        raise DenominatorUnderflow(f"{d.label}: cdf({t:g}) = {cd:.3e} below floor")
    return cd


def _residual_upper(models: Sequence[DistributionModel], t: float, q: QuadratureSpec):
    finite = [m.support[1] for m in models if not m.unbounded]
    unbounded = [m for m in models if m.unbounded]
    if not unbounded:
        return max(finite), None
    upper = truncation_point(
        [m.survival for m in unbounded], [m.pdf for m in unbounded], t, q
    )
    upper = max([upper] + finite)
    return upper, upper


def _edges(models: Sequence[DistributionModel], lo: float, hi: float) -> list[float]:
    pts = []
    for m in models:
        for p in m.support:
            if math.isfinite(p) and lo < p < hi:
                pts.append(p)
    return pts


# ---------------------------------------------------------------------------
# Residual measures
# ---------------------------------------------------------------------------


def residual_extropy(d: DistributionModel, t: float, q: QuadratureSpec | None = None) -> MeasureReport:
    """Extropy of the residual life at t: -(1/2) int_t (f / S(t))^2."""
    q = _q(q)
    sf = _survival_at(d, t, q)
    hi, trunc = _residual_upper([d], t, q)
    lo = max(t, d.support[0])
    res = integrate(lambda x: float(d.pdf(x)) ** 2, lo, hi, q, points=_edges([d], lo, hi))
    return MeasureReport.from_integral(
        "residual_extropy", -0.5 * res.value / sf**2,
        IntegralResult(res.value, res.abs_error, res.subdivisions, trunc),
        t=t, inputs=(d.label,), abs_tol=q.abs_tol,
    )


def residual_inaccuracy(
    dX: DistributionModel, dY: DistributionModel, t: float, q: QuadratureSpec | None = None
) -> MeasureReport:
    """-(1/2) int_t f g / (S_F(t) S_G(t)); equals residual extropy at f = g."""
    q = _q(q)
    sfx = _survival_at(dX, t, q)
    sfy = _survival_at(dY, t, q)
    hi, trunc = _residual_upper([dX, dY], t, q)
    lo = max(t, min(dX.support[0], dY.support[0]))
    res = integrate(
        lambda x: float(dX.pdf(x)) * float(dY.pdf(x)), lo, hi, q, points=_edges([dX, dY], lo, hi)
    )
    return MeasureReport.from_integral(
        "residual_inaccuracy", -0.5 * res.value / (sfx * sfy),
        IntegralResult(res.value, res.abs_error, res.subdivisions, trunc),
        t=t, inputs=(dX.label, dY.label), abs_tol=q.abs_tol,
    )


def _residual_quadratic(
    dX: DistributionModel,
    dY: DistributionModel,
    t: float,
    q: QuadratureSpec,
    weight: str,
) -> tuple[float, IntegralResult]:
    """Integrate (f/SF - g/SG)^2 or (f/SF - g/SG) f/SF over (t, inf)."""
    sfx = _survival_at(dX, t, q)
    sfy = _survival_at(dY, t, q)
    hi, trunc = _residual_upper([dX, dY], t, q)
    lo = max(t, min(dX.support[0], dY.support[0]))

    if weight == "square":
        def integrand(x):
            diff = float(dX.pdf(x)) / sfx - float(dY.pdf(x)) / sfy
            return diff * diff
    else:
        def integrand(x):
            fx = float(dX.pdf(x)) / sfx
            return (fx - float(dY.pdf(x)) / sfy) * fx

    res = integrate(integrand, lo, hi, q, points=_edges([dX, dY], lo, hi))
    return 0.5 * res.value, IntegralResult(res.value, res.abs_error, res.subdivisions, trunc)


def residual_relative(
    dX: DistributionModel, dY: DistributionModel, t: float, q: QuadratureSpec | None = None
) -> MeasureReport:
    """d_r(f,g,t) >= 0; constant in t for two exponentials."""
    q = _q(q)
    value, res = _residual_quadratic(dX, dY, t, q, "square")
    return MeasureReport.from_integral(
        "residual_relative", value, res, t=t, inputs=(dX.label, dY.label), abs_tol=q.abs_tol
    )


def residual_divergence(
    dX: DistributionModel, dY: DistributionModel, t: float, q: QuadratureSpec | None = None
) -> MeasureReport:
    """J_r(f|g,t) = xiJ_r(X,Y,t) - J_t(X); sign unrestricted."""
    q = _q(q)
    value, res = _residual_quadratic(dX, dY, t, q, "first")
    return MeasureReport.from_integral(
        "residual_divergence_fg", value, res, t=t, inputs=(dX.label, dY.label), abs_tol=q.abs_tol
    )


# ---------------------------------------------------------------------------
# Past measures
# ---------------------------------------------------------------------------


def _atom_fraction(d: DistributionModel, cdf_t: float, convention: str) -> float:
    if convention == "paper" and d.atom_at_lo > 0.0:
        return d.atom_at_lo / cdf_t
    return 0.0


def _check_convention(convention: str) -> None:
    if convention not in ("ac", "paper"):
        raise InvalidParameter(f"atom_convention must be 'ac' or 'paper', got {convention!r}")


def past_extropy(
    d: DistributionModel, t: float, q: QuadratureSpec | None = None, atom_convention: str = "ac"
) -> MeasureReport:
    """Extropy of the past life at t: -(1/2) int_0^t (f / F(t))^2."""
    q = _q(q)
    _check_convention(atom_convention)
    cd = _cdf_at(d, t, q)
    lo = d.support[0]
    hi = min(t, d.support[1])
    res = integrate(lambda x: float(d.pdf(x)) ** 2, lo, hi, q, points=_edges([d], lo, hi))
    value = -0.5 * res.value / cd**2
    value -= 0.5 * _atom_fraction(d, cd, atom_convention) ** 2
    return MeasureReport.from_integral(
        "past_extropy", value, res, t=t, inputs=(d.label,), abs_tol=q.abs_tol
    )


def past_inaccuracy(
    dX: DistributionModel,
    dY: DistributionModel,
    t: float,
    q: QuadratureSpec | None = None,
    atom_convention: str = "ac",
) -> MeasureReport:
    """-(1/2) int_0^t f g / (F(t) G(t))."""
    q = _q(q)
    _check_convention(atom_convention)
    cdx = _cdf_at(dX, t, q)
    cdy = _cdf_at(dY, t, q)
    lo = min(dX.support[0], dY.support[0])
    hi = min(t, max(dX.support[1], dY.support[1]))
    res = integrate(
        lambda x: float(dX.pdf(x)) * float(dY.pdf(x)), lo, hi, q, points=_edges([dX, dY], lo, hi)
    )
    value = -0.5 * res.value / (cdx * cdy)
    value -= 0.5 * _atom_fraction(dX, cdx, atom_convention) * _atom_fraction(dY, cdy, atom_convention)
    return MeasureReport.from_integral(
        "past_inaccuracy", value, res, t=t, inputs=(dX.label, dY.label), abs_tol=q.abs_tol
    )


def past_relative(
    dX: DistributionModel,
    dY: DistributionModel,
    t: float,
    q: QuadratureSpec | None = None,
    atom_convention: str = "ac",
) -> MeasureReport:
    """d_p(f,g,t) = (1/2) int_0^t (f/F(t) - g/G(t))^2 >= 0."""
    q = _q(q)
    _check_convention(atom_convention)
    cdx = _cdf_at(dX, t, q)
    cdy = _cdf_at(dY, t, q)
    lo = min(dX.support[0], dY.support[0])
    hi = min(t, max(dX.support[1], dY.support[1]))

    def integrand(x):
        diff = float(dX.pdf(x)) / cdx - float(dY.pdf(x)) / cdy
        return diff * diff

    res = integrate(integrand, lo, hi, q, points=_edges([dX, dY], lo, hi))
    value = 0.5 * res.value
    atom_gap = _atom_fraction(dX, cdx, atom_convention) - _atom_fraction(dY, cdy, atom_convention)
    value += 0.5 * atom_gap**2
    return MeasureReport.from_integral(
        "past_relative", value, res, t=t, inputs=(dX.label, dY.label), abs_tol=q.abs_tol
    )


def past_divergence(
    dX: DistributionModel,
    dY: DistributionModel,
    t: float,
    q: QuadratureSpec | None = None,
    atom_convention: str = "ac",
) -> MeasureReport:
    """J_p(f|g,t) = xiJ_p(X,Y,t) - past extropy of X; sign unrestricted."""
    q = _q(q)
    _check_convention(atom_convention)
    cdx = _cdf_at(dX, t, q)
    cdy = _cdf_at(dY, t, q)
    lo = min(dX.support[0], dY.support[0])
    hi = min(t, max(dX.support[1], dY.support[1]))

    def integrand(x):
        fx = float(dX.pdf(x)) / cdx
        return (fx - float(dY.pdf(x)) / cdy) * fx

    res = integrate(integrand, lo, hi, q, points=_edges([dX, dY], lo, hi))
    value = 0.5 * res.value
    ax = _atom_fraction(dX, cdx, atom_convention)
    ay = _atom_fraction(dY, cdy, atom_convention)
    value += 0.5 * ax * (ax - ay)
    return MeasureReport.from_integral(
        "past_divergence_fg", value, res, t=t, inputs=(dX.label, dY.label), abs_tol=q.abs_tol
    )


# ---------------------------------------------------------------------------
# Hazard-rate representations (X exponential)
# ---------------------------------------------------------------------------


def _cumulative_hazard(
    hazard_y: Callable[[float], float],
    cumulative_hazard_y: Callable[[float], float] | None,
    q: QuadratureSpec,
) -> Callable[[float], float]:
    if cumulative_hazard_y is not None:
        return lambda x: float(cumulative_hazard_y(x))

    def cumulative(x: float) -> float:
        if x <= 0.0:
            return 0.0
        return integrate(lambda u: float(hazard_y(u)), 0.0, x, q).value

    return cumulative


def hazard_repr_inaccuracy(
    rate_x: float,
    hazard_y: Callable[[float], float],
    t: float,
    q: QuadratureSpec | None = None,
    cumulative_hazard_y: Callable[[float], float] | None = None,
) -> float:
    """Residual inaccuracy rebuilt from the exponential rate and h_Y alone.

    -exp(rate t + H(t)) * int_t^inf (rate h_Y(x) / 2) exp(-rate x - H(x)) dx
    with H the cumulative hazard of Y.  Matches
    :func:`residual_inaccuracy` on the corresponding models.
    """
    if rate_x <= 0:
        raise InvalidParameter("rate_x must be positive")
    q = _q(q)
    cum = _cumulative_hazard(hazard_y, cumulative_hazard_y, q)
    survival_x = lambda x: math.exp(-rate_x * x)
    survival_y = lambda x: math.exp(-cum(x))
    pdf_y = lambda x: float(hazard_y(x)) * survival_y(x)
    upper = truncation_point(
        [survival_x, survival_y], [lambda x: rate_x * survival_x(x), pdf_y], t, q
    )

    def integrand(x):
        return 0.5 * rate_x * float(hazard_y(x)) * math.exp(-rate_x * x - cum(x))

    res = integrate(integrand, t, upper, q)
    return -math.exp(rate_x * t + cum(t)) * res.value


def hazard_repr_relative(
    rate_x: float,
    hazard_y: Callable[[float], float],
    t: float,
    q: QuadratureSpec | None = None,
    cumulative_hazard_y: Callable[[float], float] | None = None,
) -> float:
    """Residual relative extropy from the exponential rate and h_Y alone.

    Twice the hazard-form inaccuracy, plus the hazard-form negative residual
    extropy of Y, plus rate/4 (the negative residual extropy of X).
    """
    if rate_x <= 0:
        raise InvalidParameter("rate_x must be positive")
    q = _q(q)
    cum = _cumulative_hazard(hazard_y, cumulative_hazard_y, q)
    inaccuracy = hazard_repr_inaccuracy(rate_x, hazard_y, t, q, cumulative_hazard_y=cum)

    survival_y = lambda x: math.exp(-cum(x))
    pdf_y = lambda x: float(hazard_y(x)) * survival_y(x)
    upper = truncation_point([survival_y], [pdf_y], t, q)

    def integrand(x):
        return 0.5 * float(hazard_y(x)) ** 2 * math.exp(-2.0 * cum(x))

    res = integrate(integrand, t, upper, q)
    neg_extropy_y = math.exp(2.0 * cum(t)) * res.value
    return 2.0 * inaccuracy + neg_extropy_y + rate_x / 4.0


# ---------------------------------------------------------------------------
# Differential-equation and bound checks
# ---------------------------------------------------------------------------


def _dr_derivative(dX, dY, t, q, step) -> float:
    lo = max(t - step, 0.0)
    hi = t + step
    a = residual_relative(dX, dY, lo, q).value
    b = residual_relative(dX, dY, hi, q).value
    return (b - a) / (hi - lo)


def ode_check_relative(
    dX: DistributionModel,
    dY: DistributionModel,
    grid: TimeGrid,
    q: QuadratureSpec | None = None,
    form: str = "corrected",
    tol: float = 1e-3,
) -> DynamicVerdict:
    """Check the differential identity satisfied by d_r on the grid.

    lhs = d_r' - d_r (h_X + h_Y), with d_r' by central difference; rhs is the
    corrected form by default.  ``form="printed"`` evaluates the
    (h_X + h_Y)^2 variant instead and simply reports its residuals.
    """
    if form not in ("corrected", "printed"):
        raise InvalidParameter(f"form must be 'corrected' or 'printed', got {form!r}")
    q = _q(q)
    step = grid.step()
    rows = []
    for t in grid.points:
        d_r = residual_relative(dX, dY, t, q).value
        d_prime = _dr_derivative(dX, dY, t, q, step)
        hx = float(dX.hazard(t))
        hy = float(dY.hazard(t))
        jtx = residual_extropy(dX, t, q).value
        jty = residual_extropy(dY, t, q).value
        lhs = d_prime - d_r * (hx + hy)
        gap = (hy - hx) * (jtx - jty)
        if form == "corrected":
            rhs = gap - 0.5 * (hx - hy) ** 2
        else:
            rhs = gap - 0.5 * (hx + hy) ** 2
        rows.append((t, lhs, rhs))
    max_resid = max(abs(lhs - rhs) for _, lhs, rhs in rows)
    return DynamicVerdict(
        kind="ode_residual",
        holds=max_resid <= tol,
        max_abs_residual=max_resid,
        tolerance=tol,
        per_point=tuple(rows),
        note=f"form={form}",
    )


def ode_check_divergence(
    dX: DistributionModel,
    dY: DistributionModel,
    grid: TimeGrid,
    q: QuadratureSpec | None = None,
    tol: float = 1e-3,
) -> DynamicVerdict:
    """Check d/dt J_r(f|g,t) = (h_X+h_Y) J_r + (h_Y-h_X)(h_X/2 + J_t(X))."""
    q = _q(q)
    step = grid.step()
    rows = []
    for t in grid.points:
        lo = max(t - step, 0.0)
        hi = t + step
        j_lo = residual_divergence(dX, dY, lo, q).value
        j_hi = residual_divergence(dX, dY, hi, q).value
        lhs = (j_hi - j_lo) / (hi - lo)
        j_r = residual_divergence(dX, dY, t, q).value
        hx = float(dX.hazard(t))
        hy = float(dY.hazard(t))
        jtx = residual_extropy(dX, t, q).value
        rhs = (hx + hy) * j_r + (hy - hx) * (hx / 2.0 + jtx)
        rows.append((t, lhs, rhs))
    max_resid = max(abs(lhs - rhs) for _, lhs, rhs in rows)
    return DynamicVerdict(
        kind="ode_divergence",
        holds=max_resid <= tol,
        max_abs_residual=max_resid,
        tolerance=tol,
        per_point=tuple(rows),
    )


def _nonincreasing(values: Sequence[float], slack: float = 1e-9) -> bool:
    return all(b <= a + slack for a, b in zip(values, values[1:]))


def _nondecreasing(values: Sequence[float], slack: float = 1e-9) -> bool:
    return all(b >= a - slack for a, b in zip(values, values[1:]))


def bound_checks(
    dX: DistributionModel,
    dY: DistributionModel,
    grid: TimeGrid,
    q: QuadratureSpec | None = None,
    tol: float = 1e-6,
) -> list[DynamicVerdict]:
    """Evaluate the three hazard-rate bounds for d_r on the grid.

    (i) lower bound via dynamic extropies, hypothesis: d_r nondecreasing;
    (ii) d/dt log d_r <= h_X + h_Y, hypothesis: one-sided hazard ordering
    with a DFR member; (iii) the equality case, which characterizes
    d_r = 1 / (S_F S_G).  Hypotheses are tested empirically on the grid and a
    failed premise is reported in ``hypothesis_met``, never raised.
    """
    q = _q(q)
    step = grid.step()
    ts = list(grid.points)
    d_r = [residual_relative(dX, dY, t, q).value for t in ts]
    d_prime = [_dr_derivative(dX, dY, t, q, step) for t in ts]
    hx = [float(dX.hazard(t)) for t in ts]
    hy = [float(dY.hazard(t)) for t in ts]
    jtx = [residual_extropy(dX, t, q).value for t in ts]
    jty = [residual_extropy(dY, t, q).value for t in ts]
    sfx = [float(dX.survival(t)) for t in ts]
    sfy = [float(dY.survival(t)) for t in ts]

    verdicts = []

    # (i) d_r >= ((h_X - h_Y)/(h_X + h_Y)) (J_t(X) - J_t(Y)) when d_r is nondecreasing
    nondecreasing = _nondecreasing(d_r) and all(dp >= -tol for dp in d_prime)
    rows = []
    for i, t in enumerate(ts):
        rhs = ((hx[i] - hy[i]) / (hx[i] + hy[i])) * (jtx[i] - jty[i])
        rows.append((t, d_r[i], rhs))
    ok = all(lhs >= rhs - tol for _, lhs, rhs in rows)
    worst = max(max(rhs - lhs, 0.0) for _, lhs, rhs in rows)
    verdicts.append(
        DynamicVerdict(
            kind="bound_lower",
            holds=ok and nondecreasing,
            max_abs_residual=worst,
            tolerance=tol,
            per_point=tuple(rows),
            hypothesis_met=nondecreasing,
            note="hypothesis: d_r nondecreasing on the grid",
        )
    )

    # (ii) d/dt log d_r <= h_X + h_Y under a one-sided hazard ordering + DFR member
    ordered = all(a >= b for a, b in zip(hx, hy)) or all(b >= a for a, b in zip(hx, hy))
    dfr = _nonincreasing(hx) or _nonincreasing(hy)
    hypothesis = ordered and dfr
    rows = []
    for i, t in enumerate(ts):
        if d_r[i] <= q.denominator_floor:
            continue
        rows.append((t, d_prime[i] / d_r[i], hx[i] + hy[i]))
    ok = all(lhs <= rhs + tol for _, lhs, rhs in rows) if rows else True
    worst = max((max(lhs - rhs, 0.0) for _, lhs, rhs in rows), default=0.0)
    verdicts.append(
        DynamicVerdict(
            kind="bound_log_derivative",
            holds=ok and hypothesis,
            max_abs_residual=worst,
            tolerance=tol,
            per_point=tuple(rows),
            hypothesis_met=hypothesis,
            note="hypothesis: one-sided hazard ordering and a DFR member",
        )
    )

    # (iii) equality case: d/dt log d_r = h_X + h_Y iff d_r = 1/(S_F S_G)
    rows = [(t, d_r[i] * sfx[i] * sfy[i], 1.0) for i, t in enumerate(ts)]
    max_resid = max(abs(lhs - rhs) for _, lhs, rhs in rows)
    verdicts.append(
        DynamicVerdict(
            kind="bound_equality",
            holds=max_resid <= tol,
            max_abs_residual=max_resid,
            tolerance=tol,
            per_point=tuple(rows),
            note="equality case d_r = 1/(S_F S_G)",
        )
    )
    return verdicts


def constancy_detector(values: Sequence[tuple[float, float]], tol: float) -> bool:
    """True when the (t, value) series is constant to within tol (max - min)."""
    if len(values) < 3:
        raise InsufficientGrid(f"constancy check needs >= 3 points, got {len(values)}")
    vals = [v for _, v in values]
    return (max(vals) - min(vals)) <= tol


@dataclass(frozen=True)
class DynamicOrderings:
    """Pointwise dynamic orderings and the divergence/extropy equivalences.

    Relations follow the sign convention in which ``X <= Y`` in hazard order
    means h_X >= h_Y everywhere (smaller in hazard order = stochastically
    smaller), and similarly for reversed hazards.  ``rex_red_equivalent`` and
    ``pex_ped_equivalent`` report whether the extropy ordering and the
    reversed divergence ordering agree at every resolvable grid point.
    """

    points: tuple[float, ...]
    hr: str
    rh: str
    rex: str
    red: str
    pex: str
    ped: str
    rex_red_equivalent: bool
    pex_ped_equivalent: bool


def _pointwise_relation(a: Sequence[float], b: Sequence[float], resolution: float) -> str:
    if all(x >= y - resolution for x, y in zip(a, b)) and any(
        x > y + resolution for x, y in zip(a, b)
    ):
        return ">"
    if all(x <= y + resolution for x, y in zip(a, b)) and any(
        x < y - resolution for x, y in zip(a, b)
    ):
        return "<"
    if all(abs(x - y) <= resolution for x, y in zip(a, b)):
        return "="
    return "crossing"


def dynamic_orderings(
    dX: DistributionModel,
    dY: DistributionModel,
    grid: TimeGrid,
    q: QuadratureSpec | None = None,
) -> DynamicOrderings:
    """Evaluate hr/rh/rex/red/pex/ped orderings pointwise on the grid."""
    q = _q(q)
    ts = list(grid.points)
    resolution = 100.0 * q.abs_tol

    hx = [float(dX.hazard(t)) for t in ts]
    hy = [float(dY.hazard(t)) for t in ts]
    lx = [float(dX.reversed_hazard(t)) for t in ts]
    ly = [float(dY.reversed_hazard(t)) for t in ts]
    jtx = [residual_extropy(dX, t, q).value for t in ts]
    jty = [residual_extropy(dY, t, q).value for t in ts]
    jr_fg = [residual_divergence(dX, dY, t, q).value for t in ts]
    jr_gf = [residual_divergence(dY, dX, t, q).value for t in ts]
    jpx = [past_extropy(dX, t, q).value for t in ts]
    jpy = [past_extropy(dY, t, q).value for t in ts]
    jp_fg = [past_divergence(dX, dY, t, q).value for t in ts]
    jp_gf = [past_divergence(dY, dX, t, q).value for t in ts]

    # X <=_hr Y iff h_X >= h_Y pointwise; relation string compares X to Y
    hr_rel = {"<": ">", ">": "<", "=": "=", "crossing": "crossing"}[
        _pointwise_relation(hx, hy, resolution)
    ]
    rh_rel = {"<": ">", ">": "<", "=": "=", "crossing": "crossing"}[
        _pointwise_relation(lx, ly, resolution)
    ]
    rex_rel = _pointwise_relation(jtx, jty, resolution)
    red_rel = _pointwise_relation(jr_fg, jr_gf, resolution)
    pex_rel = _pointwise_relation(jpx, jpy, resolution)
    ped_rel = _pointwise_relation(jp_fg, jp_gf, resolution)

    def equivalent(ext_x, ext_y, div_fg, div_gf):
        # J_t(X) <= J_t(Y)  <=>  J(f|g,t) >= J(g|f,t), pointwise where resolvable
        for ex_gap, dv_gap in zip(
            (x - y for x, y in zip(ext_x, ext_y)), (a - b for a, b in zip(div_fg, div_gf))
        ):
            if abs(ex_gap) <= resolution or abs(dv_gap) <= resolution:
                continue
            if (ex_gap < 0) != (dv_gap > 0):
                return False
        return True

    return DynamicOrderings(
        points=tuple(ts),
        hr=hr_rel,
        rh=rh_rel,
        rex=rex_rel,
        red=red_rel,
        pex=pex_rel,
        ped=ped_rel,
        rex_red_equivalent=equivalent(jtx, jty, jr_fg, jr_gf),
        pex_ped_equivalent=equivalent(jpx, jpy, jp_fg, jp_gf),
    )


def global_decompositions(
    dX: DistributionModel,
    dY: DistributionModel,
    t: float,
    q: QuadratureSpec | None = None,
    tol: float | None = None,
    atom_convention: str = "ac",
) -> DynamicVerdict:
    """Check the three decompositions of static measures into past/residual parts.

    (a) xiJ = F G xiJ_p + S_F S_G xiJ_r
    (b) J(f|g) = S_F S_G J_r(f|g) + F G J_p(f|g) + (S_G - S_F)(S_F J_t(X) - F J(_tX))
    (c) d = d_p F G + d_r S_F S_G
            + (S_F - S_G)(S_G J_t(Y) + F J(_tX) - S_F J_t(X) - G J(_tY))

    The weighted third term of (b) is what the proof's expansion yields; the
    unweighted variant (J_t(X) - J(_tX)) is also evaluated and its residual
    recorded in ``note`` for comparison.
    """
    from .measures import extropy_divergence, extropy_inaccuracy, relative_extropy

    q = _q(q)
    tol = 10.0 * q.abs_tol if tol is None else tol
    f_t = _cdf_at(dX, t, q)
    g_t = _cdf_at(dY, t, q)
    sf_t = _survival_at(dX, t, q)
    sg_t = _survival_at(dY, t, q)

    xi = extropy_inaccuracy(dX, dY, q).value
    xi_r = residual_inaccuracy(dX, dY, t, q).value
    xi_p = past_inaccuracy(dX, dY, t, q, atom_convention).value
    j_fg = extropy_divergence(dX, dY, q).value
    jr_fg = residual_divergence(dX, dY, t, q).value
    jp_fg = past_divergence(dX, dY, t, q, atom_convention).value
    d = relative_extropy(dX, dY, q).value
    d_r = residual_relative(dX, dY, t, q).value
    d_p = past_relative(dX, dY, t, q, atom_convention).value
    jtx = residual_extropy(dX, t, q).value
    jty = residual_extropy(dY, t, q).value
    jpx = past_extropy(dX, t, q, atom_convention).value
    jpy = past_extropy(dY, t, q, atom_convention).value

    rhs_a = f_t * g_t * xi_p + sf_t * sg_t * xi_r
    rhs_b = sf_t * sg_t * jr_fg + f_t * g_t * jp_fg + (sg_t - sf_t) * (sf_t * jtx - f_t * jpx)
    rhs_c = d_p * f_t * g_t + d_r * sf_t * sg_t + (sf_t - sg_t) * (
        sg_t * jty + f_t * jpx - sf_t * jtx - g_t * jpy
    )
    rows = ((t, xi, rhs_a), (t, j_fg, rhs_b), (t, d, rhs_c))
    max_resid = max(abs(lhs - rhs) for _, lhs, rhs in rows)

    rhs_b_unweighted = sf_t * sg_t * jr_fg + f_t * g_t * jp_fg + (sg_t - sf_t) * (jtx - jpx)
    return DynamicVerdict(
        kind="decomposition",
        holds=max_resid <= tol,
        max_abs_residual=max_resid,
        tolerance=tol,
        per_point=rows,
        note=f"unweighted-(b)-residual={abs(j_fg - rhs_b_unweighted):.3e}",
    )
