"""Curvature-integral lower bounds implied by a nonzero Seiberg-Witten invariant.

Coefficients are exact rationals in "pi^2-stripped" units: a bound on
(1/4 pi^2) * integral is reported as a rational multiple of (c1+)^2, and
volumes as rational multiples of pi^2. The only irrational quantities are
sqrt(beta) (a point when beta is a rational square, otherwise a certified
interval) and the constant 2/sqrt(3) in the Weyl estimate, which is kept
symbolic by reporting its square.

Notation: beta = int s^2 / (32 pi^2 (c1+)^2) >= 1.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np
from scipy.optimize import minimize_scalar

from .intervals import Interval, exact_sqrt, sqrt_interval
from .surface_algebra import CharNumbers, KodairaDim, SurfaceSpec

F = Fraction

SHARP = F(4, 9)
ASD = F(16, 9)
KEEN = F(32, 57)
KEEN_TRIVIAL = F(16, 27)
RICCI_C1 = F(8, 5)
RICCI_CHI = F(3, 5)
RICCI_HALF_WEYL = F(16, 33)
VOL_S = F(2, 9)
VOL_R_PER_K = F(2, 15)
VOL_R_B_SCALE = F(31, 33)
VOL_R_B_PER_K = F(2, 9)
LNO_PRIOR = F(2, 3)

BETA_MAX = F(16, 9)  # (4/3)^2: the Weyl estimate is vacuous beyond this
KEEN_ARGMIN = F(24, 19) ** 2
INTERVAL_WIDTH = F(1, 10**12)


class BoundName(enum.Enum):
    WeylL2 = "WeylL2"
    Sharp = "Sharp"
    ASD = "ASD"
    Keen = "Keen"
    Ricci = "Ricci"
    Ricci1633 = "Ricci1633"
    VolS = "VolS"
    VolRLower = "VolRLower"
    VolRLower3133 = "VolRLower3133"
    IEpsilon = "IEpsilon"


@dataclass(frozen=True)
class BoundResult:
    name: BoundName
    value: Fraction
    strict: bool
    units: str
    inputs: dict[str, Any] = field(default_factory=dict)


def _check_beta(beta) -> Fraction:
    beta = F(beta)
    if beta < 1:
        raise ValueError(f"beta must be >= 1, got {beta}")
    return beta


def sqrt_beta(beta) -> Fraction | Interval:
    beta = _check_beta(beta)
    r = exact_sqrt(beta)
    return r if r is not None else sqrt_interval(beta, INTERVAL_WIDTH / 100)


@dataclass(frozen=True)
class WeylBound:
    """(int |W+|^2)^(1/2) >= factor * (2/sqrt 3) * pi |c1+|.

    ``coefficient_sq`` is the bound on (1/4 pi^2) int |W+|^2 in units of
    (c1+)^2, i.e. factor^2 / 3, valid while the factor is nonnegative.
    """

    beta: Fraction
    factor: Fraction | Interval
    strict: bool  # equality only possible at beta = 1

    @property
    def coefficient_sq(self) -> Fraction | Interval:
        f = self.factor
        if isinstance(f, Interval):
            return Interval(max(f.lo, 0), max(f.hi, 0)).sqr() / 3
        return max(f, F(0)) ** 2 / 3

    @property
    def coefficient_squared_full(self) -> Fraction | Interval:
        """Square of factor * 2/sqrt(3), the coefficient of pi |c1+|."""
        f = self.factor
        return (f.sqr() if isinstance(f, Interval) else f * f) * F(4, 3)


def weyl_bound_thm2(beta) -> WeylBound:
    beta = _check_beta(beta)
    s = sqrt_beta(beta)
    return WeylBound(beta, 4 - 3 * s, strict=beta != 1)


def keen_quadratic(beta) -> Fraction | Interval:
    """[beta + 2 (4 - 3 sqrt beta)^2] / 3 on 1 <= beta <= 16/9."""
    beta = _check_beta(beta)
    if beta > BETA_MAX:
        raise ValueError(f"beta={beta} beyond 16/9: the trivial branch applies")
    s = sqrt_beta(beta)
    if isinstance(s, Interval):
        return (beta + 2 * (4 - 3 * s).sqr()) / 3
    return (beta + 2 * (4 - 3 * s) ** 2) / 3


def keen_completed_square(beta) -> Fraction | Interval:
    """[19 (sqrt beta - 24/19)^2 + 32/19] / 3, the same function rewritten."""
    beta = _check_beta(beta)
    s = sqrt_beta(beta)
    if isinstance(s, Interval):
        return (19 * (s - F(24, 19)).sqr() + F(32, 19)) / 3
    return (19 * (s - F(24, 19)) ** 2 + F(32, 19)) / 3


def weighted_weyl_minimum(weight) -> tuple[Fraction, Fraction]:
    """Exact min over 1 <= sqrt(beta) <= 4/3 of [beta + w (4 - 3 sqrt beta)^2] / 3.

    Returns ``(argmin_beta, minimum)``. The stationary point is
    sqrt(beta) = 12w / (1 + 9w) with value 16w / (3 (1 + 9w)); for w < 1/3
    it falls below 1 and the minimum sits at beta = 1 with value (1 + w)/3.
    w = 2 gives 32/57, w = 1/2 gives 16/33, w = 1/3 gives 4/9.
    """
    w = F(weight)
    if w < 0:
        raise ValueError("weight must be nonnegative")
    s = 12 * w / (1 + 9 * w)
    if s < 1:
        return F(1), (1 + w) / 3
    return s * s, 16 * w / (3 * (1 + 9 * w))


def _keen_float(beta: np.ndarray) -> np.ndarray:
    return (beta + 2.0 * (4.0 - 3.0 * np.sqrt(beta)) ** 2) / 3.0


@dataclass(frozen=True)
class KeenCertificate:
    grid_size: int
    grid_argmin: float
    grid_min: float
    argmin: float
    minimum: float
    min_residual: float
    argmin_residual: float
    trivial_branch_floor: Fraction
    trivial_branch_ok: bool
    ok: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "grid_size": self.grid_size,
            "grid_argmin": repr(self.grid_argmin),
            "grid_min": repr(self.grid_min),
            "argmin": repr(self.argmin),
            "minimum": repr(self.minimum),
            "expected_minimum": "32/57",
            "expected_argmin": "576/361",
            "min_residual": f"{self.min_residual:.3e}",
            "argmin_residual": f"{self.argmin_residual:.3e}",
            "trivial_branch_floor": f"{self.trivial_branch_floor.numerator}/{self.trivial_branch_floor.denominator}",
            "trivial_branch_ok": self.trivial_branch_ok,
            "ok": self.ok,
        }


def verify_keen_minimum(grid_size: int = 10**6, chunks: int = 8,
                        min_tol: float = 1e-9, argmin_tol: float = 1e-6) -> KeenCertificate:
    """Brute-force the minimum of the keen quadratic on [1, 16/9].

    Dense grid (reduced chunk by chunk, min of chunk minima), then a bounded
    scalar refinement around the best grid cell. The trivial branch
    beta > 16/9 contributes beta/3 > 16/27, checked exactly against 32/57.
    """
    if grid_size < 1000:
        raise ValueError("grid_size must be >= 1000")
    lo, hi = 1.0, 16.0 / 9.0
    grid = np.linspace(lo, hi, grid_size)
    best_val, best_idx = np.inf, 0
    for part in np.array_split(np.arange(grid_size), chunks):
        vals = _keen_float(grid[part])
        i = int(np.argmin(vals))
        if vals[i] < best_val:
            best_val, best_idx = float(vals[i]), int(part[i])
    step = (hi - lo) / (grid_size - 1)
    a = max(lo, grid[best_idx] - 2 * step)
    b = min(hi, grid[best_idx] + 2 * step)
    res = minimize_scalar(lambda x: float(_keen_float(np.array(x))), bounds=(a, b),
                          method="bounded", options={"xatol": 1e-14})
    minimum, argmin = float(res.fun), float(res.x)
    if best_val < minimum:
        minimum, argmin = best_val, float(grid[best_idx])
    min_res = abs(minimum - 32 / 57)
    arg_res = abs(argmin - (24 / 19) ** 2)
    trivial_ok = KEEN_TRIVIAL > KEEN and BETA_MAX / 3 == KEEN_TRIVIAL
    return KeenCertificate(
        grid_size, float(grid[best_idx]), best_val, argmin, minimum, min_res, arg_res,
        KEEN_TRIVIAL, trivial_ok, min_res < min_tol and arg_res < argmin_tol and trivial_ok,
    )


def keen_samples(n: int = 200) -> list[tuple[float, float]]:
    """(beta, f(beta)) samples on [1, 16/9] for external plotting."""
    betas = np.linspace(1.0, 16.0 / 9.0, n)
    return list(zip(betas.tolist(), _keen_float(betas).tolist()))


def sharp_bound_cor1(c1p_sq) -> Fraction:
    c1p_sq = F(c1p_sq)
    if c1p_sq <= 0:
        raise ValueError("(c1+)^2 must be positive")
    return SHARP * c1p_sq


def tangent_line_holds(h) -> bool:
    """x >= 1 - h implies x^2 >= 1 - 2h; checked at the extreme x = 1 - h (h <= 1)."""
    h = F(h)
    return (1 - h) ** 2 >= 1 - 2 * h


@dataclass(frozen=True)
class PiMonomial:
    """coeff * pi**power with exact rational coefficient."""

    coeff: Fraction
    power: int = 0

    def __mul__(self, other):
        if not isinstance(other, PiMonomial):
            other = PiMonomial(F(other))
        return PiMonomial(self.coeff * other.coeff, self.power + other.power)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, PiMonomial):
            other = PiMonomial(F(other))
        return PiMonomial(self.coeff / other.coeff, self.power - other.power)

    def __add__(self, other):
        if not isinstance(other, PiMonomial):
            other = PiMonomial(F(other))
        if other.power != self.power and other.coeff and self.coeff:
            raise ValueError("cannot add different powers of pi")
        return PiMonomial(self.coeff + other.coeff, self.power if self.coeff else other.power)

    __radd__ = __add__

    def rational(self) -> Fraction:
        if self.power != 0 and self.coeff != 0:
            raise ValueError(f"pi^{self.power} did not cancel")
        return self.coeff


PI = PiMonomial(F(1), 1)


def kahler_saturation(c1_dot_omega, omega_sq) -> tuple[Fraction, Fraction]:
    """Both sides of the sharp estimate for a constant-scalar-curvature Kahler metric.

    Uses int s = 4 pi c1.[w], Vol = [w]^2 / 2 and |W+|^2 = s^2/24; the
    projection of c1 onto span(w) has square (c1.w)^2 / w^2.
    """
    c1w, w2 = F(c1_dot_omega), F(omega_sq)
    if not c1w < 0 < w2:
        raise ValueError("need c1.[w] < 0 and [w]^2 > 0")
    vol = PiMonomial(w2 / 2)
    s = 4 * PI * c1w / vol
    s_sq = s * s
    w_plus_sq = s_sq / 24
    integrand = w_plus_sq / 3 + s_sq / 24
    lhs = (integrand * vol / (4 * PI * PI)).rational()
    rhs = SHARP * c1w * c1w / w2
    return lhs, rhs


def ricci_bound_lemma5(c1p_sq, two_chi_three_tau) -> Fraction:
    """Lower bound for (1/8 pi^2) int |r|^2."""
    c1p_sq = F(c1p_sq)
    if c1p_sq <= 0:
        raise ValueError("bound needs c1+ != 0")
    return RICCI_C1 * c1p_sq - RICCI_CHI * F(two_chi_three_tau)


def ricci_convex_combination(c1p_sq, two_chi_three_tau) -> Fraction:
    """Re-derive the Ricci bound: 9/10 of the sharp estimate plus 1/10 of Gauss-Bonnet.

    That bounds (1/4 pi^2) int (s^2/24 + |W+|^2/2); multiplying by 4 and
    subtracting 2chi+3tau gives (1/8 pi^2) int |r|^2.
    """
    x, y = F(c1p_sq), F(two_chi_three_tau)
    half_weyl = F(9, 10) * SHARP * x + F(1, 10) * y
    return 4 * half_weyl - y


def ricci_bound_1633(c1sq_X, k) -> Fraction:
    """(1/8 pi^2) int |r|^2 > 31/33 c1^2(X) + k on X # k CP2bar."""
    m = weighted_weyl_minimum(F(1, 2))[1]
    assert m == RICCI_HALF_WEYL
    return 4 * m * F(c1sq_X) - (F(c1sq_X) - k)


@dataclass(frozen=True)
class MinVolumes:
    """Minimal-volume data in units of pi^2."""

    vol_s: Fraction
    vol_r_lower_a: Fraction
    vol_r_lower_b: Fraction
    crossover_k: Fraction

    @property
    def dominant(self) -> str:
        if self.vol_r_lower_a > self.vol_r_lower_b:
            return "A"
        if self.vol_r_lower_b > self.vol_r_lower_a:
            return "B"
        return "tie"

    @property
    def best_lower(self) -> Fraction:
        return max(self.vol_r_lower_a, self.vol_r_lower_b)


def volume_crossover(c1sq_X) -> Fraction:
    """k at which vol_s + 2/15 k equals 31/33 vol_s + 2/9 k."""
    vol_s = VOL_S * F(c1sq_X)
    return (1 - VOL_R_B_SCALE) * vol_s / (VOL_R_B_PER_K - VOL_R_PER_K)


def min_volumes(X: CharNumbers, k: int) -> MinVolumes:
    if not X.is_minimal_general_type:
        raise ValueError("minimal volumes are only computed for minimal surfaces of general type")
    if k < 0:
        raise ValueError("k must be nonnegative")
    vol_s = VOL_S * X.c1sq()
    return MinVolumes(
        vol_s,
        vol_s + VOL_R_PER_K * k,
        VOL_R_B_SCALE * vol_s + VOL_R_B_PER_K * k,
        volume_crossover(X.c1sq()),
    )


class Unclassified(ValueError):
    """The surface recipe does not determine a Kodaira dimension."""


@dataclass(frozen=True)
class IEpsilon:
    """Value or bracket of inf_g (1/4 pi^2) int (s^2/24 + eps |W+|^2).

    ``status`` is one of ``zero``, ``exact``, ``positive`` (only a lower
    bound known) or ``bracketed`` (lower and upper bound known).
    """

    eps: Fraction
    status: str
    lower: Fraction
    upper: Fraction | None
    reason: str

    @property
    def value(self) -> Fraction | None:
        return self.lower if self.status in ("zero", "exact") else None


YAMABE_NOTE = "96 pi^2 I_0(M) = min(Y(M), 0)^2 (Yamabe invariant not computed)"


def i_epsilon(M: SurfaceSpec, eps) -> IEpsilon:
    eps = F(eps)
    if eps < 0:
        raise ValueError("eps must be >= 0")
    if not M.is_pure_blowup():
        raise Unclassified(f"{M}: connected sums carry no complex structure")
    X = M.minimal_model()
    tag = X.complex_structure
    if tag is None:
        raise Unclassified(f"{M}: root has no complex structure")
    note = f"; {YAMABE_NOTE}" if eps == 0 else ""
    root = M.root.name
    if tag.kodaira_dim in (KodairaDim.Zero, KodairaDim.One):
        return IEpsilon(eps, "zero", F(0), F(0), "collapses with s, |W+| bounded" + note)
    if tag.kodaira_dim is KodairaDim.Two:
        if not tag.minimal:
            raise Unclassified(f"{M}: minimal model of the root is not known")
        c1sq = F(X.c1sq())
        if eps <= F(1, 3):
            val = (1 + eps) / 3 * c1sq
            return IEpsilon(eps, "exact", val, val, "general type, eps in [0, 1/3]" + note)
        return IEpsilon(eps, "bracketed", F(4, 9) * c1sq, (1 + eps) / 3 * c1sq,
                        "general type, eps > 1/3: monotone lower bound at 1/3, gluing upper bound")
    # Kodaira dimension -infinity
    if root == "ruled" and M.root.params[0] >= 1:
        return IEpsilon(eps, "zero", F(0), F(0),
                        "ruled over genus >= 1: scalar-flat ASD metrics or collapse" + note)
    if root == "rational_elliptic":
        return IEpsilon(eps, "zero", F(0), F(0), "rational elliptic surface blow-up collapses" + note)
    c1sq_M = M.evaluate().c1sq()
    if c1sq_M <= 0:
        # rational with c1^2 <= 0: CP2 # j CP2bar with j >= 9, a blow-up of the rational elliptic surface
        return IEpsilon(eps, "zero", F(0), F(0), "rational, blow-up of the rational elliptic surface" + note)
    if eps == 0:
        return IEpsilon(eps, "zero", F(0), F(0), "del Pezzo type, positive Yamabe invariant" + note)
    return IEpsilon(eps, "positive", min(F(1), eps / 2) * c1sq_M, None,
                    "deformation of a del Pezzo surface: lower bound from Gauss-Bonnet")


def gauss_bonnet_sides(W_plus_sq_int, W_minus_sq_int, s_sq_int, ric0_sq_int) -> tuple[Fraction, Fraction]:
    """(2chi+3tau, 2chi-3tau) from curvature integrals given in units of pi^2."""
    wp, wm, s2, r2 = (F(x) for x in (W_plus_sq_int, W_minus_sq_int, s_sq_int, ric0_sq_int))
    if min(wp, wm, s2, r2) < 0:
        raise ValueError("curvature integrals must be nonnegative")
    return (2 * wp + s2 / 24 - r2 / 2) / 4, (2 * wm + s2 / 24 - r2 / 2) / 4


def gauss_bonnet_check(terms: dict, chi: int, tau: int) -> tuple[bool, bool]:
    plus, minus = gauss_bonnet_sides(terms["W_plus_sq_int"], terms["W_minus_sq_int"],
                                     terms["s_sq_int"], terms["ric0_sq_int"])
    return plus == 2 * chi + 3 * tau, minus == 2 * chi - 3 * tau


def solve_chi_tau(terms: dict) -> tuple[Fraction, Fraction]:
    plus, minus = gauss_bonnet_sides(terms["W_plus_sq_int"], terms["W_minus_sq_int"],
                                     terms["s_sq_int"], terms["ric0_sq_int"])
    return (plus + minus) / 4, (plus - minus) / 6


def bounds_table(M: SurfaceSpec, beta=1, eps=F(1, 3)) -> list[BoundResult]:
    """All bounds for M = X # k CP2bar with X minimal of general type.

    (c1+)^2 is replaced by its guaranteed lower value c1^2(X) from the
    spin^c construction on the blow-up.
    """
    X = M.minimal_model()
    if not (M.is_pure_blowup() and X.is_minimal_general_type):
        raise ValueError("bounds table needs a blow-up of a minimal surface of general type")
    k = M.blowups
    c1sq_X = X.c1sq()
    c1sq_M = c1sq_X - k
    weyl = weyl_bound_thm2(beta).coefficient_sq
    if isinstance(weyl, Interval):
        weyl = weyl.lo  # certified lower endpoint
    mv = min_volumes(X, k)
    ie = i_epsilon(M, eps)
    inputs = {"c1p_sq_lower": c1sq_X, "k": k, "c1sq_M": c1sq_M}
    return [
        BoundResult(BoundName.WeylL2, weyl, F(beta) != 1, "(c1+)^2 [(1/4pi^2) int |W+|^2]",
                    {"beta": str(F(beta))}),
        BoundResult(BoundName.Sharp, SHARP, False, "(c1+)^2", inputs),
        BoundResult(BoundName.ASD, ASD, True, "(c1+)^2 [(1/32pi^2) int s^2]", inputs),
        BoundResult(BoundName.Keen, KEEN, True, "(c1+)^2", inputs),
        BoundResult(BoundName.Ricci, ricci_bound_lemma5(c1sq_X, c1sq_M), False,
                    "1 [(1/8pi^2) int |r|^2]", inputs),
        BoundResult(BoundName.Ricci1633, ricci_bound_1633(c1sq_X, k), True,
                    "1 [(1/8pi^2) int |r|^2]", inputs),
        BoundResult(BoundName.VolS, mv.vol_s, False, "pi^2", inputs),
        BoundResult(BoundName.VolRLower, mv.vol_r_lower_a, False, "pi^2", inputs),
        BoundResult(BoundName.VolRLower3133, mv.vol_r_lower_b, False, "pi^2", inputs),
        BoundResult(BoundName.IEpsilon, ie.lower, False, "1",
                    {**inputs, "eps": str(F(eps)), "status": ie.status}),
    ]
