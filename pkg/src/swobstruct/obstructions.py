"""Einstein-metric obstructions for blow-ups M = X # k CP2bar.

All thresholds are exact rationals; a coefficient criterion with constant
``a`` obstructs for every integer k >= a * (2chi+3tau)(X), i.e. from
k_min = ceil(a * (2chi+3tau)(X)) on. ``NotObstructed`` never means that an
Einstein metric exists.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .lattice import frac_str
from .surface_algebra import CharNumbers, SurfaceSpec

F = Fraction

NEW = F(25, 57)
LNO = F(2, 3)
ASD_EINSTEIN = F(11, 27)
HYPERBOLIC_VANISHING = F(32, 3)


class Verdict(enum.Enum):
    Obstructed = "Obstructed"
    NotObstructed = "NotObstructed"
    Inapplicable = "Inapplicable"


class SWHypothesis(enum.Enum):
    NonzeroSWAssumed = "NonzeroSWAssumed"
    NotAssumed = "NotAssumed"


class Criterion(enum.Enum):
    HT = "HT"
    LNO_2_3 = "LNO_2_3"
    New_25_57 = "New_25_57"
    ASD_11_27 = "ASD_11_27"


COEFFICIENTS = {
    Criterion.LNO_2_3: LNO,
    Criterion.New_25_57: NEW,
    Criterion.ASD_11_27: ASD_EINSTEIN,
}


@dataclass(frozen=True)
class HTResult:
    verdict: Verdict
    borderline: bool  # 2chi == 3|tau|


def hitchin_thorpe(M: CharNumbers) -> HTResult:
    lhs, rhs = 2 * M.chi, 3 * abs(M.tau)
    v = Verdict.Obstructed if lhs < rhs else Verdict.NotObstructed
    return HTResult(v, lhs == rhs)


def hitchin_thorpe_k_min(X: CharNumbers) -> int:
    """Smallest k >= 0 with 2chi < 3|tau| on X # k CP2bar."""
    if hitchin_thorpe(X).verdict is Verdict.Obstructed:
        return 0
    # with HT holding on X, violation needs tau - k < 0 and then k > 2chi + 3tau
    return X.c1sq() + 1


def k_threshold(coefficient: Fraction, c1sq_X: int) -> int:
    """ceil(coefficient * c1sq_X), computed in integers."""
    t = F(coefficient) * c1sq_X
    return -((-t.numerator) // t.denominator)


@dataclass(frozen=True)
class CoefficientVerdict:
    criterion: Criterion
    verdict: Verdict
    threshold: Fraction | None
    k_min: int | None
    reason: str = ""


def _coefficient_obstruction(criterion: Criterion, X: CharNumbers, k: int,
                             sw: SWHypothesis) -> CoefficientVerdict:
    if k < 0:
        raise ValueError("k must be nonnegative")
    if sw is not SWHypothesis.NonzeroSWAssumed:
        return CoefficientVerdict(criterion, Verdict.Inapplicable, None, None, "no nonzero SW invariant assumed")
    c = X.c1sq()
    if c <= 0:
        return CoefficientVerdict(criterion, Verdict.Inapplicable, None, None, "needs (2chi+3tau)(X) > 0")
    a = COEFFICIENTS[criterion]
    k_min = k_threshold(a, c)
    v = Verdict.Obstructed if k >= k_min else Verdict.NotObstructed
    return CoefficientVerdict(criterion, v, a * c, k_min)


def new_obstruction(X: CharNumbers, k: int,
                    sw: SWHypothesis = SWHypothesis.NonzeroSWAssumed) -> CoefficientVerdict:
    return _coefficient_obstruction(Criterion.New_25_57, X, k, sw)


def lno_obstruction(X: CharNumbers, k: int,
                    sw: SWHypothesis = SWHypothesis.NonzeroSWAssumed) -> CoefficientVerdict:
    return _coefficient_obstruction(Criterion.LNO_2_3, X, k, sw)


def asd_einstein_obstruction(X: CharNumbers, k: int,
                             sw: SWHypothesis = SWHypothesis.NonzeroSWAssumed) -> CoefficientVerdict:
    return _coefficient_obstruction(Criterion.ASD_11_27, X, k, sw)


def auto_sw_hypothesis(X: CharNumbers, assert_sw: bool = False) -> SWHypothesis:
    """Nonzero SW is automatic for minimal general type; otherwise only if asserted."""
    if X.is_minimal_general_type or assert_sw:
        return SWHypothesis.NonzeroSWAssumed
    return SWHypothesis.NotAssumed


def minimal_general_type_obstruction(X: CharNumbers, k: int) -> CoefficientVerdict:
    if not X.is_minimal_general_type:
        raise ValueError("X must be a minimal complex surface of general type")
    return new_obstruction(X, k, SWHypothesis.NonzeroSWAssumed)


def sw_vanishing_criterion(c1p_sq, chi: int) -> bool:
    """On an anti-self-dual (e.g. hyperbolic) manifold: the SW invariant must vanish."""
    return F(c1p_sq) >= HYPERBOLIC_VANISHING * chi


def hyperbolic_vanishing_coefficient() -> Fraction:
    """Coefficient a with "(c1+)^2 >= a chi forces SW = 0", re-derived for hyperbolic metrics.

    Hyperbolic: W = 0, trace-free Ricci = 0, tau = 0, so Gauss-Bonnet gives
    (1/4pi^2) int s^2/24 = 2chi, i.e. (1/32pi^2) int s^2 = 6chi. A nonzero
    invariant would need 6chi > 16/9 (c1+)^2.
    """
    per_chi = F(2) * 4 * 24 / 32  # (1/32pi^2) int s^2 in units of chi
    return per_chi / F(16, 9)


@dataclass
class ObstructionReport:
    manifold: SurfaceSpec
    k: int
    hitchin_thorpe_violated: bool
    hitchin_thorpe_borderline: bool
    lno_threshold: Fraction | None
    new_threshold: Fraction | None
    asd_threshold: Fraction | None
    k_min: dict[Criterion, int | None]
    verdicts: dict[Criterion, Verdict]
    sw_hypothesis: SWHypothesis
    notes: list[str] = field(default_factory=list)

    @property
    def any_inapplicable(self) -> bool:
        return any(v is Verdict.Inapplicable for v in self.verdicts.values())

    def to_dict(self) -> dict[str, Any]:
        def fs(x):
            return None if x is None else frac_str(x)
        M = self.manifold.evaluate()
        return {
            "manifold": str(self.manifold),
            "k": self.k,
            "chi": M.chi,
            "tau": M.tau,
            "c1sq_M": M.c1sq(),
            "hitchin_thorpe_violated": self.hitchin_thorpe_violated,
            "hitchin_thorpe_borderline": self.hitchin_thorpe_borderline,
            "lno_threshold": fs(self.lno_threshold),
            "new_threshold": fs(self.new_threshold),
            "asd_threshold": fs(self.asd_threshold),
            "k_min": {c.value: v for c, v in self.k_min.items()},
            "verdicts": {c.value: v.value for c, v in self.verdicts.items()},
            "sw_hypothesis": self.sw_hypothesis.value,
            "notes": list(self.notes),
        }


def obstruction_report(spec: SurfaceSpec, assert_sw: bool = False) -> ObstructionReport:
    """Evaluate every criterion on ``spec``.

    The coefficient criteria need ``spec`` to be root # k CP2bar; for other
    recipes only Hitchin-Thorpe is evaluated.
    """
    M = spec.evaluate()
    ht = hitchin_thorpe(M)
    notes = []
    if ht.borderline:
        notes.append("Hitchin-Thorpe borderline: 2chi = 3|tau|")
    verdicts = {Criterion.HT: ht.verdict}
    if spec.is_pure_blowup():
        X = spec.minimal_model()
        k = spec.blowups
        sw = auto_sw_hypothesis(X, assert_sw)
        k_min: dict[Criterion, int | None] = {
            Criterion.HT: hitchin_thorpe_k_min(X),
        }
        thresholds = {}
        for crit in COEFFICIENTS:
            cv = _coefficient_obstruction(crit, X, k, sw)
            verdicts[crit] = cv.verdict
            k_min[crit] = cv.k_min
            thresholds[crit] = cv.threshold
            if cv.reason and cv.reason not in notes:
                notes.append(cv.reason)
    else:
        k = spec.blowups
        sw = SWHypothesis.NotAssumed
        k_min = {Criterion.HT: None}
        thresholds = {c: None for c in COEFFICIENTS}
        for crit in COEFFICIENTS:
            verdicts[crit] = Verdict.Inapplicable
            k_min[crit] = None
        notes.append("recipe is not a pure blow-up; coefficient criteria inapplicable")
    return ObstructionReport(
        spec, k, ht.verdict is Verdict.Obstructed, ht.borderline,
        thresholds[Criterion.LNO_2_3], thresholds[Criterion.New_25_57], thresholds[Criterion.ASD_11_27],
        k_min, verdicts, sw, notes,
    )


def threshold_table(X: CharNumbers) -> dict[str, int]:
    c = X.c1sq()
    return {
        "ASD_11_27": k_threshold(ASD_EINSTEIN, c),
        "New_25_57": k_threshold(NEW, c),
        "LNO_2_3": k_threshold(LNO, c),
        "HT": hitchin_thorpe_k_min(X),
    }


def float_verdict(coefficient: Fraction, c1sq_X: int, k: int) -> bool:
    """Same decision in binary64, used only to cross-check the exact path."""
    return k >= math.ceil(float(coefficient) * c1sq_X)

