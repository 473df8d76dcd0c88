"""Homeomorphism types of simply connected non-spin members, and exotic-pair search.

By Freedman, a smooth simply connected closed 4-manifold with odd
intersection form is homeomorphic to a CP2 # b CP2bar, determined by
(b+, b-). Even forms are not classified here.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Iterable

from .obstructions import ObstructionReport, Verdict, Criterion, k_threshold, NEW, obstruction_report
from .surface_algebra import (
    AbstractNoetherLine, CharNumbers, DoublePlane, Hypersurface, QuadricBicover, SpinStatus,
    SurfaceSpec,
)

KE_PROVENANCE = "Aubin/Yau: canonical ample"


class Parity(enum.Enum):
    Odd = "Odd"
    Even = "Even"


class Unsupported(ValueError):
    """Even or undetermined intersection form."""


class Inapplicable(ValueError):
    """Not simply connected."""


@dataclass(frozen=True)
class HomeoType:
    a: int
    b: int
    form_parity: Parity

    def __str__(self) -> str:
        return f"{self.a} CP2 # {self.b} CP2bar"

    def to_dict(self) -> dict[str, Any]:
        return {"a": self.a, "b": self.b, "form_parity": self.form_parity.value, "model": str(self)}


def freedman_type(M: CharNumbers) -> HomeoType:
    if not M.simply_connected:
        raise Inapplicable("homeomorphism classification needs a simply connected manifold")
    # CharNumbers already promotes Unknown to NonSpin when tau != 0 mod 16 (Rokhlin)
    if M.spin_status is not SpinStatus.NonSpin:
        raise Unsupported(f"intersection form parity is {M.spin_status.value}; only odd forms are classified")
    return HomeoType(M.b_plus, M.b_minus, Parity.Odd)


def homeomorphic(M: CharNumbers, N: CharNumbers) -> bool:
    return freedman_type(M) == freedman_type(N)


def on_noether_line(c1sq: int, p_g: int) -> bool:
    return c1sq == 2 * p_g - 4 and p_g >= 3


def noether_partner(c1sq: int, p_g: int) -> SurfaceSpec | None:
    """A minimal surface with ample canonical bundle and the given (c1^2, p_g) on the Noether line.

    Prefers the double cover of the quadric branched in bidegree (6, 2b)
    when c1^2 is divisible by 4; otherwise returns the abstract Noether-line
    surface (a double cover of CP2 # CP2bar).
    """
    if not on_noether_line(c1sq, p_g):
        return None
    if c1sq % 4 == 0 and c1sq // 4 + 2 >= 3:
        return SurfaceSpec(QuadricBicover(3, c1sq // 4 + 2))
    return SurfaceSpec(AbstractNoetherLine(c1sq, p_g))


def ke_witness(spec: SurfaceSpec) -> str | None:
    tag = spec.evaluate().complex_structure
    if tag is not None and tag.canonical_ample:
        return KE_PROVENANCE
    return None


class KStrategy(enum.Enum):
    MinThreshold = "min"
    NoetherMatch = "noether"


@dataclass(frozen=True)
class ExoticPair:
    obstructed: SurfaceSpec
    einstein_witness: SurfaceSpec
    shared_type: HomeoType
    obstruction: ObstructionReport
    ke_existence: str
    strategy: KStrategy

    def to_dict(self) -> dict[str, Any]:
        M = self.obstructed.evaluate()
        return {
            "obstructed": str(self.obstructed),
            "einstein_witness": str(self.einstein_witness),
            "shared_type": self.shared_type.to_dict(),
            "certificates": {
                "obstruction": self.obstruction.to_dict(),
                "homeo": {
                    "chi": M.chi,
                    "tau": M.tau,
                    "tau_mod_16": M.tau % 16,
                    "parity": self.shared_type.form_parity.value,
                    "simply_connected": True,
                },
                "ke_existence": self.ke_existence,
            },
            "strategy": self.strategy.value,
            "note": ("k chosen so the blow-up lands on the Noether line"
                     if self.strategy is KStrategy.NoetherMatch else "k = smallest obstructed value"),
        }


def noether_match_k(X: CharNumbers) -> int:
    """k putting X # k CP2bar on the Noether line c1^2 = 2 p_g - 4."""
    return X.c1sq() - (2 * X.p_g - 4)


def candidate_pair(root: SurfaceSpec, strategy: KStrategy) -> ExoticPair | None:
    X = root.evaluate()
    if not X.is_minimal_general_type or X.p_g is None:
        return None
    k_min = k_threshold(NEW, X.c1sq())
    k = k_min if strategy is KStrategy.MinThreshold else noether_match_k(X)
    if k < k_min or k < 0:
        return None
    spec = SurfaceSpec(root.root, k)
    M = spec.evaluate()
    partner = noether_partner(M.c1sq(), M.p_g)
    if partner is None:
        return None
    report = obstruction_report(spec)
    if report.verdicts[Criterion.New_25_57] is not Verdict.Obstructed:
        return None
    N = partner.evaluate()
    try:
        tM, tN = freedman_type(M), freedman_type(N)
    except Unsupported:
        return None
    if tM != tN:
        return None
    witness = ke_witness(partner)
    if witness is None:
        return None
    return ExoticPair(spec, partner, tM, report, witness, strategy)


def _roots(l_range: Iterable[int], m_range: Iterable[int]) -> list[SurfaceSpec]:
    roots = [SurfaceSpec(Hypersurface(l)) for l in l_range if l >= 5]
    roots += [SurfaceSpec(DoublePlane(m)) for m in m_range if m >= 5]
    return roots


def exotic_pair_search(l_range: Iterable[int] = (), m_range: Iterable[int] = (),
                       strategy: KStrategy = KStrategy.NoetherMatch) -> list[ExoticPair]:
    """Homeomorphic pairs (obstructed blow-up, Kahler-Einstein Noether-line surface).

    Ordered by (family, parameter, k).
    """
    out = []
    for root in _roots(l_range, m_range):
        pair = candidate_pair(root, strategy)
        if pair is not None:
            out.append(pair)
    return out
