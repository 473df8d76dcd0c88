"""Characteristic numbers of complex surfaces and their cut-and-paste operations.

Everything here is integer arithmetic. A :class:`SurfaceSpec` is a recipe
(root family, number of blow-ups, further connected summands) that evaluates
deterministically to :class:`CharNumbers`.

Canonical text form::

    hypersurface(9) + 117*CP2bar
    doubleplane(27) + 506*CP2bar
    quadric_bicover(3,29)
    113*CP2 + 461*CP2bar
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass, field
from math import comb
from typing import Any


class SpecError(ValueError):
    """Raised for malformed surface recipes or out-of-range family parameters."""


class KodairaDim(enum.Enum):
    MinusInf = "-inf"
    Zero = "0"
    One = "1"
    Two = "2"


class SpinStatus(enum.Enum):
    Spin = "Spin"
    NonSpin = "NonSpin"
    Unknown = "Unknown"


@dataclass(frozen=True)
class ComplexTag:
    kodaira_dim: KodairaDim
    minimal: bool
    canonical_ample: bool = False

    def __post_init__(self):
        if self.canonical_ample and not (self.general_type and self.minimal):
            raise ValueError("canonical_ample requires a minimal surface of general type")

    @property
    def general_type(self) -> bool:
        return self.kodaira_dim is KodairaDim.Two


@dataclass(frozen=True)
class CharNumbers:
    """Integer invariants of a closed oriented 4-manifold.

    ``p_g`` is only carried for complex surfaces with irregularity zero, and
    ``complex_structure`` only while the manifold is known to be a complex
    surface (a family member or a blow-up of one).
    """

    chi: int
    tau: int
    b_plus: int
    b_minus: int
    p_g: int | None = None
    simply_connected: bool = True
    complex_structure: ComplexTag | None = None
    spin_status: SpinStatus = SpinStatus.Unknown

    def __post_init__(self):
        if self.b_plus < 0 or self.b_minus < 0:
            raise ValueError("Betti numbers must be nonnegative")
        if self.tau != self.b_plus - self.b_minus:
            raise ValueError(f"tau={self.tau} != b+ - b- = {self.b_plus - self.b_minus}")
        if self.simply_connected:
            if self.chi != 2 + self.b_plus + self.b_minus:
                raise ValueError("simply connected: chi must equal 2 + b+ + b-")
            if self.p_g is not None:
                if self.b_plus != 2 * self.p_g + 1:
                    raise ValueError("simply connected complex surface: b+ must equal 2 p_g + 1")
                if self.c1sq() - 8 * (1 + self.p_g) != self.tau:
                    raise ValueError("Noether formula violated: c1^2 - 8(1+p_g) != tau")
            # Rokhlin: a smooth spin 4-manifold has tau = 0 mod 16.
            if self.tau % 16 != 0:
                if self.spin_status is SpinStatus.Spin:
                    raise ValueError("spin manifold with tau not divisible by 16")
                if self.spin_status is SpinStatus.Unknown:
                    object.__setattr__(self, "spin_status", SpinStatus.NonSpin)

    def c1sq(self) -> int:
        """The combination 2*chi + 3*tau (equal to c1^2 for complex surfaces)."""
        return 2 * self.chi + 3 * self.tau

    def topology(self) -> tuple:
        """Data that survives forgetting the complex structure."""
        return (self.chi, self.tau, self.b_plus, self.b_minus,
                self.simply_connected, self.spin_status)

    @property
    def is_minimal_general_type(self) -> bool:
        tag = self.complex_structure
        return tag is not None and tag.general_type and tag.minimal

    def to_dict(self) -> dict[str, Any]:
        tag = self.complex_structure
        return {
            "chi": self.chi,
            "tau": self.tau,
            "b_plus": self.b_plus,
            "b_minus": self.b_minus,
            "p_g": self.p_g,
            "c1sq": self.c1sq(),
            "simply_connected": self.simply_connected,
            "complex_structure": None if tag is None else {
                "kodaira_dim": tag.kodaira_dim.value,
                "minimal": tag.minimal,
                "canonical_ample": tag.canonical_ample,
                "general_type": tag.general_type,
            },
            "spin_status": self.spin_status.value,
        }

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> CharNumbers:
        tag = d.get("complex_structure")
        out = cls(
            chi=d["chi"], tau=d["tau"], b_plus=d["b_plus"], b_minus=d["b_minus"],
            p_g=d.get("p_g"), simply_connected=d["simply_connected"],
            complex_structure=None if tag is None else ComplexTag(
                KodairaDim(tag["kodaira_dim"]), tag["minimal"], tag["canonical_ample"]),
            spin_status=SpinStatus(d["spin_status"]),
        )
        if "c1sq" in d and d["c1sq"] != out.c1sq():
            raise ValueError("inconsistent c1sq field")
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> CharNumbers:
        return cls.from_dict(json.loads(text))


def _simply_connected_complex(c1sq: int, p_g: int, tag: ComplexTag,
                              spin: SpinStatus = SpinStatus.Unknown) -> CharNumbers:
    # q = 0: tau = c1^2 - 8(1 + p_g), chi = (c1^2 - 3 tau) / 2
    tau = c1sq - 8 * (1 + p_g)
    chi, rem = divmod(c1sq - 3 * tau, 2)
    assert rem == 0
    b_plus = 2 * p_g + 1
    return CharNumbers(chi, tau, b_plus, b_plus - tau, p_g, True, tag, spin)


_CANONICAL_AMPLE = ComplexTag(KodairaDim.Two, minimal=True, canonical_ample=True)

S4 = CharNumbers(2, 0, 0, 0, None, True, None, SpinStatus.Spin)
CP2 = CharNumbers(3, 1, 1, 0, 0, True, ComplexTag(KodairaDim.MinusInf, True), SpinStatus.NonSpin)
CP2BAR = CharNumbers(3, -1, 0, 1, None, True, None, SpinStatus.NonSpin)


def _degree_hypersurface(l: int) -> CharNumbers:
    if l < 1:
        raise SpecError(f"hypersurface degree must be >= 1, got {l}")
    if l <= 3:
        tag = ComplexTag(KodairaDim.MinusInf, minimal=(l != 3))
    elif l == 4:
        tag = ComplexTag(KodairaDim.Zero, minimal=True)
    else:
        tag = _CANONICAL_AMPLE
    # c1 = (4 - l) h with h|X primitive and h^2 = l: even degree gives an even class
    spin = SpinStatus.Spin if l % 2 == 0 else SpinStatus.NonSpin
    return _simply_connected_complex(l * (l - 4) ** 2, comb(l - 1, 3), tag, spin)


def hypersurface_invariants(l: int) -> CharNumbers:
    """Smooth degree-``l`` surface in CP3, restricted to the general-type range l >= 5."""
    if l < 5:
        raise SpecError(f"hypersurface of degree {l} is not of general type (need l >= 5)")
    return _degree_hypersurface(l)


def double_plane_invariants(m: int) -> CharNumbers:
    """Double cover of CP2 branched along a smooth curve of degree 2m, m >= 5."""
    if m < 5:
        raise SpecError(f"double plane needs m >= 5, got {m}")
    return _double_plane(m)


def _double_plane(m: int) -> CharNumbers:
    if m < 1:
        raise SpecError(f"double plane needs m >= 1, got {m}")
    if m <= 2:
        tag = ComplexTag(KodairaDim.MinusInf, minimal=(m == 1))
    elif m == 3:
        tag = ComplexTag(KodairaDim.Zero, minimal=True)
    else:
        tag = _CANONICAL_AMPLE
    # K = (m-3) pi^*h; odd m makes K divisible by 2
    spin = SpinStatus.Spin if m % 2 == 1 else SpinStatus.Unknown
    return _simply_connected_complex(2 * (m - 3) ** 2, (m - 1) * (m - 2) // 2, tag, spin)


def quadric_bicover_invariants(a: int, b: int) -> CharNumbers:
    """Double cover of CP1 x CP1 branched along a curve of bidegree (2a, 2b)."""
    if a < 3 or b < 3:
        raise SpecError(f"quadric bicover needs a, b >= 3 for ample canonical bundle, got ({a},{b})")
    return _quadric_bicover(a, b)


def _quadric_bicover(a: int, b: int) -> CharNumbers:
    if a < 1 or b < 1:
        raise SpecError(f"quadric bicover needs a, b >= 1, got ({a},{b})")
    lo, hi = sorted((a, b))
    if lo >= 3:
        tag = _CANONICAL_AMPLE
    elif lo == 2:
        tag = ComplexTag(KodairaDim.Zero if hi == 2 else KodairaDim.One, minimal=True)
    else:
        tag = ComplexTag(KodairaDim.MinusInf, minimal=False)
    # K = pi^* O(a-2, b-2)
    spin = SpinStatus.Spin if a % 2 == 0 and b % 2 == 0 else SpinStatus.Unknown
    return _simply_connected_complex(4 * (a - 2) * (b - 2), (a - 1) * (b - 1), tag, spin)


def noether_line_invariants(c1sq: int, p_g: int) -> CharNumbers:
    """Numbers of a minimal surface on the Noether line, without a concrete model."""
    if c1sq != 2 * p_g - 4 or p_g < 3:
        raise SpecError(f"({c1sq}, {p_g}) is not on the Noether line c1^2 = 2 p_g - 4 with p_g >= 3")
    return _simply_connected_complex(c1sq, p_g, _CANONICAL_AMPLE)


def rational_elliptic() -> CharNumbers:
    # CP2 # 9 CP2bar, elliptic fibration with no multiple fibres
    return CharNumbers(12, -8, 1, 9, 0, True, ComplexTag(KodairaDim.MinusInf, False), SpinStatus.NonSpin)


def ruled_surface(genus: int) -> CharNumbers:
    """Geometrically ruled surface over a curve of the given genus."""
    if genus < 0:
        raise SpecError("genus must be >= 0")
    return CharNumbers(
        chi=4 - 4 * genus, tau=0, b_plus=1, b_minus=1,
        p_g=0 if genus == 0 else None,
        simply_connected=genus == 0,
        complex_structure=ComplexTag(KodairaDim.MinusInf, minimal=True),
        spin_status=SpinStatus.Unknown,
    )


def blow_up(X: CharNumbers, k: int) -> CharNumbers:
    """X # k CP2bar. Keeps p_g and the complex-surface provenance (as non-minimal)."""
    if k < 0:
        raise ValueError("number of blow-ups must be nonnegative")
    if k == 0:
        return X
    tag = X.complex_structure
    if tag is not None:
        tag = ComplexTag(tag.kodaira_dim, minimal=False, canonical_ample=False)
    return CharNumbers(
        X.chi + k, X.tau - k, X.b_plus, X.b_minus + k, X.p_g,
        X.simply_connected, tag, SpinStatus.NonSpin,
    )


def _sum_spin(a: SpinStatus, b: SpinStatus) -> SpinStatus:
    if SpinStatus.NonSpin in (a, b):
        return SpinStatus.NonSpin
    if a is b is SpinStatus.Spin:
        return SpinStatus.Spin
    return SpinStatus.Unknown


def connected_sum(A: CharNumbers, B: CharNumbers) -> CharNumbers:
    """A # B. Drops p_g and complex tags; S4 is a strict identity."""
    if B == S4:
        return A
    if A == S4:
        return B
    return CharNumbers(
        A.chi + B.chi - 2, A.tau + B.tau, A.b_plus + B.b_plus, A.b_minus + B.b_minus,
        None, A.simply_connected and B.simply_connected, None,
        _sum_spin(A.spin_status, B.spin_status),
    )


def c1sq(X: CharNumbers) -> int:
    return X.c1sq()


# --- recipes -----------------------------------------------------------------

# family name -> (arity, evaluator)
FAMILIES: dict[str, tuple[int, Any]] = {
    "hypersurface": (1, _degree_hypersurface),
    "doubleplane": (1, _double_plane),
    "quadric_bicover": (2, _quadric_bicover),
    "noether_line": (2, noether_line_invariants),
    "ruled": (1, ruled_surface),
    "rational_elliptic": (0, rational_elliptic),
    "CP2": (0, lambda: CP2),
    "CP2bar": (0, lambda: CP2BAR),
    "S4": (0, lambda: S4),
}


@dataclass(frozen=True)
class Family:
    """A root constructor such as ``hypersurface(9)``."""

    name: str
    params: tuple[int, ...] = ()

    def __post_init__(self):
        if self.name not in FAMILIES:
            raise SpecError(f"unknown family {self.name!r}")
        arity = FAMILIES[self.name][0]
        if len(self.params) != arity:
            raise SpecError(f"{self.name} takes {arity} parameter(s), got {len(self.params)}")

    def evaluate(self) -> CharNumbers:
        return FAMILIES[self.name][1](*self.params)

    def __str__(self) -> str:
        if FAMILIES[self.name][0] == 0:
            return self.name
        return f"{self.name}({','.join(map(str, self.params))})"


def Hypersurface(l: int) -> Family:
    return Family("hypersurface", (l,))


def DoublePlane(m: int) -> Family:
    return Family("doubleplane", (m,))


def QuadricBicover(a: int, b: int) -> Family:
    return Family("quadric_bicover", (a, b))


def AbstractNoetherLine(c1sq: int, p_g: int) -> Family:
    return Family("noether_line", (c1sq, p_g))


def RuledSurface(genus: int) -> Family:
    return Family("ruled", (genus,))


RationalElliptic = Family("rational_elliptic")
CP2_ROOT = Family("CP2")
CP2BAR_ROOT = Family("CP2bar")
S4_ROOT = Family("S4")


@dataclass(frozen=True)
class SurfaceSpec:
    root: Family
    blowups: int = 0
    summands: tuple[SurfaceSpec, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.blowups < 0:
            raise SpecError("blowups must be nonnegative")
        object.__setattr__(self, "summands", tuple(self.summands))

    def evaluate(self) -> CharNumbers:
        M = blow_up(self.root.evaluate(), self.blowups)
        for s in self.summands:
            M = connected_sum(M, s.evaluate())
        return M

    def minimal_model(self) -> CharNumbers:
        return self.root.evaluate()

    def is_pure_blowup(self) -> bool:
        return not self.summands

    def __str__(self) -> str:
        return format_spec(self)

    @classmethod
    def parse(cls, text: str) -> SurfaceSpec:
        return parse_spec(text)


def _term(spec: SurfaceSpec) -> str:
    if spec.blowups == 0 and not spec.summands:
        return str(spec.root)
    return f"({format_spec(spec)})"


def _run(n: int, term: str) -> str:
    return term if n == 1 else f"{n}*{term}"


def format_spec(spec: SurfaceSpec) -> str:
    """Canonical text: root run, summand runs, then the CP2bar blow-up run."""
    parts = []
    root = str(spec.root)
    rest = list(spec.summands)
    if spec.root == CP2BAR_ROOT and not rest:
        return _run(spec.blowups + 1, root)
    n = 1
    while rest and rest[0] == SurfaceSpec(spec.root):
        rest.pop(0)
        n += 1
    parts.append(_run(n, root))
    i = 0
    while i < len(rest):
        j = i
        while j < len(rest) and rest[j] == rest[i]:
            j += 1
        parts.append(_run(j - i, _term(rest[i])))
        i = j
    if spec.blowups:
        parts.append(_run(spec.blowups, "CP2bar"))
    return " + ".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str]] = []
        for m in _TOKEN.finditer(text):
            num, name, sym = m.groups()
            if num is not None:
                self.toks.append(("int", num))
            elif name is not None:
                self.toks.append(("name", name))
            elif sym is not None and not sym.isspace():
                self.toks.append(("sym", sym))
        self.pos = 0

    def peek(self) -> tuple[str, str] | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def take(self, kind: str, value: str | None = None) -> str:
        tok = self.peek()
        if tok is None or tok[0] != kind or (value is not None and tok[1] != value):
            raise SpecError(f"parse error in {self.text!r} at token {self.pos}: expected {value or kind}, got {tok}")
        self.pos += 1
        return tok[1]

    def expr(self) -> SurfaceSpec:
        terms = [self.term()]
        while self.peek() == ("sym", "+"):
            self.take("sym", "+")
            terms.append(self.term())
        n, first = terms[0]
        if isinstance(first, SurfaceSpec):
            if n != 1:
                raise SpecError("a parenthesised root cannot carry a multiplicity")
            root, blowups, summands = first.root, first.blowups, list(first.summands)
        else:
            root, blowups, summands = first, 0, []
            extra = [SurfaceSpec(first)] * (n - 1)
            if first == CP2BAR_ROOT:
                blowups += n - 1
            else:
                summands += extra
        for n, t in terms[1:]:
            if t == CP2BAR_ROOT:
                blowups += n
            else:
                summands += [t if isinstance(t, SurfaceSpec) else SurfaceSpec(t)] * n
        return SurfaceSpec(root, blowups, tuple(summands))

    def term(self) -> tuple[int, Family | SurfaceSpec]:
        n = 1
        if self.peek() and self.peek()[0] == "int":
            n = int(self.take("int"))
            self.take("sym", "*")
            if n < 1:
                raise SpecError("multiplicity must be >= 1")
        if self.peek() == ("sym", "("):
            self.take("sym", "(")
            inner = self.expr()
            self.take("sym", ")")
            return n, inner
        name = self.take("name")
        params: list[int] = []
        if self.peek() == ("sym", "("):
            self.take("sym", "(")
            params.append(self._signed_int())
            while self.peek() == ("sym", ","):
                self.take("sym", ",")
                params.append(self._signed_int())
            self.take("sym", ")")
        return n, Family(name, tuple(params))

    def _signed_int(self) -> int:
        if self.peek() == ("sym", "-"):
            self.take("sym", "-")
            return -int(self.take("int"))
        return int(self.take("int"))


def parse_spec(text: str) -> SurfaceSpec:
    p = _Parser(text)
    if p.peek() is None:
        raise SpecError("empty surface spec")
    spec = p.expr()
    if p.peek() is not None:
        raise SpecError(f"trailing input in {text!r}: {p.toks[p.pos:]}")
    return spec
