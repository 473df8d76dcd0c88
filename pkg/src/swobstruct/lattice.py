"""Intersection lattices, polarizations and self-dual projections.

Classes are vectors of :class:`fractions.Fraction` in a fixed basis. For
M = X # k CP2bar the basis is that of X followed by the exceptional
generators E_1..E_k, each with E_j.E_j = -1.
"""

from __future__ import annotations

import functools
import json
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .surface_algebra import CharNumbers

Vector = tuple[Fraction, ...]


class LatticeError(ValueError):
    pass


class MalformedClass(LatticeError):
    """A class whose square gives a non-integral virtual dimension."""


def vec(xs: Iterable) -> Vector:
    return tuple(Fraction(x) for x in xs)


def _symmetric_diagonalize(gram: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    """Diagonal entries of a congruent diagonal form (exact, over Q)."""
    A = [list(map(Fraction, row)) for row in gram]
    n = len(A)
    diag = []
    for i in range(n):
        if A[i][i] == 0:
            j = next((j for j in range(i + 1, n) if A[j][j] != 0), None)
            if j is not None:
                A[i], A[j] = A[j], A[i]
                for row in A:
                    row[i], row[j] = row[j], row[i]
            else:
                j = next((j for j in range(i + 1, n) if A[i][j] != 0), None)
                if j is None:
                    diag.append(Fraction(0))
                    continue
                # e_i <- e_i + e_j makes the pivot 2 A[i][j] != 0
                for c in range(n):
                    A[i][c] += A[j][c]
                for r in range(n):
                    A[r][i] += A[r][j]
        p = A[i][i]
        diag.append(p)
        for r in range(i + 1, n):
            f = A[r][i] / p
            if f:
                for c in range(n):
                    A[r][c] -= f * A[i][c]
                for c in range(n):
                    A[c][r] -= f * A[c][i]
    return diag


def solve(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction]:
    """Solve A x = b exactly by Gauss-Jordan elimination; A must be nonsingular."""
    n = len(A)
    M = [list(map(Fraction, row)) + [Fraction(bi)] for row, bi in zip(A, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            raise LatticeError("singular system")
        M[c], M[piv] = M[piv], M[c]
        p = M[c][c]
        M[c] = [x / p for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [M[r][n] for r in range(n)]


@dataclass(frozen=True)
class IntersectionLattice:
    gram: tuple[tuple[Fraction, ...], ...]
    signature: tuple[int, int]

    @classmethod
    def from_gram(cls, gram: Sequence[Sequence]) -> IntersectionLattice:
        g = tuple(vec(row) for row in gram)
        n = len(g)
        if n == 0 or any(len(row) != n for row in g):
            raise LatticeError("gram matrix must be square and nonempty")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise LatticeError("gram matrix must be symmetric")
        d = _symmetric_diagonalize(g)
        if any(x == 0 for x in d):
            raise LatticeError("intersection form is degenerate")
        return cls(g, (sum(x > 0 for x in d), sum(x < 0 for x in d)))

    @classmethod
    def diagonal(cls, b_plus: int, b_minus: int) -> IntersectionLattice:
        """<1>^b+ (+) <-1>^b-."""
        n = b_plus + b_minus
        entries = [1] * b_plus + [-1] * b_minus
        return cls.from_gram([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def for_manifold(cls, M: CharNumbers) -> IntersectionLattice:
        return cls.diagonal(M.b_plus, M.b_minus)

    def blow_up(self, k: int) -> IntersectionLattice:
        """Block sum with k copies of <-1>."""
        n = self.rank + k
        g = [[Fraction(0)] * n for _ in range(n)]
        for i in range(self.rank):
            g[i][:self.rank] = self.gram[i]
        for j in range(self.rank, n):
            g[j][j] = Fraction(-1)
        return IntersectionLattice(tuple(map(tuple, g)), (self.signature[0], self.signature[1] + k))

    @property
    def rank(self) -> int:
        return len(self.gram)

    @functools.cached_property
    def is_diagonal(self) -> bool:
        return all(self.gram[i][j] == 0 for i in range(self.rank) for j in range(self.rank) if i != j)

    def determinant(self) -> Fraction:
        d = Fraction(1)
        for x in _symmetric_diagonalize(self.gram):
            d *= x
        return d

    def pairing(self, u: Sequence, v: Sequence) -> Fraction:
        if len(u) != self.rank or len(v) != self.rank:
            raise LatticeError(f"class length must equal lattice rank {self.rank}")
        if self.is_diagonal:
            return sum((self.gram[i][i] * ui * vi for i, (ui, vi) in enumerate(zip(u, v)) if ui and vi),
                       Fraction(0))
        total = Fraction(0)
        for i, ui in enumerate(u):
            if ui:
                row = self.gram[i]
                total += ui * sum((row[j] * vj for j, vj in enumerate(v) if vj), Fraction(0))
        return total

    def square(self, u: Sequence) -> Fraction:
        return self.pairing(u, u)

    def unit(self, i: int) -> Vector:
        return tuple(Fraction(int(j == i)) for j in range(self.rank))

    def is_characteristic(self, c: Sequence) -> bool | None:
        """Parity test c.x = x.x mod 2; only decided for diagonal lattices."""
        if not self.is_diagonal:
            warnings.warn("characteristic-class test only implemented for diagonal lattices", stacklevel=2)
            return None
        if any(Fraction(x).denominator != 1 for x in c):
            return False
        return all((int(x) - int(self.gram[i][i])) % 2 == 0 for i, x in enumerate(c))

    def to_dict(self) -> dict:
        return {"gram": [[frac_str(x) for x in row] for row in self.gram],
                "signature": list(self.signature)}

    @classmethod
    def from_dict(cls, d: dict) -> IntersectionLattice:
        out = cls.from_gram([[parse_frac(x) for x in row] for row in d["gram"]])
        if "signature" in d and tuple(d["signature"]) != out.signature:
            raise LatticeError("stored signature does not match gram matrix")
        return out


def frac_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_frac(s) -> Fraction:
    return Fraction(s)


@dataclass(frozen=True)
class Polarization:
    """A maximal positive-definite subspace H, given by a spanning basis."""

    basis: tuple[Vector, ...]

    @classmethod
    def of(cls, vectors: Iterable[Iterable]) -> Polarization:
        return cls(tuple(vec(v) for v in vectors))

    @classmethod
    def standard(cls, L: IntersectionLattice) -> Polarization:
        """Span of the positive coordinate axes of a diagonal lattice."""
        if not L.is_diagonal:
            raise LatticeError("standard polarization needs a diagonal lattice")
        return cls(tuple(L.unit(i) for i in range(L.rank) if L.gram[i][i] > 0))

    def gram(self, L: IntersectionLattice) -> list[list[Fraction]]:
        return [[L.pairing(u, v) for v in self.basis] for u in self.basis]

    def validate(self, L: IntersectionLattice) -> None:
        if len(self.basis) != L.signature[0]:
            raise LatticeError(f"polarization has dimension {len(self.basis)}, expected b+ = {L.signature[0]}")
        d = _symmetric_diagonalize(self.gram(L))
        if not all(x > 0 for x in d):
            raise LatticeError("pairing restricted to H is not positive definite")

    def to_dict(self) -> dict:
        return {"basis": [[frac_str(x) for x in v] for v in self.basis]}

    @classmethod
    def from_dict(cls, d: dict) -> Polarization:
        return cls.of([[parse_frac(x) for x in v] for v in d["basis"]])


def class_to_json(c: Sequence) -> str:
    return json.dumps([frac_str(x) for x in c])


def class_from_json(text: str) -> Vector:
    return vec(parse_frac(x) for x in json.loads(text))


def project_plus(c: Sequence, H: Polarization, L: IntersectionLattice) -> tuple[Vector, Fraction]:
    """Orthogonal projection of ``c`` into H under the intersection form.

    Returns ``(p, p.p)`` with ``(c - p).h = 0`` for every basis vector h.
    """
    H.validate(L)
    return _project(c, H, L, H.gram(L))


def _project(c: Sequence, H: Polarization, L: IntersectionLattice,
             G: list[list[Fraction]]) -> tuple[Vector, Fraction]:
    rhs = [L.pairing(h, c) for h in H.basis]
    coeffs = solve(G, rhs)
    p = tuple(sum((a * h[i] for a, h in zip(coeffs, H.basis) if h[i]), Fraction(0)) for i in range(L.rank))
    # p.p = a^T G a = a . rhs
    return p, sum((a * r for a, r in zip(coeffs, rhs)), Fraction(0))


def orient_future(c: Sequence, H: Polarization, L: IntersectionLattice) -> Vector:
    """For b+ = 1, flip c so that its projection pairs nonnegatively with H's axis."""
    c = vec(c)
    if len(H.basis) != 1:
        return c
    if L.pairing(c, H.basis[0]) < 0:
        return tuple(-x for x in c)
    return c


@dataclass(frozen=True)
class VirtualDimension:
    ell: int
    defined: bool  # ell >= 0 and even; otherwise the invariant is zero by convention

    @property
    def invariant_forced_zero(self) -> bool:
        return not self.defined


def virtual_dimension_from_square(c1L_sq, two_chi_three_tau: int) -> VirtualDimension:
    num = Fraction(c1L_sq) - two_chi_three_tau
    if num.denominator != 1 or num.numerator % 4:
        raise MalformedClass(f"(c1(L)^2 - (2chi+3tau))/4 = {num}/4 is not an integer")
    ell = num.numerator // 4
    return VirtualDimension(ell, ell >= 0 and ell % 2 == 0)


def virtual_dimension(c1L: Sequence, M: CharNumbers, L: IntersectionLattice) -> VirtualDimension:
    if L.is_diagonal and L.is_characteristic(c1L) is False:
        warnings.warn("class is not characteristic for the diagonal form", stacklevel=2)
    return virtual_dimension_from_square(L.square(c1L), M.c1sq())


@dataclass(frozen=True)
class SpinCClass:
    c1L: Vector
    c1_plus_sq: Fraction
    virtual_dim: int
    signs: tuple[int, ...]
    c1X_plus_sq: Fraction

    def to_dict(self) -> dict:
        return {
            "c1L": [frac_str(x) for x in self.c1L],
            "c1_plus_sq": frac_str(self.c1_plus_sq),
            "c1X_plus_sq": frac_str(self.c1X_plus_sq),
            "virtual_dim": self.virtual_dim,
            "signs": list(self.signs),
        }


def lemma_who_class(c1X: Sequence, x_lattice: IntersectionLattice, k: int,
                    H: Polarization, c1sq_X: int) -> SpinCClass:
    """Spin^c class on X # k CP2bar whose self-dual part is at least as long as c1(X)'s.

    ``c1X`` lives in ``x_lattice`` and is pulled back by zero-extension. Each
    exceptional generator gets the sign making it pair nonnegatively with
    ``[c1(X)]^+`` (ties resolve to +1), so
    ``(c1+)^2 >= ([c1(X)]^+)^2 >= c1sq_X``.
    """
    if c1sq_X <= 0:
        raise LatticeError(f"need (2chi+3tau)(X) > 0, got {c1sq_X}")
    if x_lattice.square(c1X) < c1sq_X:
        raise LatticeError("c1(X)^2 < (2chi+3tau)(X): negative virtual dimension")
    L = x_lattice.blow_up(k)
    c = vec(c1X) + (Fraction(0),) * k
    if L.signature[0] == 1 and c1sq_X - k > 0:
        c = orient_future(c, H, L)
    H.validate(L)
    G = H.gram(L)
    cplus, cplus_sq = _project(c, H, L, G)
    signs = []
    c1L = list(c)
    for j in range(k):
        e = L.unit(x_lattice.rank + j)
        s = 1 if L.pairing(cplus, e) >= 0 else -1
        signs.append(s)
        c1L[x_lattice.rank + j] += s
    c1L = tuple(c1L)
    _, c1_plus_sq = _project(c1L, H, L, G)
    if not c1_plus_sq >= cplus_sq >= c1sq_X:
        raise AssertionError(f"projection chain violated: {c1_plus_sq} >= {cplus_sq} >= {c1sq_X}")
    vd = virtual_dimension_from_square(L.square(c1L), c1sq_X - k)
    return SpinCClass(c1L, c1_plus_sq, vd.ell, tuple(signs), cplus_sq)
