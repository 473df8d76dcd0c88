import random
import warnings
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from swobstruct import lattice as lat
from swobstruct.report import random_projection_instance
from swobstruct.surface_algebra import blow_up, hypersurface_invariants

F = Fraction


def _sympy_projection_sq(c, H, L):
    """Independent oracle: least squares in sympy's exact linear algebra."""
    G = sympy.Matrix([[sympy.Rational(x) for x in row] for row in L.gram])
    B = sympy.Matrix([[sympy.Rational(x) for x in h] for h in H.basis]).T
    cv = sympy.Matrix([sympy.Rational(x) for x in c])
    a = (B.T * G * B).LUsolve(B.T * G * cv)
    p = B * a
    return (p.T * G * p)[0]


@given(st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_signature_matches_sympy(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    A = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
    S = [[A[i][j] + A[j][i] for j in range(n)] for i in range(n)]
    M = sympy.Matrix(S)
    if M.det() == 0:
        return
    L = lat.IntersectionLattice.from_gram(S)
    eig = M.eigenvals()
    pos = sum(m for e, m in eig.items() if sympy.re(sympy.N(e, 50)) > 0)
    assert L.signature == (pos, n - pos)
    assert L.determinant() == M.det()


def test_projection_onto_own_span():
    L = lat.IntersectionLattice.diagonal(1, 3)
    c = (2, 1, 0, 1)
    H = lat.Polarization.of([c])
    p, sq = lat.project_plus(c, H, L)
    assert p == lat.vec(c) and sq == L.square(c) == 2


def test_projection_time_axis():
    L = lat.IntersectionLattice.diagonal(1, 5)
    H = lat.Polarization.standard(L)
    p, sq = lat.project_plus((3, 1, 1, 1, 1, 1), H, L)
    assert p == lat.vec((3, 0, 0, 0, 0, 0)) and sq == 9


@given(st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_projection_rank10_against_sympy(seed):
    rng = random.Random(seed)
    L = lat.IntersectionLattice.diagonal(5, 5)
    while True:
        basis = []
        for i in range(5):
            v = [F(0)] * 10
            v[i] = F(1)
            for j in range(5, 10):
                v[j] = F(rng.randint(-2, 2), rng.randint(5, 9))
            basis.append(v)
        H = lat.Polarization.of(basis)
        try:
            H.validate(L)
            break
        except lat.LatticeError:
            continue
    c = [rng.randint(-5, 5) for _ in range(10)]
    p, sq = lat.project_plus(c, H, L)
    assert sq == _sympy_projection_sq(c, H, L)
    # idempotent and signature decomposition
    p2, sq2 = lat.project_plus(p, H, L)
    assert p2 == p and sq2 == sq
    rest = tuple(F(x) - y for x, y in zip(c, p))
    assert L.square(c) == sq + L.square(rest)
    assert L.square(rest) <= 0


def test_polarization_rejections():
    L = lat.IntersectionLattice.diagonal(1, 1)
    with pytest.raises(lat.LatticeError):
        lat.Polarization.of([(0, 1)]).validate(L)
    with pytest.raises(lat.LatticeError):
        lat.Polarization.of([(1, 0), (0, 1)]).validate(L)
    with pytest.raises(lat.LatticeError):
        lat.IntersectionLattice.from_gram([[1, 1], [1, 1]])


def test_virtual_dimension_examples():
    assert lat.virtual_dimension_from_square(108, 108).ell == 0
    v = lat.virtual_dimension_from_square(116, 108)
    assert v.ell == 2 and v.defined
    v = lat.virtual_dimension_from_square(112, 108)
    assert v.ell == 1 and v.invariant_forced_zero
    with pytest.raises(lat.MalformedClass):
        lat.virtual_dimension_from_square(110, 108)


def test_virtual_dimension_on_manifold():
    M = blow_up(hypersurface_invariants(5), 0)
    L = lat.IntersectionLattice.for_manifold(M)
    c = [1] * L.rank
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        v = lat.virtual_dimension(c, M, L)
    assert v.ell == (int(L.square(c)) - M.c1sq()) // 4


def test_lemma_class_k_zero():
    X = lat.IntersectionLattice.diagonal(1, 2)
    H = lat.Polarization.standard(X)
    sc = lat.lemma_who_class((3, 1, 1), X, 0, H, 7)
    assert sc.c1L == lat.vec((3, 1, 1))
    assert sc.c1_plus_sq == sc.c1X_plus_sq == 9


def test_lemma_class_hypersurface_scale():
    X = lat.IntersectionLattice.diagonal(1, 0)
    L = X.blow_up(117)
    H = lat.Polarization.standard(L)
    sc = lat.lemma_who_class((15,), X, 117, H, 225)
    assert sc.c1_plus_sq >= 225
    assert sc.virtual_dim == 0


def test_lemma_class_orthogonal_exceptionals():
    # H = span(e0) is orthogonal to every E_j: cross terms vanish, all ties pick +1
    X = lat.IntersectionLattice.diagonal(1, 1)
    L = X.blow_up(4)
    H = lat.Polarization.standard(L)
    sc = lat.lemma_who_class((3, 1), X, 4, H, 8)
    assert sc.signs == (1, 1, 1, 1)
    assert sc.c1_plus_sq == sc.c1X_plus_sq == 9


def test_lemma_class_preconditions():
    X = lat.IntersectionLattice.diagonal(1, 1)
    H = lat.Polarization.standard(X.blow_up(1))
    with pytest.raises(lat.LatticeError):
        lat.lemma_who_class((3, 1), X, 1, H, 0)
    with pytest.raises(lat.LatticeError):
        lat.lemma_who_class((3, 1), X, 1, H, 16)


@given(st.integers(0, 10**6))
@settings(max_examples=150, deadline=None)
def test_lemma_chain_random(seed):
    X, c, k, H, c1sq_X = random_projection_instance(random.Random(seed), 12, 8)
    sc = lat.lemma_who_class(c, X, k, H, c1sq_X)
    assert sc.c1_plus_sq >= sc.c1X_plus_sq >= c1sq_X


@given(st.integers(0, 10**6))
@settings(max_examples=100, deadline=None)
def test_sign_flip(seed):
    rng = random.Random(seed)
    while True:
        X, c, k, H, c1sq_X = random_projection_instance(rng, 12, 8)
        if X.signature[0] >= 2:
            break
    a = lat.lemma_who_class(c, X, k, H, c1sq_X)
    b = lat.lemma_who_class(tuple(-x for x in c), X, k, H, c1sq_X)
    assert a.c1_plus_sq == b.c1_plus_sq
    L = X.blow_up(k)
    cplus, _ = lat.project_plus(tuple(c) + (0,) * k, H, L)
    for j in range(k):
        if L.pairing(cplus, L.unit(X.rank + j)) != 0:
            assert a.signs[j] == -b.signs[j]
        else:
            assert a.signs[j] == b.signs[j] == 1


def test_time_orientation_b_plus_one():
    X = lat.IntersectionLattice.diagonal(1, 1)
    L = X.blow_up(2)
    H = lat.Polarization.standard(L)
    a = lat.lemma_who_class((3, 1), X, 2, H, 8)
    b = lat.lemma_who_class((-3, -1), X, 2, H, 8)
    assert a == b
    assert L.pairing(a.c1L, H.basis[0]) >= 0


def test_serialization():
    L = lat.IntersectionLattice.from_gram([[0, 1], [1, 0]])
    assert lat.IntersectionLattice.from_dict(L.to_dict()) == L
    assert L.signature == (1, 1) and not L.is_diagonal
    with pytest.warns(UserWarning):
        assert L.is_characteristic((0, 0)) is None
    H = lat.Polarization.of([(F(1, 2), 1)])
    assert lat.Polarization.from_dict(H.to_dict()) == H
    c = (F(1, 3), F(-2))
    assert lat.class_from_json(lat.class_to_json(c)) == c
    assert lat.frac_str(3) == "3/1"
