"""Acceptance gate: one test per criterion, each printing a single PASS/FAIL line.

The lines are printed inline under ``-s`` and repeated in the terminal summary
by ``conftest.py``.
"""

import random
import time
from fractions import Fraction

import pytest

from swobstruct import lattice as lat
from swobstruct.homeo import KStrategy, exotic_pair_search, freedman_type, homeomorphic, noether_partner
from swobstruct.obstructions import ASD_EINSTEIN, LNO, NEW, Criterion, Verdict, k_threshold, new_obstruction
from swobstruct.report import random_projection_instance
from swobstruct.riemannian_functionals import (
    i_epsilon, keen_completed_square, keen_quadratic, kahler_saturation, min_volumes, verify_keen_minimum,
)
from swobstruct.surface_algebra import (
    Hypersurface, RuledSurface, SurfaceSpec, blow_up, double_plane_invariants, hypersurface_invariants,
    quadric_bicover_invariants,
)

F = Fraction
RESULTS: list[str] = []


def _gate(number, title, limit_s, body):
    t0 = time.perf_counter()
    try:
        detail = body()
        ok, err = True, ""
    except AssertionError as e:
        detail, ok, err = None, False, (str(e) or "assertion failed").splitlines()[0]
    elapsed = time.perf_counter() - t0
    if ok and elapsed >= limit_s:
        ok, err = False, f"runtime {elapsed:.2f}s exceeds {limit_s}s"
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} ({elapsed:.2f}s / {limit_s}s)"
    if detail:
        line += f" {detail}"
    if err:
        line += f" -- {err}"
    print(line)
    RESULTS.append(line)
    assert ok, line


def test_criterion_1_hypersurface_example():
    def body():
        X = hypersurface_invariants(9)
        assert (X.c1sq(), X.p_g) == (225, 56)
        M = blow_up(X, 117)
        assert (M.c1sq(), M.p_g, M.tau) == (108, 56, -348)
        t = freedman_type(M)
        assert (t.a, t.b) == (113, 461)
        Q = quadric_bicover_invariants(3, 29)
        assert (Q.c1sq(), Q.p_g) == (108, 56)
        assert freedman_type(Q) == t
        assert homeomorphic(M, Q)
        return "type 113 CP2 # 461 CP2bar"
    _gate(1, "X_9 # 117 CP2bar vs bicover (6,58)", 1.0, body)


def test_criterion_2_double_plane_example():
    def body():
        Y = double_plane_invariants(27)
        assert (Y.c1sq(), Y.p_g) == (1152, 325)
        M = blow_up(Y, 506)
        assert M.c1sq() == 646
        assert new_obstruction(Y, 506).k_min == 506
        P = noether_partner(646, 325)
        assert P is not None
        assert homeomorphic(M, P.evaluate())
        return f"partner {P}"
    _gate(2, "Y_27 # 506 CP2bar vs Noether-line partner", 1.0, body)


def test_criterion_3_keen_minimum():
    def body():
        cert = verify_keen_minimum(10**6)
        assert abs(cert.minimum - 32 / 57) < 1e-9, f"min residual {cert.min_residual}"
        assert abs(cert.argmin - (24 / 19) ** 2) < 1e-6, f"argmin residual {cert.argmin_residual}"
        rng = random.Random(3)
        n = 0
        while n < 10**4:
            s = F(rng.randint(1, 10**6), rng.randint(1, 10**6))
            if 1 <= s <= F(4, 3):
                assert keen_quadratic(s * s) == keen_completed_square(s * s)
                n += 1
        return f"min residual {cert.min_residual:.1e}, argmin residual {cert.argmin_residual:.1e}"
    _gate(3, "grid minimum 32/57 at (24/19)^2, completed square x 10^4", 10.0, body)


def test_criterion_4_threshold_table():
    def body():
        for l in range(5, 41):
            c = hypersurface_invariants(l).c1sq()
            a, n, p = k_threshold(ASD_EINSTEIN, c), k_threshold(NEW, c), k_threshold(LNO, c)
            assert a <= n <= p, f"l={l}"
        c9 = hypersurface_invariants(9).c1sq()
        got = (k_threshold(ASD_EINSTEIN, c9), k_threshold(NEW, c9), k_threshold(LNO, c9))
        assert got == (92, 99, 150), got
        return "l=9: 92, 99, 150"
    _gate(4, "threshold ordering for l in [5,40]", 1.0, body)


def test_criterion_5_projection_chain():
    def body():
        rng = random.Random(5)
        failures = 0
        for _ in range(1000):
            X, c, k, H, c1sq_X = random_projection_instance(rng, 25, 20)
            assert X.rank + k <= 25 and k <= 20
            try:
                sc = lat.lemma_who_class(c, X, k, H, c1sq_X)
            except AssertionError:
                failures += 1
                continue
            if not sc.c1_plus_sq >= sc.c1X_plus_sq >= c1sq_X:
                failures += 1
        assert failures == 0, f"{failures} failures"
        return "1000 instances, 0 failures"
    _gate(5, "spin^c class chain on random lattices", 30.0, body)


def test_criterion_6_kahler_saturation():
    def body():
        rng = random.Random(6)
        for _ in range(100):
            c1w = -F(rng.randint(1, 10**4), rng.randint(1, 10**4))
            w2 = F(rng.randint(1, 10**4), rng.randint(1, 10**4))
            lhs, rhs = kahler_saturation(c1w, w2)
            assert lhs == rhs, (c1w, w2)
        return "100 random inputs"
    _gate(6, "Kahler saturation lhs = rhs", 1.0, body)


def test_criterion_7_volume_and_energy_values():
    def body():
        X = hypersurface_invariants(9)
        assert min_volumes(X, 0).vol_s == 50
        assert i_epsilon(SurfaceSpec(Hypersurface(9)), F(1, 3)).value == 100
        for eps in (F(0), F(1, 3), F(1), F(7, 2)):
            assert i_epsilon(SurfaceSpec(RuledSurface(2)), eps).value == 0
        return "Vol_s = 50 pi^2, I_1/3 = 100"
    _gate(7, "minimal volume and I_eps values", 1.0, body)


def test_criterion_8_search_regression():
    def body():
        hits = exotic_pair_search(range(9, 13), (), KStrategy.NoetherMatch)
        found = [p.obstructed.root.params[0] for p in hits]
        assert found == [9, 10, 11, 12], f"l in [9,12] emitted {found}"
        for p in hits:
            assert p.obstruction.verdicts[Criterion.New_25_57] is Verdict.Obstructed
            assert homeomorphic(p.obstructed.evaluate(), p.einstein_witness.evaluate())
        low = exotic_pair_search(range(5, 9), (), KStrategy.NoetherMatch)
        assert not low, "l in [5,8] emitted " + ", ".join(
            f"{p.obstructed} ~ {p.einstein_witness}" for p in low)
        return "l=9..12 certified, none for l=5..8"
    _gate(8, "exotic-pair search cutoff at l = 9", 5.0, body)
