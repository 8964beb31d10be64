"""Acceptance suite: one test per exit criterion, one printed line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the PASS/FAIL
line per criterion.  Every tolerance here is zero: all comparisons are
exact, and the only numeric bounds are the stated runtime budgets and
the frozen regression values produced by the first oracle runs
(documented inline).
"""

from __future__ import annotations

import time
from contextlib import contextmanager
from fractions import Fraction as F

from frechetlab.cli import main as cli_main
from frechetlab.diffs import check_frechet, check_frechet_variable
from frechetlab.explore import (coverage_fraction, growth_table,
                                iter_graph_points)
from frechetlab.interp import (GridSpec, build_interpolant,
                               check_integer_extension,
                               check_rational_refinement)
from frechetlab.parsing import parse_poly
from frechetlab.poly import poly_equal
from frechetlab.sampling import Lcg
from frechetlab.scalars import QuadScalar, height
from frechetlab.shear import (bivariate_jacobian, shear_decompose,
                              xi_determinant)
from frechetlab.witness import (Ordinary, SectionSpec, Sum, SurdPart,
                                restrict_section)

from conftest import make_battery

R2 = QuadScalar.sqrt_d(2)


@contextmanager
def criterion(number: int, summary: str):
    started = time.monotonic()
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {number} FAIL: {summary}")
        raise
    elapsed = time.monotonic() - started
    print(f"ACCEPTANCE {number} PASS ({elapsed:.1f}s): {summary}")


def test_criterion_1_shear_round_trip():
    with criterion(1, "500 shear decompositions recompose exactly, "
                      "deg A_i <= m, within 10s"):
        rng = Lcg(101)
        started = time.monotonic()
        for i in range(500):
            m = 1 + i % 6
            P = rng.tensor_poly(2, m, max_num=10, max_den=10)
            D = shear_decompose(P)
            assert poly_equal(D.recompose(), P)
            assert all(a.degree <= m for a in D.coefficients)
        assert time.monotonic() - started <= 10.0


def test_criterion_2_integer_extension_suite():
    with criterion(2, "integer extension on [-4, m+4]^(n+1) for the "
                      "battery x 20 grids, within 60s"):
        started = time.monotonic()
        rng = Lcg(202)
        for name, model, n, m in make_battery():
            assert model.declared_order() == m, name
            for _ in range(20):
                grid = rng.grid_spec(n, m)
                P = build_interpolant(model, grid)
                rep = check_integer_extension(P, model, grid, (-4, m + 4))
                assert rep.ok, (name, rep.counterexample)
                assert rep.checked == (m + 9) ** (n + 1)
        assert time.monotonic() - started <= 60.0


def test_criterion_3_rational_refinement_suite():
    with criterion(3, "rational refinement (|p_i| <= 4) reproduces the "
                      "interpolant for the battery"):
        rng = Lcg(303)
        for name, model, n, m in make_battery():
            for _ in range(5):
                grid = rng.grid_spec(n, m)
                denominators = []
                while len(denominators) < n + 1:
                    p = rng.int_range(-4, 4)
                    if p:
                        denominators.append(p)
                assert check_rational_refinement(model, grid, denominators), name


def test_criterion_4_jacobian_identities():
    with criterion(4, "jacobian formula on 200 random bivariate P and the "
                      "multivariate restriction identity"):
        rng = Lcg(404)
        for i in range(200):
            P = rng.tensor_poly(2, 1 + i % 5, max_num=6, max_den=4)
            D = shear_decompose(P)
            # bivariate_jacobian raises if the two routes disagree
            J = bivariate_jacobian(P, D)
            assert poly_equal(J, (P.partial(2) - P.partial(1)).shrink())

        # restriction identity: the big interpolant, frozen to the section
        # plane, is the bivariate section interpolant
        n, s, m = 2, 1, 1
        f = Sum((SurdPart(1), Ordinary(parse_poly("t2", 2))))
        a = (QuadScalar(0), QuadScalar(F(1, 2)))
        h = (R2, QuadScalar(1), QuadScalar(F(1, 2)))
        e1 = (QuadScalar(1), QuadScalar(0))
        e2 = (QuadScalar(0), QuadScalar(1))
        grid = GridSpec(a, h, (e1, e2, e1), m)  # v_k = e_k, v_{n+1} = e_s
        P = build_interpolant(f, grid)
        g = restrict_section(f, SectionSpec(s, (a[1],)))
        small = GridSpec((a[0],), (h[0], h[2]), ((1,), (1,)), m)
        p_small = build_interpolant(g, small)
        assert poly_equal(P.restrict({2: 0}), p_small)
        # and the xi determinant restricts to the bivariate jacobian
        D_small = shear_decompose(p_small)
        assert poly_equal(xi_determinant(P, s).restrict({2: 0}),
                          bivariate_jacobian(p_small, D_small))


def test_criterion_5_frechet_conformance_and_tightness():
    with criterion(5, "battery passes at declared order on 200 seeded "
                      "pairs and fails at order-1"):
        for name, model, n, m in make_battery():
            rng = Lcg(505)
            sample = rng.pair_sample(n, 200)
            assert check_frechet(model, m, sample).ok, name
            if m >= 1:
                rng = Lcg(505)
                sample = rng.pair_sample(n, 200)
                assert not check_frechet(model, m - 1, sample).ok, (
                    f"{name}: declared order {m} is not tight")


def test_criterion_6_unboundedness():
    # Frozen oracle values (exhaustive enumeration at H=15; descending-|q|
    # scan cross-checked against enumeration at H in {5,10,15,25,40}):
    # sup at H=15 is 11, at H=141 is 100, at H=150 is 106.
    with criterion(6, "growth table: sup >= 10 at H=15, sup >= 100 at "
                      "H <= 150, nondecreasing, within 30s"):
        started = time.monotonic()
        table = growth_table(SurdPart(1), (0, 1), [15, 141, 150])
        sups = [sup for _, sup, _ in table.rows]
        assert sups == [QuadScalar(11), QuadScalar(100), QuadScalar(106)]
        assert sups[0] >= QuadScalar(10)
        assert sups[2] >= QuadScalar(100)
        assert all(a <= b for a, b in zip(sups, sups[1:]))
        # the spec's exact witness x = 10*sqrt(2) - 14 is in the H=15 sample
        x = 10 * R2 - 14
        assert height(x) <= 15 and QuadScalar(0) <= x <= QuadScalar(1)
        assert SurdPart(1).eval((x,)) == QuadScalar(10)
        assert time.monotonic() - started <= 30.0


def test_criterion_7_graph_density():
    # Frozen oracle values from the first full runs (exact fractions,
    # independently reproduced by a per-cell minimal-height scan):
    # coverage(15) = 174/625, coverage(30) = 133/250,
    # coverage(45) = 1877/2500, coverage(60) = 2263/2500 >= 0.9.
    with criterion(7, "coverage over [0,1]x[-10,10] at r=50 reaches >= 0.9 "
                      "by H=60 and is monotone in H"):
        rect = ((0, 1), (-10, 10))
        frozen = {15: F(174, 625), 30: F(133, 250),
                  45: F(1877, 2500), 60: F(2263, 2500)}
        previous = F(0)
        for H, expected in frozen.items():
            grid = coverage_fraction(
                iter_graph_points(SurdPart(1), (0, 1), H), rect, 50)
            assert grid.fraction == expected
            assert grid.fraction >= previous
            previous = grid.fraction
        assert previous >= F(9, 10)


def test_criterion_8_variable_step_equivalence():
    with criterion(8, "variable-step differences vanish on 100 seeded "
                      "tuples of distinct steps per battery model"):
        for name, model, n, m in make_battery():
            rng = Lcg(808)
            sample = [(rng.point(n), rng.distinct_steps(n, m + 1))
                      for _ in range(100)]
            assert check_frechet_variable(model, m, sample).ok, name


def test_criterion_9_cli_determinism(tmp_path):
    with criterion(9, "identical flags and seed produce byte-identical CSV "
                      "and manifests"):
        runs = [
            ["growth", "--model", "(surd 1)", "--window", "0,1",
             "--heights", "5,10,15"],
            ["check-frechet", "--model", "(surd 1)", "--samples", "60",
             "--seed", "7"],
            ["explore", "--model", "(pow (surd 1) 2)", "--window", "0,1",
             "--height", "6", "--rect", "0,1,-5,5", "--resolution", "10"],
            ["decompose", "--poly", "x^2*y^2"],
            ["image", "--model", "(surd 1)", "--m", "1", "--a", "0",
             "--h", "sqrt(2),1", "--gamma", "1;1", "--axis", "1",
             "--t-height", "1"],
        ]
        for k, argv in enumerate(runs):
            outputs = []
            for attempt in ("a", "b"):
                out = tmp_path / f"{k}-{attempt}.csv"
                assert cli_main(argv + ["--out", str(out)]) == 0
                manifest = out.with_suffix(".csv.manifest.json")
                outputs.append((out.read_bytes(), manifest.read_bytes()))
            assert outputs[0] == outputs[1], argv[0]
