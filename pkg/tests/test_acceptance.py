"""Acceptance suite: every exit criterion with its stated budget.

Each test prints one PASS line on success (run with ``pytest -v -s`` to see
them); a pytest failure is the FAIL line.  All comparisons are exact; the
stated runtime ceilings are asserted.
"""

import json
import time
from contextlib import contextmanager

from conftest import FIXTURES, random_theta
from oracles import cf_expand_reference, order_parameters, smallest_unit_reference
from qde.classgroup import (
    class_group_structure,
    class_number_maximal,
    class_number_order,
    unit_index,
)
from qde.harness import parse_curves, validate
from qde.ktheory import crossed_product_k0
from qde.lattice import QuadraticOrder, companion_tori, endomorphism_ring
from qde.predict import predict
from qde.quadratic import (
    QuadraticInteger,
    cf_expand,
    cf_value,
    fundamental_unit,
    gl2z_equivalent,
)

import random

EXHAUSTIVE_UNIT_CAP = 100_000


@contextmanager
def budget(limit_seconds, label):
    start = time.monotonic()
    yield
    elapsed = time.monotonic() - start
    assert elapsed < limit_seconds, f"{label} took {elapsed:.1f}s (limit {limit_seconds}s)"
    print(f"PASS: {label} ({elapsed:.1f}s < {limit_seconds}s)")


def _sweep_d500_f10():
    from qde.quadratic import squarefree_decompose

    for D in range(2, 500):
        if squarefree_decompose(D)[0] != 1:
            continue
        for f in range(1, 11):
            yield QuadraticOrder(D, f)


def test_acceptance_conductor_formula_sweep():
    with budget(60, "conductor formula equals composition-group order (D<500, f<=10)"):
        for order in _sweep_d500_f10():
            assert class_group_structure(order).order == class_number_order(order), order


def test_acceptance_divisibility_law():
    with budget(60, "field class number divides the order class number (same sweep)"):
        for order in _sweep_d500_f10():
            assert class_number_order(order) % class_number_maximal(order.D) == 0, order


def test_acceptance_k0_rank_arithmetic():
    with budget(10, "K0 rank = h+1 and |Galois| = h for every discriminant < 2000"):
        for D, f in order_parameters(2000):
            order = QuadraticOrder(D, f)
            h = class_number_order(order)
            descriptor = crossed_product_k0(companion_tori(order)[0])
            assert descriptor.k0_rank == h + 1, order
            assert descriptor.galois_group.order == h, order


def test_acceptance_square_rank_consistency():
    with budget(60, "|Sha| = (1+rank)^2 identically over the discriminant sweep"):
        for D, f in order_parameters(2000):
            p = predict(companion_tori(QuadraticOrder(D, f))[0])
            assert p.sha_order == (1 + p.rank) ** 2, (D, f)
            assert p.sha_order == p.h_lambda**2, (D, f)


def test_acceptance_companion_tori():
    with budget(30, "companion count, endomorphism ring, inequivalence, invariance (disc < 2000)"):
        for D, f in order_parameters(2000):
            order = QuadraticOrder(D, f)
            tori = companion_tori(order)
            assert len(tori) == class_number_order(order), order
            descriptors = [crossed_product_k0(theta) for theta in tori]
            for theta, descriptor in zip(tori, descriptors):
                assert endomorphism_ring(theta) == order, (order, theta)
                assert descriptor.k0_rank == descriptors[0].k0_rank
                assert descriptor.galois_group == descriptors[0].galois_group
                assert descriptor.trace_generators == descriptors[0].trace_generators
            for i in range(len(tori)):
                for j in range(i + 1, len(tori)):
                    assert not gl2z_equivalent(tori[i], tori[j]), (order, i, j)


def test_acceptance_continued_fraction_round_trip():
    rng = random.Random(987654321)
    with budget(5, "cf_value(cf_expand(theta)) = theta on 500 random theta (D < 200)"):
        for _ in range(500):
            theta = random_theta(rng, d_limit=200)
            cf = cf_expand(theta)
            assert len(cf.period) >= 1
            assert cf_value(cf) == theta, theta


def test_acceptance_fundamental_units():
    with budget(20, "fundamental units: unit norm and minimality for squarefree D < 200"):
        from qde.quadratic import squarefree_decompose

        for D in range(2, 200):
            if squarefree_decompose(D)[0] != 1:
                continue
            unit, norm = fundamental_unit(D)
            assert norm in (1, -1) and unit.norm() == norm, D
            assert unit.exceeds_one(), D
            if unit.y <= EXHAUSTIVE_UNIT_CAP:
                # exhaustive coordinate scan up to the returned unit
                assert smallest_unit_reference(D, unit.y) == (unit.x, unit.y, norm), D
            else:
                # the scan is out of desk range; every unit exceeding 1 shows up
                # as p - q*conj(omega) along the convergents of omega, so the
                # first convergent hit of the reference expansion must be it
                omega = QuadraticInteger(0, 1, D).to_irrational()
                pre, per = cf_expand_reference(omega)
                quotients = list(pre) + list(per) * 3
                t = 1 if D % 4 == 1 else 0
                d_K = D if D % 4 == 1 else 4 * D
                p, p1, q, q1 = 1, 0, 0, 1
                first_hit = None
                for a in quotients:
                    p, p1 = a * p + p1, p
                    q, q1 = a * q + q1, q
                    x, y = p - t * q, q
                    if (2 * x + t * y) ** 2 - d_K * y * y in (4, -4):
                        first_hit = (x, y)
                        break
                assert first_hit == (unit.x, unit.y), D


def test_acceptance_spot_values():
    with budget(30, "frozen spot values for (5,2), (2,2) and D=10"):
        assert unit_index(QuadraticOrder(5, 2)) == 3
        assert class_number_order(QuadraticOrder(5, 2)) == 1
        assert unit_index(QuadraticOrder(2, 2)) == 2
        assert class_number_order(QuadraticOrder(2, 2)) == 1
        assert class_number_maximal(10) == 2
        from qde.quadratic import parse_theta

        p = predict(parse_theta("sqrt(10)"))
        assert p.rank == 1
        assert p.sha_structure.invariant_factors == (2, 2)


def test_acceptance_harness_validation():
    with budget(30, "bundled fixture: rank-1/|Sha|=1 flagged, rank-0/|Sha|=1 consistent"):
        records = parse_curves(str(FIXTURES / "curves.csv"))
        report = validate(records)
        flagged = {row[0] for row in report.violation_rows}
        assert "37a1" in flagged  # rank 1, |Sha| = 1
        assert "11a1" not in flagged  # rank 0, |Sha| = 1
        assert report.consistent + report.violations == report.total
        parallel = validate(records, jobs=4)
        assert json.dumps(parallel.to_json_dict()) == json.dumps(report.to_json_dict())
