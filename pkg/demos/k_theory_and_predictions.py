#!/usr/bin/env python3
"""Crossed-product K0 descriptors, companion tori, and rank/Sha predictions.

Run as: python demos/k_theory_and_predictions.py
"""

from pathlib import Path

from qde import (
    QuadraticOrder,
    companion_tori,
    crossed_product_k0,
    parse_theta,
    parse_curves,
    predict,
    validate,
)

print("=" * 72)
print("Companion tori: one quadratic irrational per ideal class")
print("=" * 72)
for D, f in [(5, 1), (10, 1), (79, 1), (82, 1)]:
    order = QuadraticOrder(D, f)
    tori = companion_tori(order)
    print(f"{order}: {len(tori)} companion(s)")
    for theta in tori:
        print(f"    {theta}")

print()
print("=" * 72)
print("K0 descriptors of the crossed product")
print("=" * 72)
for text in ["(1+sqrt(5))/2", "sqrt(10)", "sqrt(79)"]:
    d = crossed_product_k0(parse_theta(text))
    print(
        f"theta = {text:>14}: K0 rank {d.k0_rank}, generators "
        f"[{', '.join(d.trace_generators)}], Galois group {d.galois_group}"
    )

print()
print("=" * 72)
print("Predictions: rank = h - 1, Sha = Cl + Cl, so |Sha| = (1 + rank)^2")
print("=" * 72)
for text in ["(1+sqrt(5))/2", "sqrt(10)", "sqrt(82)", "sqrt(226)"]:
    p = predict(parse_theta(text))
    print(
        f"theta = {text:>12}: h = {p.h_lambda}, rank = {p.rank}, "
        f"Sha = {p.sha_structure} (order {p.sha_order}), K0 rank = {p.k0_rank}"
    )

print()
print("=" * 72)
print("Checking curve data against |Sha| = (1 + rank)^2")
print("=" * 72)
fixture = Path(__file__).parent.parent / "tests" / "fixtures" / "curves.csv"
records = parse_curves(str(fixture))
report = validate(records)
print(f"records {report.total}, consistent {report.consistent}, violations {report.violations}")
for label, rank, sha, predicted in report.violation_rows:
    print(f"    {label}: rank {rank}, |Sha| {sha}, predicted {predicted}")
print("Rows violating the identity are expected; the report only measures the shape.")
