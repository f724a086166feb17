#!/usr/bin/env python3
"""Tour of exact continued-fraction arithmetic for quadratic irrationals.

Run as: python demos/continued_fractions.py
"""

from qde import cf_expand, cf_value, gl2z_equivalent, parse_theta

print("=" * 70)
print("Canonical forms")
print("=" * 70)
for text in ["(1+sqrt(5))/2", "sqrt(8)", "(10+2*sqrt(45))/4", "-sqrt(2)"]:
    theta = parse_theta(text)
    print(f"{text:>22} -> {theta}  (a={theta.a}, b={theta.b}, c={theta.c}, D={theta.D})")

print()
print("=" * 70)
print("Periodic continued fractions (exact, no floating point)")
print("=" * 70)
for text in ["(1+sqrt(5))/2", "sqrt(2)", "sqrt(10)", "(3-2*sqrt(7))/5", "sqrt(94)"]:
    theta = parse_theta(text)
    cf = cf_expand(theta)
    print(f"{str(theta):>16}: {cf}")

print()
print("=" * 70)
print("Round trips are exact equalities of canonical forms")
print("=" * 70)
theta = parse_theta("(7-3*sqrt(13))/11")
cf = cf_expand(theta)
back = cf_value(cf)
print(f"theta       = {theta}")
print(f"expansion   = {cf}")
print(f"cf_value    = {back}")
print(f"exact match = {back == theta}")

print()
print("=" * 70)
print("Equivalence under integer fractional-linear maps of determinant +-1")
print("=" * 70)
golden = parse_theta("(1+sqrt(5))/2")
cases = [
    (golden, parse_theta("(-1+sqrt(5))/2")),   # 1/golden
    (golden, parse_theta("sqrt(5)")),          # different conductor
    (parse_theta("sqrt(10)"), parse_theta("(-2+sqrt(10))/2")),
]
for t1, t2 in cases:
    verdict = "equivalent" if gl2z_equivalent(t1, t2) else "inequivalent"
    print(f"{str(t1):>14}  vs  {str(t2):<16} -> {verdict}")
    print(f"{'':>14}  periods {cf_expand(t1).period} vs {cf_expand(t2).period}")
