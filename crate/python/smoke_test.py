"""Smoke test for the pyorbifold extension.

Build and run:
    cargo build -p orbifold-index-py --features extension-module
    cp target/debug/libpyorbifold.so python/pyorbifold.so
    python3 python/smoke_test.py
"""

from fractions import Fraction

import pyorbifold as po

assert po.correction_sum(3) == {"e": Fraction(-1), "h": Fraction(-8, 9)}
for p in range(2, 12):
    assert po.correction_sum(p) == po.correction_sum_closed_form(p), p

assert po.index_kawasaki(2, 0, 1, -2, 3) == 19
assert po.index_kawasaki(2, 0, 1, -2, 7, "sd") == po.index_closed_form(2, 0, 1, -2, 7, "sd") == 3
assert po.index_smooth(4, 0) == 30
assert po.chi_orb(2, Fraction(1, 3), 2) == Fraction(2, 3)
assert po.tau_orb(0, Fraction(1, 3), 1) == Fraction(-8, 27)
assert po.ricci_flat_moduli_dim(24, -16, 2, -4) == 44

h = po.hitchin(5)
assert (h["index"], h["verdict"]) == (3, "rigid")
assert po.lebrun(5, 3)["moduli_dimension"] == 9
assert po.surfaces(2)["feasible"] == [-4]
assert po.trig_sums(5)["sum_inv_one_minus_cos"] == 4
assert po.verify(6)["passed"]

z = po.Cyclotomic.zeta(7, 1)
c = z + z.conjugate()
assert c == po.Cyclotomic.cos(7, 1) * po.Cyclotomic.from_fraction(7, Fraction(2))
assert (c * c.inverse()).to_fraction() == 1
assert (z * z.conjugate()).to_fraction() == 1
assert z.to_fraction() is None

for bad in (lambda: po.index_closed_form(2, 0, 1, -2, 1), lambda: po.chi_orb(2, Fraction(0), 1)):
    try:
        bad()
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")
try:
    po.Cyclotomic(5, [0, 0, 0, 0]).inverse()
except (ValueError, ZeroDivisionError):
    pass
else:
    raise AssertionError("zero has no inverse")

print("pyorbifold smoke test passed")
