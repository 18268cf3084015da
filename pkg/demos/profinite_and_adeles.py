"""Profinite integers in factorial base, CRT lifting, and adeles in
(1/s)*z normal form.

Run:  python3 demos/profinite_and_adeles.py
"""

from fractions import Fraction

from adelics import FiniteAdele, PadicNumber, PrimeSet, ProfiniteInt, idempotent

print("== factorial-base digits: x = sum c_i * i! with 0 <= c_i <= i ==\n")
for n in (5, 23, -1):
    x = ProfiniteInt.from_int(n, 4)
    print(f"  {n:>3} at level 4:  {x}   (residue {x.residue} mod 5!)")
print()

print("== CRT lifting and Z_q coordinates ==\n")
x = ProfiniteInt.from_residues([(1, 2), (2, 3)], level=3)
print(f"lift of (1 mod 2, 2 mod 3): residue {x.to_residue(6)} mod 6")
y = ProfiniteInt.from_int(24, 10)
print(f"2-adic coordinate of 24:    {y.component_at(2, 6)}\n")

print("== finite adeles: every element is (1/s) * integral vector ==\n")
sigma = PrimeSet.finite([2, 3])
a = FiniteAdele.make({
    2: PadicNumber.from_fraction(Fraction(3, 4), 2, 8),
    3: PadicNumber.from_fraction(Fraction(1, 3), 3, 8),
}, sigma)
print(f"(x_2, x_3) = (3/4, 1/3) over Sigma = {{2,3}}:")
print(f"  s = {a.s}  (minimal: 4 from the 2-part, 3 from the 3-part)")
print(f"  z_2 = {a.parts[2].residue(4)} mod 16,  z_3 = {a.parts[3].residue(3)} mod 27")
print(f"  project back at 2: {a.project(2)}\n")

print("== idempotents split the ring along its primes ==\n")
e2, e3 = idempotent(2, sigma), idempotent(3, sigma)
total = e2 + e3
print(f"e_2 + e_3 is integral with s = {total.s}; (e_2)^2 = e_2 and e_2*e_3 = 0:")
sq = e2 * e2
prod = e2 * e3
print(f"  e_2^2 agrees with e_2 at 2: {sq.project(2).agrees_with(e2.project(2))}")
print(f"  e_2*e_3 vanishes at both:   "
      f"{prod.project(2).is_zero and prod.project(3).is_zero}\n")

print("== all-primes mode: a profinite tail plus finitely many overrides ==\n")
ALL = PrimeSet.all_primes()
d = FiniteAdele.diagonal(Fraction(5, 6), ALL, prec=4)
print(f"diagonal 5/6:  s = {d.s}, materialized primes {sorted(d.overrides)}")
print(f"  component at 7 (from the tail): {d.project(7, 2)}")
e = d + FiniteAdele.diagonal(Fraction(1, 6), ALL, prec=4)
print(f"after adding diagonal 1/6:  s = {e.s}  (5/6 + 1/6 = 1 is integral)")
