"""Tour of exact p-adic arithmetic with honest precision tracking.

Run:  python3 demos/padic_precision.py
"""

from fractions import Fraction

from adelics import PadicNumber

print("== p-adic numbers as unit * p^val, tracked modulo p^(val+k) ==\n")

x = PadicNumber.from_int(2, 5, 3)
print(f"2 in Z_5 at 3 digits:        {x}")
print(f"its inverse:                 {x.inverse()}   (2 * 63 = 126 = 1 mod 125)\n")

a = PadicNumber.from_fraction(Fraction(3, 4), 2, 8)
print(f"3/4 in Q_2:                  {a}")
print(f"2-adic fractional part:      {a.frac_part()}\n")

print("== precision shrinks when leading digits cancel ==\n")
u = PadicNumber.from_int(3, 2, 5)
v = PadicNumber.from_int(5, 2, 5)
s = u + v
print(f"(3) + (5) over Z_2, k=5:     {s}")
print(f"  8 = 2^3: three digits of relative precision were consumed,")
print(f"  so the unit is only known to k={s.k}\n")

w = PadicNumber.from_int(1, 2, 4) + PadicNumber.from_int(15, 2, 4)
print(f"(1) + (15) over Z_2, k=4:    {w}")
print("  1 + 15 = 16 = 0 mod 2^4 -- indistinguishable from zero at this precision\n")

print("== equality is congruence to the shared precision ==\n")
p1 = PadicNumber.from_int(7, 3, 6)
p2 = PadicNumber.from_int(7 + 3**6, 3, 6)
print(f"7 and 7+3^6 at 6 digits agree: {p1.agrees_with(p2)}")
p3 = PadicNumber.from_int(7 + 3**2, 3, 6)
print(f"7 and 7+3^2 at 6 digits agree: {p1.agrees_with(p3)}")
