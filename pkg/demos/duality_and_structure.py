"""Character pairings, annihilators, and canonical decomposition of
symbolic locally compact Z[1/S]-modules.

Run:  python3 demos/duality_and_structure.py
"""

import json
from fractions import Fraction

from adelics import (
    Character,
    PadicNumber,
    PadicSubgroup,
    PrimeSet,
    SubgroupDescriptor,
    annihilator,
    classify,
    decompose_first,
    dual,
    format_expr,
    orthogonal,
    parse_expr,
)
from adelics.cli import full_report
from adelics.structure import padic_field

print("== character pairings land on the circle, exactly ==\n")
chi = Character(padic_field(2), PadicNumber.from_fraction(Fraction(3, 8), 2, 8))
print(f"<3/8, 1> over Q_2:          {chi.pair(1)}")
print(f"<3/8, 2> over Q_2:          {chi.pair(2)}")
print(f"(chi^3)(1) = chi(3):        {chi.act(3).pair(1)} == {chi.pair(3)}\n")

print("== annihilator calculus on the subgroup lattice of Q_p ==\n")
h = SubgroupDescriptor((PadicSubgroup.power(2, 2),))
print(f"H = {h}:   A(H) = {annihilator(h)},   orth(A(H)) = {orthogonal(annihilator(h))}")
print(f"H compact: {h.is_compact};  A(H) open: {annihilator(h).is_open}\n")

print("== classification and duality of module expressions ==\n")
sigma = PrimeSet.finite([2, 3])
e = parse_expr("R^2 x Qp(2) x Qp(5) x Zp(7) x ZS^3 x Sol", sigma)
print(f"E    = {format_expr(e)}   over {sigma}")
print(f"E^   = {format_expr(dual(e))}")
r = classify(e)
print(f"compactly generated: {r.compactly_generated},  nss: {r.nss}\n")

print("== first canonical form: adelic part x residue with witness ==\n")
d = decompose_first(e)
print(f"adelic ranks:  n = {d.real_rank},  n_p = {d.padic_ranks}")
print(f"residue N:     {format_expr(d.n_part)}")
print(f"witness:       {format_expr(d.compact_open_witness)}\n")

print("== the full JSON report (same payload as the CLI) ==\n")
print(json.dumps(full_report(parse_expr("Qp(5)", PrimeSet.finite([2]))), indent=2))
