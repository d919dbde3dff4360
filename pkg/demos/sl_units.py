"""Walk through a small extension whose two rings have the same units.

Run with ``python3 demos/sl_units.py``.
"""

from ringlab import build, intermediate_rings, prime_subring, units
from ringlab.extensions import analyze, is_SL
from ringlab.poly import cyclotomic_sl_construction

S = build("Z/2 * Z/2 * Z/2")
F = prime_subring(S)
print(f"S = {S.name}, |S| = {S.size}, |U(S)| = {len(units(S))}")
print(f"prime subring has {F.size} elements and SL = {is_SL(F)}")

lat = intermediate_rings(F)
print(f"{len(lat)} intermediate rings with sizes {[m.size for m in lat.members]}")

report = analyze(F)
for key in ("SL", "seminormal", "t_closed", "infra_integral", "sl_defect"):
    print(f"  {key}: {getattr(report, key)}")

print()
for p in (3, 5):
    c = cyclotomic_sl_construction(p)
    print(f"p = {p}: |U(R)| = {len(units(c.R))}, |U(S)| = {len(units(c.S))}, SL = {c.report.SL}")
