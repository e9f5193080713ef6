"""
Duality between fil_m H^1 and K^x / (K^x)^(p^n) U^m
===================================================

For each m we enumerate every character of Matsuda level <= m and every
element of the finite quotient group, evaluate the full pairing matrix,
and check that it is nondegenerate on both sides.
"""

from aswitt import build_unit_quot, finite_field, orthogonality_report

F4 = finite_field(2, 2)

report = orthogonality_report(F4, 2, 4)
print(" m  |fil_m H^1|  |G_{2,m}|  perfect  orthogonal")
for r in report["records"]:
    print(f"{r['m']:2d}  {r['h1_order']:10d}  {r['g_order']:8d}  {str(r['perfect']):7s}  {r['orthogonality']}")

# the group side on its own: generators of G_{2,3} over F_4
G = build_unit_quot(F4, 2, 3)
print("\nG_{2,3} has order", G.order, "and generators", [G.format_element(g) for g in G.generators()])
