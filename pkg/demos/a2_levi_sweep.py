"""
Sweeping weights for A2 with a standard Levi form
=================================================

Certificates for Z_I^chi(lambda) with I = {1} and chi nonzero on f_{alpha_2},
over all restricted weights at p = 3, plus the fitted constant c.
"""

from parind import build_chevalley, build_root_system, certify, compatible_weights, fit_c, make_field, parabolic
from parind.pbw import PChar

cb = build_chevalley(build_root_system("A2"), make_field(3))
par = parabolic(cb.rs, [1])
chi = PChar.standard_levi(cb, [2])
print("complement:", [cb.rs.name_of(b) for b in par.complement])

certs = [certify(cb, par, chi, lam) for lam in compatible_weights(cb, chi)]
for c in certs:
    factors = ", ".join(str(x) for x in c.R_factors)
    print(f"lambda={c.lam.labels()}  dim L={c.dim_L}  dim Z={c.dim_Z}  R={c.R_direct}  factors=[{factors}]  {c.verdict.verdict}  {c.theorem_status}")

###############################################################################
# R vanishes exactly where the product of factors does; the ratio is constant.

print("fitted c =", fit_c(certs))
