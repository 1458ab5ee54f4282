"""
The Steinberg module of sl2 in characteristic 3
================================================

Build the baby Verma modules Z(lambda) of u_0(sl2) over F_3, compute the
scalar R by which e^2 f^2 acts on the maximal vector, and compare with
the Norton simplicity verdict.
"""

from parind import build_chevalley, build_induced, build_levi_simple, build_root_system, make_field, norton_test, parabolic
from parind.induce import compute_R_direct
from parind.pbw import PChar
from parind.rootsys import Weight

F = make_field(3)
cb = build_chevalley(build_root_system("A1"), F)
par = parabolic(cb.rs, [])  # I = {} : the Borel
chi = PChar.zero(cb)

###############################################################################
# Only lambda = p - 1 gives R != 0, and that module is simple.

for lam in range(3):
    L = build_levi_simple(cb, par, chi, Weight.of(F, [lam]))
    Z = build_induced(cb, par, chi, L)
    verdict = norton_test(Z.Z)
    print(f"lambda={lam}  dim Z={Z.dim}  R={compute_R_direct(Z)}  {verdict.verdict}", end="")
    print(f"  (submodule of dim {verdict.witness_dim})" if not verdict.simple else "")

###############################################################################
# The matrices themselves: f acts by shifting, e by m(lambda - m + 1).

Z = build_induced(cb, par, chi, build_levi_simple(cb, par, chi, Weight.of(F, [2])))
for name in ("e[a1]", "f[a1]", "h1"):
    print(name)
    print(Z.Z.matrix(name))
