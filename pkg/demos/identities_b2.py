"""
Operator identities in the reduced enveloping algebra of B2
===========================================================

Run the identity suite behind the simplicity criterion for the parabolic
I = {2} of B2 at p = 3, with chi the standard Levi form on alpha_1.
"""

from parind import algebra, build_chevalley, build_root_system, make_field, parabolic
from parind.identities import run_identity_suite
from parind.pbw import PChar, parabolic_order

cb = build_chevalley(build_root_system("B2"), make_field(3))
par = parabolic(cb.rs, [2])
chi = PChar.standard_levi(cb, [1])

for r in run_identity_suite(cb, par, chi):
    print(r.line())

###############################################################################
# A single normal form: E F in the parabolic PBW order.

alg = algebra(cb, chi, parabolic_order(cb, par))
E = [cb.e(b) for b in par.complement for _ in range(2)]
Fw = [cb.f(b) for b in par.complement for _ in range(2)]
EF = alg.word(E + Fw)
print(f"E F has {len(EF)} PBW terms; scalar part {EF.scalar_part()}")
