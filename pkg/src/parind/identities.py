"""Executable checks of the operator identities behind the simplicity theorem.

Each check returns an :class:`IdentityResult`; a failure carries the first
counterexample found.  Algebra-level checks use PBW normal forms, module
level checks use the matrices of Z_I^chi(lambda).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .chevalley import ChevalleyBasis
from .induce import build_induced, build_levi_simple, compatible_weights, compute_R_direct, compute_R_pbw
from .pbw import PBWAlgebra, PChar, algebra, insertion_check, parabolic_order
from .rootsys import ParabolicData, is_closed


@dataclass
class IdentityResult:
    name: str
    passed: bool
    vacuous: bool = False
    checked: int = 0
    counterexample: str | None = None

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        extra = " (vacuous)" if self.vacuous else ""
        msg = f"{tag} {self.name}: {self.checked} cases{extra}"
        if self.counterexample:
            msg += f"\n    counterexample: {self.counterexample}"
        return msg

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "vacuous": self.vacuous,
            "checked": self.checked,
            "counterexample": self.counterexample,
        }


def _E_word(cb, par, p):
    return [cb.e(b) for b in par.complement for _ in range(p - 1)]


def _F_word(cb, par, p):
    return [cb.f(b) for b in par.complement for _ in range(p - 1)]


def check_insertion(cb: ChevalleyBasis, subsets: dict, max_orderings: int = 24) -> IdentityResult:
    """Inserting e_{alpha_k} into a top-exponent e-word of a closed subset gives 0."""
    alg = algebra(cb)
    p = cb.F.p
    rs = cb.rs
    n = 0
    for label, S in subsets.items():
        if not S:
            continue
        if not is_closed(rs, S):
            return IdentityResult("insertion_vanishing", False, checked=n, counterexample=f"{label} is not closed")
        for ordering in itertools.islice(itertools.permutations(S), max_orderings):
            for k in range(len(ordering)):
                h = rs.heights[ordering[k]]
                free = [j for j, b in enumerate(ordering) if rs.heights[b] < h]
                for low in itertools.product(range(p), repeat=len(free)):
                    exps = [p - 1] * len(ordering)
                    for j, a in zip(free, low):
                        exps[j] = a
                    n += 1
                    if not insertion_check(alg, ordering, k, exps):
                        names = [rs.name_of(b) for b in ordering]
                        return IdentityResult(
                            "insertion_vanishing", False, checked=n,
                            counterexample=f"S={label} ordering={names} k={k} exponents={exps}",
                        )
    return IdentityResult("insertion_vanishing", True, checked=n)


def check_levi_commutes_with_E(cb: ChevalleyBasis, par: ParabolicData) -> list[IdentityResult]:
    alg = algebra(cb)
    p = cb.F.p
    E = alg.word(_E_word(cb, par, p))
    out = []
    for side, name in ((cb.e, "levi_e_commutes_with_E"), (cb.f, "levi_f_commutes_with_E")):
        n = 0
        bad = None
        for a in par.phi_I_plus:
            n += 1
            br = alg.bracket(alg.gen(side(a)), E)
            if not br.is_zero():
                bad = f"[{cb.names[side(a)]}, E] = {br}"
                break
        out.append(IdentityResult(name, bad is None, vacuous=not par.phi_I_plus, checked=n, counterexample=bad))
    return out


def check_h_commutes(cb: ChevalleyBasis, par: ParabolicData, chi: PChar) -> IdentityResult:
    alg = algebra(cb, chi)
    p = cb.F.p
    EF = alg.word(_E_word(cb, par, p) + _F_word(cb, par, p))
    for i in range(cb.rank):
        br = alg.bracket(alg.gen(cb.h(i)), EF)
        if not br.is_zero():
            return IdentityResult("h_commutes_with_EF", False, checked=i + 1, counterexample=f"[h{i + 1}, EF] = {br}")
    return IdentityResult("h_commutes_with_EF", True, checked=cb.rank)


def check_f_support(cb: ChevalleyBasis, par: ParabolicData, chi: PChar) -> IdentityResult:
    """f_{beta_j} times a monomial in f_{beta_s..beta_k} stays in that span."""
    alg = algebra(cb, chi, parabolic_order(cb, par))
    p, k = cb.F.p, par.k
    n = 0
    for s in range(k):
        for tail in itertools.product(range(p), repeat=k - s):
            mono = (0,) * s + tail + (0,) * (alg.n - k)
            for j in range(s, k):
                n += 1
                res = alg._gen_times(alg.pos[cb.f(par.complement[j])], mono)
                for m in res:
                    if any(m[:s]) or any(m[k:]):
                        return IdentityResult(
                            "f_support_closed", False, checked=n,
                            counterexample=f"s={s + 1} j={j + 1} tail={tail} -> {alg.format_mono(m)}",
                        )
    return IdentityResult("f_support_closed", True, vacuous=k == 0, checked=n)


def check_exponent_drop(cb: ChevalleyBasis, par: ParabolicData, chi: PChar) -> list[IdentityResult]:
    """[e_alpha, F] and [f_alpha, F] (alpha in I) lie in u_chi(u') below the top monomial."""
    alg = algebra(cb, chi, parabolic_order(cb, par))
    p, k = cb.F.p, par.k
    Fel = alg.word(_F_word(cb, par, p))
    out = []
    for side, name in ((cb.e, "e_bracket_lowers_F"), (cb.f, "f_bracket_lowers_F")):
        bad = None
        n = 0
        for a in par.levi_simple:
            n += 1
            br = alg.bracket(alg.gen(side(a)), Fel)
            for m in br.terms:
                if any(m[k:]):
                    bad = f"[{cb.names[side(a)]}, F] leaves u_chi(u'): {alg.format_mono(m)}"
                elif all(x == p - 1 for x in m[:k]):
                    bad = f"[{cb.names[side(a)]}, F] contains the top monomial"
                if bad:
                    break
            if bad:
                break
        out.append(IdentityResult(name, bad is None, vacuous=not par.levi_simple, checked=n, counterexample=bad))
    return out


def check_positive_e_part(cb: ChevalleyBasis, par: ParabolicData, chi: PChar, restricted: bool = True) -> IdentityResult:
    """Every monomial of E f^l (l below top) carries some complement e."""
    order = parabolic_order(cb, par)
    alg = algebra(cb, chi, order) if restricted else PBWAlgebra(cb, chi, order, restricted=False)
    p, k = cb.F.p, par.k
    start = alg.n - k
    E = alg.word(_E_word(cb, par, p))
    name = "positive_e_part" + ("" if restricted else "_U(g)")
    n = 0
    for l in itertools.product(range(p), repeat=k):
        if all(x == p - 1 for x in l):
            continue
        n += 1
        word = [cb.f(b) for b, a in zip(par.complement, l) for _ in range(a)]
        x = alg.mul(E, alg.word(word))
        for m in x.terms:
            if not any(m[start:]):
                return IdentityResult(name, False, checked=n, counterexample=f"l={l}: term {alg.format_mono(m)}")
    return IdentityResult(name, True, vacuous=k == 0, checked=n)


def check_module_identities(cb: ChevalleyBasis, par: ParabolicData, chi: PChar, weights=None) -> list[IdentityResult]:
    """EF acts on 1 (x) L by R (two routes), E kills lower layers, EF commutes with the Levi."""
    F, p = cb.F, cb.F.p
    weights = list(weights) if weights is not None else list(compatible_weights(cb, chi))
    res6 = IdentityResult("EF_scalar_on_top", True)
    res8 = IdentityResult("E_kills_lower_layers", True)
    res9 = IdentityResult("EF_commutes_with_levi", True, vacuous=not par.levi_simple)
    for lam in weights:
        L = build_levi_simple(cb, par, chi, lam)
        Zm = build_induced(cb, par, chi, L)
        res6.checked += 1
        try:
            r1, r2 = compute_R_direct(Zm), compute_R_pbw(Zm)
            if r1 != r2:
                res6.passed = False
                res6.counterexample = f"lambda={lam.labels()}: matrices give {r1}, normal form gives {r2}"
        except Exception as exc:  # noqa: BLE001 - any failure is a counterexample here
            res6.passed = False
            res6.counterexample = f"lambda={lam.labels()}: {exc}"
        E = Zm.E()
        EF = F.matmul(E, Zm.Fop())
        for l in itertools.product(range(p), repeat=par.k):
            if all(x == p - 1 for x in l):
                continue
            for j in range(L.dim):
                res8.checked += 1
                if np.any(E[:, Zm.index(l, j)]) and res8.passed:
                    res8.passed = False
                    res8.counterexample = f"lambda={lam.labels()} l={l} j={j}"
        for a in par.levi_simple:
            for side in (cb.e, cb.f):
                nm = cb.names[side(a)]
                Lx = L.M.matrix(nm)
                for j in range(L.dim):
                    res9.checked += 1
                    v = np.zeros(Zm.dim, dtype=np.int64)
                    v[Zm.index((0,) * par.k, j)] = 1
                    lhs = F.matmul(Zm.Z.matrix(nm), F.matmul(EF, v))
                    u = np.zeros(Zm.dim, dtype=np.int64)
                    for jj in range(L.dim):
                        u[Zm.index((0,) * par.k, jj)] = Lx[jj, j]
                    rhs = F.matmul(EF, u)
                    if not np.array_equal(lhs, rhs) and res9.passed:
                        res9.passed = False
                        res9.counterexample = f"lambda={lam.labels()} {nm} v_{j}"
    return [res6, res8, res9]


def run_identity_suite(cb: ChevalleyBasis, par: ParabolicData, chi: PChar, weights=None, unrestricted_2_7: bool = True) -> list[IdentityResult]:
    rs = cb.rs
    subsets = {"complement": par.complement, "Phi+": tuple(range(rs.n_pos))}
    results = [check_insertion(cb, subsets)]
    results += check_levi_commutes_with_E(cb, par)
    results.append(check_f_support(cb, par, chi))
    results += check_exponent_drop(cb, par, chi)
    results.append(check_positive_e_part(cb, par, chi))
    if unrestricted_2_7:
        results.append(check_positive_e_part(cb, par, chi, restricted=False))
    results.append(check_h_commutes(cb, par, chi))
    results += check_module_identities(cb, par, chi, weights)
    return results
