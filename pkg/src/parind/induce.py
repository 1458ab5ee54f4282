"""Induced modules Z_I^chi(lambda) and the simplicity invariant R.

Pipeline: the Levi's baby Verma module on a weight-lambda line is chopped
down to a simple head L (the Levi simple module, with u acting as zero),
then ``Z = u_chi(g) (x)_{u_chi(p_I)} L`` is realised on the basis
``f_{beta_1}^{l_1} ... f_{beta_k}^{l_k} (x) v_j``.  R is read off by
applying ``E F`` to the maximal vector and is compared with the product
``prod_i [(lambda + rho)(h_{beta_i})^(p-1) - 1]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from . import linalg
from .chevalley import ChevalleyBasis
from .errors import IncompatibleWeight, InconsistentConstant, NoNonvanishingPoint, NotScalarMultiple
from .gfield import Field, FieldElement
from .pbw import PBWAlgebra, PChar, algebra, jordan_split, parabolic_order
from .repmod import MatrixModule, SimplicityVerdict, maximal_submodule_avoiding, norton_test, quotient_module
from .rootsys import ParabolicData, Weight, pair_lambda_rho

CONFIRMED = "confirmed"
NO_CLAIM = "no_claim"
VIOLATION = "violation"


@dataclass
class LeviSimple:
    M: MatrixModule
    maximal_vector: int
    lam: Weight
    par: ParabolicData
    chi: PChar

    @property
    def dim(self) -> int:
        return self.M.dim


@dataclass
class InducedModule:
    Z: MatrixModule
    L: LeviSimple
    par: ParabolicData
    chi: PChar
    cb: ChevalleyBasis

    @property
    def lam(self) -> Weight:
        return self.L.lam

    @property
    def dim(self) -> int:
        return self.Z.dim

    @property
    def k(self) -> int:
        return self.par.k

    def index(self, l, j: int) -> int:
        """Basis index of ``f^l (x) v_j``."""
        p = self.cb.F.p
        lin = 0
        for a in l:
            lin = lin * p + a
        return lin * self.L.dim + j

    def maximal_vector(self) -> int:
        return self.index((0,) * self.k, self.L.maximal_vector)

    def E(self) -> np.ndarray:
        F, p = self.cb.F, self.cb.F.p
        mats = [linalg.matpow(F, self.Z.matrix(self.cb.names[self.cb.e(b)]), p - 1) for b in self.par.complement]
        return reduce(F.matmul, mats, np.eye(self.dim, dtype=np.int64))

    def Fop(self) -> np.ndarray:
        F, p = self.cb.F, self.cb.F.p
        mats = [linalg.matpow(F, self.Z.matrix(self.cb.names[self.cb.f(b)]), p - 1) for b in self.par.complement]
        return reduce(F.matmul, mats, np.eye(self.dim, dtype=np.int64))


@dataclass
class Certificate:
    type_label: str
    rank: int
    p: int
    m: int
    I: tuple
    chi: str
    lam: Weight
    seed: int
    chop_seed: int
    R_direct: FieldElement
    R_factors: list
    verdict: SimplicityVerdict | None
    theorem_status: str
    dim_Z: int
    dim_L: int
    k: int
    fitted_c: FieldElement | None = None
    extra: dict = field(default_factory=dict)

    @property
    def R_product(self) -> FieldElement:
        F = self.R_direct.field
        return reduce(lambda a, b: a * b, self.R_factors, F(1))

    @property
    def simple(self) -> bool | None:
        return None if self.verdict is None else self.verdict.simple

    def to_json(self) -> dict:
        return {
            "lambda": self.lam.labels(),
            "R_direct": str(self.R_direct),
            "R_factors": [str(x) for x in self.R_factors],
            "simple": self.simple,
            "witness_dim": None if self.verdict is None else self.verdict.witness_dim,
            "status": self.theorem_status,
            "dim_Z": self.dim_Z,
            "dim_L": self.dim_L,
        }


def check_compatible(cb: ChevalleyBasis, chi: PChar, lam: Weight):
    F = cb.F
    for i in range(cb.rank):
        x = lam.values[i]
        lhs = F.sub(F.pow(x, F.p), x)
        rhs = F.pow(chi.values[cb.h(i)], F.p)
        if lhs != rhs:
            raise IncompatibleWeight(
                f"lambda(h{i + 1})^p - lambda(h{i + 1}) = {F.format(lhs)} but chi(h{i + 1})^p = {F.format(rhs)}"
            )


def compatible_values(F: Field, chi_h: int) -> list[int]:
    """All x in F with x^p - x = chi_h^p (empty when none exist)."""
    target = F.pow(chi_h, F.p)
    return [x for x in range(F.q) if F.sub(F.pow(x, F.p), x) == target]


def _levi_gens(cb: ChevalleyBasis, par: ParabolicData) -> list[int]:
    gens = []
    for b in par.levi_simple:
        gens += [cb.e(b), cb.f(b)]
    return gens + [cb.h(i) for i in range(cb.rank)]


def _simple_gens(cb: ChevalleyBasis) -> list[int]:
    gens = []
    for i in range(1, cb.rank + 1):
        b = cb.rs.simple(i)
        gens += [cb.e(b), cb.f(b)]
    return gens + [cb.h(i) for i in range(cb.rank)]


def _root_vector_matrices(cb: ChevalleyBasis, mats: dict, roots) -> dict:
    """Matrices of e_xi and f_xi for non-simple xi, bracketed from lower roots.

    ``[e_a, e_b] = c e_xi`` along the extraspecial pair, likewise for f.
    """
    F = cb.F
    pairs = cb.extraspecial_pairs()
    out = {}
    for xi in sorted(roots, key=lambda r: cb.rs.heights[r]):
        if cb.rs.heights[xi] == 1:
            continue
        a, b = pairs[xi]
        for side in (cb.e, cb.f):
            na, nb, nx = cb.names[side(a)], cb.names[side(b)], cb.names[side(xi)]
            c = cb.bracket_basis(side(a), side(b))[side(xi)]
            A = mats.get(na, out.get(na))
            B = mats.get(nb, out.get(nb))
            out[nx] = F.vmul(np.int64(F.inv(c)), linalg.commutator(F, A, B))
    return out


def _pbw_algebra(cb, par, chi) -> PBWAlgebra:
    return algebra(cb, chi, parabolic_order(cb, par))


def levi_baby_verma(cb: ChevalleyBasis, par: ParabolicData, chi: PChar, lam: Weight) -> MatrixModule:
    """Levi module induced from the weight-lambda line of its Borel."""
    check_compatible(cb, chi, lam)
    F, p = cb.F, cb.F.p
    alg = _pbw_algebra(cb, par, chi)
    levi = par.phi_I_plus
    k = par.k
    s = len(levi)
    nh = cb.rank
    monos = list(itertools.product(range(p), repeat=s))
    index = {a: t for t, a in enumerate(monos)}
    dim = len(monos)
    mats = {}
    for g in _levi_gens(cb, par):
        A = np.zeros((dim, dim), dtype=np.int64)
        pos = alg.pos[g]
        for a in monos:
            mono = (0,) * k + a + (0,) * (nh + 2 * cb.n_pos - k - s)
            for res, c in alg._gen_times(pos, mono).items():
                if any(res[k + s + nh :]) or any(res[:k]):
                    continue
                val = c
                for i, b in enumerate(res[k + s : k + s + nh]):
                    if b:
                        val = F.mul(val, F.pow(lam.values[i], b))
                if val:
                    row = index[res[k : k + s]]
                    A[row, index[a]] = F.add(int(A[row, index[a]]), val)
        mats[cb.names[g]] = A
    labels = [tuple(a) for a in monos]
    return MatrixModule(F, dim, mats, labels, 0)


def build_levi_simple(cb: ChevalleyBasis, par: ParabolicData, chi: PChar, lam: Weight, chop_seed: int = 0) -> LeviSimple:
    V = levi_baby_verma(cb, par, chi, lam)
    if V.dim > 1:
        K = maximal_submodule_avoiding(V, 0, seed=chop_seed)
        L = quotient_module(V, K, keep=0)
    else:
        L = V
    L.extra.update(_root_vector_matrices(cb, L.action, par.phi_I_plus))
    return LeviSimple(L, L.distinguished, lam, par, chi)


def build_induced(cb: ChevalleyBasis, par: ParabolicData, chi: PChar, L: LeviSimple) -> InducedModule:
    F, p = cb.F, cb.F.p
    alg = _pbw_algebra(cb, par, chi)
    k, s, nh = par.k, len(par.phi_I_plus), cb.rank
    dL = L.dim
    words = list(itertools.product(range(p), repeat=k))
    n = len(words) * dL
    Lmats = L.M.all_matrices()
    levi_order = alg.order[k : k + s + nh + s]
    eye = np.eye(dL, dtype=np.int64)
    cache: dict = {}

    def levi_matrix(part):
        hit = cache.get(part)
        if hit is None:
            hit = eye
            for idx, a in zip(levi_order, part):
                if a:
                    hit = F.matmul(hit, linalg.matpow(F, Lmats[cb.names[idx]], a))
            cache[part] = hit
        return hit

    def lin(a):
        t = 0
        for x in a:
            t = t * p + x
        return t

    mats = {}
    tail = (0,) * (s + nh + 2 * cb.n_pos - k)
    for g in _simple_gens(cb):
        A = np.zeros((n, n), dtype=np.int64)
        pos = alg.pos[g]
        for l in words:
            col = lin(l) * dL
            for res, c in alg._gen_times(pos, l + tail).items():
                if any(res[k + s + nh + s :]):
                    continue
                P = levi_matrix(res[k : k + s + nh + s])
                row = lin(res[:k]) * dL
                blk = A[row : row + dL, col : col + dL]
                A[row : row + dL, col : col + dL] = F.vadd(blk, F.vmul(np.int64(c), P))
        mats[cb.names[g]] = A
    Z = MatrixModule(F, n, mats, [(w, j) for w in words for j in range(dL)], None)
    Z.extra.update(_root_vector_matrices(cb, mats, range(cb.n_pos)))
    Zm = InducedModule(Z, L, par, chi, cb)
    Z.distinguished = Zm.maximal_vector()
    return Zm


def compute_R_direct(Zm: InducedModule) -> FieldElement:
    """Scalar by which E F acts on the maximal vector 1 (x) v_lambda."""
    F, p, cb = Zm.cb.F, Zm.cb.F.p, Zm.cb
    v0 = Zm.maximal_vector()
    w = Zm.Z.unit(v0)
    for side in (cb.f, cb.e):
        for b in reversed(Zm.par.complement):
            A = Zm.Z.matrix(cb.names[side(b)])
            for _ in range(p - 1):
                w = F.matmul(A, w)
    R = int(w[v0])
    w[v0] = 0
    if np.any(w):
        raise NotScalarMultiple(
            f"E F (1 (x) v_lambda) has support off the maximal vector at indices {np.nonzero(w)[0][:10].tolist()}"
        )
    return FieldElement(F, R)


def compute_R_pbw(Zm: InducedModule) -> FieldElement:
    """R from the normal form of E F in u_chi(g), acting on v_lambda through L."""
    cb, F, p = Zm.cb, Zm.cb.F, Zm.cb.F.p
    par = Zm.par
    alg = _pbw_algebra(cb, par, Zm.chi)
    word = [cb.e(b) for b in par.complement for _ in range(p - 1)] + [cb.f(b) for b in par.complement for _ in range(p - 1)]
    EF = alg.word(word)
    k, s, nh = par.k, len(par.phi_I_plus), cb.rank
    Lmats = Zm.L.M.all_matrices()
    v = Zm.L.M.unit(Zm.L.maximal_vector)
    acc = np.zeros(Zm.L.dim, dtype=np.int64)
    for mono, c in EF.terms.items():
        if any(mono[:k]) or any(mono[k + s + nh + s :]):
            continue
        w = v
        for pos in reversed(range(k, k + s + nh + s)):
            for _ in range(mono[pos]):
                w = F.matmul(Lmats[cb.names[alg.order[pos]]], w)
        acc = F.vadd(acc, F.vmul(np.int64(c), w))
    R = int(acc[Zm.L.maximal_vector])
    acc[Zm.L.maximal_vector] = 0
    if np.any(acc):
        raise NotScalarMultiple("normal form of E F moves v_lambda off its line")
    return FieldElement(F, R)


def compute_R_factors(rs, par: ParabolicData, lam: Weight) -> list[FieldElement]:
    p = lam.field.p
    return [pair_lambda_rho(rs, lam, b) ** (p - 1) - 1 for b in par.complement]


def certify(cb: ChevalleyBasis, par: ParabolicData, chi: PChar, lam: Weight, seed: int = 0, chop_seed: int = 0, check_simple: bool = True) -> Certificate:
    L = build_levi_simple(cb, par, chi, lam, chop_seed=chop_seed)
    Zm = build_induced(cb, par, chi, L)
    R = compute_R_direct(Zm)
    factors = compute_R_factors(cb.rs, par, lam)
    verdict = norton_test(Zm.Z, seed=seed) if check_simple else None
    if R.is_zero():
        status = NO_CLAIM
    elif verdict is None or verdict.simple:
        status = CONFIRMED
    else:
        status = VIOLATION
    return Certificate(
        type_label=cb.rs.type_label,
        rank=cb.rs.rank,
        p=cb.F.p,
        m=cb.F.m,
        I=tuple(sorted(par.I)),
        chi=chi.spec(),
        lam=lam,
        seed=seed,
        chop_seed=chop_seed,
        R_direct=R,
        R_factors=factors,
        verdict=verdict,
        theorem_status=status if check_simple else (NO_CLAIM if R.is_zero() else "unchecked"),
        dim_Z=Zm.dim,
        dim_L=L.dim,
        k=par.k,
    )


def fit_c(certs) -> FieldElement:
    """The common ratio R_direct / prod(factors) over a sweep.

    Also asserts that R_direct and the product vanish at the same points.
    """
    c = None
    for cert in certs:
        prod = cert.R_product
        if cert.R_direct.is_zero() != prod.is_zero():
            raise InconsistentConstant(f"vanishing mismatch at lambda={cert.lam.labels()}: R={cert.R_direct}, product={prod}")
        if cert.R_direct.is_zero():
            continue
        ratio = cert.R_direct / prod
        if c is None:
            c = ratio
        elif ratio != c:
            raise InconsistentConstant(f"ratio {ratio} at lambda={cert.lam.labels()} differs from {c}")
    if c is None:
        raise NoNonvanishingPoint("no swept weight has R_direct != 0")
    return c


def restricted_weights(F: Field, rank: int):
    """All weights with values in F_p, in lexicographic order."""
    for vals in itertools.product(range(F.p), repeat=rank):
        yield Weight(F, vals)


def compatible_weights(cb: ChevalleyBasis, chi: PChar):
    """All weights compatible with chi (values in the field of cb)."""
    F = cb.F
    per = [compatible_values(F, chi.values[cb.h(i)]) for i in range(cb.rank)]
    for vals in itertools.product(*per):
        yield Weight(F, vals)


def proof_normalization(Zm: InducedModule, x) -> tuple[np.ndarray, bool]:
    """Replay the two-phase f-application from the simplicity argument.

    f_beta with chi(f_beta) = 0 are applied by descending height, each as
    often as possible without killing the vector; then f_beta with
    chi(f_beta) != 0 by ascending height, choosing the power that makes the
    top component (all exponents p-1) nonzero when one exists.  Returns
    the new vector and whether that top component is nonzero.
    """
    cb, F, p = Zm.cb, Zm.cb.F, Zm.cb.F.p
    x = np.asarray(x, dtype=np.int64)
    comp = Zm.par.complement
    chi = Zm.chi
    top = [Zm.index((p - 1,) * Zm.k, j) for j in range(Zm.L.dim)]

    def mat(b):
        return Zm.Z.matrix(cb.names[cb.f(b)])

    nil = sorted((b for b in comp if chi.values[cb.f(b)] == 0), key=lambda b: -cb.rs.heights[b])
    reg = sorted((b for b in comp if chi.values[cb.f(b)] != 0), key=lambda b: cb.rs.heights[b])
    for b in nil:
        for _ in range(p - 1):
            y = F.matmul(mat(b), x)
            if not np.any(y):
                break
            x = y
    for b in reg:
        y = x
        for _ in range(p):
            if np.any(y[top]):
                x = y
                break
            y = F.matmul(mat(b), y)
    return x, bool(np.any(x[top]))


def chi_s_invariance(cb, par, chi, lam) -> tuple[FieldElement, FieldElement]:
    """R_direct for chi and for its semisimple part chi_s at the same weight."""
    chi_s, _ = jordan_split(chi)
    r1 = compute_R_direct(build_induced(cb, par, chi, build_levi_simple(cb, par, chi, lam)))
    r2 = compute_R_direct(build_induced(cb, par, chi_s, build_levi_simple(cb, par, chi_s, lam)))
    return r1, r2
