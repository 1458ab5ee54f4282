"""Normal ordering in the reduced enveloping algebra u_chi(g).

A :class:`PBWAlgebra` fixes a total order on the Chevalley basis and
rewrites products into ordered monomials ``x_1^{a_1} ... x_n^{a_n}``.
Straightening uses ``y x = x y + [y, x]`` for out-of-order neighbours and,
in the restricted setting, ``x^p = x^[p] + chi(x)^p`` so every exponent
stays below p.  The default order is the f-block, then the h-block, then
the e-block, each by ascending height.

The same machinery without p-th power reduction computes in U(g) with
coefficients reduced mod p (``restricted=False``).
"""

from __future__ import annotations

import sys
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .chevalley import ChevalleyBasis
from .errors import ParindError
from .gfield import FieldElement

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))


@dataclass(frozen=True)
class PChar:
    """A p-character chi, one field code per Chevalley basis element."""

    cb: ChevalleyBasis
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.cb.dim:
            raise ValueError("PChar needs one value per basis element")
        for beta in range(self.cb.n_pos):
            if self.values[self.cb.e(beta)] != 0:
                raise ParindError(f"chi({self.cb.names[self.cb.e(beta)]}) != 0; chi(n+) must vanish")

    @classmethod
    def zero(cls, cb: ChevalleyBasis) -> "PChar":
        return cls(cb, (0,) * cb.dim)

    @classmethod
    def from_dict(cls, cb: ChevalleyBasis, assignments: dict) -> "PChar":
        vals = [0] * cb.dim
        for name, v in assignments.items():
            idx = name if isinstance(name, int) else cb.index(name)
            vals[idx] = cb.F(v).code
        return cls(cb, tuple(vals))

    @classmethod
    def standard_levi(cls, cb: ChevalleyBasis, J: Iterable[int]) -> "PChar":
        """chi(f_alpha) = 1 for alpha in J (1-based labels), 0 elsewhere."""
        vals = [0] * cb.dim
        for j in J:
            vals[cb.f(cb.rs.simple(j))] = 1
        return cls(cb, tuple(vals))

    def __call__(self, idx: int) -> FieldElement:
        return FieldElement(self.cb.F, self.values[idx])

    def __add__(self, other: "PChar") -> "PChar":
        F = self.cb.F
        return PChar(self.cb, tuple(F.add(a, b) for a, b in zip(self.values, other.values)))

    def is_zero(self) -> bool:
        return not any(self.values)

    def support(self) -> dict[str, str]:
        F = self.cb.F
        return {self.cb.names[i]: F.format(v) for i, v in enumerate(self.values) if v}

    def spec(self) -> str:
        """Render in the assignment mini-language accepted by the CLI."""
        sup = self.support()
        return ";".join(f"{k}={v}" for k, v in sup.items()) if sup else "zero"

    def __repr__(self):
        return f"PChar({self.spec()})"

    def __hash__(self):
        return hash((self.cb.rs.name, self.cb.F, self.values))

    def __eq__(self, other):
        return isinstance(other, PChar) and self.cb.rs is other.cb.rs and self.cb.F == other.cb.F and self.values == other.values


def jordan_split(chi: PChar) -> tuple[PChar, PChar]:
    """chi = chi_s + chi_n with chi_s(n+ + n-) = 0 and chi_n(h + n+) = 0."""
    cb = chi.cb
    s = [0] * cb.dim
    n = [0] * cb.dim
    for idx, v in enumerate(chi.values):
        kind = cb.kind(idx)[0]
        if kind == "h":
            s[idx] = v
        elif kind == "f":
            n[idx] = v
    return PChar(cb, tuple(s)), PChar(cb, tuple(n))


def default_order(cb: ChevalleyBasis) -> tuple[int, ...]:
    return tuple(range(cb.dim))


def parabolic_order(cb: ChevalleyBasis, par) -> tuple[int, ...]:
    """f over the complement, f over Phi_I^+, h, e over Phi_I^+, e over the complement.

    Monomials in this order read ``u' part * p_I part``, which is the
    shape needed to act on ``u_chi(g) (x)_{u_chi(p_I)} L``.
    """
    comp, levi = par.complement, par.phi_I_plus
    return (
        tuple(cb.f(b) for b in comp)
        + tuple(cb.f(b) for b in levi)
        + tuple(cb.h(i) for i in range(cb.rank))
        + tuple(cb.e(b) for b in levi)
        + tuple(cb.e(b) for b in comp)
    )


class PBWAlgebra:
    """u_chi(g) (or U(g) mod p) with a fixed PBW order."""

    def __init__(self, cb: ChevalleyBasis, chi: PChar | None = None, order: Sequence[int] | None = None, restricted: bool = True):
        self.cb = cb
        self.F = cb.F
        self.p = cb.F.p
        self.chi = chi if chi is not None else PChar.zero(cb)
        if self.chi.cb is not cb and self.chi.cb.rs is not cb.rs:
            raise ParindError("chi belongs to a different Lie algebra")
        self.order = tuple(order) if order is not None else default_order(cb)
        if sorted(self.order) != list(range(cb.dim)):
            raise ValueError("order must be a permutation of the basis")
        self.pos = {idx: k for k, idx in enumerate(self.order)}
        self.n = cb.dim
        self.restricted = restricted
        F = self.F
        self._br = [[tuple((self.pos[c], v) for c, v in cb.bracket_basis(a, b).items()) for b in self.order] for a in self.order]
        self._chi_p = [F.pow(self.chi.values[idx], self.p) for idx in self.order]
        self._is_h = [cb.kind(idx)[0] == "h" for idx in self.order]
        self._memo: dict = {}
        self._lock = threading.Lock()
        self.one_mono = (0,) * self.n

    # -- monomial level ------------------------------------------------------

    def _gen_times(self, i: int, mono: tuple) -> dict:
        key = (i, mono)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        res = self._compute_gen_times(i, mono)
        with self._lock:
            self._memo.setdefault(key, res)
        return res

    def _compute_gen_times(self, i, mono):
        F = self.F
        j = next((k for k, a in enumerate(mono) if a), self.n)
        if i < j:
            m = list(mono)
            m[i] = 1
            return {tuple(m): 1}
        if i == j:
            a = mono[i] + 1
            m = list(mono)
            if a < self.p or not self.restricted:
                m[i] = a
                return {tuple(m): 1}
            m[i] = 0
            base = tuple(m)
            res: dict = {}
            if self._chi_p[i]:
                res[base] = self._chi_p[i]
            if self._is_h[i]:
                m[i] = 1
                _acc(F, res, tuple(m), 1)
            return res
        # i > j: x_i x_j^{a} R = x_j (x_i x_j^{a-1} R) + [x_i, x_j] x_j^{a-1} R
        m = list(mono)
        m[j] -= 1
        rest = tuple(m)
        res = {}
        for mono2, c in self._gen_times(i, rest).items():
            for mono3, c3 in self._gen_times(j, mono2).items():
                _acc(F, res, mono3, F.mul(c, c3))
        for k, ck in self._br[i][j]:
            for mono3, c3 in self._gen_times(k, rest).items():
                _acc(F, res, mono3, F.mul(ck, c3))
        return res

    def _left_mul_gen(self, i: int, terms: dict) -> dict:
        F = self.F
        out: dict = {}
        for mono, c in terms.items():
            for mono2, c2 in self._gen_times(i, mono).items():
                _acc(F, out, mono2, F.mul(c, c2))
        return out

    def mono_word(self, mono) -> list[int]:
        """Positions of the generators spelling a monomial, left to right."""
        word = []
        for k, a in enumerate(mono):
            word.extend([k] * a)
        return word

    # -- element level -------------------------------------------------------

    def element(self, terms: dict) -> "PBWElement":
        return PBWElement(self, {m: c for m, c in terms.items() if c})

    def one(self) -> "PBWElement":
        return self.element({self.one_mono: 1})

    def zero(self) -> "PBWElement":
        return self.element({})

    def gen(self, x) -> "PBWElement":
        """Generator given by Chevalley index or name."""
        idx = self.cb.index(x) if isinstance(x, str) else int(x)
        m = [0] * self.n
        m[self.pos[idx]] = 1
        return self.element({tuple(m): 1})

    def monomial(self, exps: dict) -> "PBWElement":
        """Ordered monomial from ``{chevalley index or name: exponent}`` (normalised)."""
        items = sorted(((self.pos[self.cb.index(k) if isinstance(k, str) else k], a) for k, a in exps.items()))
        word = [pos for pos, a in items for _ in range(a)]
        return self._word_positions(word)

    def _word_positions(self, word_positions) -> "PBWElement":
        terms = {self.one_mono: 1}
        for i in reversed(word_positions):
            terms = self._left_mul_gen(i, terms)
        return self.element(terms)

    def word(self, generators, coeff=1) -> "PBWElement":
        """Normal form of ``coeff * g_1 g_2 ... g_r`` (names or indices)."""
        positions = [self.pos[self.cb.index(g) if isinstance(g, str) else int(g)] for g in generators]
        el = self._word_positions(positions)
        return el * coeff

    def mul(self, x: "PBWElement", y: "PBWElement") -> "PBWElement":
        F = self.F
        out: dict = {}
        for mono, c in x.terms.items():
            terms = dict(y.terms)
            for i in reversed(self.mono_word(mono)):
                terms = self._left_mul_gen(i, terms)
            for m2, c2 in terms.items():
                _acc(F, out, m2, F.mul(c, c2))
        return self.element(out)

    def bracket(self, x: "PBWElement", y: "PBWElement") -> "PBWElement":
        return self.mul(x, y) - self.mul(y, x)

    def format_mono(self, mono) -> str:
        parts = [f"{self.cb.names[self.order[k]]}^{a}" for k, a in enumerate(mono) if a]
        return " ".join(parts) if parts else "1"

    def exponents(self, mono) -> dict[int, int]:
        """``{chevalley index: exponent}`` for the nonzero exponents of a monomial."""
        return {self.order[k]: a for k, a in enumerate(mono) if a}

    def memo_size(self) -> int:
        return len(self._memo)


def _acc(F, d: dict, key, val: int):
    if not val:
        return
    cur = d.get(key)
    new = val if cur is None else F.add(cur, val)
    if new:
        d[key] = new
    elif cur is not None:
        del d[key]


class PBWElement:
    """Finite linear combination of ordered monomials; zero coefficients never stored."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: PBWAlgebra, terms: dict):
        self.alg = alg
        self.terms = terms

    def _scalar(self, c) -> int:
        return self.alg.F(c).code

    def __add__(self, other: "PBWElement") -> "PBWElement":
        F = self.alg.F
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(F, out, m, c)
        return PBWElement(self.alg, out)

    def __neg__(self):
        F = self.alg.F
        return PBWElement(self.alg, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PBWElement):
            return self.alg.mul(self, other)
        c = self._scalar(other)
        F = self.alg.F
        if c == 0:
            return PBWElement(self.alg, {})
        return PBWElement(self.alg, {m: F.mul(v, c) for m, v in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int):
        out = self.alg.one()
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, PBWElement):
            return self.alg is other.alg and self.terms == other.terms
        if other == 0:
            return self.is_zero()
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def coefficient(self, mono) -> FieldElement:
        return FieldElement(self.alg.F, self.terms.get(tuple(mono), 0))

    def scalar_part(self) -> FieldElement:
        return self.coefficient(self.alg.one_mono)

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        F = self.alg.F
        return " + ".join(f"{self.alg.format_mono(m)} * {F.format(c)}" for m, c in sorted(self.terms.items(), reverse=True))

    __repr__ = __str__


def algebra(cb: ChevalleyBasis, chi: PChar | None = None, order: Sequence[int] | None = None, restricted: bool = True) -> PBWAlgebra:
    """Shared algebra instance, so memo tables are reused across calls."""
    chi = chi if chi is not None else PChar.zero(cb)
    order = tuple(order) if order is not None else default_order(cb)
    return _cached_algebra(cb, chi, order, restricted)


@lru_cache(maxsize=64)
def _cached_algebra(cb, chi, order, restricted):
    return PBWAlgebra(cb, chi, order, restricted)


def normal_form(word: Sequence, chi: PChar, coeff=1, order=None) -> PBWElement:
    """Normal form of ``coeff * word`` in u_chi(g)."""
    return algebra(chi.cb, chi, tuple(order) if order is not None else None).word(word, coeff)


def bracket_in_u(x: PBWElement, y: PBWElement) -> PBWElement:
    if x.alg is not y.alg:
        raise ParindError("elements live in different algebras")
    return x.alg.bracket(x, y)


def insertion_check(alg: PBWAlgebra, ordering: Sequence[int], k: int, exponents: Sequence[int] | None = None) -> bool:
    """Insert e_{ordering[k]} at every slot of an e-word and test for zero.

    ``ordering`` lists positive-root positions (a closed subset in some
    order).  Exponents of roots whose height is at least that of
    ``ordering[k]`` are forced to p-1; the others come from ``exponents``
    (default p-1 as well).
    """
    cb = alg.cb
    rs = cb.rs
    p = alg.p
    h = rs.heights[ordering[k]]
    exps = list(exponents) if exponents is not None else [p - 1] * len(ordering)
    for j, beta in enumerate(ordering):
        if rs.heights[beta] >= h:
            exps[j] = p - 1
    word = []
    for beta, a in zip(ordering, exps):
        word.extend([cb.e(beta)] * a)
    ins = cb.e(ordering[k])
    for slot in range(len(word) + 1):
        w = word[:slot] + [ins] + word[slot:]
        if not alg.word(w).is_zero():
            return False
    return True
