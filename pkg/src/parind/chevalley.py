"""Chevalley basis of the semisimple Lie algebra attached to a root system.

Basis layout (``dim = 2N + l`` with ``N = |Phi+|``)::

    0 .. N-1          f_beta   (beta in positive-root order)
    N .. N+l-1        h_1 .. h_l
    N+l .. 2N+l-1     e_beta

Integer structure constants ``N_{x,y}`` for all pairs of roots are fixed
by declaring every extraspecial pair positive and propagating through the
standard identities (antisymmetry, the triangle rule for x+y+z=0, and the
four-term rule for x+y+z+w=0), with ``N_{-x,-y} = -N_{x,y}`` and
``[e_beta, e_{-beta}] = h_beta``.

Each ``f_beta`` is ``c_beta * e_{-beta}`` for a nonzero scale ``c_beta``;
the default ``c = 1`` gives ``[e_beta, f_beta] = h_beta``; the ``"negated"``
convention uses ``c = -1``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import BadPrime
from .gfield import Field
from .rootsys import RootSystem, format_root, good_prime_check


def _add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _neg(x):
    return tuple(-a for a in x)


def _is_pos(x):
    return any(a > 0 for a in x)


@lru_cache(maxsize=None)
def integer_structure_constants(rs: RootSystem) -> dict:
    """``{(x, y): N_{x,y}}`` for all roots x, y (signed vectors) with x+y a root."""
    pos = rs.roots
    pos_set = set(pos)

    def norm(x):
        return rs.inner(x, x)

    extraspecial = {}
    for xi in pos:
        if sum(xi) == 1:
            continue
        for a in pos:
            b = tuple(u - v for u, v in zip(xi, a))
            if b in pos_set:
                extraspecial[xi] = (a, b)
                break

    memo: dict = {}

    def N(x, y) -> int:
        key = (x, y)
        if key in memo:
            return memo[key]
        s = _add(x, y)
        if not rs.is_root(s):
            val = 0
        elif _is_pos(x) and _is_pos(y):
            a, b = extraspecial[s]
            r = rs.string_down(a, b)
            if (x, y) == (a, b):
                val = r + 1
            elif (x, y) == (b, a):
                val = -(r + 1)
            else:
                g, d = x, y
                total = Fraction(0)
                bg = tuple(u - v for u, v in zip(b, g))
                if rs.is_root(bg):
                    total += Fraction(N(b, _neg(g)) * N(a, _neg(d)), norm(bg))
                ag = tuple(u - v for u, v in zip(a, g))
                if rs.is_root(ag):
                    total += Fraction(N(_neg(g), a) * N(b, _neg(d)), norm(ag))
                v = total * norm(s) / (r + 1)
                assert v.denominator == 1
                val = int(v)
        elif not _is_pos(x) and not _is_pos(y):
            val = -N(_neg(x), _neg(y))
        elif not _is_pos(x):
            val = -N(y, x)
        else:
            z = _neg(s)
            if _is_pos(s):
                v = Fraction(norm(z), norm(x)) * (-N(_neg(y), _neg(z)))
            else:
                v = Fraction(norm(z), norm(y)) * N(z, x)
            assert v.denominator == 1
            val = int(v)
        memo[key] = val
        return val

    allroots = list(pos) + [_neg(r) for r in pos]
    table = {}
    for x in allroots:
        for y in allroots:
            if rs.is_root(_add(x, y)):
                table[(x, y)] = N(x, y)
    return table


class ChevalleyBasis:
    """Chevalley basis over a finite field with exact structure constants."""

    def __init__(self, rs: RootSystem, F: Field, f_scale=None, convention: str = "sl2"):
        if not good_prime_check(rs, F.p):
            raise BadPrime(f"p={F.p} is not good for {rs.name}")
        self.rs = rs
        self.F = F
        n, l = rs.n_pos, rs.rank
        self.n_pos = n
        self.rank = l
        self.dim = 2 * n + l
        if f_scale is None:
            c = 1 if convention == "sl2" else F.neg(1)
            if convention not in ("sl2", "negated"):
                raise ValueError(f"unknown convention {convention!r}")
            f_scale = [c] * n
        self.f_scale = tuple(F(c).code for c in f_scale)
        if any(c == 0 for c in self.f_scale) or len(self.f_scale) != n:
            raise ValueError("f_scale needs one nonzero scalar per positive root")
        self.convention = convention
        self.N = integer_structure_constants(rs)
        self.names = (
            [f"f[{format_root(r)}]" for r in rs.roots]
            + [f"h{i + 1}" for i in range(l)]
            + [f"e[{format_root(r)}]" for r in rs.roots]
        )
        self._name_index = {s: i for i, s in enumerate(self.names)}
        self.table = self._build_table()
        self._verify()

    # -- indexing ------------------------------------------------------------

    def f(self, beta: int) -> int:
        return beta

    def h(self, i: int) -> int:
        """Index of h_i for a 0-based simple index."""
        return self.n_pos + i

    def e(self, beta: int) -> int:
        return self.n_pos + self.rank + beta

    def index(self, name: str) -> int:
        return self._name_index[name]

    def kind(self, idx: int) -> tuple[str, int]:
        n, l = self.n_pos, self.rank
        if idx < n:
            return "f", idx
        if idx < n + l:
            return "h", idx - n
        return "e", idx - n - l

    def _root_of(self, idx):
        """(signed root vector, scale code) of a root-vector basis element."""
        kind, k = self.kind(idx)
        if kind == "e":
            return self.rs.roots[k], 1
        if kind == "f":
            return _neg(self.rs.roots[k]), self.f_scale[k]
        return None, None

    def _basis_of_root(self, r):
        k = self.rs.root_index(r)
        if k is not None:
            return self.e(k), 1
        k = self.rs.root_index(_neg(r))
        return self.f(k), self.f_scale[k]

    def weight(self, idx: int) -> tuple[int, ...]:
        """Root (signed coefficients) of a basis element; zero for h_i."""
        r, _ = self._root_of(idx)
        return r if r is not None else (0,) * self.rank

    # -- structure constants -------------------------------------------------

    def _build_table(self):
        F, rs = self.F, self.rs
        T = np.zeros((self.dim, self.dim, self.dim), dtype=np.int64)
        for a in range(self.dim):
            ra, sa = self._root_of(a)
            for b in range(self.dim):
                rb, sb = self._root_of(b)
                if ra is None and rb is None:
                    continue
                if ra is None:
                    i = self.kind(a)[1]
                    T[a, b, b] = F.from_int(rs.pairing_vec(rb, i))
                    continue
                if rb is None:
                    i = self.kind(b)[1]
                    T[a, b, a] = F.from_int(-rs.pairing_vec(ra, i))
                    continue
                s = _add(ra, rb)
                coef = F.mul(sa, sb)
                if not any(s):
                    beta = rs.root_index(ra)
                    sign = 1
                    if beta is None:
                        beta, sign = rs.root_index(rb), -1
                    for i, c in enumerate(rs.coroots[beta]):
                        T[a, b, self.h(i)] = F.mul(coef, F.from_int(sign * c))
                elif rs.is_root(s):
                    target, st = self._basis_of_root(s)
                    val = F.mul(coef, F.from_int(self.N[(ra, rb)]))
                    T[a, b, target] = F.div(val, st)
        return T

    def bracket_basis(self, a: int, b: int) -> dict[int, int]:
        row = self.table[a, b]
        return {int(c): int(row[c]) for c in np.nonzero(row)[0]}

    def bracket(self, x, y):
        """Bracket of two elements given as coefficient vectors (codes)."""
        x = np.asarray(x, dtype=np.int64)
        y = np.asarray(y, dtype=np.int64)
        F = self.F
        out = np.zeros(self.dim, dtype=np.int64)
        for a in np.nonzero(x)[0]:
            for b in np.nonzero(y)[0]:
                c = F.mul(int(x[a]), int(y[b]))
                out = F.vadd(out, F.vmul(np.int64(c), self.table[a, b]))
        return out

    def unit(self, idx: int):
        v = np.zeros(self.dim, dtype=np.int64)
        v[idx] = 1
        return v

    def ad(self, idx: int):
        """Matrix of ad(basis element) on g, acting on column vectors."""
        return np.ascontiguousarray(self.table[idx].T)

    def p_power(self, idx: int) -> int | None:
        """Basis index of x^[p] for a basis element, or None when it is zero."""
        return idx if self.kind(idx)[0] == "h" else None

    def structure_constant(self, x, y) -> int:
        """Integer N_{x,y} for signed root vectors (0 when x+y is not a root)."""
        return self.N.get((tuple(x), tuple(y)), 0)

    def extraspecial_pairs(self) -> dict:
        rs = self.rs
        pairs = {}
        for xi in rs.roots:
            if sum(xi) == 1:
                continue
            for a in rs.roots:
                b = tuple(u - v for u, v in zip(xi, a))
                if rs.root_index(b) is not None:
                    pairs[rs.root_index(xi)] = (rs.root_index(a), rs.root_index(b))
                    break
        return pairs

    # -- checks --------------------------------------------------------------

    def _verify(self):
        rs, F = self.rs, self.F
        for (x, y), n in self.N.items():
            r = rs.string_down(x, y)
            assert abs(n) == r + 1, f"|N_{x},{y}| = {abs(n)} != r+1 = {r + 1}"
            assert self.N[(y, x)] == -n
            assert n % F.p != 0, f"N_{x},{y} vanishes mod {F.p}"
        for beta in range(self.n_pos):
            got = self.bracket_basis(self.e(beta), self.f(beta))
            want = {self.h(i): F.mul(self.f_scale[beta], F.from_int(c)) for i, c in enumerate(rs.coroots[beta]) if c}
            assert got == want, f"[e,f] normalisation fails at {self.names[self.e(beta)]}"

    def jacobi_defect(self) -> list[tuple[int, int]]:
        """Pairs (x, y) with ad([x,y]) != [ad x, ad y]; empty iff Jacobi holds."""
        F = self.F
        ads = [self.ad(i) for i in range(self.dim)]
        bad = []
        for a in range(self.dim):
            for b in range(a + 1, self.dim):
                lhs = np.zeros((self.dim, self.dim), dtype=np.int64)
                for c, v in self.bracket_basis(a, b).items():
                    lhs = F.vadd(lhs, F.vmul(np.int64(v), ads[c]))
                rhs = F.vsub(F.matmul(ads[a], ads[b]), F.matmul(ads[b], ads[a]))
                if not np.array_equal(lhs, rhs):
                    bad.append((a, b))
        return bad

    def dump_csv(self) -> str:
        """Integer structure constants as ``alpha,beta,N`` rows."""
        lines = ["alpha,beta,N"]
        for (x, y), n in sorted(self.N.items()):
            lines.append(f"{_fmt_signed(x)},{_fmt_signed(y)},{n}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"ChevalleyBasis({self.rs.name}, {self.F}, convention={self.convention})"

    def __reduce__(self):
        return (ChevalleyBasis, (self.rs, self.F, self.f_scale, self.convention))


def _fmt_signed(x):
    return format_root(x) if _is_pos(x) else "-(" + format_root(_neg(x)) + ")"


def build_chevalley(rs: RootSystem, F: Field, convention: str = "sl2", f_scale=None) -> ChevalleyBasis:
    return ChevalleyBasis(rs, F, f_scale=f_scale, convention=convention)
