"""Finite root systems, parabolic subsets and coroot pairings.

Simple roots are labelled 1..l in public interfaces (``I={1}`` means the
parabolic whose Levi contains alpha_1); positive roots are referred to by
their position in :attr:`RootSystem.roots`, which lists them by ascending
height with ties broken by descending coefficient vector (so the simple
roots come first, in label order).

Cartan convention: ``cartan[i, j] = <alpha_j, alpha_i^vee> = alpha_j(h_i)``,
Bourbaki numbering.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import ImproperSubset, UnsupportedType
from .gfield import Field, FieldElement

BAD_PRIMES = {"A": (), "B": (2,), "C": (2,), "D": (2,), "G": (2, 3), "F": (2, 3)}
MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}


def cartan_matrix(type_label: str, rank: int) -> np.ndarray:
    t, l = type_label.upper(), rank
    if t == "G" and l == 2:
        return np.array([[2, -3], [-1, 2]])
    if t == "F" and l == 4:
        return np.array([[2, -1, 0, 0], [-1, 2, -1, 0], [0, -2, 2, -1], [0, 0, -1, 2]])
    if t not in MIN_RANK or l < MIN_RANK[t]:
        raise UnsupportedType(f"unsupported root system {type_label}{rank}")
    A = 2 * np.eye(l, dtype=int)
    for i in range(l - 1):
        A[i, i + 1] = A[i + 1, i] = -1
    if t == "B":
        A[l - 1, l - 2] = -2
    elif t == "C":
        A[l - 2, l - 1] = -2
    elif t == "D":
        A[l - 2, l - 1] = A[l - 1, l - 2] = 0
        A[l - 3, l - 1] = A[l - 1, l - 3] = -1
    return A


def _symmetrizer(A: np.ndarray) -> list[int]:
    """Smallest positive integers d with d_i A_ij = d_j A_ji."""
    l = A.shape[0]
    d: list = [None] * l
    d[0] = Fraction(1)
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(l):
            if A[i, j] and d[j] is None:
                d[j] = d[i] * A[i, j] / A[j, i]
                stack.append(j)
    denom = 1
    for x in d:
        denom = denom * x.denominator // np.gcd(denom, x.denominator)
    ints = [int(x * denom) for x in d]
    g = int(np.gcd.reduce(ints))
    return [x // g for x in ints]


def format_root(coeffs: Sequence[int]) -> str:
    """Coefficient string such as ``a1+2a2``."""
    parts = []
    for i, c in enumerate(coeffs):
        if c == 1:
            parts.append(f"a{i + 1}")
        elif c:
            parts.append(f"{c}a{i + 1}")
    return "+".join(parts) if parts else "0"


@dataclass(frozen=True, eq=False)
class RootSystem:
    type_label: str
    rank: int
    cartan: np.ndarray
    roots: tuple[tuple[int, ...], ...]
    heights: tuple[int, ...]
    coroots: tuple[tuple[int, ...], ...]
    root_lengths: tuple[int, ...]
    index: dict = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.type_label}{self.rank}"

    @property
    def n_pos(self) -> int:
        return len(self.roots)

    def root_index(self, coeffs) -> int | None:
        return self.index.get(tuple(coeffs))

    def simple(self, label: int) -> int:
        """Position of the simple root alpha_label (1-based label)."""
        return self.index[tuple(int(i == label - 1) for i in range(self.rank))]

    def pairing(self, beta: int, i: int) -> int:
        """<beta, alpha_i^vee> for a root position and 0-based simple index."""
        return int(np.dot(self.cartan[i], self.roots[beta]))

    def pairing_vec(self, coeffs, i: int) -> int:
        return int(np.dot(self.cartan[i], coeffs))

    def inner(self, a, b) -> int:
        """Invariant form with (alpha_i, alpha_i) = 2 d_i on coefficient vectors."""
        d = self.root_lengths
        return int(sum(d[i] * self.cartan[i, j] * a[i] * b[j] for i in range(self.rank) for j in range(self.rank)))

    def is_root(self, coeffs) -> bool:
        c = tuple(coeffs)
        return c in self.index or tuple(-x for x in c) in self.index

    def string_down(self, alpha, beta) -> int:
        """Largest r with beta - r*alpha in Phi (coefficient vectors)."""
        r = 0
        while self.is_root(tuple(b - (r + 1) * a for a, b in zip(alpha, beta))):
            r += 1
        return r

    def name_of(self, beta: int) -> str:
        return format_root(self.roots[beta])

    def __repr__(self):
        return f"RootSystem({self.name}, |Phi+|={self.n_pos})"

    def __reduce__(self):
        return (build_root_system, (self.type_label, self.rank))


def generate_positive_roots(A: np.ndarray) -> list[tuple[int, ...]]:
    """Close the simple roots under root-string extension."""
    l = A.shape[0]
    simple = [tuple(int(i == j) for j in range(l)) for i in range(l)]
    found = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(l):
                down = 0
                while True:
                    cand = tuple(b - (down + 1) * (j == i) for j, b in enumerate(beta))
                    if cand in found:
                        down += 1
                    else:
                        break
                up = down - int(np.dot(A[i], beta))
                if up > 0:
                    new = tuple(b + (j == i) for j, b in enumerate(beta))
                    if new not in found:
                        found.add(new)
                        nxt.append(new)
        layer = nxt
    return sorted(found, key=lambda r: (sum(r), tuple(-c for c in r)))


def build_root_system(type_label: str, rank: int | None = None) -> RootSystem:
    """Build a root system from a label such as ``("B", 2)`` or ``"B2"``."""
    if rank is None:
        type_label, rank = type_label[0], int(type_label[1:])
    return _build(type_label.upper(), int(rank))


@lru_cache(maxsize=None)
def _build(t: str, l: int) -> RootSystem:
    A = cartan_matrix(t, l)
    roots = generate_positive_roots(A)
    d = _symmetrizer(A)
    index = {r: k for k, r in enumerate(roots)}

    def norm(c):
        return int(sum(d[i] * A[i, j] * c[i] * c[j] for i in range(l) for j in range(l)))

    coroots = []
    for r in roots:
        n = norm(r)
        co = []
        for i in range(l):
            num = r[i] * 2 * d[i]
            assert num % n == 0, "coroot expansion must be integral"
            co.append(num // n)
        coroots.append(tuple(co))
    A.setflags(write=False)
    return RootSystem(
        type_label=t,
        rank=l,
        cartan=A,
        roots=tuple(roots),
        heights=tuple(sum(r) for r in roots),
        coroots=tuple(coroots),
        root_lengths=tuple(d),
        index=index,
    )


def good_prime_check(rs: RootSystem, p: int) -> bool:
    return p not in BAD_PRIMES[rs.type_label]


@dataclass(frozen=True)
class ParabolicData:
    """Phi_I^+ and the ascending-height complement (beta_1, ..., beta_k)."""

    rs: RootSystem
    I: frozenset
    phi_I_plus: tuple[int, ...]
    complement: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.complement)

    @property
    def levi_simple(self) -> tuple[int, ...]:
        return tuple(self.rs.simple(i) for i in sorted(self.I))

    def __reduce__(self):
        return (parabolic, (self.rs, tuple(sorted(self.I))))


def parabolic(rs: RootSystem, I) -> ParabolicData:
    I = frozenset(int(i) for i in I)
    if not I <= set(range(1, rs.rank + 1)):
        raise ImproperSubset(f"I={sorted(I)} contains labels outside 1..{rs.rank}")
    if len(I) == rs.rank:
        raise ImproperSubset(f"I={sorted(I)} is all of Pi; a proper subset is required")
    levi, comp = [], []
    for k, r in enumerate(rs.roots):
        if all(c == 0 for i, c in enumerate(r) if i + 1 not in I):
            levi.append(k)
        else:
            comp.append(k)
    return ParabolicData(rs, I, tuple(levi), tuple(comp))


def is_closed(rs: RootSystem, S) -> bool:
    S = set(S)
    for a in S:
        for b in S:
            s = tuple(x + y for x, y in zip(rs.roots[a], rs.roots[b]))
            k = rs.root_index(s)
            if k is not None and k not in S:
                return False
    return True


@dataclass(frozen=True)
class Weight:
    """A weight, stored by its values on the simple coroots h_1..h_l."""

    field: Field
    values: tuple[int, ...]

    @classmethod
    def of(cls, F: Field, values) -> "Weight":
        return cls(F, tuple(F(v).code for v in values))

    def __getitem__(self, i: int) -> FieldElement:
        return FieldElement(self.field, self.values[i])

    def on_coroot(self, rs: RootSystem, beta: int) -> FieldElement:
        F = self.field
        acc = 0
        for i, c in enumerate(rs.coroots[beta]):
            acc = F.add(acc, F.mul(F.from_int(c), self.values[i]))
        return FieldElement(F, acc)

    def labels(self) -> list[str]:
        return [self.field.format(v) for v in self.values]


def pair_lambda_rho(rs: RootSystem, lam: Weight, beta: int) -> FieldElement:
    """(lambda + rho)(h_beta), using rho(h_i) = 1 on every simple coroot."""
    F = lam.field
    shifted = Weight(F, tuple(F.add(v, 1) for v in lam.values))
    return shifted.on_coroot(rs, beta)
