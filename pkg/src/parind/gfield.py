"""Exact arithmetic in F_p and F_{p^m}.

Elements are encoded as integers ``code = c0 + c1*p + ... + c_{m-1}*p^(m-1)``
where ``c0 + c1*t + ...`` is the polynomial representative modulo the
field's monic irreducible modulus.  Constants of F_p keep their own code,
so F_p sits inside every F_{p^m} without conversion.

:class:`Field` exposes both scalar operations on codes and vectorised
operations on numpy integer arrays of codes; :class:`FieldElement` is the
user-facing value type.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .errors import DegreeOutOfRange, DivisionByZero, FieldMismatch, NonPrimeModulus

MAX_ORDER = 10**6


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# -- dense polynomials over F_p, coefficient lists lowest degree first --------

def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a, b, p):
    """Remainder of ``a`` modulo ``b`` over F_p (``b`` nonzero)."""
    a = _poly_trim(x % p for x in a)
    b = _poly_trim(x % p for x in b)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a = _poly_trim(a)
    return a


def is_irreducible(poly, p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    poly = _poly_trim(x % p for x in poly)
    m = len(poly) - 1
    if m < 1:
        return False
    for d in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not poly_mod(poly, list(low) + [1], p):
                return False
    return True


def lowest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree m, ordered by its code.

    The non-leading coefficients are read as a base-p integer with the
    constant term least significant, so the order is lexicographic from
    the t^(m-1) coefficient downwards.
    """
    for code in range(p**m):
        low = [(code // p**i) % p for i in range(m)]
        poly = low + [1]
        if is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError("an irreducible polynomial of every degree exists")


class Field:
    """The finite field F_{p^m}."""

    def __init__(self, p: int, m: int = 1, modulus=None):
        if not isinstance(p, int) or not is_prime(p):
            raise NonPrimeModulus(f"{p} is not prime")
        if not isinstance(m, int) or m < 1:
            raise DegreeOutOfRange(f"extension degree must be >= 1, got {m}")
        if p**m > MAX_ORDER:
            raise DegreeOutOfRange(f"p^m = {p**m} exceeds {MAX_ORDER}")
        self.p = p
        self.m = m
        self.q = p**m
        if m == 1:
            self.modulus = ()
        else:
            if modulus is None:
                modulus = lowest_irreducible(p, m)
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != m + 1 or modulus[-1] != 1:
                raise DegreeOutOfRange("modulus must be monic of degree m")
            if not is_irreducible(modulus, p):
                raise ValueError(f"modulus {modulus} is reducible over F_{p}")
            self.modulus = modulus
            self._build_tables()

    # -- construction helpers ------------------------------------------------

    def _build_tables(self):
        p, m, q = self.p, self.m, self.q
        codes = np.arange(q, dtype=np.int64)
        self._powers = p ** np.arange(m, dtype=np.int64)
        self._digits = np.stack([(codes // p**i) % p for i in range(m)], axis=1)
        # multiplication by t as an m x m matrix acting on digit columns
        mt = np.zeros((m, m), dtype=np.int64)
        for i in range(m - 1):
            mt[i + 1, i] = 1
        mt[:, m - 1] = [(-c) % p for c in self.modulus[:m]]
        self._times_t = mt
        # search for a primitive element among small codes
        for g in range(2, q):
            exp = self._power_table(g)
            if exp is not None:
                break
        else:  # q == 2 never reaches here since m > 1
            raise AssertionError("no primitive element found")
        self.primitive = g
        self._exp = exp
        log = np.zeros(q, dtype=np.int64)
        log[exp] = np.arange(q - 1, dtype=np.int64)
        self._log = log

    def _mul_poly_codes(self, a: int, b: int) -> int:
        da = self._digits[a]
        acc = np.zeros(self.m, dtype=np.int64)
        cur = self._digits[b].copy()
        for i in range(self.m):
            if da[i]:
                acc = (acc + da[i] * cur) % self.p
            cur = self._times_t @ cur % self.p
        return int(acc @ self._powers)

    def _power_table(self, g: int):
        q = self.q
        exp = np.empty(q - 1, dtype=np.int64)
        x = 1
        for k in range(q - 1):
            if k > 0 and x == 1:
                return None
            exp[k] = x
            x = self._mul_poly_codes(x, g)
        return exp if x == 1 else None

    # -- identity ------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.m, self.modulus) == (
            other.p,
            other.m,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __repr__(self):
        if self.m == 1:
            return f"Field(F_{self.p})"
        return f"Field(F_{self.p}^{self.m}, modulus={self.modulus})"

    def __getstate__(self):
        return {"p": self.p, "m": self.m, "modulus": self.modulus}

    def __setstate__(self, state):
        self.__init__(state["p"], state["m"], state["modulus"] or None)

    # -- scalar operations on codes -----------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        return int((self._digits[a] + self._digits[b]) % self.p @ self._powers)

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        return int((-self._digits[a]) % self.p @ self._powers)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.m == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return int(self._exp[(self._log[a] + self._log[b]) % (self.q - 1)])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        return int(self._exp[(-self._log[a]) % (self.q - 1)])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        if self.m == 1:
            return pow(a, n, self.p)
        if a == 0:
            return 1 if n == 0 else 0
        return int(self._exp[(self._log[a] * n) % (self.q - 1)])

    def from_int(self, n: int) -> int:
        return n % self.p

    def in_prime_field(self, a: int) -> bool:
        return 0 <= a < self.p

    # -- vectorised operations on arrays of codes ----------------------------

    def vadd(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a + b) % self.p
        return (self._digits[a] + self._digits[b]) % self.p @ self._powers

    def vneg(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.m == 1:
            return (-a) % self.p
        return (-self._digits[a]) % self.p @ self._powers

    def vsub(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a - b) % self.p
        return (self._digits[a] - self._digits[b]) % self.p @ self._powers

    def vmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return a * b % self.p
        a, b = np.broadcast_arrays(a, b)
        out = self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def vinv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("inverse of zero")
        if self.m == 1:
            return np.vectorize(lambda x: pow(int(x), self.p - 2, self.p), otypes=[np.int64])(a)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def matmul(self, a, b):
        """Matrix product of code arrays."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        p, m = self.p, self.m
        if m == 1:
            return (a @ b) % p
        da = [self._digits[a][..., i] for i in range(m)]
        db = [self._digits[b][..., i] for i in range(m)]
        coeffs = [None] * (2 * m - 1)
        for i in range(m):
            for j in range(m):
                prod = da[i] @ db[j]
                coeffs[i + j] = prod if coeffs[i + j] is None else coeffs[i + j] + prod
        coeffs = [c % p for c in coeffs]
        # t^d = -sum modulus[i] t^(i + d - m) for d >= m
        for d in range(2 * m - 2, m - 1, -1):
            top = coeffs[d]
            for i in range(m):
                if self.modulus[i]:
                    coeffs[d - m + i] = (coeffs[d - m + i] - self.modulus[i] * top) % p
        out = coeffs[0].copy()
        for i in range(1, m):
            out = out + coeffs[i] * p**i
        return out

    def zeros(self, shape):
        return np.zeros(shape, dtype=np.int64)

    def identity(self, n: int):
        return np.eye(n, dtype=np.int64)

    def elements(self):
        return [FieldElement(self, c) for c in range(self.q)]

    # -- elements and serialisation -----------------------------------------

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                if value.field.p == self.p and value.field.m == 1:
                    return FieldElement(self, value.code)
                raise FieldMismatch(f"{value.field} vs {self}")
            return value
        if isinstance(value, str):
            return FieldElement(self, self.parse(value))
        return FieldElement(self, int(value) % self.p)

    def gen(self) -> "FieldElement":
        """The class of t when m > 1, a primitive root of F_p otherwise."""
        if self.m == 1:
            return FieldElement(self, self.primitive_root())
        return FieldElement(self, self.p)

    @lru_cache(maxsize=None)
    def primitive_root(self) -> int:
        if self.m > 1:
            return self.primitive
        p = self.p
        for g in range(1, p):
            if len({pow(g, k, p) for k in range(p - 1)}) == p - 1:
                return g
        raise AssertionError

    def digits(self, code: int) -> list[int]:
        return [(code // self.p**i) % self.p for i in range(self.m)]

    def format(self, code: int) -> str:
        if self.m == 1:
            return str(code)
        terms = []
        for i, c in enumerate(self.digits(code)):
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*t")
            else:
                terms.append(f"{c}*t^{i}")
        return "+".join(terms)

    def parse(self, text: str) -> int:
        text = text.replace(" ", "")
        if self.m == 1 or "t" not in text:
            return int(text) % self.p
        coeffs = [0] * self.m
        for term in text.split("+"):
            if "*t" in term:
                c, _, e = term.partition("*t")
                e = int(e[1:]) if e.startswith("^") else 1
            elif term == "t":
                c, e = "1", 1
            else:
                c, e = term, 0
            if e >= self.m:
                raise ValueError(f"exponent {e} out of range in {text!r}")
            coeffs[e] = (coeffs[e] + int(c)) % self.p
        return sum(c * self.p**i for i, c in enumerate(coeffs))


def make_field(p: int, m: int = 1) -> Field:
    """F_{p^m} with the lowest monic irreducible modulus of degree m."""
    return _cached_field(p, m)


@lru_cache(maxsize=None)
def _cached_field(p, m):
    return Field(p, m)


class FieldElement:
    """An immutable element of a :class:`Field`."""

    __slots__ = ("field", "code")

    def __init__(self, field: Field, code: int):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "code", int(code))

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def __reduce__(self):
        return (FieldElement, (self.field, self.code))

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field == self.field:
                return other.code
            if other.field.p == self.field.p and other.field.m == 1:
                return other.code
            raise FieldMismatch(f"{other.field} vs {self.field}")
        if isinstance(other, (int, np.integer)):
            return int(other) % self.field.p
        return NotImplemented

    def _wrap(self, code):
        return FieldElement(self.field, code)

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.sub(self.code, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.sub(b, self.code))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.div(self.code, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field.div(b, self.code))

    def __neg__(self):
        return self._wrap(self.field.neg(self.code))

    def __pow__(self, n: int):
        return self._wrap(self.field.pow(self.code, int(n)))

    def inv(self) -> "FieldElement":
        return self._wrap(self.field.inv(self.code))

    def frobenius(self) -> "FieldElement":
        return self ** self.field.p

    def is_zero(self) -> bool:
        return self.code == 0

    def __bool__(self):
        return self.code != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, (int, np.integer)):
            return self.code == int(other) % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.code))

    def __int__(self):
        if self.code >= self.field.p:
            raise ValueError(f"{self} is not in the prime field")
        return self.code

    def __str__(self):
        return self.field.format(self.code)

    def __repr__(self):
        return f"FieldElement({self}, q={self.field.q})"
