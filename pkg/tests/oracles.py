"""Independent reference computations used to check the library.

Nothing here calls into the code paths it is meant to check: field
arithmetic is redone with schoolbook polynomials, simplicity is decided via
maximal vectors instead of Norton's criterion, and PBW normal forms are
recomputed by a naive word-rewriting loop.
"""

from __future__ import annotations

import itertools
import random

import numpy as np


# -- finite fields -------------------------------------------------------------


def digits(code, p, m):
    return [(code // p**i) % p for i in range(m)]


def undigits(ds, p):
    return sum(int(d) * p**i for i, d in enumerate(ds))


def poly_mul_mod(a, b, modulus, p):
    """Product of two codes in F_p[t]/(modulus), modulus given low-to-high."""
    m = len(modulus) - 1
    da, db = digits(a, p, m), digits(b, p, m)
    prod = [0] * (2 * m - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] += x * y
    for d in range(len(prod) - 1, m - 1, -1):
        c = prod[d] % p
        if c:
            for i in range(m + 1):
                prod[d - m + i] -= c * modulus[i]
    return undigits([c % p for c in prod[:m]], p)


def monic_irreducibles(p, m):
    """Monic irreducibles of degree m over F_p by exhausting all factorizations."""
    def polys(deg):
        for low in itertools.product(range(p), repeat=deg):
            yield tuple(low) + (1,)

    def mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
        return tuple(out)

    reducible = set()
    for d in range(1, m):
        for a in polys(d):
            for b in polys(m - d):
                reducible.add(mul(a, b))
    return [f for f in polys(m) if f not in reducible]


def code_order_key(poly):
    """Order polynomials (low-to-high tuples) by their integer code."""
    return sum(c * 1000**i for i, c in enumerate(poly))


# -- sl2 ---------------------------------------------------------------------


def sl2_R(lam: int, p: int) -> int:
    """e^{p-1} f^{p-1} on v_lambda in sl2, from e f^m v = m(lambda-m+1) f^{m-1} v."""
    r = 1
    for m_ in range(1, p):
        r = r * m_ * (lam - m_ + 1) % p
    return r % p


# -- simplicity via maximal vectors ------------------------------------------


def _rref(A, p):
    A = np.array(A, dtype=np.int64) % p
    rows, cols = A.shape
    piv = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if not len(nz):
            continue
        k = r + nz[0]
        A[[r, k]] = A[[k, r]]
        A[r] = A[r] * pow(int(A[r, c]), p - 2, p) % p
        for i in range(rows):
            if i != r and A[i, c]:
                A[i] = (A[i] - A[i, c] * A[r]) % p
        piv.append(c)
        r += 1
    return A[:r], piv


def _kernel(A, p):
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1]
    R, piv = _rref(A, p) if A.shape[0] else (np.zeros((0, n), dtype=np.int64), [])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = np.zeros(n, dtype=np.int64)
        v[f] = 1
        for i, c in enumerate(piv):
            v[c] = -R[i, f] % p
        basis.append(v)
    return np.array(basis, dtype=np.int64).reshape(len(basis), n)


def _span_closure(mats, v, p):
    n = len(v)
    B, _ = _rref(np.array([v]), p)
    while True:
        imgs = [B]
        for A in mats:
            imgs.append(B @ A.T % p)
        new, _ = _rref(np.vstack(imgs), p)
        if new.shape[0] == B.shape[0] or new.shape[0] == n:
            return new
        B = new


def _points(basis, p):
    d = basis.shape[0]
    for coeffs in itertools.product(range(p), repeat=d):
        if any(coeffs):
            first = next(c for c in coeffs if c)
            if first == 1:
                yield np.array(coeffs, dtype=np.int64) @ basis % p


def simple_by_maximal_vectors(mats_e, mats_h, mats_all, p, budget=20000):
    """Decide simplicity over F_p from the e-invariants.

    Every nonzero submodule contains a nonzero vector killed by all e's
    and lying in a joint eigenspace of the h's; the module is simple iff
    all such vectors generate it.
    """
    n = mats_all[0].shape[0]
    W = _kernel(np.vstack(mats_e), p) if mats_e else np.eye(n, dtype=np.int64)
    spaces = [W]
    for H in mats_h:
        nxt = []
        for S in spaces:
            for c in range(p):
                # vectors x = y S with (H - c) x = 0  <=>  y S (H - c)^T = 0
                M = S @ ((H - c * np.eye(n, dtype=np.int64)) % p).T % p
                Y = _kernel(M.T, p)
                if Y.shape[0]:
                    nxt.append(_rref(Y @ S % p, p)[0])
        spaces = nxt
    checked = 0
    for S in spaces:
        for v in _points(S, p):
            checked += 1
            if checked > budget:
                raise RuntimeError("oracle budget exceeded")
            if _span_closure(mats_all, v, p).shape[0] < n:
                return False
    return True


def simple_by_brute_force(mats, p):
    """Spin up every projective point of F_p^n (tiny modules only)."""
    n = mats[0].shape[0]
    for v in _points(np.eye(n, dtype=np.int64), p):
        if _span_closure(mats, v, p).shape[0] < n:
            return False
    return True


# -- PBW by naive rewriting -----------------------------------------------------


def naive_normal_form(cb, chi_values, order, word, seed=0, restricted=True):
    """Normal form of a word by random adjacent swaps and p-th power reductions.

    Returns {tuple of exponents in ``order`` positions: coefficient code}.
    """
    F = cb.F
    p = F.p
    pos = {g: i for i, g in enumerate(order)}
    rng = random.Random(seed)
    pending = {tuple(word): 1}
    done: dict = {}

    def add(d, key, c):
        v = F.add(d.get(key, 0), c)
        if v:
            d[key] = v
        else:
            d.pop(key, None)

    while pending:
        w, c = pending.popitem()
        moves = [("swap", i) for i in range(len(w) - 1) if pos[w[i]] > pos[w[i + 1]]]
        if restricted:
            moves += [("pow", i) for i in range(len(w) - p + 1) if len(set(w[i : i + p])) == 1]
        if not moves:
            exps = [0] * len(order)
            for g in w:
                exps[pos[g]] += 1
            add(done, tuple(exps), c)
            continue
        kind, i = rng.choice(moves)
        if kind == "swap":
            x, y = w[i], w[i + 1]
            add(pending, w[:i] + (y, x) + w[i + 2 :], c)
            for z, v in cb.bracket_basis(x, y).items():
                add(pending, w[:i] + (z,) + w[i + 2 :], F.mul(c, v))
        else:
            x = w[i]
            rest = w[:i] + w[i + p :]
            chi_p = F.pow(chi_values[x], p)
            if chi_p:
                add(pending, rest, F.mul(c, chi_p))
            if cb.p_power(x) is not None:
                add(pending, w[:i] + (cb.p_power(x),) + w[i + p :], c)
    return done
