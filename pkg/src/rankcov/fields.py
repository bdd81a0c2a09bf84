"""Prime fields GF(q), extension fields GF(q^m), and linear algebra over GF(q).

Extension field elements are ints whose base-q digits are the coefficients of
the polynomial basis 1, alpha, alpha^2, ... (least significant digit first),
reduced modulo a fixed irreducible polynomial.
"""

from __future__ import annotations

import functools

import numpy as np

# Coefficients are listed lowest degree first and include the leading 1.
# All of these are primitive.
IRREDUCIBLE_POLYNOMIALS: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 1): (1, 1),  # x + 1
    (2, 2): (1, 1, 1),  # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),  # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),  # x^4 + x + 1
    (2, 5): (1, 0, 1, 0, 0, 1),  # x^5 + x^2 + 1
    (2, 6): (1, 1, 0, 0, 0, 0, 1),  # x^6 + x + 1
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),  # x^7 + x + 1
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),  # x^8 + x^4 + x^3 + x^2 + 1
    (3, 1): (1, 1),  # x + 1
    (3, 2): (2, 1, 1),  # x^2 + x + 2
    (3, 3): (1, 2, 0, 1),  # x^3 + 2x + 1
    (3, 4): (2, 0, 0, 1, 1),  # x^4 + x^3 + 2
}


def _digits(value: int, q: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        value, d = divmod(value, q)
        out.append(d)
    return out


def _undigits(digits, q: int) -> int:
    value = 0
    for d in reversed(digits):
        value = value * q + int(d)
    return value


class ExtensionField:
    """GF(q^m) for prime q, with full addition and multiplication tables.

    Only intended for the small fields used by the exhaustive oracles
    (q^m <= 256).
    """

    def __init__(self, q: int, m: int) -> None:
        if (q, m) not in IRREDUCIBLE_POLYNOMIALS:
            raise ValueError(f"no stored irreducible polynomial for GF({q}^{m})")
        self.q, self.m = q, m
        self.order = q**m
        self.modulus = IRREDUCIBLE_POLYNOMIALS[q, m]
        size = self.order
        digits = np.array([_digits(x, q, m) for x in range(size)], dtype=np.int64)
        weights = q ** np.arange(m, dtype=np.int64)
        self.add_table = ((digits[:, None, :] + digits[None, :, :]) % q) @ weights
        self.neg_table = ((-digits) % q) @ weights
        self.mul_table = np.array(
            [[self._mul_poly(a, b) for b in range(size)] for a in range(size)], dtype=np.int64
        )
        inv = np.zeros(size, dtype=np.int64)
        for a in range(1, size):
            hits = np.nonzero(self.mul_table[a] == 1)[0]
            if len(hits) != 1:
                raise ArithmeticError(f"element {a} has no unique inverse; modulus is reducible")
            inv[a] = hits[0]
        self.inv_table = inv

    def _mul_poly(self, a: int, b: int) -> int:
        q, m = self.q, self.m
        da, db = _digits(a, q, m), _digits(b, q, m)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % q
        # Reduce from the top using the monic modulus.
        for deg in range(2 * m - 2, m - 1, -1):
            c = prod[deg]
            if c:
                for k in range(m + 1):
                    prod[deg - m + k] = (prod[deg - m + k] - c * self.modulus[k]) % q
        return _undigits(prod[:m], q)

    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return int(self.inv_table[a])

    def pow(self, a: int, e: int) -> int:
        out = 1
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def frobenius(self, a: int, i: int = 1) -> int:
        """a^(q^i)."""
        return self.pow(a, self.q**i)

    def to_coeffs(self, a: int) -> list[int]:
        return _digits(a, self.q, self.m)

    def from_coeffs(self, coeffs) -> int:
        return _undigits(coeffs, self.q)


@functools.lru_cache(maxsize=None)
def extension_field(q: int, m: int) -> ExtensionField:
    return ExtensionField(q, m)


# -- dense linear algebra over GF(q), q prime --------------------------------


def row_echelon(M: np.ndarray, q: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form over GF(q) and the pivot columns.

    Pivots are taken leftmost first, with the topmost eligible row.
    """
    R = np.array(M, dtype=np.int64) % q
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            R[[r, p]] = R[[p, r]]
        R[r] = (R[r] * pow(int(R[r, c]), -1, q)) % q
        for k in range(rows):
            if k != r and R[k, c]:
                R[k] = (R[k] - R[k, c] * R[r]) % q
        pivots.append(c)
        r += 1
    return R, pivots


def matrix_rank(M: np.ndarray, q: int) -> int:
    """Rank of a matrix over GF(q)."""
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(row_echelon(M, q)[1])


def matrix_inverse(M: np.ndarray, q: int) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    k = M.shape[0]
    if M.shape != (k, k):
        raise ValueError("matrix must be square")
    R, pivots = row_echelon(np.hstack([M, np.eye(k, dtype=np.int64)]), q)
    if pivots[:k] != list(range(k)):
        raise ZeroDivisionError("matrix is singular")
    return R[:, k:]


def batch_rank(mats: np.ndarray, q: int) -> np.ndarray:
    """Ranks over GF(q) of a stack of matrices with shape (N, rows, cols)."""
    A = np.array(mats, dtype=np.int64) % q
    N, rows, cols = A.shape
    rank = np.zeros(N, dtype=np.int64)
    inverses = np.array([0] + [pow(x, -1, q) for x in range(1, q)], dtype=np.int64)
    row_ids = np.arange(rows)
    idx = np.arange(N)
    for c in range(cols):
        eligible = (row_ids[None, :] >= rank[:, None]) & (A[:, :, c] != 0)
        has = eligible.any(axis=1)
        if not has.any():
            continue
        sel = idx[has]
        piv = np.argmax(eligible[has], axis=1)
        tgt = rank[has]
        # Swap the pivot row into position rank.
        pivot_rows = A[sel, piv].copy()
        A[sel, piv] = A[sel, tgt]
        pivot_rows = (pivot_rows * inverses[pivot_rows[:, c]][:, None]) % q
        A[sel, tgt] = pivot_rows
        factors = A[sel, :, c].copy()
        factors[np.arange(sel.size), tgt] = 0
        A[sel] = (A[sel] - factors[:, :, None] * pivot_rows[:, None, :]) % q
        rank[has] += 1
    return rank
