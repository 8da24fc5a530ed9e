"""Exact matrices: fraction-free elimination, nullspaces and modular rank."""

from fractions import Fraction
from math import gcd, lcm

from .modp import reduce_rational
from .poly import as_rational


class ExactMatrix:
    """Rectangular matrix of exact rationals (rows of int/Fraction)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries, cols=None):
        entries = [tuple(as_rational(x) for x in row) for row in entries]
        if cols is None:
            cols = len(entries[0]) if entries else 0
        for r in entries:
            if len(r) != cols:
                raise ValueError("ragged matrix")
        self.rows = len(entries)
        self.cols = cols
        self.entries = tuple(entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return (isinstance(other, ExactMatrix) and self.cols == other.cols
                and self.entries == other.entries)

    def __repr__(self):
        return f"ExactMatrix({[list(r) for r in self.entries]!r})"

    def apply(self, v):
        return [sum(a * b for a, b in zip(row, v)) for row in self.entries]

    def integer_rows(self):
        """Each row scaled by the lcm of its denominators (same nullspace)."""
        out = []
        for row in self.entries:
            m = lcm(*(x.denominator for x in row if isinstance(x, Fraction))) \
                if any(isinstance(x, Fraction) for x in row) else 1
            out.append([int(x * m) for x in row])
        return out


def _bareiss_echelon(rows, ncols):
    """Fraction-free row echelon form; returns (matrix, pivot columns)."""
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, nrows):
            a = m[i][c]
            row_i = m[i]
            row_r = m[r]
            for j in range(c, ncols):
                row_i[j] = (p * row_i[j] - a * row_r[j]) // prev
        prev = p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(M):
    return len(_bareiss_echelon(M.integer_rows(), M.cols)[1])


def nullspace(M):
    """Exact basis of the right nullspace of ``M`` (empty iff full column rank).

    Each basis vector is integral and primitive, with a 1-like positive entry
    at its free column.
    """
    ech, pivots = _bareiss_echelon(M.integer_rows(), M.cols)
    free = [c for c in range(M.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * M.cols
        v[f] = Fraction(1)
        # back substitution through the pivot rows
        for k in range(len(pivots) - 1, -1, -1):
            c = pivots[k]
            row = ech[k]
            s = sum(row[j] * v[j] for j in range(c + 1, M.cols) if v[j])
            v[c] = Fraction(-s, row[c])
        den = lcm(*(x.denominator for x in v))
        ints = [int(x * den) for x in v]
        g = 0
        for x in ints:
            g = gcd(g, x)
        vec = [x // g for x in ints]
        if next(x for x in vec if x) < 0:
            vec = [-x for x in vec]
        basis.append(tuple(vec))
    return basis


def rank_mod_p(rows, prime):
    """Rank over F_p of a matrix given as rows of rationals (reduced first)."""
    m = [[reduce_rational(x, prime) for x in row] for row in rows]
    ncols = len(m[0]) if m else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, prime)
        row_r = m[r]
        for i in range(r + 1, len(m)):
            a = m[i][c]
            if a:
                f = a * inv % prime
                row_i = m[i]
                for j in range(c, ncols):
                    row_i[j] = (row_i[j] - f * row_r[j]) % prime
        r += 1
        if r == len(m):
            break
    return r
