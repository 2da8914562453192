"""Exact linear algebra over the rationals.

Vectors are sparse dicts ``{column: Fraction}`` with no stored zeros.  All
elimination is deterministic: pivots are chosen by smallest column key, so
echelon forms (and everything built on them) are reproducible.
"""

from fractions import Fraction


def _clean(vec):
    return {k: v for k, v in vec.items() if v}


def add_scaled(target, vec, scale):
    """In-place ``target += scale * vec`` for sparse vectors."""
    for k, v in vec.items():
        nv = target.get(k, 0) + scale * v
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


class RowEchelon:
    """Incrementally maintained reduced row echelon basis of a subspace.

    Rows are keyed by pivot column; the pivot entry is normalised to 1 and
    eliminated from every other stored row, so :meth:`reduce` returns the
    unique normal form of a vector modulo the span.  ``key`` orders the
    columns; the pivot of a row is its ``choose`` (min or max) column under ``key``.
    """

    def __init__(self, choose=min, key=None):
        self.rows = {}
        self.choose = choose
        self.key = key

    def __len__(self):
        return len(self.rows)

    def _pivot(self, vec):
        return self.choose(vec, key=self.key) if self.key else self.choose(vec)

    def reduce(self, vec):
        vec = _clean(dict(vec))
        for col in [c for c in vec if c in self.rows]:
            coeff = vec.get(col)
            if coeff:
                add_scaled(vec, self.rows[col], -coeff)
        return vec

    def add(self, vec):
        """Add ``vec`` to the span; returns True if the rank grew."""
        vec = self.reduce(vec)
        if not vec:
            return False
        piv = self._pivot(vec)
        inv = Fraction(1) / vec[piv]
        vec = {k: v * inv for k, v in vec.items()}
        for row in self.rows.values():
            c = row.get(piv)
            if c:
                add_scaled(row, vec, -c)
        self.rows[piv] = vec
        return True

    def pivots(self):
        return set(self.rows)


def rank(vectors):
    """Exact rank of a list of sparse vectors."""
    ech = RowEchelon()
    for v in vectors:
        ech.add(v)
    return len(ech)


def determinant(matrix):
    """Exact determinant of a square matrix given as a list of lists."""
    n = len(matrix)
    m = [[Fraction(x) for x in row] for row in matrix]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return det


def inverse(matrix):
    """Exact inverse of a square matrix (list of lists) as Fractions."""
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        p = aug[c][c]
        aug[c] = [x / p for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b)))
             for j in range(len(b[0]))] for i in range(len(a))]


def transpose(a):
    return [list(r) for r in zip(*a)]
