"""Exact rational and integer linear algebra.

Everything in this package runs over Q with arbitrary precision; no floats
appear anywhere.  Rationals are ``fractions.Fraction``; integer lattice
computations (Hermite forms, kernels, saturations, indices) use plain Python
ints.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Rational = Fraction

Vec = tuple[Fraction, ...]
IntVec = tuple[int, ...]


def rat(x) -> Fraction:
    """Coerce ints, strings like "3/4", or Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def rat_str(x: Fraction) -> str:
    """Serialize a rational as "p/q", or "p" when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class QMatrix:
    """Immutable dense matrix over Q."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Iterable[Iterable]):
        rows = tuple(tuple(rat(e) for e in row) for row in entries)
        self.entries = rows
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0
        if any(len(r) != self.cols for r in rows):
            raise ValueError("ragged matrix")

    @classmethod
    def zero(cls, rows: int, cols: int) -> "QMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int | None = None) -> "QMatrix":
        columns = [tuple(rat(e) for e in c) for c in columns]
        m = len(columns[0]) if columns else (nrows or 0)
        inst = cls.__new__(cls)
        inst.entries = tuple(tuple(c[i] for c in columns) for i in range(m))
        inst.rows = m
        inst.cols = len(columns)
        return inst

    def column(self, j: int) -> Vec:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[Vec]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "QMatrix":
        return QMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def mul(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ot = other.transpose().entries
        return QMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in ot] for row in self.entries]
        )

    def is_zero(self) -> bool:
        return all(e == 0 for row in self.entries for e in row)

    def __eq__(self, other) -> bool:
        return isinstance(other, QMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        body = "; ".join(" ".join(rat_str(e) for e in row) for row in self.entries)
        return f"QMatrix[{self.rows}x{self.cols}: {body}]"


def _as_rows(m) -> list[list[Fraction]]:
    if isinstance(m, QMatrix):
        return [list(r) for r in m.entries]
    return [[rat(e) for e in row] for row in m]


def rref(m) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices).

    Zero rows are dropped.  The output is canonical: it depends only on the
    row space, which makes all bases built from it deterministic.
    """
    rows = _as_rows(m)
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c]
        rows[r] = [e / inv for e in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [rows[i] for i in range(r)], pivots


def _int_rows(m) -> list[list[int]] | None:
    rows = _as_rows(m)
    out = []
    for row in rows:
        current = []
        for e in row:
            if e.denominator != 1:
                return None
            current.append(e.numerator)
        out.append(current)
    return out


def bareiss_rank(rows: list[list[int]]) -> int:
    """Fraction-free rank of an integer matrix (Bareiss elimination)."""
    a = [list(r) for r in rows]
    if not a or not a[0]:
        return 0
    n, m = len(a), len(a[0])
    rank = 0
    prev = 1
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, n):
            for j in range(c + 1, m):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        rank += 1
        r += 1
        if r == n:
            break
    return rank


def rank(m) -> int:
    """Exact rank over Q; integer matrices go through fraction-free Bareiss."""
    ints = _int_rows(m)
    if ints is not None:
        return bareiss_rank(ints)
    return len(rref(m)[0])


def kernel_basis(m) -> QMatrix:
    """Basis of the right null space, as matrix columns.

    cols(result) = cols(m) - rank(m); the basis is the canonical one read off
    the RREF (free variable set to 1, other free variables 0).
    """
    rows = _as_rows(m)
    ncols = len(rows[0]) if rows else (m.cols if isinstance(m, QMatrix) else 0)
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    cols = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -red[r][f]
        cols.append(tuple(v))
    return QMatrix.from_columns(cols, nrows=ncols)


def solve(m, b) -> Vec | None:
    """One exact solution of m x = b, or None if inconsistent.

    Free variables are set to 0, so the result is deterministic.
    """
    rows = _as_rows(m)
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    bvec = [rat(e) for e in b]
    if len(bvec) != nrows:
        raise ValueError("shape mismatch")
    aug = [rows[i] + [bvec[i]] for i in range(nrows)]
    red, pivots = rref(aug)
    x = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        if p == ncols:
            return None
        x[p] = red[r][ncols]
    return tuple(x)


def det(m) -> Fraction:
    """Exact determinant of a square matrix."""
    rows = _as_rows(m)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of non-square matrix")
    if n == 0:
        return Fraction(1)
    sign = 1
    d = Fraction(1)
    a = rows
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        d *= a[c][c]
        inv = a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return sign * d


# ---------------------------------------------------------------------------
# Integer lattice algorithms
# ---------------------------------------------------------------------------


def vec_gcd(v: Sequence[int]) -> int:
    g = 0
    for e in v:
        g = gcd(g, abs(e))
    return g


def primitive(v: Sequence) -> IntVec:
    """Scale a nonzero rational vector to its primitive integer form."""
    fv = [rat(e) for e in v]
    if all(e == 0 for e in fv):
        raise ValueError("zero vector has no primitive form")
    lcm = 1
    for e in fv:
        lcm = lcm * e.denominator // gcd(lcm, e.denominator)
    iv = [int(e * lcm) for e in fv]
    g = vec_gcd(iv)
    return tuple(e // g for e in iv)


def hnf_rows(rows: Iterable[Sequence[int]]) -> list[IntVec]:
    """Canonical row Hermite normal form; zero rows dropped.

    Pivots are positive, entries above a pivot are reduced into [0, pivot).
    The result depends only on the lattice generated by the input rows.
    """
    a = [list(map(int, r)) for r in rows]
    a = [r for r in a if any(r)]
    if not a:
        return []
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        # gcd-reduce column c below row r
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[i0] = a[i0], a[r]
            done = True
            for i in range(r + 1, len(a)):
                if a[i][c] != 0:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c] != 0:
                        done = False
            if done:
                break
        if r < len(a) and a[r][c] != 0:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
            r += 1
            if r == len(a):
                break
    return [tuple(row) for row in a[:r] if any(row)]


def integer_kernel_basis(rows: Iterable[Sequence[int]], ncols: int) -> list[IntVec]:
    """Basis of {x in Z^ncols : A x = 0} for integer A; always saturated."""
    a = [list(map(int, r)) for r in rows]
    u = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]  # column ops tracker

    def colop(j, k, q):
        # col_j -= q * col_k
        for row in a:
            row[j] -= q * row[k]
        for row in u:
            row[j] -= q * row[k]

    def colswap(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in u:
            row[j], row[k] = row[k], row[j]

    pivot_col = 0
    for i in range(len(a)):
        while True:
            nz = [j for j in range(pivot_col, ncols) if a[i][j] != 0]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(a[i][j]))
            colswap(pivot_col, j0)
            done = True
            for j in range(pivot_col + 1, ncols):
                if a[i][j] != 0:
                    q = a[i][j] // a[i][pivot_col]
                    colop(j, pivot_col, q)
                    if a[i][j] != 0:
                        done = False
            if done:
                break
        if pivot_col < ncols and a[i][pivot_col] != 0:
            pivot_col += 1
            if pivot_col == ncols:
                break
    kernel = []
    for j in range(pivot_col, ncols):
        if all(row[j] == 0 for row in a):
            kernel.append(tuple(u[i][j] for i in range(ncols)))
    return hnf_rows(kernel)


def quotient_map(gens: Iterable[Sequence[int]], ncols: int) -> list[IntVec]:
    """Rows of a surjective map Z^ncols -> Z^(ncols-r) killing exactly span(gens).

    Built as an integral basis of the orthogonal complement; saturation of the
    basis guarantees surjectivity.
    """
    return integer_kernel_basis(list(gens), ncols)


def saturation_basis(gens: Iterable[Sequence[int]], ncols: int) -> list[IntVec]:
    """Canonical basis of the saturated lattice span_Q(gens) meet Z^ncols."""
    comp = quotient_map(gens, ncols)
    return integer_kernel_basis(comp, ncols)


def span_basis(vectors: Iterable[Sequence], ncols: int) -> list[IntVec]:
    """Canonical integer basis of the rational span of arbitrary rational vectors."""
    ints = []
    for v in vectors:
        fv = [rat(e) for e in v]
        if any(e != 0 for e in fv):
            ints.append(primitive(fv))
    if not ints:
        return []
    return saturation_basis(ints, ncols)


def lattice_index(columns: Sequence[Sequence[int]], ncols: int | None = None) -> int:
    """Index of the lattice generated by the columns inside its saturation.

    For a square nonsingular matrix this is |det|.  Columns must be linearly
    independent.
    """
    cols = [tuple(map(int, c)) for c in columns]
    if not cols:
        return 1
    m = len(cols[0])
    mat = [[c[i] for c in cols] for i in range(m)]
    if rank(mat) != len(cols):
        raise ValueError("columns are linearly dependent")
    sat = saturation_basis(cols, m)
    # express each column in the saturation basis; integral by construction
    satmat = [[s[i] for s in sat] for i in range(m)]
    expr = []
    for c in cols:
        x = solve(satmat, c)
        assert x is not None
        expr.append(x)
    d = det([[expr[j][i] for j in range(len(cols))] for i in range(len(cols))])
    assert d.denominator == 1 and d != 0
    return abs(d.numerator)


# ---------------------------------------------------------------------------
# Sparse exact rank (for large cellular boundary matrices)
# ---------------------------------------------------------------------------


def sparse_rank(rows: Iterable[dict[int, Fraction]]) -> int:
    """Rank of a sparse matrix given as per-row {col: value} dicts."""
    work = [dict(r) for r in rows if r]
    colrows: dict[int, set[int]] = {}
    for i, row in enumerate(work):
        for c in row:
            colrows.setdefault(c, set()).add(i)
    alive = set(range(len(work)))
    rk = 0
    while alive:
        # Markowitz-style pivot: smallest fill estimate, prefer unit pivots.
        best = None
        for i in alive:
            row = work[i]
            for c, v in row.items():
                cost = (len(row) - 1) * (len(colrows[c]) - 1)
                unit = 0 if v == 1 or v == -1 else 1
                key = (unit, cost, i, c)
                if best is None or key < best[0]:
                    best = (key, i, c)
        if best is None:
            break
        _, pi, pc = best
        prow = work[pi]
        pval = prow[pc]
        alive.discard(pi)
        for c in prow:
            colrows[c].discard(pi)
        rk += 1
        targets = list(colrows.get(pc, ()))
        for ti in targets:
            trow = work[ti]
            f = trow[pc] / pval
            for c, v in prow.items():
                nv = trow.get(c, Fraction(0)) - f * v
                if nv == 0:
                    if c in trow:
                        del trow[c]
                        colrows[c].discard(ti)
                else:
                    if c not in trow:
                        colrows.setdefault(c, set()).add(ti)
                    trow[c] = nv
            if not trow:
                alive.discard(ti)
    return rk
