"""Coefficient spaces F_p(face) and the cosheaf maps between them.

F_p of a fan is the subspace of the p-th wedge power of the ambient chart
space spanned, cone by cone, by p-fold wedges of vectors from a single cone.
Bases are row-reduced echelon bases in lexicographic wedge coordinates, so
every matrix produced here is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import exact
from .exact import Fraction as Q, rat
from .tropgeo import (
    Fan,
    GeometryError,
    TropicalComplex,
    relative_fan,
    sed_raise_map,
    star_fan,
    transition_matrix,
)


def wedge_index(rank: int, p: int) -> list[tuple[int, ...]]:
    """Lexicographic p-subsets of {0, ..., rank-1}: the wedge coordinate order."""
    return list(combinations(range(rank), p))


def wedge_of_vectors(vectors: Sequence[Sequence], rank: int) -> tuple[Fraction, ...]:
    """Coordinates of v_1 ^ ... ^ v_p in the lexicographic wedge basis."""
    p = len(vectors)
    coords = []
    for rows in wedge_index(rank, p):
        coords.append(exact.det([[rat(vectors[j][i]) for j in range(p)] for i in rows]))
    return tuple(coords)


def wedge_matrix(mat: Sequence[Sequence], p: int, rank_out: int, rank_in: int):
    """Matrix of the induced map on p-th wedge powers (entries are p-minors)."""
    rows_out = wedge_index(rank_out, p)
    cols_in = wedge_index(rank_in, p)
    out = []
    for rset in rows_out:
        row = []
        for cset in cols_in:
            row.append(exact.det([[rat(mat[i][j]) for j in cset] for i in rset]))
        out.append(row)
    return out


def _echelon(vectors: list[tuple[Fraction, ...]]) -> list[tuple[Fraction, ...]]:
    rows, _ = exact.rref(vectors) if vectors else ([], [])
    return [tuple(r) for r in rows]


@dataclass(frozen=True)
class CoefficientSpace:
    """An echelon basis of F_p(face) inside the wedge power of a chart space."""

    face: int
    degree: int
    chart: int
    space_rank: int
    basis: tuple[tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_json(self) -> list[list[str]]:
        """Debug dump: the basis vectors as arrays of rational strings."""
        from .exact import rat_str

        return [[rat_str(e) for e in b] for b in self.basis]

    def express(self, vec: Sequence[Fraction]) -> tuple[Fraction, ...] | None:
        """Coordinates of vec in the echelon basis, or None if outside."""
        vec = [rat(e) for e in vec]
        coeffs = []
        for b in self.basis:
            piv = next(i for i, e in enumerate(b) if e != 0)  # leading 1 of the RREF row
            coeffs.append(vec[piv])
        residual = list(vec)
        for c, b in zip(coeffs, self.basis):
            residual = [r - c * e for r, e in zip(residual, b)]
        if any(r != 0 for r in residual):
            return None
        return tuple(coeffs)


def fan_coefficient_space(fan: Fan, p: int) -> list[tuple[Fraction, ...]]:
    """Echelon basis of F_p of a fan, from the span lattices of its cones."""
    rank = fan.rank
    if p == 0:
        return [(Q(1),)]
    if p > rank:
        return []
    vectors: list[tuple[Fraction, ...]] = []
    seen_spans = set()
    for cone in fan.cones:
        span = tuple(cone.span())
        if span in seen_spans or len(span) < p:
            continue
        seen_spans.add(span)
        for sub in combinations(span, p):
            vectors.append(wedge_of_vectors(sub, rank))
    return _echelon(vectors)


def coefficient_space(x: TropicalComplex, fid: int, p: int) -> CoefficientSpace:
    """F_p of a face: wedges from single cones of its star fan."""
    f = x.faces[fid]
    chart = f.canonical_chart()
    fan = star_fan(x, fid, chart=chart)
    basis = fan_coefficient_space(fan, p)
    return CoefficientSpace(face=fid, degree=p, chart=chart,
                            space_rank=fan.rank, basis=tuple(basis))


def relative_coefficient_space(x: TropicalComplex, fid: int, p: int) -> CoefficientSpace:
    """F_p of the relative fan, in the integer quotient lattice."""
    fan = relative_fan(x, fid)
    basis = fan_coefficient_space(fan, p)
    return CoefficientSpace(face=fid, degree=p, chart=x.faces[fid].canonical_chart(),
                            space_rank=fan.rank, basis=tuple(basis))


def _pointwise_matrix(x: TropicalComplex, sup: int, sub: int) -> list[list[Fraction]]:
    """The chart-level linear map under which tangent vectors at the bigger
    face are read at the smaller one: an identity-with-transition for equal
    sedentarity, a divisorial projection when sedentarity rises."""
    fs, fb = x.faces[sup], x.faces[sub]
    cs, cb = fs.canonical_chart(), fb.canonical_chart()
    if fs.sed == fb.sed:
        return [[rat(e) for e in row] for row in transition_matrix(x.N, fs.sed, cs, cb)]
    jset = set(fb.sed) - set(fs.sed)
    if len(jset) != 1:
        raise GeometryError("iota needs cosedentarity 0 or 1")
    (j,) = jset
    drop, mid_chart = sed_raise_map(x.N, fs.sed, cs, j)
    post = transition_matrix(x.N, fb.sed, mid_chart, cb)
    comp = [[sum(rat(post[i][k]) * rat(drop[k][l]) for k in range(len(drop)))
             for l in range(len(drop[0]))] for i in range(len(post))]
    return comp


def iota(x: TropicalComplex, sup: int, sub: int, p: int):
    """Matrix of the cosheaf map F_p(sup face) -> F_p(sub face) in the stored
    echelon bases; raises if the image leaves the target space."""
    src = coefficient_space(x, sup, p)
    dst = coefficient_space(x, sub, p)
    if p == 0:
        return exact.QMatrix([[1]])
    lin = _pointwise_matrix(x, sup, sub)
    wm = wedge_matrix(lin, p, len(lin), src.space_rank)
    cols = []
    for b in src.basis:
        image = [sum(wm[i][k] * b[k] for k in range(len(b))) for i in range(len(wm))]
        expr = dst.express(image)
        if expr is None:
            raise GeometryError(
                f"cosheaf image of face {sup} falls outside F_{p} of face {sub}")
        cols.append(expr)
    return exact.QMatrix.from_columns(cols, nrows=dst.dim)
