"""Cellular chain complexes with wedge coefficients and their invariants."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import Fraction as Q, sparse_rank
from .cosheaf import coefficient_space, iota
from .tropgeo import TropicalComplex, canonical_json


@dataclass
class ChainComplex:
    """The complex C_q = direct sum of F_p over q-faces, with its boundaries.

    Boundary matrices are sparse {(row, col): value} dicts; blocks are ordered
    by face id, so the matrices are reproducible bit for bit.
    """

    degree: int
    blocks: list[list[tuple[int, int]]]        # per q: (face id, block dim)
    dims: list[int]                            # per q: dim C_q
    boundaries: list[dict[tuple[int, int], Fraction]]  # per q >= 1: C_q -> C_{q-1}

    def boundary_rank(self, q: int) -> int:
        if q < 1 or q > len(self.boundaries):
            return 0
        mat = self.boundaries[q - 1]
        rows: dict[int, dict[int, Fraction]] = {}
        for (r, c), v in mat.items():
            rows.setdefault(r, {})[c] = v
        return sparse_rank(rows.values())

    def verify_dd_zero(self) -> bool:
        for q in range(2, len(self.dims)):
            a = self.boundaries[q - 1]   # C_q -> C_{q-1}
            b = self.boundaries[q - 2]   # C_{q-1} -> C_{q-2}
            bycol: dict[int, list[tuple[int, Fraction]]] = {}
            for (r, c), v in b.items():
                bycol.setdefault(c, []).append((r, v))
            prod: dict[tuple[int, int], Fraction] = {}
            for (mid, c), v in a.items():
                for r, w in bycol.get(mid, ()):
                    key = (r, c)
                    prod[key] = prod.get(key, Q(0)) + w * v
            if any(val != 0 for val in prod.values()):
                return False
        return True


def chain_complex(x: TropicalComplex, p: int) -> ChainComplex:
    n = x.dim()
    spaces = {fid: coefficient_space(x, fid, p) for fid in range(len(x.faces))}
    blocks: list[list[tuple[int, int]]] = []
    offsets: list[dict[int, int]] = []
    dims: list[int] = []
    for q in range(n + 1):
        blk = [(fid, spaces[fid].dim) for fid in x.faces_of_dim(q)]
        off = {}
        pos = 0
        for fid, d in blk:
            off[fid] = pos
            pos += d
        blocks.append(blk)
        offsets.append(off)
        dims.append(pos)
    boundaries = []
    for q in range(1, n + 1):
        mat: dict[tuple[int, int], Fraction] = {}
        for fid in x.faces_of_dim(q):
            if spaces[fid].dim == 0:
                continue
            col0 = offsets[q][fid]
            for sub, sign in x.down[fid]:
                if spaces[sub].dim == 0:
                    continue
                row0 = offsets[q - 1][sub]
                m = iota(x, fid, sub, p)
                for i in range(m.rows):
                    for j in range(m.cols):
                        v = m.entries[i][j]
                        if v != 0:
                            mat[(row0 + i, col0 + j)] = sign * v
        boundaries.append(mat)
    return ChainComplex(degree=p, blocks=blocks, dims=dims, boundaries=boundaries)


def homology_dims(x: TropicalComplex, p: int) -> list[int]:
    """dim H_q(X; F_p) for q = 0..dim X from exact boundary ranks."""
    cc = chain_complex(x, p)
    n = len(cc.dims) - 1
    ranks = [cc.boundary_rank(q) for q in range(n + 2)]
    return [cc.dims[q] - ranks[q] - ranks[q + 1] for q in range(n + 1)]


@dataclass(frozen=True)
class HodgeTable:
    n: int
    h: tuple[tuple[int, ...], ...]   # h[p][q]

    def chi(self, p: int) -> int:
        return sum((-1) ** q * self.h[p][q] for q in range(self.n + 1))

    def chi_list(self) -> list[int]:
        return [self.chi(p) for p in range(self.n + 1)]


def hodge_table(x: TropicalComplex) -> HodgeTable:
    n = x.dim()
    rows = tuple(tuple(homology_dims(x, p)) for p in range(n + 1))
    return HodgeTable(n=n, h=rows)


def chi(x: TropicalComplex, p: int) -> int:
    dims = homology_dims(x, p)
    return sum((-1) ** q * d for q, d in enumerate(dims))


def chi_y(x: TropicalComplex) -> list[int]:
    """Coefficients of the chi_y genus: sum over p of chi_p y^p."""
    return hodge_table(x).chi_list()


def e_polynomial(x: TropicalComplex) -> list[int]:
    """Diagonal E-polynomial coefficients: E = sum over p of chi_p u^p v^p.

    Implemented verbatim with the alternating chi_p weights; see the README
    note on the sign convention relative to the Hodge-Deligne polynomial.
    """
    return hodge_table(x).chi_list()


def euler_check(x: TropicalComplex) -> bool:
    """chi_0 must agree with the alternating face count of the cell structure."""
    cells = sum((-1) ** x.face_dim(i) for i in range(len(x.faces)))
    return chi(x, 0) == cells


def poly_str(coeffs: Sequence[int], term) -> str:
    parts = []
    for p, c in enumerate(coeffs):
        if c == 0:
            continue
        t = term(p)
        mag = abs(c)
        if t == "":
            body = str(mag)
        elif mag == 1:
            body = t
        else:
            body = f"{mag}*{t}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


def chi_y_str(coeffs: Sequence[int]) -> str:
    return poly_str(coeffs, lambda p: "" if p == 0 else ("y" if p == 1 else f"y^{p}"))


def e_poly_str(coeffs: Sequence[int]) -> str:
    return poly_str(coeffs, lambda p: "" if p == 0 else ("u*v" if p == 1 else f"u^{p}*v^{p}"))


def homology_report(x: TropicalComplex) -> dict:
    table = hodge_table(x)
    chis = table.chi_list()
    return {
        "n": table.n,
        "hodge": [list(row) for row in table.h],
        "chi": chis,
        "chi_y": chi_y_str(chis),
        "E": e_poly_str(chis),
    }


def homology_report_json(x: TropicalComplex) -> str:
    return canonical_json(homology_report(x))


def hodge_text_table(table: HodgeTable) -> str:
    """Aligned h[p][q] table for terminals: rows p, columns q."""
    n = table.n
    width = max(5, max(len(str(e)) for row in table.h for e in row) + 2)
    head = "p\\q".ljust(6) + "".join(str(q).rjust(width) for q in range(n + 1))
    lines = [head]
    for p in range(n + 1):
        lines.append(str(p).ljust(6) + "".join(str(table.h[p][q]).rjust(width) for q in range(n + 1)))
    return "\n".join(lines)
