"""Tropical hypersurfaces from height functions on dilated-simplex lattice points.

A height function a on {m >= 0, sum m = d} defines the tropical polynomial
max(m.x + a(m)); its corner locus, stratum by stratum, is the hypersurface.
Cells dual to the induced regular subdivision carry the mobile part; strata
where every monomial vanishes contribute whole boundary components weighted
by the lattice distance of the Newton polytope to the coordinate facet.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence

from . import exact
from .exact import Fraction as Q, lattice_index, rat, rat_str, span_basis, vec_gcd
from .tropgeo import (
    Face,
    GeometryError,
    TropicalComplex,
    canonical_json,
    divisorial_vector,
    make_face,
    fan_linear_space,
    stratum_labels,
)

IntPoint = tuple[int, ...]


class HeightError(ValueError):
    pass


class NonTransversalError(RuntimeError):
    pass


@dataclass(frozen=True)
class HeightFunction:
    """Finite rational heights on lattice points of the size-d simplex in
    Z^(N+1); absent points mean minus infinity."""

    N: int
    d: int
    values: tuple[tuple[IntPoint, Fraction], ...]

    @classmethod
    def make(cls, N: int, d: int, values: dict) -> "HeightFunction":
        vals = {}
        for m, a in values.items():
            m = tuple(int(e) for e in m)
            if len(m) != N + 1 or any(e < 0 for e in m) or sum(m) != d:
                raise HeightError(f"exponent {m} is not a lattice point of the simplex")
            vals[m] = rat(a)
        if not vals:
            raise HeightError("height function has no finite values")
        return cls(N=N, d=d, values=tuple(sorted(vals.items())))

    def as_dict(self) -> dict[IntPoint, Fraction]:
        return dict(self.values)

    def support(self) -> list[IntPoint]:
        return [m for m, _ in self.values]

    def shift(self, c) -> "HeightFunction":
        return HeightFunction.make(self.N, self.d, {m: a + rat(c) for m, a in self.values})

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "d": self.d,
            "heights": [{"m": list(m), "a": rat_str(a)} for m, a in self.values],
        }

    @classmethod
    def from_json(cls, data: dict) -> "HeightFunction":
        vals = {tuple(h["m"]): rat(h["a"]) for h in data["heights"]}
        return cls.make(data["N"], data["d"], vals)

    def save(self, path: str) -> None:
        with open(path, "w") as fh:
            fh.write(canonical_json(self.to_json()))

    @classmethod
    def load(cls, path: str) -> "HeightFunction":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


# ---------------------------------------------------------------------------
# Regular subdivisions (upper hull of the height lift)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Subdivision:
    """Regular subdivision of a point configuration induced by heights."""

    points: tuple[IntPoint, ...]
    dim: int
    maximal: tuple[frozenset, ...]               # index sets of maximal cells
    faces: tuple[tuple[frozenset, int], ...]     # all faces with their dims

    def cell_points(self, cell: frozenset) -> list[IntPoint]:
        return sorted(self.points[i] for i in cell)


def _affine_coords(points: Sequence[IntPoint]) -> tuple[list[tuple[int, ...]], int]:
    """Integer coordinates of the points inside their affine lattice span."""
    p0 = points[0]
    diffs = [tuple(a - b for a, b in zip(p, p0)) for p in points]
    basis = span_basis(diffs, len(p0))
    dim = len(basis)
    if dim == 0:
        return [() for _ in points], 0
    bcols = [[b[i] for b in basis] for i in range(len(p0))]
    out = []
    for dvec in diffs:
        x = exact.solve(bcols, dvec)
        assert x is not None and all(e.denominator == 1 for e in x)
        out.append(tuple(int(e) for e in x))
    return out, dim


def _upper_cells(coords: list[tuple[int, ...]], lifts: list[Fraction], dim: int) -> list[frozenset]:
    """Maximal cells of the regular subdivision: point sets of the
    non-vertical upper facets of the lifted configuration."""
    npts = len(coords)
    if dim == 0:
        return [frozenset(range(npts))]
    den = 1
    for h in lifts:
        den = den * h.denominator // gcd(den, h.denominator)
    z = [int(h * den) for h in lifts]
    cells: dict[tuple, frozenset] = {}

    chosen: list[int] = []

    def full_rank(idx: int) -> bool:
        rows = [[coords[j][i] - coords[chosen[0]][i] for i in range(dim)] for j in chosen[1:] + [idx]]
        return exact.rank(rows) == len(rows)

    def at_depth(start: int):
        if len(chosen) == dim + 1:
            # plane c.y + c0*den = z on the chosen points, scaled to integers
            rows = [list(coords[j]) + [den] for j in chosen]
            rhs = [z[j] for j in chosen]
            sol = exact.solve(rows, rhs)
            if sol is None:
                return
            scale = 1
            for e in sol:
                scale = scale * e.denominator // gcd(scale, e.denominator)
            c = [int(e * scale) for e in sol]
            key = tuple(c)
            if key in cells:
                return
            cell = []
            for j in range(npts):
                val = sum(c[i] * coords[j][i] for i in range(dim)) + c[dim] * den
                target = z[j] * scale
                if val < target:
                    return  # a lifted point lies above: not an upper face
                if val == target:
                    cell.append(j)
            cells[key] = frozenset(cell)
            return
        for idx in range(start, npts):
            if len(chosen) == 0 or full_rank(idx):
                chosen.append(idx)
                at_depth(idx + 1)
                chosen.pop()

    at_depth(0)
    return sorted(cells.values(), key=sorted)


def _polytope_faces(idx: frozenset, coords: list[tuple[int, ...]],
                    cache: dict) -> set[frozenset]:
    """All nonempty faces of conv(points[idx]), as index sets (incl. itself)."""
    if idx in cache:
        return cache[idx]
    pts = sorted(idx)
    local, d = _affine_coords([coords[i] for i in pts])
    out = {idx}
    if d == 0:
        cache[idx] = out
        return out
    if len(pts) == d + 1:
        # simplex fast path: faces are all nonempty subsets
        for r in range(1, d + 1):
            for sub in combinations(pts, r):
                out.add(frozenset(sub))
        cache[idx] = out
        return out
    facets: dict[tuple, set[int]] = {}
    chosen: list[int] = []

    def full_rank(j: int) -> bool:
        rows = [[local[t][i] - local[chosen[0]][i] for i in range(d)] for t in chosen[1:] + [j]]
        return exact.rank(rows) == len(rows)

    def rec(start: int):
        if len(chosen) == d:
            rows = [[local[t][i] - local[chosen[0]][i] for i in range(d)] for t in chosen[1:]]
            kb = exact.kernel_basis(rows) if rows else exact.QMatrix.identity(d)
            if kb.cols != 1:
                return
            n = exact.primitive(kb.column(0))
            base = sum(n[i] * local[chosen[0]][i] for i in range(d))
            sides = [sum(n[i] * local[t][i] for i in range(d)) - base for t in range(len(pts))]
            if all(s <= 0 for s in sides):
                n = tuple(-e for e in n)
                sides = [-s for s in sides]
            elif not all(s >= 0 for s in sides):
                return
            key = tuple(n)
            facets.setdefault(key, set()).update(pts[t] for t in range(len(pts)) if sides[t] == 0)
            return
        for t in range(start, len(pts)):
            if len(chosen) == 0 or full_rank(t):
                chosen.append(t)
                rec(t + 1)
                chosen.pop()

    rec(0)
    for fpts in facets.values():
        out |= _polytope_faces(frozenset(fpts), coords, cache)
    cache[idx] = out
    return out


def regular_subdivision(points: Sequence[IntPoint], heights: Sequence) -> Subdivision:
    pts = tuple(tuple(int(e) for e in p) for p in points)
    if len(set(pts)) != len(pts):
        raise HeightError("duplicate points")
    hs = [rat(h) for h in heights]
    coords, dim = _affine_coords(pts)
    maximal = _upper_cells(coords, hs, dim)
    cache: dict = {}
    all_faces: set[frozenset] = set()
    for cell in maximal:
        all_faces |= _polytope_faces(cell, coords, cache)
    dims = []
    for f in sorted(all_faces, key=sorted):
        _, fd = _affine_coords([pts[i] for i in sorted(f)])
        dims.append((f, fd))
    return Subdivision(points=pts, dim=dim, maximal=tuple(maximal), faces=tuple(dims))


def dual_subdivision(a: HeightFunction) -> Subdivision:
    """The regular subdivision of the Newton polytope induced by the heights."""
    supp = a.support()
    vals = a.as_dict()
    return regular_subdivision(supp, [vals[m] for m in supp])


def is_smooth(a: HeightFunction) -> bool:
    """True iff every maximal dual cell is a unimodular simplex."""
    sub = dual_subdivision(a)
    for cell in sub.maximal:
        pts = sub.cell_points(cell)
        if len(pts) != a.N + 1:
            return False
        edges = [tuple(p[i] - pts[0][i] for i in range(a.N + 1)) for p in pts[1:]]
        try:
            if lattice_index(edges) != 1:
                return False
        except ValueError:
            return False
    return True


# ---------------------------------------------------------------------------
# Hypersurface construction
# ---------------------------------------------------------------------------


def _stratum_support(a: HeightFunction, sed: tuple[int, ...]) -> list[IntPoint]:
    return [m for m in a.support() if all(m[i] == 0 for i in sed)]


def _dual_face(a: HeightFunction, sed: tuple[int, ...], sub: Subdivision,
               cell: frozenset, weight: int) -> Face:
    """The face of the hypersurface dual to a subdivision face of one stratum."""
    N = a.N
    vals = a.as_dict()
    labels = stratum_labels(N, sed)
    coords = labels[1:]
    pts = sub.cell_points(cell)

    def exps(m: IntPoint) -> list[int]:
        return [m[j] for j in coords]

    verts = []
    full = len(coords)
    for mcell in sub.maximal:
        if not cell <= mcell:
            continue
        mpts = sub.cell_points(mcell)
        _, mdim = _affine_coords(mpts)
        if mdim != full:
            raise HeightError(
                "hypersurface face has no vertices (Newton polytope is not "
                "full-dimensional in its stratum); not a regular projective complex")
        m0 = mpts[0]
        rows = [[e - e0 for e, e0 in zip(exps(m), exps(m0))] for m in mpts[1:]]
        rhs = [vals[m0] - vals[m] for m in mpts[1:]]
        y = exact.solve(rows, rhs)
        assert y is not None
        verts.append(tuple(y))
    if not verts:
        raise HeightError("dual face without supporting full-dimensional cell")
    dset = [j for j in labels if all(m[j] == 0 for m in pts)]
    face = make_face(N, sed, verts, dset, weight)
    expected = len(coords) - _affine_coords(pts)[1]
    if face.dim() != expected:
        raise HeightError(
            "dual face dimension mismatch: recession is not divisorial, "
            "input is outside the regular projective class")
    _check_recession(a, sed, pts, dset)
    return face


def _check_recession(a: HeightFunction, sed, cell_pts, dset) -> None:
    """Every extreme recession ray of the dual face must be divisorial."""
    N = a.N
    labels = stratum_labels(N, sed)
    c0 = labels[0]
    coords = labels[1:]
    dim = len(coords)
    if dim == 0:
        return
    others = [m for m in _stratum_support(a, sed) if m not in cell_pts]
    m0 = cell_pts[0]

    def exps(m):
        return [m[j] for j in coords]

    eqs = [[e - e0 for e, e0 in zip(exps(m), exps(m0))] for m in cell_pts[1:]]
    ineqs = [[e0 - e for e, e0 in zip(exps(m), exps(m0))] for m in others]
    rays, has_lineality = _cone_extreme_rays(eqs, ineqs, dim)
    divs = [divisorial_vector(N, sed, c0, j) for j in dset]
    from .tropgeo import cone_member

    if has_lineality:
        raise HeightError(
            "hypersurface face recedes along a full line; "
            "input is outside the regular projective class")
    for r in rays:
        if not cone_member(divs, r):
            raise HeightError(
                "hypersurface face has a non-divisorial recession direction; "
                "input is outside the regular projective class")


def _cone_extreme_rays(eqs, ineqs, dim) -> tuple[list[tuple[int, ...]], bool]:
    """Extreme rays of {v : eqs.v = 0, ineqs.v >= 0} by active-set enumeration.

    Returns (rays, has_lineality); a cone with lineality has no extreme rays
    and is reported through the flag instead.
    """
    if eqs:
        kb = exact.kernel_basis(eqs)
        basis = [kb.column(j) for j in range(kb.cols)]
    else:
        basis = [tuple(Q(1) if i == j else Q(0) for i in range(dim)) for j in range(dim)]
    d = len(basis)
    if d == 0:
        return [], False
    lin = exact.kernel_basis([list(e) for e in eqs] + [list(r) for r in ineqs]) if (eqs or ineqs) else None
    if lin is None or lin.cols > 0:
        return [], True
    red = [[sum(rat(row[i]) * basis[j][i] for i in range(dim)) for j in range(d)] for row in ineqs]
    rays = set()
    if d == 1:
        for sgn in (1, -1):
            if all(r[0] * sgn >= 0 for r in red):
                rays.add(exact.primitive([sgn * basis[0][i] for i in range(dim)]))
        return sorted(rays), False
    for sub in combinations(range(len(red)), d - 1):
        rows = [red[i] for i in sub]
        kb2 = exact.kernel_basis(rows)
        if kb2.cols != 1:
            continue
        n = kb2.column(0)
        for cand in (n, tuple(-e for e in n)):
            if all(sum(r[j] * cand[j] for j in range(d)) >= 0 for r in red):
                v = [sum(cand[j] * basis[j][i] for j in range(d)) for i in range(dim)]
                rays.add(exact.primitive(v))
    return sorted(rays), False


def build_hypersurface(a: HeightFunction) -> TropicalComplex:
    """The weighted hypersurface as a tropical complex, stratum by stratum."""
    N = a.N
    supp = a.support()
    faces: list[Face] = []
    keys: dict[tuple, int] = {}
    pairs: list[tuple[int, int]] = []
    case3: list[tuple[int, ...]] = []
    subdivisions: dict[tuple[int, ...], Subdivision] = {}

    strata = []
    for size in range(N + 1):
        strata.extend(tuple(s) for s in combinations(range(N + 1), size))
    for sed in strata:
        aI = _stratum_support(a, sed)
        if len(aI) == 0:
            case3.append(sed)
        elif len(aI) >= 2:
            vals = a.as_dict()
            subdivisions[sed] = regular_subdivision(aI, [vals[m] for m in aI])

    # corner-locus faces dual to subdivision faces of each stratum
    for sed, sub in subdivisions.items():
        for cell, cdim in sub.faces:
            if cdim < 1:
                continue
            pts = sub.cell_points(cell)
            if not sed and cdim == 1:
                lo = min(pts)
                hi = max(pts)
                weight = vec_gcd([h - l for h, l in zip(hi, lo)])
            else:
                weight = 1
            face = _dual_face(a, sed, sub, cell, weight)
            keys[(sed, frozenset(pts))] = len(faces)
            faces.append(face)
    # whole boundary strata where every monomial is minus infinity
    for sed in case3:
        labels = stratum_labels(N, sed)
        rank = N - len(sed)
        if len(sed) == 1:
            w = min(m[sed[0]] for m in supp)
            assert w >= 1
        else:
            w = 1
        origin = tuple(Q(0) for _ in range(rank))
        for size in range(rank + 1):
            for S in combinations(labels, size):
                weight = w if size == rank and len(sed) == 1 else 1
                face = make_face(N, sed, [origin], S, weight)
                keys[(sed, frozenset(S), "fan")] = len(faces)
                faces.append(face)

    if not faces:
        raise HeightError("corner locus is empty in every stratum")

    # incidences, combinatorially
    for sed, sub in subdivisions.items():
        cells = [(frozenset(sub.cell_points(cell)), cdim) for cell, cdim in sub.faces if cdim >= 1]
        for pts, cdim in cells:
            sup = keys[(sed, pts)]
            for pts2, cdim2 in cells:
                if cdim2 == cdim + 1 and pts < pts2:
                    pairs.append((sup, keys[(sed, pts2)]))
            for j in stratum_labels(N, sed):
                if all(m[j] == 0 for m in pts):
                    child_sed = tuple(sorted(set(sed) | {j}))
                    pairs.append((sup, keys[(child_sed, pts)]))
    for sed in case3:
        labels = stratum_labels(N, sed)
        rank = N - len(sed)
        for size in range(rank + 1):
            for S in combinations(labels, size):
                sup = keys[(sed, frozenset(S), "fan")]
                for j in S:
                    pairs.append((sup, keys[(sed, frozenset(set(S) - {j}), "fan")]))
                    child_sed = tuple(sorted(set(sed) | {j}))
                    pairs.append((sup, keys[(child_sed, frozenset(set(S) - {j}), "fan")]))

    x = TropicalComplex(N, faces, incidence_pairs=pairs)
    x.validate(pure=True)
    return x


# ---------------------------------------------------------------------------
# Degree by stable intersection with a fan-like linear space
# ---------------------------------------------------------------------------


def _affine_meet(face_y: Face, face_l: Face):
    """Solve aff(F) meet aff(G) for a Y-face and a probe face (one vertex plus
    independent divisorial generators).  Returns ('empty',), ('degenerate',)
    when the hulls meet without unique transversal coordinates, or
    ('point', y, mu) with mu the cone coordinates on the probe side."""
    bf = [list(map(rat, r)) for r in face_y.span_lattice()]
    bg = [list(map(rat, d)) for d in face_l.div_vectors()]
    m = len(face_y.coord_labels())
    pf, pg = face_y.vertices[0], face_l.vertices[0]
    cols = len(bf) + len(bg)
    mat = [[(bf[j][i] if j < len(bf) else -bg[j - len(bf)][i]) for j in range(cols)]
           for i in range(m)]
    rhs = [pg[i] - pf[i] for i in range(m)]
    aug = [mat[i] + [rhs[i]] for i in range(m)]
    _, piv = exact.rref(aug)
    if cols in piv:
        return ("empty",)
    if len(piv) < cols or cols != m:
        return ("degenerate",)
    sol = exact.solve(mat, rhs)
    lam = sol[: len(bf)]
    mu = sol[len(bf):]
    y = tuple(pf[i] + sum(lam[j] * bf[j][i] for j in range(len(bf))) for i in range(m))
    return ("point", y, mu)


def _relint_position(x: TropicalComplex, fid: int, y) -> int:
    """+1 if y is in the relative interior of the face, 0 on its relative
    boundary, -1 outside (the face's affine hull is assumed to contain y)."""
    f = x.faces[fid]
    if not f.contains(y):
        return -1
    for sub, _ in x.down[fid]:
        g = x.faces[sub]
        if g.sed == f.sed and g.contains(y):
            return 0
    return 1


def degree(y: TropicalComplex, seed: int = 0, retries: int = 32) -> int:
    """Total stable-intersection number with a generic fan-like complementary
    linear space; deterministic for a given seed, independent of it."""
    if not y.is_pure():
        raise GeometryError("degree needs a pure-dimensional complex")
    n = y.dim()
    k = y.N - n
    if not 1 <= k <= y.N - 1:
        raise GeometryError("complex has no complementary linear space")
    spread = 1
    for f in y.faces:
        for v in f.vertices:
            for e in v:
                spread = max(spread, abs(e.numerator) // e.denominator + 1)
    window = 16 * spread
    rng = random.Random(seed)
    last = None
    for _ in range(retries):
        x0 = tuple(Q(rng.randint(-window, window)) for _ in range(y.N))
        try:
            return _degree_once(y, x0, k)
        except NonTransversalError as exc:
            last = exc
            continue
    raise NonTransversalError(f"no transversal position found in {retries} tries: {last}")


def _degree_once(y: TropicalComplex, x0, k: int) -> int:
    probe = fan_linear_space(x0, k, y.N)
    n = y.dim()
    by_sed_y: dict[tuple, list[int]] = {}
    for i, f in enumerate(y.faces):
        by_sed_y.setdefault(f.sed, []).append(i)
    by_sed_l: dict[tuple, list[int]] = {}
    for i, f in enumerate(probe.faces):
        by_sed_l.setdefault(f.sed, []).append(i)
    total = 0
    for sed, yids in by_sed_y.items():
        lids = by_sed_l.get(sed, [])
        m = y.N - len(sed)
        for fy in yids:
            for fl in lids:
                dy, dl = y.face_dim(fy), probe.face_dim(fl)
                meet = _affine_meet(y.faces[fy], probe.faces[fl])
                if meet[0] == "empty":
                    continue
                if meet[0] == "degenerate" or dy + dl != m or dy != n:
                    raise NonTransversalError(
                        f"faces {fy} and probe {fl} meet non-transversally")
                _, pt, mu = meet
                pos_l = 1 if all(c > 0 for c in mu) else (-1 if any(c < 0 for c in mu) else 0)
                if pos_l < 0:
                    continue
                pos_y = _relint_position(y, fy, pt)
                if pos_y < 0:
                    continue
                if pos_l == 0 or pos_y == 0:
                    raise NonTransversalError(
                        f"intersection on a face boundary at {pt}")
                sat_y = y.faces[fy].span_lattice()
                sat_l = probe.faces[fl].span_lattice()
                cols = [list(r) for r in sat_y] + [list(r) for r in sat_l]
                mult = lattice_index(cols) * y.faces[fy].weight
                total += mult
    return total


# ---------------------------------------------------------------------------
# Certified smooth height generators
# ---------------------------------------------------------------------------


def simplex_points(N: int, d: int) -> list[IntPoint]:
    out = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(tuple(prefix + [remaining]))
            return
        for v in range(remaining + 1):
            rec(prefix + [v], remaining - v, slots - 1)

    rec([], d, N + 1)
    return sorted(out)


def smooth_heights(N: int, d: int) -> HeightFunction:
    """Integer heights inducing the alcove triangulation of the dilated
    simplex, certified by is_smooth.

    In the partial-sum coordinates t_i = m_0 + ... + m_{i-1} the simplex is
    the order polytope 0 <= t_1 <= ... <= t_N <= d, and the affine arrangement
    t_i = k, t_i - t_j = k is totally unimodular: its alcoves are unimodular
    lattice simplices tiling the simplex.  Summing a convex kink function
    over the arrangement's linear forms makes exactly those alcoves the
    linearity domains of the concave height extension.
    """
    if d < 1:
        raise HeightError("degree must be positive")

    def g(t: int) -> int:
        return sum(abs(t - s) for s in range(1 - d, d))

    vals = {}
    for m in simplex_points(N, d):
        t = [sum(m[:i]) for i in range(1, N + 1)]
        f = sum(g(ti) for ti in t)
        for i in range(N):
            for j in range(i + 1, N):
                f += g(t[i] - t[j])
        vals[m] = -f
    hf = HeightFunction.make(N, d, vals)
    if not is_smooth(hf):
        raise HeightError("alcove heights failed the unimodularity certificate")
    return hf


def uniform_heights(N: int, d: int, value=0) -> HeightFunction:
    return HeightFunction.make(N, d, {m: value for m in simplex_points(N, d)})
