"""Tropical projective geometry: charts, faces, complexes, and fans.

Coordinate conventions
----------------------
A point of the open stratum TP_I of TP^N (coordinates in I frozen at -infty)
is stored in the *reference chart* of its stratum: the smallest coordinate
label c not in I.  The chart coordinates are y_k = x_k - x_c for the labels
k outside I u {c}, listed in increasing order.  All face geometry lives in
these reference-chart coordinates; transitions to other charts are applied on
demand and are linear.

An unbounded face is a convex hull of vertices plus a cone over divisorial
vectors named by coordinate labels, which is exact for the regular complexes
this package accepts; faces with any other recession direction are rejected
at validation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from . import exact
from .exact import Fraction as Q, primitive, rat, rat_str

Vec = tuple[Fraction, ...]


class GeometryError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Charts and transitions
# ---------------------------------------------------------------------------


def stratum_labels(N: int, sed: Sequence[int]) -> list[int]:
    s = set(sed)
    return [k for k in range(N + 1) if k not in s]


def reference_chart(N: int, sed: Sequence[int]) -> int:
    labels = stratum_labels(N, sed)
    if not labels:
        raise GeometryError("empty stratum")
    return labels[0]


def coordinate_labels(N: int, sed: Sequence[int], chart: int) -> list[int]:
    return [k for k in stratum_labels(N, sed) if k != chart]


def transition_matrix(N: int, sed: Sequence[int], c_from: int, c_to: int) -> list[list[int]]:
    """Linear transition between two charts of the same stratum.

    Implements y'_k = y_k - y_{c_to} for k != c_from and y'_{c_from} =
    -y_{c_to}; the same matrix moves points and direction vectors.
    """
    src = coordinate_labels(N, sed, c_from)
    dst = coordinate_labels(N, sed, c_to)
    pos = {k: i for i, k in enumerate(src)}
    if c_from == c_to:
        return [[1 if i == j else 0 for j in range(len(src))] for i in range(len(src))]
    rows = []
    for k in dst:
        row = [0] * len(src)
        if k == c_from:
            row[pos[c_to]] = -1
        else:
            row[pos[k]] = 1
            row[pos[c_to]] -= 1
        rows.append(row)
    return rows


def apply_matrix(mat: Sequence[Sequence[int]], v: Sequence) -> Vec:
    return tuple(sum(rat(a) * rat(x) for a, x in zip(row, v)) for row in mat)


def transition_vector(N: int, sed: Sequence[int], c_from: int, c_to: int, v: Sequence) -> Vec:
    if c_from == c_to:
        return tuple(rat(e) for e in v)
    return apply_matrix(transition_matrix(N, sed, c_from, c_to), v)


def chart_transition(i: int, j: int, v: Sequence, N: int, sedentarity: Sequence[int] = ()) -> Vec:
    """Express a chart-j point or direction in chart i (mobile stratum by default)."""
    if i == j:
        raise GeometryError("transition between identical charts")
    if i in sedentarity:
        raise GeometryError(f"chart {i} is invalid for sedentarity {sorted(sedentarity)}")
    return transition_vector(N, sedentarity, j, i, v)


def divisorial_vector(N: int, sed: Sequence[int], chart: int, j: int) -> tuple[int, ...]:
    """Primitive direction toward x_j = -infty, in stratum chart coordinates."""
    labels = coordinate_labels(N, sed, chart)
    if j == chart:
        return tuple(1 for _ in labels)
    if j not in labels:
        raise GeometryError(f"coordinate {j} is not movable in this stratum")
    return tuple(-1 if k == j else 0 for k in labels)


def sed_raise_map(N: int, sed: Sequence[int], c_from: int, j: int) -> tuple[list[list[int]], int]:
    """Linear map sending stratum-(sed) chart-c_from coordinates to the
    stratum (sed u {j}) reference chart; returns (matrix, child chart)."""
    child_sed = tuple(sorted(set(sed) | {j}))
    c_child = reference_chart(N, child_sed)
    mat = transition_matrix(N, sed, c_from, c_child)
    mid_labels = coordinate_labels(N, sed, c_child)
    rows = [row for k, row in zip(mid_labels, mat) if k != j]
    return rows, c_child


def sed_raise_section(N: int, sed: Sequence[int], c_from: int, j: int) -> list[Vec]:
    """A right inverse of sed_raise_map: child basis vectors lifted to the
    parent stratum (insert 0 at coordinate j, transition back)."""
    child_sed = tuple(sorted(set(sed) | {j}))
    c_child = reference_chart(N, child_sed)
    child_labels = coordinate_labels(N, child_sed, c_child)
    mid_labels = coordinate_labels(N, sed, c_child)
    lifts = []
    for k in child_labels:
        v = [Q(0)] * len(mid_labels)
        v[mid_labels.index(k)] = Q(1)
        lifts.append(transition_vector(N, sed, c_child, c_from, v))
    return lifts


# ---------------------------------------------------------------------------
# Exact linear programming (feasibility + strict interior), simplex w/ Bland
# ---------------------------------------------------------------------------


def _simplex_max(a: list[list[Fraction]], b: list[Fraction], c: list[Fraction], basis: list[int]):
    """Tableau simplex maximizing c.x for Ax=b, x>=0 from a given BFS basis."""
    nrows, ncols = len(a), len(c)
    t = [list(row) + [b[i]] for i, row in enumerate(a)]
    while True:
        # reduced costs via basis cost vector
        z = [Q(0)] * (ncols + 1)
        for i, bi in enumerate(basis):
            cb = c[bi]
            if cb != 0:
                for j in range(ncols + 1):
                    z[j] += cb * t[i][j]
        entering = None
        for j in range(ncols):
            if c[j] - z[j] > 0:
                entering = j  # Bland: smallest index
                break
        if entering is None:
            x = [Q(0)] * ncols
            for i, bi in enumerate(basis):
                x[bi] = t[i][ncols]
            return z[ncols], x
        leaving = None
        best = None
        for i in range(nrows):
            if t[i][entering] > 0:
                ratio = t[i][ncols] / t[i][entering]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best, leaving = ratio, i
        if leaving is None:
            raise GeometryError("unbounded LP")
        piv = t[leaving][entering]
        t[leaving] = [e / piv for e in t[leaving]]
        for i in range(nrows):
            if i != leaving and t[i][entering] != 0:
                f = t[i][entering]
                t[i] = [e - f * p for e, p in zip(t[i], t[leaving])]
        basis[leaving] = entering


def lp_feasible(a_eq: list[list[Fraction]], b_eq: list[Fraction]) -> list[Fraction] | None:
    """A solution of A x = b with x >= 0, or None (phase-1 simplex)."""
    nrows = len(a_eq)
    ncols = len(a_eq[0]) if nrows else 0
    a = []
    b = []
    for row, rhs in zip(a_eq, b_eq):
        if rhs < 0:
            a.append([-e for e in row])
            b.append(-rhs)
        else:
            a.append(list(row))
            b.append(rhs)
    for i in range(nrows):
        ext = [Q(0)] * nrows
        ext[i] = Q(1)
        a[i] = a[i] + ext
    c = [Q(0)] * ncols + [Q(-1)] * nrows
    basis = list(range(ncols, ncols + nrows))
    val, x = _simplex_max(a, b, c, basis)
    if val != 0:
        return None
    return x[:ncols]


def cone_member(gens: Sequence[Sequence], v: Sequence) -> bool:
    """Is v a nonnegative combination of the generators?"""
    vv = [rat(e) for e in v]
    if all(e == 0 for e in vv):
        return True
    if not gens:
        return False
    m = len(vv)
    a = [[rat(g[i]) for g in gens] for i in range(m)]
    return lp_feasible(a, vv) is not None


def polyhedron_contains(vertices: Sequence[Sequence], dirs: Sequence[Sequence], p: Sequence) -> bool:
    """Membership in conv(vertices) + cone(dirs)."""
    if not vertices:
        return False
    m = len(p)
    nv, nd = len(vertices), len(dirs)
    a = []
    for i in range(m):
        a.append([rat(v[i]) for v in vertices] + [rat(d[i]) for d in dirs])
    a.append([Q(1)] * nv + [Q(0)] * nd)
    b = [rat(e) for e in p] + [Q(1)]
    if m == 0:
        return True
    return lp_feasible(a, b) is not None


def _cone_has_interior(ineqs: list[Sequence[Fraction]], dim: int) -> bool:
    """Does {x : ineqs . x >= 0} in R^dim contain a point with all constraints strict?"""
    if dim == 0:
        return not ineqs or all(all(e == 0 for e in h) for h in ineqs)
    rows = [h for h in ineqs if any(e != 0 for e in h)]
    if not rows:
        return True
    # vars: u(dim), w(dim), t, slacks, cap-slack; rows: -h.u + h.w + t + s = 0 ; t + tau = 1
    nrows = len(rows)
    ncols = 2 * dim + 1 + nrows + 1
    a = []
    b = []
    for i, h in enumerate(rows):
        row = [Q(0)] * ncols
        for k in range(dim):
            row[k] = -rat(h[k])
            row[dim + k] = rat(h[k])
        row[2 * dim] = Q(1)
        row[2 * dim + 1 + i] = Q(1)
        a.append(row)
        b.append(Q(0))
    cap = [Q(0)] * ncols
    cap[2 * dim] = Q(1)
    cap[ncols - 1] = Q(1)
    a.append(cap)
    b.append(Q(1))
    c = [Q(0)] * ncols
    c[2 * dim] = Q(1)
    basis = [2 * dim + 1 + i for i in range(nrows)] + [ncols - 1]
    val, _ = _simplex_max(a, b, c, basis)
    return val > 0


# ---------------------------------------------------------------------------
# Cones and fans
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Cone:
    """A convex rational polyhedral cone given by integer generators."""

    rays: tuple[tuple[int, ...], ...]
    rank: int

    def dim(self) -> int:
        if not self.rays:
            return 0
        return exact.rank([list(r) for r in self.rays])

    def span(self) -> list[tuple[int, ...]]:
        return exact.span_basis(self.rays, self.rank)


@dataclass(frozen=True)
class Fan:
    rank: int
    cones: tuple[Cone, ...]

    def dim(self) -> int:
        return max((c.dim() for c in self.cones), default=0)

    def maximal_cones(self) -> list[Cone]:
        d = self.dim()
        return [c for c in self.cones if c.dim() == d]


def cone_inequalities(cone: Cone) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """H-representation (equalities, inequalities) of cone(rays) in Z^rank."""
    m = cone.rank
    span = cone.span()
    eqs = exact.quotient_map(span, m) if span else [tuple(1 if i == j else 0 for i in range(m)) for j in range(m)]
    gens = [r for r in cone.rays if any(r)]
    d = len(span)
    if d == 0:
        return list(eqs), []
    # work inside the span: coordinates via the saturated basis
    smat = [[s[i] for s in span] for i in range(m)]
    local = []
    for g in gens:
        x = exact.solve(smat, g)
        assert x is not None
        local.append(x)
    facets: set[tuple[int, ...]] = set()
    if d == 1:
        pos = any(x[0] > 0 for x in local)
        neg = any(x[0] < 0 for x in local)
        if pos and not neg:
            facets.add((1,))
        elif neg and not pos:
            facets.add((-1,))
    else:
        for sub in combinations(range(len(local)), d - 1):
            rows = [list(local[i]) for i in sub]
            kb = exact.kernel_basis(rows) if rows else exact.QMatrix.identity(d)
            if kb.cols != 1:
                continue
            n = primitive(kb.column(0))
            sides = [sum(rat(a) * rat(b) for a, b in zip(n, x)) for x in local]
            if all(s >= 0 for s in sides):
                facets.add(tuple(n))
            elif all(s <= 0 for s in sides):
                facets.add(tuple(-e for e in n))
    # lift normals back to ambient coordinates: n_ambient = n . (span rows)
    out = []
    for n in sorted(facets):
        amb = tuple(sum(n[i] * span[i][k] for i in range(d)) for k in range(m))
        out.append(amb)
    return list(eqs), out


def _covered(sigma_ineqs, taus, dim) -> bool:
    """Is the full-dimensional part of {x : sigma_ineqs >= 0} inside the union of taus?"""
    if not _cone_has_interior(sigma_ineqs, dim):
        return True
    if not taus:
        return False
    head, rest = taus[0], taus[1:]
    cur = list(sigma_ineqs)
    pieces = []
    for h in head:
        pieces.append(cur + [tuple(-e for e in h)])
        cur = cur + [list(h)]
    # cur == sigma intersect head: covered by head itself
    return all(_covered(p, rest, dim) for p in pieces)


def support_contains(f_outer: Fan, cone: Cone) -> bool:
    """Does the support of f_outer contain the given cone?"""
    span = cone.span()
    d = len(span)
    m = cone.rank
    if d == 0:
        return bool(f_outer.cones)
    smat = [[s[i] for s in span] for i in range(m)]
    gens_local = []
    for g in cone.rays:
        if any(g):
            x = exact.solve(smat, g)
            if x is None:
                raise GeometryError("generator outside span")
            gens_local.append(x)
    local_cone = Cone(rays=tuple(primitive(x) for x in gens_local), rank=d)
    _, sigma_ineqs = cone_inequalities(local_cone)
    taus = []
    for tau in f_outer.cones:
        eqs, ineqs = cone_inequalities(tau)
        # restrict tau to span(cone): substitute x = span^T y
        def restrict(row):
            return tuple(sum(rat(row[k]) * rat(span[i][k]) for k in range(m)) for i in range(d))

        if any(any(e != 0 for e in restrict(eq)) for eq in eqs):
            continue  # tau meets the span in lower dimension
        taus.append([restrict(h) for h in ineqs])
    return _covered(sigma_ineqs, taus, d)


def support_equal(f1: Fan, f2: Fan) -> bool:
    """Set equality of fan supports via common-refinement coverage checks.

    Cost grows exponentially with ambient rank; intended for star and
    relative fans of desk-scale complexes (rank at most 4).
    """
    if f1.rank != f2.rank:
        raise GeometryError("fans live in different lattice ranks")
    if not f1.cones or not f2.cones:
        return bool(f1.cones) == bool(f2.cones)
    for cone in f1.cones:
        if not support_contains(f2, cone):
            return False
    for cone in f2.cones:
        if not support_contains(f1, cone):
            return False
    return True


def support_extremal_rays(fan: Fan) -> list[tuple[int, ...]]:
    """Rays of the support that are not locally flat (spines of the support)."""
    candidates: set[tuple[int, ...]] = set()
    for c in fan.cones:
        for r in c.rays:
            if any(r):
                candidates.add(primitive(r))
    if fan.dim() <= 1:
        return sorted(candidates)
    out = []
    for r in sorted(candidates):
        holders = [c for c in fan.cones if c.dim() >= 2 and cone_member(c.rays, r)]
        qm = exact.quotient_map([r], fan.rank)
        images: set[tuple[int, ...]] = set()
        for c in holders:
            for g in c.rays:
                img = apply_matrix(qm, g)
                if any(e != 0 for e in img):
                    images.add(primitive(img))
        if not images:
            out.append(r)
            continue
        flat = exact.rank([list(v) for v in images]) == 1 and any(
            tuple(-e for e in v) in images for v in images
        )
        if not flat:
            out.append(r)
    return out


def transform_fan(g: Sequence[Sequence[int]], fan: Fan) -> Fan:
    cones = []
    for c in fan.cones:
        rays = tuple(primitive(apply_matrix(g, r)) for r in c.rays if any(r))
        cones.append(Cone(rays=rays, rank=fan.rank))
    return Fan(rank=fan.rank, cones=tuple(cones))


# ---------------------------------------------------------------------------
# Faces and complexes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Face:
    """A closed face of a complex in TP^N.

    Geometry is conv(vertices) + cone(divisorial vectors of dgen), expressed
    in the reference chart of the stratum named by sed.
    """

    N: int
    sed: tuple[int, ...]
    vertices: tuple[Vec, ...]
    dgen: tuple[int, ...]
    weight: int = 1

    def key(self):
        return (self.sed, self.vertices, self.dgen)

    @property
    def chart(self) -> int:
        return reference_chart(self.N, self.sed)

    def coord_labels(self) -> list[int]:
        return coordinate_labels(self.N, self.sed, self.chart)

    def div_vectors(self) -> list[tuple[int, ...]]:
        return [divisorial_vector(self.N, self.sed, self.chart, j) for j in self.dgen]

    def directions(self) -> list[Vec]:
        v0 = self.vertices[0]
        dirs = [tuple(a - b for a, b in zip(v, v0)) for v in self.vertices[1:]]
        dirs += [tuple(Q(e) for e in d) for d in self.div_vectors()]
        return [d for d in dirs if any(e != 0 for e in d)]

    def dim(self) -> int:
        dirs = self.directions()
        if not dirs:
            return 0
        return exact.rank([list(d) for d in dirs])

    def span_lattice(self) -> list[tuple[int, ...]]:
        return exact.span_basis(self.directions(), len(self.coord_labels()))

    def interior_point(self) -> Vec:
        n = len(self.vertices)
        pt = [sum(v[i] for v in self.vertices) / n for i in range(len(self.coord_labels()))]
        for d in self.div_vectors():
            pt = [a + b for a, b in zip(pt, d)]
        return tuple(pt)

    def canonical_chart(self) -> int:
        blocked = set(self.sed) | set(self.dgen)
        for c in range(self.N + 1):
            if c not in blocked:
                return c
        raise GeometryError("face lies in no chart")

    def contains(self, point: Sequence) -> bool:
        return polyhedron_contains(self.vertices, self.div_vectors(), point)

    def j_limit(self, j: int) -> "Face":
        """The subface at infinity in the direction of coordinate j."""
        if j not in self.dgen:
            raise GeometryError(f"{j} is not a divisorial direction of this face")
        mat, _ = sed_raise_map(self.N, self.sed, self.chart, j)
        verts = [apply_matrix(mat, v) for v in self.vertices]
        child_sed = tuple(sorted(set(self.sed) | {j}))
        child_dgen = tuple(k for k in self.dgen if k != j)
        return make_face(self.N, child_sed, verts, child_dgen, 1)


def make_face(N: int, sed: Iterable[int], vertices: Iterable[Sequence], dgen: Iterable[int],
              weight: int = 1) -> Face:
    """Canonicalize a face: extreme vertices only, irredundant divisorial set."""
    sed_t = tuple(sorted(set(sed)))
    dgen_t = tuple(sorted(set(dgen)))
    if set(sed_t) & set(dgen_t):
        raise GeometryError("divisorial indices must avoid the sedentarity")
    if len(sed_t) + len(dgen_t) > N + 1 or (len(sed_t) == N + 1):
        raise GeometryError("face lies in no chart")
    verts = sorted({tuple(rat(e) for e in v) for v in vertices})
    if not verts:
        raise GeometryError("a face needs at least one vertex")
    ncoords = N - len(sed_t)
    if any(len(v) != ncoords for v in verts):
        raise GeometryError("vertex coordinate length mismatch")
    divs = [divisorial_vector(N, sed_t, reference_chart(N, sed_t), j) for j in dgen_t]
    # irredundant divisorial generators
    keep_d = []
    for i, j in enumerate(dgen_t):
        others = [divs[k] for k in range(len(divs)) if k != i]
        if not cone_member(others, divs[i]):
            keep_d.append(j)
    dgen_t = tuple(keep_d)
    divs = [divisorial_vector(N, sed_t, reference_chart(N, sed_t), j) for j in dgen_t]
    # extreme vertices only
    keep_v = []
    for i, v in enumerate(verts):
        others = [w for k, w in enumerate(verts) if k != i]
        if not others or not polyhedron_contains(others, divs, v):
            keep_v.append(v)
    return Face(N=N, sed=sed_t, vertices=tuple(keep_v), dgen=dgen_t, weight=weight)


def _express_in_basis(basis_rows: Sequence[Sequence], vec: Sequence) -> Vec:
    mat = [[rat(b[i]) for b in basis_rows] for i in range(len(vec))]
    x = exact.solve(mat, vec)
    if x is None:
        raise GeometryError("vector not in span")
    check = [sum(rat(basis_rows[j][i]) * x[j] for j in range(len(basis_rows))) for i in range(len(vec))]
    if tuple(check) != tuple(rat(e) for e in vec):
        raise GeometryError("vector not in span")
    return x


class TropicalComplex:
    """A polyhedral complex in TP^N with oriented codimension-1 incidences."""

    def __init__(self, N: int, faces: Sequence[Face],
                 incidence_pairs: Iterable[tuple[int, int]] | None = None,
                 validate: bool = True):
        self.N = N
        order = sorted(range(len(faces)), key=lambda i: _face_sort_key(faces[i]))
        self.faces: list[Face] = [faces[i] for i in order]
        self._index = {f.key(): i for i, f in enumerate(self.faces)}
        if len(self._index) != len(self.faces):
            raise GeometryError("duplicate faces")
        self._dims = [f.dim() for f in self.faces]
        if incidence_pairs is None:
            pairs = self._geometric_incidences()
        else:
            remap = [0] * len(order)
            for new, old in enumerate(order):
                remap[old] = new
            pairs = sorted({(remap[a], remap[b]) for a, b in incidence_pairs})
        self.down: list[list[tuple[int, int]]] = [[] for _ in self.faces]
        self.up: list[list[int]] = [[] for _ in self.faces]
        for sup, sub in pairs:
            sign = self._incidence_sign(sup, sub)
            self.down[sup].append((sub, sign))
            self.up[sub].append(sup)
        for lst in self.down:
            lst.sort()
        for lst in self.up:
            lst.sort()
        if validate:
            self.validate()

    # -- basic queries ---------------------------------------------------

    def __len__(self):
        return len(self.faces)

    def dim(self) -> int:
        return max(self._dims, default=0)

    def face_dim(self, fid: int) -> int:
        return self._dims[fid]

    def find(self, face: Face) -> int | None:
        return self._index.get(face.key())

    def faces_of_dim(self, q: int) -> list[int]:
        return [i for i, d in enumerate(self._dims) if d == q]

    def same_sed_parents(self, fid: int) -> list[int]:
        f = self.faces[fid]
        return [p for p in self.up[fid] if self.faces[p].sed == f.sed]

    def star_ids(self, fid: int) -> list[int]:
        """All faces containing fid with the same refined sedentarity."""
        sed = self.faces[fid].sed
        seen = {fid}
        frontier = [fid]
        while frontier:
            nxt = []
            for g in frontier:
                for p in self.up[g]:
                    if p not in seen and self.faces[p].sed == sed:
                        seen.add(p)
                        nxt.append(p)
            frontier = nxt
        return sorted(seen)

    def mobile_parent(self, fid: int) -> int:
        """The mobile face whose family contains fid."""
        cur = fid
        while self.faces[cur].sed:
            ups = [p for p in self.up[cur]
                   if len(self.faces[p].sed) == len(self.faces[cur].sed) - 1
                   and self._dims[p] == self._dims[cur] + 1]
            if not ups:
                raise GeometryError("sedentary face has no mobile parent")
            cur = ups[0]
        return cur

    # -- incidence construction ------------------------------------------

    def _geometric_incidences(self) -> list[tuple[int, int]]:
        pairs = set()
        by_sed: dict[tuple[int, ...], list[int]] = {}
        for i, f in enumerate(self.faces):
            by_sed.setdefault(f.sed, []).append(i)
        for sed, ids in by_sed.items():
            for sup in ids:
                fs = self.faces[sup]
                dsup = self._dims[sup]
                for sub in ids:
                    if sub == sup or self._dims[sub] != dsup - 1:
                        continue
                    fb = self.faces[sub]
                    if not set(fb.dgen) <= set(fs.dgen):
                        continue
                    if all(fs.contains(v) for v in fb.vertices):
                        pairs.add((sup, sub))
        for sup, fs in enumerate(self.faces):
            for j in fs.dgen:
                child = fs.j_limit(j)
                cid = self._index.get(child.key())
                if cid is None:
                    raise GeometryError(
                        f"face {sup} has no stored subface at infinity toward {j}")
                pairs.add((sup, cid))
        return sorted(pairs)

    def _incidence_sign(self, sup: int, sub: int) -> int:
        fs, fb = self.faces[sup], self.faces[sub]
        basis_sup = fs.span_lattice()
        if fb.sed == fs.sed:
            out = [a - b for a, b in zip(fb.interior_point(), fs.interior_point())]
            cols = [out] + [list(map(Q, r)) for r in fb.span_lattice()]
        else:
            jset = set(fb.sed) - set(fs.sed)
            if len(jset) != 1:
                raise GeometryError("incidence must raise sedentarity by at most one")
            (j,) = jset
            dj = [Q(e) for e in divisorial_vector(fs.N, fs.sed, fs.chart, j)]
            lifts = sed_raise_section(fs.N, fs.sed, fs.chart, j)
            cols = [dj]
            for r in fb.span_lattice():
                lifted = [sum(rat(r[k]) * lifts[k][i] for k in range(len(r)))
                          for i in range(len(dj))]
                cols.append(lifted)
        coords = [_express_in_basis(basis_sup, col) for col in cols]
        d = exact.det([[coords[j][i] for j in range(len(coords))] for i in range(len(coords))])
        if d == 0:
            raise GeometryError("degenerate incidence")
        return 1 if d > 0 else -1

    # -- validation --------------------------------------------------------

    def validate(self, pure: bool = False) -> None:
        n = self.dim()
        for i, f in enumerate(self.faces):
            if f.weight < 1:
                raise GeometryError(f"face {i} has nonpositive weight")
            if self._dims[i] >= 1 and not self.down[i]:
                raise GeometryError(f"face {i} has no codimension-1 subfaces")
            for j in f.dgen:
                child = f.j_limit(j)
                if child.key() not in self._index:
                    raise GeometryError(f"missing subface at infinity of face {i}")
        if pure:
            for i in range(len(self.faces)):
                if self._dims[i] < n and not self.up[i]:
                    raise GeometryError(f"complex is not pure: face {i} is maximal "
                                        f"of dimension {self._dims[i]} < {n}")

    def is_pure(self) -> bool:
        n = self.dim()
        return all(self.up[i] or self._dims[i] == n for i in range(len(self.faces)))

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        vkeys = []
        vindex: dict[tuple, int] = {}
        for f in self.faces:
            for v in f.vertices:
                key = (f.sed, v)
                if key not in vindex:
                    vindex[key] = 0
        for key in sorted(vindex, key=lambda k: (len(k[0]), k[0], k[1])):
            vindex[key] = len(vkeys)
            vkeys.append(key)
        return {
            "N": self.N,
            "vertices": [
                {"coords": [rat_str(e) for e in v], "sedentarity": list(sed)}
                for sed, v in vkeys
            ],
            "faces": [
                {
                    "vertices": [vindex[(f.sed, v)] for v in f.vertices],
                    "divisorial": list(f.dgen),
                    "sedentarity": list(f.sed),
                    "weight": f.weight,
                }
                for f in self.faces
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TropicalComplex":
        N = data["N"]
        verts = [
            (tuple(data["vertices"][i]["sedentarity"]),
             tuple(rat(s) for s in data["vertices"][i]["coords"]))
            for i in range(len(data["vertices"]))
        ]
        faces = []
        for fd in data["faces"]:
            sed = tuple(sorted(fd["sedentarity"]))
            vs = []
            for vi in fd["vertices"]:
                vsed, coords = verts[vi]
                if vsed != sed:
                    raise GeometryError("face vertex has mismatched sedentarity")
                vs.append(coords)
            faces.append(make_face(N, sed, vs, fd["divisorial"], fd.get("weight", 1)))
        return cls(N, faces)

    def save(self, path: str) -> None:
        with open(path, "w") as fh:
            fh.write(canonical_json(self.to_json()))

    @classmethod
    def load(cls, path: str) -> "TropicalComplex":
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def _face_sort_key(f: Face):
    return (len(f.sed), f.sed, f.dim(), f.vertices, f.dgen, f.weight)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


# ---------------------------------------------------------------------------
# Stars, relative fans, families, balancing
# ---------------------------------------------------------------------------


def star_fan(x: TropicalComplex, fid: int, chart: int | None = None) -> Fan:
    """Fan of directions staying inside X near a relative-interior point of
    the face, one cone per star face, in the face's canonical chart."""
    f = x.faces[fid]
    if chart is None:
        chart = f.canonical_chart()
    base = f.interior_point()
    mat = None
    if chart != f.chart:
        mat = transition_matrix(x.N, f.sed, f.chart, chart)
    cones = []
    for gid in x.star_ids(fid):
        g = x.faces[gid]
        gens = []
        for v in g.vertices:
            d = tuple(a - b for a, b in zip(v, base))
            if any(e != 0 for e in d):
                gens.append(d)
        gens += [tuple(map(Q, dv)) for dv in g.div_vectors()]
        if mat is not None:
            gens = [apply_matrix(mat, d) for d in gens]
        rays = tuple(primitive(d) for d in gens if any(e != 0 for e in d))
        cones.append(Cone(rays=rays, rank=len(f.coord_labels())))
    return Fan(rank=len(f.coord_labels()), cones=tuple(cones))


def relative_fan(x: TropicalComplex, fid: int) -> Fan:
    """Star fan modulo the linear span of the face (of its mobile parent when
    the face is sedentary), in the integer quotient lattice."""
    f = x.faces[fid]
    if f.sed:
        fid = x.mobile_parent(fid)
        f = x.faces[fid]
    star = star_fan(x, fid)
    span = exact.span_basis(
        [transition_vector(x.N, f.sed, f.chart, f.canonical_chart(), d) for d in f.directions()]
        if f.canonical_chart() != f.chart else f.directions(),
        star.rank,
    )
    if not span:
        return star
    qm = exact.quotient_map(span, star.rank)
    qrank = len(qm)
    cones = []
    for c in star.cones:
        rays = []
        for r in c.rays:
            img = apply_matrix(qm, r)
            if any(e != 0 for e in img):
                rays.append(primitive(img))
        cones.append(Cone(rays=tuple(dict.fromkeys(rays)), rank=qrank))
    return Fan(rank=qrank, cones=tuple(cones))


def family_poset(x: TropicalComplex, fid: int) -> dict[frozenset, int]:
    """All faces obtained from a mobile face by sending subsets of its
    divisorial directions to infinity, keyed by that subset."""
    f = x.faces[fid]
    if f.sed:
        raise GeometryError("family_poset expects a mobile face")
    out = {frozenset(): fid}
    frontier = [fid]
    while frontier:
        nxt = []
        for g in frontier:
            for j in x.faces[g].dgen:
                child = x.find(x.faces[g].j_limit(j))
                key = frozenset(x.faces[child].sed) - frozenset(f.sed)
                if key not in out:
                    out[key] = child
                    nxt.append(child)
        frontier = nxt
    expected = 2 ** len(f.dgen)
    if len(out) != expected:
        raise GeometryError("family is not a full Boolean lattice")
    return out


def is_balanced(x: TropicalComplex) -> tuple[bool, list[int]]:
    """Weighted balancing at every codimension-1 face of every stratum's
    top-dimensional part.  Returns (ok, violating face ids)."""
    if not x.is_pure():
        raise GeometryError("balancing requires a pure complex")
    n = x.dim()
    bad = []
    for eid in x.faces_of_dim(n - 1) if n >= 1 else []:
        e = x.faces[eid]
        facets = [p for p in x.same_sed_parents(eid) if x.face_dim(p) == n]
        if not facets:
            continue
        m = len(e.coord_labels())
        span = exact.span_basis(e.directions(), m) if e.directions() else []
        qm = exact.quotient_map(span, m) if span else [
            tuple(1 if i == j else 0 for i in range(m)) for j in range(m)
        ]
        base = e.interior_point()
        total = [Q(0)] * len(qm)
        ok_local = True
        for fidp in facets:
            g = x.faces[fidp]
            image = None
            for v in list(g.vertices) + [
                tuple(a + b for a, b in zip(base, map(Q, dv))) for dv in g.div_vectors()
            ]:
                d = tuple(a - b for a, b in zip(v, base))
                img = apply_matrix(qm, d)
                if any(c != 0 for c in img):
                    image = img
                    break
            if image is None:
                ok_local = False
                break
            u = primitive(image)
            total = [t + g.weight * Q(c) for t, c in zip(total, u)]
        if not ok_local or any(t != 0 for t in total):
            bad.append(eid)
    return (not bad, bad)


def fan_is_balanced(fan: Fan, weights: dict[int, int] | None = None) -> bool:
    """Balancing of a pure-dimensional fan with unit (or given) weights."""
    n = fan.dim()
    if n == 0:
        return True
    maximal = [i for i, c in enumerate(fan.cones) if c.dim() == n]
    ridges = [i for i, c in enumerate(fan.cones) if c.dim() == n - 1]
    for rid in ridges:
        ridge = fan.cones[rid]
        span = ridge.span()
        qm = exact.quotient_map(span, fan.rank) if span else [
            tuple(1 if i == j else 0 for i in range(fan.rank)) for j in range(fan.rank)
        ]
        total = [Q(0)] * len(qm)
        found = False
        for mid in maximal:
            cone = fan.cones[mid]
            if not all(cone_member(cone.rays, r) for r in ridge.rays):
                continue
            image = None
            for g in cone.rays:
                img = apply_matrix(qm, g)
                if any(c != 0 for c in img):
                    image = img
                    break
            if image is None:
                continue
            found = True
            w = 1 if weights is None else weights.get(mid, 1)
            u = primitive(image)
            total = [t + w * Q(c) for t, c in zip(total, u)]
        if found and any(t != 0 for t in total):
            return False
    return True


# ---------------------------------------------------------------------------
# Fan-like linear spaces and projective space skeleta
# ---------------------------------------------------------------------------


def _fanlike_complex(x0: Sequence, k: int, N: int) -> TropicalComplex:
    x0 = tuple(rat(e) for e in x0)
    if len(x0) != N:
        raise GeometryError("vertex must be given in chart-0 coordinates")
    ids: dict[tuple[frozenset, frozenset], int] = {}
    faces: list[Face] = []

    def project(point: Vec, sed: tuple[int, ...], j: int) -> Vec:
        mat, _ = sed_raise_map(N, sed, reference_chart(N, sed), j)
        return apply_matrix(mat, point)

    points: dict[frozenset, Vec] = {frozenset(): x0}

    def point_for(J: frozenset) -> Vec:
        if J not in points:
            j = max(J)
            parent = point_for(J - {j})
            sed = tuple(sorted(J - {j}))
            points[J] = project(parent, sed, j)
        return points[J]

    labels = list(range(N + 1))
    for size in range(k + 1):
        for S in combinations(labels, size):
            sset = frozenset(S)
            for jsize in range(size + 1):
                for Jt in combinations(S, jsize):
                    J = frozenset(Jt)
                    face = make_face(N, sorted(J), [point_for(J)], sorted(sset - J), 1)
                    key = (sset, J)
                    ids[key] = len(faces)
                    faces.append(face)
    pairs = []
    for (sset, J), fid in ids.items():
        for jp in sset - J:
            pairs.append((fid, ids[(sset, J | {jp})]))
        for drop in sset - J:
            pairs.append((fid, ids[(sset - {drop}, J)]))
    return TropicalComplex(N, faces, incidence_pairs=pairs)


def fan_linear_space(x0: Sequence, k: int, N: int) -> TropicalComplex:
    """The degree-1 fan-like tropical k-plane through an interior point:
    closure of the union of cones over k-subsets of the N+1 divisorial rays."""
    if not 1 <= k <= N - 1:
        raise GeometryError("need 1 <= k <= N-1")
    return _fanlike_complex(x0, k, N)


def projective_space(N: int) -> TropicalComplex:
    """TP^N with its coordinate-stratum cell structure, subdivided at the origin."""
    return _fanlike_complex([Q(0)] * N, N, N)


# ---------------------------------------------------------------------------
# Smoothness certificates
# ---------------------------------------------------------------------------


def _antipode(fan: Fan) -> Fan:
    return transform_fan([[-1 if i == j else 0 for j in range(fan.rank)] for i in range(fan.rank)], fan)


def is_smooth_at(x: TropicalComplex, fid: int, matroid) -> bool:
    """Does the relative fan at the face share its support with the Bergman
    fan of the given loopless matroid?

    The Bergman construction fixes one of many valid bases e_j, so supports
    are compared up to a unimodular change of coordinates: literally, then
    antipodally, then through maps matching the spines of the two supports.
    """
    from .matroid import bergman_fan, is_loopless

    if not is_loopless(matroid):
        raise GeometryError("smoothness certificates must be loopless")
    rel = relative_fan(x, fid)
    berg = bergman_fan(matroid)
    if rel.dim() == 0 and berg.dim() == 0:
        return True
    if rel.rank != berg.rank or rel.dim() != berg.dim():
        return False
    if support_equal(rel, berg):
        return True
    if support_equal(_antipode(rel), berg):
        return True
    ur = support_extremal_rays(rel)
    ub = support_extremal_rays(berg)
    if len(ur) != len(ub):
        return False
    # seed the map with a maximal independent subset of the relative fan's spine
    idx = []
    for i in range(len(ur)):
        if exact.rank([list(ur[j]) for j in idx + [i]]) == len(idx) + 1:
            idx.append(i)
        if len(idx) == rel.rank:
            break
    if len(idx) < rel.rank:
        return False
    from itertools import permutations

    tries = 0
    umat = [list(ur[i]) for i in idx]  # rows: the chosen spine rays
    for perm in permutations(range(len(ub))):
        tries += 1
        if tries > 5040:
            break
        targets = [ub[perm[i]] for i in idx]
        g_rows = []
        ok = True
        for r in range(rel.rank):
            # row r of g satisfies <u_i, g_r> = target_i[r] for each spine ray
            sol = exact.solve(umat, [t[r] for t in targets])
            if sol is None:
                ok = False
                break
            g_rows.append(sol)
        if not ok:
            continue
        if any(e.denominator != 1 for row in g_rows for e in row):
            continue
        g = [[int(e) for e in row] for row in g_rows]
        d = exact.det(g)
        if abs(d) != 1:
            continue
        if any(tuple(apply_matrix(g, ur[i])) != ub[perm[i]] for i in range(len(ur))):
            continue
        if support_equal(transform_fan(g, rel), berg):
            return True
    return False
