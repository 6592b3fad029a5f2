"""Matroids, flat lattices, Bergman fans, and arrangement Betti numbers."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

MAX_TABLE_GROUND = 16


class MatroidError(ValueError):
    pass


class Matroid:
    """A matroid on ground set {0, ..., n-1} with an exact rank oracle.

    Construct from an explicit list of bases or from a full rank table
    (bitmask -> rank, ground sets up to 16 elements).  Rank axioms are
    validated on construction.
    """

    def __init__(self, n: int, rank_table: dict[int, int]):
        self.n = n
        self._rank = rank_table
        self.full_rank = rank_table[(1 << n) - 1]

    # -- constructors -------------------------------------------------

    @classmethod
    def from_bases(cls, n: int, bases: Iterable[Iterable[int]]) -> "Matroid":
        if n > MAX_TABLE_GROUND:
            raise MatroidError(f"ground set too large (max {MAX_TABLE_GROUND})")
        bset = []
        for b in bases:
            mask = 0
            for e in b:
                if not 0 <= e < n:
                    raise MatroidError(f"basis element {e} outside ground set")
                mask |= 1 << e
            bset.append(mask)
        if not bset:
            raise MatroidError("no bases given")
        size = bin(bset[0]).count("1")
        if any(bin(m).count("1") != size for m in bset):
            raise MatroidError("bases have unequal cardinality")
        _check_basis_exchange(n, bset)
        table = {}
        for mask in range(1 << n):
            table[mask] = max(bin(mask & b).count("1") for b in bset)
        return cls(n, table)

    @classmethod
    def from_rank_table(cls, n: int, table: dict[int, int]) -> "Matroid":
        if n > MAX_TABLE_GROUND:
            raise MatroidError(f"ground set too large (max {MAX_TABLE_GROUND})")
        if set(table) != set(range(1 << n)):
            raise MatroidError("rank table must cover all subsets")
        if table[0] != 0:
            raise MatroidError("rank of the empty set must be 0")
        for mask in range(1 << n):
            r = table[mask]
            if r < 0 or r > bin(mask).count("1"):
                raise MatroidError("rank exceeds cardinality")
            for e in range(n):
                if not mask & (1 << e):
                    up = table[mask | (1 << e)]
                    if up < r or up > r + 1:
                        raise MatroidError("rank is not unit-increasing")
        # submodularity in the local form r(A+e)+r(A+f) >= r(A) + r(A+e+f)
        for mask in range(1 << n):
            for e in range(n):
                if mask & (1 << e):
                    continue
                for f in range(e + 1, n):
                    if mask & (1 << f):
                        continue
                    if (
                        table[mask | (1 << e)] + table[mask | (1 << f)]
                        < table[mask] + table[mask | (1 << e) | (1 << f)]
                    ):
                        raise MatroidError("rank is not submodular")
        return cls(n, dict(table))

    @classmethod
    def uniform(cls, r: int, n: int) -> "Matroid":
        """U_{r,n}: every r-subset is a basis."""
        if not 0 <= r <= n:
            raise MatroidError("need 0 <= r <= n")
        table = {m: min(bin(m).count("1"), r) for m in range(1 << n)}
        return cls(n, table)

    @classmethod
    def free(cls, n: int) -> "Matroid":
        return cls.uniform(n, n)

    @classmethod
    def graphic(cls, nvertices: int, edges: list[tuple[int, int]]) -> "Matroid":
        """Cycle matroid of a graph; rank of an edge set is v - #components."""
        n = len(edges)
        table = {}
        for mask in range(1 << n):
            parent = list(range(nvertices))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            r = 0
            for i, (u, v) in enumerate(edges):
                if mask & (1 << i):
                    ru, rv = find(u), find(v)
                    if ru != rv:
                        parent[ru] = rv
                        r += 1
            table[mask] = r
        return cls(n, table)

    # -- rank oracle ---------------------------------------------------

    def rank(self, subset: Iterable[int]) -> int:
        mask = 0
        for e in subset:
            mask |= 1 << e
        return self._rank[mask]

    def rank_mask(self, mask: int) -> int:
        return self._rank[mask]

    def closure_mask(self, mask: int) -> int:
        r = self._rank[mask]
        out = mask
        for e in range(self.n):
            b = 1 << e
            if not out & b and self._rank[mask | b] == r:
                out |= b
        return out

    def ground_mask(self) -> int:
        return (1 << self.n) - 1


def _check_basis_exchange(n: int, bases: list[int]) -> None:
    bset = set(bases)
    for b1 in bases:
        for b2 in bases:
            diff = b1 & ~b2
            for e in range(n):
                if not diff & (1 << e):
                    continue
                ok = False
                for f in range(n):
                    if b2 & ~b1 & (1 << f) and (b1 & ~(1 << e)) | (1 << f) in bset:
                        ok = True
                        break
                if not ok:
                    raise MatroidError("basis exchange axiom fails")


def is_loopless(m: Matroid) -> bool:
    return all(m.rank_mask(1 << e) == 1 for e in range(m.n))


@dataclass(frozen=True)
class FlatLattice:
    """All flats of a matroid as bitmasks, with ranks and Mobius values."""

    n: int
    flats: tuple[int, ...]          # sorted by (rank, mask)
    ranks: tuple[int, ...]
    mobius: tuple[int, ...]         # mu(bottom, F)

    def members(self, flat_index: int) -> tuple[int, ...]:
        mask = self.flats[flat_index]
        return tuple(e for e in range(self.n) if mask & (1 << e))


def flats(m: Matroid) -> FlatLattice:
    """Enumerate flats by closure saturation and compute Mobius values."""
    found = {m.closure_mask(0)}
    frontier = list(found)
    while frontier:
        nxt = []
        for fmask in frontier:
            for e in range(m.n):
                if not fmask & (1 << e):
                    cl = m.closure_mask(fmask | (1 << e))
                    if cl not in found:
                        found.add(cl)
                        nxt.append(cl)
        frontier = nxt
    fl = sorted(found, key=lambda f: (m.rank_mask(f), f))
    ranks = [m.rank_mask(f) for f in fl]
    mob = [0] * len(fl)
    index = {f: i for i, f in enumerate(fl)}
    for i, f in enumerate(fl):
        if i == 0:
            mob[0] = 1
            continue
        s = 0
        for j, g in enumerate(fl[:i]):
            if g & ~f == 0 and g != f:
                s += mob[j]
        mob[i] = -s
    assert index[m.closure_mask(0)] == 0  # bottom flat sorts first
    return FlatLattice(m.n, tuple(fl), tuple(ranks), tuple(mob))


def whitney_polynomial(m: Matroid) -> list[int]:
    """Coefficients of pi(t) = sum_F |mu(0,F)| t^r(F) over all flats."""
    lat = flats(m)
    coeffs = [0] * (m.full_rank + 1)
    for r, mu in zip(lat.ranks, lat.mobius):
        coeffs[r] += abs(mu)
    return coeffs


def os_betti(m: Matroid) -> list[int]:
    """Graded dimensions of the projective arrangement-complement cohomology.

    pi(t) factors exactly as (1+t) * pi0(t); the coefficients of pi0 are the
    Betti numbers b_0 .. b_{r-1}.  A nonzero remainder signals a broken
    Mobius computation and raises.
    """
    if not is_loopless(m):
        raise MatroidError("matroid has loops")
    pi = whitney_polynomial(m)
    quot = [0] * (len(pi) - 1)
    rem = list(pi)
    for k in range(len(pi) - 2, -1, -1):
        quot[k] = rem[k + 1]
        rem[k + 1] -= quot[k]
        rem[k] -= quot[k]
    if any(rem):
        raise MatroidError("(1+t) does not divide the Whitney polynomial")
    return quot


# ---------------------------------------------------------------------------
# Bergman fans
# ---------------------------------------------------------------------------


def bergman_vectors(n: int) -> list[tuple[int, ...]]:
    """The n ground-set vectors in Z^(n-1): standard basis plus minus-sum."""
    vecs = []
    for j in range(n - 1):
        vecs.append(tuple(1 if i == j else 0 for i in range(n - 1)))
    vecs.append(tuple(-1 for _ in range(n - 1)))
    return vecs


def flat_vector(n: int, flat_mask: int) -> tuple[int, ...]:
    vecs = bergman_vectors(n)
    out = [0] * (n - 1)
    for e in range(n):
        if flat_mask & (1 << e):
            for i in range(n - 1):
                out[i] += vecs[e][i]
    return tuple(out)


def bergman_fan(m: Matroid):
    """Bergman fan of a loopless matroid in Z^(|M|-1).

    One cone per flag of proper nonempty flats, spanned by the vectors e_F;
    all flags (not only maximal ones) are stored so codimension-one cones are
    available to the balancing check.
    """
    from .tropgeo import Cone, Fan

    if not is_loopless(m):
        raise MatroidError("matroid has loops")
    lat = flats(m)
    proper = [
        (lat.flats[i], lat.ranks[i])
        for i in range(len(lat.flats))
        if 0 < lat.ranks[i] < m.full_rank
    ]
    cones: list[Cone] = [Cone(rays=(), rank=m.n - 1)]
    chains: list[list[int]] = [[]]
    # depth-first flag enumeration ordered by rank
    def extend(chain: list[int], start: int):
        for idx in range(start, len(proper)):
            fmask, frank = proper[idx]
            if chain:
                top = proper[chain[-1]][0]
                if top & ~fmask or top == fmask:
                    continue
            chain.append(idx)
            chains.append(list(chain))
            extend(chain, idx + 1)
            chain.pop()

    extend([], 0)
    for chain in chains[1:]:
        rays = tuple(flat_vector(m.n, proper[i][0]) for i in chain)
        cones.append(Cone(rays=rays, rank=m.n - 1))
    return Fan(rank=m.n - 1, cones=tuple(cones))


def bergman_complex(m: Matroid):
    """Closure of the Bergman fan in TP^(|M|-1) as a tropical complex.

    Faces of the closure must recede along divisorial cones to be
    representable; that holds exactly when the fan's support is the uniform
    one (the fan-like linear space).  Other matroids are rejected.
    """
    from .tropgeo import (
        Cone,
        Fan,
        GeometryError,
        divisorial_vector,
        fan_linear_space,
        support_equal,
        transform_fan,
    )

    fan = bergman_fan(m)
    k = m.full_rank - 1
    n = m.n - 1
    if k < 1 or k > n - 1:
        raise GeometryError("closure is a point or all of projective space")
    neg = transform_fan([[-1 if i == j else 0 for j in range(n)] for i in range(n)], fan)
    divs = [divisorial_vector(n, (), 0, j) for j in range(n + 1)]
    from itertools import combinations

    cones = [Cone(rays=(), rank=n)]
    for size in range(1, k + 1):
        for sub in combinations(range(n + 1), size):
            cones.append(Cone(rays=tuple(divs[j] for j in sub), rank=n))
    uniform_fan = Fan(rank=n, cones=tuple(cones))
    if not support_equal(neg, uniform_fan):
        raise GeometryError(
            "Bergman closure has non-divisorial unbounded faces; only "
            "uniform-support matroids are representable")
    return fan_linear_space([0] * n, k, n)


# ---------------------------------------------------------------------------
# JSON format
# ---------------------------------------------------------------------------


def matroid_to_json(m: Matroid) -> dict:
    return {"ground": m.n, "rank": {str(mask): m.rank_mask(mask) for mask in range(1 << m.n)}}


def matroid_from_json(data: dict) -> Matroid:
    n = data["ground"]
    if "bases" in data:
        return Matroid.from_bases(n, data["bases"])
    if "rank" in data:
        table = {int(k): int(v) for k, v in data["rank"].items()}
        return Matroid.from_rank_table(n, table)
    raise MatroidError("matroid JSON needs 'bases' or 'rank'")


def load_matroid(path: str) -> Matroid:
    with open(path) as fh:
        return matroid_from_json(json.load(fh))
