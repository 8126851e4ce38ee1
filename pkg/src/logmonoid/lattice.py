"""Exact integer linear algebra and rational polyhedral cones.

Matrices are lists of rows of Python ints; vectors are tuples.  Nothing here
touches floating point.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd

from .errors import DimensionError, ValidationError, VolumeCapError
from .jsonio import decode_matrix, encode_matrix

DEFAULT_VOLUME_CAP = 10**6
DEFAULT_RANK_CAP = 12


# -- small helpers -----------------------------------------------------------

def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m, cols=None):
    if not m:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*m)]


def matmul(a, b):
    bt = transpose(b, len(b[0]) if b else 0) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(m, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def primitive(v):
    """Divide an integer vector by the gcd of its entries."""
    g = reduce(gcd, v, 0)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def integral(v):
    """Clear denominators of a rational vector and make it primitive."""
    den = reduce(lambda a, b: a * b // gcd(a, b), (Fraction(x).denominator for x in v), 1)
    return primitive(tuple(int(Fraction(x) * den) for x in v))


def xgcd(a, b):
    """``(g, s, t)`` with ``s*a + t*b = g = gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def rank(m):
    return len(_row_echelon(m))


def _row_echelon(m):
    rows = [[Fraction(x) for x in r] for r in m if any(r)]
    out = []
    if not rows:
        return out
    cols = len(rows[0])
    for c in range(cols):
        piv = next((r for r in rows if r[c] != 0), None)
        if piv is None:
            continue
        rows.remove(piv)
        rows = [[x - r[c] / piv[c] * y for x, y in zip(r, piv)] for r in rows]
        rows = [r for r in rows if any(r)]
        out.append(piv)
    return out


def inverse(m):
    """Exact inverse of a square matrix (entries returned as Fractions)."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            raise ValidationError("matrix is singular")
        a[c], a[p] = a[p], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def determinant(m):
    n = len(m)
    if n == 0:
        return 1
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return int(det)


def integer_inverse(m):
    inv = inverse(m)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValidationError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


# -- Hermite and Smith normal forms -----------------------------------------

def hermite_normal_form(m):
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``H = U m``: nonzero rows
    first, strictly increasing pivot columns, positive pivots, and entries
    above each pivot reduced into ``[0, pivot)``.
    """
    a = [list(r) for r in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = identity(rows)
    pr = 0
    for c in range(cols):
        if pr == rows:
            break
        for r in range(pr + 1, rows):
            if a[r][c] == 0:
                continue
            x, y = a[pr][c], a[r][c]
            g, s, t = xgcd(x, y)
            p, q = -y // g, x // g
            for mat in (a, u):
                top, bot = mat[pr], mat[r]
                mat[pr] = [s * i + t * j for i, j in zip(top, bot)]
                mat[r] = [p * i + q * j for i, j in zip(top, bot)]
        if a[pr][c] == 0:
            continue
        if a[pr][c] < 0:
            a[pr] = [-x for x in a[pr]]
            u[pr] = [-x for x in u[pr]]
        piv = a[pr][c]
        for r in range(pr):
            q = a[r][c] // piv
            if q:
                a[r] = [x - q * y for x, y in zip(a[r], a[pr])]
                u[r] = [x - q * y for x, y in zip(u[r], u[pr])]
        pr += 1
    return a, u


def hnf_basis(vectors, n):
    """Canonical basis (nonzero HNF rows) of the lattice spanned by ``vectors``."""
    if not vectors:
        return []
    h, _ = hermite_normal_form([list(v) for v in vectors])
    return [tuple(r) for r in h if any(r)]


def lattice_reduce(v, basis):
    """Canonical representative of ``v`` modulo the lattice with HNF ``basis``."""
    v = list(v)
    for row in basis:
        c = next(i for i, x in enumerate(row) if x)
        q = v[c] // row[c]
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return tuple(v)


def in_lattice(v, basis):
    return not any(lattice_reduce(v, basis))


def left_kernel(m, nrows=None):
    """Integer basis of ``{x : x m = 0}`` (rows of ``m`` combined)."""
    rows = len(m) if nrows is None else nrows
    if rows == 0:
        return []
    if not m or not m[0]:
        return [tuple(r) for r in identity(rows)]
    h, u = hermite_normal_form(m)
    return hnf_basis([u[i] for i in range(rows) if not any(h[i])], rows)


@dataclass(frozen=True)
class SmithForm:
    """``left @ m @ right`` is diagonal with entries ``divisors`` then zeros."""

    divisors: tuple
    left: list
    right: list
    shape: tuple

    @property
    def rank(self):
        return len(self.divisors)

    def cokernel(self):
        """``(free_rank, torsion)`` of ``Z^cols / rowspan(m)``."""
        return self.shape[1] - self.rank, tuple(d for d in self.divisors if d > 1)


def smith_normal_form(m, cols=None):
    a = [list(r) for r in m]
    rows = len(a)
    cols = len(a[0]) if rows else (cols or 0)
    left, right = identity(rows), identity(cols)

    def swap_rows(i, j):
        for mat in (a, left):
            mat[i], mat[j] = mat[j], mat[i]

    def swap_cols(i, j):
        for mat in (a, right):
            for row in mat:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        for mat in (a, left):
            mat[dst] = [x + k * y for x, y in zip(mat[dst], mat[src])]

    def add_col(dst, src, k):
        for mat in (a, right):
            for row in mat:
                row[dst] += k * row[src]

    t = 0
    while t < min(rows, cols):
        nz = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = a[t][t]
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            rest = [(abs(a[i][t]), i, None) for i in range(t + 1, rows) if a[i][t]]
            rest += [(abs(a[t][j]), None, j) for j in range(t + 1, cols) if a[t][j]]
            if rest:
                _, i, j = min(rest, key=lambda x: x[0])
                if i is not None:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]
        t += 1
    return SmithForm(tuple(a[i][i] for i in range(t)), left, right, (rows, cols))


@dataclass(frozen=True)
class LatticeSplit:
    """``Z^n = S (+) Q`` where ``S = span(vectors) ∩ Z^n`` is saturated.

    ``basis`` spans ``S``; ``projection`` (rows acting on columns) maps
    ``Z^n`` onto the torsion-free quotient ``Z^n / S``; ``section`` rows
    lift quotient coordinates back to ``Z^n``.
    """

    n: int
    basis: list
    projection: list
    section: list
    _right: list = field(repr=False)

    @property
    def rank(self):
        return len(self.basis)

    def coords(self, x):
        """Coordinates of ``x`` in ``basis`` (valid for ``x`` in ``S``)."""
        return tuple(dot(x, [row[j] for row in self._right]) for j in range(self.rank))

    def project(self, x):
        return matvec(self.projection, x)

    def lift(self, z):
        return from_coordinates(self.section, z) if self.section else (0,) * self.n


def split_lattice(vectors, n) -> LatticeSplit:
    snf = smith_normal_form([list(v) for v in vectors], cols=n)
    r = snf.rank
    v = snf.right
    vinv = integer_inverse(v) if n else []
    return LatticeSplit(
        n,
        [tuple(vinv[i]) for i in range(r)],
        [[v[i][j] for i in range(n)] for j in range(r, n)],
        [tuple(vinv[i]) for i in range(r, n)],
        v,
    )


# -- cones -------------------------------------------------------------------

def _dd(n, ineqs, eqs):
    """Extreme rays and lineality of ``{x : a.x >= 0, e.x = 0}`` by double
    description, inequalities processed in lexicographic order."""
    lin = [tuple(r) for r in identity(n)]
    for e in eqs:
        k = next((l for l in lin if dot(e, l)), None)
        if k is None:
            continue
        ek = dot(e, k)
        lin = [primitive(tuple(ek * x - dot(e, l) * y for x, y in zip(l, k))) for l in lin if l is not k]
        lin = [l for l in lin if any(l)]
    rays = []  # (vector, tight set)
    for idx, a in enumerate(sorted(set(tuple(x) for x in ineqs if any(x)))):
        k = next((l for l in lin if dot(a, l)), None)
        if k is not None:
            if dot(a, k) < 0:
                k = tuple(-x for x in k)
            ak = dot(a, k)
            lin = [
                primitive(tuple(ak * x - dot(a, l) * y for x, y in zip(l, k)))
                for l in lin
                if l is not k and l != tuple(-x for x in k)
            ]
            lin = [l for l in lin if any(l)]
            rays = [
                (primitive(tuple(ak * x - dot(a, r) * y for x, y in zip(r, k))), z | {idx})
                for r, z in rays
            ]
            rays.append((k, frozenset(range(idx))))
            continue
        pos, zer, neg = [], [], []
        for r, z in rays:
            s = dot(a, r)
            (pos if s > 0 else zer if s == 0 else neg).append((r, z, s))
        new = [(r, z) for r, z, _ in pos] + [(r, z | {idx}) for r, z, _ in zer]
        allz = [z for _, z in rays]
        for p, zp, sp in pos:
            for q, zq, sq in neg:
                common = zp & zq
                if any(common <= z for z in allz if z is not zp and z is not zq):
                    continue
                v = primitive(tuple(sp * y - sq * x for x, y in zip(p, q)))
                new.append((v, common | {idx}))
        rays = new
    seen, out = set(), []
    for r, _ in rays:
        if any(r) and r not in seen:
            seen.add(r)
            out.append(r)
    return out, lin


@dataclass(frozen=True)
class Cone:
    """A rational polyhedral cone in ``R^rank`` with both descriptions.

    ``rays`` are primitive extreme rays modulo ``lineality``; ``facets`` are
    inequalities ``a.x >= 0`` and ``equations`` cut out the linear span.
    """

    rank: int
    rays: tuple
    lineality: tuple = ()
    facets: tuple = ()
    equations: tuple = ()
    _faces: list = field(default=None, init=False, compare=False, repr=False, hash=False)

    @classmethod
    def from_rays(cls, rank, rays, lineality=()) -> "Cone":
        rays = [tuple(r) for r in rays]
        lineality = [tuple(l) for l in lineality]
        for v in rays + lineality:
            if len(v) != rank:
                raise DimensionError(f"vector {list(v)} not in Z^{rank}")
        if rank > DEFAULT_RANK_CAP:
            raise ValidationError(f"ambient rank {rank} above cap {DEFAULT_RANK_CAP}")
        facets, equations = _dd(rank, rays + [tuple(-x for x in l) for l in lineality] + lineality, [])
        return cls._from_h(rank, facets, equations)

    @classmethod
    def from_inequalities(cls, rank, facets, equations=()) -> "Cone":
        facets = [tuple(a) for a in facets]
        equations = [tuple(e) for e in equations]
        for v in facets + equations:
            if len(v) != rank:
                raise DimensionError(f"vector {list(v)} not in Z^{rank}")
        if rank > DEFAULT_RANK_CAP:
            raise ValidationError(f"ambient rank {rank} above cap {DEFAULT_RANK_CAP}")
        rays, lin = _dd(rank, facets, equations)
        f2, e2 = _dd(rank, rays, lin)
        return cls._from_h(rank, f2, e2)

    @classmethod
    def _from_h(cls, rank, facets, equations):
        rays, lin = _dd(rank, facets, equations)
        f2, e2 = _dd(rank, rays + [tuple(-x for x in l) for l in lin] + lin, [])
        return cls(
            rank,
            tuple(sorted(rays)),
            tuple(hnf_basis(lin, rank)),
            tuple(sorted(f2)),
            tuple(hnf_basis(e2, rank)),
        )

    @classmethod
    def zero(cls, rank) -> "Cone":
        return cls.from_rays(rank, [])

    @classmethod
    def orthant(cls, rank) -> "Cone":
        return cls.from_rays(rank, identity(rank))

    @property
    def dim(self):
        return self.rank - len(self.equations)

    @property
    def is_pointed(self):
        return not self.lineality

    def contains(self, v) -> bool:
        return all(dot(a, v) >= 0 for a in self.facets) and not any(dot(e, v) for e in self.equations)

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains(r) for r in other.rays) and all(
            self.contains(l) and self.contains(tuple(-x for x in l)) for l in other.lineality
        )

    def faces(self):
        """Faces as sorted tuples of ray indices, smallest first.

        Every face is an intersection of facets, so the list is the closure of
        the facet incidence sets (and the full ray set) under intersection.
        """
        if self._faces is not None:
            return list(self._faces)
        full = frozenset(range(len(self.rays)))
        incid = [frozenset(i for i, r in enumerate(self.rays) if dot(a, r) == 0) for a in self.facets]
        found = {full}
        frontier = [full]
        while frontier:
            nxt = []
            for f in frontier:
                for s in incid:
                    g = f & s
                    if g not in found:
                        found.add(g)
                        nxt.append(g)
            frontier = nxt
        out = sorted((tuple(sorted(f)) for f in found), key=lambda f: (len(f), f))
        object.__setattr__(self, "_faces", out)
        return list(out)

    def face_dim(self, face) -> int:
        return rank([self.rays[i] for i in face]) + len(self.lineality)

    def face_cone(self, face) -> "Cone":
        return Cone.from_rays(self.rank, [self.rays[i] for i in face], self.lineality)

    def smallest_face_containing(self, vectors):
        """Ray-index set of the smallest face containing all ``vectors``."""
        tight = [a for a in self.facets if all(dot(a, v) == 0 for v in vectors)]
        return tuple(i for i, r in enumerate(self.rays) if all(dot(a, r) == 0 for a in tight))

    def image(self, m) -> "Cone":
        """The image cone under the integer matrix ``m`` (acting on columns)."""
        target = len(m)
        return Cone.from_rays(
            target,
            [matvec(m, r) for r in self.rays] + [matvec(m, l) for l in self.lineality]
            + [tuple(-x for x in matvec(m, l)) for l in self.lineality],
        )

    def to_json(self) -> dict:
        out = {
            "rank": self.rank,
            "rays": encode_matrix(self.rays),
            "facets": encode_matrix(self.facets),
        }
        if self.lineality:
            out["lineality"] = encode_matrix(self.lineality)
        if self.equations:
            out["equations"] = encode_matrix(self.equations)
        return out

    @classmethod
    def from_json(cls, data) -> "Cone":
        if not isinstance(data, dict) or "rank" not in data:
            raise ValidationError("cone must be an object with a 'rank'")
        n = data["rank"]
        if isinstance(n, bool) or not isinstance(n, int) or n < 0:
            raise ValidationError(f"bad cone rank {n!r}")
        if "rays" in data:
            return cls.from_rays(n, decode_matrix(data["rays"]), decode_matrix(data.get("lineality", [])))
        if "facets" in data:
            return cls.from_inequalities(
                n, decode_matrix(data["facets"]), decode_matrix(data.get("equations", []))
            )
        raise ValidationError("cone needs 'rays' or 'facets'")


def dual_description(cone: Cone, have_rays: bool = True) -> Cone:
    """Recompute the missing description from the present one."""
    if have_rays:
        return Cone.from_rays(cone.rank, cone.rays, cone.lineality)
    return Cone.from_inequalities(cone.rank, cone.facets, cone.equations)


def dual_cone(cone: Cone) -> Cone:
    """``{y : y.x >= 0 for x in cone}`` in the dual lattice."""
    return Cone.from_rays(cone.rank, cone.facets, cone.equations)


def cone_fiber_product(c1: Cone, c2: Cone, f, g) -> Cone:
    """``{(p, q) in c1 x c2 : f p = g q}`` inside ``Z^(n1 + n2)``."""
    n1, n2 = c1.rank, c2.rank
    if len(f) != len(g):
        raise DimensionError("maps of a fiber product must share a target")
    for m, n in ((f, n1), (g, n2)):
        if any(len(row) != n for row in m):
            raise DimensionError("map matrix does not match its source cone")
    pad1 = lambda a: tuple(a) + (0,) * n2  # noqa: E731
    pad2 = lambda a: (0,) * n1 + tuple(a)  # noqa: E731
    ineqs = [pad1(a) for a in c1.facets] + [pad2(a) for a in c2.facets]
    eqs = [pad1(e) for e in c1.equations] + [pad2(e) for e in c2.equations]
    eqs += [tuple(fr) + tuple(-x for x in gr) for fr, gr in zip(f, g)]
    return Cone.from_inequalities(n1 + n2, ineqs, eqs)


# -- lattice coordinates, triangulation, Hilbert bases -----------------------

def own_coordinates(cone: Cone):
    """Express a pointed cone in the lattice ``span(cone) ∩ Z^n``.

    Returns ``(basis, full_dim_cone)``; ``basis`` rows map coordinates back.
    """
    if not cone.is_pointed:
        raise ValidationError("cone is not pointed")
    split = split_lattice(cone.rays, cone.rank)
    return split.basis, Cone.from_rays(split.rank, [primitive(split.coords(r)) for r in cone.rays])


def from_coordinates(basis, c):
    n = len(basis[0]) if basis else 0
    return tuple(sum(ci * b[j] for ci, b in zip(c, basis)) for j in range(n))


def triangulate(cone: Cone):
    """Pulling triangulation of a pointed cone into simplicial cones.

    Each cell is a tuple of ray indices.  The first ray of each face is
    joined to a triangulation of every facet of that face not containing it.
    """
    if not cone.is_pointed:
        raise ValidationError("cannot triangulate a cone with lineality")
    faces = [frozenset(f) for f in cone.faces()]
    dims = {f: rank([cone.rays[i] for i in f]) for f in faces}
    memo = {}

    def rec(face):
        if face in memo:
            return memo[face]
        if dims[face] == len(face):
            out = [tuple(sorted(face))]
        else:
            apex = min(face)
            out = []
            for g in faces:
                if g < face and dims[g] == dims[face] - 1 and apex not in g:
                    out.extend(tuple(sorted(s + (apex,))) for s in rec(g))
        memo[face] = out
        return out

    return sorted(rec(frozenset(range(len(cone.rays)))))


def parallelepiped_points(generators, volume_cap=DEFAULT_VOLUME_CAP, method="cosets"):
    """Lattice points of ``{sum t_i v_i : 0 <= t_i < 1}`` for a basis ``v``
    of ``Q^d``.

    ``cosets`` walks the ``|det|`` residue classes of ``Z^d`` modulo the
    generated sublattice; ``box`` scans the bounding box of the
    parallelepiped and keeps points with coefficients in ``[0, 1)``.
    """
    w = [list(v) for v in generators]
    d = len(w)
    det = abs(determinant(w))
    if det == 0:
        raise ValidationError("parallelepiped generators are dependent")
    if det > volume_cap:
        raise VolumeCapError(f"parallelepiped volume {det} exceeds cap {volume_cap}")
    winv = inverse(w)

    def coefficients(x):
        return [sum(Fraction(x[i]) * winv[i][j] for i in range(d)) for j in range(d)]

    if method == "box":
        lo = [sum(min(0, v[j]) for v in w) for j in range(d)]
        hi = [sum(max(0, v[j]) for v in w) for j in range(d)]
        box = 1
        for a, b in zip(lo, hi):
            box *= b - a + 1
        if box > volume_cap:
            raise VolumeCapError(f"bounding box of {box} points exceeds cap {volume_cap}")
        out = []
        for x in itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi))):
            lam = coefficients(x)
            if all(0 <= t < 1 for t in lam):
                out.append(tuple(x))
        return sorted(out)
    if method != "cosets":
        raise ValidationError(f"unknown enumeration method {method!r}")
    h, _ = hermite_normal_form(w)
    diag = [h[i][i] for i in range(d)]
    out = []
    for x in itertools.product(*(range(k) for k in diag)):
        lam = coefficients(x)
        shift = [t.numerator // t.denominator for t in lam]
        p = tuple(x[j] - sum(s * w[i][j] for i, s in enumerate(shift)) for j in range(d))
        out.append(p)
    return sorted(out)


def hilbert_basis(cone: Cone, volume_cap=DEFAULT_VOLUME_CAP):
    """Minimal generating set of the monoid ``cone ∩ Z^n`` (pointed cones)."""
    if not cone.is_pointed:
        raise ValidationError("Hilbert basis needs a pointed cone")
    if not cone.rays:
        return []
    basis, full = own_coordinates(cone)
    candidates = set(full.rays)
    for cell in triangulate(full):
        for p in parallelepiped_points([full.rays[i] for i in cell], volume_cap):
            if any(p):
                candidates.add(p)
    hb = minimal_elements(candidates, full)
    return sorted(from_coordinates(basis, v) for v in hb)


def minimal_elements(candidates, cone: Cone):
    """Elements of a generating set of ``cone ∩ Z^n`` that are not the sum of
    another candidate and a nonzero lattice point of the cone."""
    cands = sorted(set(candidates))
    out = []
    for x in cands:
        if not any(y != x and cone.contains(tuple(a - b for a, b in zip(x, y))) for y in cands):
            out.append(x)
    return out


def monoid_membership(v, generators, cone: Cone | None = None):
    """Nonnegative integer coefficients expressing ``v`` in ``generators``, or
    None.  Depth-first search graded by a functional positive on the cone."""
    v = tuple(v)
    gens = [tuple(g) for g in generators]
    n = len(v)
    if not any(v):
        return (0,) * len(gens)
    if cone is None:
        cone = Cone.from_rays(n, gens)
    if not cone.contains(v):
        return None
    # an interior functional of the dual cone grades the pointed monoid
    grade = [sum(col) for col in zip(*cone.facets)] if cone.facets else [0] * n
    grade = list(grade)
    if any(dot(grade, g) <= 0 for g in gens if any(g)):
        raise ValidationError("membership search needs a pointed cone containing the generators")
    order = sorted(range(len(gens)), key=lambda i: -dot(grade, gens[i]))
    memo = {}

    def search(rest, k):
        if not any(rest):
            return ()
        if k == len(order) or not cone.contains(rest):
            return None
        key = (rest, k)
        if key in memo:
            return memo[key]
        g = gens[order[k]]
        best = None
        m = dot(grade, rest) // dot(grade, g)
        for c in range(m, -1, -1):
            sub = tuple(a - c * b for a, b in zip(rest, g))
            tail = search(sub, k + 1)
            if tail is not None:
                best = ((order[k], c),) + tail
                break
        memo[key] = best
        return best

    found = search(v, 0)
    if found is None:
        return None
    coeffs = [0] * len(gens)
    for i, c in found:
        coeffs[i] += c
    return tuple(coeffs)


# -- unimodular equivalence ---------------------------------------------------

def canonical_form(cone: Cone):
    """A complete invariant of a pointed cone up to lattice isomorphism.

    The minimum, over orderings of the rays, of the Hermite normal form of
    the ray matrix written in the cone's own lattice.
    """
    basis, full = own_coordinates(cone)
    d = len(basis)
    rays = list(full.rays)
    if len(rays) > 8:
        raise VolumeCapError(f"{len(rays)} rays are too many for canonical form search")
    best = None
    for perm in itertools.permutations(rays):
        h, _ = hermite_normal_form(transpose(list(perm), d))
        form = tuple(tuple(r) for r in h)
        if best is None or form < best:
            best = form
    return (d, best or ())


def find_unimodular_map(c1: Cone, c2: Cone):
    """A lattice isomorphism ``span(c1) ∩ Z^n1 -> span(c2) ∩ Z^n2`` carrying
    ``c1`` onto ``c2``, or None.

    The result is ``(basis1, basis2, matrix)`` with ``matrix`` acting on
    coordinate columns in the two lattice bases.
    """
    b1, f1 = own_coordinates(c1)
    b2, f2 = own_coordinates(c2)
    d = len(b1)
    if d != len(b2) or len(f1.rays) != len(f2.rays):
        return None
    if d == 0:
        return b1, b2, []
    r1 = list(f1.rays)
    pick = []
    for r in r1:
        if rank(pick + [r]) > len(pick):
            pick.append(r)
        if len(pick) == d:
            break
    pinv = inverse(transpose(pick, d))
    target = set(f2.rays)
    for chosen in itertools.permutations(f2.rays, d):
        cols = transpose(list(chosen), d)
        phi = [[sum(Fraction(cols[i][k]) * pinv[k][j] for k in range(d)) for j in range(d)] for i in range(d)]
        if any(x.denominator != 1 for row in phi for x in row):
            continue
        phi = [[int(x) for x in row] for row in phi]
        if abs(determinant(phi)) != 1:
            continue
        if {matvec(phi, r) for r in r1} == target:
            return b1, b2, phi
    return None


def unimodular_equivalent(c1: Cone, c2: Cone) -> bool:
    return find_unimodular_map(c1, c2) is not None
