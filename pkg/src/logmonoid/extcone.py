"""Extended cones, their maps and fiber products.

The extended cone of ``sigma`` is stored stratum by stratum: for every face
``kappa`` the asymptotic cone ``sigma / R kappa``, realised as the image of
``sigma`` in the saturated quotient lattice ``Z^n / (span(kappa) ∩ Z^n)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ContainmentError, DimensionError
from .jsonio import encode_matrix
from .lattice import (
    Cone,
    cone_fiber_product,
    find_unimodular_map,
    matmul,
    matvec,
    rank,
    split_lattice,
    transpose,
)

CHART_LEVEL_NOTE = (
    "chart-level check on single cones; gluing of cone complexes is not modelled"
)


@dataclass(frozen=True)
class Stratum:
    face: tuple  # ray indices of the base
    projection: list  # rows: Z^n -> quotient lattice
    section: list  # quotient coordinates -> Z^n, as rows
    cone: Cone

    @property
    def dim(self):
        return self.cone.dim

    def to_json(self) -> dict:
        return {
            "face": list(self.face),
            "dim": self.dim,
            "projection": encode_matrix(self.projection),
            "cone": self.cone.to_json(),
        }


@dataclass(frozen=True)
class ExtendedCone:
    base: Cone
    strata: dict  # face -> Stratum, in face order

    def faces(self):
        return list(self.strata)

    def to_json(self) -> dict:
        return {
            "base": self.base.to_json(),
            "strata": [s.to_json() for s in self.strata.values()],
        }


def extend(cone: Cone) -> ExtendedCone:
    """One asymptotic cone per face of ``cone``."""
    strata = {}
    for face in cone.faces():
        span = [cone.rays[i] for i in face] + list(cone.lineality)
        split = split_lattice(span, cone.rank)
        q = cone.rank - split.rank
        image = Cone.from_rays(q, [split.project(r) for r in cone.rays])
        strata[face] = Stratum(face, split.projection, split.section, image)
    return ExtendedCone(cone, strata)


@dataclass(frozen=True)
class ExtendedConeMap:
    """A lattice map of base cones and what it does to every stratum.

    ``face_map`` sends a source face to the smallest target face containing
    its image; ``quotients`` holds the induced map of quotient lattices.
    """

    linear: list
    source: ExtendedCone
    target: ExtendedCone
    face_map: dict
    quotients: dict

    def base_injective(self) -> bool:
        """Whether the linear map is injective on the span of the base."""
        base = self.source.base
        span = list(base.rays) + list(base.lineality)
        if not span:
            return True
        return rank([matvec(self.linear, v) for v in span]) == rank(span)

    def injective(self) -> bool:
        """Injectivity of the induced map of extended cones.

        Distinct strata must land in distinct target strata and each stratum
        must embed in its image.
        """
        images = list(self.face_map.values())
        if len(set(images)) != len(images):
            return False
        for face, q in self.quotients.items():
            stratum = self.source.strata[face].cone
            span = list(stratum.rays) + list(stratum.lineality)
            if span and rank([matvec(q, v) for v in span]) != rank(span):
                return False
        return True

    def collapsed(self):
        """Source faces sharing their target face with another source face."""
        seen = {}
        for face, image in self.face_map.items():
            seen.setdefault(image, []).append(face)
        return {image: faces for image, faces in seen.items() if len(faces) > 1}

    def to_json(self) -> dict:
        return {
            "linear": encode_matrix(self.linear),
            "baseInjective": self.base_injective(),
            "injective": self.injective(),
            "strata": [
                {
                    "sourceFace": list(face),
                    "targetFace": list(self.face_map[face]),
                    "quotient": encode_matrix(self.quotients[face]),
                }
                for face in self.source.strata
            ],
        }


def _quotient_matrix(linear, source: Stratum, target: Stratum, n_source):
    if not source.section:
        return [[] for _ in target.projection]
    lift = transpose(source.section, n_source)  # n x q
    return matmul(matmul(target.projection, linear), lift) if target.projection else []


def extend_map(linear, source: ExtendedCone, target: ExtendedCone) -> ExtendedConeMap:
    linear = [list(row) for row in linear]
    if len(linear) != target.base.rank or any(len(r) != source.base.rank for r in linear):
        raise DimensionError(
            f"map must be a {target.base.rank} x {source.base.rank} integer matrix"
        )
    base = source.base
    for r in base.rays:
        if not target.base.contains(matvec(linear, r)):
            raise ContainmentError(
                f"image of ray {list(r)} is {list(matvec(linear, r))}, outside the target cone",
                r,
            )
    for l in base.lineality:
        for v in (l, tuple(-x for x in l)):
            if not target.base.contains(matvec(linear, v)):
                raise ContainmentError(f"image of lineality vector {list(v)} leaves the target", v)
    face_map, quotients = {}, {}
    for face, stratum in source.strata.items():
        vectors = [matvec(linear, base.rays[i]) for i in face]
        vectors += [matvec(linear, l) for l in base.lineality]
        image = target.base.smallest_face_containing(vectors)
        face_map[face] = image
        quotients[face] = _quotient_matrix(linear, stratum, target.strata[image], base.rank)
    return ExtendedConeMap(linear, source, target, face_map, quotients)


def compose(f: ExtendedConeMap, g: ExtendedConeMap) -> ExtendedConeMap:
    """``g`` after ``f``."""
    return extend_map(matmul(g.linear, f.linear), f.source, g.target)


@dataclass(frozen=True)
class FiberStratum:
    source_faces: tuple  # (face in first source, face in second source)
    target_face: tuple
    cone: Cone

    def to_json(self) -> dict:
        return {
            "sourceFaces": [list(self.source_faces[0]), list(self.source_faces[1])],
            "targetFace": list(self.target_face),
            "cone": self.cone.to_json(),
        }


def extended_fiber_product(f: ExtendedConeMap, g: ExtendedConeMap) -> list:
    """Strata of the fiber product of two extended cone maps.

    Pairs of source faces landing on the same target face contribute the
    fiber product of their asymptotic cones over the target's asymptotic cone.
    """
    if f.target.base != g.target.base:
        raise DimensionError("extended fiber product needs a common target")
    out = []
    for k1, t1 in f.face_map.items():
        for k2, t2 in g.face_map.items():
            if t1 != t2:
                continue
            cone = cone_fiber_product(
                f.source.strata[k1].cone,
                g.source.strata[k2].cone,
                _as_matrix(f.quotients[k1], f.target.strata[t1].cone.rank, f.source.strata[k1].cone.rank),
                _as_matrix(g.quotients[k2], g.target.strata[t2].cone.rank, g.source.strata[k2].cone.rank),
            )
            out.append(FiberStratum((k1, k2), t1, cone))
    return out


def _as_matrix(m, rows, cols):
    if rows == 0:
        return []
    if cols == 0:
        return [[] for _ in range(rows)]
    return m


# -- the chart-level check ----------------------------------------------------------

@dataclass(frozen=True)
class FaceMatch:
    label: str
    cone: Cone
    expected: tuple | None  # expected pair of source faces
    matches: tuple  # indices of strata unimodularly equivalent to the face cone
    expected_ok: bool
    witness: object  # (basis1, basis2, matrix) for the chosen stratum, or None
    chosen: int | None

    def to_json(self, strata) -> dict:
        out = {
            "face": self.label,
            "cone": self.cone.to_json(),
            "dim": self.cone.dim,
            "matches": [list(map(list, strata[i].source_faces)) for i in self.matches],
            "expectedStratum": None if self.expected is None else [list(k) for k in self.expected],
            "expectedMatched": self.expected_ok,
            "matched": bool(self.matches),
        }
        if self.chosen is not None:
            b1, b2, phi = self.witness
            out["stratum"] = [list(k) for k in strata[self.chosen].source_faces]
            out["unimodularMap"] = {
                "faceBasis": encode_matrix(b1),
                "stratumBasis": encode_matrix(b2),
                "matrix": encode_matrix(phi),
            }
        return out


@dataclass(frozen=True)
class TheoremCReport:
    faces: tuple
    strata: tuple
    bijection: tuple | None  # face index -> stratum index, when one exists

    @property
    def verdict(self) -> bool:
        return all(f.matches for f in self.faces)

    def unmatched_strata(self):
        used = {i for f in self.faces for i in f.matches}
        return [i for i in range(len(self.strata)) if i not in used]

    def to_json(self) -> dict:
        return {
            "chartLevel": True,
            "note": CHART_LEVEL_NOTE,
            "verdict": self.verdict,
            "bijection": self.bijection is not None,
            "faces": [f.to_json(self.strata) for f in self.faces],
            "strata": [
                dict(s.to_json(), dim=s.cone.dim) for s in self.strata
            ],
            "unmatchedStrata": [
                [list(k) for k in self.strata[i].source_faces] for i in self.unmatched_strata()
            ],
        }


def _bipartite(options, n_right):
    """A perfect matching of left items into right items, if one exists."""
    owner = [None] * n_right

    def augment(i, seen):
        for j in options[i]:
            if j in seen:
                continue
            seen.add(j)
            if owner[j] is None or augment(owner[j], seen):
                owner[j] = i
                return True
        return False

    for i in range(len(options)):
        if not augment(i, set()):
            return None
    out = [None] * len(options)
    for j, i in enumerate(owner):
        if i is not None:
            out[i] = j
    return tuple(out)


def theorem_c_check(face_cones, strata, expected=None) -> TheoremCReport:
    """Match face cones to fiber-product strata up to lattice isomorphism.

    ``face_cones`` is a list of ``(label, cone)``; ``expected`` optionally
    gives, per face, the pair of source faces its stratum should sit over.
    """
    strata = tuple(strata)
    expected = list(expected) if expected is not None else [None] * len(face_cones)
    faces = []
    for (label, cone), exp in zip(face_cones, expected):
        matches, witnesses = [], {}
        for i, s in enumerate(strata):
            w = find_unimodular_map(cone, s.cone)
            if w is not None:
                matches.append(i)
                witnesses[i] = w
        exp_idx = next(
            (i for i, s in enumerate(strata) if exp is not None and s.source_faces == tuple(exp)),
            None,
        )
        chosen = exp_idx if exp_idx in witnesses else (matches[0] if matches else None)
        faces.append(
            FaceMatch(
                label,
                cone,
                None if exp is None else tuple(exp),
                tuple(matches),
                exp_idx in witnesses,
                witnesses.get(chosen),
                chosen,
            )
        )
    bijection = None
    if len(faces) == len(strata):
        bijection = _bipartite([f.matches for f in faces], len(strata))
    return TheoremCReport(tuple(faces), strata, bijection)


def sample_signature(ext: ExtendedCone, face, point):
    """``(face, class in the quotient lattice)`` of a point of a stratum."""
    return tuple(face), matvec(ext.strata[face].projection, point)
