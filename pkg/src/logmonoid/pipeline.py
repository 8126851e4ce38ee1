"""Fine and fs faces of a chart, and of a pushout chart built from a diagram.

Everything here is chart level: one record per prime trace of the chart,
with no splitting into connected components.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError
from .extcone import (
    CHART_LEVEL_NOTE,
    extend,
    extend_map,
    extended_fiber_product,
    theorem_c_check,
)
from .intsat import SaturationResult, integralize, saturate
from .jsonio import FORMAT, decode_matrix
from .lattice import Cone, dot, dual_cone, matmul, smith_normal_form, transpose
from .presentation import MonoidMap, MonomialOrder, Presentation, compose, pushout, validate_map
from .structure import (
    DEFAULT_GENERATOR_CAP,
    Face,
    PrimeTrace,
    enumerate_primes,
    face,
    groupify,
)


@dataclass(frozen=True)
class FaceRecord:
    prime: PrimeTrace
    face: Face
    fine: Presentation
    fine_order: MonomialOrder
    fs: SaturationResult

    @property
    def cone(self) -> Cone:
        """Dual cone of the sharp fs charting monoid."""
        return self.fs.dual

    def maps(self):
        """The canonical maps face -> fine -> fs."""
        to_fine = MonoidMap(self.face.presentation, self.fine, MonoidMap.identity(self.fine).images)
        return to_fine, self.fs.inclusion

    def check_maps(self) -> bool:
        to_fine, to_fs = self.maps()
        return all(validate_map(m)[0] for m in (to_fine, to_fs, compose(to_fine, to_fs)))

    def to_json(self) -> dict:
        gens = self.face.presentation.generators
        return {
            "prime": self.prime.names,
            "chartLevel": True,
            "face": self.face.presentation.to_json(),
            "faceOrder": self.face.order.describe(self.prime.generators),
            "fine": self.fine.to_json(),
            "fineOrder": self.fine_order.describe(gens),
            "fs": self.fs.to_json(),
            "cone": self.cone.to_json(),
        }

    def summary_row(self):
        return (str(self.prime), self.fs.rank, list(self.fs.torsion), len(self.fs.hilbert))


def face_record(chart: Presentation, prime: PrimeTrace, order=None, volume_cap=None) -> FaceRecord:
    fc = face(chart, prime, order)
    keep = prime.complement()
    sub_order = fc.order.restrict(keep)
    fine = integralize(fc.presentation, sub_order)
    kwargs = {} if volume_cap is None else {"volume_cap": volume_cap}
    fs = saturate(fine, sub_order, check=False, **kwargs)
    return FaceRecord(prime, fc, fine, sub_order, fs)


def fine_faces(
    chart: Presentation,
    order: MonomialOrder | None = None,
    cap: int = DEFAULT_GENERATOR_CAP,
    exclude_empty: bool = False,
    volume_cap: int | None = None,
) -> list:
    """One record per prime trace, sorted by the trace.

    Each record holds the face under an order eliminating the prime, its
    integralization at the sum of the face generators and the saturation.
    Groebner bases are cached on the chart, so faces whose elimination
    orders coincide share one completion.
    """
    order = order or MonomialOrder.lex(chart.rank)
    primes = enumerate_primes(chart, cap=cap, exclude_empty=exclude_empty)
    return [face_record(chart, p, order, volume_cap) for p in primes]


def report(chart: Presentation, records) -> dict:
    return {
        "format": FORMAT,
        "chart": chart.to_json(),
        "note": CHART_LEVEL_NOTE,
        "faces": [r.to_json() for r in records],
    }


def summary_table(records) -> str:
    rows = [("prime", "rank", "torsion", "hilbert")]
    rows += [(p, str(r), str(t), str(h)) for p, r, t, h in (rec.summary_row() for rec in records)]
    widths = [max(len(row[i]) for row in rows) for i in range(4)]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in rows) + "\n"


# -- diagrams ---------------------------------------------------------------------

@dataclass(frozen=True)
class Diagram:
    """Two monoid maps ``f: P -> Q`` and ``g: P -> R``."""

    f: MonoidMap
    g: MonoidMap

    @property
    def P(self):
        return self.f.source

    @property
    def Q(self):
        return self.f.target

    @property
    def R(self):
        return self.g.target

    @classmethod
    def from_json(cls, data) -> "Diagram":
        if not isinstance(data, dict):
            raise ValidationError("diagram must be an object")
        for key in ("P", "Q", "R", "f", "g"):
            if key not in data:
                raise ValidationError(f"diagram is missing {key!r}")
        P, Q, R = (Presentation.from_json(data[k]) for k in ("P", "Q", "R"))
        f = MonoidMap(P, Q, tuple(tuple(v) for v in decode_matrix(data["f"])))
        g = MonoidMap(P, R, tuple(tuple(v) for v in decode_matrix(data["g"])))
        return cls(f, g)

    def to_json(self) -> dict:
        return {
            "P": self.P.to_json(),
            "Q": self.Q.to_json(),
            "R": self.R.to_json(),
            "f": self.f.to_json(),
            "g": self.g.to_json(),
        }

    def chart(self) -> Presentation:
        return pushout(self.f, self.g)


def monoid_cone(pres: Presentation) -> Cone:
    """``Hom(M, R>=0)`` in the dual of the free part of ``M^gp``."""
    gp = groupify(pres)
    return dual_cone(Cone.from_rays(gp.free_rank, [v for v in gp.free_images if any(v)]))


def _right_inverse(g, r, n):
    """Integer ``S`` with ``g S = 1`` for an ``r x n`` matrix with surjective columns."""
    if r == 0:
        return [[] for _ in range(n)]
    snf = smith_normal_form(g, cols=n)
    if snf.divisors != (1,) * r:
        raise ValidationError("generator images do not span the lattice")
    v_r = [row[:r] for row in snf.right]
    return matmul(v_r, snf.left)


def dual_map(f: MonoidMap):
    """Matrix of ``Hom(Q, R>=0) -> Hom(P, R>=0)`` induced by ``f: P -> Q``."""
    gp_p, gp_q = groupify(f.source), groupify(f.target)
    rp, rq = gp_p.free_rank, gp_q.free_rank
    g_p = transpose(gp_p.free_images, rp)  # rp x nP
    s_p = _right_inverse(g_p, rp, f.source.rank)  # nP x rp
    cols = [gp_q(img)[:rq] for img in f.images]
    lin = matmul(transpose(cols, rq), s_p) if rp else [[] for _ in range(rq)]  # rq x rp
    return transpose(lin, rp)


def _expected_face(pres: Presentation, cone: Cone, trace):
    """Face of ``Hom(pres, R>=0)`` vanishing on the generators outside ``trace``."""
    gp = groupify(pres)
    off = [gp.free_images[i] for i in range(pres.rank) if i not in set(trace)]
    return tuple(i for i, ray in enumerate(cone.rays) if all(dot(ray, v) == 0 for v in off))


@dataclass(frozen=True)
class DiagramResult:
    diagram: Diagram
    chart: Presentation
    records: list
    cones: dict
    maps: dict
    strata: list
    theorem_c: object

    def to_json(self) -> dict:
        out = report(self.chart, self.records)
        out["diagram"] = self.diagram.to_json()
        out["cones"] = {k: c.to_json() for k, c in self.cones.items()}
        out["coneMaps"] = {k: m.to_json() for k, m in self.maps.items()}
        out["theoremC"] = self.theorem_c.to_json()
        return out


def cone_data(diagram: Diagram):
    cones = {k: monoid_cone(p) for k, p in (("P", diagram.P), ("Q", diagram.Q), ("R", diagram.R))}
    ext = {k: extend(c) for k, c in cones.items()}
    mf = extend_map(dual_map(diagram.f), ext["Q"], ext["P"])
    mg = extend_map(dual_map(diagram.g), ext["R"], ext["P"])
    return cones, {"f": mf, "g": mg}


def fine_faces_of_diagram(diagram: Diagram, order=None, cap=DEFAULT_GENERATOR_CAP, volume_cap=None):
    chart = diagram.chart()
    records = fine_faces(chart, order, cap=cap, volume_cap=volume_cap)
    cones, maps = cone_data(diagram)
    strata = extended_fiber_product(maps["f"], maps["g"])
    nq = diagram.Q.rank
    expected = []
    for rec in records:
        jq = [i for i in rec.prime.indices if i < nq]
        jr = [i - nq for i in rec.prime.indices if i >= nq]
        expected.append(
            (
                _expected_face(diagram.Q, cones["Q"], jq),
                _expected_face(diagram.R, cones["R"], jr),
            )
        )
    check = theorem_c_check([(str(r.prime), r.cone) for r in records], strata, expected)
    return DiagramResult(diagram, chart, records, cones, maps, strata, check)
