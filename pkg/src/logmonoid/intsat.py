"""Localization, ideal quotients, integralization and saturation.

The integralization of ``M = F/R`` is ``F/(R : x^oo)`` for ``x`` the sum of
all generators, where ``(a, b)`` lies in ``(R : x^oo)`` when ``(a + n x, b + n x)``
lies in ``R`` for some ``n``.  It is computed by adjoining an inverse ``t`` of
``x`` and eliminating ``t``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotIntegralError, ValidationError
from .jsonio import encode_vector
from .lattice import (
    DEFAULT_VOLUME_CAP,
    Cone,
    dual_cone,
    hilbert_basis,
    left_kernel,
    monoid_membership,
    split_lattice,
)
from .presentation import MonoidMap, MonomialOrder, Presentation, validate_map
from .rewriting import GroebnerBasis, groebner
from .structure import Groupification, groupify, is_integral


def _fresh(names, stem):
    if stem not in names:
        return stem
    k = 1
    while f"{stem}{k}" in names:
        k += 1
    return f"{stem}{k}"


def localize(pres: Presentation, x) -> Presentation:
    """``M[-x]``: adjoin a generator ``t`` with ``t + x = 0``."""
    x = pres.check(x)
    t = _fresh(pres.generators, "t")
    rels = [(a + (0,), b + (0,)) for a, b in pres.relations]
    rels.append((x + (1,), (0,) * (pres.rank + 1)))
    return Presentation(pres.generators + (t,), tuple(rels))


def ideal_quotient(pres: Presentation, x, order: MonomialOrder | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of ``(R : x^oo)`` over the original generators.

    The localization is completed under ``order`` extended by ``t`` on top;
    the rules free of ``t`` form a reduced basis of the eliminated congruence.
    """
    n = pres.rank
    order = order or MonomialOrder.lex(n)
    big = groebner(localize(pres, x), order.adjoin_top())
    rules = tuple((h[:n], b[:n]) for h, b in big.rules if not h[n] and not b[n])
    return GroebnerBasis(order, rules, reduced=True)


def integralize_basis(pres: Presentation, order: MonomialOrder | None = None) -> GroebnerBasis:
    order = order or MonomialOrder.lex(pres.rank)
    if pres.rank == 0:
        return GroebnerBasis(order, (), reduced=True)
    return ideal_quotient(pres, (1,) * pres.rank, order)


def integralize(pres: Presentation, order: MonomialOrder | None = None) -> Presentation:
    """Presentation of ``M^int`` on the same generators."""
    basis = integralize_basis(pres, order)
    out = pres.with_relations(basis.rules)
    out._cache[basis.order] = basis
    return out


# -- saturation ----------------------------------------------------------------

@dataclass(frozen=True)
class SaturationResult:
    """``M^sat = (C ∩ Z^r) (+) T`` for the cone ``C`` of ``M`` in ``M^gp``.

    ``hilbert`` is the Hilbert basis of the sharp quotient ``cone`` (the cone
    modulo its lineality); ``generators`` are the images in ``M^gp`` of the
    generators of ``presentation``: lifts of ``hilbert``, a basis of the unit
    lattice with inverses, and one generator per torsion factor.
    """

    rank: int
    torsion: tuple
    unit_rank: int
    hilbert: tuple
    cone: Cone
    generators: tuple
    presentation: Presentation
    inclusion: MonoidMap
    groupification: Groupification

    @property
    def dual(self) -> Cone:
        """``Hom`` of the sharp saturated monoid into the nonnegative reals."""
        return dual_cone(self.cone)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "torsion": list(self.torsion),
            "units": self.unit_rank,
            "hilbert": [encode_vector(h) for h in self.hilbert],
            "presentation": self.presentation.to_json(),
            "inclusion": self.inclusion.to_json(),
        }


def saturate(
    pres: Presentation,
    order: MonomialOrder | None = None,
    volume_cap: int = DEFAULT_VOLUME_CAP,
    check: bool = True,
) -> SaturationResult:
    """Saturate an integral presentation.

    Units are split off first, the sharp part is replaced by the Hilbert
    basis of its cone, and the torsion of ``M^gp`` is adjoined.  The new
    presentation is the kernel congruence of the new generators, obtained
    from a kernel lattice basis by an ideal quotient.
    """
    if check and not is_integral(pres, order):
        raise NotIntegralError("saturation needs an integral presentation; integralize first")
    gp = groupify(pres)
    r, tors = gp.free_rank, gp.torsion
    free = [tuple(v) for v in gp.free_images]
    full = Cone.from_rays(r, [v for v in free if any(v)])
    units = split_lattice(full.lineality, r)
    sharp = Cone.from_rays(r - units.rank, [units.project(v) for v in free if any(v)])
    hb = tuple(hilbert_basis(sharp, volume_cap))

    names, vectors = [], []
    s = len(tors)
    for i, h in enumerate(hb):
        names.append(f"h{i + 1}")
        vectors.append(units.lift(h) + (0,) * s)
    for i, w in enumerate(units.basis):
        names += [f"w{i + 1}", f"w{i + 1}_inv"]
        vectors += [tuple(w) + (0,) * s, tuple(-x for x in w) + (0,) * s]
    for i in range(s):
        names.append(f"z{i + 1}")
        vectors.append((0,) * r + tuple(int(j == i) for j in range(s)))

    k = len(vectors)
    rows = [list(v) for v in vectors] + [
        [0] * r + [d if j == i else 0 for j in range(s)] for i, d in enumerate(tors)
    ]
    kernel = left_kernel(rows, k + s)
    rels = []
    for v in kernel:
        v = v[:k]
        if any(v):
            rels.append(
                (tuple(max(x, 0) for x in v), tuple(max(-x, 0) for x in v))
            )
    lattice_pres = Presentation(tuple(names), tuple(rels))
    sat_order = MonomialOrder.lex(k)
    basis = ideal_quotient(lattice_pres, (1,) * k, sat_order) if k else GroebnerBasis(sat_order, (), True)
    sat = Presentation(tuple(names), basis.rules)
    sat._cache[sat_order] = basis

    images = []
    for j in range(pres.rank):
        images.append(_express(gp.images[j], r, tors, hb, sharp, units))
    inclusion = MonoidMap(pres, sat, tuple(images))
    return SaturationResult(
        r, tors, units.rank, hb, sharp, tuple(vectors), sat, inclusion, gp
    )


def _express(image, r, tors, hb, sharp, units):
    """Exponent over the saturation's generators with the given image."""
    free = image[:r]
    out = [0] * (len(hb) + 2 * units.rank + len(tors))
    rest = list(free)
    if hb:
        coeffs = monoid_membership(units.project(free), hb, sharp)
        if coeffs is None:
            raise ValidationError(f"generator image {list(free)} is outside the cone")
        for i, c in enumerate(coeffs):
            out[i] = c
            lifted = units.lift(hb[i])
            rest = [x - c * y for x, y in zip(rest, lifted)]
    base = len(hb)
    for i, c in enumerate(units.coords(rest)):
        out[base + 2 * i + (0 if c >= 0 else 1)] = abs(c)
    base += 2 * units.rank
    for i, t in enumerate(image[r:]):
        out[base + i] = t % tors[i]
    return tuple(out)


def saturate_in_lattice(vectors, volume_cap: int = DEFAULT_VOLUME_CAP):
    """Hilbert basis of the saturation of the monoid generated by integer
    ``vectors`` inside the ambient lattice ``Z^n`` (pointed cones only)."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return []
    cone = Cone.from_rays(len(vectors[0]), [v for v in vectors if any(v)])
    if not cone.is_pointed:
        raise ValidationError("the generated cone contains a line")
    return hilbert_basis(cone, volume_cap)


def inclusion_chain(pres: Presentation, order: MonomialOrder | None = None):
    """The canonical maps ``M -> M^int -> M^sat``, each validated."""
    integral = integralize(pres, order)
    to_int = MonoidMap(pres, integral, MonoidMap.identity(pres).images)
    result = saturate(integral, order)
    for m in (to_int, result.inclusion):
        ok, witness = validate_map(m)
        if not ok:
            raise ValidationError("canonical map fails on a relation", witness)
    return to_int, result
