"""Units, prime ideals, faces and the groupification of a presented monoid.

Primes are handled through their traces on the generators: a subset ``J``
of ``E`` is the trace of a prime ideal exactly when every relation ``(a, b)``
has ``supp(a)`` meeting ``J`` if and only if ``supp(b)`` does.  The face
complementary to the prime is generated by ``E \\ J``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CombinatorialBlowupError, InvalidPrimeError
from .jsonio import encode_vector
from .lattice import hermite_normal_form, smith_normal_form
from .presentation import MonomialOrder, Presentation, support, unit
from .rewriting import GroebnerBasis, groebner, normal_form

DEFAULT_GENERATOR_CAP = 24


@dataclass(frozen=True, order=True)
class PrimeTrace:
    """A generator subset satisfying the prime condition, as sorted indices."""

    indices: tuple
    generators: tuple

    @property
    def names(self):
        return [self.generators[i] for i in self.indices]

    @property
    def sort_key(self):
        return (len(self.indices), self.indices)

    def complement(self):
        return tuple(i for i in range(len(self.generators)) if i not in self.indices)

    def __len__(self):
        return len(self.indices)

    def __str__(self):
        return "{" + ", ".join(self.names) + "}"

    @classmethod
    def from_names(cls, pres: Presentation, names) -> "PrimeTrace":
        return cls(tuple(sorted({pres.index(n) for n in names})), pres.generators)


def _relation_supports(pres):
    return [
        (support(a), support(b)) for a, b in pres.relations if support(a) != support(b)
    ]


def prime_violation(pres: Presentation, indices):
    """The first relation breaking the prime condition for ``indices``, or None."""
    j = set(indices)
    for a, b in pres.relations:
        if bool(support(a) & j) != bool(support(b) & j):
            return (a, b)
    return None


def enumerate_primes(
    pres: Presentation, cap: int = DEFAULT_GENERATOR_CAP, exclude_empty: bool = False
) -> list:
    """Every generator subset satisfying the prime condition, sorted by size
    then indices.  The empty set (whose face is the whole monoid) is
    included unless ``exclude_empty`` is set.

    Subsets are visited in Gray-code order so that one toggle updates the
    per-relation hit counts incrementally.
    """
    n = pres.rank
    if n > cap:
        raise CombinatorialBlowupError(
            f"{n} generators exceed the prime enumeration cap of {cap}"
        )
    rels = _relation_supports(pres)
    touch = [[] for _ in range(n)]  # generator -> [(relation, side)]
    for r, (sa, sb) in enumerate(rels):
        for i in sa:
            touch[i].append((r, 0))
        for i in sb:
            touch[i].append((r, 1))
    hits = [[0, 0] for _ in rels]
    bad = 0
    member = [False] * n
    found = [()]
    for step in range(1, 1 << n):
        bit = (step & -step).bit_length() - 1
        member[bit] = not member[bit]
        delta = 1 if member[bit] else -1
        for r, side in touch[bit]:
            h = hits[r]
            before = (h[0] > 0) != (h[1] > 0)
            h[side] += delta
            after = (h[0] > 0) != (h[1] > 0)
            bad += after - before
        if not bad:
            found.append(tuple(i for i in range(n) if member[i]))
    found.sort(key=lambda j: (len(j), j))
    if found:
        # prime traces are closed under union; the largest one contains all
        top = set(found[-1])
        assert all(set(j) <= top for j in found)
    out = [PrimeTrace(j, pres.generators) for j in found]
    if exclude_empty:
        out = [p for p in out if p.indices]
    return out


def maximal_prime(pres: Presentation) -> tuple:
    """The largest prime trace, by pruning ``E`` until every relation agrees.

    If one side of a relation misses the current set, the largest trace
    misses it too, and then so must the other side.
    """
    j = set(range(pres.rank))
    rels = _relation_supports(pres)
    changed = True
    while changed:
        changed = False
        for sa, sb in rels:
            if bool(sa & j) != bool(sb & j):
                j -= sa | sb
                changed = True
    return tuple(sorted(j))


@dataclass(frozen=True)
class UnitReport:
    units: tuple  # generator indices of E minus the largest prime trace
    normal_form_zero: tuple  # generator indices whose normal form is 0
    generators: tuple

    @property
    def divergent(self) -> bool:
        return self.units != self.normal_form_zero

    def to_json(self) -> dict:
        return {
            "units": [self.generators[i] for i in self.units],
            "normalFormZero": [self.generators[i] for i in self.normal_form_zero],
            "divergent": self.divergent,
        }


def units(pres: Presentation, order: MonomialOrder | None = None) -> UnitReport:
    """Generators mapping to units, plus the generators with normal form 0.

    The first set is exact.  The second only detects generators equal to the
    identity, so the two differ for monoids with nontrivial units.
    """
    top = set(maximal_prime(pres))
    invertible = tuple(i for i in range(pres.rank) if i not in top)
    basis = groebner(pres, order)
    zero = pres.zero()
    nf0 = tuple(i for i in range(pres.rank) if normal_form(basis, unit(pres.rank, i)) == zero)
    return UnitReport(invertible, nf0, pres.generators)


@dataclass(frozen=True)
class Face:
    """The face at a prime: presentation on ``E \\ J`` plus provenance."""

    prime: PrimeTrace
    presentation: Presentation
    order: MonomialOrder
    basis: GroebnerBasis


def face(pres: Presentation, prime: PrimeTrace, order: MonomialOrder | None = None) -> Face:
    witness = prime_violation(pres, prime.indices)
    if witness is not None:
        raise InvalidPrimeError(
            f"{prime} is not a prime trace: relation {pres.format_relation(witness)} "
            "meets it on one side only",
            witness,
        )
    order = order or MonomialOrder.lex(pres.rank)
    elim = order.eliminating(prime.indices) if prime.indices else order
    basis = groebner(pres, elim)
    keep = prime.complement()
    sub = basis.restrict(keep)
    rels = tuple(sub.rules)
    return Face(prime, Presentation(tuple(pres.generators[i] for i in keep), rels), elim, basis)


def face_presentation(pres: Presentation, prime: PrimeTrace, order: MonomialOrder | None = None):
    """Presentation of the face ``M \\ p`` on the generators outside ``J``.

    Its relations are the rules supported off ``J`` of the reduced Groebner
    basis under an order eliminating ``J``, which is a reduced Groebner basis
    of the restricted congruence.
    """
    return face(pres, prime, order).presentation


# -- groupification ----------------------------------------------------------

@dataclass(frozen=True)
class Groupification:
    """``M^gp = Z^free_rank (+) Z/d_1 (+) ...`` with generator images.

    Images list the free coordinates first, then one residue per torsion
    divisor.
    """

    free_rank: int
    torsion: tuple
    images: tuple

    @property
    def free_images(self):
        return [img[: self.free_rank] for img in self.images]

    def __call__(self, x):
        """Image of an integer vector over the generators."""
        r = self.free_rank
        out = [0] * (r + len(self.torsion))
        for k, img in zip(x, self.images):
            if k:
                for i, v in enumerate(img):
                    out[i] += k * v
        for i, d in enumerate(self.torsion):
            out[r + i] %= d
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "rank": self.free_rank,
            "torsion": list(self.torsion),
            "images": [encode_vector(v) for v in self.images],
        }


def relation_matrix(pres: Presentation):
    return [[x - y for x, y in zip(a, b)] for a, b in pres.relations if a != b]


def groupify(pres: Presentation) -> Groupification:
    """Cokernel of the relation-difference matrix, by Smith normal form.

    The free part is put in Hermite normal form, and the torsion residues are
    shifted by a homomorphism from the free part so that a generator sitting
    on a unit pivot of that form has torsion residue 0.
    """
    n = pres.rank
    d = relation_matrix(pres)
    snf = smith_normal_form(d, cols=n)
    rk = snf.rank
    v = snf.right
    keep = [i for i in range(rk) if snf.divisors[i] > 1]
    torsion = tuple(snf.divisors[i] for i in keep)
    free_t = [[v[j][i] for j in range(n)] for i in range(rk, n)]  # r x n
    h, _ = hermite_normal_form(free_t)
    r = n - rk
    tors = [[v[j][i] % snf.divisors[i] for i in keep] for j in range(n)]
    # pivots equal to 1 let us move the torsion of that generator into the map
    shift = [[0] * len(keep) for _ in range(r)]
    for row in range(r):
        col = next((c for c, x in enumerate(h[row]) if x), None)
        if col is None or h[row][col] != 1:
            continue
        # the column of a unit pivot is a standard basis vector
        shift[row] = list(tors[col])
    images = []
    for j in range(n):
        free = [h[row][j] for row in range(r)]
        t = [
            (tors[j][t] - sum(free[k] * shift[k][t] for k in range(r))) % torsion[t]
            for t in range(len(keep))
        ]
        images.append(tuple(free + t))
    return Groupification(r, torsion, tuple(images))


def is_integral(pres: Presentation, order: MonomialOrder | None = None) -> bool:
    """Whether ``M`` embeds in ``M^gp``: integralizing changes nothing."""
    from .intsat import integralize_basis

    return integralize_basis(pres, order).rules == groebner(pres, order).rules
