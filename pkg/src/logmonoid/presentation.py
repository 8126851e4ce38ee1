"""Finitely presented commutative monoids.

An exponent is a tuple of nonnegative Python ints, one entry per generator,
i.e. an element of the free commutative monoid ``F = N^n``.  A presentation
is a generator list plus unoriented relation pairs ``(a, b)``; it stands for
``M = F / R`` where ``R`` is the congruence generated by the pairs.

    >>> P = Presentation(("a", "b"), [((2, 0), (0, 2))])
    >>> P.format(P.exponent("2a+b"))
    '2a+b'
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DimensionError, InvalidMapError, ValidationError
from .jsonio import decode_int, encode_int

Exponent = tuple  # tuple[int, ...]


# -- exponent arithmetic ----------------------------------------------------

def zero(n: int) -> Exponent:
    return (0,) * n


def unit(n: int, i: int) -> Exponent:
    return tuple(1 if j == i else 0 for j in range(n))


def add(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Exponent, b: Exponent) -> Exponent:
    """``a - b``; the caller guarantees ``b`` divides ``a``."""
    return tuple(x - y for x, y in zip(a, b))


def scale(k: int, a: Exponent) -> Exponent:
    return tuple(k * x for x in a)


def join(a: Exponent, b: Exponent) -> Exponent:
    """Coordinatewise maximum (least common multiple of monomials)."""
    return tuple(max(x, y) for x, y in zip(a, b))


def meet(a: Exponent, b: Exponent) -> Exponent:
    """Coordinatewise minimum (greatest common divisor of monomials)."""
    return tuple(min(x, y) for x, y in zip(a, b))


def divides(a: Exponent, b: Exponent) -> bool:
    """True iff ``b`` lies in the ideal ``a + F``."""
    return all(x <= y for x, y in zip(a, b))


def degree(a: Exponent) -> int:
    return sum(a)


def support(a: Exponent) -> frozenset:
    return frozenset(i for i, x in enumerate(a) if x)


def _check_exponent(a, n: int) -> Exponent:
    a = tuple(a)
    if len(a) != n:
        raise DimensionError(f"exponent {list(a)} has length {len(a)}, expected {n}")
    for x in a:
        if isinstance(x, bool) or not isinstance(x, int):
            raise ValidationError(f"exponent entries must be integers, got {x!r}")
        if x < 0:
            raise ValidationError(f"exponent entries must be nonnegative, got {x}")
    return a


def check_same_length(a: Exponent, b: Exponent) -> None:
    if len(a) != len(b):
        raise DimensionError(f"exponents of lengths {len(a)} and {len(b)} do not match")


# -- monomial orders --------------------------------------------------------

_KINDS = ("lex", "grlex", "weighted")


@dataclass(frozen=True)
class MonomialOrder:
    """A monoidal well-order on ``N^n``.

    ``permutation`` lists generator indices from most to least significant.
    ``weights`` (weighted kind only) is indexed by generator, not by rank.
    ``eliminate`` is a block of generators compared lexicographically before
    anything else; it turns any order into an elimination order for that block.
    Every order is realised by a sort key whose components are nonnegative
    linear forms, so comparisons are total and translation invariant.
    """

    kind: str
    permutation: tuple
    weights: tuple | None = None
    eliminate: tuple = ()

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValidationError(f"unknown order kind {self.kind!r}")
        n = len(self.permutation)
        if sorted(self.permutation) != list(range(n)):
            raise ValidationError(f"{self.permutation} is not a permutation")
        if self.kind == "weighted":
            if self.weights is None or len(self.weights) != n:
                raise ValidationError("weighted order needs one weight per generator")
            if any(isinstance(w, bool) or not isinstance(w, int) or w <= 0 for w in self.weights):
                raise ValidationError("weights must be positive integers")
        elif self.weights is not None:
            raise ValidationError(f"{self.kind} order takes no weights")
        if len(set(self.eliminate)) != len(self.eliminate) or any(
            not 0 <= i < n for i in self.eliminate
        ):
            raise ValidationError(f"bad elimination block {self.eliminate}")

    @property
    def rank(self) -> int:
        return len(self.permutation)

    @classmethod
    def lex(cls, n: int) -> "MonomialOrder":
        return cls("lex", tuple(range(n)))

    @classmethod
    def grlex(cls, n: int) -> "MonomialOrder":
        return cls("grlex", tuple(range(n)))

    def key(self, a: Exponent) -> tuple:
        head = tuple(a[i] for i in self.eliminate)
        lexpart = tuple(a[i] for i in self.permutation)
        if self.kind == "lex":
            return head + lexpart
        if self.kind == "grlex":
            return head + (sum(a),) + lexpart
        return head + (sum(w * x for w, x in zip(self.weights, a)),) + lexpart

    def eliminating(self, top: Iterable[int]) -> "MonomialOrder":
        """An order on the same generators with every generator of ``top``
        above everything supported off ``top``.

        For plain lex orders the block is moved to the front of the
        permutation, so that elimination orders for different blocks coincide
        (and share Groebner bases) whenever the blocks are initial segments.
        """
        top = set(top)
        ordered = tuple(i for i in self.permutation if i in top)
        if self.kind == "lex" and not self.eliminate:
            rest = tuple(i for i in self.permutation if i not in top)
            return MonomialOrder("lex", ordered + rest)
        return MonomialOrder(self.kind, self.permutation, self.weights, ordered + self.eliminate)

    def adjoin_top(self) -> "MonomialOrder":
        """Extend to ``N^(n+1)`` with the new last generator above all others."""
        n = self.rank
        if self.kind == "lex" and not self.eliminate:
            return MonomialOrder("lex", (n,) + self.permutation)
        weights = None if self.weights is None else self.weights + (1,)
        return MonomialOrder(self.kind, self.permutation + (n,), weights, (n,) + self.eliminate)

    def restrict(self, keep: Sequence[int]) -> "MonomialOrder":
        """The induced order on the coordinates ``keep`` (re-indexed)."""
        pos = {old: new for new, old in enumerate(keep)}
        perm = tuple(pos[i] for i in self.permutation if i in pos)
        weights = None if self.weights is None else tuple(self.weights[i] for i in keep)
        elim = tuple(pos[i] for i in self.eliminate if i in pos)
        return MonomialOrder(self.kind, perm, weights, elim)

    @classmethod
    def parse(cls, text: str | None, generators: Sequence[str]) -> "MonomialOrder":
        """Parse ``lex``, ``lex:y,x``, ``grlex:y,x`` or ``weighted:y=2,x=1``.

        Generators not mentioned follow the listed ones in declared order
        (with weight 1).
        """
        generators = tuple(generators)
        n = len(generators)
        if text is None or text.strip() == "":
            return cls.lex(n)
        kind, _, rest = text.strip().partition(":")
        kind = {"glex": "grlex", "deglex": "grlex", "wlex": "weighted"}.get(kind, kind)
        index = {g: i for i, g in enumerate(generators)}
        names, weights = [], {}
        for item in filter(None, (s.strip() for s in rest.split(","))):
            name, eq, w = item.partition("=")
            name = name.strip()
            if name not in index:
                raise ValidationError(f"order mentions unknown generator {name!r}")
            if name in names:
                raise ValidationError(f"order mentions {name!r} twice")
            names.append(name)
            if eq:
                if kind != "weighted":
                    raise ValidationError(f"{kind} order takes no weights")
                try:
                    weights[name] = int(w)
                except ValueError:
                    raise ValidationError(f"bad weight {w!r}") from None
        perm = tuple(index[g] for g in names) + tuple(
            i for i, g in enumerate(generators) if g not in names
        )
        if kind == "weighted":
            return cls(kind, perm, tuple(weights.get(g, 1) for g in generators))
        return cls(kind, perm)

    def describe(self, generators: Sequence[str]) -> dict:
        out = {"kind": self.kind, "order": [generators[i] for i in self.permutation]}
        if self.weights is not None:
            out["weights"] = list(self.weights)
        if self.eliminate:
            out["eliminate"] = [generators[i] for i in self.eliminate]
        return out

    @classmethod
    def from_description(cls, desc: dict, generators: Sequence[str]) -> "MonomialOrder":
        index = {g: i for i, g in enumerate(generators)}
        try:
            perm = tuple(index[g] for g in desc["order"])
            elim = tuple(index[g] for g in desc.get("eliminate", ()))
        except KeyError as exc:
            raise ValidationError(f"order descriptor mentions unknown generator {exc}") from None
        weights = desc.get("weights")
        return cls(desc["kind"], perm, None if weights is None else tuple(weights), elim)


def compare(order: MonomialOrder, a: Exponent, b: Exponent) -> int:
    """-1, 0 or 1 as ``a`` is below, equal to or above ``b``."""
    check_same_length(a, b)
    if len(a) != order.rank:
        raise DimensionError(f"order on {order.rank} generators applied to length {len(a)}")
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


# -- presentations ----------------------------------------------------------

_TERM = re.compile(r"^\s*(\d*)\s*\*?\s*([^\s\d+*][^\s+*]*)\s*$")


@dataclass(frozen=True)
class Presentation:
    generators: tuple
    relations: tuple = ()
    _cache: dict = field(default_factory=dict, init=False, compare=False, repr=False, hash=False)
    _lock: object = field(
        default_factory=threading.Lock, init=False, compare=False, repr=False, hash=False
    )

    def __post_init__(self):
        gens = tuple(self.generators)
        for g in gens:
            if not isinstance(g, str) or not g.strip():
                raise ValidationError(f"generator names must be nonempty strings, got {g!r}")
        if len(set(gens)) != len(gens):
            raise ValidationError(f"duplicate generator names in {list(gens)}")
        n = len(gens)
        rels = []
        for rel in self.relations:
            try:
                lhs, rhs = rel
            except (TypeError, ValueError):
                raise ValidationError(f"relation {rel!r} is not a pair") from None
            rels.append((_check_exponent(lhs, n), _check_exponent(rhs, n)))
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relations", tuple(rels))

    @property
    def rank(self) -> int:
        return len(self.generators)

    @classmethod
    def free(cls, names: Iterable[str]) -> "Presentation":
        return cls(tuple(names), ())

    def index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise ValidationError(f"unknown generator {name!r}") from None

    def zero(self) -> Exponent:
        return zero(self.rank)

    def check(self, a) -> Exponent:
        return _check_exponent(a, self.rank)

    def exponent(self, text: str) -> Exponent:
        """Parse the human syntax ``"2u+3v1"`` (``"0"`` is the identity)."""
        out = [0] * self.rank
        text = text.strip()
        if text in ("", "0"):
            return tuple(out)
        for term in text.split("+"):
            m = _TERM.match(term)
            if not m:
                raise ValidationError(f"cannot parse term {term!r} of {text!r}")
            coeff, name = m.groups()
            out[self.index(name)] += int(coeff) if coeff else 1
        return tuple(out)

    def format(self, a: Exponent) -> str:
        terms = [
            (name if k == 1 else f"{k}{name}") for name, k in zip(self.generators, a) if k
        ]
        return "+".join(terms) if terms else "0"

    def format_relation(self, rel) -> str:
        return f"{self.format(rel[0])} = {self.format(rel[1])}"

    def with_relations(self, relations) -> "Presentation":
        return Presentation(self.generators, tuple(relations))

    def to_json(self) -> dict:
        return {
            "generators": list(self.generators),
            "relations": [
                [[encode_int(x) for x in lhs], [encode_int(x) for x in rhs]]
                for lhs, rhs in self.relations
            ],
        }

    @classmethod
    def from_json(cls, data) -> "Presentation":
        if not isinstance(data, dict) or "generators" not in data:
            raise ValidationError("presentation must be an object with a 'generators' list")
        gens = data["generators"]
        if not isinstance(gens, list):
            raise ValidationError("'generators' must be a list")
        rels = data.get("relations", [])
        if not isinstance(rels, list):
            raise ValidationError("'relations' must be a list")
        parsed = []
        for rel in rels:
            if not isinstance(rel, list) or len(rel) != 2:
                raise ValidationError(f"relation {rel!r} is not a pair of exponents")
            parsed.append(tuple(_decode_exponent(e) for e in rel))
        return cls(tuple(gens), tuple(parsed))

    def __str__(self):
        rels = ", ".join(self.format_relation(r) for r in self.relations)
        return f"<{', '.join(self.generators)} | {rels}>"


def _decode_exponent(e) -> Exponent:
    if isinstance(e, str):
        raise ValidationError(f"exponent must be an array, got {e!r}")
    if not isinstance(e, list):
        raise ValidationError(f"exponent must be an array, got {e!r}")
    return tuple(decode_int(x) for x in e)


# -- monoid maps ------------------------------------------------------------

@dataclass(frozen=True)
class MonoidMap:
    """A homomorphism ``source -> target`` given by generator images."""

    source: Presentation
    target: Presentation
    images: tuple

    def __post_init__(self):
        imgs = tuple(self.images)
        if len(imgs) != self.source.rank:
            raise DimensionError(
                f"{len(imgs)} images given for {self.source.rank} source generators"
            )
        object.__setattr__(self, "images", tuple(self.target.check(img) for img in imgs))

    def __call__(self, a: Exponent) -> Exponent:
        a = self.source.check(a)
        out = [0] * self.target.rank
        for k, img in zip(a, self.images):
            if k:
                for j, x in enumerate(img):
                    out[j] += k * x
        return tuple(out)

    @classmethod
    def identity(cls, pres: Presentation) -> "MonoidMap":
        return cls(pres, pres, tuple(unit(pres.rank, i) for i in range(pres.rank)))

    def to_json(self) -> list:
        return [[encode_int(x) for x in img] for img in self.images]


def compose(f: MonoidMap, g: MonoidMap) -> MonoidMap:
    """``g`` after ``f``."""
    if f.target.generators != g.source.generators:
        raise DimensionError("composite of maps with mismatched middle presentation")
    return MonoidMap(f.source, g.target, tuple(g(img) for img in f.images))


def validate_map(f: MonoidMap, order: MonomialOrder | None = None):
    """Check that ``f`` respects the source relations.

    Returns ``(True, None)`` or ``(False, violating_relation)``.
    """
    from .rewriting import groebner, normal_form

    basis = groebner(f.target, order)
    for lhs, rhs in f.source.relations:
        if normal_form(basis, f(lhs)) != normal_form(basis, f(rhs)):
            return False, (lhs, rhs)
    return True, None


def _fresh_names(q_names, r_names):
    clash = set(q_names) & set(r_names)
    if not clash:
        return list(q_names), list(r_names)
    taken = set()

    def rename(name, tag):
        cand = f"{name}{tag}"
        while cand in taken or cand in q_names or cand in r_names:
            cand += "'"
        taken.add(cand)
        return cand

    return [rename(n, 1) for n in q_names], [rename(n, 2) for n in r_names]


def pushout(f: MonoidMap, g: MonoidMap, check: bool = True) -> Presentation:
    """Presentation of the amalgamated sum ``Q (+)_P R`` of ``f: P -> Q`` and
    ``g: P -> R``.

    Generators are those of ``Q`` followed by those of ``R`` (suffixed ``1`` /
    ``2`` when the names collide); relations are those of ``Q``, those of
    ``R``, and ``f(p) = g(p)`` for each generator ``p`` of ``P``.
    """
    if f.source.generators != g.source.generators or f.source.relations != g.source.relations:
        raise ValidationError("pushout needs two maps out of the same presentation")
    if check:
        for name, m in (("f", f), ("g", g)):
            ok, witness = validate_map(m)
            if not ok:
                raise InvalidMapError(
                    f"map {name} does not respect relation "
                    f"{m.source.format_relation(witness)}",
                    witness,
                )
    Q, R = f.target, g.target
    q_names, r_names = _fresh_names(Q.generators, R.generators)
    nq, nr = Q.rank, R.rank

    def left(a):
        return tuple(a) + (0,) * nr

    def right(b):
        return (0,) * nq + tuple(b)

    rels = [(left(a), left(b)) for a, b in Q.relations]
    rels += [(right(a), right(b)) for a, b in R.relations]
    rels += [(left(fa), right(ga)) for fa, ga in zip(f.images, g.images)]
    return Presentation(tuple(q_names + r_names), tuple(rels))
