"""Monoidal rewriting and Groebner bases.

A rule ``head -> body`` is an oriented relation with ``head`` above ``body``
in a monomial order; it rewrites ``a`` to ``a - head + body`` whenever
``head`` divides ``a``.  A Groebner basis is a finite rule set whose heads
generate the initial ideal of the congruence, which makes the rewriting
confluent and the irreducible exponents a system of unique representatives.
"""

from __future__ import annotations

import bisect
import itertools
from collections import deque
from dataclasses import dataclass, field
from math import comb

from .errors import OracleTooLargeError
from .jsonio import encode_vector
from .presentation import (
    Exponent,
    MonomialOrder,
    Presentation,
    add,
    check_same_length,
    degree,
    divides,
    join,
    meet,
    sub,
)

DEFAULT_ORACLE_CELLS = 10**6


@dataclass(frozen=True)
class GroebnerBasis:
    order: MonomialOrder
    rules: tuple  # of (head, body)
    reduced: bool = False
    _by_head: tuple = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        rules = tuple((tuple(h), tuple(b)) for h, b in self.rules)
        object.__setattr__(self, "rules", rules)
        key = self.order.key
        # largest head first: the reduction strategy picks the top applicable rule
        object.__setattr__(
            self, "_by_head", tuple(sorted(rules, key=lambda r: key(r[0]), reverse=True))
        )

    @property
    def heads(self):
        return [h for h, _ in self.rules]

    def __len__(self):
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)

    def to_json(self, generators) -> dict:
        return {
            "order": self.order.describe(generators),
            "reduced": self.reduced,
            "rules": [{"head": encode_vector(h), "body": encode_vector(b)} for h, b in self.rules],
        }

    def restrict(self, keep) -> "GroebnerBasis":
        """Rules supported on the coordinates ``keep``, re-indexed to them."""
        keep = list(keep)
        drop = [i for i in range(self.order.rank) if i not in set(keep)]
        rules = [
            (tuple(h[i] for i in keep), tuple(b[i] for i in keep))
            for h, b in self.rules
            if not any(h[i] or b[i] for i in drop)
        ]
        return GroebnerBasis(self.order.restrict(keep), tuple(rules), self.reduced)


def _rewrite(rules_by_head, a, trace=None):
    a = tuple(a)
    while True:
        for head, body in rules_by_head:
            if divides(head, a):
                if trace is None:
                    # repeated application of the same rule, done in one step
                    q = min(x // h for x, h in zip(a, head) if h)
                    a = tuple(x + q * (b - h) for x, h, b in zip(a, head, body))
                else:
                    trace.append((head, body))
                    a = add(sub(a, head), body)
                break
        else:
            return a


def normal_form(basis: GroebnerBasis, a: Exponent, trace: list | None = None) -> Exponent:
    """Rewrite ``a`` until no head divides it.

    With a Groebner basis the result is the order-minimum of the congruence
    class of ``a``.  When ``trace`` is a list, every applied rule is appended
    to it and rules are applied one at a time, always using the largest
    applicable head.
    """
    if len(a) != basis.order.rank:
        check_same_length(a, (0,) * basis.order.rank)
    return _rewrite(basis._by_head, a, trace)


def congruent(basis: GroebnerBasis, a: Exponent, b: Exponent) -> bool:
    check_same_length(a, b)
    return normal_form(basis, a) == normal_form(basis, b)


def spair(r1, r2):
    """The term elimination of two rules: both sides of ``lcm(heads)``."""
    (a1, b1), (a2, b2) = r1, r2
    top = join(a1, a2)
    return add(b1, sub(top, a1)), add(b2, sub(top, a2))


class _RuleSet:
    """Mutable rule list kept sorted by head, largest first."""

    def __init__(self, order):
        self.order = order
        self.keys = []  # negated sort keys, ascending
        self.rules = []

    def add(self, rule):
        k = tuple(-x for x in self.order.key(rule[0]))
        i = bisect.bisect_left(self.keys, k)
        self.keys.insert(i, k)
        self.rules.insert(i, rule)

    def remove(self, rule):
        i = self.rules.index(rule)
        del self.keys[i]
        del self.rules[i]

    def reduce(self, a):
        return _rewrite(self.rules, a)

    def reducible(self, a):
        return any(divides(h, a) for h, _ in self.rules)


def buchberger(pres: Presentation, order: MonomialOrder | None = None) -> GroebnerBasis:
    """Complete the relations of ``pres`` to a Groebner basis.

    Critical pairs are processed first-in first-out, both sides reduced
    before a new rule is oriented and inserted.  Rules whose head becomes
    divisible by a newer head are retired and their relation is queued again,
    so the congruence never changes.  Pairs of heads with disjoint support
    are skipped: each side rewrites in one step to ``b1 + b2``.
    """
    n = pres.rank
    order = order or MonomialOrder.lex(n)
    key = order.key
    live = _RuleSet(order)
    ids = {}  # rule -> insertion id, for live rules
    by_id = {}
    pending = deque(pres.relations)
    pairs = deque()
    counter = itertools.count()

    def insert(a, b):
        a, b = live.reduce(a), live.reduce(b)
        if a == b:
            return
        head, body = (a, b) if key(a) > key(b) else (b, a)
        # the initial ideal grows strictly: the new head is irreducible
        assert not live.reducible(head)
        for old in [r for r in live.rules if divides(head, r[0])]:
            live.remove(old)
            del by_id[ids.pop(old)]
            pending.append(old)
        rid = next(counter)
        for other, oid in ids.items():
            pairs.append((oid, rid))
        rule = (head, body)
        live.add(rule)
        ids[rule] = rid
        by_id[rid] = rule

    while True:
        while pending or pairs:
            if pending:
                insert(*pending.popleft())
                continue
            i, j = pairs.popleft()
            if i not in by_id or j not in by_id:
                continue
            r1, r2 = by_id[i], by_id[j]
            if not any(meet(r1[0], r2[0])):
                continue
            insert(*spair(r1, r2))
        # final sweep against the surviving rules only
        rules = list(live.rules)
        for r1, r2 in itertools.combinations(rules, 2):
            if any(meet(r1[0], r2[0])):
                s, t = spair(r1, r2)
                if live.reduce(s) != live.reduce(t):
                    pending.append((s, t))
        if not pending:
            break
    rules = sorted(live.rules, key=lambda r: key(r[0]))
    return GroebnerBasis(order, tuple(rules), reduced=False)


def reduce_basis(basis: GroebnerBasis) -> GroebnerBasis:
    """The unique reduced Groebner basis of the same congruence and order.

    Heads become the minimal generators of the initial ideal and bodies
    their normal forms; rules are listed by increasing head.
    """
    heads = sorted({h for h, _ in basis.rules}, key=basis.order.key)
    minimal = []
    for h in heads:
        if not any(divides(m, h) for m in minimal):
            minimal.append(h)
    rules = tuple((h, normal_form(basis, h)) for h in minimal)
    return GroebnerBasis(basis.order, rules, reduced=True)


def is_reduced(basis: GroebnerBasis) -> bool:
    heads = [h for h, _ in basis.rules]
    if len(set(heads)) != len(heads):
        return False
    for i, (h, b) in enumerate(basis.rules):
        for j, (h2, b2) in enumerate(basis.rules):
            if i != j and (divides(h, h2) or divides(h, b2)):
                return False
        if divides(h, b):
            return False
    return True


def is_groebner(basis: GroebnerBasis) -> bool:
    """Rules are oriented and every critical pair rewrites to a common term.

    This decides Groebner-ness with respect to the congruence the rules
    themselves generate.
    """
    key = basis.order.key
    if any(key(h) <= key(b) for h, b in basis.rules):
        return False
    for r1, r2 in itertools.combinations(basis.rules, 2):
        s, t = spair(r1, r2)
        if normal_form(basis, s) != normal_form(basis, t):
            return False
    return True


def groebner(pres: Presentation, order: MonomialOrder | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of ``pres``, memoised on the presentation."""
    order = order or MonomialOrder.lex(pres.rank)
    cached = pres._cache.get(order)
    if cached is not None:
        return cached
    basis = reduce_basis(buchberger(pres, order))
    with pres._lock:
        pres._cache[order] = basis
    return basis


def cached_orders(pres: Presentation):
    with pres._lock:
        return list(pres._cache)


# -- brute-force oracle -------------------------------------------------------

def exponents_up_to(n: int, bound: int):
    """All exponents in ``N^n`` of total degree at most ``bound``."""
    if n == 0:
        yield ()
        return
    for first in range(bound + 1):
        for rest in exponents_up_to(n - 1, bound - first):
            yield (first,) + rest


def box_size(n: int, bound: int) -> int:
    return comb(n + bound, n)


@dataclass
class CongruenceClosure:
    """Congruence classes of all exponents of degree at most ``bound``.

    Classes are the connected components of single rewrite steps that stay
    inside the box.  Pairs reported equal are always congruent; pairs whose
    every connecting chain leaves the box are reported distinct, so callers
    choose the bound with some slack.
    """

    bound: int
    points: list
    _index: dict
    _parent: list

    def _find(self, i):
        parent = self._parent
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def same(self, a, b) -> bool:
        return self._find(self._index[tuple(a)]) == self._find(self._index[tuple(b)])

    def class_of(self, a) -> frozenset:
        root = self._find(self._index[tuple(a)])
        return frozenset(p for i, p in enumerate(self.points) if self._find(i) == root)

    def classes(self) -> list:
        groups = {}
        for i, p in enumerate(self.points):
            groups.setdefault(self._find(i), []).append(p)
        return list(groups.values())

    def __contains__(self, a):
        return tuple(a) in self._index


def oracle_closure(
    pres: Presentation, bound: int, max_cells: int = DEFAULT_ORACLE_CELLS
) -> CongruenceClosure:
    n = pres.rank
    size = box_size(n, bound)
    if size > max_cells:
        raise OracleTooLargeError(
            f"oracle box of degree {bound} over {n} generators has {size} cells "
            f"(cap {max_cells})"
        )
    points = list(exponents_up_to(n, bound))
    index = {p: i for i, p in enumerate(points)}
    parent = list(range(len(points)))
    closure = CongruenceClosure(bound, points, index, parent)
    find = closure._find
    for a, b in pres.relations:
        if a == b:
            continue
        room = bound - max(degree(a), degree(b))
        if room < 0:
            continue
        for c in exponents_up_to(n, room):
            i, j = find(index[add(a, c)]), find(index[add(b, c)])
            if i != j:
                parent[max(i, j)] = min(i, j)
    return closure
