"""Filters, U-filters, quotients, and the radical.

Element subsets use dense bitmask semantics keyed by element index; every
listing is sorted by bitmask value so output order is reproducible.
Enumerations run two ways (principal-seed closure and, as an oracle, the
2^n subset scan) so tests can pin their agreement.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .core import FiniteMTLAlgebra, validate
from .quantifier import UMTLAlgebra, UniversalQuantifier, validate_quantifier


def mask_of(members) -> int:
    return sum(1 << i for i in set(members))


def members_of(mask: int, n: int) -> frozenset[int]:
    return frozenset(i for i in range(n) if mask >> i & 1)


class QuotientError(ValueError):
    def __init__(self, message: str, witness: tuple[int, ...] | None = None):
        self.witness = witness
        super().__init__(message)


@dataclass(frozen=True)
class FilterSet:
    """An element subset of an algebra, with kind predicates.

    `forall` is carried when the subset is inspected against a quantifier;
    the U-filter predicates require it.
    """

    algebra: FiniteMTLAlgebra
    members: frozenset[int]
    forall: tuple[int, ...] | None = None

    @property
    def mask(self) -> int:
        return mask_of(self.members)

    def sorted_members(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    def label(self) -> str:
        return "{" + ",".join(self.algebra.name_of(i) for i in sorted(self.members)) + "}"

    def is_filter(self) -> bool:
        return is_filter_by_implication(self.algebra, self.members)

    def is_proper(self) -> bool:
        return len(self.members) < self.algebra.size

    def is_prime(self) -> bool:
        return is_prime_filter(self.algebra, self.members)

    def is_ufilter(self) -> bool:
        if self.forall is None:
            raise ValueError("no quantifier attached to this FilterSet")
        return is_ufilter(self.algebra, self.forall, self.members)

    def is_minimal_prime(self) -> bool:
        return self.members in {
            f.members for f in minimal_primes(self.algebra).by_inclusion
        }

    def is_maximal(self) -> bool:
        return self.members in {f.members for f in maximal_filters(self.algebra)}

    def is_maximal_ufilter(self) -> bool:
        if self.forall is None:
            raise ValueError("no quantifier attached to this FilterSet")
        pair = _pair_key(self.algebra, self.forall)
        return self.members in {f.members for f in _maximal_ufilters_cached(pair)}

    def with_forall(self, forall) -> FilterSet:
        return FilterSet(self.algebra, self.members, tuple(forall))


def is_filter_by_implication(alg: FiniteMTLAlgebra, members) -> bool:
    """top in F and closure under modus ponens (x, x->y in F imply y in F)."""
    s = set(members)
    if alg.top not in s:
        return False
    return all(
        y in s
        for x in s
        for y in alg.elements
        if alg.arrow[x][y] in s
    )


def is_filter_by_closure(alg: FiniteMTLAlgebra, members) -> bool:
    """top in F, upward closed, and closed under the monoid operation."""
    s = set(members)
    if alg.top not in s:
        return False
    if any(alg.leq[x][y] and y not in s for x in s for y in alg.elements):
        return False
    return all(alg.odot[x][y] in s for x in s for y in s)


def is_prime_filter(alg: FiniteMTLAlgebra, members) -> bool:
    s = set(members)
    if not is_filter_by_implication(alg, s) or len(s) == alg.size:
        return False
    return all(
        x in s or y in s
        for x in alg.elements
        for y in alg.elements
        if alg.join[x][y] in s
    )


def is_ufilter(alg: FiniteMTLAlgebra, forall, members) -> bool:
    s = set(members)
    return is_filter_by_implication(alg, s) and all(forall[x] in s for x in s)


def upward_closure(alg: FiniteMTLAlgebra, members) -> set[int]:
    return {y for y in alg.elements if any(alg.leq[x][y] for x in members)}


def generated_filter(alg: FiniteMTLAlgebra, seed) -> FilterSet:
    """Smallest filter containing the nonempty seed, by closure iteration."""
    s = set(seed)
    if not s:
        raise ValueError("seed must be nonempty")
    s.add(alg.top)
    while True:
        nxt = set(s)
        nxt.update(alg.odot[x][y] for x in s for y in s)
        nxt = upward_closure(alg, nxt)
        if nxt == s:
            return FilterSet(alg, frozenset(s))
        s = nxt


def generated_filter_formula(alg: FiniteMTLAlgebra, seed) -> frozenset[int]:
    """The explicit description: everything above some product of seeds."""
    s = set(seed)
    if not s:
        raise ValueError("seed must be nonempty")
    products = set(s)
    while True:
        more = {alg.odot[x][y] for x in products for y in products} - products
        if not more:
            break
        products |= more
    return frozenset(upward_closure(alg, products))


def generated_ufilter(q: UMTLAlgebra, seed) -> FilterSet:
    """Smallest quantifier-closed filter containing the seed."""
    alg, f = q.algebra, q.forall
    s = set(seed)
    if not s:
        raise ValueError("seed must be nonempty")
    s.add(alg.top)
    while True:
        nxt = set(s)
        nxt.update(f[x] for x in s)
        nxt.update([alg.odot[x][y] for x in nxt for y in nxt])
        nxt = upward_closure(alg, nxt)
        if nxt == s:
            return FilterSet(alg, frozenset(s), f)
        s = nxt


def generated_ufilter_formula(q: UMTLAlgebra, seed) -> frozenset[int]:
    """Everything above some product of quantifier images of seeds."""
    alg, f = q.algebra, q.forall
    s = {f[x] for x in seed}
    if not s:
        raise ValueError("seed must be nonempty")
    products = set(s)
    while True:
        more = {alg.odot[x][y] for x in products for y in products} - products
        if not more:
            break
        products |= more
    return frozenset(upward_closure(alg, products))


@functools.lru_cache(maxsize=None)
def enumerate_filters(alg: FiniteMTLAlgebra) -> tuple[FilterSet, ...]:
    """All filters (the improper one included), sorted by bitmask.

    Built by closing the principal filters under pairwise join; every
    filter is the join of the principals of its members, so this reaches
    them all without a 2^n scan.
    """
    seeds = {generated_filter(alg, {x}).members for x in alg.elements}
    found = set(seeds)
    frontier = list(seeds)
    while frontier:
        fresh = []
        for a in frontier:
            for b in found:
                joined = generated_filter(alg, a | b).members
                if joined not in found and joined not in fresh:
                    fresh.append(joined)
        found.update(fresh)
        frontier = fresh
    return tuple(
        FilterSet(alg, m) for m in sorted(found, key=mask_of)
    )


def enumerate_filters_subset_oracle(alg: FiniteMTLAlgebra) -> tuple[FilterSet, ...]:
    """2^n oracle for enumerate_filters."""
    out = []
    for mask in range(1 << alg.size):
        members = members_of(mask, alg.size)
        if is_filter_by_implication(alg, members):
            out.append(FilterSet(alg, members))
    return tuple(out)


def _pair_key(alg: FiniteMTLAlgebra, forall) -> tuple:
    return (alg, tuple(forall))


@functools.lru_cache(maxsize=None)
def _ufilters_cached(pair: tuple) -> tuple[FilterSet, ...]:
    alg, forall = pair
    q = UMTLAlgebra(alg, UniversalQuantifier(alg, forall, frozenset()))
    seeds = {generated_ufilter(q, {x}).members for x in alg.elements}
    found = set(seeds)
    frontier = list(seeds)
    while frontier:
        fresh = []
        for a in frontier:
            for b in found:
                joined = generated_ufilter(q, a | b).members
                if joined not in found and joined not in fresh:
                    fresh.append(joined)
        found.update(fresh)
        frontier = fresh
    return tuple(
        FilterSet(alg, m, forall) for m in sorted(found, key=mask_of)
    )


def enumerate_ufilters(q: UMTLAlgebra) -> tuple[FilterSet, ...]:
    """All quantifier-closed filters, improper one included, by bitmask."""
    return _ufilters_cached(_pair_key(q.algebra, q.forall))


def enumerate_ufilters_subset_oracle(q: UMTLAlgebra) -> tuple[FilterSet, ...]:
    alg, f = q.algebra, q.forall
    out = []
    for mask in range(1 << alg.size):
        members = members_of(mask, alg.size)
        if is_ufilter(alg, f, members):
            out.append(FilterSet(alg, members, f))
    return tuple(out)


def a_perp(alg: FiniteMTLAlgebra, a: int) -> frozenset[int]:
    """The co-annihilator {x : a join x = top}."""
    return frozenset(x for x in alg.elements if alg.join[a][x] == alg.top)


@dataclass(frozen=True)
class MinimalPrimesResult:
    by_inclusion: tuple[FilterSet, ...]
    by_perp: tuple[FilterSet, ...]

    @property
    def agree(self) -> bool:
        return [f.members for f in self.by_inclusion] == [
            f.members for f in self.by_perp
        ]


@functools.lru_cache(maxsize=None)
def prime_filters(alg: FiniteMTLAlgebra) -> tuple[FilterSet, ...]:
    return tuple(
        f for f in enumerate_filters(alg) if is_prime_filter(alg, f.members)
    )


@functools.lru_cache(maxsize=None)
def minimal_primes(alg: FiniteMTLAlgebra) -> MinimalPrimesResult:
    """Minimal primes two ways: inclusion-minimality vs the co-annihilator
    union characterization (their agreement is a theorem audit)."""
    primes = prime_filters(alg)
    by_inclusion = tuple(
        p
        for p in primes
        if not any(o.members < p.members for o in primes)
    )
    by_perp = []
    for f in enumerate_filters(alg):
        if not f.is_proper():
            continue
        union: set[int] = set()
        for a in alg.elements:
            if a not in f.members:
                union |= a_perp(alg, a)
        if union == set(f.members):
            by_perp.append(f)
    return MinimalPrimesResult(by_inclusion, tuple(by_perp))


@functools.lru_cache(maxsize=None)
def maximal_filters(alg: FiniteMTLAlgebra) -> tuple[FilterSet, ...]:
    proper = [f for f in enumerate_filters(alg) if f.is_proper()]
    return tuple(
        f
        for f in proper
        if not any(f.members < o.members for o in proper)
    )


@functools.lru_cache(maxsize=None)
def _maximal_ufilters_cached(pair: tuple) -> tuple[FilterSet, ...]:
    proper = [f for f in _ufilters_cached(pair) if f.is_proper()]
    return tuple(
        f
        for f in proper
        if not any(f.members < o.members for o in proper)
    )


def maximal_ufilters(q: UMTLAlgebra) -> tuple[FilterSet, ...]:
    return _maximal_ufilters_cached(_pair_key(q.algebra, q.forall))


@dataclass(frozen=True)
class MaximalityVerdict:
    """Maximality decided by definition and by the power-negation test."""

    by_definition: bool
    by_criterion: bool
    witness: int | None = None

    @property
    def agree(self) -> bool:
        return self.by_definition == self.by_criterion


def is_maximal_ufilter(q: UMTLAlgebra, members) -> MaximalityVerdict:
    alg, f = q.algebra, q.forall
    s = frozenset(members)
    if not is_ufilter(alg, f, s) or len(s) == alg.size:
        raise ValueError("argument must be a proper U-filter")
    by_def = s in {m.members for m in maximal_ufilters(q)}
    witness = None
    for a in alg.elements:
        if a in s:
            continue
        fa = f[a]
        if not any(
            alg.neg(alg.power(fa, k)) in s for k in range(1, alg.size + 1)
        ):
            witness = a
            break
    return MaximalityVerdict(by_def, witness is None, witness)


@dataclass(frozen=True)
class QuotientResult:
    quotient: UMTLAlgebra
    class_map: tuple[int, ...]
    classes: tuple[frozenset[int], ...]


def congruence_classes(q: UMTLAlgebra, members) -> tuple[frozenset[int], ...]:
    """Blocks of x ~ y iff x->y and y->x both lie in the filter, ordered by
    least element."""
    alg = q.algebra
    s = set(members)
    blocks: list[set[int]] = []
    for x in alg.elements:
        for b in blocks:
            rep = min(b)
            if alg.arrow[x][rep] in s and alg.arrow[rep][x] in s:
                b.add(x)
                break
        else:
            blocks.append({x})
    blocks.sort(key=min)
    return tuple(frozenset(b) for b in blocks)


def quotient(q: UMTLAlgebra, members) -> QuotientResult:
    """Quotient by a proper U-filter, with well-definedness verified on
    every representative pair and the result re-validated."""
    alg, f = q.algebra, q.forall
    s = frozenset(members)
    if not is_filter_by_implication(alg, s):
        raise QuotientError("not a filter")
    if len(s) == alg.size:
        raise QuotientError("improper filter")
    bad = next((x for x in s if f[x] not in s), None)
    if bad is not None:
        raise QuotientError(
            f"filter not closed under the quantifier: {alg.name_of(bad)} is a "
            f"member but forall maps it to {alg.name_of(f[bad])}",
            witness=(bad, f[bad]),
        )
    classes = congruence_classes(q, s)
    class_map = [0] * alg.size
    for idx, block in enumerate(classes):
        for x in block:
            class_map[x] = idx
    k = len(classes)

    def collapse(op_name: str, value_of) -> list[list[int]]:
        table = [[0] * k for _ in range(k)]
        for i, bi in enumerate(classes):
            for j, bj in enumerate(classes):
                vals = {class_map[value_of(x, y)] for x in bi for y in bj}
                if len(vals) != 1:
                    raise QuotientError(
                        f"{op_name} not well defined on classes",
                        witness=(min(bi), min(bj)),
                    )
                table[i][j] = vals.pop()
        return table

    odot_q = collapse("odot", lambda x, y: alg.odot[x][y])
    arrow_q = collapse("arrow", lambda x, y: alg.arrow[x][y])
    forall_vals = []
    for block in classes:
        vals = {class_map[f[x]] for x in block}
        if len(vals) != 1:
            raise QuotientError(
                "forall not well defined on classes", witness=(min(block),)
            )
        forall_vals.append(vals.pop())
    names = tuple("[" + alg.name_of(min(b)) + "]" for b in classes)
    alg_q = validate(k, odot_q, arrow_q, class_map[alg.top], names)
    quant_q = validate_quantifier(alg_q, tuple(forall_vals))
    filter_label = FilterSet(alg, s).label()
    return QuotientResult(
        quotient=UMTLAlgebra(alg_q, quant_q, name=q.label() + "/" + filter_label),
        class_map=tuple(class_map),
        classes=classes,
    )


@dataclass(frozen=True)
class RadicalResult:
    filterset: FilterSet
    empty_family: bool = False

    @property
    def is_trivial(self) -> bool:
        return self.filterset.members == frozenset({self.filterset.algebra.top})


def radical(q: UMTLAlgebra) -> RadicalResult:
    """Intersection of all maximal U-filters; the whole carrier (flagged)
    if the family were empty, which cannot happen on a finite algebra."""
    maxes = maximal_ufilters(q)
    if not maxes:
        return RadicalResult(
            FilterSet(q.algebra, frozenset(q.algebra.elements), q.forall), True
        )
    acc = set(q.algebra.elements)
    for m in maxes:
        acc &= m.members
    return RadicalResult(FilterSet(q.algebra, frozenset(acc), q.forall))


def _partitions(items: list[int]):
    """All set partitions, blocks ordered by least element (deterministic)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def enumerate_ucongruences(q: UMTLAlgebra) -> list[tuple[frozenset[int], ...]]:
    """All equivalence relations compatible with every operation and the
    quantifier, as block tuples ordered by least element."""
    alg, f = q.algebra, q.forall
    ops = (alg.odot, alg.arrow, alg.meet, alg.join)
    out = []
    for part in _partitions(list(alg.elements)):
        cls = {}
        for idx, block in enumerate(part):
            for x in block:
                cls[x] = idx
        ok = all(
            len({cls[f[x]] for x in block}) == 1 for block in part
        ) and all(
            len({cls[op[x][y]] for x in b1 for y in b2}) == 1
            for op in ops
            for b1 in part
            for b2 in part
        )
        if ok:
            blocks = sorted((frozenset(b) for b in part), key=min)
            out.append(tuple(blocks))
    out.sort(key=lambda blocks: tuple(tuple(sorted(b)) for b in blocks))
    return out


def filter_of_congruence(q: UMTLAlgebra, blocks) -> frozenset[int]:
    """The block of top."""
    for b in blocks:
        if q.algebra.top in b:
            return frozenset(b)
    raise ValueError("no block contains top")


def congruence_of_filter(q: UMTLAlgebra, members) -> tuple[frozenset[int], ...]:
    return congruence_classes(q, members)
