"""Universal quantifiers on finite MTL-algebras.

A quantifier is a unary table satisfying U1-U3.  The U2 axiom is
parenthesization-sensitive; `u2_parse` selects between the reading used
throughout this package ("standard") and the right-associated alternative
("alt"), which collapses the left side to a constant and is kept only for
audit comparisons.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import FiniteMTLAlgebra, Violation, classify

U2_PARSES = ("standard", "alt")


class InvalidQuantifierError(ValueError):
    def __init__(self, violations: list[Violation]):
        self.violations = violations
        lines = ", ".join(f"{v.axiom}@{v.witness}" for v in violations[:6])
        super().__init__(f"not a universal quantifier: {lines}")


@dataclass(frozen=True)
class UniversalQuantifier:
    """A validated unary table together with its fixpoint set."""

    base: FiniteMTLAlgebra
    table: tuple[int, ...]
    fixpoints: frozenset[int]

    def apply(self, x: int) -> int:
        return self.table[x]

    def image(self) -> frozenset[int]:
        return frozenset(self.table)


@dataclass(frozen=True)
class UMTLAlgebra:
    """An algebra paired with a validated quantifier on it."""

    algebra: FiniteMTLAlgebra
    quantifier: UniversalQuantifier
    name: str = ""

    @property
    def forall(self) -> tuple[int, ...]:
        return self.quantifier.table

    def label(self) -> str:
        if self.name:
            return self.name
        t = ",".join(str(v) for v in self.forall)
        return f"size{self.algebra.size}[forall={t}]"


def quantifier_violations(
    alg: FiniteMTLAlgebra, table, u2_parse: str = "standard"
) -> list[Violation]:
    """All U1-U3 failures (least witnesses), plus derived-property failures.

    The derived checks (fixed bounds, idempotence, monotonicity) are
    consequences of U1-U3 and are scanned defensively; they can only fire
    on tables that already fail an axiom.
    """
    if u2_parse not in U2_PARSES:
        raise ValueError(f"unknown u2 parse: {u2_parse!r}")
    n, top = alg.size, alg.top
    out: list[Violation] = []
    if len(table) != n:
        return [Violation("forall-wrong-length", (len(table),))]
    bad = next((x for x in range(n) if not (0 <= table[x] < n)), None)
    if bad is not None:
        return [Violation("forall-entry-out-of-range", (bad,))]
    arrow = alg.arrow
    q = tuple(table)

    def first(axiom: str, gen) -> None:
        w = next(gen, None)
        if w is not None:
            out.append(Violation(axiom, w))

    first("U1", ((x,) for x in range(n) if not alg.leq[q[x]][x]))
    if u2_parse == "standard":
        first(
            "U2",
            (
                (x, y)
                for x in range(n)
                for y in range(n)
                if q[arrow[arrow[x][q[y]]][q[y]]] != arrow[arrow[q[x]][q[y]]][q[y]]
            ),
        )
    else:
        first(
            "U2",
            (
                (x, y)
                for x in range(n)
                for y in range(n)
                if q[arrow[x][arrow[q[y]][q[y]]]] != arrow[arrow[q[x]][q[y]]][q[y]]
            ),
        )
    first(
        "U3",
        (
            (x, y)
            for x in range(n)
            for y in range(n)
            if q[arrow[q[x]][y]] != arrow[q[x]][q[y]]
        ),
    )
    if not out:
        if q[0] != 0:
            out.append(Violation("derived-bottom-fixed", (0,)))
        if q[top] != top:
            out.append(Violation("derived-top-fixed", (top,)))
        first("derived-idempotent", ((x,) for x in range(n) if q[q[x]] != q[x]))
        first(
            "derived-monotone",
            (
                (x, y)
                for x in range(n)
                for y in range(n)
                if alg.leq[x][y] and not alg.leq[q[x]][q[y]]
            ),
        )
    return out


def validate_quantifier(
    alg: FiniteMTLAlgebra, table, u2_parse: str = "standard"
) -> UniversalQuantifier:
    violations = quantifier_violations(alg, table, u2_parse)
    if violations:
        raise InvalidQuantifierError(violations)
    q = tuple(table)
    fix = frozenset(x for x in range(alg.size) if q[x] == x)
    return UniversalQuantifier(base=alg, table=q, fixpoints=fix)


def make_umtl(
    alg: FiniteMTLAlgebra, table, u2_parse: str = "standard", name: str = ""
) -> UMTLAlgebra:
    return UMTLAlgebra(alg, validate_quantifier(alg, table, u2_parse), name)


def unchecked_pair(alg: FiniteMTLAlgebra, table, name: str = "") -> UMTLAlgebra:
    """Pair a table with an algebra without validating U1-U3.

    Only for audits that deliberately inspect invalid tables (e.g. delta
    forced onto a non-involutive chain).
    """
    q = tuple(table)
    fix = frozenset(x for x in range(alg.size) if q[x] == x)
    return UMTLAlgebra(alg, UniversalQuantifier(alg, q, fix), name)


def delta_table(alg: FiniteMTLAlgebra) -> tuple[int, ...]:
    """top -> top, everything else -> bottom.  Not a quantifier on every
    algebra; callers validate."""
    return tuple(alg.top if x == alg.top else alg.bottom for x in alg.elements)


def identity_table(alg: FiniteMTLAlgebra) -> tuple[int, ...]:
    return tuple(alg.elements)


def relativization_table(alg: FiniteMTLAlgebra, subset) -> tuple[int, ...]:
    """Map each x to the largest member of `subset` below x.

    Requires bottom and top in the subset and, for every x, a maximum among
    the subset elements below x; callers still validate U1-U3.
    """
    s = sorted(set(subset))
    if alg.bottom not in s or alg.top not in s:
        raise ValueError("subset must contain bottom and top")
    table = []
    for x in alg.elements:
        below = [v for v in s if alg.leq[v][x]]
        maxima = [v for v in below if all(alg.leq[w][v] for w in below)]
        if len(maxima) != 1:
            raise ValueError(
                f"no maximum fixpoint below element {alg.name_of(x)} (index {x})"
            )
        table.append(maxima[0])
    return tuple(table)


def _fixpoint_candidates(alg: FiniteMTLAlgebra) -> list[tuple[int, ...]]:
    """Candidate tables from fixpoint subsets containing {bottom, top}.

    Any valid quantifier is an interior operator (below identity,
    idempotent, monotone), hence equals x -> max{s in S : s <= x} for its
    fixpoint set S; iterating subsets is therefore exhaustive.
    """
    n = alg.size
    others = [x for x in alg.elements if x not in (alg.bottom, alg.top)]
    candidates = []
    for bits in range(1 << len(others)):
        subset = {alg.bottom, alg.top}
        subset.update(others[i] for i in range(len(others)) if bits >> i & 1)
        try:
            candidates.append(relativization_table(alg, subset))
        except ValueError:
            continue
    return candidates


def enumerate_quantifiers(
    alg: FiniteMTLAlgebra,
    u2_parse: str = "standard",
    method: str = "fixpoint",
    jobs: int = 1,
) -> list[UniversalQuantifier]:
    """All quantifiers on the algebra, sorted by table lexicographically.

    method="fixpoint" scans the 2^n fixpoint subsets; method="brute" scans
    all n^n unary maps and is intended as an oracle for small n.
    """
    if method == "fixpoint":
        candidates = _fixpoint_candidates(alg)
    elif method == "brute":
        candidates = list(itertools.product(range(alg.size), repeat=alg.size))
    else:
        raise ValueError(f"unknown enumeration method: {method!r}")
    if jobs > 1:
        from .jobs import chunked_filter

        valid = chunked_filter(
            _table_is_quantifier, (alg, u2_parse), candidates, jobs
        )
    else:
        valid = [t for t in candidates if not quantifier_violations(alg, t, u2_parse)]
    tables = sorted(set(valid))
    return [validate_quantifier(alg, t, u2_parse) for t in tables]


def _table_is_quantifier(alg, u2_parse, table) -> bool:
    return not quantifier_violations(alg, table, u2_parse)


@dataclass(frozen=True)
class PropertyCheck:
    item: int
    description: str
    passed: bool
    witness: tuple[int, ...] | None = None


def properties_suite(q: UMTLAlgebra) -> list[PropertyCheck]:
    """The fourteen structural properties every quantifier must satisfy.

    Failures are reported rather than raised: the suite doubles as a
    theorem audit.
    """
    alg = q.algebra
    f = q.forall
    n, top, bot = alg.size, alg.top, alg.bottom
    rng = range(n)
    arrow, odot, meet, join, leq = alg.arrow, alg.odot, alg.meet, alg.join, alg.leq
    image = sorted(set(f))
    fixed = sorted(x for x in rng if f[x] == x)

    def scan(item, desc, gen):
        w = next(gen, None)
        return PropertyCheck(item, desc, w is None, w)

    checks = [
        PropertyCheck(
            1, "forall bottom = bottom", f[bot] == bot, None if f[bot] == bot else (bot,)
        ),
        PropertyCheck(
            2, "forall top = top", f[top] == top, None if f[top] == top else (top,)
        ),
        scan(3, "idempotent", ((x,) for x in rng if f[f[x]] != f[x])),
        scan(
            4,
            "monotone",
            ((x, y) for x in rng for y in rng if leq[x][y] and not leq[f[x]][f[y]]),
        ),
        scan(
            5,
            "forall(x->y) <= forall x -> forall y (and negation case)",
            (
                (x, y)
                for x in rng
                for y in rng
                if not leq[f[arrow[x][y]]][arrow[f[x]][f[y]]]
                or (y == bot and not leq[f[arrow[x][bot]]][arrow[f[x]][bot]])
            ),
        ),
        scan(
            6,
            "forall x <= y iff forall x <= forall y",
            (
                (x, y)
                for x in rng
                for y in rng
                if bool(leq[f[x]][y]) != bool(leq[f[x]][f[y]])
            ),
        ),
        scan(
            7,
            "forall(forall x -> forall y) = forall x -> forall y",
            (
                (x, y)
                for x in rng
                for y in rng
                if f[arrow[f[x]][f[y]]] != arrow[f[x]][f[y]]
            ),
        ),
        scan(
            8,
            "forall neg forall x = neg forall x",
            ((x,) for x in rng if f[arrow[f[x]][bot]] != arrow[f[x]][bot]),
        ),
        scan(
            9,
            "forall(x meet y) = forall x meet forall y",
            ((x, y) for x in rng for y in rng if f[meet[x][y]] != meet[f[x]][f[y]]),
        ),
        scan(
            10,
            "forall(forall x join forall y) = forall x join forall y",
            (
                (x, y)
                for x in rng
                for y in rng
                if f[join[f[x]][f[y]]] != join[f[x]][f[y]]
            ),
        ),
        scan(
            11,
            "forall(x odot y) >= forall x odot forall y",
            (
                (x, y)
                for x in rng
                for y in rng
                if not leq[odot[f[x]][f[y]]][f[odot[x][y]]]
            ),
        ),
        scan(
            12,
            "forall(forall x odot forall y) = forall x odot forall y",
            (
                (x, y)
                for x in rng
                for y in rng
                if f[odot[f[x]][f[y]]] != odot[f[x]][f[y]]
            ),
        ),
        PropertyCheck(
            13,
            "image equals fixpoint set",
            image == fixed,
            None if image == fixed else tuple(image),
        ),
    ]
    closure_witness = None
    img = set(image)
    for x in img:
        for y in img:
            for tag, val in (
                ("meet", meet[x][y]),
                ("join", join[x][y]),
                ("odot", odot[x][y]),
                ("arrow", arrow[x][y]),
            ):
                if val not in img and closure_witness is None:
                    closure_witness = (x, y)
        if f[x] not in img and closure_witness is None:
            closure_witness = (x,)
    if not {bot, top} <= img and closure_witness is None:
        closure_witness = (bot,)
    checks.append(
        PropertyCheck(
            14,
            "image is a subalgebra",
            closure_witness is None,
            closure_witness,
        )
    )
    return checks


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: str
    passed: bool
    witness: tuple[int, ...] | None = None


@dataclass(frozen=True)
class SubvarietyAxiomReport:
    variety: str
    precondition_ok: bool
    verdicts: tuple[AxiomVerdict, ...]

    @property
    def all_pass(self) -> bool:
        return all(v.passed for v in self.verdicts)


def check_umv_axioms(q: UMTLAlgebra) -> SubvarietyAxiomReport:
    """Verify the five quantified-MV axioms; meaningful on MV bases."""
    alg = q.algebra
    f = q.forall
    n, top, bot = alg.size, alg.top, alg.bottom
    rng = range(n)
    arrow, join, leq = alg.arrow, alg.join, alg.leq
    pre = classify(alg).mv

    def scan(axiom, gen):
        w = next(gen, None)
        return AxiomVerdict(axiom, w is None, w)

    verdicts = (
        AxiomVerdict("forall1", f[top] == top, None if f[top] == top else (top,)),
        scan("forall2", ((x,) for x in rng if not leq[f[x]][x])),
        scan(
            "forall3",
            (
                (x, y)
                for x in rng
                for y in rng
                if f[join[x][f[y]]] != join[f[x]][f[y]]
            ),
        ),
        scan(
            "forall4",
            (
                (x, y)
                for x in rng
                for y in rng
                if arrow[f[arrow[x][y]]][arrow[f[x]][f[y]]] != top
            ),
        ),
        scan(
            "forall5",
            (
                (x, y)
                for x in rng
                for y in rng
                if f[arrow[f[x]][f[y]]] != arrow[f[x]][f[y]]
            ),
        ),
    )
    return SubvarietyAxiomReport("UMV", pre, verdicts)


def check_mba_axioms(q: UMTLAlgebra) -> SubvarietyAxiomReport:
    """Verify the monadic-Boolean axioms for exists x := neg forall neg x."""
    alg = q.algebra
    f = q.forall
    n, bot = alg.size, alg.bottom
    rng = range(n)
    meet, leq = alg.meet, alg.leq
    pre = classify(alg).boolean
    ex = tuple(alg.neg(f[alg.neg(x)]) for x in rng)

    def scan(axiom, gen):
        w = next(gen, None)
        return AxiomVerdict(axiom, w is None, w)

    verdicts = (
        AxiomVerdict("exists1", ex[bot] == bot, None if ex[bot] == bot else (bot,)),
        scan("exists2", ((x,) for x in rng if not leq[x][ex[x]])),
        scan(
            "exists3",
            (
                (x, y)
                for x in rng
                for y in rng
                if ex[meet[x][ex[y]]] != meet[ex[x]][ex[y]]
            ),
        ),
    )
    return SubvarietyAxiomReport("MBA", pre, verdicts)
