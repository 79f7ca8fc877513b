"""Structural analysis of quantified algebras and the cross-theorem audits.

Every "equivalence" claimed by the source theory is audited as agreement
of independently computed booleans; the audit never aborts on a
disagreement, it records a witness.  Verdicts are pure functions of the
input pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import FiniteMTLAlgebra, classify
from .quantifier import (
    UMTLAlgebra,
    delta_table,
    properties_suite,
    quantifier_violations,
    check_mba_axioms,
    check_umv_axioms,
)
from . import filters as flt


@dataclass(frozen=True)
class RepresentabilityReport:
    """The three finite representability conditions and their agreement.

    The headline verdict is the pure equation scan (condition 2); the
    join-implication form (3) and the minimal-prime form (4) are audit
    companions.
    """

    by_equation: bool
    equation_witness: tuple[int, int] | None
    by_join_implication: bool
    join_witness: tuple[int, int] | None
    by_minimal_primes: bool
    offending_prime: tuple[int, ...] | None

    @property
    def representable(self) -> bool:
        return self.by_equation

    @property
    def agree(self) -> bool:
        return self.by_equation == self.by_join_implication == self.by_minimal_primes


def is_representable(q: UMTLAlgebra) -> RepresentabilityReport:
    alg, f = q.algebra, q.forall
    rng = range(alg.size)
    top = alg.top
    eq_witness = next(
        (
            (x, y)
            for x in rng
            for y in rng
            if alg.join[f[alg.arrow[x][y]]][alg.arrow[y][x]] != top
        ),
        None,
    )
    join_witness = next(
        (
            (x, y)
            for x in rng
            for y in rng
            if alg.join[x][y] == top and alg.join[x][f[y]] != top
        ),
        None,
    )
    offending = next(
        (
            p.sorted_members()
            for p in flt.minimal_primes(alg).by_inclusion
            if not flt.is_ufilter(alg, f, p.members)
        ),
        None,
    )
    return RepresentabilityReport(
        by_equation=eq_witness is None,
        equation_witness=eq_witness,
        by_join_implication=join_witness is None,
        join_witness=join_witness,
        by_minimal_primes=offending is None,
        offending_prime=offending,
    )


@dataclass(frozen=True)
class StrongReport:
    """Join-distributivity of the quantifier, with the representability
    comparison attached (the two are claimed equivalent)."""

    strong: bool
    witness: tuple[int, int] | None
    representable: bool

    @property
    def agree(self) -> bool:
        return self.strong == self.representable


def is_strong(q: UMTLAlgebra) -> StrongReport:
    alg, f = q.algebra, q.forall
    rng = range(alg.size)
    witness = next(
        (
            (x, y)
            for x in rng
            for y in rng
            if f[alg.join[x][y]] != alg.join[f[x]][f[y]]
        ),
        None,
    )
    return StrongReport(
        strong=witness is None,
        witness=witness,
        representable=is_representable(q).representable,
    )


@dataclass(frozen=True)
class SimplicityReport:
    """Five simplicity conditions, each independently computed."""

    ufilters_trivial: bool                    # exactly {top} and L
    image_simple: bool                        # fixpoint subalgebra has 2 filters
    fixpoints_two_element: bool               # fixpoints == {bottom, top}
    unique_proper_ufilter: bool               # {top} is the only proper one
    finite_order_outside_top: bool            # x != top implies forall x nilpotent
    finite_order_witness: int | None

    def conditions(self) -> tuple[bool, ...]:
        return (
            self.ufilters_trivial,
            self.image_simple,
            self.fixpoints_two_element,
            self.unique_proper_ufilter,
            self.finite_order_outside_top,
        )

    @property
    def simple(self) -> bool:
        return self.ufilters_trivial

    @property
    def agree(self) -> bool:
        return len(set(self.conditions())) == 1


def _subalgebra_filters_trivial(alg: FiniteMTLAlgebra, carrier: frozenset[int]) -> bool:
    """Whether the subalgebra on `carrier` has only {top} and itself as
    filters (filters computed inside the subalgebra)."""
    members = sorted(carrier)
    count = 0
    for mask in range(1 << len(members)):
        s = {members[i] for i in range(len(members)) if mask >> i & 1}
        if alg.top not in s:
            continue
        if any(
            alg.arrow[x][y] in s and y not in s
            for x in s
            for y in members
        ):
            continue
        count += 1
    return count == 2


def is_simple(q: UMTLAlgebra) -> SimplicityReport:
    alg, f = q.algebra, q.forall
    top, bot = alg.top, alg.bottom
    proper = [u for u in flt.enumerate_ufilters(q) if u.is_proper()]
    all_ufilters = flt.enumerate_ufilters(q)
    trivial = {frozenset({top}), frozenset(alg.elements)}
    image = frozenset(f)
    witness = next(
        (x for x in alg.elements if x != top and alg.ord_of(f[x]) is None),
        None,
    )
    return SimplicityReport(
        ufilters_trivial={u.members for u in all_ufilters} == trivial,
        image_simple=_subalgebra_filters_trivial(alg, image),
        fixpoints_two_element=image == frozenset({bot, top}),
        unique_proper_ufilter=[u.members for u in proper] == [frozenset({top})],
        finite_order_outside_top=witness is None,
        finite_order_witness=witness,
    )


@dataclass(frozen=True)
class SemisimplicityReport:
    semisimple: bool
    radical_members: tuple[int, ...]
    empty_family: bool


def is_semisimple(q: UMTLAlgebra) -> SemisimplicityReport:
    rad = flt.radical(q)
    return SemisimplicityReport(
        semisimple=rad.is_trivial and not rad.empty_family,
        radical_members=rad.filterset.sorted_members(),
        empty_family=rad.empty_family,
    )


def is_u_homomorphism(mapping, q1: UMTLAlgebra, q2: UMTLAlgebra):
    """Check preservation of all operations and the quantifier.

    Returns (True, None) or (False, first failing description tuple).
    """
    a1, a2 = q1.algebra, q2.algebra
    m = tuple(mapping)
    if len(m) != a1.size or any(not (0 <= v < a2.size) for v in m):
        return False, ("domain",)
    if m[a1.bottom] != a2.bottom:
        return False, ("bottom", a1.bottom)
    if m[a1.top] != a2.top:
        return False, ("top", a1.top)
    pairs = [
        ("odot", a1.odot, a2.odot),
        ("arrow", a1.arrow, a2.arrow),
        ("meet", a1.meet, a2.meet),
        ("join", a1.join, a2.join),
    ]
    for name, t1, t2 in pairs:
        for x in a1.elements:
            for y in a1.elements:
                if m[t1[x][y]] != t2[m[x]][m[y]]:
                    return False, (name, x, y)
    f1, f2 = q1.forall, q2.forall
    for x in a1.elements:
        if m[f1[x]] != f2[m[x]]:
            return False, ("forall", x)
    return True, None


@dataclass(frozen=True)
class SubdirectEmbedding:
    factors: tuple[UMTLAlgebra, ...]
    factor_filters: tuple[tuple[int, ...], ...]
    embedding: tuple[tuple[int, ...], ...]
    injective: bool
    coordinates_surjective: tuple[bool, ...]
    coordinates_u_homomorphic: tuple[bool, ...]
    factors_linear: tuple[bool, ...]
    factors_simple: tuple[bool, ...]

    @property
    def ok(self) -> bool:
        return (
            self.injective
            and all(self.coordinates_surjective)
            and all(self.coordinates_u_homomorphic)
        )


@dataclass(frozen=True)
class DecompositionResult:
    mode: str
    embedding: SubdirectEmbedding | None
    failure: str | None
    witness: tuple | None

    @property
    def ok(self) -> bool:
        return self.embedding is not None and self.embedding.ok


def subdirect_decompose(q: UMTLAlgebra, mode: str) -> DecompositionResult:
    """Subdirect decomposition through the selected filter family.

    mode="min-primes" requires every minimal prime to be a U-filter and
    reports the offending prime otherwise; mode="max-ufilters" succeeds
    exactly on semisimple inputs, with factors verified simple.
    """
    alg, f = q.algebra, q.forall
    if mode == "min-primes":
        family = flt.minimal_primes(alg).by_inclusion
        bad = next(
            (p for p in family if not flt.is_ufilter(alg, f, p.members)), None
        )
        if bad is not None:
            return DecompositionResult(
                mode, None, "minimal prime is not a U-filter", bad.sorted_members()
            )
    elif mode == "max-ufilters":
        family = flt.maximal_ufilters(q)
        rad = flt.radical(q)
        if not rad.is_trivial:
            blocker = next(
                x for x in rad.filterset.sorted_members() if x != alg.top
            )
            return DecompositionResult(
                mode,
                None,
                "radical element below top blocks injectivity",
                (blocker,),
            )
    else:
        raise ValueError(f"unknown decomposition mode: {mode!r}")
    family = sorted(family, key=lambda fs: fs.mask)
    quotients = [flt.quotient(q, fs.members) for fs in family]
    embedding = tuple(
        tuple(res.class_map[x] for res in quotients) for x in alg.elements
    )
    injective = len(set(embedding)) == alg.size
    surjective = tuple(
        len({res.class_map[x] for x in alg.elements}) == res.quotient.algebra.size
        for res in quotients
    )
    u_homomorphic = tuple(
        is_u_homomorphism(res.class_map, q, res.quotient)[0] for res in quotients
    )
    emb = SubdirectEmbedding(
        factors=tuple(res.quotient for res in quotients),
        factor_filters=tuple(fs.sorted_members() for fs in family),
        embedding=embedding,
        injective=injective,
        coordinates_surjective=surjective,
        coordinates_u_homomorphic=u_homomorphic,
        factors_linear=tuple(
            classify(res.quotient.algebra).linear for res in quotients
        ),
        factors_simple=tuple(
            is_simple(res.quotient).simple for res in quotients
        ),
    )
    return DecompositionResult(mode, emb, None, None)


# ---------------------------------------------------------------------------
# audit harness


@dataclass(frozen=True)
class AuditEntry:
    check: str
    subject: str
    agrees: bool
    details: dict = field(compare=False, default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "check": self.check,
            "subject": self.subject,
            "agrees": self.agrees,
            "details": self.details,
        }


def _names(alg: FiniteMTLAlgebra, items) -> list[str]:
    return [alg.name_of(i) for i in items]


def audit_minimal_primes(alg: FiniteMTLAlgebra, subject: str) -> AuditEntry:
    res = flt.minimal_primes(alg)
    return AuditEntry(
        "minimal-prime-characterizations",
        subject,
        res.agree,
        {
            "by_inclusion": [_names(alg, p.sorted_members()) for p in res.by_inclusion],
            "by_perp": [_names(alg, p.sorted_members()) for p in res.by_perp],
        },
    )


def audit_prop_3_4(q: UMTLAlgebra) -> AuditEntry:
    checks = properties_suite(q)
    failures = [
        {"item": c.item, "witness": list(c.witness or ())}
        for c in checks
        if not c.passed
    ]
    return AuditEntry(
        "quantifier-property-suite",
        q.label(),
        not failures,
        {"failures": failures},
    )


def audit_term_equivalences(q: UMTLAlgebra) -> list[AuditEntry]:
    out = []
    profile = classify(q.algebra)
    if profile.mv:
        rep = check_umv_axioms(q)
        out.append(
            AuditEntry(
                "quantified-mv-term-equivalence",
                q.label(),
                rep.all_pass,
                {
                    "verdicts": {
                        v.axiom: v.passed for v in rep.verdicts
                    }
                },
            )
        )
    if profile.boolean:
        rep = check_mba_axioms(q)
        out.append(
            AuditEntry(
                "monadic-boolean-term-equivalence",
                q.label(),
                rep.all_pass,
                {
                    "verdicts": {
                        v.axiom: v.passed for v in rep.verdicts
                    }
                },
            )
        )
    return out


def audit_congruence_correspondence(q: UMTLAlgebra) -> AuditEntry:
    """Filters -> congruences -> filters is the identity, the reverse
    composition too, and both directions preserve inclusion."""
    ufilters = flt.enumerate_ufilters(q)
    congruences = flt.enumerate_ucongruences(q)
    round_trip = all(
        flt.filter_of_congruence(q, flt.congruence_of_filter(q, u.members))
        == u.members
        for u in ufilters
    )
    back = all(
        flt.congruence_of_filter(q, flt.filter_of_congruence(q, c)) == c
        for c in congruences
    )
    cong_set = {tuple(c) for c in congruences}
    images = {tuple(flt.congruence_of_filter(q, u.members)) for u in ufilters}
    bijective = images == cong_set and len(ufilters) == len(congruences)
    order_iso = all(
        (u1.members <= u2.members)
        == _congruence_leq(
            flt.congruence_of_filter(q, u1.members),
            flt.congruence_of_filter(q, u2.members),
        )
        for u1 in ufilters
        for u2 in ufilters
    )
    agrees = round_trip and bijective and back and order_iso
    return AuditEntry(
        "ufilter-congruence-correspondence",
        q.label(),
        agrees,
        {
            "ufilters": len(ufilters),
            "ucongruences": len(congruences),
            "round_trip": round_trip,
            "bijective": bijective,
            "order_isomorphism": order_iso,
        },
    )


def _congruence_leq(c1, c2) -> bool:
    """c1 refines-or-equals c2 (every block of c1 inside a block of c2)."""
    return all(any(b1 <= b2 for b2 in c2) for b1 in c1)


def audit_representability(q: UMTLAlgebra) -> AuditEntry:
    rep = is_representable(q)
    alg = q.algebra
    details = {
        "by_equation": rep.by_equation,
        "by_join_implication": rep.by_join_implication,
        "by_minimal_primes": rep.by_minimal_primes,
    }
    if rep.equation_witness:
        details["equation_witness"] = _names(alg, rep.equation_witness)
    if rep.join_witness:
        details["join_witness"] = _names(alg, rep.join_witness)
    if rep.offending_prime:
        details["offending_prime"] = _names(alg, rep.offending_prime)
    return AuditEntry("representability-conditions", q.label(), rep.agree, details)


def audit_delta_on_linear(alg: FiniteMTLAlgebra, subject: str, u2_parse: str) -> AuditEntry:
    """Whether (L, delta) is a representable quantified algebra exactly on
    the linearly ordered bases; delta can fail the U2 scan on
    non-involutive chains, which this audit records rather than assumes."""
    linear = classify(alg).linear
    violations = quantifier_violations(alg, delta_table(alg), u2_parse)
    delta_valid = not violations
    representable = False
    if delta_valid:
        from .quantifier import make_umtl

        representable = is_representable(
            make_umtl(alg, delta_table(alg), u2_parse)
        ).representable
    claim = linear == (delta_valid and representable)
    return AuditEntry(
        "delta-on-linear-bases",
        subject,
        claim,
        {
            "linear": linear,
            "delta_valid": delta_valid,
            "delta_violations": [
                {"axiom": v.axiom, "witness": list(v.witness)} for v in violations
            ],
            "representable_with_delta": representable,
        },
    )


def audit_strong(q: UMTLAlgebra) -> AuditEntry:
    rep = is_strong(q)
    details = {"strong": rep.strong, "representable": rep.representable}
    if rep.witness:
        details["witness"] = _names(q.algebra, rep.witness)
    return AuditEntry("strong-iff-representable", q.label(), rep.agree, details)


def audit_maximality(q: UMTLAlgebra) -> AuditEntry:
    proper = [u for u in flt.enumerate_ufilters(q) if u.is_proper()]
    disagreements = []
    for u in proper:
        verdict = flt.is_maximal_ufilter(q, u.members)
        if not verdict.agree:
            disagreements.append(
                {
                    "filter": _names(q.algebra, u.sorted_members()),
                    "by_definition": verdict.by_definition,
                    "by_criterion": verdict.by_criterion,
                }
            )
    return AuditEntry(
        "maximal-ufilter-criterion",
        q.label(),
        not disagreements,
        {"proper_ufilters": len(proper), "disagreements": disagreements},
    )


def audit_simplicity(q: UMTLAlgebra) -> AuditEntry:
    rep = is_simple(q)
    conds = rep.conditions()
    details = {
        "conditions": {
            "ufilters_trivial": conds[0],
            "image_simple": conds[1],
            "fixpoints_two_element": conds[2],
            "unique_proper_ufilter": conds[3],
            "finite_order_outside_top": conds[4],
        },
    }
    if not rep.agree:
        fix = sorted(set(q.forall))
        details["fixpoints"] = _names(q.algebra, fix)
    return AuditEntry("simplicity-conditions", q.label(), rep.agree, details)


def audit_quotient_simplicity(q: UMTLAlgebra) -> AuditEntry:
    """Quotient by F is simple exactly when F is a maximal U-filter."""
    proper = [u for u in flt.enumerate_ufilters(q) if u.is_proper()]
    maxes = {u.members for u in flt.maximal_ufilters(q)}
    disagreements = []
    for u in proper:
        simple = is_simple(flt.quotient(q, u.members).quotient).simple
        if simple != (u.members in maxes):
            disagreements.append(
                {
                    "filter": _names(q.algebra, u.sorted_members()),
                    "quotient_simple": simple,
                    "maximal": u.members in maxes,
                }
            )
    return AuditEntry(
        "quotient-simplicity-iff-maximal",
        q.label(),
        not disagreements,
        {"proper_ufilters": len(proper), "disagreements": disagreements},
    )


def audit_semisimplicity(q: UMTLAlgebra) -> AuditEntry:
    semi = is_semisimple(q)
    dec = subdirect_decompose(q, "max-ufilters")
    ok = dec.ok and all(dec.embedding.factors_simple) if dec.embedding else False
    details = {
        "semisimple": semi.semisimple,
        "radical": _names(q.algebra, semi.radical_members),
        "decomposition_ok": ok,
    }
    if dec.failure:
        details["failure"] = dec.failure
        details["witness"] = list(dec.witness or ())
    return AuditEntry(
        "semisimple-iff-simple-subdirect",
        q.label(),
        semi.semisimple == ok,
        details,
    )


def theorem_audit(corpus: list[UMTLAlgebra], u2_parse: str = "standard") -> list[AuditEntry]:
    """Run every per-theorem agreement check over the corpus.

    Discrepancies are data, not failures; ordering is canonical
    (check id, then subject label).
    """
    entries: list[AuditEntry] = []
    seen_algebras: dict[tuple, str] = {}
    for q in corpus:
        key = q.algebra.table_key()
        if key not in seen_algebras:
            subject = q.label().split("+")[0]
            seen_algebras[key] = subject
            entries.append(audit_minimal_primes(q.algebra, subject))
            entries.append(audit_delta_on_linear(q.algebra, subject, u2_parse))
        entries.append(audit_prop_3_4(q))
        entries.extend(audit_term_equivalences(q))
        entries.append(audit_congruence_correspondence(q))
        entries.append(audit_representability(q))
        entries.append(audit_strong(q))
        entries.append(audit_maximality(q))
        entries.append(audit_simplicity(q))
        entries.append(audit_quotient_simplicity(q))
        entries.append(audit_semisimplicity(q))
    entries.sort(key=lambda e: (e.check, e.subject))
    return entries
