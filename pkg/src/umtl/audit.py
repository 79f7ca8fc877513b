"""Corpus-level audit runs.

Builds the deterministic (algebra, quantifier) pair list for a corpus,
runs every theorem audit plus the fixture-specific cross-checks, and the
schema soundness sweep.  Pairs are named "<algebra>+<table digits>" so
reports are self-describing.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import analysis as ana
from . import filters as flt
from .analysis import AuditEntry
from .core import FiniteMTLAlgebra, chain_algebra
from .corpus import SIX_BLOCKY, SIX_DELTA, CorpusEntry, example_3_2
from .logic.formulas import And, Box, Impl, Var, parse_formula
from .logic.proofs import check_proof
from .logic.schemas import SchemaCatalog
from .logic.semantics import (
    Countermodel,
    RuleInstance,
    SoundnessReport,
    check_semilinearity_condition,
    countermodel_search,
    is_valid,
    soundness_audit,
)
from .logic.transform import deduction_transform
from .logic.builder import ProofBuilder
from .quantifier import UMTLAlgebra, enumerate_quantifiers, identity_table, make_umtl


def pair_name(base: str, table) -> str:
    return base + "+" + "".join(str(v) for v in table)


def corpus_pairs(
    entries: list[CorpusEntry], u2_parse: str = "standard", jobs: int = 1
) -> list[UMTLAlgebra]:
    """One pair per file-supplied quantifier, plus every enumerated
    quantifier on files without one; duplicates (same tables) dropped,
    first occurrence in name order wins."""
    pairs, _ = corpus_pairs_with_rejects(entries, u2_parse, jobs)
    return pairs


def corpus_pairs_with_rejects(
    entries: list[CorpusEntry], u2_parse: str = "standard", jobs: int = 1
) -> tuple[list[UMTLAlgebra], list[tuple[str, list]]]:
    """Like corpus_pairs, also returning file-supplied tables that fail
    the quantifier scan under the selected parse (relevant for the
    alternative reading, under which no table validates)."""
    from .quantifier import quantifier_violations

    pairs: list[UMTLAlgebra] = []
    rejected: list[tuple[str, list]] = []
    seen: set[tuple] = set()
    for entry in sorted(entries, key=lambda e: e.name):
        if entry.forall is not None:
            key = (entry.algebra.table_key(), tuple(entry.forall))
            if key in seen:
                continue
            seen.add(key)
            name = pair_name(entry.name, entry.forall)
            violations = quantifier_violations(entry.algebra, entry.forall, u2_parse)
            if violations:
                rejected.append((name, violations))
                continue
            pairs.append(make_umtl(entry.algebra, entry.forall, u2_parse, name))
            continue
        for q in enumerate_quantifiers(entry.algebra, u2_parse, jobs=jobs):
            key = (entry.algebra.table_key(), q.table)
            if key in seen:
                continue
            seen.add(key)
            pairs.append(
                UMTLAlgebra(entry.algebra, q, pair_name(entry.name, q.table))
            )
    return pairs, rejected


def _find_six_element(entries: list[CorpusEntry]) -> FiniteMTLAlgebra | None:
    key = example_3_2().table_key()
    for entry in sorted(entries, key=lambda e: e.name):
        if entry.algebra.table_key() == key:
            return entry.algebra
    return None


def _family(alg: FiniteMTLAlgebra, filtersets) -> list[list[str]]:
    return [[alg.name_of(i) for i in f.sorted_members()] for f in filtersets]


def fixture_audits(
    entries: list[CorpusEntry],
    pairs: list[UMTLAlgebra],
    u2_parse: str,
    jobs: int = 1,
) -> list[AuditEntry]:
    from .quantifier import quantifier_violations

    out: list[AuditEntry] = []
    six = _find_six_element(entries)
    if six is not None and not (
        quantifier_violations(six, SIX_DELTA, u2_parse)
        or quantifier_violations(six, SIX_BLOCKY, u2_parse)
    ):
        q_delta = make_umtl(six, SIX_DELTA, u2_parse, pair_name("six", SIX_DELTA))
        q_block = make_umtl(six, SIX_BLOCKY, u2_parse, pair_name("six", SIX_BLOCKY))
        under_delta = _family(six, flt.enumerate_ufilters(q_delta))
        under_block = _family(six, flt.enumerate_ufilters(q_block))
        four_member = [["1"], ["b", "c", "1"], ["d", "1"], ["0", "a", "b", "c", "d", "1"]]
        out.append(
            AuditEntry(
                "ufilter-family-pairing",
                "example-3-2",
                True,
                {
                    "four_member_family": four_member,
                    "under_delta": under_delta,
                    "under_block": under_block,
                    "delta_yields_four_member_family": sorted(under_delta)
                    == sorted(four_member),
                    "block_yields_four_member_family": sorted(under_block)
                    == sorted(four_member),
                },
            )
        )
        join_d_forall_c = six.join[4][q_block.forall[3]]
        semi_block, _ = check_semilinearity_condition(q_block)
        semi_delta, delta_witness = check_semilinearity_condition(q_delta)
        out.append(
            AuditEntry(
                "disjunction-rule-on-six-element",
                "example-3-2",
                True,
                {
                    "under_block": {
                        "join(d, forall c)": six.name_of(join_d_forall_c),
                        "satisfies_rule_semantically": semi_block,
                        "representable": ana.is_representable(q_block).representable,
                    },
                    "under_delta": {
                        "satisfies_rule_semantically": semi_delta,
                        "witness": [six.name_of(i) for i in delta_witness or ()],
                    },
                },
            )
        )
    rule = RuleInstance((parse_formula("p0 | p1"),), parse_formula("p0 | box p1"))
    hit = countermodel_search(rule, pairs, jobs=jobs)
    details: dict = {"pool_size": len(pairs)}
    if isinstance(hit, Countermodel):
        alg = pairs[hit.pool_index].algebra
        details.update(
            {
                "found": True,
                "algebra": hit.algebra_label,
                "valuation": {
                    f"p{var}": alg.name_of(val) for var, val in hit.valuation
                },
                "conclusion_value": alg.name_of(hit.value),
            }
        )
    else:
        details.update({"found": False, "valuations_checked": hit.valuations_checked})
    out.append(AuditEntry("disjunction-rule-search", "corpus", True, details))
    out.append(_deduction_exponent_entry(u2_parse))
    out.sort(key=lambda e: (e.check, e.subject))
    return out


def _deduction_exponent_entry(u2_parse: str) -> AuditEntry:
    """The hypothesis-discharge transform needs guard powers: the
    exponent-1 form box a -> (a & a) already fails on the three-element
    involutive chain with the identity quantifier."""
    catalog = SchemaCatalog.mmtl(u2_parse)
    p = Var(0)
    builder = ProofBuilder(catalog, [("alpha", p)])
    ident = builder.identity(And(p, p))
    curried = builder.curry(ident)
    h = builder.hyp("alpha")
    once = builder.mp(h, curried)
    builder.mp(h, once)
    transformed = deduction_transform(catalog, builder.proof, "alpha")
    l3 = chain_algebra("lukasiewicz", 3)
    from .quantifier import quantifier_violations

    if quantifier_violations(l3, identity_table(l3), u2_parse):
        return AuditEntry(
            "deduction-transform-exponent",
            "corpus",
            False,
            {
                "exponent_needed": transformed.exponent,
                "output_checks": bool(check_proof(catalog, transformed.proof)),
                "note": "semantic witness unavailable under this parse",
            },
        )
    qi = make_umtl(l3, identity_table(l3), u2_parse, "lukasiewicz-3+012")
    plain_form = Impl(Box(p), And(p, p))
    plain_verdict = is_valid(qi, plain_form)
    powered_verdict = is_valid(qi, transformed.conclusion)
    return AuditEntry(
        "deduction-transform-exponent",
        "corpus",
        False,
        {
            "exponent_needed": transformed.exponent,
            "output_checks": bool(check_proof(catalog, transformed.proof)),
            "exponent_one_form_valid": plain_verdict.valid,
            "exponent_one_countervaluation": dict(
                sorted((plain_verdict.countervaluation or {}).items())
            ),
            "powered_form_valid": powered_verdict.valid,
        },
    )


@dataclass(frozen=True)
class AuditBundle:
    pairs: tuple[UMTLAlgebra, ...]
    entries: tuple[AuditEntry, ...]
    soundness: SoundnessReport

    def disagreements(self) -> list[AuditEntry]:
        return [e for e in self.entries if not e.agrees]

    def as_checks(self) -> list[dict]:
        checks = [e.as_dict() for e in self.entries]
        checks.append(
            {
                "check": "schema-soundness",
                "subject": "corpus",
                "agrees": self.soundness.all_valid,
                "details": {
                    "schema_instances": len(self.soundness.entries),
                    "invalid": [
                        {"schema": e.schema_id, "algebra": e.algebra_label}
                        for e in self.soundness.entries
                        if not e.valid
                    ],
                    "mp_preserves_validity": self.soundness.mp_preserves,
                    "nec_preserves_validity": self.soundness.nec_preserves,
                },
            }
        )
        return checks


def run_corpus_audit(
    entries: list[CorpusEntry],
    u2_parse: str = "standard",
    jobs: int = 1,
    extensions: tuple[str, ...] = ("INV", "WNM", "MV", "EM"),
) -> AuditBundle:
    pairs, rejected = corpus_pairs_with_rejects(entries, u2_parse, jobs)
    audit_entries = ana.theorem_audit(pairs, u2_parse)
    audit_entries.extend(fixture_audits(entries, pairs, u2_parse, jobs))
    for name, violations in rejected:
        audit_entries.append(
            AuditEntry(
                "quantifier-axioms",
                name,
                False,
                {
                    "violations": [
                        {"axiom": v.axiom, "witness": list(v.witness)}
                        for v in violations
                    ],
                    "u2_parse": u2_parse,
                },
            )
        )
    audit_entries.sort(key=lambda e: (e.check, e.subject))
    catalog = SchemaCatalog.mmtl(u2_parse, extensions=extensions)
    soundness = soundness_audit(pairs, catalog)
    return AuditBundle(tuple(pairs), tuple(audit_entries), soundness)
