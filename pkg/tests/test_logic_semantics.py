from __future__ import annotations

import pytest

from umtl import chain_algebra, enumerate_quantifiers, make_umtl
from umtl.quantifier import delta_table
from umtl.logic.formulas import Var, parse_formula
from umtl.logic.schemas import RULE_SHAPES, SchemaCatalog, instantiate
from umtl.logic.semantics import (
    Countermodel,
    RuleInstance,
    SearchExhausted,
    VariableBudgetError,
    check_semilinearity_condition,
    consequence,
    countermodel_search,
    eval_formula,
    is_valid,
    soundness_audit,
)

CATALOG = SchemaCatalog.mmtl()


def _pool(corpus_entries):
    pool = []
    for entry in sorted(corpus_entries, key=lambda e: e.name):
        tables = (
            [entry.forall]
            if entry.forall is not None
            else [q.table for q in enumerate_quantifiers(entry.algebra)]
        )
        for t in tables:
            pool.append(
                make_umtl(entry.algebra, t, name=f"{entry.name}+{''.join(map(str, t))}")
            )
    return pool


def test_eval_basics(six_delta):
    f = parse_formula("p0 -> p0")
    for x in six_delta.algebra.elements:
        assert eval_formula(six_delta, {0: x}, f) == six_delta.algebra.top
    g = parse_formula("box p0")
    assert eval_formula(six_delta, {0: 3}, g) == 0
    with pytest.raises(ValueError, match="misses p1"):
        eval_formula(six_delta, {0: 0}, parse_formula("p1"))


def test_eval_derived_connectives(six_block):
    alg = six_block.algebra
    f = parse_formula("p0 | p1")
    for x in alg.elements:
        for y in alg.elements:
            assert eval_formula(six_block, {0: x, 1: y}, f) == alg.join[x][y]
    g = parse_formula("neg p0")
    for x in alg.elements:
        assert eval_formula(six_block, {0: x}, g) == alg.neg(x)


def test_box_fails_necessity_introduction_on_chain():
    nm3 = chain_algebra("nilpotent-minimum", 3)
    q = make_umtl(nm3, delta_table(nm3), name="nm-3+002")
    verdict = is_valid(q, parse_formula("p0 -> box p0"))
    assert not verdict.valid
    assert verdict.countervaluation == {0: 1}  # the middle element


def test_modal_axioms_valid_on_fixture(six_delta, six_block):
    for q in (six_delta, six_block):
        for text in [
            "box p0 -> p0",
            "box (box p0 -> p1) -> (box p0 -> box p1)",
            "(box p0 -> box p1) -> box (box p0 -> p1)",
        ]:
            assert is_valid(q, parse_formula(text)).valid


def test_variable_budget():
    nm3 = chain_algebra("nilpotent-minimum", 3)
    q = make_umtl(nm3, delta_table(nm3))
    f = parse_formula("p0 & p1 & p2 & p3 & p4 & p5 & p6")
    with pytest.raises(VariableBudgetError):
        is_valid(q, f, max_vars=6)


def test_consequence(six_delta):
    # from p0 we reach box p0 semantically (models send hypotheses to top)
    assert consequence(six_delta, [parse_formula("p0")], parse_formula("box p0")).valid
    verdict = consequence(six_delta, [], parse_formula("p0 -> box p0"))
    assert not verdict.valid


def test_countermodel_search_formula(corpus_entries):
    pool = _pool(corpus_entries)
    hit = countermodel_search(parse_formula("p0 -> box p0"), pool)
    assert isinstance(hit, Countermodel)
    # first pool member in name order able to refute it
    assert hit.algebra_label == "example-3-2+000005"


def test_countermodel_search_axioms_exhaust(corpus_entries):
    pool = _pool(corpus_entries)
    inst = parse_formula("(p0 & p1) -> p0")
    hit = countermodel_search(inst, pool)
    assert isinstance(hit, SearchExhausted)
    assert hit.pool_size == len(pool)


def test_countermodel_search_rule(corpus_entries, six_delta, six_block):
    premises, conclusion = RULE_SHAPES["disj-box"]
    binding = {"alpha": Var(0), "beta": Var(1)}
    rule = RuleInstance(
        tuple(instantiate(p, binding) for p in premises),
        instantiate(conclusion, binding),
    )
    # the one-point quantifier on the six-element fixture refutes the rule
    hit = countermodel_search(rule, [six_delta])
    assert isinstance(hit, Countermodel)
    assert dict(hit.valuation) == {0: 2, 1: 4}  # p0=b, p1=d
    # the block quantifier satisfies it
    assert isinstance(countermodel_search(rule, [six_block]), SearchExhausted)
    # over the full corpus the delta pairing is the first refuter
    pool = _pool(corpus_entries)
    hit = countermodel_search(rule, pool)
    assert isinstance(hit, Countermodel)
    assert hit.algebra_label == "example-3-2+000005"


def test_countermodel_search_jobs_deterministic(corpus_entries):
    pool = _pool(corpus_entries)
    goal = parse_formula("p0 -> box p0")
    serial = countermodel_search(goal, pool, jobs=1)
    parallel = countermodel_search(goal, pool, jobs=4)
    assert serial == parallel


def test_semilinearity(six_delta, six_block, corpus_entries):
    ok, witness = check_semilinearity_condition(six_delta)
    assert not ok and witness == (2, 4)
    ok, witness = check_semilinearity_condition(six_block)
    assert ok and witness is None
    for entry in corpus_entries:
        if entry.forall is not None:
            continue
        from umtl import classify

        if classify(entry.algebra).linear:
            for q in enumerate_quantifiers(entry.algebra):
                ok, _ = check_semilinearity_condition(
                    make_umtl(entry.algebra, q.table)
                )
                assert ok


def test_soundness_audit(corpus_entries):
    pool = _pool(corpus_entries)
    report = soundness_audit(pool, SchemaCatalog.mmtl())
    assert report.all_valid
    report = soundness_audit(
        pool, SchemaCatalog.mmtl(extensions=("INV", "WNM", "MV", "EM"))
    )
    assert report.all_valid


def test_alt_parse_m2_is_unsound(six_delta):
    # under the right-associated reading the left schema side collapses;
    # the audit must catch the resulting invalidity
    report = soundness_audit([six_delta], SchemaCatalog.mmtl("alt"))
    assert not report.all_valid
    bad = {e.schema_id for e in report.entries if not e.valid}
    assert "M2b" in bad or "M2a" in bad


def test_schema_scan_equals_literal_instantiation():
    # carrier-valued metavariable scan == literal instantiation over a
    # bounded formula pool (here depth <= 1 over two variables); the
    # carrier scan covers arbitrary instantiation depth by factoring
    import itertools

    from umtl.logic.formulas import And, Bot, Box, Impl, Min, Var
    from umtl.logic.schemas import instantiate, metavars_of
    from umtl.logic.semantics import _schema_instance_valid

    nm3 = chain_algebra("nilpotent-minimum", 3)
    q = make_umtl(nm3, delta_table(nm3), name="nm-3+002")
    depth0 = [Var(0), Var(1), Bot()]
    pool = list(depth0)
    for a in depth0:
        pool.append(Box(a))
        for b in depth0:
            pool.extend([Impl(a, b), And(a, b), Min(a, b)])
    for schema_id in ("A2", "A3", "M1", "M3a", "M2a"):
        pattern = CATALOG.get(schema_id)
        labels = metavars_of(pattern)
        scan_valid, _ = _schema_instance_valid(q, pattern)
        literal_valid = all(
            is_valid(q, instantiate(pattern, dict(zip(labels, combo)))).valid
            for combo in itertools.product(pool, repeat=len(labels))
        )
        assert scan_valid == literal_valid == True  # noqa: E712


def test_mp_nec_preservation_pointwise(corpus_entries):
    for q in _pool(corpus_entries):
        alg = q.algebra
        top = alg.top
        for u in alg.elements:
            for v in alg.elements:
                if u == top and alg.arrow[u][v] == top:
                    assert v == top
        assert q.forall[top] == top
