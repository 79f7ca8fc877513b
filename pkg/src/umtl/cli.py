"""Command-line front end.

Exit codes: 0 success/confirmed, 1 property fails or countermodel found
(still a successful run), 2 input error.  `--json` writes the structured
report; identical invocations write identical reports (timings are off by
default and live outside the digested region).
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import analysis as ana
from . import filters as flt
from . import hasse, report
from .algfile import AlgebraFileError, load_algebra_file
from .audit import corpus_pairs, run_corpus_audit
from .core import (
    FiniteMTLAlgebra,
    InvalidAlgebraError,
    check_mtl_tables,
    classify,
    validate,
)
from .corpus import CorpusEntry, corpus_dir
from .logic.formulas import FormulaSyntaxError, parse_formula, print_formula
from .logic.proofs import ProofFileError, check_proof, parse_proof_text, print_proof
from .logic.schemas import RULE_SHAPES, SchemaCatalog, instantiate
from .logic.semantics import (
    Countermodel,
    RuleInstance,
    VariableBudgetError,
    countermodel_search,
    is_valid,
)
from .logic.transform import deduction_transform
from .quantifier import (
    InvalidQuantifierError,
    delta_table,
    enumerate_quantifiers,
    identity_table,
    make_umtl,
    properties_suite,
    quantifier_violations,
)

OK, PROPERTY_FAILS, INPUT_ERROR = 0, 1, 2


class CommandError(Exception):
    def __init__(self, message: str, code: int = INPUT_ERROR):
        self.code = code
        super().__init__(message)


class Run:
    """Collects human-readable lines and report checks for one command."""

    def __init__(self, args):
        self.args = args
        self.checks: list[dict] = []
        self.inputs: list[str] = []
        self.started = time.perf_counter()

    def say(self, line: str) -> None:
        print(line)

    def check(self, check_id: str, subject: str, ok: bool, **details) -> None:
        self.checks.append(
            {"check": check_id, "subject": subject, "agrees": ok, "details": details}
        )

    def finish(self, command: str, code: int) -> int:
        if self.args.json:
            timings = None
            if self.args.timings:
                timings = {"seconds": round(time.perf_counter() - self.started, 6)}
            doc = report.build_report(
                command,
                {"u2_parse": self.args.u2_parse},
                self.inputs,
                self.checks,
                code,
                timings,
            )
            report.write_report(self.args.json, doc)
        return code


def _load_document(run: Run, path: str):
    try:
        doc = load_algebra_file(path)
    except AlgebraFileError as exc:
        raise CommandError(f"{path}: {exc}") from exc
    run.inputs.append(path)
    return doc


def _validated_algebra(run: Run, path: str) -> tuple[FiniteMTLAlgebra, object]:
    doc = _load_document(run, path)
    violations = check_mtl_tables(doc.size, doc.odot, doc.arrow, doc.top)
    if violations:
        lines = "; ".join(v.describe(doc.names) for v in violations)
        raise CommandError(f"{path}: not an MTL-algebra: {lines}")
    return validate(doc.size, doc.odot, doc.arrow, doc.top, doc.names), doc


def _resolve_forall(run: Run, alg, doc, spec: str | None) -> tuple[int, ...]:
    if spec in (None, "file"):
        if doc.forall is None:
            raise CommandError(
                "no forall line in the file; pass --forall delta|identity|<ints>"
            )
        return tuple(doc.forall)
    if spec == "delta":
        return delta_table(alg)
    if spec == "identity":
        return identity_table(alg)
    try:
        table = tuple(int(v) for v in spec.replace(",", " ").split())
    except ValueError as exc:
        raise CommandError(f"bad --forall value {spec!r}") from exc
    return table


def _pair(run: Run, alg, doc, forall_spec: str | None, u2_parse: str):
    table = _resolve_forall(run, alg, doc, forall_spec)
    violations = quantifier_violations(alg, table, u2_parse)
    if violations:
        lines = "; ".join(v.describe(alg.names) for v in violations)
        raise CommandError(f"not a universal quantifier: {lines}")
    return make_umtl(alg, table, u2_parse, name=doc.name)


def _parse_members(alg, spec: str) -> frozenset[int]:
    by_name = {name: i for i, name in enumerate(alg.names)}
    members = set()
    for token in spec.replace(",", " ").split():
        if token in by_name:
            members.add(by_name[token])
        else:
            try:
                members.add(int(token))
            except ValueError:
                raise CommandError(f"unknown element {token!r}")
    bad = next((i for i in members if not (0 <= i < alg.size)), None)
    if bad is not None:
        raise CommandError(f"element index {bad} out of range")
    return frozenset(members)


# -- commands ----------------------------------------------------------------


def cmd_validate(run: Run, args) -> int:
    doc = _load_document(run, args.path)
    violations = check_mtl_tables(doc.size, doc.odot, doc.arrow, doc.top)
    ok = not violations
    run.check(
        "mtl-axioms",
        doc.name,
        ok,
        violations=[
            {"axiom": v.axiom, "witness": [doc.names[i] for i in v.witness]}
            for v in violations
        ],
    )
    if ok:
        run.say(f"{doc.name}: MTL-algebra: valid")
    else:
        run.say(f"{doc.name}: MTL-algebra: INVALID")
        for v in violations:
            run.say(f"  {v.describe(doc.names)}")
    if ok and doc.forall is not None:
        alg = validate(doc.size, doc.odot, doc.arrow, doc.top, doc.names)
        qv = quantifier_violations(alg, doc.forall, args.u2_parse)
        run.check(
            "quantifier-axioms",
            doc.name,
            not qv,
            violations=[
                {"axiom": v.axiom, "witness": [doc.names[i] for i in v.witness]}
                for v in qv
            ],
        )
        if qv:
            run.say(f"{doc.name}: forall: INVALID")
            for v in qv:
                run.say(f"  {v.describe(doc.names)}")
            ok = False
        else:
            run.say(f"{doc.name}: forall: valid universal quantifier")
    return OK if ok else PROPERTY_FAILS


def cmd_classify(run: Run, args) -> int:
    alg, doc = _validated_algebra(run, args.path)
    profile = classify(alg)
    run.check("subvariety-profile", doc.name, True, **profile.as_dict())
    flags = " ".join(f"{k}={str(v).lower()}" for k, v in profile.as_dict().items())
    run.say(f"{doc.name}: {flags}")
    return OK


def cmd_quantifiers(run: Run, args) -> int:
    alg, doc = _validated_algebra(run, args.path)
    if args.mode == "check":
        table = _resolve_forall(run, alg, doc, args.forall)
        violations = quantifier_violations(alg, table, args.u2_parse)
        run.check(
            "quantifier-axioms",
            doc.name,
            not violations,
            table=list(table),
            violations=[
                {"axiom": v.axiom, "witness": [alg.names[i] for i in v.witness]}
                for v in violations
            ],
        )
        if violations:
            run.say(f"{doc.name}: not a universal quantifier")
            for v in violations:
                run.say(f"  {v.describe(alg.names)}")
            return PROPERTY_FAILS
        run.say(f"{doc.name}: valid universal quantifier")
        q = make_umtl(alg, table, args.u2_parse, doc.name)
        failures = [c for c in properties_suite(q) if not c.passed]
        run.check(
            "quantifier-property-suite",
            doc.name,
            not failures,
            failures=[{"item": c.item, "witness": list(c.witness or ())} for c in failures],
        )
        return OK
    quantifiers = enumerate_quantifiers(alg, args.u2_parse, jobs=args.jobs)
    run.check(
        "quantifier-enumeration",
        doc.name,
        True,
        count=len(quantifiers),
        tables=[list(q.table) for q in quantifiers],
    )
    run.say(f"{doc.name}: {len(quantifiers)} universal quantifier(s)")
    for q in quantifiers:
        fix = ",".join(alg.name_of(i) for i in sorted(q.fixpoints))
        run.say(f"  table={list(q.table)} fixpoints={{{fix}}}")
    return OK


def cmd_filters(run: Run, args) -> int:
    alg, doc = _validated_algebra(run, args.path)
    kind = args.kind
    if kind in ("ufilters", "maximal-ufilters"):
        q = _pair(run, alg, doc, args.forall, args.u2_parse)
        family = (
            flt.enumerate_ufilters(q)
            if kind == "ufilters"
            else flt.maximal_ufilters(q)
        )
    elif kind == "filters":
        family = flt.enumerate_filters(alg)
    elif kind == "primes":
        family = flt.prime_filters(alg)
    elif kind == "minimal-primes":
        res = flt.minimal_primes(alg)
        family = res.by_inclusion
        run.check("minimal-prime-characterizations", doc.name, res.agree)
    elif kind == "maximal":
        family = flt.maximal_filters(alg)
    else:
        raise CommandError(f"unknown filter kind {kind!r}")
    run.check(
        f"{kind}-listing",
        doc.name,
        True,
        count=len(family),
        members=[[alg.name_of(i) for i in f.sorted_members()] for f in family],
    )
    run.say(f"{doc.name}: {len(family)} {kind}")
    for f in family:
        tag = "" if f.is_proper() else "  (improper)"
        run.say(f"  {f.label()}{tag}")
    return OK


def cmd_quotient(run: Run, args) -> int:
    alg, doc = _validated_algebra(run, args.path)
    q = _pair(run, alg, doc, args.forall, args.u2_parse)
    members = _parse_members(alg, args.filter)
    try:
        result = flt.quotient(q, members)
    except flt.QuotientError as exc:
        run.check("quotient", doc.name, False, error=str(exc))
        run.say(f"{doc.name}: quotient failed: {exc}")
        return PROPERTY_FAILS
    quotient_alg = result.quotient.algebra
    hom_ok, hom_witness = ana.is_u_homomorphism(result.class_map, q, result.quotient)
    run.check(
        "quotient",
        doc.name,
        hom_ok,
        classes=[[alg.name_of(i) for i in sorted(c)] for c in result.classes],
        size=quotient_alg.size,
        forall=list(result.quotient.forall),
        class_map_is_u_homomorphism=hom_ok,
    )
    run.say(
        f"{doc.name}: quotient has {quotient_alg.size} classes; "
        f"class map is a U-homomorphism: {hom_ok}"
    )
    for c in result.classes:
        run.say("  class " + "{" + ",".join(alg.name_of(i) for i in sorted(c)) + "}")
    return OK if hom_ok else PROPERTY_FAILS


def cmd_analyze(run: Run, args) -> int:
    alg, doc = _validated_algebra(run, args.path)
    q = _pair(run, alg, doc, args.forall, args.u2_parse)
    rep = ana.is_representable(q)
    strong = ana.is_strong(q)
    simple = ana.is_simple(q)
    semi = ana.is_semisimple(q)
    run.check(
        "analysis",
        doc.name,
        True,
        representable=rep.representable,
        representability_conditions_agree=rep.agree,
        strong=strong.strong,
        strong_matches_representable=strong.agree,
        simple=simple.simple,
        simplicity_conditions=list(simple.conditions()),
        semisimple=semi.semisimple,
        radical=[alg.name_of(i) for i in semi.radical_members],
    )
    run.say(
        f"{doc.name}: representable={str(rep.representable).lower()} "
        f"strong={str(strong.strong).lower()} simple={str(simple.simple).lower()} "
        f"semisimple={str(semi.semisimple).lower()}"
    )
    if rep.equation_witness:
        x, y = rep.equation_witness
        run.say(f"  representability witness: ({alg.name_of(x)},{alg.name_of(y)})")
    run.say(f"  radical: {{{','.join(alg.name_of(i) for i in semi.radical_members)}}}")
    all_good = rep.representable and strong.strong
    return OK if all_good else PROPERTY_FAILS


def cmd_audit(run: Run, args) -> int:
    directory = Path(args.corpus_dir) if args.corpus_dir else corpus_dir()
    paths = sorted(directory.glob("*.alg"))
    if not paths:
        raise CommandError(f"no .alg files under {directory}")
    entries = []
    for p in paths:
        alg, doc = _validated_algebra(run, str(p))
        entries.append(CorpusEntry(doc.name, alg, doc.forall))
    bundle = run_corpus_audit(entries, args.u2_parse, args.jobs)
    for chk in bundle.as_checks():
        run.checks.append(chk)
    disagreements = bundle.disagreements()
    run.say(
        f"audited {len(bundle.pairs)} pairs over {len(entries)} algebras: "
        f"{len(bundle.entries)} audit entries, {len(disagreements)} disagreement(s)"
    )
    for e in disagreements:
        run.say(f"  DISAGREES {e.check} on {e.subject}")
    run.say(f"schema soundness: {'pass' if bundle.soundness.all_valid else 'FAIL'}")
    return OK if not disagreements else PROPERTY_FAILS


def cmd_prove(run: Run, args) -> int:
    try:
        text = Path(args.proof_path).read_text(encoding="utf-8")
        proof = parse_proof_text(text)
    except (OSError, ProofFileError, FormulaSyntaxError) as exc:
        raise CommandError(f"{args.proof_path}: {exc}") from exc
    run.inputs.append(args.proof_path)
    catalog = SchemaCatalog.mmtl(args.u2_parse, extensions=tuple(args.extensions))
    if args.mode == "check":
        result = check_proof(catalog, proof)
        run.check(
            "proof-check",
            proof.name or Path(args.proof_path).name,
            result.ok,
            failed_step=result.failed_step,
            reason=result.reason,
        )
        if result.ok:
            run.say(
                f"proof accepted ({len(proof.steps)} steps, "
                f"conclusion {print_formula(proof.conclusion())})"
            )
            return OK
        run.say(f"proof REJECTED at step {result.failed_step}: {result.reason}")
        return PROPERTY_FAILS
    # deduce
    if not args.discharge:
        raise CommandError("deduce requires --discharge <hypothesis name>")
    try:
        result = deduction_transform(catalog, proof, args.discharge)
    except ValueError as exc:
        raise CommandError(str(exc)) from exc
    recheck = check_proof(catalog, result.proof)
    run.check(
        "deduction-transform",
        proof.name or Path(args.proof_path).name,
        recheck.ok,
        exponent=result.exponent,
        conclusion=print_formula(result.conclusion),
        weakened=result.weakened,
        steps=len(result.proof.steps),
    )
    run.say(
        f"discharged {args.discharge!r}: {result.describe()}; "
        f"output {len(result.proof.steps)} steps, re-checks: {recheck.ok}"
    )
    if args.out:
        Path(args.out).write_text(print_proof(result.proof), encoding="utf-8")
        run.say(f"wrote transformed proof to {args.out}")
    return OK if recheck.ok else PROPERTY_FAILS


def _load_pool(run: Run, pool_arg: str, u2_parse: str, jobs: int):
    path = Path(pool_arg) if pool_arg else corpus_dir()
    if path.is_dir():
        paths = sorted(path.glob("*.alg"))
    else:
        paths = [path]
    if not paths:
        raise CommandError(f"no .alg files under {path}")
    entries = []
    for p in paths:
        alg, doc = _validated_algebra(run, str(p))
        entries.append(CorpusEntry(doc.name, alg, doc.forall))
    return corpus_pairs(entries, u2_parse, jobs)


def cmd_logic(run: Run, args) -> int:
    try:
        goal = parse_formula(args.formula) if args.formula else None
    except FormulaSyntaxError as exc:
        raise CommandError(str(exc)) from exc
    if args.rule:
        shape = RULE_SHAPES.get(args.rule)
        if shape is None:
            raise CommandError(f"unknown rule {args.rule!r}")
        premises, conclusion = shape
        if goal is not None:
            raise CommandError("pass either a formula or --rule, not both")
        from .logic.formulas import Var

        binding = {"alpha": Var(0), "beta": Var(1)}
        goal = RuleInstance(
            tuple(instantiate(p, binding) for p in premises),
            instantiate(conclusion, binding),
        )
    if goal is None:
        raise CommandError("no formula or rule given")
    pool = _load_pool(run, args.pool, args.u2_parse, args.jobs)
    if args.mode == "valid":
        if isinstance(goal, RuleInstance):
            raise CommandError("validity mode expects a formula, not a rule")
        failures = []
        for q in pool:
            try:
                verdict = is_valid(q, goal, max_vars=args.max_vars)
            except VariableBudgetError as exc:
                raise CommandError(str(exc)) from exc
            if not verdict.valid:
                failures.append((q, verdict))
        run.check(
            "validity",
            print_formula(goal),
            not failures,
            pool_size=len(pool),
            failures=[
                {
                    "algebra": q.label(),
                    "valuation": {
                        f"p{k}": q.algebra.name_of(v)
                        for k, v in sorted(verdict.countervaluation.items())
                    },
                }
                for q, verdict in failures
            ],
        )
        if failures:
            q, verdict = failures[0]
            run.say(
                f"NOT valid on {q.label()}: "
                + ", ".join(
                    f"p{k}={q.algebra.name_of(v)}"
                    for k, v in sorted(verdict.countervaluation.items())
                )
            )
            return PROPERTY_FAILS
        run.say(f"valid on all {len(pool)} pool members")
        return OK
    # countermodel mode
    try:
        hit = countermodel_search(goal, pool, max_vars=args.max_vars, jobs=args.jobs)
    except VariableBudgetError as exc:
        raise CommandError(str(exc)) from exc
    subject = (
        print_formula(goal)
        if not isinstance(goal, RuleInstance)
        else args.rule or "rule"
    )
    if isinstance(hit, Countermodel):
        alg = pool[hit.pool_index].algebra
        run.check(
            "countermodel",
            subject,
            True,
            found=True,
            algebra=hit.algebra_label,
            valuation={f"p{k}": alg.name_of(v) for k, v in hit.valuation},
            value=alg.name_of(hit.value),
        )
        vals = ", ".join(f"p{k}={alg.name_of(v)}" for k, v in hit.valuation)
        run.say(
            f"countermodel on {hit.algebra_label}: {vals} "
            f"(value {alg.name_of(hit.value)})"
        )
        return PROPERTY_FAILS
    run.check(
        "countermodel",
        subject,
        True,
        found=False,
        pool_size=hit.pool_size,
        valuations_checked=hit.valuations_checked,
    )
    run.say(
        f"exhausted: no countermodel over {hit.pool_size} algebras "
        f"({hit.valuations_checked} valuations)"
    )
    return OK


def cmd_export(run: Run, args) -> int:
    if args.format != "dot":
        raise CommandError(f"unknown export format {args.format!r}")
    alg, doc = _validated_algebra(run, args.path)
    if args.what == "order":
        text = hasse.order_dot(alg, doc.name)
    elif args.what == "ufilters":
        q = _pair(run, alg, doc, args.forall, args.u2_parse)
        text = hasse.filter_lattice_dot(
            list(flt.enumerate_ufilters(q)), doc.name + "-ufilters"
        )
    elif args.what == "filters":
        text = hasse.filter_lattice_dot(
            list(flt.enumerate_filters(alg)), doc.name + "-filters"
        )
    else:
        raise CommandError(f"unknown export target {args.what!r}")
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        run.say(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    run.check("export", doc.name, True, what=args.what, bytes=len(text))
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="umtl",
        description="Finite MTL-algebras with universal quantifiers: "
        "validation, enumeration, structure, audits, and modal proof checking.",
    )
    parser.add_argument("--json", metavar="PATH", help="write a JSON report")
    parser.add_argument("--jobs", type=int, default=1, help="worker count")
    parser.add_argument(
        "--u2-parse",
        choices=("standard", "alt"),
        default="standard",
        help="parenthesization of the second quantifier axiom",
    )
    parser.add_argument(
        "--timings", action="store_true", help="include timings in the report"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the MTL axioms of a table file")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("classify", help="subvariety profile of an algebra")
    p.add_argument("path")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("quantifiers", help="enumerate or check quantifiers")
    p.add_argument("path")
    p.add_argument("mode", choices=("enum", "check"))
    p.add_argument("--forall", help="file|delta|identity|<ints>")
    p.set_defaults(func=cmd_quantifiers)

    p = sub.add_parser("filters", help="list filters of a given kind")
    p.add_argument("path")
    p.add_argument(
        "--kind",
        default="filters",
        choices=(
            "filters",
            "ufilters",
            "primes",
            "minimal-primes",
            "maximal",
            "maximal-ufilters",
        ),
    )
    p.add_argument("--forall", help="file|delta|identity|<ints>")
    p.set_defaults(func=cmd_filters)

    p = sub.add_parser("quotient", help="quotient by a U-filter")
    p.add_argument("path")
    p.add_argument("--filter", required=True, help="members, e.g. 'd,1'")
    p.add_argument("--forall", help="file|delta|identity|<ints>")
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("analyze", help="representable/strong/simple/semisimple")
    p.add_argument("path")
    p.add_argument("--forall", help="file|delta|identity|<ints>")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("audit", help="run the full audit over a corpus directory")
    p.add_argument("corpus_dir", nargs="?", help="defaults to the bundled corpus")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("prove", help="check a proof file or discharge a hypothesis")
    p.add_argument("mode", choices=("check", "deduce"))
    p.add_argument("proof_path")
    p.add_argument("--discharge", help="hypothesis name for deduce")
    p.add_argument("--out", help="write the transformed proof here")
    p.add_argument(
        "--extensions",
        nargs="*",
        default=[],
        choices=("INV", "WNM", "MV", "EM"),
        help="additional axiom schemas",
    )
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("logic", help="semantic validity and countermodel search")
    p.add_argument("mode", choices=("valid", "countermodel"))
    p.add_argument("formula", nargs="?", help="goal formula")
    p.add_argument("--rule", help="named rule, e.g. disj-box")
    p.add_argument("--pool", help="algebra file or corpus directory")
    p.add_argument("--max-vars", type=int, default=6)
    p.set_defaults(func=cmd_logic)

    p = sub.add_parser("export", help="DOT export of order or filter lattices")
    p.add_argument("format", choices=("dot",))
    p.add_argument("path")
    p.add_argument("--what", default="order", choices=("order", "filters", "ufilters"))
    p.add_argument("--forall", help="file|delta|identity|<ints>")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    run = Run(args)
    try:
        code = args.func(run, args)
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return run.finish(args.command, exc.code)
    except (InvalidAlgebraError, InvalidQuantifierError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return run.finish(args.command, INPUT_ERROR)
    return run.finish(args.command, code)


if __name__ == "__main__":
    sys.exit(main())
