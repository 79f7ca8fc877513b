"""Constructions of the seven bundled modal derivations.

Each function returns a checking Proof; the shipped .prf files are the
printed forms of these.  Derived-rule steps come from ProofBuilder, so
every proof bottoms out in axiom instances, modus ponens and
necessitation.
"""

from __future__ import annotations

from .builder import ProofBuilder
from .formulas import Bot, Box, Impl, Var, iff
from .proofs import Proof
from .schemas import SchemaCatalog

P0 = Var(0)
P1 = Var(1)


def box_top(catalog: SchemaCatalog) -> Proof:
    """box top, via bot -> bot and necessitation."""
    b = ProofBuilder(catalog)
    t = b.axiom("A10", alpha=Bot())
    b.nec(t)
    b.proof.name = "box-top"
    return b.proof


def box_to_double_box(catalog: SchemaCatalog) -> Proof:
    """box p0 -> box box p0."""
    b = ProofBuilder(catalog)
    b.box_idem(P0)
    b.proof.name = "box-idempotence"
    return b.proof


def congruence_rule(catalog: SchemaCatalog) -> Proof:
    """From p0 <-> p1 conclude box p0 -> box p1."""
    b = ProofBuilder(catalog, [("equiv", iff(P0, P1))])
    e = b.hyp("equiv")
    a2 = b.axiom("A2", alpha=Impl(P0, P1), beta=Impl(P1, P0))
    forward = b.mp(e, a2)
    m1 = b.axiom("M1", alpha=P0)
    chained = b.trans(m1, forward)
    n = b.nec(chained)
    m3a = b.axiom("M3a", alpha=P0, beta=P1)
    b.mp(n, m3a)
    b.proof.name = "congruence-rule"
    return b.proof


def box_carries_over_implication(catalog: SchemaCatalog) -> Proof:
    """From box p0 and p0 -> p1 conclude box p1."""
    b = ProofBuilder(catalog, [("boxed", Box(P0)), ("imp", Impl(P0, P1))])
    imp = b.hyp("imp")
    m1 = b.axiom("M1", alpha=P0)
    chained = b.trans(m1, imp)
    n = b.nec(chained)
    m3a = b.axiom("M3a", alpha=P0, beta=P1)
    boxed_imp = b.mp(n, m3a)
    b.mp(b.hyp("boxed"), boxed_imp)
    b.proof.name = "box-carries-implication"
    return b.proof


def boxed_modus_ponens(catalog: SchemaCatalog) -> Proof:
    """From box p0 and box(p0 -> p1) conclude box p1."""
    b = ProofBuilder(
        catalog, [("boxed", Box(P0)), ("boxed_imp", Box(Impl(P0, P1)))]
    )
    k = b.k_distribution(P0, P1)
    s = b.mp(b.hyp("boxed_imp"), k)
    b.mp(b.hyp("boxed"), s)
    b.proof.name = "boxed-modus-ponens"
    return b.proof


def guarded_necessitation(catalog: SchemaCatalog) -> Proof:
    """From box p0 -> p1 conclude box p0 -> box p1."""
    b = ProofBuilder(catalog, [("guarded", Impl(Box(P0), P1))])
    n = b.nec(b.hyp("guarded"))
    m3a = b.axiom("M3a", alpha=P0, beta=P1)
    b.mp(n, m3a)
    b.proof.name = "guarded-necessitation"
    return b.proof


def k_axiom_form(catalog: SchemaCatalog) -> Proof:
    """box(p0 -> p1) -> (box p0 -> box p1)."""
    b = ProofBuilder(catalog)
    b.k_distribution(P0, P1)
    b.proof.name = "k-distribution"
    return b.proof


BUNDLED = (
    ("box-top", box_top),
    ("box-idempotence", box_to_double_box),
    ("congruence-rule", congruence_rule),
    ("box-carries-implication", box_carries_over_implication),
    ("boxed-modus-ponens", boxed_modus_ponens),
    ("guarded-necessitation", guarded_necessitation),
    ("k-distribution", k_axiom_form),
)


def bundled_proofs(catalog: SchemaCatalog) -> list[Proof]:
    return [build(catalog) for _, build in BUNDLED]
