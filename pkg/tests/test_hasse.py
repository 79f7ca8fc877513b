from __future__ import annotations

from umtl import filters as flt
from umtl.hasse import filter_lattice_dot, order_dot


def test_order_dot_covers(six):
    text = order_dot(six, "six")
    # cover edges only: 0<a,b; a<c,d; b<c; c,d<1 and nothing transitive
    for edge in ["n0 -> n1", "n0 -> n2", "n1 -> n3", "n1 -> n4", "n2 -> n3",
                 "n3 -> n5", "n4 -> n5"]:
        assert edge + ";" in text
    assert "n0 -> n3" not in text  # 0 < c is transitive, not a cover
    assert "n0 -> n5" not in text
    assert text.count("->") == 7


def test_filter_lattice_dot(six, six_block):
    fam = list(flt.enumerate_ufilters(six_block))
    text = filter_lattice_dot(fam, "ufilters")
    assert text.count("label=") == 4
    # {1} is covered by both proper filters, both covered by the carrier,
    # and the bottom-to-top edge is transitive
    assert "f0 -> f1;" in text and "f0 -> f2;" in text
    assert "f1 -> f3;" in text and "f2 -> f3;" in text
    assert "f0 -> f3" not in text


def test_dot_is_deterministic(six):
    assert order_dot(six) == order_dot(six)
