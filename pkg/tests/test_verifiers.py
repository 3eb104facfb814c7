"""Instance-level bound checkers and the structural sumset classifier."""

import pytest
from hypothesis import given, settings, strategies as st

from subsumlab.groups import (
    GroupSubset,
    abelian_groups_of_order,
    affine_span,
    iterated_sumset,
    parse_group,
)
from subsumlab.sequences import GSequence, nterm_subsums, parse_sequence
from subsumlab.verifiers import (
    CheckError,
    check_cor1,
    check_cor2,
    check_kneser,
    check_lemma_extra,
    check_pigeonhole,
    check_subsum_kneser,
)

from _oracles import subset

GROUPS = [parse_group(s) for s in ["2", "5", "6", "8", "2x2", "2x4", "3x3"]]


@st.composite
def group_and_parts(draw, max_parts=4):
    g = draw(st.sampled_from(GROUPS))
    count = draw(st.integers(1, max_parts))
    parts = []
    for _ in range(count):
        elems = draw(st.sets(st.integers(0, g.order - 1), min_size=1,
                             max_size=g.order))
        parts.append(subset(g, elems))
    return g, parts


@st.composite
def sequence_instance(draw, max_len=8):
    g = draw(st.sampled_from(GROUPS))
    length = draw(st.integers(1, max_len))
    terms = draw(st.lists(st.integers(0, g.order - 1),
                          min_size=length, max_size=length))
    s = GSequence.from_terms(g, terms)
    n = draw(st.integers(s.max_multiplicity(), s.length))
    return g, s, n


# ---------------------------------------------------------------------------
# Kneser-type bounds


def test_kneser_worked_instances():
    c6 = parse_group("6")
    rep = check_kneser([subset(c6, {0, 3}), subset(c6, {0, 3})])
    assert rep.holds and rep.lhs == 2 and rep.rhs == 2

    c5 = parse_group("5")
    rep = check_kneser([subset(c5, {0, 1}), subset(c5, {0, 1})])
    assert rep.holds and rep.lhs == 3 and rep.rhs == 3

    single = check_kneser([subset(c5, {0, 2})])
    assert single.holds


@given(group_and_parts())
def test_kneser_never_violated(gp):
    _, parts = gp
    rep = check_kneser(parts)
    assert rep.holds
    assert rep.lhs >= rep.rhs


def test_subsum_kneser_worked_instances():
    g = parse_group("8")
    s = parse_sequence(g, "0^2;4^2;1^2;5^2")
    rep = check_subsum_kneser(s, 2)
    assert rep.holds and rep.lhs == 6 and rep.rhs == 6

    trivial = check_subsum_kneser(parse_sequence(g, "0^3"), 3)
    assert trivial.holds and trivial.lhs == 1 and trivial.rhs == 1


@given(sequence_instance())
def test_subsum_kneser_never_violated(inst):
    _, s, n = inst
    rep = check_subsum_kneser(s, n)
    assert rep.holds, rep.detail


# ---------------------------------------------------------------------------
# pigeonhole bound


def test_pigeonhole_worked_instances():
    c3 = parse_group("3")
    rep = check_pigeonhole(subset(c3, {0, 1}), subset(c3, {0, 1}))
    assert rep.holds
    assert rep.witnesses["r"] == 1
    assert rep.lhs >= 1  # lhs carries the minimum representation count

    full = GroupSubset(c3, c3.full_mask)
    rep = check_pigeonhole(full, full)
    assert rep.holds and rep.lhs == 3

    c6 = parse_group("6")
    rep = check_pigeonhole(subset(c6, {0, 3}), subset(c6, {0, 3}))
    assert rep.holds
    assert rep.witnesses.get("coset_case")  # |A|+|B| = 4 >= |H|+1 = 3


@given(group_and_parts(max_parts=2))
def test_pigeonhole_never_violated(gp):
    _, parts = gp
    if len(parts) == 1:
        parts = parts * 2
    rep = check_pigeonhole(parts[0], parts[1])
    assert rep.holds, rep.detail


# ---------------------------------------------------------------------------
# structural classification of small iterated sumsets


def test_cor1_bound_case():
    g = parse_group("4")
    rep = check_cor1(subset(g, {0, 1}), 5)
    assert rep.holds and rep.lhs == 4 and rep.rhs == 4


def test_cor1_template_1b():
    g = parse_group("3x3")
    a = GroupSubset.from_indices(g, [g.index((1, 0)), g.index((2, 0)),
                                     g.index((0, 1))])
    assert iterated_sumset(a, 3).size == 8
    rep = check_cor1(a, 3)
    assert rep.holds
    assert rep.witnesses["template"] == "1(b)"
    assert rep.witnesses["K_order"] == 1
    assert rep.witnesses["H_order"] == 3


def test_cor1_template_2b():
    g = parse_group("2x4")
    a = GroupSubset.from_indices(g, [g.index((0, 0)), g.index((1, 0)),
                                     g.index((0, 1))])
    assert iterated_sumset(a, 3).size == 7
    rep = check_cor1(a, 3)
    assert rep.holds
    assert rep.witnesses["template"] == "2(b)"
    assert rep.witnesses["H0_order"] == 2
    assert rep.witnesses["K_order"] == 1
    # |3A| = |G| - |H0| + |K|
    assert 7 == g.order - 2 + 1


def test_cor1_preconditions():
    g = parse_group("4")
    with pytest.raises(CheckError):
        check_cor1(subset(g, {0, 2}), 3)   # span not full
    with pytest.raises(CheckError):
        check_cor1(subset(g, {0, 1}), 2)   # n < 3


def test_cor1_sweep_small_groups_no_fallthrough():
    for order in range(2, 8):
        for g in abelian_groups_of_order(order):
            exp = g.exponent
            for bits in range(1, 1 << g.order):
                a = GroupSubset(g, bits)
                if not affine_span(a).is_full:
                    continue
                for n in (exp - 1, exp, exp + 1):
                    if n < 3:
                        continue
                    rep = check_cor1(a, n)
                    assert rep.holds, (g.spec_string(), bits, n, rep.detail)


def test_cor2_worked_instances():
    c4 = parse_group("4")
    rep = check_cor2(subset(c4, {0, 1, 2}), 4)
    assert rep.holds and rep.lhs == 4  # 4A = C4

    g = parse_group("2x4")
    a = GroupSubset.from_indices(g, [g.index((0, 0)), g.index((1, 0)),
                                     g.index((0, 1))])
    rep = check_cor2(a, 3)
    assert rep.holds and rep.lhs == 7  # 3A != G, chain template
    assert rep.witnesses["template"] == "2(b)" and rep.witnesses["r"] == 1
    assert rep.witnesses["exp_composite"] and rep.witnesses["noncyclic"]

    full = GroupSubset(c4, c4.full_mask)
    rep = check_cor2(full, 2)
    assert rep.holds and rep.lhs == 4


def test_cor2_precondition():
    g = parse_group("8")
    with pytest.raises(CheckError):
        check_cor2(subset(g, {0, 1}), 3)   # n|A| = 6 <= 8


# ---------------------------------------------------------------------------
# span dichotomy under the smallness hypothesis


def test_lemma_extra_worked_instances():
    g = parse_group("8")
    s = parse_sequence(g, "0^2;4^2;1^2;5^2")
    rep = check_lemma_extra(s, s, 2)
    assert rep.holds and rep.witnesses  # triggered: |Sigma_2| = 6 < 7
    assert rep.witnesses["span_Z_order"] == 8 == g.order

    c4 = parse_group("4")
    s = parse_sequence(c4, "0^5;2^5")
    rep = check_lemma_extra(s, s, 5)
    assert rep.holds and rep.witnesses["span_Z_order"] == 2
    assert rep.witnesses["H_order"] == 2  # Z spans exactly H

    s = parse_sequence(c4, "0;1;2;3")
    rep = check_lemma_extra(s, s, 1)
    assert rep.holds and rep.detail == "hypothesis not triggered"


@given(sequence_instance())
def test_lemma_extra_never_violated(inst):
    _, s, n = inst
    rep = check_lemma_extra(s, s, n)
    assert rep.holds, rep.detail


# ---------------------------------------------------------------------------
# report plumbing


def test_check_report_serializes():
    g = parse_group("8")
    rep = check_subsum_kneser(parse_sequence(g, "0^2;4^2;1^2;5^2"), 2)
    data = rep.to_dict()
    assert data["name"] == rep.name
    assert data["holds"] is True
    assert isinstance(data["lhs"], int) and isinstance(data["rhs"], int)
