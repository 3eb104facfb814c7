"""Sequence parsing, n-term subsum DP, profile bookkeeping, Davenport."""

import pytest
from hypothesis import given, settings, strategies as st

from subsumlab.groups import GroupSubset, Subgroup, parse_group
from subsumlab.sequences import (
    GSequence,
    SequenceError,
    all_subsums,
    build_s_star,
    davenport_bruteforce,
    nterm_subsums,
    parse_sequence,
    push_forward,
    seq_stats,
    subsum_profile,
    subsum_table,
)
from subsumlab.groups import quotient_cached

from _oracles import all_subsums_oracle, davenport_oracle, nterm_subsums_oracle

GROUPS = [parse_group(s) for s in ["2", "5", "8", "2x2", "2x4", "3x3", "12"]]


@st.composite
def group_and_sequence(draw, min_len=1, max_len=8):
    g = draw(st.sampled_from(GROUPS))
    length = draw(st.integers(min_len, max_len))
    terms = draw(st.lists(st.integers(0, g.order - 1),
                          min_size=length, max_size=length))
    return g, GSequence.from_terms(g, terms)


# ---------------------------------------------------------------------------
# parsing and multiset algebra


def test_parse_sequence_examples():
    g = parse_group("8")
    s = parse_sequence(g, "0^2;4^2;1^2;5^2")
    assert s.length == 8
    assert s.multiplicity(0) == s.multiplicity(4) == 2
    assert parse_sequence(g, s.format()) == s
    g2 = parse_group("2x4")
    s2 = parse_sequence(g2, "(1,0)^3;(0,1)")
    assert s2.length == 4
    assert parse_sequence(g2, s2.format()) == s2


def test_parse_sequence_whitespace_insignificant():
    g = parse_group("8")
    assert parse_sequence(g, " 0 ^ 2 ; 4^2 ") == parse_sequence(g, "0^2;4^2")


def test_parse_sequence_rejects_garbage():
    g = parse_group("8")
    with pytest.raises(SequenceError):
        parse_sequence(g, "0^-1")
    with pytest.raises(Exception):
        parse_sequence(parse_group("2x4"), "3")  # arity mismatch
    # rank-1 literals reduce modulo the order
    assert parse_sequence(g, "9") == parse_sequence(g, "1")


@given(group_and_sequence(), st.data())
def test_concat_remove_roundtrip(gs, data):
    g, s = gs
    terms = data.draw(st.lists(st.integers(0, g.order - 1), max_size=5))
    t = GSequence.from_terms(g, terms)
    combined = s.concat(t)
    assert combined.remove(t) == s
    assert combined.length == s.length + t.length
    with pytest.raises(SequenceError):
        s.remove(s.concat(t.concat(GSequence.from_terms(g, [0]))))


@given(group_and_sequence(), st.data())
def test_translate_preserves_shape(gs, data):
    g, s = gs
    b = data.draw(st.integers(0, g.order - 1))
    t = s.translate(b)
    assert t.length == s.length
    assert sorted(t.mult) == sorted(s.mult)
    assert t.translate(g.neg(b)) == s


def test_seq_stats():
    g = parse_group("8")
    s = parse_sequence(g, "1^3;5")
    total, h, supp = seq_stats(s)
    assert total.index == 0  # 1+1+1+5 = 8 = 0 mod 8
    assert h == 3
    assert set(supp.indices()) == {1, 5}


# ---------------------------------------------------------------------------
# n-term subsums vs oracle


def test_nterm_subsums_worked_instance():
    g = parse_group("8")
    s = parse_sequence(g, "0^2;4^2;1^2;5^2")
    sig = nterm_subsums(s, 2)
    assert set(sig.indices()) == {0, 1, 2, 4, 5, 6}
    assert sig.size == 6
    from subsumlab.groups import stabilizer
    assert set(stabilizer(sig).carrier.indices()) == {0, 4}


@given(group_and_sequence(), st.data())
def test_nterm_subsums_matches_oracle(gs, data):
    g, s = gs
    n = data.draw(st.integers(0, s.length))
    assert set(nterm_subsums(s, n).indices()) == nterm_subsums_oracle(s, n)


@given(group_and_sequence())
def test_all_subsums_matches_oracle(gs):
    _, s = gs
    assert set(all_subsums(s).indices()) == all_subsums_oracle(s)


@given(group_and_sequence())
def test_subsum_table_rows_are_each_n(gs):
    _, s = gs
    rows = subsum_table(s, s.length)
    for n in range(s.length + 1):
        assert rows[n] == nterm_subsums(s, n).bits


def test_nterm_subsums_range_errors():
    g = parse_group("8")
    s = parse_sequence(g, "1^3")
    with pytest.raises(SequenceError):
        nterm_subsums(s, 4)
    with pytest.raises(SequenceError):
        nterm_subsums(s, -1)


# ---------------------------------------------------------------------------
# push-forward and profile


def test_push_forward_coset_merge():
    g = parse_group("8")
    h = Subgroup(GroupSubset.from_indices(g, [0, 4]))
    q = quotient_cached(g, h)
    s = parse_sequence(g, "0^2;4^2")
    phi = push_forward(s, q)
    assert phi.length == 4
    assert phi.multiplicity(q.image(0)) == 4


def test_profile_worked_instance():
    g = parse_group("8")
    s = parse_sequence(g, "0^2;4^2;1^2;5^2")
    p = subsum_profile(s, 2, s.length)
    assert p.H.order == 2 and set(p.H.carrier.indices()) == {0, 4}
    assert p.N == 2 and p.e == 0 and p.rho == 0
    assert p.bound_primary == p.bound_alt == 6
    assert p.sigma_n.size == 6


@given(group_and_sequence(), st.data())
def test_profile_bound_forms_agree_and_z(gs, data):
    g, s = gs
    n = data.draw(st.integers(1, s.length))
    p = subsum_profile(s, n, s.length)
    assert p.bound_primary == p.bound_alt
    assert p.rho == p.N * p.H.order * n + p.e - s.length
    # e counts exactly the terms outside phi^-1(X)
    assert s.count_outside(p.Z_mask) == p.e


@given(group_and_sequence(), st.data())
def test_s_star_identities(gs, data):
    # identities require h(S) <= n <= |S|
    g, s = gs
    n = data.draw(st.integers(s.max_multiplicity(), s.length))
    p = subsum_profile(s, n, s.length)
    star = build_s_star(s, p, n)
    assert s.is_subsequence_of(star)
    assert star.length == s.length + p.rho
    assert nterm_subsums(star, n) == p.sigma_n


# ---------------------------------------------------------------------------
# Davenport constant


@settings(deadline=None)
@given(st.sampled_from([parse_group(s) for s in ["2", "3", "4", "2x2", "5", "6", "2x4"]]))
def test_davenport_matches_oracle(g):
    assert davenport_bruteforce(g) == davenport_oracle(g)


def test_davenport_known_values():
    for m in range(1, 9):
        assert davenport_bruteforce(parse_group(str(m))) == m
    assert davenport_bruteforce(parse_group("2x2")) == 3
    assert davenport_bruteforce(parse_group("3x3")) == 5
