"""Group arithmetic, subsets, subgroups, quotients -- checked against the
brute-force oracles in _oracles.py and by algebraic property tests."""

import pytest
from hypothesis import given, settings, strategies as st

from subsumlab.groups import (
    GroupError,
    GroupSpec,
    GroupSubset,
    Subgroup,
    abelian_groups_of_order,
    affine_span,
    enumerate_subgroups,
    iterated_sumset,
    iter_bits,
    make_group,
    parse_element,
    parse_group,
    quotient_cached,
    representation_count,
    representation_min,
    stabilizer,
    subgroup_embedding,
    subgroup_generated,
    sumset,
    verify_subgroup,
)

from _oracles import (
    affine_span_oracle,
    iterated_sumset_oracle,
    representation_count_oracle,
    stabilizer_oracle,
    subset,
    sumset_oracle,
)

GROUPS = [parse_group(s) for s in
          ["1", "2", "5", "8", "12", "2x2", "2x4", "3x3", "2x2x2", "2x6", "3x9"]]


def groups_strategy():
    return st.sampled_from(GROUPS)


@st.composite
def group_and_elements(draw, count=2):
    g = draw(groups_strategy())
    idx = st.integers(0, g.order - 1)
    return (g, *[draw(idx) for _ in range(count)])


@st.composite
def group_and_subset(draw, min_size=1):
    g = draw(groups_strategy())
    size = draw(st.integers(min_size, g.order))
    elems = draw(st.sets(st.integers(0, g.order - 1),
                         min_size=size, max_size=size))
    return g, elems


# ---------------------------------------------------------------------------
# spec strings, normalization, element literals


def test_parse_group_normalizes_factors():
    assert parse_group("4x2").invariant_factors == (2, 4)
    assert make_group([2, 3, 3]).spec_string() == "3x6"
    assert parse_group("2x4x8").invariant_factors == (2, 4, 8)
    assert parse_group("6").invariant_factors == (6,)


def test_parse_group_rejects_garbage():
    with pytest.raises(GroupError):
        parse_group("abc")
    with pytest.raises(GroupError):
        make_group([])
    with pytest.raises(GroupError):
        make_group([0, 4])


def test_element_literal_roundtrip():
    g = parse_group("2x4")
    for i in range(g.order):
        assert parse_element(g, g.format_element(i)) == i
    c8 = parse_group("8")
    assert parse_element(c8, "5") == 5
    assert parse_element(c8, "-1") == 7


def test_group_invariants():
    g = parse_group("2x4x8")
    assert g.order == 64 and g.exponent == 8 and g.rank == 3
    assert all(g.invariant_factors[i] % g.invariant_factors[i - 1] == 0
               for i in range(1, g.rank))


@given(group_and_elements(count=3))
def test_add_is_abelian_group_law(ge):
    g, a, b, c = ge
    assert g.add(a, b) == g.add(b, a)
    assert g.add(g.add(a, b), c) == g.add(a, g.add(b, c))
    assert g.add(a, 0) == a
    assert g.add(a, g.neg(a)) == 0


@given(group_and_elements(count=1))
def test_element_order_divides_exponent(ge):
    g, a = ge
    o = g.element_order(a)
    assert g.scale(o, a) == 0
    assert g.exponent % o == 0
    assert all(g.scale(t, a) != 0 for t in range(1, o))


@given(group_and_subset(), st.data())
def test_translate_mask_matches_elementwise(gs, data):
    g, elems = gs
    b = data.draw(st.integers(0, g.order - 1))
    mask = subset(g, elems).bits
    translated = g.translate_mask(mask, b)
    assert set(iter_bits(translated)) == {g.add(x, b) for x in elems}


@given(group_and_subset())
def test_negate_mask_matches_elementwise(gs):
    g, elems = gs
    mask = subset(g, elems).bits
    assert set(iter_bits(g.negate_mask(mask))) == {g.neg(x) for x in elems}


# ---------------------------------------------------------------------------
# sumsets and stabilizers against oracles


@given(group_and_subset(), group_and_subset())
def test_sumset_matches_oracle(gs1, gs2):
    g, a = gs1
    _, b = gs2
    b = {x % g.order for x in b}
    out = sumset(subset(g, a), subset(g, b))
    assert set(out.indices()) == sumset_oracle(g, a, b)


@given(group_and_subset(), st.integers(0, 5))
def test_iterated_sumset_matches_oracle(gs, n):
    g, a = gs
    out = iterated_sumset(subset(g, a), n)
    assert set(out.indices()) == iterated_sumset_oracle(g, a, n)


@given(group_and_subset())
def test_stabilizer_matches_oracle(gs):
    g, a = gs
    h = stabilizer(subset(g, a))
    assert set(h.carrier.indices()) == stabilizer_oracle(g, a)
    verify_subgroup(g, h.carrier)


@given(group_and_subset())
def test_affine_span_matches_oracle(gs):
    g, a = gs
    span = affine_span(subset(g, a))
    assert set(span.carrier.indices()) == affine_span_oracle(g, a)


@given(group_and_subset())
def test_subgroup_generated_is_closure(gs):
    g, a = gs
    h = subgroup_generated(subset(g, a))
    verify_subgroup(g, h.carrier)
    assert all(x in h.carrier for x in a)
    # minimality: no proper subgroup of h contains all generators
    for sub in enumerate_subgroups(g):
        if all(x in sub.carrier for x in a):
            assert sub.carrier.bits & h.carrier.bits == h.carrier.bits or \
                sub.order >= h.order


@settings(max_examples=30)
@given(group_and_subset(), st.data())
def test_representation_count_matches_oracle(gs, data):
    g, a = gs
    b = data.draw(st.sets(st.integers(0, g.order - 1), min_size=1, max_size=4))
    x = data.draw(st.integers(0, g.order - 1))
    sets = [subset(g, a), subset(g, b)]
    assert representation_count(sets, x) == \
        representation_count_oracle(g, [set(a), set(b)], x)


@given(group_and_subset())
def test_representation_min_is_minimum(gs):
    g, a = gs
    sets = [subset(g, a), subset(g, a)]
    rmin, argmin = representation_min(sets)
    total = sumset(sets[0], sets[1])
    counts = {x: representation_count(sets, x) for x in total.indices()}
    assert rmin == min(counts.values())
    assert counts[argmin] == rmin


# ---------------------------------------------------------------------------
# subgroup lattice / quotients


def test_enumerate_subgroups_known_counts():
    # number of subgroups: C8 -> 4, C12 -> 6, C2xC2 -> 5, C2xC4 -> 8
    assert len(enumerate_subgroups(parse_group("8"))) == 4
    assert len(enumerate_subgroups(parse_group("12"))) == 6
    assert len(enumerate_subgroups(parse_group("2x2"))) == 5
    assert len(enumerate_subgroups(parse_group("2x4"))) == 8


def test_abelian_groups_of_order_counts():
    # partition-counting: order 16 -> 5 groups, order 8 -> 3, prime -> 1
    assert len(abelian_groups_of_order(16)) == 5
    assert len(abelian_groups_of_order(8)) == 3
    assert len(abelian_groups_of_order(7)) == 1
    assert {g.spec_string() for g in abelian_groups_of_order(12)} == {"12", "2x6"}


@pytest.mark.parametrize("spec", ["8", "2x4", "3x3", "12", "2x2x2"])
def test_quotient_structure_is_homomorphism(spec):
    g = parse_group(spec)
    for h in enumerate_subgroups(g):
        q = quotient_cached(g, h)
        spec_q = q.quotient_spec
        assert spec_q.order * h.order == g.order
        for a in range(g.order):
            for b in range(g.order):
                assert q.image(g.add(a, b)) == spec_q.add(q.image(a), q.image(b))
        # kernel is exactly H
        assert {a for a in range(g.order) if q.image(a) == 0} == \
            set(h.carrier.indices())


def test_quotient_c8_mod_04():
    g = parse_group("8")
    h = Subgroup(GroupSubset.from_indices(g, [0, 4]))
    q = quotient_cached(g, h)
    assert q.quotient_spec.spec_string() == "4"
    assert q.image(0) == q.image(4)
    assert q.preimage_mask(1 << q.image(1)) == (1 << 1) | (1 << 5)


@pytest.mark.parametrize("spec", ["12", "2x4", "3x3"])
def test_subgroup_embedding_roundtrip(spec):
    g = parse_group(spec)
    for k in enumerate_subgroups(g):
        emb = subgroup_embedding(g, k)
        assert emb.spec.order == k.order
        members = list(k.carrier.indices())
        for a in range(emb.spec.order):
            assert emb.from_parent[emb.to_parent[a]] == a
            for b in range(emb.spec.order):
                assert emb.to_parent[emb.spec.add(a, b)] == \
                    g.add(emb.to_parent[a], emb.to_parent[b])
        assert set(emb.to_parent) == set(members)


def test_verify_subgroup_rejects_nonsubgroup():
    g = parse_group("8")
    with pytest.raises(GroupError):
        verify_subgroup(g, GroupSubset.from_indices(g, [0, 1, 2]))
    with pytest.raises(GroupError):
        verify_subgroup(g, GroupSubset.from_indices(g, [1, 2]))
