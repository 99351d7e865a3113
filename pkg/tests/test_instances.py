"""Instance construction, the catalog, composition, and serialization."""

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from indexcode import (
    CATALOG_NAMES,
    IndexOutOfRange,
    SelfInclusion,
    UnknownInstance,
    catalog_get,
    compose_noway,
    compose_twoway,
    from_interfering,
    instance_from_json,
    instance_to_json,
    instance_validate,
    interfering_sets,
    load_instance,
    restrict,
)

# independent transcriptions of the catalog definitions
I1_SIDE_INFO = (
    {4, 6, 7},
    {1, 5, 6},
    {1, 2, 7},
    {2, 3, 6},
    {1, 3, 4},
    {3, 5, 7},
    {2, 4, 5},
    set(),
    set(),
    set(),
)
I2_INTERFERING_SPOT = {
    1: {2, 3, 5, 11, 12, 13, 15, 22, 23, 24, 25, 26},
    4: {5, 6, 14, 15, 16},
    7: {17},
    10: {3, 4, 7, 13, 14, 17, 20},
    14: {4},
    17: {7},
    18: {1, 5, 7, 8, 11, 15, 17},
    21: {4, 6, 14, 16, 22},
    26: {5, 6, 15, 16, 25},
}


@st.composite
def instances(draw, max_m=8):
    m = draw(st.integers(min_value=1, max_value=max_m))
    side = []
    for i in range(1, m + 1):
        others = [j for j in range(1, m + 1) if j != i]
        side.append(draw(st.frozensets(st.sampled_from(others)) if others else st.just(frozenset())))
    return instance_validate(m, side)


def test_catalog_names():
    assert CATALOG_NAMES == ("I1", "I2", "I3", "I4")
    with pytest.raises(UnknownInstance):
        catalog_get("I9")


def test_i1_definition(i1):
    assert i1.m == 10
    assert tuple(set(s) for s in i1.side_info) == I1_SIDE_INFO
    # the last three users know nothing and interfere with everyone
    for u in (8, 9, 10):
        assert i1.known(u) == frozenset()
        assert i1.interfering(u) == frozenset(range(1, 11)) - {u}


def test_interfering_is_complement(i1, i2):
    for inst in (i1, i2):
        for i in range(1, inst.m + 1):
            expect = set(range(1, inst.m + 1)) - set(inst.known(i)) - {i}
            assert set(inst.interfering(i)) == expect


def test_i2_interfering_spot_rows(i2):
    assert i2.m == 26
    for user, bset in I2_INTERFERING_SPOT.items():
        assert i2.interfering(user) == frozenset(bset)


def test_i2_mutual_pairs(i2):
    # the three disjoint user groups that interfere both ways
    for a, b in ((7, 17), (8, 18), (9, 19), (10, 20), (21, 22), (23, 24), (25, 26)):
        assert b in i2.interfering(a)
        assert a in i2.interfering(b)


def test_catalog_compositions_match_operators(i1, i2, i3, i4):
    assert i3.side_info == compose_noway(i1, i2).side_info
    assert i4.side_info == compose_twoway(i1, i2).side_info
    assert i3.m == i4.m == 36


def test_known_bounds_metadata():
    entry = catalog_get("I1")
    bounds = {b.name: b.value for b in entry.known_bounds}
    assert bounds == {"mais": 6, "code_rate": 6}
    assert {b.name: b.value for b in catalog_get("I3").known_bounds} == {
        "mais": 12,
        "code_rate": 12,
    }


def test_validation_errors():
    with pytest.raises(SelfInclusion):
        instance_validate(2, [{1}, {2}])
    with pytest.raises(IndexOutOfRange):
        instance_validate(2, [{3}, set()])
    with pytest.raises(IndexOutOfRange):
        instance_validate(2, [{0}, set()])
    with pytest.raises(IndexOutOfRange):
        instance_validate(3, [set(), set()])
    with pytest.raises(SelfInclusion):
        from_interfering(2, [{1}, set()])


@given(instances())
@settings(max_examples=100)
def test_interfering_round_trip(inst):
    assert from_interfering(inst.m, interfering_sets(inst)).side_info == inst.side_info


@given(instances())
@settings(max_examples=100)
def test_json_round_trip(inst):
    again = instance_from_json(instance_to_json(inst))
    assert again.m == inst.m and again.side_info == inst.side_info


def test_json_shape(i1):
    payload = json.loads(instance_to_json(i1))
    assert payload["m"] == 10
    assert payload["A"][0] == [4, 6, 7]
    assert payload["name"] == "I1"


def test_compose_noway_blocks_are_isolated(i1, i2, i3):
    assert i3.m == 36
    for i in range(1, 11):
        assert i3.known(i) == i1.known(i)
        assert not i3.known(i) & set(range(11, 37))
    for i in range(11, 37):
        assert i3.known(i) == frozenset(v + 10 for v in i2.known(i - 10))


def test_compose_twoway_cross_knowledge(i1, i2, i4):
    block_b = frozenset(range(11, 37))
    block_a = frozenset(range(1, 11))
    for i in range(1, 11):
        assert block_b <= i4.known(i)
        assert i4.known(i) - block_b == i1.known(i)
    for i in range(11, 37):
        assert block_a <= i4.known(i)
        assert i4.known(i) - block_a == frozenset(v + 10 for v in i2.known(i - 10))


@given(instances(max_m=4), instances(max_m=4), instances(max_m=4))
@settings(max_examples=50)
def test_compose_noway_associative(a, b, c):
    left = compose_noway(compose_noway(a, b), c)
    right = compose_noway(a, compose_noway(b, c))
    assert left.m == right.m == a.m + b.m + c.m
    assert left.side_info == right.side_info


def test_restrict_relabels(i1):
    sub = restrict(i1, range(1, 8))
    assert sub.m == 7
    assert sub.interfering(1) == frozenset({2, 3, 5})
    assert sub.known(4) == frozenset({2, 3, 6})
    # non-contiguous subsets relabel in order
    sub2 = restrict(i1, (9, 2, 5))
    assert sub2.m == 3
    assert sub2.known(1) == frozenset({2})  # old user 2 knew old user 5
    with pytest.raises(IndexOutOfRange):
        restrict(i1, [11])


def test_load_instance_name_and_file(tmp_path, i1):
    assert load_instance("I1").side_info == i1.side_info
    path = tmp_path / "inst.json"
    path.write_text(instance_to_json(i1))
    assert load_instance(str(path)).side_info == i1.side_info
    with pytest.raises(UnknownInstance):
        load_instance("no-such-instance")
