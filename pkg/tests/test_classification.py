import itertools

from hypothesis import given

from birkhoff6.classification import (
    CASE8_SUBCASES, Relation, admissible_endpoint_rows, classify_endpoint,
    enumerate_case_space, relation_of,
)
from birkhoff6.model import condition
from helpers import endpoints


def test_census_counts():
    c = enumerate_case_space()
    assert (c.total_ordered, c.pure, c.mixed_canonical, c.redundant) == (27, 3, 7, 17)
    assert set(c.case8_subcases) == set(CASE8_SUBCASES)
    assert c.case10_forced == (0, 1, 2)
    assert sum(c.assignments_per_case.values()) == len(list(admissible_endpoint_rows()))
    assert c.assignments_per_case == {1: 40, 2: 5, 3: 130, 4: 73, 5: 24, 6: 42, 7: 6,
                                      8: 6, 9: 3, 10: 1}


def test_relations():
    assert relation_of(condition("A", 4)) is Relation.G
    assert relation_of(condition("A", None, 2)) is Relation.L
    assert relation_of(condition("A", 5, 1)) is Relation.G
    assert relation_of(condition("A", 4, 2)) is Relation.L
    assert relation_of(condition("A", 3, 0)) is Relation.E


def test_subcase_labels():
    rows = [condition("A", 5), condition("A", 4, 1), condition("A", 3, 0)]
    for perm in itertools.permutations(rows):
        cls = classify_endpoint(perm)
        assert (cls.case_id, cls.subcase_id) == (8, "8.2")
        assert cls.closed_form_available
        assert cls.governing == (5, 0, 1)


def test_case9_flags():
    cls = classify_endpoint([condition("A", None, 0), condition("A", 4, 1), condition("A", 5, 2)])
    assert (cls.case_id, cls.subcase_id, cls.closed_form_available) == (9, "9.5", True)
    cls = classify_endpoint([condition("A", None, 2), condition("A", 3, 0), condition("A", 4, 1)])
    assert (cls.case_id, cls.subcase_id, cls.closed_form_available) == (9, "9.1", False)


def test_large_q_is_flagged():
    cls = classify_endpoint([condition("A", None, 5), condition("A", 0), condition("A", 1)])
    assert cls.case_id == 3
    assert not cls.closed_form_available
    assert "exceeds" in cls.not_applicable_reason


@given(endpoints())
def test_classification_is_permutation_invariant(bcs):
    ref = classify_endpoint(bcs)
    for perm in itertools.permutations(bcs):
        cls = classify_endpoint(perm)
        assert (cls.case_id, cls.subcase_id, cls.relations, cls.theta, cls.phi) == (
            ref.case_id, ref.subcase_id, ref.relations, ref.theta, ref.phi)
        assert cls.canonical(perm) == ref.canonical(bcs)
