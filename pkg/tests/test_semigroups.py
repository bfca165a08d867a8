import pytest

from semibox import (
    CapExceededError,
    FiniteSemigroup,
    all_transformations,
    closure,
    full_transformation_semigroup,
    opposite,
    symmetric_inverse_semigroup,
)
from semibox.library import chain_semilattice, left_zero, right_zero

from conftest import t1


def test_closure_generates_all_of_t2():
    s = closure([t1(1, 1), t1(2, 1)])
    assert s.size == 4
    assert set(s.elements) == set(all_transformations(2))


def test_closure_identity_singleton():
    s = closure([t1(1, 2, 3)])
    assert s.size == 1


def test_closure_of_singular_idempotents_is_singular_part():
    gens = [
        f
        for f in all_transformations(3)
        if f.is_idempotent() and f.rank <= 2
    ]
    s = closure(gens)
    # oracle: the non-invertible maps, by enumeration
    singular = {f for f in all_transformations(3) if not f.is_permutation()}
    assert s.size == 27 - 6 == 21
    assert set(s.elements) == singular


def test_closure_insertion_order_independence(rng):
    gens = [t1(1, 1, 2), t1(2, 3, 1), t1(2, 2, 3)]
    reference = closure(gens)
    for _ in range(5):
        shuffled = gens[:]
        rng.shuffle(shuffled)
        again = closure(shuffled)
        assert again.elements == reference.elements
        assert again.table == reference.table


def test_closure_results_are_associative():
    s = closure([t1(1, 1, 2), t1(2, 3, 1)])
    s.check_associativity()  # must not raise


def test_non_associative_table_rejected():
    with pytest.raises(ValueError):
        FiniteSemigroup([[0, 1], [0, 0]])


def test_mixed_generators_rejected():
    from semibox import PartialBijection

    with pytest.raises(ValueError):
        closure([t1(1, 1), PartialBijection.identity(2)])


def test_opposite_commutative_unchanged():
    s = chain_semilattice(3)
    assert opposite(s).table == s.table


def test_opposite_involution():
    s = full_transformation_semigroup(2)
    assert opposite(opposite(s)).table == s.table


def test_opposite_left_zero_is_right_zero():
    assert opposite(left_zero(2)).table == right_zero(2).table


def test_monoid_detection():
    assert full_transformation_semigroup(2).identity_index() == 1  # [1,2] in lex order
    assert left_zero(2).identity_index() is None


def test_inverse_map_of_symmetric_inverse():
    s = symmetric_inverse_semigroup(2)
    s.validate_inverse_semigroup()
    inv = s.inverse_map()
    for i, g in enumerate(s.elements):
        assert s.elements[inv[i]] == g.inverse()


def test_full_transformation_semigroup_not_inverse():
    assert full_transformation_semigroup(2).inverse_map() is None


def test_full_t3_table_matches_composition():
    s = full_transformation_semigroup(3)
    elems = s.elements
    index = {g: k for k, g in enumerate(elems)}
    for i, f in enumerate(elems):
        for j, g in enumerate(elems):
            assert s.table[i][j] == index[f * g]


def test_full_t4_table_spot_checks(rng):
    s = full_transformation_semigroup(4)
    elems = s.elements
    index = {g: k for k, g in enumerate(elems)}
    for _ in range(300):
        i, j = rng.randrange(256), rng.randrange(256)
        assert s.table[i][j] == index[elems[i] * elems[j]]


def test_element_order_signature():
    s = full_transformation_semigroup(2)
    # identity: x^2 == x^1
    assert s.element_order(s.identity_index()) == (1, 1)
    swap = s.elements.index(t1(2, 1))
    assert s.element_order(swap) == (1, 2)


def test_is_group():
    from semibox.library import cyclic_group

    assert cyclic_group(3).is_group()
    assert not full_transformation_semigroup(2).is_group()
    assert not left_zero(2).is_group()


def test_subsemigroup_requires_closure():
    s = full_transformation_semigroup(2)
    with pytest.raises(ValueError):
        s.subsemigroup([s.elements.index(t1(2, 1))])  # swap alone is not closed


def test_table_caps():
    with pytest.raises(CapExceededError):
        full_transformation_semigroup(6)
    with pytest.raises(CapExceededError):
        symmetric_inverse_semigroup(5)


def test_i3_sizes_and_closure_under_inverse():
    s = symmetric_inverse_semigroup(3)
    assert s.size == 34
    assert s.is_inverse
