import pytest

from semibox import (
    all_transformations,
    closure,
    full_transformation_semigroup,
    green_classes,
    green_equivalent,
    green_full_transformations,
    green_partial_bijections,
    is_ideal_chain,
    maximal_subgroup,
    opposite,
    opposite_green_structure,
    principal_factor,
    symmetric_inverse_semigroup,
)
from semibox.green import eggbox_data, is_transversal_sets
from semibox.library import (
    chain_semilattice,
    cyclic_group,
    fork_semilattice,
    left_zero,
)

from conftest import t1


def class_sizes(labels):
    counts = {}
    for c in labels:
        counts[c] = counts.get(c, 0) + 1
    return sorted(counts.values())


def test_two_element_semilattice_chain():
    g = green_classes(chain_semilattice(2))
    assert g.n_j == 2
    assert is_ideal_chain(g)
    # the top (identity) lies above the zero
    assert (0, 1) in g.j_leq or (1, 0) in g.j_leq


def test_t3_j_classes_by_rank():
    g = green_classes(full_transformation_semigroup(3))
    assert g.n_j == 3
    assert class_sizes(g.j_class) == [3, 6, 18]
    assert is_ideal_chain(g)


def test_left_zero_orientation_regression():
    # frozen against the ideal definitions: in the left-zero semigroup
    # a*S = {a} gives two R-classes while S*a = S gives one L-class
    g = green_classes(left_zero(2))
    assert g.n_r == 2
    assert g.n_l == 1
    assert g.n_j == 1


def test_group_h_transversal_criterion():
    g = green_full_transformations(3)
    elems = g.elements
    # kernel {1,2}|{3} with image {1,3}: a transversal, hence a group
    a = elems.index(t1(1, 1, 3))
    assert g.h_class[a] in g.group_h
    # same kernel with image {1,2}: misses block {3}
    b = elems.index(t1(1, 1, 2))
    assert g.h_class[b] not in g.group_h
    assert is_transversal_sets({0, 2}, ((0, 1), (2,)))
    assert not is_transversal_sets({0, 1}, ((0, 1), (2,)))


def test_fast_t_matches_generic_on_closure_built_t3():
    gens = [t1(2, 1, 3), t1(2, 3, 1), t1(1, 1, 3)]
    s = closure(gens)
    assert s.size == 27
    g_generic = green_classes(s)
    g_fast = green_full_transformations(3)
    emap = [s.elements.index(f) for f in g_fast.elements]
    assert green_equivalent(g_fast, g_generic, element_map=emap)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_fast_i_matches_generic(n):
    g_fast = green_partial_bijections(n)
    s = symmetric_inverse_semigroup(n)
    g_generic = green_classes(s)
    emap = [s.elements.index(f) for f in g_fast.elements]
    assert green_equivalent(g_fast, g_generic, element_map=emap)


def test_units_of_t3_form_s3():
    g = green_full_transformations(3)
    h_id = g.h_class[g.elements.index(t1(1, 2, 3))]
    units = maximal_subgroup(g, h_id)
    assert units.size == 6
    assert units.is_group()


def test_rank2_group_h_class_of_t3_has_order_two():
    g = green_full_transformations(3)
    h_id = g.h_class[g.elements.index(t1(1, 1, 3))]
    grp = maximal_subgroup(g, h_id)
    assert grp.size == 2
    assert grp.is_group()


def test_i3_group_h_class_on_two_points():
    from semibox import PartialBijection

    g = green_partial_bijections(3)
    e = g.elements.index(PartialBijection.identity_on(3, {0, 1}))
    grp = maximal_subgroup(g, g.h_class[e])
    assert grp.size == 2 and grp.is_group()


def test_maximal_subgroup_rejects_non_group():
    g = green_full_transformations(3)
    h_id = g.h_class[g.elements.index(t1(1, 1, 2))]
    with pytest.raises(ValueError):
        maximal_subgroup(g, h_id)


def test_principal_factor_of_units_of_t2():
    g = green_classes(full_transformation_semigroup(2))
    top = g.j_class[g.elements.index(t1(1, 2))]
    pf = principal_factor(g, top)
    assert pf.semigroup.size == 3  # S_2 plus zero
    assert pf.kind == "0-simple"


def test_principal_factor_of_constants_of_t3():
    g = green_full_transformations(3)
    bottom = g.j_class[g.elements.index(t1(1, 1, 1))]
    pf = principal_factor(g, bottom)
    assert pf.r_class_count == 1
    assert pf.l_class_count == 3
    assert pf.kind == "0-simple"


def test_principal_factor_of_chain_minimum():
    g = green_classes(chain_semilattice(2))
    bottom = g.j_class[0]
    pf = principal_factor(g, bottom)
    assert pf.semigroup.size == 2
    # the surviving product is the idempotent itself
    assert pf.semigroup.table[1][1] == 1


def test_zero_is_absorbing_in_principal_factor():
    g = green_full_transformations(3)
    top = g.j_class[g.elements.index(t1(1, 2, 3))]
    pf = principal_factor(g, top)
    t = pf.semigroup.table
    assert all(t[0][j] == 0 and t[j][0] == 0 for j in range(pf.semigroup.size))


def test_ideal_chain_examples():
    assert is_ideal_chain(green_partial_bijections(3))
    assert not is_ideal_chain(green_classes(fork_semilattice()))
    assert is_ideal_chain(green_classes(cyclic_group(4)))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_d_equals_j_on_full_transformations(n):
    g = green_classes(full_transformation_semigroup(n))
    assert g.d_class == g.j_class


def test_d_equals_j_on_library():
    from semibox.library import NAMED

    for name, make in NAMED.items():
        s = make()
        if s.size > 40:
            continue
        g = green_classes(s)
        assert g.d_class == g.j_class, name


@pytest.mark.parametrize("n", [2, 3, 4])
def test_group_h_count_equals_idempotent_count_per_rank(n):
    g = green_full_transformations(n)
    by_rank_groups = {}
    seen_h = set()
    for i, f in enumerate(g.elements):
        h = g.h_class[i]
        if h in g.group_h and h not in seen_h:
            seen_h.add(h)
            by_rank_groups[f.rank] = by_rank_groups.get(f.rank, 0) + 1
    by_rank_idem = {}
    for f in g.elements:
        if f.is_idempotent():
            by_rank_idem[f.rank] = by_rank_idem.get(f.rank, 0) + 1
    assert by_rank_groups == by_rank_idem


def test_embeddings_preserve_group_h_both_ways(rng):
    # random subsemigroups of T_4 under the inclusion embedding
    pool = all_transformations(4)
    g_big = green_full_transformations(4)
    for _ in range(6):
        gens = [rng.choice(pool) for _ in range(rng.randint(1, 3))]
        s = closure(gens)
        if s.size > 120:
            continue
        g_small = green_classes(s)
        for i, f in enumerate(s.elements):
            small_group = g_small.h_class[i] in g_small.group_h
            big_index = g_big.elements.index(f)
            big_group = g_big.h_class[big_index] in g_big.group_h
            assert small_group == big_group


def test_opposite_structure_swaps_r_and_l():
    s = full_transformation_semigroup(3)
    g = green_classes(s)
    swapped = opposite_green_structure(g)
    recomputed = green_classes(opposite(s))
    assert green_equivalent(swapped, recomputed)
    assert swapped.r_class == g.l_class
    assert swapped.l_class == g.r_class


def test_opposite_structure_involution():
    g = green_classes(full_transformation_semigroup(3))
    twice = opposite_green_structure(opposite_green_structure(g))
    assert twice.r_class == g.r_class
    assert twice.l_class == g.l_class
    assert twice.h_class == g.h_class
    assert twice.group_h == g.group_h


def test_opposite_of_commutative_unchanged():
    g = green_classes(chain_semilattice(3))
    swapped = opposite_green_structure(g)
    assert swapped.r_class == g.r_class and swapped.l_class == g.l_class


def test_eggbox_grid_shapes_for_t3():
    g = green_full_transformations(3)
    boxes = eggbox_data(g)
    shapes = [(len(b["r_keys"]), len(b["l_keys"])) for b in boxes]
    assert shapes == [(1, 1), (3, 3), (1, 3)]
    top = boxes[0]
    assert top["grid"][0][0] == {"size": 6, "group": True}
