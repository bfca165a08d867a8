"""Acceptance suite: one test per release criterion, each printing a PASS line.

Run with `pytest -s tests/test_acceptance.py` to see the per-criterion lines.
"""
import itertools
import json
import random
import time
from math import comb, factorial

import pytest

from semibox import (
    FlowerHypothesisError,
    FlowerInstance,
    FiniteSemigroup,
    Transformation,
    all_partial_bijections,
    all_transformations,
    cayley_chain,
    classify_semigroup_base,
    extension_witness,
    find_isomorphism,
    flower_partition,
    full_transformation_semigroup,
    graham_houghton,
    green_classes,
    green_equivalent,
    green_full_transformations,
    group_pattern_witness,
    idempotent_below,
    image_ideal,
    is_inverse_amalgamation_base,
    is_transversal,
    lower_rank_chain,
    lower_rank_idempotent,
    opposite_green_structure,
    order2_nonconjugacy_certificate,
    random_flower_instance,
    symmetric_inverse_semigroup,
    track_fixed_points,
)
from semibox.chains import _index_of_transformation
from semibox.cli import main
from semibox.flower import cached_dilation
from semibox.library import named_semigroup, symmetric_group



def report(num, slug):
    print(f"ACCEPTANCE {num:02d} {slug}: PASS")


def test_acceptance_01_green_oracle_equivalence():
    start = time.monotonic()
    for n in (1, 2, 3, 4):
        fast = green_full_transformations(n)
        generic = green_classes(full_transformation_semigroup(n))
        assert green_equivalent(fast, generic), f"mismatch at n={n}"
    elapsed = time.monotonic() - start
    assert elapsed < 10.0, f"took {elapsed:.1f}s, budget 10s"
    report(1, "greens-oracle-equivalence")


def test_acceptance_02_counting_identities():
    for n in range(1, 6):
        assert len(all_transformations(n)) == n**n
        expected = sum(comb(n, k) ** 2 * factorial(k) for k in range(n + 1))
        assert len(all_partial_bijections(n)) == expected
    # group H-classes have order r!: count maps with the canonical kernel/image
    for n in range(1, 6):
        for r in range(1, n + 1):
            kernel = tuple(
                [tuple([i]) for i in range(r - 1)] + [tuple(range(r - 1, n))]
            )
            image = frozenset(range(r))
            count = sum(
                1
                for f in all_transformations(n)
                if f.kernel_blocks() == kernel and f.image_set() == image
            )
            assert count == factorial(r), (n, r)
    # spot isomorphism to the symmetric group for small ranks
    for r in (2, 3, 4):
        n = r + 1
        e = lower_rank_idempotent(Transformation.identity(n), r)
        members = [
            f
            for f in all_transformations(n)
            if f.kernel_blocks() == e.kernel_blocks()
            and f.image_set() == e.image_set()
        ]
        h = FiniteSemigroup.from_elements(members)
        assert find_isomorphism(h, symmetric_group(r)) is not None
    report(2, "counting-identities")


def test_acceptance_03_flower_randomized():
    rng = random.Random(13)
    for _ in range(1000):
        inst = random_flower_instance(rng, max_m=12)
        partition = flower_partition(inst)
        assert partition.t == inst.t
        assert all(is_transversal(a, partition) for a in inst.a_sets)
        assert all(not is_transversal(b, partition) for b in inst.b_sets)
    # violations of the head bound are rejected, never mis-solved
    rejected = 0
    attempts = 0
    while rejected < 20 and attempts < 20000:
        attempts += 1
        m = rng.randint(4, 10)
        t = rng.randint(2, max(2, m // 2))
        subsets = list(itertools.combinations(range(m), t))
        if len(subsets) < 3:
            continue
        chosen = [frozenset(s) for s in rng.sample(subsets, 3)]
        try:
            inst = FlowerInstance(m, t, chosen[:2], chosen[2:])
        except ValueError:
            continue
        _, _, head = inst.petals_and_head()
        if len(head) < t:
            continue
        with pytest.raises(FlowerHypothesisError):
            flower_partition(inst)
        rejected += 1
    assert rejected == 20
    report(3, "flower-transversal-randomized")


def _image_set_choices(n, r, rng=None, samples=None):
    images = [frozenset(c) for c in itertools.combinations(range(n), r)]
    if samples is None:
        out = []
        for ka in (1, 2):
            for omega in itertools.combinations(images, ka):
                rest = [s for s in images if s not in omega]
                for kb in (1, 2):
                    for sigma in itertools.combinations(rest, kb):
                        out.append((omega, sigma))
        return out
    out = []
    while len(out) < samples:
        ka, kb = rng.randint(1, 2), rng.randint(1, 2)
        if ka + kb > len(images):
            continue
        chosen = rng.sample(images, ka + kb)
        out.append((tuple(chosen[:ka]), tuple(chosen[ka:])))
    return out


def test_acceptance_04_witness_pipeline():
    start = time.monotonic()
    rng = random.Random(97)
    total = 0
    for n in (3, 4, 5):
        for r in range(2, n):
            if n <= 4:
                choices = _image_set_choices(n, r)
            else:
                choices = _image_set_choices(n, r, rng=rng, samples=67 if r < 4 else 66)
            for omega, sigma in choices:
                bundle = group_pattern_witness(n, r, omega, sigma, route="dilation")
                assert bundle.ok, (n, r, omega, sigma)
                assert bundle.checks["same_d_class"]
                total += 1
    # inflated H-class sizes confirmed by enumeration for n = 3, 4
    for n in (3, 4):
        for r in range(2, n):
            ctx = cached_dilation(n, r)
            alpha = next(f for f in all_transformations(n) if f.rank == r)
            want_kernel = ctx.padded_idempotent.kernel_blocks()
            want_image = ctx.pad(alpha).image_set()
            count = sum(
                1
                for g in all_transformations(n + ctx.extra)
                if g.kernel_blocks() == want_kernel and g.image_set() == want_image
            )
            assert count == factorial(r + ctx.extra)
    elapsed = time.monotonic() - start
    assert elapsed < 120.0, f"took {elapsed:.1f}s, budget 120s"
    report(4, f"witness-pipeline ({total} instances, {elapsed:.1f}s)")


def test_acceptance_05_dilated_image_formula():
    for n in (3, 4):
        for r in range(2, n):
            ctx = cached_dilation(n, r)
            for alpha in all_transformations(n):
                if alpha.rank != r:
                    continue
                direct = frozenset(ctx.psi(alpha).images)
                assert direct == ctx.predicted_image(alpha), (n, r, alpha)
    report(5, "dilated-image-formula")


def test_acceptance_06_idempotents_below_in_t4():
    for f in all_transformations(4):
        if not f.is_idempotent() or f.rank < 2:
            continue
        ranks = list(range(1, f.rank))
        for r in ranks:
            e = lower_rank_idempotent(f, r)
            assert e.is_idempotent() and e.rank == r
            assert e * f == e and f * e == e
        chain = lower_rank_chain(f, ranks)
        full = chain + [f]
        for i, ei in enumerate(full):
            for j, ej in enumerate(full):
                assert ei * ej == full[min(i, j)]
    report(6, "idempotents-below-in-t4")


def test_acceptance_07_ideal_embedding_and_extension_witness():
    subsets3 = [
        frozenset(s) for k in range(4) for s in itertools.combinations(range(3), k)
    ]
    for x in subsets3:
        for y in subsets3:
            assert (
                image_ideal(3, x & y).elements
                == image_ideal(3, x).elements & image_ideal(3, y).elements
            )
    subsets4 = [
        frozenset(s) for k in range(5) for s in itertools.combinations(range(4), k)
    ]
    tried = 0
    for a, c, d, e in itertools.product(subsets4, repeat=4):
        try:
            w = extension_witness(4, a, c, d, e)
        except ValueError:
            continue
        tried += 1
        assert w.ok, (a, c, d, e)
    assert tried > 0
    report(7, f"ideal-embedding-and-extension-witness ({tried} valid tuples)")


def test_acceptance_08_idempotent_below_inverse():
    for n in (3, 4):
        s = symmetric_inverse_semigroup(n)
        green = green_classes(s)
        by_rank = {}
        for i, c in enumerate(green.j_class):
            by_rank[s.elements[i].rank] = c
        for f in s.idempotent_indices():
            for r in range(s.elements[f].rank + 1):
                e = idempotent_below(s, f, by_rank[r], green=green)
                assert s.table[e][f] == e and s.table[f][e] == e
    report(8, "idempotent-below-inverse")


def test_acceptance_09_fixed_points_and_nonconjugacy():
    stage = cayley_chain("T", 2, 1)
    assert stage.materialized is not None and stage.materialized.size == 256
    for alpha in all_transformations(2):
        tracked = track_fixed_points(stage, alpha)
        expect = len(alpha.fixed_points()) ** 2
        assert tracked.fix_counts[1] == expect
        # direct count: locate rho_alpha inside the materialized stage and
        # count the points it fixes
        base = full_transformation_semigroup(2)
        rho_images = tuple(
            base.table[x][base.elements.index(alpha)] for x in range(4)
        )
        idx = _index_of_transformation(Transformation(rho_images), 4)
        materialized_elem = stage.materialized.elements[idx]
        assert materialized_elem == Transformation(rho_images)
        assert len(materialized_elem.fixed_points()) == expect

    cert = order2_nonconjugacy_certificate(5, 5)
    assert cert.ok
    assert cert.fix_alpha == 3 and cert.fix_beta == 1
    assert cert.checks["brute_force_nonconjugate"] is True
    report(9, "fixed-points-and-nonconjugacy")


def test_acceptance_10_duality():
    g = green_full_transformations(3)
    twice = opposite_green_structure(opposite_green_structure(g))
    assert twice.r_class == g.r_class
    assert twice.l_class == g.l_class
    assert twice.h_class == g.h_class
    assert twice.d_class == g.d_class
    assert twice.j_class == g.j_class
    assert twice.group_h == g.group_h
    opp = opposite_green_structure(g)
    for d in sorted(set(g.d_class)):
        assert graham_houghton(opp, d) == graham_houghton(g, d).part_swapped()
    report(10, "duality-part-swap")


def test_acceptance_11_classification_fixture_verdicts():
    member = [
        "T2", "T3", "T2opp", "T3opp", "I1", "I2", "I3",
        "Z2", "Z3", "Z4", "K4", "S3", "chain2", "chain3", "B2",
    ]
    non_member = ["L2", "L3", "R2", "band2x2", "V3"]
    for name in member:
        assert classify_semigroup_base(named_semigroup(name)).status == "member", name
    for name in non_member:
        assert (
            classify_semigroup_base(named_semigroup(name)).status == "non-member"
        ), name
    assert classify_semigroup_base(named_semigroup("N2")).status == "unknown"
    assert is_inverse_amalgamation_base(named_semigroup("I2")).status == "member"
    assert is_inverse_amalgamation_base(named_semigroup("V3")).status == "non-member"
    report(11, "classification-fixture-verdicts")


def test_acceptance_12_cli_byte_reproducibility(tmp_path, capsys):
    inst = {"m": 6, "t": 2, "A": [[1, 2]], "B": [[3, 4]]}
    fpath = tmp_path / "inst.json"
    fpath.write_text(json.dumps(inst))
    dual = {
        "m": 4,
        "t": 2,
        "require": [[[1, 2], [3, 4]]],
        "avoid": [[[1, 3], [2, 4]]],
    }
    dpath = tmp_path / "dual.json"
    dpath.write_text(json.dumps(dual))
    commands = [
        ["eggbox", "--family", "T", "--n", "3"],
        ["eggbox", "--family", "I", "--n", "2", "--format", "ascii"],
        ["flower", "--instance-file", str(fpath)],
        ["witness", "--n", "4", "--r", "2", "--group", "1,2", "--nongroup", "3,4", "--seed", "5"],
        ["classify", "--mode", "B", "--name", "B2"],
        ["chain", "--kind", "T", "--n", "2", "--depth", "2", "--track", "1,2"],
        ["dilation", "--n", "3", "--r", "2"],
        ["dualsearch", "--instance-file", str(dpath)],
    ]
    for argv in commands:
        code1 = main(list(argv))
        out1 = capsys.readouterr().out
        code2 = main(list(argv))
        out2 = capsys.readouterr().out
        assert code1 == code2 == 0, argv
        assert out1 == out2, argv
    report(12, "cli-byte-reproducibility")
