import random
from itertools import combinations
from math import comb, factorial

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from bethekit.bethe import formal_bethe_vector
from bethekit.chain import ChainSpec, pseudovacuum
from bethekit.decomposition import (
    Split,
    all_splits,
    decomposition_report,
    enumerate_bipartitions,
    enumerate_ordered_partitions,
    homogeneous_coordinate_vector,
    local_structure_vector,
    multi_component_vector,
    two_component_vector,
)
from bethekit.errors import HomogeneousOnly, InvalidRange, VanishingLocalEigenvalue
from bethekit.linalg import max_abs, rel_max_diff
from bethekit.sampling import distinct_complexes, distinct_rationals


def _xxx4():
    return ChainSpec.xxx(4, ["0", "1/3", "-1/2", "2"])


def test_split_validation():
    s = Split(5, (2, 4))
    assert s.k == 3
    assert s.ranges == [(1, 2), (3, 4), (5, 5)]
    assert Split.bipartition(4, 1).ranges == [(1, 1), (2, 4)]
    assert Split(3, ()).ranges == [(1, 3)]
    with pytest.raises(InvalidRange):
        Split(4, (3, 2))
    with pytest.raises(InvalidRange):
        Split(4, (2, 2))
    with pytest.raises(InvalidRange):
        Split(4, (0,))
    with pytest.raises(InvalidRange):
        Split(4, (4,))


def test_all_splits_counts():
    assert len(list(all_splits(5, 2))) == comb(4, 1)
    assert len(list(all_splits(5, 3))) == comb(4, 2)
    assert [s.cuts for s in all_splits(4, 4)] == [(1, 2, 3)]


def test_enumerate_bipartitions_order_and_coverage():
    pairs = list(enumerate_bipartitions(2))
    assert pairs == [((0, 1), ()), ((1,), (0,)), ((0,), (1,)), ((), (0, 1))]
    for m in (0, 1, 2, 3):
        pairs = list(enumerate_bipartitions(m))
        assert len(pairs) == 2 ** m
        for j, jbar in pairs:
            assert set(j) | set(jbar) == set(range(m))
            assert set(j) & set(jbar) == set()


def test_enumerate_ordered_partitions():
    parts = list(enumerate_ordered_partitions(2, 3))
    assert len(parts) == 9
    for blocks in parts:
        assert len(blocks) == 3
        merged = [i for b in blocks for i in b]
        assert sorted(merged) == [0, 1]
    # the two-block case is exactly the bipartition enumeration
    assert [(b[0], b[1]) for b in enumerate_ordered_partitions(3, 2)] == list(
        enumerate_bipartitions(3)
    )


def test_two_component_matches_formal_every_cut():
    spec = _xxx4()
    lams = [mpq(1, 2), mpq(-3, 4)]
    ref = formal_bethe_vector(spec, lams)
    for x in (1, 2, 3):
        v = two_component_vector(spec, Split.bipartition(4, x), lams)
        assert max_abs(v - ref) == 0


def test_two_component_requires_two_blocks():
    spec = _xxx4()
    with pytest.raises(InvalidRange):
        two_component_vector(spec, Split(4, (1, 2)), [mpq(1)])
    with pytest.raises(InvalidRange):
        two_component_vector(spec, Split.bipartition(3, 1), [mpq(1)])


def test_multi_component_matches_formal():
    spec = _xxx4()
    lams = [mpq(1, 2), mpq(-3, 4)]
    ref = formal_bethe_vector(spec, lams)
    for k in (2, 3, 4):
        for split in all_splits(4, k):
            v = multi_component_vector(spec, split, lams)
            assert max_abs(v - ref) == 0


def test_multi_component_two_blocks_bitwise_two_component():
    spec = _xxx4()
    lams = [mpq(1, 5), mpq(-2, 3)]
    for x in (1, 2, 3):
        split = Split.bipartition(4, x)
        assert (
            multi_component_vector(spec, split, lams)
            == two_component_vector(spec, split, lams)
        ).all()


def test_single_site_blocks_restriction_is_exact():
    # blocks of one site kill multi-flip terms, so skipping them is free
    spec = _xxx4()
    lams = [mpq(1, 2), mpq(-3, 4)]
    split = Split(4, (1, 2, 3))
    full = multi_component_vector(spec, split, lams)
    restricted = multi_component_vector(spec, split, lams, max_block_size=1)
    assert (full == restricted).all()


def test_local_structure_matches_formal():
    spec = _xxx4()
    lams = [mpq(1, 2), mpq(-3, 4)]
    ref = formal_bethe_vector(spec, lams)
    assert max_abs(local_structure_vector(spec, lams) - ref) == 0


def test_local_structure_full_band():
    # M = N leaves a single flip pattern
    spec = ChainSpec.xxx(2, ["0", "1/3"])
    lams = [mpq(1, 2), mpq(-3, 4)]
    ref = formal_bethe_vector(spec, lams)
    v = local_structure_vector(spec, lams)
    assert max_abs(v - ref) == 0
    assert v[3] != 0


def test_homogeneous_closed_form():
    spec = ChainSpec.xxx(4, "1/5")
    lams = [mpq(1, 2), mpq(-3, 4)]
    ref = formal_bethe_vector(spec, lams)
    assert max_abs(homogeneous_coordinate_vector(spec, lams) - ref) == 0


def test_homogeneous_closed_form_trigonometric():
    spec = ChainSpec.xxz(3, 0.9 + 0.1j, 0.15)
    lams = [0.4 + 0.2j, -0.6 - 0.1j]
    ref = formal_bethe_vector(spec, lams)
    v = homogeneous_coordinate_vector(spec, lams)
    assert rel_max_diff(v, ref) < 1e-12


def test_homogeneous_requires_homogeneous_chain():
    with pytest.raises(HomogeneousOnly):
        homogeneous_coordinate_vector(_xxx4(), [mpq(1, 2)])


def test_homogeneous_vanishing_local_weight():
    spec = ChainSpec.xxx(3, 0)
    with pytest.raises(VanishingLocalEigenvalue):
        homogeneous_coordinate_vector(spec, [mpq(0)])  # delta = 0
    with pytest.raises(VanishingLocalEigenvalue):
        homogeneous_coordinate_vector(spec, [mpq(-1)])  # alpha = 0


def test_empty_set_reproduces_vacuum():
    spec = _xxx4()
    vac = pseudovacuum(4, "exact")
    assert (two_component_vector(spec, Split.bipartition(4, 2), []) == vac).all()
    assert (multi_component_vector(spec, Split(4, (1, 3)), []) == vac).all()
    assert (local_structure_vector(spec, []) == vac).all()
    hspec = ChainSpec.xxx(4, "1/5")
    assert (homogeneous_coordinate_vector(hspec, []) == pseudovacuum(4, "exact")).all()


def test_trigonometric_decompositions_small_residual():
    spec = ChainSpec.xxz(3, 0.9 + 0.1j, [0.1, -0.2 + 0.05j, 0.3])
    rng = random.Random(21)
    lams = distinct_complexes(rng, 2)
    ref = formal_bethe_vector(spec, lams)
    for x in (1, 2):
        v = two_component_vector(spec, Split.bipartition(3, x), lams)
        assert rel_max_diff(v, ref) < 1e-12
    assert rel_max_diff(local_structure_vector(spec, lams), ref) < 1e-12


def test_decomposition_report_rows():
    spec = _xxx4()
    lams = [mpq(1, 2), mpq(-3, 4)]
    splits = [Split.bipartition(4, 2), Split(4, (1, 3))]
    rows = decomposition_report(spec, lams, splits)
    names = [(r.formula, r.cuts) for r in rows]
    assert names == [
        ("two_component", (2,)),
        ("multi_component", (2,)),
        ("multi_component", (1, 3)),
        ("local_structure", None),
    ]
    assert all(r.error is None for r in rows)
    assert all(r.residual == 0 for r in rows)
    assert rows[0].term_count == 4
    assert rows[2].term_count == 9
    assert rows[3].term_count == comb(4, 2) * factorial(2)


def test_decomposition_report_homogeneous_rows():
    spec = ChainSpec.xxx(3, "1/4")
    rows = decomposition_report(spec, [mpq(1, 2)], [])
    assert [r.formula for r in rows] == ["local_structure", "homogeneous_coordinate"]
    assert all(r.residual == 0 for r in rows)


def test_decomposition_report_records_errors():
    spec = _xxx4()
    rows = decomposition_report(spec, [mpq(1, 2)], [], include_homogeneous=True)
    last = rows[-1]
    assert last.formula == "homogeneous_coordinate"
    assert last.residual is None
    assert "closed form" in last.error


_num = st.integers(min_value=-8, max_value=8)
_den = st.integers(min_value=1, max_value=5)


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_two_component_property(data):
    """Bipartition sums reproduce the formal vector on random exact chains."""
    n = data.draw(st.integers(2, 3))
    m = data.draw(st.integers(0, 2))
    pool = data.draw(
        st.lists(
            st.tuples(_num, _den).map(lambda t: mpq(*t)),
            min_size=n + m,
            max_size=n + m,
            unique=True,
        )
    )
    lams = pool[:m]
    if len(set(lams)) < m:
        return
    spec = ChainSpec.xxx(n, pool[m:])
    ref = formal_bethe_vector(spec, lams)
    for x in range(1, n):
        v = two_component_vector(spec, Split.bipartition(n, x), lams)
        assert max_abs(v - ref) == 0
