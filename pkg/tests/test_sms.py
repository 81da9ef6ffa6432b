import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sympf2.f2core import F2Matrix
from sympf2.sms import (
    InvariantTuple,
    SymplecticMetricSpace,
    canonical,
    defect,
    invariants,
    is_isomorphic,
    isomorphism_to_canonical,
    kernel,
    parse_mu_table,
    to_mu_table_json,
    translation_subgroup,
    transport,
    validate,
)


def space_of(mu):
    return SymplecticMetricSpace.from_mu_list(list(mu))


HYPERBOLIC = space_of([0, 0, 0, 1])
ALL_ONES = space_of([0, 1, 1, 1])


def brute_force_bilinear(space):
    """Oracle: check m(x+y, z) = m(x, z) + m(y, z) over every triple."""
    n = 1 << space.rank
    if space.mu(0):
        return False
    return all(
        space.m(x ^ y, z) == (space.m(x, z) ^ space.m(y, z))
        for x in range(n)
        for y in range(n)
        for z in range(n)
    )


def test_validate_examples():
    assert validate(HYPERBOLIC)[0]
    one_nonzero = space_of([0, 1, 0, 0, 0, 0, 0, 0])
    assert not validate(one_nonzero)[0]
    four_even = space_of([0, 1, 1, 1, 1, 0, 0, 0])
    assert validate(four_even)[0]


def test_validate_against_brute_force_rank_le_3():
    for k in range(4):
        for table in range(0, 1 << (1 << k), 2):  # mu(0) = 0
            space = SymplecticMetricSpace(k, table)
            assert validate(space)[0] == brute_force_bilinear(space)


def test_validate_against_brute_force_rank4_sample():
    # full triple-loop bilinearity oracle on a deterministic sample
    for table in range(0, 1 << 16, 2 * 61):
        space = SymplecticMetricSpace(4, table)
        assert validate(space)[0] == brute_force_bilinear(space)


def test_rank3_parity_rule():
    for table in range(0, 1 << 8, 2):
        space = SymplecticMetricSpace(3, table)
        even = table.bit_count() % 2 == 0
        assert validate(space)[0] == even


def test_kernel_examples():
    assert kernel(HYPERBOLIC).dim == 0
    assert kernel(SymplecticMetricSpace(3, 0)).dim == 3
    v110 = canonical(InvariantTuple(0, 0, 1, 1))
    ker = kernel(v110)
    assert ker.dim == 1
    assert ker.contains(0b001)


def test_translation_subgroup_examples():
    assert translation_subgroup(SymplecticMetricSpace(2, 0)).dim == 2
    z_only = canonical(InvariantTuple(1, 0, 0, 0))
    assert translation_subgroup(z_only).dim == 0
    v210 = canonical(InvariantTuple(0, 0, 2, 1))
    assert translation_subgroup(v210).dim == 2


def test_translation_inside_kernel():
    for eps, delta, r, s in itertools.product((0, 1), (0, 1), range(3), range(3)):
        if eps and delta:
            continue
        space = canonical(InvariantTuple(eps, delta, r, s))
        a = translation_subgroup(space)
        ker = kernel(space)
        assert all(ker.contains(v) for v in a.basis)


def test_invariants_examples():
    assert invariants(HYPERBOLIC) == InvariantTuple(0, 0, 0, 1)
    assert invariants(ALL_ONES) == InvariantTuple(0, 1, 0, 0)
    assert invariants(space_of([0, 1])) == InvariantTuple(1, 0, 0, 0)


def test_defect_examples():
    assert defect(HYPERBOLIC).value == 2
    assert defect(ALL_ONES).value == -2
    assert defect(space_of([0, 1])).value == 0
    assert defect(SymplecticMetricSpace(0, 0)).value == 1


def test_defect_closed_form_small():
    for eps, delta, r, s in itertools.product((0, 1), (0, 1), range(4), range(3)):
        if eps and delta:
            continue
        t = InvariantTuple(eps, delta, r, s)
        assert defect(canonical(t)).value == t.defect_value


def test_canonical_examples():
    assert canonical(InvariantTuple(0, 0, 0, 1)).mu_list() == [0, 0, 0, 1]
    assert canonical(InvariantTuple(0, 1, 0, 0)).mu_list() == [0, 1, 1, 1]
    # (eps, delta, r, s) = (1, 0, 2, 0): mu = 1 exactly on the z-coset of
    # the translation subgroup, forced by polarization.
    z_exp = canonical(InvariantTuple(1, 0, 2, 0))
    assert z_exp.rank == 3
    assert [v for v in range(8) if z_exp.mu(v)] == [4, 5, 6, 7]


def test_canonical_rejects_eps_delta_both():
    with pytest.raises(ValueError):
        InvariantTuple(1, 1, 0, 0)


def test_canonical_round_trip():
    for eps, delta, r, s in itertools.product((0, 1), (0, 1), range(5), range(4)):
        if eps and delta:
            continue
        t = InvariantTuple(eps, delta, r, s)
        if t.ambient_rank > 10:
            continue
        assert invariants(canonical(t)) == t


def test_is_isomorphic_examples():
    assert is_isomorphic(HYPERBOLIC, HYPERBOLIC)
    assert not is_isomorphic(HYPERBOLIC, ALL_ONES)


small_gl2 = st.sampled_from(
    [m for m in ([[1, 0], [0, 1]], [[0, 1], [1, 0]], [[1, 1], [0, 1]], [[1, 0], [1, 1]], [[1, 1], [1, 0]], [[0, 1], [1, 1]])]
)


@given(small_gl2)
def test_isomorphic_after_basis_change(rows):
    t = F2Matrix.from_rows(rows)
    assert is_isomorphic(HYPERBOLIC, transport(HYPERBOLIC, t))


def all_valid_spaces(k):
    for table in range(0, 1 << (1 << k), 2):
        space = SymplecticMetricSpace(k, table)
        if validate(space)[0]:
            yield space


def test_transport_preserves_invariants_rank3():
    from sympf2.f2core import enumerate_gl

    mats = list(enumerate_gl(3))
    for space in all_valid_spaces(3):
        inv = invariants(space)
        for t in mats[::11]:
            assert invariants(transport(space, t)) == inv


admissible_tuples = st.builds(
    lambda ed, r, s: InvariantTuple(ed[0], ed[1], r, s),
    st.sampled_from([(0, 0), (1, 0), (0, 1)]),
    st.integers(0, 3),
    st.integers(0, 2),
).filter(lambda t: t.ambient_rank <= 5)

transvections = st.lists(
    st.tuples(st.integers(0, 4), st.integers(0, 4)).filter(lambda p: p[0] != p[1]),
    max_size=8,
)


@given(admissible_tuples, transvections)
def test_transport_invariance_random(t, moves):
    space = canonical(t)
    k = space.rank
    rows = [1 << i for i in range(k)]
    for i, j in moves:
        if i < k and j < k:
            rows[i] ^= rows[j]  # elementary row operation, stays invertible
    mat = F2Matrix.from_row_bits(rows, k)
    moved = transport(space, mat)
    assert invariants(moved) == t
    assert is_isomorphic(moved, space)


def test_isomorphism_to_canonical_is_identity_on_canonical():
    for eps, delta, r, s in itertools.product((0, 1), (0, 1), range(3), range(3)):
        if eps and delta:
            continue
        t = InvariantTuple(eps, delta, r, s)
        space = canonical(t)
        got = isomorphism_to_canonical(space)
        assert got.row_bits() == F2Matrix.identity(space.rank).row_bits()


def test_isomorphism_to_canonical_permuted_hyperbolic():
    swapped = space_of([0, 0, 0, 1])
    t = isomorphism_to_canonical(transport(swapped, F2Matrix.from_rows([[0, 1], [1, 0]])))
    assert t.is_invertible()


def test_isomorphism_to_canonical_exhaustive_rank_le_3():
    for k in range(4):
        for space in all_valid_spaces(k):
            t = isomorphism_to_canonical(space)
            assert transport(space, t).table == canonical(invariants(space)).table


def test_mu_table_json_round_trip():
    doc = to_mu_table_json(ALL_ONES)
    assert parse_mu_table(doc).table == ALL_ONES.table
    with pytest.raises(ValueError):
        parse_mu_table('{"rank": 2, "mu": [0, 0, 0]}')


def test_rank_zero_space():
    empty = SymplecticMetricSpace(0, 0)
    assert validate(empty)[0]
    assert invariants(empty) == InvariantTuple(0, 0, 0, 0)
    assert defect(empty).value == 1
