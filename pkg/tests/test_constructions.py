from fractions import Fraction

import pytest

from tightdesigns import verify
from tightdesigns.constructions import (
    BadModulus,
    BadOrder,
    DegenerateDesign,
    HalfSizeBlock,
    HadamardMatrix,
    SymmetricDesign,
    UnsupportedOrder,
    complement_design,
    from_symmetric_complemented,
    from_symmetric_residual,
    hadamard_design,
    known_designs,
    load_symmetric,
    paley_design,
    paley_hadamard,
    projective_plane,
    save_symmetric,
    sylvester_hadamard,
)
from tightdesigns.designs import relation_profile, shells_of


def fully_verified(design) -> bool:
    return (
        verify.moments_check(design, 2).ok
        and verify.tightness_check(design).tight
        and verify.frame_check(design)
        and verify.weight_constancy_check(design)
        and relation_profile(design).is_coherent
    )


def shell_summary(design):
    (r1, n1, w1), (r2, n2, w2) = shells_of(design).shells
    return r1, r2, n1, n2, w2 / w1


def test_sylvester_orders():
    assert sylvester_hadamard(0).rows == ((1,),)
    assert sylvester_hadamard(2).order == 4
    assert sylvester_hadamard(3).order == 8  # H H^T = 8 I holds by construction checks


def test_hadamard_validation_rejects_bad_matrix():
    with pytest.raises(ValueError):
        HadamardMatrix(((1, 1), (1, 1)))
    with pytest.raises(ValueError):
        HadamardMatrix(((1, 0), (0, 1)))


def test_paley_hadamard():
    assert paley_hadamard(3).order == 4
    assert paley_hadamard(11).order == 12
    with pytest.raises(BadModulus):
        paley_hadamard(5)
    with pytest.raises(BadModulus):
        paley_hadamard(15)


def test_normalized():
    h = paley_hadamard(7).normalized()
    assert all(x == 1 for x in h.rows[0])
    assert all(row[0] == 1 for row in h.rows)


@pytest.mark.parametrize(
    "m, ratio, expected",
    [
        (3, Fraction(1), (2, 3, 3, 4)),
        (7, Fraction(1, 2), (2, 7, 7, 8)),
        (11, Fraction(1, 3), (2, 11, 11, 12)),
    ],
)
def test_hadamard_design_parameters(m, ratio, expected):
    order = m + 1
    matrix = sylvester_hadamard(order.bit_length() - 1) if order & (order - 1) == 0 \
        else paley_hadamard(m)
    design = hadamard_design(matrix)
    r1, r2, n1, n2, w = shell_summary(design)
    assert (r1, r2, n1, n2) == expected
    assert w == ratio == Fraction(8, design.n + 2)
    assert design.size == 2 * m + 1 == design.n + 1
    assert fully_verified(design)


def test_hadamard_design_bad_order():
    with pytest.raises(BadOrder):
        hadamard_design(sylvester_hadamard(1))  # order 2, m = 1


@pytest.mark.parametrize("q, v, k, lam", [(2, 7, 3, 1), (3, 13, 4, 1), (4, 21, 5, 1), (5, 31, 6, 1)])
def test_projective_planes(q, v, k, lam):
    plane = projective_plane(q)  # SymmetricDesign validates all invariants on build
    assert (plane.v, plane.k, plane.lam) == (v, k, lam)


def test_projective_plane_unsupported():
    with pytest.raises(UnsupportedOrder):
        projective_plane(7)


@pytest.mark.parametrize("q, v, k, lam", [(7, 7, 3, 1), (11, 11, 5, 2), (23, 23, 11, 5), (27, 27, 13, 6)])
def test_paley_designs(q, v, k, lam):
    design = paley_design(q)
    assert (design.v, design.k, design.lam) == (v, k, lam)


def test_paley_design_bad_modulus():
    with pytest.raises(BadModulus):
        paley_design(13)  # 13 = 1 (mod 4)
    with pytest.raises(BadModulus):
        paley_design(10)  # not a prime power


@pytest.mark.parametrize(
    "source, expected",
    [
        ((7, 3, 1), (7, 4, 2)),
        ((11, 5, 2), (11, 6, 3)),
        ((13, 4, 1), (13, 9, 6)),
    ],
)
def test_complement_design(source, expected):
    base = paley_design(source[0]) if source[0] in (7, 11) else projective_plane(3)
    image = complement_design(base)
    assert (image.v, image.k, image.lam) == expected


def test_complement_design_degenerate():
    tiny = SymmetricDesign(2, 1, 0, (frozenset({0}), frozenset({1})))
    with pytest.raises(DegenerateDesign):
        complement_design(tiny)


def test_symmetric_design_validation():
    with pytest.raises(ValueError):
        SymmetricDesign(7, 3, 2, projective_plane(2).blocks)  # wrong lambda
    with pytest.raises(ValueError):
        SymmetricDesign(7, 3, 1, projective_plane(2).blocks[:6] + (frozenset({0, 1, 2}),))


@pytest.mark.parametrize(
    "make_source, expected",
    [
        (lambda: projective_plane(2), (2, 3, 3, 4)),           # Fano split
        (lambda: projective_plane(3), (3, 4, 4, 9)),
        (lambda: paley_design(11), (4, 5, 5, 6)),
    ],
)
def test_from_symmetric_residual(make_source, expected):
    design = from_symmetric_residual(make_source())
    r1, r2, n1, n2, w = shell_summary(design)
    assert (r1, r2, n1, n2) == expected and w == 1
    assert fully_verified(design)


def test_from_symmetric_residual_counts():
    source = projective_plane(3)
    design = from_symmetric_residual(source)
    balanced = verify.balanced_check(design, 2)
    # with unit weights the covering constants are the replication and pair counts
    assert balanced.lambdas[1] == source.k
    assert balanced.lambdas[2] == source.lam


@pytest.mark.parametrize(
    "make_source, expected",
    [
        (lambda: projective_plane(3), (4, 9, 9, 4)),
        (lambda: projective_plane(2), (3, 4, 4, 3)),
    ],
)
def test_from_symmetric_complemented(make_source, expected):
    design = from_symmetric_complemented(make_source())
    r1, r2, n1, n2, w = shell_summary(design)
    assert (r1, r2, n1, n2) == expected and w == 1
    assert fully_verified(design)


def test_from_symmetric_complemented_half_size():
    tiny = SymmetricDesign(2, 1, 0, (frozenset({0}), frozenset({1})))
    with pytest.raises(HalfSizeBlock):
        from_symmetric_complemented(tiny)


def test_base_point_choice_is_isomorphic():
    plane = projective_plane(2)
    for base in (0, 3, 6):
        design = from_symmetric_residual(plane, base_point=base)
        assert shell_summary(design) == (2, 3, 3, 4, 1)
        assert fully_verified(design)


def test_symmetric_save_load_round_trip():
    design = paley_design(11)
    again = load_symmetric(save_symmetric(design))
    assert (again.v, again.k, again.lam) == (design.v, design.k, design.lam)
    assert set(again.blocks) == set(design.blocks)


def test_known_designs_all_verify():
    from tightdesigns.feasibility import enumerate_rows

    row_keys = {r.key for r in enumerate_rows(6, 30)}
    seen = set()
    for label, design in known_designs():
        r1, r2, n1, n2, w = shell_summary(design)
        profile = shells_of(design)
        assert profile.p == 2, label
        key = (design.n, r1, r2, n1, n2, w)
        assert key in row_keys, label  # every construction lands on a classified row
        if key in seen:
            continue
        seen.add(key)
        assert fully_verified(design), label
