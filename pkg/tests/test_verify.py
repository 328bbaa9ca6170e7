import random
from fractions import Fraction
from itertools import combinations

import pytest

from tightdesigns import constructions
from tightdesigns.designs import (
    WeightedDesign,
    WrongShellCount,
    make_design,
)
from tightdesigns.hamming import BinaryWord
from tightdesigns.verify import (
    DegenerateShells,
    NotTight,
    balanced_check,
    frame_check,
    moments_check,
    tightness_check,
    weight_constancy_check,
)


def six_design():
    return constructions.hadamard_design(constructions.sylvester_hadamard(2))


def fourteen_design():
    return constructions.hadamard_design(constructions.sylvester_hadamard(3))


def full_shell(n, r, weight=Fraction(1)):
    supports = list(combinations(range(1, n + 1), r))
    return make_design(n, supports, [weight] * len(supports))


def test_full_shell_is_design_for_every_t():
    for n, r in ((5, 2), (6, 3)):
        design = full_shell(n, r, Fraction(2, 3))
        for t in range(n + 1):
            assert moments_check(design, t).ok


def test_moments_six_design():
    assert moments_check(six_design(), 2).ok


def test_moments_perturbed_six_design():
    base = six_design()
    # swap one weight-3 point for another weight-3 word not in the design
    used = set(base.points)
    replacement = next(
        BinaryWord.from_support(6, s)
        for s in combinations(range(1, 7), 3)
        if BinaryWord.from_support(6, s) not in used
    )
    points = list(base.points)
    points[4] = replacement  # a shell-3 point
    perturbed = WeightedDesign(6, tuple(points), base.weights)
    report = moments_check(perturbed, 2)
    assert not report.ok
    assert report.first_violation[0] in (1, 2)


def test_balanced_six_design():
    report = balanced_check(six_design(), 2)
    assert report.ok
    assert report.lambdas == (Fraction(7), Fraction(3), Fraction(1))  # lambda_0 is the total weight


def test_balanced_lambda0_total_weight():
    design = make_design(5, [(1, 2), (3,)], [Fraction(1, 3), Fraction(5, 2)])
    report = balanced_check(design, 0)
    assert report.ok and report.lambdas == (Fraction(1, 3) + Fraction(5, 2),)


def test_balanced_violation_reported():
    design = make_design(5, [(1, 2), (2, 3)], [1, 1])
    report = balanced_check(design, 1)
    assert not report.ok
    assert report.lambdas is None
    j, u, observed = report.first_violation
    assert j == 1 and observed in (Fraction(0), Fraction(1), Fraction(2))


def test_moments_t_out_of_range():
    with pytest.raises(ValueError):
        moments_check(six_design(), 7)


def test_tightness_six_design():
    report = tightness_check(six_design())
    assert (report.size, report.bound, report.tight) == (7, 7, True)


def test_tightness_full_shell_not_tight():
    report = tightness_check(full_shell(6, 2))
    assert report.size == 15 and not report.tight
    assert report.bound <= 7


def test_tightness_bound_is_n_plus_one():
    for design in (six_design(), fourteen_design()):
        assert tightness_check(design).bound == design.n + 1


def test_tightness_errors():
    with pytest.raises(DegenerateShells):
        tightness_check(make_design(4, [(), (1, 2)], [1, 1]))  # contains the base point
    with pytest.raises(WrongShellCount):
        tightness_check(make_design(6, [(1,), (1, 2), (1, 2, 3)], [1, 1, 1]))


def test_frame_check_constructed_designs():
    assert frame_check(six_design())
    assert frame_check(fourteen_design())  # non-constant weight across shells


def test_frame_check_rejects_non_design():
    base = six_design()
    tweaked = WeightedDesign(
        6, base.points, base.weights[:3] + (Fraction(2),) + base.weights[4:]
    )
    assert not frame_check(tweaked)


def test_frame_check_not_tight():
    with pytest.raises(NotTight):
        frame_check(make_design(6, [(1, 2), (1, 2, 3)], [1, 1]))


def test_weight_constancy():
    assert weight_constancy_check(six_design())
    assert weight_constancy_check(fourteen_design())
    mixed = make_design(6, [(1, 2), (3, 4)], [1, 2])
    assert not weight_constancy_check(mixed)


def random_weighted_subset(rng, n):
    size = rng.randint(2, min(10, 2**n - 2))
    supports = rng.sample(
        [s for k in range(n + 1) for s in combinations(range(1, n + 1), k)], size
    )
    weights = [Fraction(rng.randint(1, 6), rng.randint(1, 4)) for _ in supports]
    return make_design(n, supports, weights)


def test_criterion_equivalence_small_corpus():
    """moments_check and balanced_check agree (a large corpus runs in acceptance)."""
    rng = random.Random(7)
    corpus = [six_design(), full_shell(5, 2)]
    corpus += [random_weighted_subset(rng, rng.randint(3, 7)) for _ in range(40)]
    for design in corpus:
        for t in (1, 2):
            assert moments_check(design, t).ok == balanced_check(design, t).ok
