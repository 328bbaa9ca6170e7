"""Design verification: the two design criteria, tightness, and the frame identities.

Two independent criteria decide whether a weighted set is a relative
t-design: the moment criterion (weighted sums of eigenfunction values equal
their shell averages) and the balance criterion (weighted counts of points
covering a fixed j-subset are constant per j).  They agree on H(n,2);
the test suite checks that equivalence on a corpus.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .designs import ShellProfile, WeightedDesign, WrongShellCount, shells_of
from .hamming import (
    BinaryWord,
    KrawtchoukTable,
    binomial,
    gram_closed_form,
    gram_shell_terms,
    shell_intersection,
)


class NotTight(ValueError):
    """frame_check needs a design of size exactly n+1."""


class DegenerateShells(ValueError):
    """Shell radii 0 or n are excluded from tightness analysis."""


@dataclass(frozen=True)
class MomentsReport:
    t: int
    ok: bool
    # (j, u, lhs, rhs) for the first failing eigenfunction index, if any
    first_violation: Optional[tuple[int, BinaryWord, Fraction, Fraction]]


@dataclass(frozen=True)
class BalancedReport:
    t: int
    ok: bool
    lambdas: Optional[tuple[Fraction, ...]]  # lambda_0 .. lambda_t when ok
    first_violation: Optional[tuple[int, BinaryWord, Fraction]]


@dataclass(frozen=True)
class TightnessReport:
    size: int
    bound: int
    tight: bool


def _shell_weights(profile: ShellProfile, design: WeightedDesign) -> dict[int, Fraction]:
    totals: dict[int, Fraction] = {}
    for p, w in zip(design.points, design.weights):
        totals[p.weight] = totals.get(p.weight, Fraction(0)) + w
    return totals


def _words_of_weight(n: int, j: int):
    for support in combinations(range(1, n + 1), j):
        yield BinaryWord.from_support(n, support)


def moments_check(design: WeightedDesign, t: int) -> MomentsReport:
    """Compare weighted eigenfunction sums against their shell averages.

    For every j <= t and every u of weight j the design must satisfy

      sum_y w(y) Q_j(d(u,y)) = sum_r (W_r/C(n,r)) sum_nu |X_r ∩ Γ_nu(u)| Q_j(nu),

    where the right side depends only on j.  Checking all such u is exactly
    the relative t-design condition, since these functions span the degree-j
    eigenspace.
    """
    n = design.n
    if t > n:
        raise ValueError(f"t={t} exceeds n={n}")
    table = KrawtchoukTable(n)
    totals = _shell_weights(shells_of(design), design)
    for j in range(t + 1):
        rhs = Fraction(0)
        for r, W in totals.items():
            acc = sum(
                shell_intersection(n, j, r, nu) * table(j, nu) for nu in range(n + 1)
            )
            rhs += W * Fraction(acc, binomial(n, r))
        for u in _words_of_weight(n, j):
            lhs = sum(
                w * table(j, u.distance(y)) for y, w in zip(design.points, design.weights)
            )
            if lhs != rhs:
                return MomentsReport(t, False, (j, u, lhs, rhs))
    return MomentsReport(t, True, None)


def balanced_check(design: WeightedDesign, t: int) -> BalancedReport:
    """Check that sum of w(y) over points with support containing u is constant per |u|."""
    n = design.n
    if t > n:
        raise ValueError(f"t={t} exceeds n={n}")
    lambdas = []
    for j in range(t + 1):
        expected: Optional[Fraction] = None
        for u in _words_of_weight(n, j):
            covered = sum(
                (w for y, w in zip(design.points, design.weights) if u.bits & ~y.bits == 0),
                Fraction(0),
            )
            if expected is None:
                expected = covered
            elif covered != expected:
                return BalancedReport(t, False, None, (j, u, covered))
        lambdas.append(expected)
    return BalancedReport(t, True, tuple(lambdas), None)


def _rank(matrix: list[list[Fraction]]) -> int:
    m = [row[:] for row in matrix]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    rank = 0
    for col in range(cols):
        pivot = next((r for r in range(rank, rows) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(rows):
            if r != rank and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[rank])]
        rank += 1
        if rank == rows:
            break
    return rank


def _invert(matrix: list[list[Fraction]]) -> list[list[Fraction]]:
    size = len(matrix)
    aug = [
        [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(size)]
        for i, row in enumerate(matrix)
    ]
    for col in range(size):
        pivot = next((r for r in range(col, size) if aug[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(size):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [row[size:] for row in aug]


def _two_shell_gram(design: WeightedDesign):
    profile = shells_of(design)
    if profile.p != 2:
        raise WrongShellCount(f"need exactly 2 shells, found {profile.p}")
    r1, r2 = profile.radii
    if r1 == 0 or r2 == design.n:
        raise DegenerateShells(f"shells ({r1}, {r2}) touch 0 or n")
    totals = _shell_weights(profile, design)
    return gram_closed_form(design.n, r1, r2, totals[r1], totals[r2])


def tightness_check(design: WeightedDesign) -> TightnessReport:
    """Compare |Y| with dim of the restricted degree-<=1 function space.

    The dimension is the rank of the (n+1) x (n+1) Gram matrix assembled
    from the closed-form inner products; for two shells with
    1 <= r1 < r2 <= n-1 it equals n+1.  Rank is computed by exact rational
    elimination, never by evaluating functions on whole shells.  Single-shell
    sets are supported so that full shells can be reported as non-tight.
    """
    n = design.n
    profile = shells_of(design)
    if profile.p > 2:
        raise WrongShellCount(f"need at most 2 shells, found {profile.p}")
    if any(r in (0, n) for r in profile.radii):
        raise DegenerateShells(f"shells {profile.radii} touch 0 or n")
    totals = _shell_weights(profile, design)
    d0 = c0 = c2 = Fraction(0)
    for r, W in totals.items():
        t_d0, t_c0, t_c2 = gram_shell_terms(n, r)
        d0 += W * t_d0
        c0 += W * t_c0
        c2 += W * t_c2
    matrix = [[c2] * (n + 1) for _ in range(n + 1)]
    for i in range(n):
        matrix[i][i] = c0
        matrix[i][n] = matrix[n][i] = d0
    matrix[n][n] = sum(totals.values())
    bound = _rank(matrix)
    return TightnessReport(design.size, bound, design.size == bound)


def frame_check(design: WeightedDesign) -> bool:
    """Exact dual-frame identities of a tight design, in square-root-free form.

    With E the (n+1) x |Y| evaluation matrix of (phi_1..phi_n, phi_0) on the
    design points, W the diagonal weight matrix, and G the closed-form Gram
    matrix, a tight relative 2-design satisfies E W E^T = G and
    E^T G^{-1} E = W^{-1} exactly.
    """
    n = design.n
    gram = _two_shell_gram(design)
    if design.size != n + 1:
        raise NotTight(f"|Y| = {design.size} != n+1 = {n + 1}")
    g = gram.matrix()
    # evaluation matrix: phi_s(y) = Q_1(distance(e_s, y)) = n - 2*distance, phi_0 = 1
    evaluation = []
    for s in range(1, n + 1):
        row = []
        for y in design.points:
            dist = (y.bits ^ (1 << (s - 1))).bit_count()
            row.append(Fraction(n - 2 * dist))
        evaluation.append(row)
    evaluation.append([Fraction(1)] * design.size)

    size = n + 1
    weights = design.weights
    for a in range(size):
        for b in range(a, size):
            acc = sum(weights[y] * evaluation[a][y] * evaluation[b][y] for y in range(size))
            if acc != g[a][b]:
                return False
    g_inv = _invert(g)
    for x in range(size):
        gx = [sum(g_inv[s][u] * evaluation[u][x] for u in range(size)) for s in range(size)]
        for y in range(size):
            acc = sum(evaluation[s][y] * gx[s] for s in range(size))
            expected = 1 / weights[x] if x == y else Fraction(0)
            if acc != expected:
                return False
    return True


def weight_constancy_check(design: WeightedDesign) -> bool:
    """True iff the weight function is constant on every shell."""
    return all(constant is not None for _, _, constant in shells_of(design).shells)
