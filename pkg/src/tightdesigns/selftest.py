"""Quick property suites for every module, used by the selftest command."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from . import constructions, designs, feasibility, nonexistence, verify
from .hamming import (
    BinaryWord,
    KrawtchoukTable,
    binomial,
    gram_closed_form,
    gram_schmidt_closed_form,
    gram_schmidt_generic,
    shell_intersection,
)


def _brute_gram(n, r1, r2, W1, W2):
    """Direct weighted shell sums of the degree-<=1 eigenfunction products."""
    table = KrawtchoukTable(n)
    e1 = BinaryWord.from_support(n, (1,))
    e2 = BinaryWord.from_support(n, (2,))
    d0 = c0 = c2 = Fraction(0)
    for r, W in ((r1, W1), (r2, W2)):
        s_d0 = s_c0 = s_c2 = 0
        for support in combinations(range(1, n + 1), r):
            x = BinaryWord.from_support(n, support)
            q1 = table(1, e1.distance(x))
            s_d0 += q1
            s_c0 += q1 * q1
            s_c2 += q1 * table(1, e2.distance(x))
        scale = Fraction(W, binomial(n, r))
        d0 += scale * s_d0
        c0 += scale * s_c0
        c2 += scale * s_c2
    return d0, c0, c2


def run(out) -> bool:
    ok = True

    def report(name, passed):
        nonlocal ok
        ok = ok and passed
        out.write(f"{'ok' if passed else 'FAIL'}  {name}\n")

    # Krawtchouk orthogonality and reciprocity, small n
    passed = True
    for n in range(1, 11):
        table = KrawtchoukTable(n)
        for k in range(n + 1):
            for l in range(k, n + 1):
                total = sum(binomial(n, u) * table(k, u) * table(l, u) for u in range(n + 1))
                passed &= total == (2**n * binomial(n, k) if k == l else 0)
            for u in range(n + 1):
                passed &= binomial(n, u) * table(k, u) == binomial(n, k) * table(u, k)
    report("krawtchouk orthogonality + reciprocity (n <= 10)", passed)

    passed = all(
        sum(shell_intersection(n, j, r, nu) for nu in range(n + 1)) == binomial(n, r)
        for n in range(1, 11) for j in range(n + 1) for r in range(n + 1)
    )
    report("shell_intersection row sums", passed)

    passed = True
    for n in range(4, 9):
        for r1 in range(1, n - 1):
            for r2 in range(r1 + 1, n):
                W1, W2 = Fraction(3, 2), Fraction(5, 7)
                g = gram_closed_form(n, r1, r2, W1, W2)
                passed &= (g.d0, g.c0, g.c2) == _brute_gram(n, r1, r2, W1, W2)
    report("gram closed form vs brute force (n <= 8)", passed)

    passed = True
    for n, r1, r2 in ((6, 2, 3), (8, 3, 5), (10, 2, 7)):
        g = gram_closed_form(n, r1, r2, Fraction(3), Fraction(4))
        _, closed_norms = gram_schmidt_closed_form(g)
        _, generic_norms = gram_schmidt_generic(g.matrix())
        passed &= closed_norms == generic_norms
    report("gram-schmidt closed form vs generic", passed)

    fano = constructions.projective_plane(2)
    built = constructions.from_symmetric_residual(fano)
    passed = (
        verify.moments_check(built, 2).ok
        and verify.balanced_check(built, 2).ok
        and verify.tightness_check(built).tight
        and verify.frame_check(built)
        and designs.relation_profile(built).is_coherent
        and designs.load(designs.save(built)) == built
        and designs.complement(designs.complement(built)) == built
    )
    report("residual of the Fano plane verifies end to end", passed)

    had = constructions.hadamard_design(constructions.sylvester_hadamard(2))
    passed = verify.moments_check(had, 2).ok and verify.frame_check(had)
    report("hadamard pairing m=3 verifies", passed)

    rows = feasibility.enumerate_rows(6, 12)
    keys = {row.key for row in rows}
    passed = bool(rows) and all(
        (row.n, row.n - row.r2, row.n - row.r1, row.n2, row.n1, 1 / row.w) in keys
        for row in rows
    )
    report("feasible rows closed under complement (n <= 12)", passed)

    six = feasibility.enumerate_rows(6, 6)
    verdicts = [nonexistence.decide(row) for row in six]
    passed = len(six) == 2 and all(v.found for v in verdicts)
    twentyseven = feasibility.enumerate_rows(27, 27)
    passed &= len(twentyseven) == 2 and all(
        nonexistence.decide(row).refuted for row in twentyseven
    )
    report("decide: n=6 rows found, n=27 rows refuted", passed)

    return ok
