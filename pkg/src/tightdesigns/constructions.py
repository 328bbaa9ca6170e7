"""Constructions of tight relative 2-designs and of their input objects.

Two routes produce every known tight relative 2-design on two shells of
H(n,2): pairing the rows of a normalized Hadamard matrix of order m+1
(m = n/2 = 3 mod 4) with the coordinate pairs, and splitting a symmetric
2-(n+1, k, lambda) design at a base point.  The input catalogs (Sylvester
and Paley Hadamard matrices, projective planes, Paley difference-set
designs) are generated from first principles rather than bundled.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .designs import WeightedDesign, complement as design_complement
from .hamming import BinaryWord


class BadModulus(ValueError):
    """Paley constructions need an odd prime power q = 3 (mod 4)."""


class BadOrder(ValueError):
    """The Hadamard pairing needs order m+1 with m = 3 (mod 4)."""


class UnsupportedOrder(ValueError):
    """projective_plane only generates orders 2..5."""


class HalfSizeBlock(ValueError):
    """The complemented split is undefined when 2k = n+1."""


class DegenerateDesign(ValueError):
    """Complementing a symmetric design with v - k < 2 is degenerate."""


# ---------------------------------------------------------------------------
# small finite fields


def _prime_power(q: int):
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            k, m = 0, q
            while m % p == 0:
                m //= p
                k += 1
            return (p, k) if m == 1 else None
        p += 1
    return (q, 1)


class _Field:
    """GF(p^k) with elements as coefficient tuples modulo an irreducible polynomial."""

    def __init__(self, q: int):
        pk = _prime_power(q)
        if pk is None:
            raise ValueError(f"{q} is not a prime power")
        self.q = q
        self.p, self.k = pk
        self.modulus = self._find_irreducible()
        self.elements = [tuple(c) for c in product(range(self.p), repeat=self.k)]
        self.zero = (0,) * self.k
        self.one = (1,) + (0,) * (self.k - 1)

    def _find_irreducible(self) -> tuple[int, ...]:
        if self.k == 1:
            return (0, 1)
        for tail in product(range(self.p), repeat=self.k):
            poly = tail + (1,)
            if self._irreducible(poly):
                return poly
        raise AssertionError("no irreducible polynomial found")

    def _irreducible(self, poly) -> bool:
        for degree in range(1, len(poly) - 1):
            for tail in product(range(self.p), repeat=degree):
                divisor = tail + (1,)
                if not any(self._poly_mod(poly, divisor)):
                    return False
        return True

    def _poly_mod(self, a, b) -> tuple[int, ...]:
        a = list(a)
        db = len(b) - 1
        for i in range(len(a) - 1, db - 1, -1):
            c = a[i]
            if c:
                for j in range(db + 1):
                    a[i - db + j] = (a[i - db + j] - c * b[j]) % self.p
        return tuple(a[:db]) if db else ()

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def mul(self, a, b):
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] = (prod[i + j] + x * y) % self.p
        m = self.modulus
        for i in range(len(prod) - 1, self.k - 1, -1):
            c = prod[i]
            if c:
                for j in range(self.k + 1):
                    prod[i - self.k + j] = (prod[i - self.k + j] - c * m[j]) % self.p
        return tuple(prod[: self.k])

    def nonzero_squares(self) -> set:
        return {self.mul(x, x) for x in self.elements if x != self.zero}


# ---------------------------------------------------------------------------
# Hadamard matrices


@dataclass(frozen=True)
class HadamardMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        h = len(self.rows)
        for row in self.rows:
            if len(row) != h or set(row) - {1, -1}:
                raise ValueError("entries must be +1/-1 in a square matrix")
        for i in range(h):
            for j in range(i, h):
                dot = sum(self.rows[i][t] * self.rows[j][t] for t in range(h))
                if dot != (h if i == j else 0):
                    raise ValueError("rows are not orthogonal: H H^T != h I")

    @property
    def order(self) -> int:
        return len(self.rows)

    def normalized(self) -> "HadamardMatrix":
        """Sign-flip columns, then rows, so row 0 and column 0 are all +1."""
        rows = [list(r) for r in self.rows]
        for c, sign in enumerate(rows[0]):
            if sign < 0:
                for row in rows:
                    row[c] = -row[c]
        for row in rows:
            if row[0] < 0:
                row[:] = [-x for x in row]
        return HadamardMatrix(tuple(tuple(r) for r in rows))


def sylvester_hadamard(k: int) -> HadamardMatrix:
    """Order 2^k by repeated doubling of [[+,+],[+,-]]."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    rows = [[1]]
    for _ in range(k):
        rows = [r + r for r in rows] + [r + [-x for x in r] for r in rows]
    return HadamardMatrix(tuple(tuple(r) for r in rows))


def paley_hadamard(q: int) -> HadamardMatrix:
    """Order q+1 from quadratic residues of GF(q), q an odd prime power = 3 (mod 4)."""
    if _prime_power(q) is None or q % 4 != 3:
        raise BadModulus(f"need an odd prime power q = 3 (mod 4), got {q}")
    field = _Field(q)
    squares = field.nonzero_squares()

    def chi(x):
        if x == field.zero:
            return 0
        return 1 if x in squares else -1

    elems = field.elements
    rows = [[1] * (q + 1)]
    for i, a in enumerate(elems):
        row = [-1]
        for j, b in enumerate(elems):
            if i == j:
                row.append(1)
            else:
                row.append(chi(field.sub(b, a)))
        rows.append(row)
    return HadamardMatrix(tuple(tuple(r) for r in rows)).normalized()


def hadamard_design(matrix: HadamardMatrix) -> WeightedDesign:
    """Tight relative 2-design in H(2m,2) from a Hadamard matrix of order m+1.

    The shell X_2 part takes one word per coordinate pair {2i-1, 2i}; the
    shell X_m part encodes each normalized row by setting pair i to (1,0)
    for +1 and (0,1) for -1.  Weights are 1 on X_2 and 8/(n+2) on X_m.
    """
    m = matrix.order - 1
    if m % 4 != 3:
        raise BadOrder(f"order {matrix.order} = m+1 needs m = 3 (mod 4)")
    h = matrix.normalized()
    n = 2 * m
    points = [BinaryWord.from_support(n, (2 * i - 1, 2 * i)) for i in range(1, m + 1)]
    for row in h.rows:
        support = []
        for i in range(1, m + 1):
            support.append(2 * i - 1 if row[i] > 0 else 2 * i)
        points.append(BinaryWord.from_support(n, support))
    weights = [Fraction(1)] * m + [Fraction(8, n + 2)] * (m + 1)
    return WeightedDesign(n, tuple(points), tuple(weights))


# ---------------------------------------------------------------------------
# symmetric 2-designs


@dataclass(frozen=True)
class SymmetricDesign:
    """A symmetric 2-(v, k, lam) design on points 0..v-1."""

    v: int
    k: int
    lam: int
    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        v, k, lam = self.v, self.k, self.lam
        if lam * (v - 1) != k * (k - 1):
            raise ValueError(f"lam(v-1) != k(k-1) for 2-({v},{k},{lam})")
        if len(self.blocks) != v or len(set(self.blocks)) != v:
            raise ValueError("need v pairwise distinct blocks")
        degree = [0] * v
        for block in self.blocks:
            if len(block) != k or any(not 0 <= x < v for x in block):
                raise ValueError("blocks must be k-subsets of 0..v-1")
            for x in block:
                degree[x] += 1
        if any(d != k for d in degree):
            raise ValueError("every point must lie in exactly k blocks")
        for x, y in combinations(range(v), 2):
            if sum(1 for b in self.blocks if x in b and y in b) != lam:
                raise ValueError(f"pair ({x},{y}) is not in exactly {lam} blocks")
        for b1, b2 in combinations(self.blocks, 2):
            if len(b1 & b2) != lam:
                raise ValueError("two blocks meet in != lam points")


def projective_plane(q: int) -> SymmetricDesign:
    """The 2-(q^2+q+1, q+1, 1) design of points and lines of PG(2, q)."""
    if q not in (2, 3, 4, 5):
        raise UnsupportedOrder(f"order {q} not in 2..5")
    field = _Field(q)
    points = []
    for vec in product(field.elements, repeat=3):
        lead = next((c for c in vec if c != field.zero), None)
        if lead == field.one:  # normalized representative of a 1-d subspace
            points.append(vec)
    assert len(points) == q * q + q + 1

    def dot(a, b):
        acc = field.zero
        for x, y in zip(a, b):
            acc = field.add(acc, field.mul(x, y))
        return acc

    blocks = tuple(
        frozenset(i for i, x in enumerate(points) if dot(a, x) == field.zero)
        for a in points
    )
    return SymmetricDesign(len(points), q + 1, 1, blocks)


def paley_design(q: int) -> SymmetricDesign:
    """The 2-(q, (q-1)/2, (q-3)/4) design of quadratic-residue translates in GF(q)."""
    if _prime_power(q) is None or q % 4 != 3:
        raise BadModulus(f"need an odd prime power q = 3 (mod 4), got {q}")
    field = _Field(q)
    index = {e: i for i, e in enumerate(field.elements)}
    squares = field.nonzero_squares()
    blocks = tuple(
        frozenset(index[field.add(s, g)] for s in squares) for g in field.elements
    )
    return SymmetricDesign(q, (q - 1) // 2, (q - 3) // 4, blocks)


def complement_design(design: SymmetricDesign) -> SymmetricDesign:
    """Blockwise complement: 2-(v, v-k, v-2k+lam)."""
    if design.v - design.k < 2:
        raise DegenerateDesign("complement blocks would have fewer than 2 points")
    everything = frozenset(range(design.v))
    return SymmetricDesign(
        design.v,
        design.v - design.k,
        design.v - 2 * design.k + design.lam,
        tuple(everything - b for b in design.blocks),
    )


def _coordinate_map(design: SymmetricDesign, base_point: int) -> dict[int, int]:
    if not 0 <= base_point < design.v:
        raise ValueError(f"base point {base_point} outside 0..{design.v - 1}")
    rest = [x for x in range(design.v) if x != base_point]
    return {x: i + 1 for i, x in enumerate(rest)}


def from_symmetric_residual(design: SymmetricDesign, base_point: int = 0) -> WeightedDesign:
    """Split a symmetric 2-(n+1,k,lam) design at a point into shells (k-1, k).

    Blocks through the base point lose it and land on shell k-1 (there are
    k of them); blocks avoiding it keep their support and land on shell k.
    All weights are 1.
    """
    coord = _coordinate_map(design, base_point)
    n = design.v - 1
    points = []
    for block in design.blocks:
        if base_point in block:
            points.append(BinaryWord.from_support(n, (coord[x] for x in block if x != base_point)))
    for block in design.blocks:
        if base_point not in block:
            points.append(BinaryWord.from_support(n, (coord[x] for x in block)))
    return WeightedDesign(n, tuple(points), (Fraction(1),) * len(points))


def from_symmetric_complemented(design: SymmetricDesign, base_point: int = 0) -> WeightedDesign:
    """Split variant with shells (k, n-k+1), defined when 2k != n+1.

    Blocks through the base point contribute the complement of their support
    within the remaining points (shell n-k+1); blocks avoiding it contribute
    their support (shell k).  All weights are 1.
    """
    n = design.v - 1
    if 2 * design.k == n + 1:
        raise HalfSizeBlock("2k = n+1 would collapse both shells")
    coord = _coordinate_map(design, base_point)
    points = []
    for block in design.blocks:
        if base_point in block:
            outside = (coord[x] for x in range(design.v) if x != base_point and x not in block)
            points.append(BinaryWord.from_support(n, outside))
    for block in design.blocks:
        if base_point not in block:
            points.append(BinaryWord.from_support(n, (coord[x] for x in block)))
    return WeightedDesign(n, tuple(points), (Fraction(1),) * len(points))


def save_symmetric(design: SymmetricDesign) -> bytes:
    obj = {
        "v": design.v,
        "k": design.k,
        "lambda": design.lam,
        "blocks": [sorted(b) for b in design.blocks],
    }
    return (json.dumps(obj, indent=2) + "\n").encode("utf-8")


def load_symmetric(data) -> SymmetricDesign:
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid JSON: {exc}") from None
    try:
        return SymmetricDesign(
            obj["v"], obj["k"], obj["lambda"], tuple(frozenset(b) for b in obj["blocks"])
        )
    except KeyError as exc:
        raise ValueError(f"missing field {exc}") from None


# ---------------------------------------------------------------------------
# the generated catalog


HADAMARD_SIDES = (3, 7, 11, 15)
PLANE_ORDERS = (2, 3, 4, 5)
PALEY_ORDERS = (7, 11, 19, 23, 27, 31)


def hadamard_of_order(order: int) -> HadamardMatrix:
    if order & (order - 1) == 0:
        return sylvester_hadamard(order.bit_length() - 1)
    return paley_hadamard(order - 1)


def known_designs() -> list[tuple[str, WeightedDesign]]:
    """Every design the generated catalog can build, with provenance labels.

    Covers the Hadamard pairings for m in HADAMARD_SIDES, both splits of
    every cataloged symmetric design and of its complement, and the
    H(n,2)-complement of each of those.
    """
    out: list[tuple[str, WeightedDesign]] = []
    for m in HADAMARD_SIDES:
        built = hadamard_design(hadamard_of_order(m + 1))
        out.append((f"hadamard[m={m}]", built))
        out.append((f"complement(hadamard[m={m}])", design_complement(built)))
    symmetric: list[tuple[str, SymmetricDesign]] = []
    for q in PLANE_ORDERS:
        symmetric.append((f"plane[{q}]", projective_plane(q)))
    for q in PALEY_ORDERS:
        symmetric.append((f"paley[{q}]", paley_design(q)))
    for label, sym in list(symmetric):
        symmetric.append((f"complement({label})", complement_design(sym)))
    for label, sym in symmetric:
        splits = [(f"residual({label})", from_symmetric_residual(sym))]
        if 2 * sym.k != sym.v:
            splits.append((f"complemented({label})", from_symmetric_complemented(sym)))
        for split_label, built in splits:
            out.append((split_label, built))
            out.append((f"complement({split_label})", design_complement(built)))
    return out
