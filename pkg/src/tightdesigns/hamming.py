"""Exact primitives of the binary Hamming scheme H(n,2).

Everything here is integer or rational arithmetic: binomial coefficients,
Krawtchouk polynomials, shell intersection counts, and the closed-form Gram
data of the degree-<=1 eigenfunctions restricted to two shells, together
with their Gram-Schmidt orthogonalization.  No floating point anywhere;
intermediate integers routinely exceed 64 bits (C(30,15)^2 scale).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb


class DegenerateGram(ValueError):
    """A closed-form Gram-Schmidt denominator vanished."""


class SingularLeadingMinor(ValueError):
    """A leading principal minor (Gram determinant) is zero."""


def binomial(n: int, k: int) -> int:
    """C(n, k); zero when k < 0 or k > n."""
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def krawtchouk(n: int, k: int, u: int) -> int:
    """Krawtchouk value Q_k(u) = sum_i (-1)^i C(n-u, k-i) C(u, i).

    Q_k is the common eigenvalue function of H(n,2) (its first and second
    eigenmatrices coincide); in particular Q_0 = 1 and Q_1(u) = n - 2u.
    """
    if not (0 <= k <= n and 0 <= u <= n):
        raise ValueError(f"krawtchouk indices out of range: n={n}, k={k}, u={u}")
    return sum((-1) ** i * binomial(n - u, k - i) * binomial(u, i) for i in range(k + 1))


class KrawtchoukTable:
    """All values Q_k(u), 0 <= k,u <= n, precomputed; immutable after build."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self._values = tuple(
            tuple(krawtchouk(n, k, u) for u in range(n + 1)) for k in range(n + 1)
        )

    def value(self, k: int, u: int) -> int:
        return self._values[k][u]

    __call__ = value


@dataclass(frozen=True, order=True)
class BinaryWord:
    """A word of {0,1}^n with 1-based coordinates, stored as a bit mask."""

    n: int
    bits: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("word length must be positive")
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError("bits outside the coordinate range")

    @classmethod
    def from_string(cls, text: str) -> "BinaryWord":
        """Parse a bit string like '110000'; string index 0 is coordinate 1."""
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a bit string: {text!r}")
        bits = 0
        for i, ch in enumerate(text):
            if ch == "1":
                bits |= 1 << i
        return cls(len(text), bits)

    @classmethod
    def from_support(cls, n: int, support) -> "BinaryWord":
        bits = 0
        for i in support:
            if not 1 <= i <= n:
                raise ValueError(f"coordinate {i} outside 1..{n}")
            bits |= 1 << (i - 1)
        return cls(n, bits)

    def to_string(self) -> str:
        return "".join("1" if self.bits >> i & 1 else "0" for i in range(self.n))

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.n) if self.bits >> i & 1)

    def distance(self, other: "BinaryWord") -> int:
        if self.n != other.n:
            raise ValueError("words of different length")
        return (self.bits ^ other.bits).bit_count()

    def complement(self) -> "BinaryWord":
        return BinaryWord(self.n, self.bits ^ ((1 << self.n) - 1))


def shell_intersection(n: int, j: int, r: int, nu: int) -> int:
    """|X_r intersect Gamma_nu(u)| for any word u of weight j.

    Nonzero only when nu = j + r - 2i for an integer i (the overlap of the
    two supports); the count is then C(j, i) * C(n-j, r-i).
    """
    if not (0 <= j <= n and 0 <= r <= n and 0 <= nu <= n):
        raise ValueError(f"shell_intersection arguments out of range: {(n, j, r, nu)}")
    twice_i = j + r - nu
    if twice_i < 0 or twice_i % 2:
        return 0
    i = twice_i // 2
    if i > min(j, r):
        return 0
    return binomial(j, i) * binomial(n - j, r - i)


@dataclass(frozen=True)
class GramParameters:
    """Inner products of the constant and degree-1 eigenfunctions on two shells.

    The inner product is the weighted shell average <f,g> = sum_i
    (W_i/|X_{r_i}|) sum_{x in X_{r_i}} f(x) g(x).  With phi_0 = 1 and
    phi_i(x) = Q_1(distance(e_i, x)):

      d0 = <phi_i, phi_0>, c0 = <phi_i, phi_i>, c2 = <phi_i, phi_j> (i != j).
    """

    n: int
    r1: int
    r2: int
    W1: Fraction
    W2: Fraction
    d0: Fraction
    c0: Fraction
    c2: Fraction

    @property
    def weight_sum(self) -> Fraction:
        """<phi_0, phi_0> = W1 + W2."""
        return self.W1 + self.W2

    def matrix(self) -> list[list[Fraction]]:
        """The (n+1) x (n+1) Gram matrix in basis order (phi_1..phi_n, phi_0)."""
        n = self.n
        g = [[self.c2] * (n + 1) for _ in range(n + 1)]
        for i in range(n):
            g[i][i] = self.c0
            g[i][n] = g[n][i] = self.d0
        g[n][n] = self.weight_sum
        return g


def gram_shell_terms(n: int, r: int) -> tuple[Fraction, Fraction, Fraction]:
    """Per-unit-weight contributions of one shell to (d0, c0, c2).

    The inner products are sums over shells, each shell contributing its
    weight times these closed forms; valid for any 1 <= r <= n-1.
    """
    if not 1 <= r <= n - 1:
        raise ValueError(f"shell index out of range: r={r}, n={n}")
    t_d0 = Fraction((n - 2) * (n - 2 * r), n)
    t_c0 = Fraction(4 * (n - 4) * r * r - 4 * n * (n - 4) * r + n * (n - 2) ** 2, n)
    t_c2 = Fraction(
        4 * (n * n - 5 * n + 8) * r * r
        - 4 * n * (n * n - 5 * n + 8) * r
        + n * (n - 1) * (n - 2) ** 2,
        n * (n - 1),
    )
    return t_d0, t_c0, t_c2


def gram_closed_form(n: int, r1: int, r2: int, W1: Fraction, W2: Fraction) -> GramParameters:
    """Closed forms for d0, c0, c2 on the shell pair (r1, r2) with shell weights W1, W2."""
    if not 1 <= r1 < r2 <= n - 1:
        raise ValueError(f"shell indices out of range: r1={r1}, r2={r2}, n={n}")
    W1, W2 = Fraction(W1), Fraction(W2)
    if W1 <= 0 or W2 <= 0:
        raise ValueError("shell weights must be positive")
    d0 = c0 = c2 = Fraction(0)
    for r, W in ((r1, W1), (r2, W2)):
        t_d0, t_c0, t_c2 = gram_shell_terms(n, r)
        d0 += W * t_d0
        c0 += W * t_c0
        c2 += W * t_c2
    return GramParameters(n, r1, r2, W1, W2, d0, c0, c2)


def gram_schmidt_closed_form(g: GramParameters) -> tuple[list[Fraction], list[Fraction]]:
    """Orthogonalize (phi_1, ..., phi_n, phi_0) using the closed forms.

    Returns (coefficients, squared norms), both of length n+1, where

      h_1     = phi_1
      h_i     = phi_i - coefficients[i-1] * (phi_1 + ... + phi_{i-1}),  2 <= i <= n
      h_{n+1} = phi_0 - coefficients[n] * (phi_1 + ... + phi_n)

    and squared norms are c0, (c0-c2)(c0+(i-1)c2)/(c0+(i-2)c2), and
    W1 + W2 - n*d0^2/(c0+(n-1)c2).
    """
    n, c0, c2, d0 = g.n, g.c0, g.c2, g.d0
    if c0 == c2:
        raise DegenerateGram("c0 = c2")
    for i in range(2, n + 2):
        if c0 + (i - 2) * c2 == 0:
            raise DegenerateGram(f"c0 + {i - 2}*c2 = 0")
    coefficients = [Fraction(0)]
    norms = [c0]
    for i in range(2, n + 1):
        den = c0 + (i - 2) * c2
        coefficients.append(c2 / den)
        norms.append((c0 - c2) * (c0 + (i - 1) * c2) / den)
    last_den = c0 + (n - 1) * c2
    coefficients.append(d0 / last_den)
    norms.append(g.weight_sum - n * d0 * d0 / last_den)
    return coefficients, norms


def gram_schmidt_generic(gram) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Gram-Schmidt on an arbitrary exact symmetric Gram matrix.

    Returns (expansion, norms): expansion is a lower unitriangular matrix C
    with h_i = sum_j C[i][j] phi_j, and norms[i] = ||h_{i+1}||^2 equals the
    ratio D_{i+1}/D_i of consecutive Gram determinants.  Raises
    SingularLeadingMinor when some D_j = 0.
    """
    m = len(gram)
    gram = [[Fraction(x) for x in row] for row in gram]
    if any(len(row) != m for row in gram):
        raise ValueError("gram matrix must be square")
    for i in range(m):
        for j in range(i):
            if gram[i][j] != gram[j][i]:
                raise ValueError("gram matrix must be symmetric")
    expansion: list[list[Fraction]] = []
    norms: list[Fraction] = []
    # inner[i][a] = <h_{i+1}, phi_{a+1}>, kept to make each step O(m^2)
    inner: list[list[Fraction]] = []
    for i in range(m):
        coeffs = [Fraction(0)] * m
        coeffs[i] = Fraction(1)
        for j in range(i):
            if norms[j] == 0:
                raise SingularLeadingMinor(f"Gram determinant D_{j + 1} = 0")
            mu = inner[j][i] / norms[j]
            for a in range(j + 1):
                coeffs[a] -= mu * expansion[j][a]
        row_inner = [
            sum(coeffs[a] * gram[a][b] for a in range(i + 1)) for b in range(m)
        ]
        norms.append(sum(coeffs[a] * row_inner[a] for a in range(i + 1)))
        expansion.append(coeffs)
        inner.append(row_inner)
    return expansion, norms
