"""Exact arithmetic core: intersection matrices, twist words, twist products.

All arithmetic is exact.  Matrix entries are Python ``int`` or
``fractions.Fraction``; values that are integral are normalised back to
``int`` so that equality and hashing behave uniformly.

Conventions
-----------
* External indices (curve labels) are 1-based; internal storage is 0-based.
* An intersection matrix ``omega`` is square, symmetric, nonnegative, with
  zero diagonal.  Entries may be rational.
* A twist word is stored run-length encoded as ``(gamma, powers)`` where
  ``gamma`` is the sequence of curve indices and ``powers`` the positive
  exponents; adjacent equal indices are merged on construction.
* The product of a word ``gamma = (i_1, ..., i_K)`` with exponents
  ``p = (p_1, ..., p_K)`` is ``Q_{i_K}^{p_K} ... Q_{i_1}^{p_1}`` — the first
  letter of the word is the *rightmost* factor, i.e. the first twist applied.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

from .errors import (
    IndexOutOfRange,
    InvalidWord,
    NegativeEntry,
    NonpositiveScale,
    NonzeroDiagonal,
    NotSquare,
    NotSymmetric,
)

Scalar = Union[int, Fraction]
ExactMatrix = Tuple[Tuple[Scalar, ...], ...]
ExactVector = Tuple[Scalar, ...]


# ---------------------------------------------------------------------------
# scalars
# ---------------------------------------------------------------------------

def exact(value) -> Scalar:
    """Coerce ``value`` (int, Fraction, or string like ``"3/2"``) to an exact
    scalar, normalising integral fractions to ``int``."""
    if isinstance(value, bool):
        raise TypeError("booleans are not valid matrix entries")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else value
    if isinstance(value, str):
        return exact(Fraction(value))
    raise TypeError(f"not an exact scalar: {value!r}")


# ---------------------------------------------------------------------------
# exact matrix helpers
# ---------------------------------------------------------------------------

def identity_matrix(n: int) -> ExactMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zero_vector(n: int) -> ExactVector:
    return (0,) * n


def mat_mul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    n, k, m = len(a), len(b), len(b[0])
    if len(a[0]) != k:
        raise ValueError("incompatible shapes")
    bt = tuple(zip(*b))
    return tuple(
        tuple(exact(sum(x * y for x, y in zip(row, col))) for col in bt)
        for row in a
    )


def mat_vec(a: ExactMatrix, v: ExactVector) -> ExactVector:
    if len(a[0]) != len(v):
        raise ValueError("incompatible shapes")
    return tuple(exact(sum(x * y for x, y in zip(row, v))) for row in a)


def vec_mat(v: ExactVector, a: ExactMatrix) -> ExactVector:
    if len(a) != len(v):
        raise ValueError("incompatible shapes")
    return tuple(exact(sum(v[i] * a[i][j] for i in range(len(v)))) for j in range(len(a[0])))


def mat_transpose(a: ExactMatrix) -> ExactMatrix:
    return tuple(zip(*a))


def mat_trace(a: ExactMatrix) -> Scalar:
    return exact(sum(a[i][i] for i in range(len(a))))


def mat_eq(a: ExactMatrix, b: ExactMatrix) -> bool:
    return len(a) == len(b) and all(
        len(ra) == len(rb) and all(x == y for x, y in zip(ra, rb))
        for ra, rb in zip(a, b)
    )


def mat_geq(a: ExactMatrix, b: ExactMatrix) -> bool:
    """Entrywise ``a >= b``."""
    return all(x >= y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


# ---------------------------------------------------------------------------
# intersection matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntersectionMatrix:
    """A symmetric nonnegative matrix with zero diagonal, stored exactly.

    Construct via :func:`validate_omega`; direct construction skips checks.
    """

    entries: ExactMatrix

    @property
    def n(self) -> int:
        return len(self.entries)

    def row(self, i: int) -> ExactVector:
        """Row for curve ``i`` (1-based)."""
        self.check_index(i)
        return self.entries[i - 1]

    def entry(self, i: int, j: int) -> Scalar:
        """Entry ``omega[i][j]`` (1-based)."""
        self.check_index(i)
        self.check_index(j)
        return self.entries[i - 1][j - 1]

    def check_index(self, i: int) -> None:
        if not (isinstance(i, int) and 1 <= i <= self.n):
            raise IndexOutOfRange(f"curve index {i} out of range 1..{self.n}")

    def max_entry(self) -> Scalar:
        return max(x for row in self.entries for x in row) if self.n else 0

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.entries)


def validate_omega(raw: Sequence[Sequence]) -> IntersectionMatrix:
    """Validate raw data as an intersection matrix.

    Accepts any nested sequence of ints, Fractions, or ``"p/q"`` strings.
    Raises :class:`NotSquare`, :class:`NotSymmetric`, :class:`NegativeEntry`
    or :class:`NonzeroDiagonal` with 1-based positions in the message.
    """
    if isinstance(raw, IntersectionMatrix):
        return raw
    rows = [tuple(exact(x) for x in row) for row in raw]
    n = len(rows)
    if n == 0:
        raise NotSquare("empty matrix")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise NotSquare(f"row {i + 1} has length {len(row)}, expected {n}")
    for i in range(n):
        if rows[i][i] != 0:
            raise NonzeroDiagonal(f"diagonal entry at ({i + 1},{i + 1}) is {rows[i][i]}")
        for j in range(n):
            if rows[i][j] < 0:
                raise NegativeEntry(f"entry at ({i + 1},{j + 1}) is negative")
            if rows[i][j] != rows[j][i]:
                raise NotSymmetric(
                    f"entries at ({i + 1},{j + 1}) and ({j + 1},{i + 1}) differ"
                )
    return IntersectionMatrix(tuple(rows))


def scale(omega: IntersectionMatrix, k: Scalar) -> IntersectionMatrix:
    """Return ``k * omega`` for a positive rational ``k``."""
    k = exact(k) if not isinstance(k, Fraction) else exact(k)
    if k <= 0:
        raise NonpositiveScale(f"scale factor must be positive, got {k}")
    return IntersectionMatrix(
        tuple(tuple(exact(k * x) for x in row) for row in omega.entries)
    )


# ---------------------------------------------------------------------------
# twist words
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TwistWord:
    """A positive twist word, run-length encoded.

    ``gamma`` is the tuple of curve indices (1-based) and ``powers`` the
    positive exponents.  Adjacent equal indices (including the wrap-around
    pair when the word is read cyclically by a closed-path interpretation)
    are *not* merged automatically here; use :meth:`normalized` for the
    merging constructor.  Invariants: equal lengths, at least one letter,
    positive exponents, consecutive indices distinct.
    """

    gamma: Tuple[int, ...]
    powers: Tuple[int, ...]

    def __post_init__(self):
        if len(self.gamma) != len(self.powers):
            raise InvalidWord("gamma and powers must have equal length")
        if not self.gamma:
            raise InvalidWord("twist word must have at least one letter")
        for p in self.powers:
            if not (isinstance(p, int) and p >= 1):
                raise InvalidWord(f"exponents must be positive integers, got {p}")
        for i in self.gamma:
            if not (isinstance(i, int) and i >= 1):
                raise InvalidWord(f"curve indices must be positive integers, got {i}")
        for a, b in zip(self.gamma, self.gamma[1:]):
            if a == b:
                raise InvalidWord(
                    "consecutive indices must be distinct (use TwistWord.normalized)"
                )

    @classmethod
    def normalized(cls, gamma: Iterable[int], powers: Iterable[int] = None) -> "TwistWord":
        """Build a word, merging adjacent equal indices by summing exponents.

        ``powers`` defaults to all ones.
        """
        gamma = list(gamma)
        if powers is None:
            powers = [1] * len(gamma)
        else:
            powers = list(powers)
        if len(gamma) != len(powers):
            raise InvalidWord("gamma and powers must have equal length")
        out_g: list = []
        out_p: list = []
        for i, p in zip(gamma, powers):
            if out_g and out_g[-1] == i:
                out_p[-1] += p
            else:
                out_g.append(i)
                out_p.append(p)
        return cls(tuple(out_g), tuple(out_p))

    @property
    def length(self) -> int:
        return len(self.gamma)

    def check_indices(self, n: int) -> None:
        for i in self.gamma:
            if not 1 <= i <= n:
                raise IndexOutOfRange(f"curve index {i} out of range 1..{n}")

    def repeated(self, times: int) -> "TwistWord":
        """The word concatenated with itself ``times`` times."""
        return TwistWord.normalized(self.gamma * times, self.powers * times)

    def __str__(self) -> str:
        return " ".join(
            f"T{i}" if p == 1 else f"T{i}^{p}"
            for i, p in zip(reversed(self.gamma), reversed(self.powers))
        )


# ---------------------------------------------------------------------------
# twist generators and products
# ---------------------------------------------------------------------------

def generator(omega: IntersectionMatrix, i: int) -> ExactMatrix:
    """The elementary twist matrix ``Q_i = I + D_i * omega``.

    ``Q_i`` equals the identity except that row ``i`` gains the ``i``-th row
    of ``omega``.  It is unipotent with determinant 1, and satisfies the
    powering identity ``Q_i(omega)^k = Q_i(k * omega)``.
    """
    omega.check_index(i)
    n = omega.n
    rows = []
    for r in range(n):
        if r == i - 1:
            rows.append(tuple(
                exact((1 if c == r else 0) + omega.entries[r][c]) for c in range(n)
            ))
        else:
            rows.append(tuple(1 if c == r else 0 for c in range(n)))
    return tuple(rows)


def twist_product(omega: IntersectionMatrix, word: TwistWord) -> ExactMatrix:
    """The product ``Q_{i_K}^{p_K} ... Q_{i_1}^{p_1}`` over ``omega``.

    Uses the powering identity ``Q_i^p = I + p * D_i * omega``: multiplying a
    partial product ``M`` on the left by ``Q_i^p`` only replaces row ``i`` by
    ``row_i(M) + p * row_i(omega) @ M``, so the whole product costs
    ``O(K n^2)`` exact operations.
    """
    word.check_indices(omega.n)
    n = omega.n
    m = [[1 if c == r else 0 for c in range(n)] for r in range(n)]
    for i, p in zip(word.gamma, word.powers):
        r = i - 1
        omega_row = omega.entries[r]
        extra = [
            sum(omega_row[t] * m[t][c] for t in range(n) if omega_row[t] != 0)
            for c in range(n)
        ]
        m[r] = [exact(m[r][c] + p * extra[c]) for c in range(n)]
    return tuple(tuple(row) for row in m)
