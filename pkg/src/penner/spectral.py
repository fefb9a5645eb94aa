"""Exact spectral invariants of twist products.

Characteristic polynomials are computed exactly (integer or rational
coefficients), ranks by fraction-free elimination, and the leading
eigenvalue numerically to a requested number of digits via mpmath, always
starting from the exact polynomial.

Key structure: for a twist product ``M`` over ``omega`` of rank ``r``, the
characteristic polynomial splits as ``chi(x) = (x - 1)^(n - r) * p(x)`` with
``p`` monic of degree ``r`` and ``p(1) != 0``; for words using every curve
the number of eigenvalues different from 1 (the *complexity*) equals ``r``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence, Tuple, Union

import mpmath as mp

from .core import (
    ExactMatrix,
    ExactVector,
    IntersectionMatrix,
    Scalar,
    TwistWord,
    exact,
    mat_mul,
    twist_product,
)
from .errors import (
    DimensionMismatch,
    DivisionFailed,
    NotBipartite,
    NotPerronFrobenius,
)
from .graphs import bipartition, graph_of, is_connected, is_general

DEFAULT_DIGITS = 50


def default_digits() -> int:
    """Working precision in decimal digits; PENNER_PRECISION overrides."""
    raw = os.environ.get("PENNER_PRECISION")
    if raw is None:
        return DEFAULT_DIGITS
    digits = int(raw)
    if digits < 5:
        raise ValueError("PENNER_PRECISION must be at least 5")
    return digits


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

class Poly:
    """A univariate polynomial, coefficients stored constant term first.

    Coefficients are exact (``int`` / ``Fraction``) for everything computed
    symbolically; float/mpf coefficients are allowed for numeric targets
    (deflated polynomials, limits).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        cs = list(coeffs)
        while len(cs) > 1 and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(
            exact(c) if isinstance(c, (int, Fraction)) else c for c in cs
        )

    # -- basic structure ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, (int, Fraction)) for c in self.coeffs)

    @property
    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    def leading_first(self) -> Tuple:
        return tuple(reversed(self.coeffs))

    def __call__(self, x):
        acc = 0 * x  # keep the numeric type of x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        if self.degree == 0:
            return Poly([0])
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:])

    # -- arithmetic (exact) -------------------------------------------------

    def __mul__(self, other: "Poly") -> "Poly":
        out = [0] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    def __pow__(self, k: int) -> "Poly":
        result = Poly([1])
        for _ in range(k):
            result = result * self
        return result

    def divmod_exact(self, divisor: "Poly") -> Tuple["Poly", "Poly"]:
        """Exact polynomial division over the rationals."""
        if not (self.is_exact and divisor.is_exact):
            raise TypeError("exact division requires exact coefficients")
        rem = [Fraction(c) for c in self.coeffs]
        lead = Fraction(divisor.coeffs[-1])
        d = divisor.degree
        if len(rem) - 1 < d:
            return Poly([0]), Poly(rem)
        quot = [Fraction(0)] * (len(rem) - d)
        for top in range(len(rem) - 1, d - 1, -1):
            q = rem[top] / lead
            quot[top - d] = q
            if q != 0:
                for j, c in enumerate(divisor.coeffs):
                    rem[top - d + j] -= q * c
        return Poly(quot), Poly(rem)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    # -- comparison / display -----------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({self.coeffs!r})"

    def __str__(self):
        return poly_str(self)


def _is_zero(c) -> bool:
    try:
        return c == 0
    except TypeError:  # pragma: no cover
        return False


def poly_str(p: Poly, var: str = "x") -> str:
    terms = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if c == 0 and p.degree > 0:
            continue
        if k == 0:
            body = str(abs(c) if isinstance(c, (int, Fraction)) else c)
        else:
            xpow = var if k == 1 else f"{var}^{k}"
            mag = abs(c) if isinstance(c, (int, Fraction)) else c
            body = xpow if mag == 1 else f"{mag}*{xpow}"
        if not terms:
            sign = "-" if _negative(c) else ""
            terms.append(f"{sign}{body}")
        else:
            sign = "- " if _negative(c) else "+ "
            terms.append(f"{sign}{body}")
    return " ".join(terms) if terms else "0"


def _negative(c) -> bool:
    try:
        return c < 0
    except TypeError:  # pragma: no cover
        return False


X_MINUS_ONE = Poly([-1, 1])


# ---------------------------------------------------------------------------
# characteristic polynomial and rank
# ---------------------------------------------------------------------------

def char_poly_exact(m: ExactMatrix) -> Poly:
    """The characteristic polynomial ``det(x I - M)``, exactly.

    Faddeev–LeVerrier recursion: with ``N_0 = I``,
    ``c_k = -trace(M N_(k-1)) / k`` and ``N_k = M N_(k-1) + c_k I``.
    The divisions are exact over the integers whenever ``M`` is integral.
    """
    n = len(m)
    integral = all(isinstance(x, int) for row in m for x in row)
    coeffs_desc: list = [1]  # leading first
    nmat = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    for k in range(1, n + 1):
        mn = mat_mul(m, nmat)
        tr = sum(mn[i][i] for i in range(n))
        if integral:
            q, r = divmod(-tr, k)
            if r != 0:  # pragma: no cover - FL division is always exact
                raise ArithmeticError("inexact division in characteristic polynomial")
            c = q
        else:
            c = exact(Fraction(-tr, k) if isinstance(tr, int) else -Fraction(tr) / k)
        coeffs_desc.append(c)
        nmat = tuple(
            tuple(exact(mn[i][j] + (c if i == j else 0)) for j in range(n))
            for i in range(n)
        )
    return Poly(list(reversed(coeffs_desc)))


def determinant_from_char_poly(chi: Poly) -> Scalar:
    """``det(M) = (-1)^n * chi(0)``."""
    return exact(chi.coeffs[0] * (-1) ** chi.degree)


def rank_exact(matrix: Union[ExactMatrix, IntersectionMatrix]) -> int:
    """Rank over the rationals, by exact Gaussian elimination."""
    if isinstance(matrix, IntersectionMatrix):
        matrix = matrix.entries
    rows = [[Fraction(x) for x in row] for row in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    col = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            if rows[r][col] != 0:
                f = rows[r][col] / pv
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


# ---------------------------------------------------------------------------
# structure of the characteristic polynomial
# ---------------------------------------------------------------------------

def structure_split(chi: Poly, rank: int) -> Tuple[int, Poly]:
    """Split ``chi = (x - 1)^(n - rank) * p`` with ``p(1) != 0``.

    Returns ``(n - rank, p)``.  Raises :class:`DivisionFailed` if the
    division is not exact or the reduced polynomial still vanishes at 1.
    """
    n = chi.degree
    exponent = n - rank
    if exponent < 0:
        raise DivisionFailed(f"rank {rank} exceeds polynomial degree {n}")
    reduced = chi
    for _ in range(exponent):
        quot, rem = reduced.divmod_exact(X_MINUS_ONE)
        if not rem.is_zero():
            raise DivisionFailed(
                f"(x - 1)^{exponent} does not divide the characteristic polynomial"
            )
        reduced = quot
    if reduced(1) == 0:
        raise DivisionFailed("reduced polynomial still vanishes at x = 1")
    return exponent, reduced


def unit_root_multiplicity(p: Poly) -> int:
    """The multiplicity of 1 as a root, exactly (exact coefficients only)."""
    mult = 0
    cur = p
    while cur.degree > 0 and cur(1) == 0:
        cur, rem = cur.divmod_exact(X_MINUS_ONE)
        assert rem.is_zero()
        mult += 1
    return mult


def complexity(p: Poly, tol: Optional[float] = None) -> int:
    """Number of roots (with multiplicity) different from 1.

    Exact for exact coefficients.  For float coefficients, roots within
    ``tol`` (default ``1e-9``) of 1 are considered unit roots.
    """
    if p.is_exact:
        return p.degree - unit_root_multiplicity(p)
    tol = 1e-9 if tol is None else tol
    roots = mp.polyroots([mp.mpf(str(c)) for c in p.leading_first()], maxsteps=200)
    return sum(1 for r in roots if abs(r - 1) > tol)


def is_reciprocal(p: Poly) -> bool:
    """Whether ``p(x) = ± x^d p(1/x)`` (palindromic up to overall sign)."""
    fwd = p.coeffs
    rev = tuple(reversed(fwd))
    return fwd == rev or fwd == tuple(-c for c in rev)


# ---------------------------------------------------------------------------
# Perron-Frobenius
# ---------------------------------------------------------------------------

def pf_certify(omega: IntersectionMatrix, word: TwistWord) -> bool:
    """Exact criterion: the twist product over ``omega`` is Perron-Frobenius
    iff the intersection graph is connected and the word uses every curve."""
    word.check_indices(omega.n)
    return is_connected(graph_of(omega)) and is_general(word, omega.n)


class PFEigenvalue(NamedTuple):
    value: mp.mpf
    error: mp.mpf


def _to_mpf(c) -> mp.mpf:
    if isinstance(c, Fraction):
        return mp.mpf(c.numerator) / mp.mpf(c.denominator)
    return mp.mpf(c)


def refine_real_root(p: Poly, x0, digits: int) -> PFEigenvalue:
    """Newton-refine a simple real root of an exact polynomial.

    Returns the root to roughly ``digits`` significant digits together with
    a residual-based error bound ``2 |p(x)/p'(x)|``.
    """
    dp = p.derivative()
    with mp.workdps(digits + 15):
        x = mp.mpf(str(x0)) if not isinstance(x0, mp.mpf) else mp.mpf(x0)
        coeffs = [_to_mpf(c) for c in p.coeffs]
        dcoeffs = [_to_mpf(c) for c in dp.coeffs]

        def ev(cs, t):
            acc = mp.mpf(0)
            for c in reversed(cs):
                acc = acc * t + c
            return acc

        for _ in range(200):
            fx = ev(coeffs, x)
            dfx = ev(dcoeffs, x)
            if dfx == 0:
                break
            dx = fx / dfx
            x = x - dx
            if abs(dx) <= mp.mpf(10) ** (-(digits + 5)) * max(1, abs(x)):
                break
        err = 2 * abs(ev(coeffs, x) / ev(dcoeffs, x))
        return PFEigenvalue(mp.mpf(x), mp.mpf(err))


def pf_eigenvalue(source: Union[ExactMatrix, Poly], digits: Optional[int] = None) -> PFEigenvalue:
    """The leading (Perron-Frobenius) eigenvalue, to ``digits`` digits.

    ``source`` is either an exact matrix or its exact characteristic
    polynomial.  Eigenvalue 1 is stripped off exactly first (it may occur
    with high multiplicity), then the remaining roots are isolated
    numerically and the dominant one Newton-refined on the exact polynomial.

    Raises :class:`NotPerronFrobenius` if there is no simple dominant real
    eigenvalue strictly greater than 1.
    """
    digits = default_digits() if digits is None else digits
    chi = source if isinstance(source, Poly) else char_poly_exact(source)
    if not chi.is_exact:
        raise TypeError("pf_eigenvalue requires an exact polynomial")
    mult1 = unit_root_multiplicity(chi)
    reduced = chi
    for _ in range(mult1):
        reduced, _rem = reduced.divmod_exact(X_MINUS_ONE)
    if reduced.degree == 0:
        raise NotPerronFrobenius("all eigenvalues equal 1")
    dps = digits + 15
    with mp.workdps(dps):
        coeffs = [_to_mpf(c) for c in reduced.leading_first()]
        try:
            roots = mp.polyroots(coeffs, maxsteps=300, extraprec=4 * dps)
        except mp.libmp.libhyper.NoConvergence as e:  # pragma: no cover
            raise NotPerronFrobenius(f"root finding failed: {e}")
        radius = max(abs(r) for r in roots)
        tol = mp.mpf(10) ** (-digits // 2)
        dominant = [r for r in roots if abs(r) >= radius * (1 - tol)]
        real_dominant = [r for r in dominant if abs(mp.im(r)) <= radius * tol]
        if len(real_dominant) != 1 or len(dominant) != 1:
            raise NotPerronFrobenius(
                "dominant eigenvalue is not a simple real eigenvalue"
            )
        lam0 = mp.re(real_dominant[0])
        if lam0 <= 1:
            raise NotPerronFrobenius(f"leading eigenvalue {lam0} is not > 1")
    return refine_real_root(reduced, lam0, digits)


def pf_lower_bound(omega: IntersectionMatrix) -> Scalar:
    """``lambda >= min_i (1 + sum_j omega[i][j])`` for any PF twist product."""
    return min(exact(1 + sum(row)) for row in omega.entries)


# ---------------------------------------------------------------------------
# bipartite / symplectic structure
# ---------------------------------------------------------------------------

def symplectic_check(omega: IntersectionMatrix, m: ExactMatrix) -> bool:
    """Exact check that ``M`` preserves the skew form attached to a bipartite
    intersection graph.

    With the curves split into the two sides of the bipartition, the matrix
    ``Delta = [[0, X], [-X^T, 0]]`` (indices permuted so each side is a
    contiguous block) satisfies ``M^T Delta M = Delta`` for every twist
    product.  Equivalently, with ``U = diag(+1 on side a, -1 on side b)``,
    ``M^T (U omega) M = U omega``; the check is performed in this permuted
    form conjugated back to the original index order.

    Raises :class:`NotBipartite` if the intersection graph is not bipartite.
    """
    parts = bipartition(graph_of(omega))
    if parts is None:
        raise NotBipartite("intersection graph is not bipartite")
    side_a = set(parts[0])
    n = omega.n
    if len(m) != n or len(m[0]) != n:
        raise DimensionMismatch("matrix size does not match omega")
    delta = tuple(
        tuple(row) if (i + 1) in side_a else tuple(-x for x in row)
        for i, row in enumerate(omega.entries)
    )
    mt = tuple(zip(*m))
    lhs = mat_mul(mat_mul(mt, delta), m)
    return all(
        lhs[i][j] == delta[i][j] for i in range(n) for j in range(n)
    )


# ---------------------------------------------------------------------------
# the quadratic height
# ---------------------------------------------------------------------------

def height(omega: IntersectionMatrix, v: Sequence[Scalar]) -> Scalar:
    """The quadratic form ``h(v) = (1/2) v^T omega v``.

    For any elementary twist ``Q_i`` the exact identity
    ``h(Q_i v) - h(v) = ||Q_i v - v||^2`` holds (both sides equal ``s^2``
    with ``s = (e_i^T omega) v``).
    """
    if len(v) != omega.n:
        raise DimensionMismatch(f"vector length {len(v)} != n = {omega.n}")
    v = tuple(exact(x) if isinstance(x, (int, Fraction)) else exact(Fraction(x)) for x in v)
    total = sum(
        omega.entries[i][j] * v[i] * v[j]
        for i in range(omega.n)
        for j in range(omega.n)
        if omega.entries[i][j] != 0
    )
    return exact(Fraction(total) / 2 if isinstance(total, int) else total / 2)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectralReport:
    """Everything the degree pipeline needs about one twist product."""

    charpoly: Poly
    rank: int
    unit_exponent: int
    reduced: Poly
    complexity: int
    is_pf: bool
    pf_value: Optional[mp.mpf]
    pf_error: Optional[mp.mpf]
    digits: int


def spectral_report(
    omega: IntersectionMatrix,
    word: TwistWord,
    digits: Optional[int] = None,
    matrix: Optional[ExactMatrix] = None,
) -> SpectralReport:
    """Build the full spectral report for ``M = twist_product(omega, word)``."""
    digits = default_digits() if digits is None else digits
    m = twist_product(omega, word) if matrix is None else matrix
    chi = char_poly_exact(m)
    r = rank_exact(omega)
    exponent, reduced = structure_split(chi, r)
    delta = complexity(chi)
    certified = pf_certify(omega, word)
    lam = err = None
    if certified:
        pf = pf_eigenvalue(reduced, digits)
        lam, err = pf.value, pf.error
    return SpectralReport(
        charpoly=chi,
        rank=r,
        unit_exponent=exponent,
        reduced=reduced,
        complexity=delta,
        is_pf=certified,
        pf_value=lam,
        pf_error=err,
        digits=digits,
    )
