"""Limits of twist products along rays of intersection matrices.

As the intersection matrix is scaled by ``k -> infinity``, the normalized
action of a twist product converges to a composition of projections that
depends only on the *path* of curve indices, not on the twist exponents.
This module implements those limit objects exactly:

* ``q_arrow(omega, i, j)``: the limit of a single twist applied to a point
  leaving curve ``j`` and landing on curve ``i`` — a projection onto the
  hyperplane ``Z_i = (e_i^T omega)^perp`` in the direction ``e_j``.
* ``p_gamma``: the composition of these projections along a closed path.
* ``f_gamma``: the restriction of ``p_gamma`` to the invariant hyperplane
  ``W = (e_{i_1}^T omega)^perp``, expressed in an explicit basis; its
  characteristic polynomial is the limit of deflated characteristic
  polynomials of the scaled twist products.

All operations are exactly invariant under positive rescaling of ``omega``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

import mpmath as mp

from .core import (
    ExactMatrix,
    IntersectionMatrix,
    Scalar,
    TwistWord,
    exact,
    mat_mul,
    scale,
    twist_product,
    validate_omega,
)
from .errors import (
    DegenerateRow,
    NotAnEdge,
    NotGeneral,
    NotSupported,
    PreconditionViolated,
)
from .graphs import covers_vertices, graph_of, word_supported
from .spectral import (
    Poly,
    _to_mpf,
    char_poly_exact,
    default_digits,
    pf_eigenvalue,
)
from .factor import deflate


# ---------------------------------------------------------------------------
# points on the boundary of the ray space
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundaryPoint:
    """A ray of intersection matrices: ``omega`` up to positive scaling."""

    representative: IntersectionMatrix

    @classmethod
    def of(cls, omega) -> "BoundaryPoint":
        if isinstance(omega, BoundaryPoint):
            return omega
        omega = validate_omega(omega)
        if all(x == 0 for row in omega.entries for x in row):
            raise DegenerateRow("a boundary point must have a nonzero matrix")
        return cls(omega)

    def normalized(self) -> IntersectionMatrix:
        """The representative scaled so its largest entry is 1."""
        m = self.representative.max_entry()
        return scale(self.representative, Fraction(1, 1) / Fraction(m))

    def same_ray(self, other: "BoundaryPoint") -> bool:
        return self.normalized().entries == other.normalized().entries


def _as_matrix(omega) -> IntersectionMatrix:
    if isinstance(omega, BoundaryPoint):
        return omega.representative
    return validate_omega(omega) if not isinstance(omega, IntersectionMatrix) else omega


# ---------------------------------------------------------------------------
# elementary projections and their compositions
# ---------------------------------------------------------------------------

def q_arrow(omega, i: int, j: int) -> ExactMatrix:
    """The limiting projection ``Q_{i <- j} = I - omega[i][j]^(-1) T_{ji} omega``.

    It differs from the identity only in row ``j``, has zero ``j``-th column,
    kills the covector ``e_i^T omega`` on the left, and projects onto
    ``Z_i = (e_i^T omega)^perp`` in the direction ``e_j``.  Exactly invariant
    under positive rescaling of ``omega``.

    Raises :class:`NotAnEdge` when ``omega[i][j] == 0``.
    """
    omega = _as_matrix(omega)
    omega.check_index(i)
    omega.check_index(j)
    w = omega.entry(i, j)
    if i == j or w == 0:
        raise NotAnEdge(f"curves {i} and {j} do not intersect")
    n = omega.n
    inv = Fraction(1, 1) / Fraction(w)
    rows = []
    for r in range(n):
        if r == j - 1:
            rows.append(tuple(
                exact((1 if c == r else 0) - inv * omega.entries[i - 1][c])
                for c in range(n)
            ))
        else:
            rows.append(tuple(1 if c == r else 0 for c in range(n)))
    return tuple(rows)


def p_gamma(omega, gamma: Sequence[int]) -> ExactMatrix:
    """Composition of limit projections along a closed path.

    For ``gamma = (i_1, ..., i_K)`` this is
    ``Q_{i_1 <- i_K} Q_{i_K <- i_{K-1}} ... Q_{i_2 <- i_1}``
    (the step out of ``i_1`` is applied first).

    Raises :class:`NotSupported` if some consecutive pair (including the
    wrap-around pair) is not an edge of the intersection graph.
    """
    omega = _as_matrix(omega)
    gamma = tuple(gamma)
    if len(gamma) < 2:
        raise NotSupported("a closed path needs at least two vertices")
    n = omega.n
    product = tuple(tuple(1 if c == r else 0 for c in range(n)) for r in range(n))
    steps = list(zip(gamma, gamma[1:] + gamma[:1]))
    for frm, to in steps:
        try:
            q = q_arrow(omega, to, frm)
        except NotAnEdge as e:
            raise NotSupported(f"path step {frm} -> {to} is not an edge") from e
        product = mat_mul(q, product)
    return product


@dataclass(frozen=True)
class LimitMap:
    """``p_gamma`` restricted to the hyperplane ``W = (e_{i_1}^T omega)^perp``.

    ``basis`` spans ``W``: with ``m`` the pivot position (first nonzero entry
    of ``w = e_{i_1}^T omega``) the basis vectors are
    ``b_t = e_t - (w_t / w_m) e_m`` for ``t != m``.  ``matrix`` is the
    ``(n-1) x (n-1)`` matrix of the restricted map in that basis, and
    ``charpoly`` its characteristic polynomial (the limit of deflated
    characteristic polynomials along the ray).
    """

    i1: int
    pivot: int
    basis: Tuple[Tuple[Scalar, ...], ...]
    matrix: ExactMatrix
    charpoly: Poly
    full_matrix: ExactMatrix


def f_gamma(omega, gamma: Sequence[int]) -> LimitMap:
    """The limit map of a closed path, restricted to its invariant hyperplane.

    Structure: 0 is always an eigenvalue with one-dimensional eigenspace
    contribution from the collapsed direction; for a *contractible* path
    covering every vertex the characteristic polynomial of the full map
    degenerates to ``x (x - 1)^(n - 2)``.

    Raises :class:`DegenerateRow` when curve ``i_1`` meets no other curve.
    """
    omega = _as_matrix(omega)
    gamma = tuple(gamma)
    full = p_gamma(omega, gamma)
    n = omega.n
    i1 = gamma[0]
    w = omega.row(i1)
    if all(x == 0 for x in w):
        raise DegenerateRow(f"row {i1} of omega is zero")
    m = next(t for t in range(n) if w[t] != 0)  # 0-based pivot
    others = [t for t in range(n) if t != m]
    # basis vectors b_t = e_t - (w_t / w_m) e_m, for t != m
    basis = []
    for t in others:
        vec = [0] * n
        vec[t] = 1
        vec[m] = exact(-Fraction(w[t]) / Fraction(w[m]))
        basis.append(tuple(vec))
    # image of b_t under the full map, as a column; coordinates in the basis
    # are just the entries at the positions in `others` (the pivot entry is
    # determined by membership in W)
    cols = []
    for t in others:
        img = [
            exact(full[r][t] - Fraction(w[t]) / Fraction(w[m]) * full[r][m])
            for r in range(n)
        ]
        cols.append([img[r] for r in others])
    matrix = tuple(tuple(cols[c][r] for c in range(len(others))) for r in range(len(others)))
    chi = char_poly_exact(matrix)
    return LimitMap(
        i1=i1,
        pivot=m + 1,
        basis=tuple(basis),
        matrix=matrix,
        charpoly=chi,
        full_matrix=full,
    )


def insert_spur(gamma: Sequence[int], position: int, vertex: int) -> Tuple[int, ...]:
    """Insert a backtracking detour ``(..., g_t, v, g_t, ...)`` after the
    1-based ``position``; an elementary discrete homotopy rel the last edge."""
    gamma = tuple(gamma)
    if not 1 <= position <= len(gamma):
        raise ValueError("position out of range")
    t = position - 1
    if vertex == gamma[t]:
        raise ValueError("spur vertex must differ from the path vertex")
    return gamma[:t + 1] + (vertex, gamma[t]) + gamma[t + 1:]


def homotopy_invariance_check(omega, gamma: Sequence[int], position: int, vertex: int) -> bool:
    """Whether inserting a backtracking spur leaves the restricted limit map
    unchanged (it always should, provided the spur edge exists)."""
    omega = _as_matrix(omega)
    gamma = tuple(gamma)
    primed = insert_spur(gamma, position, vertex)
    base = f_gamma(omega, gamma)
    moved = f_gamma(omega, primed)
    return base.matrix == moved.matrix


# ---------------------------------------------------------------------------
# quantitative eigenvector estimate
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AsymptoticsResult:
    lhs: mp.mpf
    rhs: mp.mpf
    eigenvector: Tuple[mp.mpf, ...]
    target: Tuple[mp.mpf, ...]


def eigenvector_asymptotics(
    omega: IntersectionMatrix,
    word: TwistWord,
    k: Scalar = 1,
    digits: Optional[int] = None,
) -> AsymptoticsResult:
    """Check how close the leading left eigenvector is to its limit shape.

    For a word supported on a closed path ``gamma = (i_1, ..., i_K)``
    visiting every vertex, the leading left eigenvector of the twist product
    over ``k * omega`` — normalized as an explicit convex combination of the
    row generators ``e_i^T omega M`` — satisfies

        || v - p_1 e_{i_1}^T omega' - omega'[i_2][i_1]^(-1) e_{i_2}^T omega' ||_inf
            <= 2^K p_max^(K-2) ||omega'||_inf^(K-1)
               / (p_min^K  min_gamma(omega')^K)

    with ``omega' = k * omega`` and ``min_gamma`` the smallest entry of
    ``omega'`` along the path.  Requires ``min_gamma(omega') >= 1``.

    Returns the measured left-hand side and the bound.
    """
    digits = default_digits() if digits is None else digits
    g = graph_of(omega)
    if not word_supported(word, g):
        raise NotSupported("the word must trace a closed path in the graph")
    if not covers_vertices(word.gamma, omega.n):
        raise NotGeneral("the path must visit every vertex")
    omega_k = scale(omega, k)
    gamma, powers = word.gamma, word.powers
    n = omega.n
    K = len(gamma)
    pairs = list(zip(gamma, gamma[1:] + gamma[:1]))
    min_gamma = min(omega_k.entry(a, b) for a, b in pairs)
    if min_gamma < 1:
        raise PreconditionViolated(
            f"smallest intersection along the path is {min_gamma} < 1"
        )
    m = twist_product(omega_k, word)
    with mp.workdps(digits + 20):
        # left eigenvector by power iteration inside the invariant cone: the
        # seed 1^T omega M lies in C M and the cone is preserved, so the
        # iteration converges to the leading left eigenvector ray
        mat = mp.matrix([[_to_mpf(x) for x in row] for row in m])
        omega_m = mat_mul(omega_k.entries, m)
        y = mp.matrix([sum(_to_mpf(omega_m[i][j]) for i in range(n))
                       for j in range(n)])
        y = y / max(abs(v) for v in y)
        for _ in range(2000):
            z = (y.T * mat).T
            z = z / max(abs(v) for v in z)
            if max(abs(a - b) for a, b in zip(z, y)) < mp.mpf(10) ** (-(digits + 5)):
                y = z
                break
            y = z
        i1, i2 = gamma[0], gamma[1]
        p1 = powers[0]
        inv = Fraction(1) / Fraction(omega_k.entry(i2, i1))
        target = tuple(
            p1 * _to_mpf(omega_k.entries[i1 - 1][j])
            + _to_mpf(inv) * _to_mpf(omega_k.entries[i2 - 1][j])
            for j in range(n)
        )
        # the eigenvector is a ray; choose the representative closest to the
        # target in the sup norm (1-D convex minimization over the scale)
        ratios = [target[j] / y[j] for j in range(n) if y[j] != 0]
        lo, hi = min(ratios) * mp.mpf("0.5"), max(ratios) * 2

        def dist(t):
            return max(abs(t * y[j] - target[j]) for j in range(n))

        for _ in range(300):
            t1 = lo + (hi - lo) / 3
            t2 = hi - (hi - lo) / 3
            if dist(t1) <= dist(t2):
                hi = t2
            else:
                lo = t1
        t_best = (lo + hi) / 2
        v = tuple(t_best * y[j] for j in range(n))
        lhs = dist(t_best)
        p_max, p_min = max(powers), min(powers)
        norm_inf = max(_to_mpf(xx) for row in omega_k.entries for xx in row)
        rhs = (
            mp.mpf(2) ** K
            * mp.mpf(p_max) ** (K - 2)
            * norm_inf ** (K - 1)
            / (mp.mpf(p_min) ** K * _to_mpf(min_gamma) ** K)
        )
        return AsymptoticsResult(lhs=lhs, rhs=rhs, eigenvector=v, target=target)


# ---------------------------------------------------------------------------
# ray convergence / divergence experiment
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RayRow:
    scale: Scalar
    charpoly: Poly
    lam: Optional[mp.mpf]
    distance: Optional[mp.mpf]
    deflated: Optional[Tuple[mp.mpf, ...]]
    magnitudes: Optional[Tuple[mp.mpf, ...]]


@dataclass(frozen=True)
class DivergenceFit:
    """Per-eigenvalue power-law fit ``|eig_i(k)| ~ constant * k^exponent``."""

    exponents: Tuple[float, ...]
    constants: Tuple[float, ...]


@dataclass(frozen=True)
class RayTable:
    supported: bool
    rows: Tuple[RayRow, ...]
    limit: Optional[Poly]
    divergence: Optional[DivergenceFit]


def ray_convergence_experiment(
    omega: IntersectionMatrix,
    word: TwistWord,
    scales: Sequence[Scalar],
    digits: Optional[int] = None,
) -> RayTable:
    """Track characteristic polynomials of twist products along a ray.

    When the word is supported on a closed path of the intersection graph,
    the deflated polynomials ``u_k(x) / (x - lambda_k)`` converge to the
    characteristic polynomial of the restricted limit map ``f_gamma``; the
    table reports the sup-distance at each scale.

    When the path is *not* supported, the spectrum splits along different
    powers of ``k`` instead: each eigenvalue magnitude is fitted to
    ``constant * k^exponent`` by log-log least squares.

    Raises :class:`NotGeneral` if the word does not use every curve.
    """
    digits = default_digits() if digits is None else digits
    if not covers_vertices(word.gamma, omega.n):
        raise NotGeneral("the word must use every curve")
    g = graph_of(omega)
    supported = word_supported(word, g)
    rows = []
    if supported:
        limit_poly = f_gamma(omega, word.gamma).charpoly
        limit_coeffs = [_to_mpf(c) for c in limit_poly.coeffs]
        for k in scales:
            m = twist_product(scale(omega, k), word)
            u = char_poly_exact(m)
            lam = pf_eigenvalue(u, digits).value
            defl = deflate(u, lam, digits)
            with mp.workdps(digits + 10):
                dist = max(
                    abs((defl[i] if i < len(defl) else mp.mpf(0))
                        - (limit_coeffs[i] if i < len(limit_coeffs) else mp.mpf(0)))
                    for i in range(max(len(defl), len(limit_coeffs)))
                )
            rows.append(RayRow(k, u, lam, dist, defl, None))
        return RayTable(True, tuple(rows), limit_poly, None)
    # divergent branch: fit eigenvalue magnitudes against the scale
    mags_per_scale = []
    for k in scales:
        m = twist_product(scale(omega, k), word)
        u = char_poly_exact(m)
        with mp.workdps(digits + 10):
            roots = mp.polyroots([_to_mpf(c) for c in u.leading_first()],
                                 maxsteps=300, extraprec=200)
            mags = tuple(sorted((abs(r) for r in roots), reverse=True))
        mags_per_scale.append(mags)
        rows.append(RayRow(k, u, None, None, None, mags))
    if len(scales) < 2:
        raise ValueError("need at least two scales to fit growth exponents")
    exponents = []
    constants = []
    nslots = min(len(m) for m in mags_per_scale)
    logs_k = [mp.log(mp.mpf(k)) for k in scales]
    mean_x = sum(logs_k) / len(logs_k)
    for slot in range(nslots):
        ys = [mp.log(mags_per_scale[t][slot]) for t in range(len(scales))]
        mean_y = sum(ys) / len(ys)
        num = sum((lx - mean_x) * (ly - mean_y) for lx, ly in zip(logs_k, ys))
        den = sum((lx - mean_x) ** 2 for lx in logs_k)
        slope = num / den
        intercept = mean_y - slope * mean_x
        exponents.append(float(slope))
        constants.append(float(mp.e ** intercept))
    return RayTable(False, tuple(rows), None, DivergenceFit(tuple(exponents), tuple(constants)))
