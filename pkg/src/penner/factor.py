"""Factorization over the integers and degree certification of the leading
eigenvalue.

``factor_monic`` factors a monic integer polynomial into irreducible integer
factors (delegated to sympy's Zassenhaus/LLL machinery) and certifies the
result by exact re-multiplication.  ``degree_of_pf_root`` then identifies the
unique irreducible factor vanishing at the leading eigenvalue: the algebraic
degree of the stretch factor is the degree of that factor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath as mp
import sympy

from .errors import AmbiguousRootAssignment, RootMismatch
from .spectral import (
    PFEigenvalue,
    Poly,
    SpectralReport,
    _to_mpf,
    refine_real_root,
)

_X = sympy.Symbol("x")


@dataclass(frozen=True)
class Factorization:
    """Irreducible factorization ``product(f^e) = input`` over the integers."""

    factors: Tuple[Tuple[Poly, int], ...]
    certified: bool

    def __iter__(self):
        return iter(self.factors)

    def product(self) -> Poly:
        out = Poly([1])
        for f, e in self.factors:
            for _ in range(e):
                out = out * f
        return out


def factor_monic(p: Poly) -> Factorization:
    """Factor a monic integer polynomial into monic irreducible factors.

    The factor list is certified by exact re-multiplication; factors are
    sorted by (degree, coefficients) for determinism.
    """
    if not p.is_exact or not all(isinstance(c, int) for c in p.coeffs):
        raise ValueError("factor_monic requires integer coefficients")
    if not p.is_monic:
        raise ValueError("factor_monic requires a monic polynomial")
    if p.degree < 1:
        raise ValueError("factor_monic requires degree >= 1")
    spoly = sympy.Poly(list(p.leading_first()), _X, domain="ZZ")
    content, sym_factors = spoly.factor_list()
    if content != 1:  # pragma: no cover - impossible for monic input
        raise ValueError("unexpected content in monic factorization")
    factors = []
    for f, e in sym_factors:
        coeffs = [int(c) for c in reversed(f.all_coeffs())]
        factors.append((Poly(coeffs), int(e)))
    factors.sort(key=lambda fe: (fe[0].degree, fe[0].coeffs))
    result = Factorization(tuple(factors), certified=False)
    if result.product() != p:  # pragma: no cover - sympy returned bad factors
        raise ArithmeticError("factorization failed certification")
    return Factorization(tuple(factors), certified=True)


def is_irreducible(p: Poly) -> bool:
    fz = factor_monic(p)
    return len(fz.factors) == 1 and fz.factors[0][1] == 1


# ---------------------------------------------------------------------------
# degree of the leading eigenvalue
# ---------------------------------------------------------------------------

def _mpf_to_fraction(x: mp.mpf) -> Fraction:
    """The exact rational value stored in an mpf (no re-rounding)."""
    if not isinstance(x, mp.mpf):
        raise TypeError(f"expected an mpf, got {type(x).__name__}")
    man, exp = x.man_exp
    if exp >= 0:
        return Fraction(int(man) << int(exp))
    return Fraction(int(man), 1 << int(-exp))


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def degree_of_pf_root(
    report: SpectralReport,
    digits: Optional[int] = None,
    max_retries: int = 5,
) -> Tuple[int, Poly, Factorization]:
    """Identify the irreducible factor of the reduced characteristic
    polynomial that has the leading eigenvalue as a root.

    Returns ``(degree, minimal_polynomial, factorization)``.  The candidate
    factor (smallest ``|f(lambda)|``) is verified with exact rational
    arithmetic: it must change sign across a tight bracket around ``lambda``
    while every other factor keeps a constant sign there.  On failure the
    working precision is quadrupled, up to ``max_retries`` attempts; if the
    assignment never becomes unambiguous, :class:`AmbiguousRootAssignment`
    is raised.
    """
    if report.pf_value is None:
        raise RootMismatch("report carries no leading eigenvalue")
    digits = report.digits if digits is None else digits
    reduced = report.reduced
    fz = factor_monic(reduced)
    lam = report.pf_value
    for attempt in range(max_retries):
        pf = refine_real_root(reduced, lam, digits)
        lam, err = pf.value, pf.error
        eps = max(err, mp.mpf(10) ** (-(digits - 2)))
        lam_frac = _mpf_to_fraction(lam)
        eps_frac = _mpf_to_fraction(eps)
        lo = lam_frac - 10 * eps_frac
        hi = lam_frac + 10 * eps_frac
        best = None
        ambiguous = False
        for f, _e in fz.factors:
            s_lo = _sign(Fraction(f(lo)))
            s_hi = _sign(Fraction(f(hi)))
            changes = s_lo * s_hi <= 0
            if changes:
                if best is None:
                    best = f
                else:
                    ambiguous = True
        if best is not None and not ambiguous:
            return best.degree, best, fz
        digits *= 4
    raise AmbiguousRootAssignment(
        "could not isolate the leading eigenvalue inside a unique factor"
    )


# ---------------------------------------------------------------------------
# convergence diagnostics for families of characteristic polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConvergenceRow:
    scale: object
    lam: mp.mpf
    distance: mp.mpf
    deflated: Tuple[mp.mpf, ...]
    factor_agreement: Dict[complex, bool]


@dataclass(frozen=True)
class ConvergenceReport:
    rows: Tuple[ConvergenceRow, ...]
    lambdas_increasing: bool


def deflate(p: Poly, lam: mp.mpf, digits: int = 50) -> Tuple[mp.mpf, ...]:
    """Coefficients (constant first) of ``p(x) / (x - lam)`` by synthetic
    division, dropping the remainder."""
    with mp.workdps(digits + 10):
        lead = p.leading_first()
        out = []
        acc = mp.mpf(0)
        for c in lead:
            acc = acc * lam + _to_mpf(c)
            out.append(acc)
        # out[-1] is the remainder p(lam); quotient is out[:-1], leading first
        return tuple(reversed(out[:-1]))


def convergence_diagnostic(
    sequence: Sequence[Tuple[object, Poly, mp.mpf]],
    limit: Poly,
    tol: float = 1e-8,
    digits: int = 50,
) -> ConvergenceReport:
    """Diagnose convergence of deflated characteristic polynomials.

    ``sequence`` is a list of ``(scale, u_k, lambda_k)`` with ``u_k`` a monic
    integer polynomial and ``lambda_k`` its leading root; ``limit`` is the
    expected limit of ``u_k(x) / (x - lambda_k)``.

    For each entry the deflated polynomial and its sup-distance to ``limit``
    are computed; for each nonzero root ``theta`` of ``limit``, the row
    records whether the irreducible factor of ``u_k`` owning the root of
    ``u_k`` nearest ``theta`` coincides with the factor owning ``lambda_k``.
    Raises :class:`RootMismatch` if some ``lambda_k`` fails to be a root of
    ``u_k`` to tolerance ``tol``.
    """
    with mp.workdps(digits + 10):
        limit_coeffs = [_to_mpf(c) if not isinstance(c, mp.mpf) else c
                        for c in limit.coeffs]
        thetas = [
            t for t in mp.polyroots([_to_mpf(c) for c in limit.leading_first()],
                                    maxsteps=200)
            if abs(t) > 1e-9
        ] if limit.degree > 0 else []
        rows = []
        lams = []
        for scale_value, u, lam in sequence:
            lam = mp.mpf(lam) if not isinstance(lam, mp.mpf) else lam
            du = u.derivative()
            residual = abs(u(lam)) / max(abs(du(lam)), mp.mpf(1))
            if residual > tol * (1 + abs(lam)):
                raise RootMismatch(
                    f"lambda = {lam} is not a root of the polynomial at scale "
                    f"{scale_value} (residual {residual})"
                )
            defl = deflate(u, lam, digits)
            dist = mp.mpf(0)
            width = max(len(defl), len(limit_coeffs))
            for idx in range(width):
                a = defl[idx] if idx < len(defl) else mp.mpf(0)
                b = limit_coeffs[idx] if idx < len(limit_coeffs) else mp.mpf(0)
                dist = max(dist, abs(a - b))
            fz = factor_monic(u)
            lam_factor = min(fz.factors, key=lambda fe: abs(fe[0](lam)))[0]
            agreement: Dict[complex, bool] = {}
            if thetas:
                u_roots = mp.polyroots([_to_mpf(c) for c in u.leading_first()],
                                       maxsteps=300, extraprec=100)
                for theta in thetas:
                    nearest = min(u_roots, key=lambda r: abs(r - theta))
                    theta_factor = min(fz.factors,
                                       key=lambda fe: abs(fe[0](nearest)))[0]
                    agreement[complex(theta)] = theta_factor == lam_factor
            rows.append(ConvergenceRow(scale_value, lam, dist, defl, agreement))
            lams.append(lam)
        increasing = all(a < b for a, b in zip(lams, lams[1:]))
        return ConvergenceReport(tuple(rows), increasing)
