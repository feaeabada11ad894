"""The polynomial families P_{f,k}(c), f in {-1, -2, -3, -4}.

Each family solves the four-term recursion

    (6 + 2k) P_k = 4kc P_{k-2} - 2(k - 3) P_{k-4},   k >= 0,

from Kronecker-delta initial values at k = -4..-1.  Three independent routes
are provided: the recursion itself, generating series assembled from
Gegenbauer expansions, and Gegenbauer closed forms (through the series).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .arith import (
    POLY_C,
    POLY_ONE,
    POLY_ZERO,
    PolyC,
    PowerSeriesZ,
    RatFuncC,
    as_rational,
    series_formal_integrate,
    series_multiply,
)

FAMILIES = (-4, -3, -2, -1)
C2_MINUS_1 = PolyC([-1, 0, 1])


@dataclass(frozen=True)
class GegenbauerTable:
    lam: Fraction
    entries: tuple[PolyC, ...]

    def __getitem__(self, n: int) -> PolyC:
        return self.entries[n]

    def __len__(self):
        return len(self.entries)


@lru_cache(maxsize=None)
def _gegenbauer(lam: Fraction, nmax: int) -> GegenbauerTable:
    out = [POLY_ONE]
    if nmax >= 1:
        out.append(POLY_C * (2 * lam))
    for n in range(2, nmax + 1):
        nxt = POLY_C * out[-1] * (2 * (n + lam - 1)) - out[-2] * (n + 2 * lam - 2)
        out.append(nxt * Fraction(1, n))
    return GegenbauerTable(lam, tuple(out))


def gegenbauer(lam, nmax: int) -> GegenbauerTable:
    """Gegenbauer polynomials C_n^(lam)(c), n = 0..nmax, by the three-term recurrence."""
    if nmax < 0:
        raise ValueError("nmax must be non-negative")
    return _gegenbauer(as_rational(lam), nmax)


@dataclass(frozen=True)
class PFamilyTable:
    family: int
    entries: Mapping[int, RatFuncC] = field(repr=False)

    def __getitem__(self, k: int) -> RatFuncC:
        return self.entries[k]

    @property
    def kmax(self) -> int:
        return max(self.entries)

    def rows(self):
        return sorted(self.entries.items())


def recursion_polys(initials: Sequence, kmax: int) -> dict[int, PolyC]:
    """Run the recursion from ``(P_-4, P_-3, P_-2, P_-1)`` up to ``kmax``."""
    p: dict[int, PolyC] = {}
    for j, v in zip(FAMILIES, initials):
        p[j] = v if isinstance(v, PolyC) else PolyC.const(v)
    for k in range(0, kmax + 1):
        rhs = POLY_C * p[k - 2] * (4 * k) - p[k - 4] * (2 * (k - 3))
        p[k] = rhs * Fraction(1, 6 + 2 * k)
    return p


@lru_cache(maxsize=None)
def _family_polys(family: int, kmax: int) -> dict[int, PolyC]:
    if family not in FAMILIES:
        raise ValueError(f"family must be one of {FAMILIES}, got {family}")
    initials = [1 if j == family else 0 for j in FAMILIES]
    return recursion_polys(initials, kmax)


def pfamily_recursion(family: int, kmax: int) -> PFamilyTable:
    """P_{family,k} for k = -4..kmax from the recursion."""
    if kmax < -4:
        raise ValueError("kmax must be at least -4")
    polys = _family_polys(family, max(kmax, -1))
    return PFamilyTable(family, {k: RatFuncC._poly(v) for k, v in polys.items() if k <= kmax})


def _odd_series(polys, order: int, divide_by_odd: bool = False) -> dict[int, PolyC]:
    """``sum polys[n] z^(2n+1)`` (optionally with 1/(2n+1)) below ``order``."""
    out = {}
    for n, q in enumerate(polys):
        e = 2 * n + 1
        if e >= order:
            break
        out[e] = q * Fraction(1, e) if divide_by_odd else q
    return out


def _series(terms: Mapping[int, PolyC], order: int, low: int = 0) -> PowerSeriesZ:
    return PowerSeriesZ({k: RatFuncC._poly(v) for k, v in terms.items()}, order, low)


def _exact_c2m1(series: PowerSeriesZ, order: int) -> PowerSeriesZ:
    out = {}
    for k, v in series.coeffs.items():
        if not v.is_polynomial():
            raise ArithmeticError(f"coefficient of z^{k} is not a polynomial")
        out[k] = RatFuncC._poly(v.num.exact_div(C2_MINUS_1))
    return PowerSeriesZ(out, order)


def pfamily_series(family: int, N: int) -> PowerSeriesZ:
    """Generating series ``sum_{k>=0} P_{family,k-4} z^k`` truncated at ``z^N``."""
    if N < 1:
        raise ValueError("N must be at least 1")
    if family not in FAMILIES:
        raise ValueError(f"family must be one of {FAMILIES}, got {family}")
    work = N + 4
    nq = work // 2 + 2
    # z sqrt(1 - 2cz^2 + z^4) = sum Q_n^(-1/2) z^(2n+1)
    root = _series(_odd_series(gegenbauer(Fraction(-1, 2), nq).entries, work + 2), work + 2)
    if family == -4:
        q32 = gegenbauer(Fraction(3, 2), nq).entries
        # (4c - z^-2) sum Q_n^(3/2) z^(2n)
        integrand = {}
        for n, q in enumerate(q32):
            if 2 * n < work:
                integrand[2 * n] = integrand.get(2 * n, POLY_ZERO) + POLY_C * q * 4
            if 2 * n - 2 < work:
                integrand[2 * n - 2] = integrand.get(2 * n - 2, POLY_ZERO) - q
        integral = series_formal_integrate(_series(integrand, work, -2))
        result = series_multiply(root, integral, N)
    elif family == -2:
        q32 = gegenbauer(Fraction(3, 2), nq).entries
        integral = _series(_odd_series(q32, work + 1, divide_by_odd=True), work + 1)
        result = series_multiply(root, integral, N)
    else:
        c = RatFuncC._poly(POLY_C)
        if family == -1:
            # c z - z^3 - c * z sqrt(...)
            head = _series({1: POLY_C, 3: -POLY_ONE}, work)
            numer = head - root.truncate(work).scale(c)
        else:
            # c^2 z - c z^3 - z sqrt(...)
            head = _series({1: POLY_C * POLY_C, 3: -POLY_C}, work)
            numer = head - root.truncate(work)
        result = _exact_c2m1(numer.truncate(N), N)
    result = result.truncate(N)
    assert result.order == N and min(result.coeffs, default=0) >= 0
    return result.with_low_shift(0)


@dataclass(frozen=True)
class FundeCheck:
    ok: bool
    first_failure: int | None = None

    def __bool__(self):
        return self.ok


def check_funde(initials: Sequence, N: int) -> FundeCheck:
    """Check the first-order ODE of the generating series built from ``initials``.

    ``initials`` is ``(P_-4, P_-3, P_-2, P_-1)``.  The cleared-denominator form

        (z^5 - 2cz^3 + z) P' - (3z^4 - 4cz^2 + 1) P
            = 2(P_-1 + c P_-3) z^3 + P_-2 z^2 + (4cz^2 - 1) P_-4

    is compared coefficientwise through ``z^(N-5)``.
    """
    if N < 8:
        raise ValueError("N must be at least 8")
    p4, p3, p2, p1 = (PolyC.const(as_rational(v)) for v in initials)
    polys = recursion_polys((p4, p3, p2, p1), N - 4)
    P = [polys[k - 4] for k in range(N)]
    dP = [P[k + 1] * (k + 1) for k in range(N - 1)]

    def at(seq, k):
        return seq[k] if 0 <= k < len(seq) else POLY_ZERO

    rhs = {3: (p1 + POLY_C * p3) * 2, 2: p2 + POLY_C * p4 * 4, 0: -p4}
    for k in range(N - 4):
        lhs = at(dP, k - 5) - POLY_C * at(dP, k - 3) * 2 + at(dP, k - 1)
        lhs = lhs - (at(P, k - 4) * 3 - POLY_C * at(P, k - 2) * 4 + at(P, k))
        if lhs != rhs.get(k, POLY_ZERO):
            return FundeCheck(False, k)
    return FundeCheck(True)


@dataclass
class OdeReport:
    nmax: int
    checked: int = 0
    failures: list[tuple[int, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self):
        return self.ok


def check_odes(nmax: int) -> OdeReport:
    """Verify the second-order ODEs in c for Q_n^(-1/2), P_{-3,2n-3}, P_{-1,2n-3}."""
    if nmax < 2:
        raise ValueError("nmax must be at least 2")
    q = gegenbauer(Fraction(-1, 2), nmax)
    p3 = _family_polys(-3, 2 * nmax - 3)
    p1 = _family_polys(-1, 2 * nmax - 3)
    c = POLY_C
    c2 = c * c
    report = OdeReport(nmax)
    for n in range(2, nmax + 1):
        k = 2 * n - 3
        qn = q[n]
        checks = {
            "gegenbauer": (1 - c2) * qn.derivative().derivative() + qn * (n * (n - 1)),
            "p_minus3": (c2 - 1) * p3[k].derivative().derivative()
            + c * p3[k].derivative() * 4
            - p3[k] * ((n + 1) * (n - 2)),
            "p_minus1": (c2 * c2 - c2) * p1[k].derivative().derivative()
            + c * (c2 + 1) * p1[k].derivative() * 2
            + (c2 * (-n * (n - 1)) - 2) * p1[k],
            "p_minus1_eq_c_p_minus3": p1[k] - c * p3[k],
        }
        for name, value in checks.items():
            report.checked += 1
            if value:
                report.failures.append((n, name))
    return report
