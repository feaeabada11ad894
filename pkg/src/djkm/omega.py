"""Kähler differentials modulo exact forms on a hyperelliptic quartic.

For ``u^2 = p(t)`` with ``p`` monic quartic and ``p(0) != 0`` the quotient
Omega/dR has basis

    omega0 = [t^-1 dt],  omega_{-k} = [t^-k u dt]  (k = 1..4).

:func:`reduce` brings any differential ``A_dt dt + A_du du`` into that basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .arith import RATFUNC_ZERO, RatFuncC, as_ratfunc, format_ratfunc, parse_ratfunc
from .ring import CurveSpec, DiffNormalForm, RingElem, djkm_curve, ring_d

__all__ = [
    "DiffNormalForm",
    "LemmaRelation",
    "OmegaClass",
    "cocycle",
    "lemma_relation",
    "reduce",
    "reduce_u_monomial",
    "sigma_omega",
]

BASIS_KEYS = ("omega0", "omega_m1", "omega_m2", "omega_m3", "omega_m4")


@dataclass(frozen=True)
class OmegaClass:
    """Coordinates on (omega0, omega_{-1}, omega_{-2}, omega_{-3}, omega_{-4})."""

    lam0: RatFuncC = RATFUNC_ZERO
    lam_m1: RatFuncC = RATFUNC_ZERO
    lam_m2: RatFuncC = RATFUNC_ZERO
    lam_m3: RatFuncC = RATFUNC_ZERO
    lam_m4: RatFuncC = RATFUNC_ZERO

    def __post_init__(self):
        for name in ("lam0", "lam_m1", "lam_m2", "lam_m3", "lam_m4"):
            value = getattr(self, name)
            if not isinstance(value, RatFuncC):
                object.__setattr__(self, name, as_ratfunc(value))

    @classmethod
    def basis(cls, k: int) -> "OmegaClass":
        """``omega_k`` for ``k`` in 0, -1, -2, -3, -4."""
        if k not in (0, -1, -2, -3, -4):
            raise ValueError(f"no basis class omega_{k}")
        coords = [RATFUNC_ZERO] * 5
        coords[-k] = as_ratfunc(1)
        return cls(*coords)

    @classmethod
    def from_coords(cls, coords) -> "OmegaClass":
        return cls(*coords)

    @property
    def coords(self) -> tuple[RatFuncC, ...]:
        return (self.lam0, self.lam_m1, self.lam_m2, self.lam_m3, self.lam_m4)

    def __getitem__(self, k: int) -> RatFuncC:
        """Coefficient of ``omega_k`` (``k`` in 0..-4)."""
        return self.coords[-k]

    def __iter__(self) -> Iterator[RatFuncC]:
        return iter(self.coords)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other: "OmegaClass") -> "OmegaClass":
        if not isinstance(other, OmegaClass):
            return NotImplemented
        return OmegaClass(*(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "OmegaClass") -> "OmegaClass":
        if not isinstance(other, OmegaClass):
            return NotImplemented
        return OmegaClass(*(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return OmegaClass(*(-a for a in self.coords))

    def __mul__(self, scalar) -> "OmegaClass":
        scalar = as_ratfunc(scalar)
        if not scalar:
            return ZERO_CLASS
        return OmegaClass(*(a * scalar for a in self.coords))

    __rmul__ = __mul__

    def map_coords(self, fn) -> "OmegaClass":
        return OmegaClass(*(fn(a) for a in self.coords))

    def to_json(self) -> dict[str, str]:
        return {key: format_ratfunc(a) for key, a in zip(BASIS_KEYS, self.coords)}

    @classmethod
    def from_json(cls, data: dict[str, str]) -> "OmegaClass":
        return cls(*(parse_ratfunc(data[key]) for key in BASIS_KEYS))

    def __str__(self):
        parts = []
        for k, a in zip((0, -1, -2, -3, -4), self.coords):
            if a:
                parts.append(f"{format_ratfunc(a)}*w{k}")
        return " + ".join(parts) if parts else "0"


ZERO_CLASS = OmegaClass()


def sigma_omega(w: OmegaClass) -> OmegaClass:
    """Induced action of the curve involution on the basis classes."""
    return OmegaClass(-w.lam0, -w.lam_m3, -w.lam_m2, -w.lam_m1, -w.lam_m4)


def _check_curve(curve: CurveSpec):
    if curve.m != 2 or curve.n != 4:
        raise ValueError("reduction is implemented for u^2 = quartic only")
    if not curve.a(0):
        raise ValueError("reduction needs p(0) != 0 (five-element basis)")


class _UReducer:
    """Memo of [t^k u dt] in the basis, grown outward from the window -4..-1."""

    def __init__(self, curve: CurveSpec):
        _check_curve(curve)
        self.curve = curve
        self.memo: dict[int, OmegaClass] = {k: OmegaClass.basis(k) for k in (-1, -2, -3, -4)}
        self.top = -1
        self.bottom = -4

    def __call__(self, k: int) -> OmegaClass:
        if k > self.top:
            self._grow_up(k)
        elif k < self.bottom:
            self._grow_down(k)
        return self.memo[k]

    def _grow_up(self, target: int):
        # (3n + 2i) w_{n+i-1} = -sum_{j<n} (3j + 2i) a_j w_{i+j-1}
        a, n = self.curve.a, 4
        for k in range(self.top + 1, target + 1):
            i = k - n + 1
            lead = 3 * n + 2 * i
            assert lead != 0 and k >= 0, "upward divisor vanished"
            acc = ZERO_CLASS
            for j in range(n):
                coeff = a(j) * (3 * j + 2 * i)
                if coeff:
                    acc = acc + self.memo[i + j - 1] * coeff
            self.memo[k] = acc * as_ratfunc(-1 * lead) ** -1
            self.top = k

    def _grow_down(self, target: int):
        # 2 i a_0 w_{i-1} = -sum_{j>=1} (3j + 2i) a_j w_{i+j-1}
        a, n = self.curve.a, 4
        for k in range(self.bottom - 1, target - 1, -1):
            i = k + 1
            assert k <= -5 and i != 0, "downward divisor vanished"
            acc = ZERO_CLASS
            for j in range(1, n + 1):
                coeff = a(j) * (3 * j + 2 * i)
                if coeff:
                    acc = acc + self.memo[i + j - 1] * coeff
            self.memo[k] = acc * (a(0) * (-2 * i)).inverse()
            self.bottom = k


@lru_cache(maxsize=None)
def _reducer(curve: CurveSpec) -> _UReducer:
    return _UReducer(curve)


def reduce_u_monomial(k: int, curve: CurveSpec | None = None) -> OmegaClass:
    """The class of ``t^k u dt``."""
    return _reducer(curve or djkm_curve())(k)


def reduce(form: DiffNormalForm) -> OmegaClass:
    """Express ``A_dt dt + A_du du`` modulo exact forms in the basis."""
    curve = form.A_dt.curve
    _check_curve(curve)
    ureduce = _reducer(curve)
    dt_terms: dict[tuple[int, int], RatFuncC] = dict(form.A_dt.terms)

    def put(key, val):
        dt_terms[key] = dt_terms[key] + val if key in dt_terms else val

    pprime = [(j - 1, a * j) for j, a in enumerate(curve.p_coeffs) if a and j]
    for (i, s), f in form.A_du.terms.items():
        if s == 1:
            # t^i u du = (1/2) t^i p'(t) dt
            half = f * as_ratfunc(1) / 2
            for e, b in pprime:
                put((i + e, 0), half * b)
        elif i:
            # t^i du = -i t^(i-1) u dt  mod d(t^i u)
            put((i - 1, 1), f * -i)

    lam0 = RATFUNC_ZERO
    acc = ZERO_CLASS
    for (i, s), f in dt_terms.items():
        if not f:
            continue
        if s == 0:
            if i == -1:
                lam0 = lam0 + f
        else:
            acc = acc + ureduce(i) * f
    return acc + OmegaClass(lam0) if lam0 else acc


@lru_cache(maxsize=None)
def _cocycle_monomial(curve: CurveSpec, i: int, s: int, j: int, r: int) -> OmegaClass:
    f = RingElem({(i, s): 1}, curve)
    g = RingElem({(j, r): 1}, curve)
    return reduce(ring_d(g).times(f))


def cocycle(f: RingElem, g: RingElem) -> OmegaClass:
    """The class of ``f dg``; the central term of the current-algebra bracket."""
    curve = f.curve
    acc = ZERO_CLASS
    for (i, s), a in f.terms.items():
        for (j, r), b in g.terms.items():
            w = _cocycle_monomial(curve, i, s, j, r)
            if w:
                acc = acc + w * (a * b)
    return acc


@dataclass(frozen=True)
class LemmaRelation:
    """``lead_coeff * [t^lead_exp u dt] + sum tail_coeff * [t^e u dt] = 0`` mod dR."""

    m: int
    i: int
    lead: tuple[int, RatFuncC]
    tail: tuple[tuple[int, RatFuncC], ...]

    def rhs(self) -> tuple[tuple[int, RatFuncC], ...]:
        """Tail moved to the right-hand side: ``lead * w = sum rhs``."""
        return tuple((e, -a) for e, a in self.tail)

    def as_differential(self, curve: CurveSpec) -> DiffNormalForm:
        terms = {(self.lead[0], 1): self.lead[1]}
        for e, a in self.tail:
            key = (e, 1)
            terms[key] = terms[key] + a if key in terms else a
        return DiffNormalForm(RingElem(terms, curve), RingElem({}, curve))


def lemma_relation(m: int, spec: CurveSpec, i: int) -> LemmaRelation:
    """Relation among the classes ``[t^e u dt]`` on ``u^m = p(t)`` for shift ``i``."""
    if m < 1:
        raise ValueError("m must be at least 1")
    n = spec.n
    lead = (n + i - 1, as_ratfunc((m + 1) * n + i * m))
    tail = tuple((i + j - 1, spec.a(j) * ((m + 1) * j + m * i)) for j in range(n))
    return LemmaRelation(m, i, lead, tail)
