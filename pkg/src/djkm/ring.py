"""The coordinate ring R = Q(c)[t, t^-1, u] / (u^m - p(t)).

Elements are finite two-sheet Laurent objects ``sum f_{i,s} t^i u^s`` with
``s < m``.  Multiplication is only implemented for hyperelliptic curves
(``m = 2``), where ``u^2`` is rewritten as ``p(t)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping

from .arith import C, RATFUNC_ONE, RATFUNC_ZERO, RatFuncC, as_ratfunc, as_rational, format_ratfunc
from .parsing import parse_expression


@dataclass(frozen=True)
class CurveSpec:
    """``u^m = p(t)`` with ``p`` monic; ``p_coeffs[j]`` is the coefficient of ``t^j``."""

    m: int
    p_coeffs: tuple[RatFuncC, ...]

    def __post_init__(self):
        coeffs = tuple(as_ratfunc(a) for a in self.p_coeffs)
        object.__setattr__(self, "p_coeffs", coeffs)
        if self.m < 1:
            raise ValueError("the power of u must be at least 1")
        if not coeffs or coeffs[-1] != RATFUNC_ONE:
            raise ValueError("p(t) must be monic")

    @property
    def n(self) -> int:
        return len(self.p_coeffs) - 1

    def a(self, j: int) -> RatFuncC:
        if 0 <= j < len(self.p_coeffs):
            return self.p_coeffs[j]
        return RATFUNC_ZERO

    def p(self) -> "RingElem":
        return RingElem({(j, 0): a for j, a in enumerate(self.p_coeffs) if a}, self)

    def p_prime(self) -> "RingElem":
        return RingElem({(j - 1, 0): a * j for j, a in enumerate(self.p_coeffs) if a and j}, self)

    def is_self_reciprocal_quartic(self) -> bool:
        """True when ``t^4 p(1/t) = p(t)`` for a quartic ``p`` with ``u^2 = p``."""
        cs = self.p_coeffs
        return self.m == 2 and self.n == 4 and all(cs[j] == cs[4 - j] for j in range(5))

    # convenience constructors bound to this curve
    def t(self, i: int = 1, coeff=1) -> "RingElem":
        return RingElem({(i, 0): coeff}, self)

    def u(self, i: int = 0, coeff=1) -> "RingElem":
        return RingElem({(i, 1): coeff}, self)

    def monomial(self, i: int, s: int, coeff=1) -> "RingElem":
        return RingElem({(i, s): coeff}, self)

    def one(self) -> "RingElem":
        return RingElem({(0, 0): 1}, self)

    def zero(self) -> "RingElem":
        return RingElem({}, self)

    def scalar(self, x) -> "RingElem":
        return RingElem({(0, 0): x}, self)


@lru_cache(maxsize=None)
def djkm_curve(c=None) -> CurveSpec:
    """DJKM preset ``u^2 = t^4 - 2c t^2 + 1``.

    With ``c=None`` the parameter stays symbolic; otherwise it is specialized
    to a rational, which must avoid the degenerate values ``c = +-1``.
    """
    if c is None:
        cval = C
    else:
        c0 = as_rational(c)
        if c0 in (1, -1):
            raise ValueError(f"degenerate curve parameter c = {c0} (forces a = +-b)")
        cval = RatFuncC.const(c0)
    return CurveSpec(2, (RATFUNC_ONE, RATFUNC_ZERO, cval * -2, RATFUNC_ZERO, RATFUNC_ONE))


def curve_parameter(curve: CurveSpec) -> RatFuncC:
    """Read ``c`` back from a DJKM-shaped curve ``t^4 - 2c t^2 + 1``."""
    if not (curve.is_self_reciprocal_quartic() and curve.a(0) == 1 and curve.a(1) == 0):
        raise ValueError("curve is not of DJKM form t^4 - 2c t^2 + 1")
    return curve.a(2) / -2


class RingElem:
    """Immutable element ``sum f_{i,s} t^i u^s`` of the coordinate ring."""

    __slots__ = ("terms", "curve", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None, curve: CurveSpec | None = None):
        curve = curve or djkm_curve()
        clean = {}
        for (i, s), f in (terms or {}).items():
            if not 0 <= s < curve.m:
                raise ValueError(f"sheet index {s} outside 0..{curve.m - 1}")
            f = as_ratfunc(f)
            if f:
                clean[(i, s)] = f
        self.terms: dict[tuple[int, int], RatFuncC] = clean
        self.curve = curve
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, curve: CurveSpec) -> "RingElem":
        r = object.__new__(cls)
        r.terms = terms
        r.curve = curve
        r._hash = None
        return r

    def __iter__(self) -> Iterator[tuple[tuple[int, int], RatFuncC]]:
        return iter(sorted(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, i: int, s: int = 0) -> RatFuncC:
        return self.terms.get((i, s), RATFUNC_ZERO)

    def sheets(self) -> set[int]:
        return {s for _, s in self.terms}

    def as_scalar(self) -> RatFuncC:
        if not self.terms:
            return RATFUNC_ZERO
        if set(self.terms) != {(0, 0)}:
            raise ValueError(f"{self} is not a scalar")
        return self.terms[(0, 0)]

    def __eq__(self, other):
        if isinstance(other, RingElem):
            return self.terms == other.terms and (self.curve is other.curve or self.curve == other.curve)
        if isinstance(other, (int, Fraction, RatFuncC)):
            return self.terms == self.curve.scalar(other).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"RingElem({format_ring(self)!r})"

    def __str__(self):
        return format_ring(self)

    def _coerce(self, other) -> "RingElem | None":
        if isinstance(other, RingElem):
            if other.curve is not self.curve and other.curve != self.curve:
                raise ValueError("ring elements live on different curves")
            return other
        if isinstance(other, (int, Fraction, RatFuncC)):
            return self.curve.scalar(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            if k in out:
                w = out[k] + v
                if w:
                    out[k] = w
                else:
                    del out[k]
            else:
                out[k] = v
        return RingElem._raw(out, self.curve)

    __radd__ = __add__

    def __neg__(self):
        return RingElem._raw({k: -v for k, v in self.terms.items()}, self.curve)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, x) -> "RingElem":
        x = as_ratfunc(x)
        if not x:
            return RingElem._raw({}, self.curve)
        return RingElem._raw({k: v * x for k, v in self.terms.items()}, self.curve)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RatFuncC)):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ring_mul(self, other, self.curve)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, RingElem):
            other = other.as_scalar()
        return self.scale(as_ratfunc(other).inverse())

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials t^i are invertible here")
            ((i, s), f), = self.terms.items()
            if s:
                raise ValueError("u is not inverted in this ring")
            return RingElem._raw({(i * n, 0): f ** n}, self.curve)
        result = self.curve.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result


def ring_mul(a: RingElem, b: RingElem, spec: CurveSpec | None = None) -> RingElem:
    """Product in R, rewriting ``u^2`` as ``p(t)``."""
    spec = spec or a.curve
    if spec.m != 2:
        raise ValueError(f"unsupported sheet count m = {spec.m}: multiplication needs m = 2")
    out: dict[tuple[int, int], RatFuncC] = {}

    def put(key, val):
        if key in out:
            w = out[key] + val
            if w:
                out[key] = w
            else:
                del out[key]
        elif val:
            out[key] = val

    p = [(j, aj) for j, aj in enumerate(spec.p_coeffs) if aj]
    for (i, s), f in a.terms.items():
        for (j, r), g in b.terms.items():
            fg = f * g
            if s + r < 2:
                put((i + j, s + r), fg)
            else:
                for k, ak in p:
                    put((i + j + k, 0), fg * ak)
    return RingElem._raw(out, spec)


def sigma_ring(a: RingElem) -> RingElem:
    """The involution ``t -> t^-1``, ``u -> t^-2 u``."""
    if not a.curve.is_self_reciprocal_quartic():
        raise ValueError("sigma undefined for this curve")
    return RingElem._raw({(-i - 2 * s, s): f for (i, s), f in a.terms.items()}, a.curve)


@dataclass(frozen=True)
class DiffNormalForm:
    """The Kähler differential ``A_dt dt + A_du du``."""

    A_dt: RingElem
    A_du: RingElem

    def __add__(self, other: "DiffNormalForm") -> "DiffNormalForm":
        return DiffNormalForm(self.A_dt + other.A_dt, self.A_du + other.A_du)

    def __sub__(self, other: "DiffNormalForm") -> "DiffNormalForm":
        return DiffNormalForm(self.A_dt - other.A_dt, self.A_du - other.A_du)

    def __neg__(self):
        return DiffNormalForm(-self.A_dt, -self.A_du)

    def times(self, f: RingElem) -> "DiffNormalForm":
        """Module action ``f * (A_dt dt + A_du du)``."""
        return DiffNormalForm(f * self.A_dt, f * self.A_du)

    def __str__(self):
        return f"({format_ring(self.A_dt)})*dt + ({format_ring(self.A_du)})*du"


def ring_d(a: RingElem) -> DiffNormalForm:
    """Universal derivation, expanded by the Leibniz rule on monomials."""
    curve = a.curve
    dt: dict[tuple[int, int], RatFuncC] = {}
    du: dict[tuple[int, int], RatFuncC] = {}
    for (i, s), f in a.terms.items():
        if i:
            dt[(i - 1, s)] = f * i
        if s:
            key = (i, s - 1)
            du[key] = du[key] + f * s if key in du else f * s
    return DiffNormalForm(RingElem(dt, curve), RingElem(du, curve))


def sigma_diff(form: DiffNormalForm) -> DiffNormalForm:
    """Pull a differential through sigma: ``sigma(f dg) = sigma(f) d(sigma(g))``."""
    curve = form.A_dt.curve
    sdt = sigma_ring(form.A_dt)
    sdu = sigma_ring(form.A_du)
    # sigma(dt) = -t^-2 dt,  sigma(du) = -2 t^-3 u dt + t^-2 du
    new_dt = sdt * curve.t(-2, -1) + sdu * curve.u(-3, -2)
    new_du = sdu * curve.t(-2)
    return DiffNormalForm(new_dt, new_du)


# ---------------------------------------------------------------------------
# text form


def _format_monomial(i: int, s: int) -> str:
    parts = []
    if i:
        parts.append("t" if i == 1 else f"t^{i}")
    if s:
        parts.append("u" if s == 1 else f"u^{s}")
    return "*".join(parts)


def format_ring(a: RingElem) -> str:
    """Render as ``f(c)*t^i*u^s`` terms in (i, s)-lexicographic order."""
    if not a.terms:
        return "0"
    out = ""
    for (i, s), f in sorted(a.terms.items()):
        mono = _format_monomial(i, s)
        coeff = format_ratfunc(f)
        negative = False
        if coeff.startswith("-") and ("+" not in coeff[1:] and "-" not in coeff[1:]):
            negative, coeff = True, coeff[1:]
        elif coeff.startswith("(-") and coeff.endswith(")") and coeff.count("(") == 1:
            negative, coeff = True, "(" + coeff[2:]
        if not coeff.startswith("(") and ("+" in coeff or "-" in coeff[1:]):
            coeff = f"({coeff})"
        if mono:
            body = mono if coeff == "1" else f"{coeff}*{mono}"
        else:
            body = coeff
        if negative:
            out += "-" + body
        else:
            out += ("+" if out else "") + body
    return out


def parse_ring(text: str, curve: CurveSpec | None = None) -> RingElem:
    """Parse ring elements such as ``t^4*u`` or ``(c/2)*t^-3*u - 1``."""
    curve = curve or djkm_curve()
    try:
        cval = curve_parameter(curve)
    except ValueError:
        cval = C
    names = {"t": curve.t(1), "u": curve.u(0), "c": curve.scalar(cval)}
    value = parse_expression(text, names, curve.scalar)
    if isinstance(value, RatFuncC):
        value = curve.scalar(value)
    return value
