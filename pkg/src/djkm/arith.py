"""Exact scalar arithmetic over Q(c).

Rationals are :class:`fractions.Fraction`.  On top of them this module
provides univariate polynomials in the curve parameter ``c`` (:class:`PolyC`),
reduced rational functions (:class:`RatFuncC`) and truncated power series in
an auxiliary variable ``z`` with ``Q(c)`` coefficients (:class:`PowerSeriesZ`).

Every value is immutable and canonical, so ``==`` is structural equality.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Union

Rational = Fraction
Scalar = Union[int, Fraction, "PolyC", "RatFuncC"]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and rational literals such as ``"-3/7"``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad rational literal {x!r}") from exc
    raise TypeError(f"cannot interpret {x!r} as a rational")


class PolyC:
    """Polynomial in ``c`` with rational coefficients, lowest degree first."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_rational(a) for a in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple) -> "PolyC":
        # caller guarantees Fractions with a nonzero top coefficient
        p = object.__new__(cls)
        p.coeffs = coeffs
        p._hash = None
        return p

    @classmethod
    def const(cls, a) -> "PolyC":
        a = as_rational(a)
        return cls._raw((a,) if a else ())

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "PolyC":
        return cls([0] * degree + [coeff])

    # -- structure ---------------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def constant_term(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else _ZERO

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, PolyC):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == PolyC.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("PolyC", self.coeffs))
        return self._hash

    def __repr__(self):
        return f"PolyC({format_poly(self)!r})"

    # -- ring operations ---------------------------------------------------
    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return PolyC(out)

    __radd__ = __add__

    def __neg__(self):
        return PolyC._raw(tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return POLY_ZERO
            return PolyC._raw(tuple(x * other for x in self.coeffs))
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return POLY_ZERO
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return PolyC(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = POLY_ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lead
        if len(rem) - 1 < dq:
            return POLY_ZERO, self
        quot = [_ZERO] * (len(rem) - dq)
        bc = other.coeffs
        for shift in range(len(rem) - 1 - dq, -1, -1):
            q = rem[shift + dq] / lead
            if q:
                quot[shift] = q
                for j, y in enumerate(bc):
                    rem[shift + j] -= q * y
        return PolyC(quot), PolyC(rem[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "PolyC":
        """Quotient ``self / other``; raises if the division leaves a remainder."""
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{format_poly(other)} does not divide {format_poly(self)}")
        return q

    # -- calculus and evaluation ------------------------------------------
    def derivative(self) -> "PolyC":
        return PolyC([i * a for i, a in enumerate(self.coeffs)][1:])

    def __call__(self, c0) -> Fraction:
        c0 = as_rational(c0)
        acc = _ZERO
        for a in reversed(self.coeffs):
            acc = acc * c0 + a
        return acc

    def monic(self) -> "PolyC":
        if not self.coeffs or self.lead == 1:
            return self
        return self * (1 / self.lead)


def _as_poly(x):
    if isinstance(x, PolyC):
        return x
    if isinstance(x, (int, Fraction)):
        return PolyC.const(x)
    return None


POLY_ZERO = PolyC._raw(())
POLY_ONE = PolyC._raw((_ONE,))
POLY_C = PolyC._raw((_ZERO, _ONE))


def poly_gcd(a: PolyC, b: PolyC) -> PolyC:
    """Monic gcd by the Euclidean algorithm (gcd(0, 0) = 0)."""
    while b:
        a, b = b, a % b
    return a.monic()


class RatFuncC:
    """Element of Q(c) kept as ``num/den`` with gcd 1 and monic ``den``."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=POLY_ZERO, den=POLY_ONE):
        num = _coerce_poly(num)
        den = _coerce_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if num.is_zero():
            num, den = POLY_ZERO, POLY_ONE
        elif den.is_constant():
            if den.lead != 1:
                num = num * (1 / den.lead)
            den = POLY_ONE
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
            lead = den.lead
            if lead != 1:
                num = num * (1 / lead)
                den = den * (1 / lead)
        self.num: PolyC = num
        self.den: PolyC = den
        self._hash = None

    @classmethod
    def _poly(cls, p: PolyC) -> "RatFuncC":
        r = object.__new__(cls)
        r.num = p
        r.den = POLY_ONE
        r._hash = None
        return r

    @classmethod
    def const(cls, a) -> "RatFuncC":
        return cls._poly(PolyC.const(a))

    # -- predicates --------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def is_constant(self) -> bool:
        return self.is_polynomial() and self.num.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{format_ratfunc(self)} is not a constant")
        return self.num.constant_term()

    def as_poly(self) -> PolyC:
        if not self.is_polynomial():
            raise ValueError(f"{format_ratfunc(self)} is not a polynomial")
        return self.num

    def __eq__(self, other):
        if isinstance(other, RatFuncC):
            return self.num == other.num and self.den == other.den
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        return self == other

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num.coeffs, self.den.coeffs))
        return self._hash

    def __repr__(self):
        return f"RatFuncC({format_ratfunc(self)!r})"

    def __str__(self):
        return format_ratfunc(self)

    # -- field operations --------------------------------------------------
    def __add__(self, other):
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        if self.den.degree == 0 and other.den.degree == 0:
            return RatFuncC._poly(self.num + other.num)
        if self.den == other.den:
            return RatFuncC(self.num + other.num, self.den)
        return RatFuncC(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        r = object.__new__(RatFuncC)
        r.num = -self.num
        r.den = self.den
        r._hash = None
        return r

    def __sub__(self, other):
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return RATFUNC_ZERO
            r = object.__new__(RatFuncC)
            r.num = self.num * other
            r.den = self.den
            r._hash = None
            return r
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        if self.den.degree == 0 and other.den.degree == 0:
            return RatFuncC._poly(self.num * other.num)
        return RatFuncC(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFuncC":
        if self.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        return RatFuncC(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division by zero polynomial")
            return self * (1 / Fraction(other))
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _as_ratfunc(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFuncC(self.num ** n, self.den ** n)

    def derivative(self) -> "RatFuncC":
        """d/dc by the quotient rule."""
        if self.den.degree == 0:
            return RatFuncC._poly(self.num.derivative())
        return RatFuncC(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )


def _coerce_poly(x) -> PolyC:
    if isinstance(x, PolyC):
        return x
    if isinstance(x, (int, Fraction, str)):
        return PolyC.const(x)
    raise TypeError(f"cannot interpret {x!r} as a polynomial in c")


def _as_ratfunc(x):
    if isinstance(x, RatFuncC):
        return x
    if isinstance(x, (int, Fraction)):
        return RatFuncC.const(x)
    if isinstance(x, PolyC):
        return RatFuncC._poly(x)
    return None


def as_ratfunc(x) -> RatFuncC:
    """Coerce ints, Fractions, polynomials or grammar strings to :class:`RatFuncC`."""
    if isinstance(x, str):
        return parse_ratfunc(x)
    r = _as_ratfunc(x)
    if r is None:
        raise TypeError(f"cannot interpret {x!r} as an element of Q(c)")
    return r


RATFUNC_ZERO = RatFuncC._poly(POLY_ZERO)
RATFUNC_ONE = RatFuncC._poly(POLY_ONE)
C = RatFuncC._poly(POLY_C)


def normalize_ratfunc(num: PolyC, den: PolyC) -> RatFuncC:
    return RatFuncC(num, den)


def specialize_c(x, c0) -> Fraction:
    """Evaluate ``x`` at ``c = c0`` exactly."""
    x = as_ratfunc(x)
    c0 = as_rational(c0)
    d = x.den(c0)
    if d == 0:
        raise ZeroDivisionError(f"pole at specialization point c = {c0}")
    return x.num(c0) / d


# ---------------------------------------------------------------------------
# Truncated power series in z


class PowerSeriesZ:
    """Truncated Laurent-tailed power series ``sum_k a_k z^k``.

    Coefficients are known exactly for ``low_shift <= k < order``.  Nothing is
    stored at or above ``order`` and zero coefficients are dropped.
    """

    __slots__ = ("order", "low_shift", "coeffs")

    def __init__(self, coeffs: Mapping[int, object] | None = None, order: int = 64, low_shift: int = 0):
        if order < low_shift:
            raise ValueError("truncation order below the lowest exponent")
        cs = {}
        for k, v in (coeffs or {}).items():
            if k < low_shift:
                raise ValueError(f"exponent {k} below low_shift {low_shift}")
            if k >= order:
                continue
            v = as_ratfunc(v)
            if v:
                cs[k] = v
        self.order = order
        self.low_shift = low_shift
        self.coeffs: dict[int, RatFuncC] = cs

    @classmethod
    def one(cls, order: int) -> "PowerSeriesZ":
        return cls({0: 1}, order)

    def __getitem__(self, k: int) -> RatFuncC:
        if k >= self.order:
            raise IndexError(f"coefficient z^{k} lies beyond the truncation order {self.order}")
        return self.coeffs.get(k, RATFUNC_ZERO)

    def coefficient(self, k: int) -> RatFuncC:
        return self[k]

    def __eq__(self, other):
        if not isinstance(other, PowerSeriesZ):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __repr__(self):
        terms = " + ".join(f"({format_ratfunc(v)})*z^{k}" for k, v in sorted(self.coeffs.items()))
        return f"PowerSeriesZ({terms or '0'}, order={self.order})"

    def truncate(self, order: int) -> "PowerSeriesZ":
        return PowerSeriesZ(self.coeffs, min(order, self.order), self.low_shift)

    def __add__(self, other):
        if not isinstance(other, PowerSeriesZ):
            return NotImplemented
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out[k] + v if k in out else v
        return PowerSeriesZ(out, min(self.order, other.order), min(self.low_shift, other.low_shift))

    def __neg__(self):
        return PowerSeriesZ({k: -v for k, v in self.coeffs.items()}, self.order, self.low_shift)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "PowerSeriesZ":
        s = as_ratfunc(s)
        return PowerSeriesZ({k: v * s for k, v in self.coeffs.items()}, self.order, self.low_shift)

    def shift(self, n: int) -> "PowerSeriesZ":
        """Multiply by ``z^n``."""
        return PowerSeriesZ(
            {k + n: v for k, v in self.coeffs.items()}, self.order + n, self.low_shift + n
        )

    def __mul__(self, other):
        if isinstance(other, PowerSeriesZ):
            return series_multiply(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def derivative(self) -> "PowerSeriesZ":
        out = {k - 1: v * k for k, v in self.coeffs.items() if k}
        low = self.low_shift - 1 if self.low_shift else 0
        return PowerSeriesZ(out, self.order - 1, low)

    def with_low_shift(self, low: int) -> "PowerSeriesZ":
        """Same series with a different lowest allowed exponent."""
        return PowerSeriesZ(self.coeffs, self.order, low)

    def integrate(self) -> "PowerSeriesZ":
        return series_formal_integrate(self)


def series_multiply(a: PowerSeriesZ, b: PowerSeriesZ, order: int | None = None) -> PowerSeriesZ:
    """Cauchy product, truncated where both factors are still exact."""
    exact = min(a.order + b.low_shift, b.order + a.low_shift)
    n = exact if order is None else min(order, exact)
    low = a.low_shift + b.low_shift
    out: dict[int, RatFuncC] = {}
    for i, x in a.coeffs.items():
        for j, y in b.coeffs.items():
            k = i + j
            if k < n:
                out[k] = out[k] + x * y if k in out else x * y
    return PowerSeriesZ(out, max(n, low), low)


def series_formal_integrate(a: PowerSeriesZ) -> PowerSeriesZ:
    """Termwise antiderivative with zero constant of integration."""
    if a.coeffs.get(-1):
        raise ValueError("logarithmic term: z^-1 has a nonzero coefficient")
    out = {k + 1: v / (k + 1) for k, v in a.coeffs.items()}
    return PowerSeriesZ(out, a.order + 1, a.low_shift + 1)


# ---------------------------------------------------------------------------
# Text grammar:  integer coefficients, ``c``, ``^`` powers, ``*``, ``/``.


def _integer_form(p: PolyC, scale: int) -> list[int]:
    return [int(a * scale) for a in p.coeffs]


def _format_int_poly(coeffs: list[int], var: str = "c") -> str:
    parts = []
    for deg in range(len(coeffs) - 1, -1, -1):
        a = coeffs[deg]
        if not a:
            continue
        sign = "-" if a < 0 else "+"
        mag = abs(a)
        if deg == 0:
            body = str(mag)
        else:
            mono = var if deg == 1 else f"{var}^{deg}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += sign + body
    return out


def integer_parts(x: RatFuncC) -> tuple[list[int], list[int]]:
    """Integer coefficient lists ``(N, D)`` with ``x = N/D``, content removed, lc(D) > 0."""
    dens = [a.denominator for a in x.num.coeffs + x.den.coeffs]
    scale = math.lcm(*dens) if dens else 1
    n = _integer_form(x.num, scale)
    d = _integer_form(x.den, scale)
    g = math.gcd(*(n + d))
    if g > 1:
        n = [a // g for a in n]
        d = [a // g for a in d]
    return n, d


def format_poly(p: PolyC) -> str:
    return format_ratfunc(RatFuncC._poly(p))


def format_ratfunc(x) -> str:
    """Render in the fixed grammar, e.g. ``(32*c^2-5)/35``, ``(c/2)``, ``c+1``."""
    x = as_ratfunc(x)
    n, d = integer_parts(x)
    num = _format_int_poly(n)
    if d == [1]:
        return num
    single = sum(1 for a in n if a) == 1
    if len(d) == 1:
        if single:
            return f"({num}/{d[0]})"
        return f"({num})/{d[0]}"
    if single:
        return f"({num}/({_format_int_poly(d)}))"
    return f"({num})/({_format_int_poly(d)})"


def format_latex(x) -> str:
    x = as_ratfunc(x)
    n, d = integer_parts(x)
    num = _format_int_poly(n).replace("*", "")
    num = re.sub(r"\^(\d+)", r"^{\1}", num)
    if d == [1]:
        return num
    den = re.sub(r"\^(\d+)", r"^{\1}", _format_int_poly(d).replace("*", ""))
    if num.startswith("-") and "+" not in num[1:] and "-" not in num[1:]:
        return f"-\\frac{{{num[1:]}}}{{{den}}}"
    return f"\\frac{{{num}}}{{{den}}}"


def parse_ratfunc(text: str) -> RatFuncC:
    """Parse the rendering grammar back into a :class:`RatFuncC`."""
    from .parsing import parse_scalar

    return parse_scalar(text)
