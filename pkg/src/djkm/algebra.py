"""The central extension (g ⊗ R) ⊕ Omega/dR of the DJKM current algebra.

Two brackets are implemented independently:

* :func:`bracket_kassel` — ``[x⊗f, y⊗g] = [x,y]⊗fg + kappa(x,y) [f dg]`` with the
  central class obtained by running :func:`djkm.omega.reduce`;
* :func:`bracket_closed` — the explicit formulas in the monomial basis
  ``x⊗t^i`` and ``x⊗t^(i-1) u``, where the odd-even central term is
  ``j kappa(x,y) psi(i+j)`` and ``psi`` is read off the polynomial families.

Their agreement is the structure theorem for this algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Mapping

from .arith import C, RATFUNC_ZERO, RatFuncC, as_ratfunc, specialize_c
from .liealg import SimpleLieAlgebra
from .omega import ZERO_CLASS, OmegaClass, cocycle, reduce_u_monomial, sigma_omega
from .pfamilies import pfamily_recursion
from .ring import CurveSpec, RingElem, curve_parameter, djkm_curve, format_ring, sigma_ring

# basis element x_idx ⊗ t^i u^s
Basis = tuple[int, int, int]

PSI_READING = {
    "psi_low_window": "psi(s) = omega_{s-2} for s in {1, 0, -1, -2}, the class of t^(s-2) u dt",
    "psi_negative_odd": "psi(s) = P_{-3,|s|-2} (c omega_-3 + omega_-1) for odd s <= -3",
    "psi_alternative_reading": "omega_{i+j} and P_{-3,i+j-2} (not used: both differ from reduce())",
}


class ExtElement:
    """``sum_a x_a ⊗ f_a + omega``; immutable."""

    __slots__ = ("loops", "center")

    def __init__(self, loops: Mapping[int, RingElem] | None = None, center: OmegaClass = ZERO_CLASS):
        self.loops: dict[int, RingElem] = {a: f for a, f in (loops or {}).items() if f}
        self.center = center

    @classmethod
    def basis(cls, idx: int, i: int, s: int = 0, curve: CurveSpec | None = None) -> "ExtElement":
        return cls({idx: RingElem({(i, s): 1}, curve)})

    @classmethod
    def central(cls, omega: OmegaClass) -> "ExtElement":
        return cls({}, omega)

    def is_zero(self) -> bool:
        return not self.loops and self.center.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, ExtElement):
            return NotImplemented
        return self.loops == other.loops and self.center == other.center

    def __hash__(self):
        return hash((frozenset(self.loops.items()), self.center))

    def __add__(self, other: "ExtElement") -> "ExtElement":
        loops = dict(self.loops)
        for a, f in other.loops.items():
            loops[a] = loops[a] + f if a in loops else f
        return ExtElement(loops, self.center + other.center)

    def __neg__(self):
        return ExtElement({a: -f for a, f in self.loops.items()}, -self.center)

    def __sub__(self, other: "ExtElement") -> "ExtElement":
        return self + (-other)

    def scale(self, x) -> "ExtElement":
        x = as_ratfunc(x)
        return ExtElement({a: f.scale(x) for a, f in self.loops.items()}, self.center * x)

    def __rmul__(self, x):
        return self.scale(x)

    def monomials(self) -> Iterator[tuple[Basis, RatFuncC]]:
        for a, f in sorted(self.loops.items()):
            for (i, s), coef in f:
                yield (a, i, s), coef

    def parities(self) -> set[int]:
        """Z/2 degrees present: sheet of u for loops; omega0 even, the rest odd."""
        out = {s for f in self.loops.values() for s in f.sheets()}
        if self.center.lam0:
            out.add(0)
        if any(self.center.coords[1:]):
            out.add(1)
        return out

    def describe(self, L: SimpleLieAlgebra | None = None) -> str:
        parts = []
        for a, f in sorted(self.loops.items()):
            label = L.labels[a] if L else f"x{a}"
            parts.append(f"{label}⊗({format_ring(f)})")
        if self.center:
            parts.append(str(self.center))
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"ExtElement({self.describe()})"


def basis_label(L: SimpleLieAlgebra, b: Basis) -> str:
    idx, i, s = b
    return f"{L.labels[idx]}⊗{format_ring(RingElem({(i, s): 1}))}"


def bracket_kassel(A: ExtElement, B: ExtElement, L: SimpleLieAlgebra) -> ExtElement:
    """``[x⊗f, y⊗g] = [x,y]⊗fg + kappa(x,y) [f dg]``; central terms bracket to zero."""
    loops: dict[int, RingElem] = {}
    center = ZERO_CLASS
    for a, f in A.loops.items():
        for b, g in B.loops.items():
            br = L.bracket(a, b)
            k_ab = L.kappa(a, b)
            if br:
                fg = f * g
                for k, v in br.items():
                    term = fg.scale(v)
                    loops[k] = loops[k] + term if k in loops else term
            if k_ab:
                w = cocycle(f, g)
                if w:
                    center = center + w * k_ab
    return ExtElement(loops, center)


# -- closed form ---------------------------------------------------------------


def _at_curve(x: RatFuncC, cval: RatFuncC) -> RatFuncC:
    if cval == C:
        return x
    return RatFuncC.const(specialize_c(x, cval.constant_value()))


@dataclass(frozen=True)
class PsiValue:
    s: int
    value: OmegaClass


@lru_cache(maxsize=None)
def psi(s: int, curve: CurveSpec | None = None) -> PsiValue:
    """Central coefficient of ``[x⊗t^(i-1)u, y⊗t^j] / (j kappa(x,y))`` at ``s = i+j``."""
    curve = curve or djkm_curve()
    c = curve_parameter(curve)
    if s - 2 in (-1, -2, -3, -4):
        return PsiValue(s, OmegaClass.basis(s - 2))
    k = abs(s) - 2
    if s % 2:
        p3 = _at_curve(pfamily_recursion(-3, k)[k], c)
        if s >= 3:
            value = OmegaClass(RATFUNC_ZERO, p3 * c, RATFUNC_ZERO, p3, RATFUNC_ZERO)
        else:
            value = OmegaClass(RATFUNC_ZERO, p3, RATFUNC_ZERO, p3 * c, RATFUNC_ZERO)
    else:
        p4 = _at_curve(pfamily_recursion(-4, k)[k], c)
        p2 = _at_curve(pfamily_recursion(-2, k)[k], c)
        value = OmegaClass(RATFUNC_ZERO, RATFUNC_ZERO, p2, RATFUNC_ZERO, p4)
    return PsiValue(s, value)


PsiFn = Callable[[int, CurveSpec], PsiValue]


@lru_cache(maxsize=None)
def _closed_monomial(i: int, s: int, j: int, r: int, curve: CurveSpec, psi_fn: PsiFn) -> tuple[RingElem, OmegaClass]:
    """``[x⊗t^i u^s, y⊗t^j u^r] = [x,y]⊗loop + kappa(x,y) central``."""
    c = curve_parameter(curve)
    omega0 = OmegaClass.basis(0)
    if s == 0 and r == 0:
        central = omega0 * j if i + j == 0 else ZERO_CLASS
        return RingElem({(i + j, 0): 1}, curve), central
    if s == 1 and r == 1:
        ii, jj = i + 1, j + 1
        n = ii + jj
        loop = RingElem({(n + 2, 0): 1, (n, 0): c * -2, (n - 2, 0): 1}, curve)
        coeff = RATFUNC_ZERO
        if n == -2:
            coeff = coeff + (jj + 1)
        if n == 0:
            coeff = coeff + c * (-2 * jj)
        if n == 2:
            coeff = coeff + (jj - 1)
        return loop, omega0 * coeff
    if s == 1 and r == 0:
        ii = i + 1
        loop = RingElem({(ii + j - 1, 1): 1}, curve)
        return loop, psi_fn(ii + j, curve).value * j
    # [x⊗t^i, y⊗t^j u] = -[y⊗t^j u, x⊗t^i] and [y,x] = -[x,y]
    loop, central = _closed_monomial(j, r, i, s, curve, psi_fn)
    return loop, -central


def bracket_closed(A: ExtElement, B: ExtElement, L: SimpleLieAlgebra, psi_fn: PsiFn = psi) -> ExtElement:
    """The same bracket evaluated from the explicit monomial formulas."""
    loops: dict[int, RingElem] = {}
    center = ZERO_CLASS
    for a, f in A.loops.items():
        for b, g in B.loops.items():
            br = L.bracket(a, b)
            k_ab = L.kappa(a, b)
            if not br and not k_ab:
                continue
            for (i, s), alpha in f.terms.items():
                for (j, r), beta in g.terms.items():
                    loop, central = _closed_monomial(i, s, j, r, f.curve, psi_fn)
                    ab = alpha * beta
                    for k, v in br.items():
                        term = loop.scale(ab * v)
                        loops[k] = loops[k] + term if k in loops else term
                    if k_ab and central:
                        center = center + central * (ab * k_ab)
    return ExtElement(loops, center)


def sigma_ext(A: ExtElement) -> ExtElement:
    """Lift of ``t -> t^-1, u -> t^-2 u`` to the extension."""
    return ExtElement({a: sigma_ring(f) for a, f in A.loops.items()}, sigma_omega(A.center))


def psi_via_reduce(s: int, curve: CurveSpec | None = None) -> OmegaClass:
    """Ground truth for :func:`psi`: the class of ``t^(s-2) u dt``."""
    return reduce_u_monomial(s - 2, curve or djkm_curve())
