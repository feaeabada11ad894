"""Deliberately broken inputs for the fault-detection tests (module level so they pickle)."""

from fractions import Fraction

from djkm.algebra import PsiValue, psi
from djkm.liealg import SimpleLieAlgebra, build_sl2


def psi_sign_flip(s, curve=None):
    """psi with one entry (s = 5) negated."""
    value = psi(s, curve)
    return PsiValue(s, -value.value) if s == 5 else value


def corrupted_sl2():
    """sl2 with [h,e] = 3e (and [e,h] = -3e); unvalidated, Killing form of the real sl2."""
    good = build_sl2()
    constants = {k: dict(v) for k, v in good.constants.items()}
    constants[(1, 0)] = {0: Fraction(3)}
    constants[(0, 1)] = {0: Fraction(-3)}
    return SimpleLieAlgebra(3, good.labels, constants, good.form, "killing")
