"""Exhaustive identity sweeps over basis elements ``x⊗t^i u^s`` with ``|i| <= window``.

Sweeps are exact.  Bilinearity reduces every identity to basis monomials, so
nested brackets are expanded through a cache of basis-pair brackets.  Work is
split by the first basis element, which makes the sweep embarrassingly
parallel; the merge keeps the lexicographically first counterexample.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .algebra import (
    PSI_READING,
    Basis,
    ExtElement,
    PsiFn,
    basis_label,
    bracket_closed,
    bracket_kassel,
    psi,
    psi_via_reduce,
    sigma_ext,
)
from .arith import RatFuncC
from .liealg import SimpleLieAlgebra
from .omega import ZERO_CLASS, OmegaClass
from .ring import CurveSpec, djkm_curve

CHECKS = ("antisymmetry", "jacobi", "agreement", "sigma", "grading", "psi")


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: int = 0
    firstCounterexample: str | None = None
    _first_key: tuple | None = field(default=None, repr=False)

    def record(self, ok: bool, key: tuple, describe):
        self.cases += 1
        if not ok:
            self.failures += 1
            if self._first_key is None or key < self._first_key:
                self._first_key = key
                self.firstCounterexample = describe()

    def merge(self, other: "CheckResult"):
        self.cases += other.cases
        self.failures += other.failures
        if other._first_key is not None and (self._first_key is None or other._first_key < self._first_key):
            self._first_key = other._first_key
            self.firstCounterexample = other.firstCounterexample

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "cases": self.cases,
            "failures": self.failures,
            "firstCounterexample": self.firstCounterexample,
        }


@dataclass
class VerifyReport:
    window: int
    checks: list[CheckResult]
    metadata: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "window": self.window,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
            "metadata": self.metadata,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False)


def window_basis(L: SimpleLieAlgebra, window: int) -> list[Basis]:
    return [(a, i, s) for a in range(L.dim) for i in range(-window, window + 1) for s in (0, 1)]


class _Sweeper:
    """Basis-pair bracket cache shared by the sweeps of one worker."""

    def __init__(self, L: SimpleLieAlgebra, curve: CurveSpec):
        self.L = L
        self.curve = curve
        self.cache: dict[tuple[Basis, Basis], tuple[dict[Basis, RatFuncC], OmegaClass]] = {}

    def elem(self, b: Basis) -> ExtElement:
        return ExtElement.basis(b[0], b[1], b[2], self.curve)

    def pair(self, x: Basis, y: Basis) -> tuple[dict[Basis, RatFuncC], OmegaClass]:
        key = (x, y)
        hit = self.cache.get(key)
        if hit is None:
            res = bracket_kassel(self.elem(x), self.elem(y), self.L)
            hit = (dict(res.monomials()), res.center)
            self.cache[key] = hit
        return hit

    def bracket_with(self, x: Basis, loops: dict[Basis, RatFuncC]):
        """``[x, sum coef * y]`` over loop monomials (central parts bracket to zero)."""
        out: dict[Basis, RatFuncC] = {}
        center = ZERO_CLASS
        for y, coef in loops.items():
            lo, ce = self.pair(x, y)
            for z, v in lo.items():
                w = v * coef
                out[z] = out[z] + w if z in out else w
            if ce:
                center = center + ce * coef
        return out, center

    def jacobi_zero(self, x: Basis, y: Basis, z: Basis) -> bool:
        total: dict[Basis, RatFuncC] = {}
        center = ZERO_CLASS
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            inner, _ = self.pair(b, c)
            lo, ce = self.bracket_with(a, inner)
            for key, v in lo.items():
                total[key] = total[key] + v if key in total else v
            center = center + ce
        return center.is_zero() and not any(total.values())


def _sweep(L, curve, window, checks, psi_fn, first_slice):
    """Run the selected checks with the first basis element restricted to ``first_slice``."""
    sw = _Sweeper(L, curve)
    basis = window_basis(L, window)
    firsts = [basis[k] for k in first_slice]
    results = {name: CheckResult(name) for name in checks}
    label = lambda b: basis_label(L, b)  # noqa: E731

    for x in firsts:
        X = sw.elem(x)
        for y in basis:
            if "antisymmetry" in results:
                lo1, ce1 = sw.pair(x, y)
                lo2, ce2 = sw.pair(y, x)
                keys = set(lo1) | set(lo2)
                ok = (ce1 + ce2).is_zero() and all(
                    not (lo1.get(k, 0) + lo2.get(k, 0)) for k in keys
                )
                results["antisymmetry"].record(ok, (x, y), lambda: f"[{label(x)}, {label(y)}]")
            if "agreement" in results:
                Y = sw.elem(y)
                ok = bracket_closed(X, Y, L, psi_fn) == bracket_kassel(X, Y, L)
                results["agreement"].record(ok, (x, y), lambda: f"[{label(x)}, {label(y)}]")
            if "sigma" in results:
                Y = sw.elem(y)
                lhs = sigma_ext(bracket_kassel(X, Y, L))
                rhs = bracket_kassel(sigma_ext(X), sigma_ext(Y), L)
                results["sigma"].record(lhs == rhs, (x, y), lambda: f"[{label(x)}, {label(y)}]")
            if "grading" in results:
                res = bracket_kassel(X, sw.elem(y), L)
                ok = res.parities() <= {(x[2] + y[2]) % 2}
                results["grading"].record(ok, (x, y), lambda: f"[{label(x)}, {label(y)}]")
            if "jacobi" in results:
                for z in basis:
                    results["jacobi"].record(
                        sw.jacobi_zero(x, y, z),
                        (x, y, z),
                        lambda: f"({label(x)}, {label(y)}, {label(z)})",
                    )
        if "grading" in results:
            # no loop element of the window is central
            commutes = all(not any(sw.pair(x, y)[0].values()) and sw.pair(x, y)[1].is_zero() for y in basis)
            results["grading"].record(not commutes, (x, ()), lambda: f"{label(x)} commutes with the window")
    return results


def verify(
    window: int,
    L: SimpleLieAlgebra,
    checks=("all",),
    *,
    curve: CurveSpec | None = None,
    psi_fn: PsiFn = psi,
    workers: int = 1,
) -> VerifyReport:
    """Run identity sweeps; ``checks`` is a subset of :data:`CHECKS` or ``("all",)``."""
    if window < 0:
        raise ValueError("window must be non-negative")
    curve = curve or djkm_curve()
    selected = set(CHECKS) if "all" in checks else set(checks)
    unknown = selected - set(CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    pair_checks = tuple(n for n in CHECKS if n in selected and n != "psi")
    nbasis = len(window_basis(L, window))

    merged = {name: CheckResult(name) for name in pair_checks}
    if pair_checks:
        if workers > 1 and nbasis > 1:
            slices = [range(k, nbasis, workers) for k in range(workers)]
            with ProcessPoolExecutor(max_workers=workers) as pool:
                futures = [pool.submit(_sweep, L, curve, window, pair_checks, psi_fn, sl) for sl in slices]
                parts = [f.result() for f in futures]
        else:
            parts = [_sweep(L, curve, window, pair_checks, psi_fn, range(nbasis))]
        for part in parts:
            for name, res in part.items():
                merged[name].merge(res)

    results = [merged[n] for n in pair_checks]
    if "psi" in selected:
        res = CheckResult("psi")
        smax = 2 * window + 2
        for s in range(-smax, smax + 1):
            res.record(psi_fn(s, curve).value == psi_via_reduce(s, curve), (s,), lambda: f"psi({s})")
        results.append(res)
    results.sort(key=lambda r: CHECKS.index(r.name))
    metadata = {"algebra": L.metadata(), "psi": PSI_READING, "workers": workers}
    return VerifyReport(window, results, metadata)

