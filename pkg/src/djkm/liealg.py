"""Finite-dimensional Lie algebras by structure constants, with the Killing form."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Mapping, Sequence

from .arith import as_rational

# (i, j) -> {k: c_ij^k}
Constants = Mapping[tuple[int, int], Mapping[int, Fraction]]


class LieAlgebraError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SimpleLieAlgebra:
    """Basis ``x_0..x_{dim-1}`` with ``[x_i, x_j] = sum_k c_ij^k x_k``.

    Build through :func:`build_sl2` or :func:`load_structure_constants`; those
    validate.  Direct construction skips validation, which the fault-injection
    tests rely on.
    """

    dim: int
    labels: tuple[str, ...]
    constants: dict[tuple[int, int], dict[int, Fraction]]
    form: tuple[tuple[Fraction, ...], ...] = ()
    form_source: str = "killing"
    _bracket_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def bracket(self, i: int, j: int) -> dict[int, Fraction]:
        return self.constants.get((i, j), {})

    def kappa(self, i: int, j: int) -> Fraction:
        return self.form[i][j]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def ad(self, i: int) -> list[list[Fraction]]:
        """Matrix of ``ad x_i`` acting on column coordinates."""
        mat = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for j in range(self.dim):
            for k, v in self.bracket(i, j).items():
                mat[k][j] += v
        return mat

    def with_form(self, form, source: str = "user") -> "SimpleLieAlgebra":
        mat = tuple(tuple(as_rational(x) for x in row) for row in form)
        alg = SimpleLieAlgebra(self.dim, self.labels, self.constants, mat, source)
        _check_form(alg)
        return alg

    def metadata(self) -> dict:
        return {"labels": list(self.labels), "invariant_form": self.form_source}


def killing_from_constants(L: SimpleLieAlgebra) -> tuple[tuple[Fraction, ...], ...]:
    """``kappa(x_a, x_b) = trace(ad x_a ad x_b) = sum_{j,k} c_aj^k c_bk^j``."""
    n = L.dim
    out = [[Fraction(0)] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            total = Fraction(0)
            for j in range(n):
                for k, v in L.bracket(a, j).items():
                    w = L.bracket(b, k).get(j)
                    if w:
                        total += v * w
            out[a][b] = out[b][a] = total
    return tuple(tuple(row) for row in out)


def determinant(mat: Sequence[Sequence[Fraction]]) -> Fraction:
    m = [list(map(Fraction, row)) for row in mat]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            if f:
                for cc in range(col, n):
                    m[r][cc] -= f * m[col][cc]
    return det


def jacobi_violation(L: SimpleLieAlgebra) -> tuple[int, int, int] | None:
    """First basis triple where ``[x,[y,z]] + [y,[z,x]] + [z,[x,y]] != 0``."""
    n = L.dim
    for i, j, k in product(range(n), repeat=3):
        total: dict[int, Fraction] = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for m, v in L.bracket(b, c).items():
                for l, w in L.bracket(a, m).items():
                    total[l] = total.get(l, 0) + v * w
        if any(total.values()):
            return (i, j, k)
    return None


def antisymmetry_violation(L: SimpleLieAlgebra) -> tuple[int, int] | None:
    for i, j in product(range(L.dim), repeat=2):
        a, b = L.bracket(i, j), L.bracket(j, i)
        for k in set(a) | set(b):
            if a.get(k, 0) != -b.get(k, 0):
                return (i, j)
    return None


def _check_form(L: SimpleLieAlgebra):
    n = L.dim
    f = L.form
    for a, b in product(range(n), repeat=2):
        if f[a][b] != f[b][a]:
            raise LieAlgebraError(f"invariant form is not symmetric at ({a}, {b})")
    # kappa([x_a, x_b], x_c) = kappa(x_a, [x_b, x_c])
    for a, b, c in product(range(n), repeat=3):
        lhs = sum((v * f[k][c] for k, v in L.bracket(a, b).items()), Fraction(0))
        rhs = sum((v * f[a][k] for k, v in L.bracket(b, c).items()), Fraction(0))
        if lhs != rhs:
            raise LieAlgebraError(f"form is not ad-invariant on ({a}, {b}, {c})")
    if determinant(f) == 0:
        raise LieAlgebraError("not semisimple: the invariant form is degenerate")


def validate(L: SimpleLieAlgebra) -> SimpleLieAlgebra:
    bad = antisymmetry_violation(L)
    if bad:
        raise LieAlgebraError(f"antisymmetry fails for basis pair {_names(L, bad)}")
    bad = jacobi_violation(L)
    if bad:
        raise LieAlgebraError(f"Jacobi identity fails for basis triple {_names(L, bad)}")
    if not L.form:
        L = SimpleLieAlgebra(L.dim, L.labels, L.constants, killing_from_constants(L), "killing")
    _check_form(L)
    return L


def _names(L: SimpleLieAlgebra, idx) -> tuple[str, ...]:
    return tuple(L.labels[i] for i in idx)


def from_constants(labels: Sequence[str], constants: Mapping, form=None) -> SimpleLieAlgebra:
    """Validated algebra; antisymmetric partners are filled in when absent."""
    dim = len(labels)
    table: dict[tuple[int, int], dict[int, Fraction]] = {}
    given = {}
    for (i, j), row in constants.items():
        for k, v in row.items():
            v = as_rational(v)
            if not all(0 <= x < dim for x in (i, j, k)):
                raise LieAlgebraError(f"basis index out of range in ({i}, {j}, {k})")
            given[(i, j, k)] = v
    for (i, j, k), v in given.items():
        if (j, i, k) in given and given[(j, i, k)] != -v:
            raise LieAlgebraError(f"antisymmetry fails for basis pair {(labels[i], labels[j])}")
        if v:
            table.setdefault((i, j), {})[k] = v
            if (j, i, k) not in given:
                table.setdefault((j, i), {})[k] = -v
    L = SimpleLieAlgebra(dim, tuple(labels), table)
    L = validate(L)
    if form is not None:
        L = L.with_form(form)
    return L


def build_sl2() -> SimpleLieAlgebra:
    """sl2 on (e, h, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    e, h, f = 0, 1, 2
    return from_constants(("e", "h", "f"), {(h, e): {e: 2}, (h, f): {f: -2}, (e, f): {h: 1}})


SL2_TEXT = """\
# sl2 in the basis e, h, f
dim 3
labels e h f
1 0 0 2
1 2 2 -2
0 2 1 1
"""


def parse_structure_constants(text: str):
    dim = None
    labels = None
    constants: dict[tuple[int, int], dict[int, Fraction]] = {}
    form_entries: dict[tuple[int, int], Fraction] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "dim":
                dim = int(parts[1])
            elif parts[0] == "labels":
                labels = tuple(parts[1:])
            elif parts[0] == "form":
                a, b, v = int(parts[1]), int(parts[2]), as_rational(parts[3])
                form_entries[(a, b)] = v
                form_entries.setdefault((b, a), v)
            elif len(parts) == 4:
                i, j, k = map(int, parts[:3])
                constants.setdefault((i, j), {})[k] = as_rational(parts[3])
            else:
                raise ValueError("expected `i j k value`")
        except (ValueError, IndexError) as exc:
            raise LieAlgebraError(f"line {lineno}: cannot parse {raw!r}: {exc}") from exc
    if dim is None:
        raise LieAlgebraError("missing `dim` header")
    labels = labels or tuple(f"x{i}" for i in range(dim))
    if len(labels) != dim:
        raise LieAlgebraError(f"{len(labels)} labels for dimension {dim}")
    form = None
    if form_entries:
        form = [[form_entries.get((a, b), Fraction(0)) for b in range(dim)] for a in range(dim)]
    return labels, constants, form


def load_structure_constants(spec: str | Path) -> SimpleLieAlgebra:
    """Parse and validate the text format (``dim``, ``labels``, ``i j k value`` lines).

    A :class:`~pathlib.Path` is read from disk; a string is taken as the text.
    """
    text = spec.read_text() if isinstance(spec, Path) else spec
    labels, constants, form = parse_structure_constants(text)
    return from_constants(labels, constants, form)


def dump_structure_constants(L: SimpleLieAlgebra) -> str:
    lines = [f"dim {L.dim}", "labels " + " ".join(L.labels)]
    for (i, j), row in sorted(L.constants.items()):
        if i < j:
            for k, v in sorted(row.items()):
                lines.append(f"{i} {j} {k} {v}")
    if L.form_source != "killing":
        for a in range(L.dim):
            for b in range(a, L.dim):
                if L.form[a][b]:
                    lines.append(f"form {a} {b} {L.form[a][b]}")
    return "\n".join(lines) + "\n"
