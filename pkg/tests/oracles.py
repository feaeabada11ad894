"""Independent oracles used by the tests.

``linear_algebra_class`` never touches the reduction recursion: it spans the
odd differentials ``t^e u dt`` and ``t^e du`` in a finite window, adds every
exact form ``d(t^i u)`` and every multiple ``t^i u (2u du - p'(t) dt)`` of the
curve relation, and solves for the coordinates of ``t^k u dt`` on
``t^-1 u dt .. t^-4 u dt`` by Gaussian elimination over Q.
"""

from fractions import Fraction


def _solve_particular(columns, rhs):
    """Some solution of ``sum y_j columns[j] = rhs`` (vectors are dicts), or None."""
    keys = sorted({k for col in columns for k in col} | set(rhs))
    rows = [[Fraction(col.get(k, 0)) for col in columns] + [Fraction(rhs.get(k, 0))] for k in keys]
    ncols = len(columns)
    pivots = []
    r = 0
    for cidx in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][cidx]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][cidx]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][cidx]:
                f = rows[i][cidx]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(cidx)
        r += 1
    if any(row[-1] for row in rows[r:]):
        return None
    y = [Fraction(0)] * ncols
    for i, cidx in enumerate(pivots):
        y[cidx] = rows[i][-1]
    return y


def linear_algebra_class(k, p_coeffs, margin=10):
    """Coordinates (w_-1, w_-2, w_-3, w_-4) of [t^k u dt] on u^2 = sum p_coeffs[j] t^j."""
    p = [Fraction(a) for a in p_coeffs]
    n = len(p) - 1
    W = abs(k) + margin
    relations = []
    for i in range(-W, W + 1):
        # d(t^i u) = i t^(i-1) u dt + t^i du
        rel = {("du", i): 1}
        if i:
            rel[("u", i - 1)] = i
        relations.append(rel)
        # t^i u (2u du - p' dt) = 2 t^i p du - t^i u p' dt
        rel = {}
        for j, a in enumerate(p):
            if a:
                rel[("du", i + j)] = rel.get(("du", i + j), 0) + 2 * a
                if j:
                    rel[("u", i + j - 1)] = rel.get(("u", i + j - 1), 0) - j * a
        relations.append(rel)
    basis = [{("u", -b): 1} for b in range(1, n + 1)]
    y = _solve_particular(relations + basis, {("u", k): 1})
    assert y is not None, "target not in span"
    return tuple(y[len(relations):])
