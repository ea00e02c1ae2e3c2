"""Folded and classical Wronskians over F_p[X] and geometric polynomials."""

from __future__ import annotations

from typing import Sequence

from .errors import AllZero, MatrixTooLarge, PreconditionViolated
from .field_poly import Field, Poly, hasse_derivative
from .geometry import independent_prefix

PolyMatrix = list[list[Poly]]

MAX_DET_SIZE = 8
FOLDED = "folded"
CLASSICAL = "classical"


def folded_wronskian(fs: Sequence[Poly], gamma: int) -> PolyMatrix:
    """Row u holds f_v(gamma^u X) for u = 0..r-1."""
    r = len(fs)
    if r < 1:
        raise ValueError("need at least one polynomial")
    p = fs[0].field.p
    return [[f.scale_arg(pow(gamma, u, p)) for f in fs] for u in range(r)]


def classical_wronskian(fs: Sequence[Poly]) -> PolyMatrix:
    """Row u holds the u-th Hasse derivatives."""
    r = len(fs)
    if r < 1:
        raise ValueError("need at least one polynomial")
    return [[hasse_derivative(f, u) for f in fs] for u in range(r)]


def _det_bareiss(m: PolyMatrix) -> Poly:
    field = m[0][0].field
    a = [row[:] for row in m]
    r = len(a)
    sign = 1
    prev = Poly.const(field, 1)
    for k in range(r - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, r) if a[i][k]), None)
            if swap is None:
                return Poly.zero(field)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, r):
            for j in range(k + 1, r):
                a[i][j] = (piv * a[i][j] - a[i][k] * a[k][j]).exact_div(prev)
            a[i][k] = Poly.zero(field)
        prev = piv
    det = a[r - 1][r - 1]
    return det if sign == 1 else -det


def _det_cofactor(m: PolyMatrix) -> Poly:
    r = len(m)
    if r == 1:
        return m[0][0]
    field = m[0][0].field
    total = Poly.zero(field)
    for j in range(r):
        if not m[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def poly_det(m: PolyMatrix, method: str = "bareiss") -> Poly:
    """Exact determinant over F_p[X] (fraction-free elimination or cofactor expansion)."""
    r = len(m)
    if r == 0 or any(len(row) != r for row in m):
        raise ValueError("matrix must be square and nonempty")
    if r > MAX_DET_SIZE:
        raise MatrixTooLarge(f"{r}x{r} exceeds the {MAX_DET_SIZE}x{MAX_DET_SIZE} cap")
    if method == "bareiss":
        return _det_bareiss(m)
    if method == "cofactor":
        return _det_cofactor(m)
    raise ValueError(f"unknown method {method!r}")


def wronskian(fs: Sequence[Poly], mode: str, gamma: int | None = None) -> PolyMatrix:
    if mode == FOLDED:
        return folded_wronskian(fs, fs[0].field.gamma if gamma is None else gamma)
    if mode == CLASSICAL:
        return classical_wronskian(fs)
    raise ValueError(f"unknown Wronskian mode {mode!r}")


def _check_char(field: Field, k: int):
    if k >= field.p:
        raise PreconditionViolated(f"Wronskian criteria need k < p (k={k}, p={field.p})")


def independence_test(
    field: Field, fs: Sequence[Sequence[int]], mode: str = FOLDED, gamma: int | None = None
) -> bool:
    """Linear independence of coefficient vectors via a nonzero Wronskian determinant."""
    if not fs:
        return True
    _check_char(field, len(fs[0]))
    polys = [Poly(field, tuple(f)) for f in fs]
    return bool(poly_det(wronskian(polys, mode, gamma)))


def geometric_poly(
    field: Field, fs: Sequence[Sequence[int]], mode: str = FOLDED, gamma: int | None = None
) -> Poly:
    """Monic Wronskian determinant of a basis of span(fs); independent of the basis chosen."""
    if not fs:
        raise AllZero("no vectors given")
    _check_char(field, len(fs[0]))
    basis = independent_prefix(fs, field.p)
    if not basis:
        raise AllZero("every vector is zero")
    polys = [Poly(field, tuple(fs[i])) for i in basis]
    det = poly_det(wronskian(polys, mode, gamma))
    if not det:
        raise AssertionError("Wronskian of an independent set vanished")
    return det.monic()
