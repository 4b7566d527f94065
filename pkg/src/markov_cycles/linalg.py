"""Dense elimination over float64 or exact rationals.

Arrays of dtype ``object`` holding :class:`fractions.Fraction` (or ints) are
treated as exact; everything else is converted to float64 and routed through
the compiled kernels.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import numpy as np

from . import _kernels
from .errors import NotSquare, SingularSystem


def is_exact(a) -> bool:
    return isinstance(a, np.ndarray) and a.dtype == object


def to_fraction(x) -> Fraction:
    """Exact rational value of ``x`` (strings like ``"1/3"`` are accepted)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(float(x))


def exact_array(a) -> np.ndarray:
    """Object array of Fractions with the shape of ``a``."""
    arr = np.asarray(a, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx in np.ndindex(arr.shape):
        out[idx] = to_fraction(arr[idx])
    return out


def zeros_like(a, shape=None) -> np.ndarray:
    """Zero array of the same arithmetic kind (exact or float) as ``a``."""
    shape = np.shape(a) if shape is None else shape
    if is_exact(a):
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out
    return np.zeros(shape)


def max_abs(a):
    """Largest absolute entry; 0 for empty input.  Exact for object arrays."""
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return max(abs(x) for x in a.ravel()) if a.dtype == object else float(np.max(np.abs(a)))


def _square(a) -> np.ndarray:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {a.shape}")
    return a


def det(a):
    """Determinant by partial-pivot elimination; exact for object arrays."""
    a = _square(a)
    if a.shape[0] == 0:
        return Fraction(1) if is_exact(a) else 1.0
    if is_exact(a):
        return Fraction(_kernels.det_py(a))
    return float(_kernels.det(np.ascontiguousarray(a, dtype=np.float64)))


def solve(a, b):
    """Solve the square system ``a x = b``; raises SingularSystem."""
    a = _square(a)
    if is_exact(a) or is_exact(b):
        x, singular = _kernels.solve_py(exact_array(a), exact_array(b))
    else:
        x, singular = _kernels.solve(
            np.ascontiguousarray(a, dtype=np.float64), np.array(b, dtype=np.float64)
        )
    if singular:
        raise SingularSystem("matrix is singular to working precision")
    return x


def rank(a, tol: float | None = None) -> int:
    """Row rank.  Exact elimination for object arrays, pivot threshold otherwise."""
    a = np.array(a, dtype=object if is_exact(a) else np.float64)
    if a.ndim != 2:
        raise ValueError("rank expects a 2-d array")
    rows, cols = a.shape
    exact = a.dtype == object
    if not exact and tol is None:
        tol = max(rows, cols) * np.finfo(float).eps * max(max_abs(a), 1.0)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        col = [abs(a[i, c]) for i in range(r, rows)]
        p = r + int(np.argmax(col))
        if (a[p, c] == 0) if exact else (abs(a[p, c]) <= tol):
            continue
        a[[r, p]] = a[[p, r]]
        for i in range(r + 1, rows):
            if a[i, c] != 0:
                a[i] = a[i] - (a[i, c] / a[r, c]) * a[r]
        r += 1
    return r
