"""Chebyshev polynomials evaluated at elements of a commutative ring.

Any values supporting ``+``, ``-``, ``*`` and mixing with Python ints work:
integers, :class:`~qgr.laurent.LaurentPoly`, sympy expressions.
"""

from __future__ import annotations

from typing import Any, Sequence


def _constant_like(x: Any, c: int) -> Any:
    return x * 0 + c


def cheb_first(l: int, x: Any) -> Any:
    """Normalized first kind: ``F_0 = 2``, ``F_1 = x``, ``F_l = x F_{l-1} - F_{l-2}``."""
    if l < 0:
        raise ValueError("F_l needs l >= 0")
    prev, cur = _constant_like(x, 2), x
    if l == 0:
        return prev
    for _ in range(l - 1):
        prev, cur = cur, x * cur - prev
    return cur


def cheb_second(l: int, x: Any) -> Any:
    """Second kind: ``S_{-1} = 0``, ``S_0 = 1``, ``S_l = x S_{l-1} - S_{l-2}``."""
    if l < -1:
        raise ValueError("S_l needs l >= -1")
    prev, cur = _constant_like(x, 0), _constant_like(x, 1)
    if l == -1:
        return prev
    for _ in range(l):
        prev, cur = cur, x * cur - prev
    return cur


def cheb_generalized(xs: Sequence[Any], one: Any = 1) -> Any:
    """``P_l(x_1, ..., x_l)`` with ``P_0 = 1`` and ``P_l = x_l P_{l-1} - P_{l-2}``.

    ``one`` is the ring unit, needed only to return ``P_0`` or to seed the
    recursion when ``xs`` is empty.
    """
    if not xs:
        return one
    unit = _constant_like(xs[0], 1)
    prev, cur = unit, xs[0]
    for x in xs[1:]:
        prev, cur = cur, x * cur - prev
    return cur
