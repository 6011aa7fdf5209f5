"""Pure-Python versions of the integer kernels.

Every routine works on integer data only.  A surd value is passed as the
triple ``(x, y, z)`` together with the radicand ``D`` and stands for
``(x + y*sqrt(D)) / z`` with ``z > 0``.  ``D`` must be a positive
non-square whenever ``y != 0``.
"""

from __future__ import annotations

from math import isqrt

__all__ = ["surd_sign", "floor_div_surd", "orbit_digits", "to_base3"]


def surd_sign(A: int, B: int, D: int) -> int:
    """Sign of ``A + B*sqrt(D)`` as -1, 0 or 1."""
    if B == 0:
        return (A > 0) - (A < 0)
    if A == 0:
        return 1 if B > 0 else -1
    if (A > 0) == (B > 0):
        return 1 if A > 0 else -1
    # opposite signs: the larger magnitude wins, equality impossible
    if A * A > B * B * D:
        return 1 if A > 0 else -1
    return 1 if B > 0 else -1


def floor_div_surd(x: int, y: int, z: int, D: int) -> int:
    """``floor((x + y*sqrt(D)) / z)`` for ``z > 0``."""
    if y == 0:
        return x // z
    s = isqrt(y * y * D)
    if y > 0:
        # y*sqrt(D) lies strictly inside (s, s + 1)
        return (x + s) // z
    return (x - s - 1) // z


_SMALL = 12
_POW3: dict[int, int] = {}


def _pow3(k: int) -> int:
    p = _POW3.get(k)
    if p is None:
        p = _POW3[k] = 3**k
    return p


def to_base3(n: int, width: int) -> str:
    """Base-3 digits of ``0 <= n < 3**width``, zero padded to ``width``."""
    if width <= _SMALL:
        out = []
        for _ in range(width):
            n, d = divmod(n, 3)
            out.append("012"[d])
        return "".join(reversed(out))
    half = width // 2
    hi, lo = divmod(n, _pow3(half))
    return to_base3(hi, width - half) + to_base3(lo, half)


_FIRST_BATCH = 32


def orbit_digits(x: int, y: int, z: int, D: int, max_steps: int) -> str:
    """Leading base-3 digits of ``theta = (x + y*sqrt(D))/z`` in ``[0, 1)``.

    Stops right after the first ``'1'`` or after ``max_steps`` digits.
    The first ``K`` digits are read off ``floor(3**K * theta)``, so one
    integer square root yields a whole batch.
    """
    K = min(_FIRST_BATCH, max_steps)
    while True:
        p = _pow3(K)
        digits = to_base3(floor_div_surd(p * x, p * y, z, D), K)
        i = digits.find("1")
        if i >= 0:
            return digits[: i + 1]
        if K >= max_steps:
            return digits
        K = min(4 * K, max_steps)
