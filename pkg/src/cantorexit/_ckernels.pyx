# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the integer kernels.

Values that fit in machine words go through 128-bit products; anything
larger is handed to the pure-Python implementation, so results are
identical for all inputs.
"""

from cantorexit import _pykernels

floor_div_surd = _pykernels.floor_div_surd
to_base3 = _pykernels.to_base3

cdef extern from *:
    ctypedef long long i128 "__int128"

# magnitude limit for word-sized operands
cdef long long LIM = 1LL << 61
# 2**126, bound on squared terms
cdef i128 SQLIM = (<i128>1) << 126


cdef inline bint _fits(long long A, long long B, long long D):
    if A >= LIM or A <= -LIM or B >= LIM or B <= -LIM:
        return False
    cdef i128 b2 = <i128>B * <i128>B
    if b2 != 0 and D > SQLIM // b2:
        return False
    return True


cdef inline int _sign(long long A, long long B, long long D):
    cdef i128 a2, b2d
    if B == 0:
        return (A > 0) - (A < 0)
    if A == 0:
        return 1 if B > 0 else -1
    if (A > 0) == (B > 0):
        return 1 if A > 0 else -1
    a2 = <i128>A * <i128>A
    b2d = <i128>B * <i128>B * <i128>D
    if a2 > b2d:
        return 1 if A > 0 else -1
    return 1 if B > 0 else -1


def surd_sign(A, B, D):
    """Sign of ``A + B*sqrt(D)`` as -1, 0 or 1."""
    cdef long long a, b, d
    try:
        a = A
        b = B
        d = D
    except OverflowError:
        return _pykernels.surd_sign(A, B, D)
    if d < 0 or not _fits(a, b, d):
        return _pykernels.surd_sign(A, B, D)
    return _sign(a, b, d)


def orbit_digits(x, y, z, D, Py_ssize_t max_steps):
    """Leading base-3 digits of ``(x + y*sqrt(D))/z`` in ``[0, 1)``.

    Stops right after the first ``'1'`` or after ``max_steps`` digits.
    """
    cdef long long cx, cy, cz, cd, a1, a2, b
    cdef Py_ssize_t n = 0
    cdef int digit
    try:
        cx = x
        cy = y
        cz = z
        cd = D
    except OverflowError:
        return _pykernels.orbit_digits(x, y, z, D, max_steps)
    if cz <= 0 or cz >= LIM or cd < 0:
        return _pykernels.orbit_digits(x, y, z, D, max_steps)

    cdef bytearray out = bytearray()
    while n < max_steps:
        if cx >= LIM // 4 or cx <= -(LIM // 4) or cy >= LIM // 4 or cy <= -(LIM // 4):
            break
        b = 3 * cy
        a1 = 3 * cx - cz
        a2 = a1 - cz
        if not _fits(a1, b, cd) or not _fits(a2, b, cd):
            break
        digit = (_sign(a1, b, cd) >= 0) + (_sign(a2, b, cd) >= 0)
        out.append(48 + digit)
        n += 1
        if digit == 1:
            return out.decode("ascii")
        cx = 3 * cx - digit * cz
        cy = b
    head = out.decode("ascii")
    if n == max_steps:
        return head
    return head + _pykernels.orbit_digits(cx, cy, cz, cd, max_steps - n)
