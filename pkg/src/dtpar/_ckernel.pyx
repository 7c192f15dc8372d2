# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse convolution kernels; see :mod:`dtpar._pykernel` for the contract."""

from array import array

from libc.stdint cimport int64_t
from libc.stdlib cimport calloc, free

cdef extern from *:
    bint __builtin_mul_overflow(int64_t a, int64_t b, int64_t *res) nogil
    bint __builtin_add_overflow(int64_t a, int64_t b, int64_t *res) nogil

# dense accumulator is used when the output code range is at most this long
cdef Py_ssize_t MAX_DENSE = 1 << 22


def convolve(a_codes, a_degs, list a_vals, b_codes, b_degs, list b_vals, Py_ssize_t d):
    cdef const int64_t[:] ac = a_codes
    cdef const int64_t[:] ad = a_degs
    cdef const int64_t[:] bc = b_codes
    cdef const int64_t[:] bd = b_degs
    cdef Py_ssize_t na = ac.shape[0], nb = bc.shape[0]
    cdef Py_ssize_t i, j
    cdef int64_t da, ca
    cdef dict out = {}
    cdef object va, prod, prev, key
    if nb == 0:
        return out
    for i in range(na):
        da = ad[i]
        if da + bd[0] > d:
            break
        ca = ac[i]
        va = a_vals[i]
        for j in range(nb):
            if da + bd[j] > d:
                break
            key = ca + bc[j]
            prod = va * b_vals[j]
            prev = out.get(key)
            if prev is None:
                out[key] = prod
            else:
                out[key] = prev + prod
    return out


cdef bint _dense_int64(const int64_t[:] ac, const int64_t[:] ad, const int64_t[:] an,
                       const int64_t[:] bc, const int64_t[:] bd, const int64_t[:] bn,
                       int64_t d, int64_t lo, int64_t *acc) nogil:
    """Accumulate into ``acc``; returns False on int64 overflow."""
    cdef Py_ssize_t i, j, na = ac.shape[0], nb = bc.shape[0]
    cdef int64_t da, p
    for i in range(na):
        da = ad[i]
        if da + bd[0] > d:
            break
        for j in range(nb):
            if da + bd[j] > d:
                break
            if __builtin_mul_overflow(an[i], bn[j], &p):
                return False
            if __builtin_add_overflow(acc[ac[i] + bc[j] - lo], p, &acc[ac[i] + bc[j] - lo]):
                return False
    return True


def convolve_int(a_codes, a_degs, list a_nums, b_codes, b_degs, list b_nums, Py_ssize_t d):
    cdef const int64_t[:] ac = a_codes
    cdef const int64_t[:] bc = b_codes
    cdef Py_ssize_t na = ac.shape[0], nb = bc.shape[0], k, size
    cdef int64_t lo, hi
    cdef int64_t *acc
    cdef bint ok
    if na == 0 or nb == 0:
        return {}
    lo = min(a_codes) + min(b_codes)
    hi = max(a_codes) + max(b_codes)
    size = hi - lo + 1
    if size > MAX_DENSE:
        return convolve(a_codes, a_degs, a_nums, b_codes, b_degs, b_nums, d)
    try:
        an = array("q", a_nums)
        bn = array("q", b_nums)
    except OverflowError:
        return convolve(a_codes, a_degs, a_nums, b_codes, b_degs, b_nums, d)
    acc = <int64_t *> calloc(size, sizeof(int64_t))
    if acc == NULL:
        raise MemoryError()
    try:
        ok = _dense_int64(ac, a_degs, an, bc, b_degs, bn, d, lo, acc)
        if not ok:
            return convolve(a_codes, a_degs, a_nums, b_codes, b_degs, b_nums, d)
        return {lo + k: acc[k] for k in range(size) if acc[k] != 0}
    finally:
        free(acc)
