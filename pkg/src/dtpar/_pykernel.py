"""Pure-Python sparse convolution kernel (fallback for :mod:`dtpar._ckernel`).

Both kernels share one contract.  A series is passed as three parallel
sequences sorted by ascending degree: integer key codes, integer
omega-degrees and coefficient objects.  Key codes are additive (the code of a
product monomial is the sum of the factor codes), so the kernel never needs to
know about classes, only about the truncation degree ``d``.
"""


def convolve(a_codes, a_degs, a_vals, b_codes, b_degs, b_vals, d):
    """Return ``{code: coefficient}`` for the product truncated at degree ``d``.

    Zero coefficients may or may not appear in the result; callers prune
    them once.
    """
    out = {}
    nb = len(b_codes)
    if not nb:
        return out
    for i in range(len(a_codes)):
        da = a_degs[i]
        if da + b_degs[0] > d:
            break
        ca = a_codes[i]
        va = a_vals[i]
        for j in range(nb):
            if da + b_degs[j] > d:
                break
            key = ca + b_codes[j]
            prod = va * b_vals[j]
            prev = out.get(key)
            out[key] = prod if prev is None else prev + prod
    return out


def convolve_int(a_codes, a_degs, a_nums, b_codes, b_degs, b_nums, d):
    """Integer-coefficient variant of :func:`convolve`.

    Rational series are passed as integer numerators over a shared
    denominator, so the inner loop never normalises a fraction.
    """
    return convolve(a_codes, a_degs, a_nums, b_codes, b_degs, b_nums, d)
