# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled term-arithmetic kernel.

Bit-for-bit the same contracts as cak._kernel.pure: term dicts keyed by
additive monomial-encoding ints.  Keys and coefficients stay Python ints
(arbitrary precision); the speedup comes from compiled loop control, the
dict C-API (single-lookup updates), and avoided interpreter dispatch.
"""

from cpython.dict cimport PyDict_GetItem, PyDict_SetItem, PyDict_DelItem, PyDict_Next
from cpython.object cimport PyObject
from cpython.ref cimport Py_XDECREF

from cak.errors import DegreeOverflowError


cdef inline int _accumulate(dict dst, object key, object delta_val, object p) except -1:
    """dst[key] += delta_val (mod p when p is not None), dropping zeros."""
    cdef PyObject* cur = PyDict_GetItem(dst, key)
    cdef object nv
    if cur is NULL:
        nv = delta_val
    else:
        nv = <object>cur + delta_val
    if p is not None:
        nv = nv % p
    if nv:
        PyDict_SetItem(dst, key, nv)
    elif cur is not NULL:
        PyDict_DelItem(dst, key)
    return 0


def add_scaled(dict dst, dict src, c, p):
    """dst += c*src, in place, dropping zero entries."""
    cdef Py_ssize_t pos = 0
    cdef PyObject* k
    cdef PyObject* v
    if p is not None:
        c = c % p
    if not c:
        return
    while PyDict_Next(src, &pos, &k, &v):
        _accumulate(dst, <object>k, c * <object>v, p)


def axpy_terms(dict dst, dict src, c, delta, p, guard):
    """dst += c * x^delta * src, in place; guard-checks every new key."""
    cdef Py_ssize_t pos = 0
    cdef PyObject* k
    cdef PyObject* v
    cdef object nk
    if p is not None:
        c = c % p
    if not c:
        return
    while PyDict_Next(src, &pos, &k, &v):
        nk = <object>k + delta
        if nk & guard != guard:
            raise DegreeOverflowError("exponent overflow in term product")
        _accumulate(dst, nk, c * <object>v, p)


def mul_terms(dict a, dict b, p, one_key, guard):
    """Product of two polynomial term dicts."""
    cdef dict out = {}
    cdef dict x = a
    cdef dict y = b
    cdef Py_ssize_t pos_x, pos_y
    cdef PyObject* ka
    cdef PyObject* va
    cdef PyObject* kb
    cdef PyObject* vb
    cdef object base, nk, va_o
    if len(x) > len(y):
        x, y = y, x
    pos_x = 0
    while PyDict_Next(x, &pos_x, &ka, &va):
        base = <object>ka - one_key
        va_o = <object>va
        pos_y = 0
        while PyDict_Next(y, &pos_y, &kb, &vb):
            nk = base + <object>kb
            if nk & guard != guard:
                raise DegreeOverflowError("exponent overflow in term product")
            _accumulate(out, nk, va_o * <object>vb, p)
    return out


cdef object _max_key(dict d):
    cdef Py_ssize_t pos = 0
    cdef PyObject* k
    cdef PyObject* v
    cdef object best = None
    while PyDict_Next(d, &pos, &k, &v):
        if best is None or <object>k > best:
            best = <object>k
    return best


def divides_key(ka, kb, compmask, segs):
    """True iff term position ka divides kb."""
    if (ka ^ kb) & compmask:
        return False
    cdef tuple seg
    for seg in segs:
        if ((ka & <object>seg[0]) - (kb & <object>seg[0])) & <object>seg[1]:
            return False
    return True


def normal_form_terms(dict f, list leads, list invlcs, list gterms,
                      p, compmask, segs, guard):
    """Full normal form; first-divisor rule, identical to the pure twin."""
    cdef dict work = dict(f)
    cdef dict out = {}
    cdef Py_ssize_t nred = len(leads)
    cdef Py_ssize_t nsegs
    cdef Py_ssize_t i, s, hit
    cdef object m, c, lk, factor
    cdef list cmasks = []
    cdef list gmasks = []
    cdef tuple seg
    cdef bint ok
    for seg in segs:
        cmasks.append(seg[0])
        gmasks.append(seg[1])
    nsegs = len(cmasks)
    while work:
        m = _max_key(work)
        c = work[m]
        hit = -1
        for i in range(nred):
            lk = <object> leads[i]
            # order-compatibility: a divisor's key never exceeds the term's
            if lk > m or (lk ^ m) & compmask:
                continue
            ok = True
            for s in range(nsegs):
                if ((lk & <object>cmasks[s]) - (m & <object>cmasks[s])) & <object>gmasks[s]:
                    ok = False
                    break
            if ok:
                hit = i
                break
        if hit < 0:
            out[m] = c
            del work[m]
        else:
            factor = -c * invlcs[hit]
            if p is not None:
                factor = factor % p
            axpy_terms(work, <dict> gterms[hit], factor, m - leads[hit], p, guard)
    return out
