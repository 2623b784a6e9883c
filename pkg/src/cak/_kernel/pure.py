"""Pure-Python term-arithmetic kernel.

Operates on term dicts (int key -> coefficient).  Keys follow the additive
encoding from :mod:`cak.polyring`: multiplying by a monomial is adding a key
delta, and a guard-bit pattern validates every produced key.  The compiled
twin in ``_speedups.pyx`` implements the same contracts bit for bit.

Coefficients are ints mod p when ``p`` is given, otherwise exact numbers
(Fractions) with ordinary arithmetic.
"""

from ..errors import DegreeOverflowError


def add_scaled(dst, src, c, p):
    """dst += c*src, in place, dropping zero entries."""
    if p is not None:
        c %= p
        if not c:
            return
        for k, v in src.items():
            nv = (dst.get(k, 0) + c * v) % p
            if nv:
                dst[k] = nv
            else:
                dst.pop(k, None)
    else:
        if not c:
            return
        for k, v in src.items():
            nv = dst.get(k, 0) + c * v
            if nv:
                dst[k] = nv
            else:
                dst.pop(k, None)


def axpy_terms(dst, src, c, delta, p, guard):
    """dst += c * x^delta * src, in place; guard-checks every new key."""
    if p is not None:
        c %= p
        if not c:
            return
        for k, v in src.items():
            nk = k + delta
            if nk & guard != guard:
                raise DegreeOverflowError("exponent overflow in term product")
            nv = (dst.get(nk, 0) + c * v) % p
            if nv:
                dst[nk] = nv
            else:
                dst.pop(nk, None)
    else:
        if not c:
            return
        for k, v in src.items():
            nk = k + delta
            if nk & guard != guard:
                raise DegreeOverflowError("exponent overflow in term product")
            nv = dst.get(nk, 0) + c * v
            if nv:
                dst[nk] = nv
            else:
                dst.pop(nk, None)


def mul_terms(a, b, p, one_key, guard):
    """Product of two polynomial term dicts."""
    out = {}
    if len(a) > len(b):
        a, b = b, a
    if p is not None:
        for ka, va in a.items():
            base = ka - one_key
            for kb, vb in b.items():
                nk = base + kb
                if nk & guard != guard:
                    raise DegreeOverflowError("exponent overflow in term product")
                nv = (out.get(nk, 0) + va * vb) % p
                if nv:
                    out[nk] = nv
                else:
                    out.pop(nk, None)
    else:
        for ka, va in a.items():
            base = ka - one_key
            for kb, vb in b.items():
                nk = base + kb
                if nk & guard != guard:
                    raise DegreeOverflowError("exponent overflow in term product")
                nv = out.get(nk, 0) + va * vb
                if nv:
                    out[nk] = nv
                else:
                    out.pop(nk, None)
    return out


def divides_key(ka, kb, compmask, segs):
    """True iff term position ka divides kb (same component, exponentwise <=)."""
    if (ka ^ kb) & compmask:
        return False
    for cmask, gmask in segs:
        if ((ka & cmask) - (kb & cmask)) & gmask:
            return False
    return True


def normal_form_terms(f, leads, invlcs, gterms, p, compmask, segs, guard):
    """Full normal form of term dict ``f`` against the reducer list.

    Reducers are given by parallel lists: lead keys, inverse lead
    coefficients, and complete term dicts (lead included).  The divisor with
    the smallest list index is always chosen, so the procedure is
    deterministic for a fixed reducer list even when it is not yet a
    Groebner basis.
    """
    work = dict(f)
    out = {}
    nred = len(leads)
    while work:
        m = max(work)
        c = work[m]
        hit = -1
        for i in range(nred):
            lk = leads[i]
            # order-compatibility: a divisor's key never exceeds the term's
            if lk > m or (lk ^ m) & compmask:
                continue
            ok = True
            for cmask, gmask in segs:
                if ((lk & cmask) - (m & cmask)) & gmask:
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
                factor %= p
            axpy_terms(work, gterms[hit], factor, m - leads[hit], p, guard)
    return out
