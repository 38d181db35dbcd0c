# cython: language_level=3
# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled kernels; twin of starkit._kernels.pure.

Same calling convention as the pure module: packed arrays of signed
64-bit ints (array.array("q") or any q-format buffer).
"""

from cpython cimport array as carray

import array as pyarray

TAG_NONE = 0
TAG_REGISTER = 1
TAG_FIFO = 2
TAG_LIFO = 3

cdef carray.array _LL_TEMPLATE = pyarray.array("q", [])


def pair_tags(object tmin, object tmax, object tfirst, object roff, object rdates):
    """Classify every chronologically ordered vertex pair.

    See starkit._kernels.pure.pair_tags for the contract.
    """
    cdef long long[::1] ami_v = tmin
    cdef long long[::1] ama_v = tmax
    cdef long long[::1] afi_v = tfirst
    cdef long long[::1] ro_v = roff
    cdef long long[::1] rd_v = rdates
    cdef Py_ssize_t n = ami_v.shape[0]
    cdef Py_ssize_t cap = n * (n - 1) // 2
    cdef carray.array oi = carray.clone(_LL_TEMPLATE, cap, False)
    cdef carray.array oj = carray.clone(_LL_TEMPLATE, cap, False)
    cdef carray.array ot = carray.clone(_LL_TEMPLATE, cap, False)
    cdef long long[::1] vi = oi
    cdef long long[::1] vj = oj
    cdef long long[::1] vt = ot
    cdef Py_ssize_t i, j, k, r0, r1, m = 0
    cdef long long ami, ama, afi, bmi, bma
    cdef long long tag
    for i in range(n):
        ami = ami_v[i]
        ama = ama_v[i]
        afi = afi_v[i]
        r0 = <Py_ssize_t> ro_v[i]
        r1 = <Py_ssize_t> ro_v[i + 1]
        for j in range(i + 1, n):
            bmi = ami_v[j]
            tag = TAG_NONE
            if bmi >= ama:
                tag = TAG_REGISTER
            elif bmi > ami:
                bma = ama_v[j]
                if afi_v[j] > ama:
                    tag = TAG_FIFO
                elif afi > bma:
                    tag = TAG_LIFO
                else:
                    for k in range(r0, r1 - 1):
                        if rd_v[k] < bmi and bma < rd_v[k + 1]:
                            tag = TAG_LIFO
                            break
            if tag != 0:
                vi[m] = i
                vj[m] = j
                vt[m] = tag
                m += 1
    if m == cap:
        return oi, oj, ot
    return oi[:m], oj[:m], ot[:m]


def peak_live(object tmin, object tmax):
    """Peak number of simultaneously resident data.

    See starkit._kernels.pure.peak_live for the contract. Uses a
    difference array over the cycle horizon rather than an event sort,
    which doubles as an independent cross-check of the pure twin.
    """
    cdef long long[::1] lo_v = tmin
    cdef long long[::1] hi_v = tmax
    cdef Py_ssize_t n = lo_v.shape[0]
    if n == 0:
        return 0
    cdef long long lo = lo_v[0], hi = hi_v[0]
    cdef Py_ssize_t i
    for i in range(n):
        if lo_v[i] < lo:
            lo = lo_v[i]
        if hi_v[i] > hi:
            hi = hi_v[i]
    cdef Py_ssize_t span = <Py_ssize_t> (hi - lo) + 2
    cdef carray.array diff_a = carray.clone(_LL_TEMPLATE, span, True)
    cdef long long[::1] diff = diff_a
    for i in range(n):
        diff[<Py_ssize_t> (lo_v[i] - lo)] += 1
        diff[<Py_ssize_t> (hi_v[i] - lo)] -= 1
    cdef long long cur = 0, peak = 0
    for i in range(span):
        cur += diff[i]
        if cur > peak:
            peak = cur
    return int(peak)
