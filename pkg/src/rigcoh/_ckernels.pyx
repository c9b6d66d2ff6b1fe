# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=False
"""Compiled monomial-map kernels; mirrors ``_pykernels`` exactly."""


cdef inline long _mod(long a, long n):
    cdef long r = a % n
    return r + n if r < 0 else r


def compose(g_rows, g_ph, f_rows, f_ph, long n):
    cdef Py_ssize_t k = len(f_rows), c
    cdef long[:] gr = _as_long(g_rows), gp = _as_long(g_ph)
    cdef long[:] fr = _as_long(f_rows), fp = _as_long(f_ph)
    cdef list rows = [0] * k, ph = [0] * k
    cdef long mid
    for c in range(k):
        mid = fr[c]
        if mid < 0 or gr[mid] < 0:
            rows[c] = -1
        else:
            rows[c] = gr[mid]
            ph[c] = _mod(fp[c] + gp[mid], n)
    return rows, ph


def direct_sum(f_rows, f_ph, long f_tdim, g_rows, g_ph):
    cdef Py_ssize_t i, kf = len(f_rows), kg = len(g_rows)
    cdef long[:] gr = _as_long(g_rows)
    cdef list rows = list(f_rows)
    cdef long r
    rows.extend([0] * kg)
    for i in range(kg):
        r = gr[i]
        rows[kf + i] = r + f_tdim if r >= 0 else -1
    return rows, list(f_ph) + list(g_ph)


def tensor(f_rows, f_ph, g_rows, g_ph, long g_tdim, long n):
    cdef Py_ssize_t i, j, kf = len(f_rows), kg = len(g_rows), at = 0
    cdef long[:] fr = _as_long(f_rows), fp = _as_long(f_ph)
    cdef long[:] gr = _as_long(g_rows), gp = _as_long(g_ph)
    cdef list rows = [0] * (kf * kg), ph = [0] * (kf * kg)
    for i in range(kf):
        for j in range(kg):
            if fr[i] < 0 or gr[j] < 0:
                rows[at] = -1
            else:
                rows[at] = fr[i] * g_tdim + gr[j]
                ph[at] = _mod(fp[i] + gp[j], n)
            at += 1
    return rows, ph


def inverse(rows, ph, long n):
    cdef Py_ssize_t k = len(rows), c
    cdef long[:] rr = _as_long(rows), pp = _as_long(ph)
    cdef list out_rows = [-1] * k, out_ph = [0] * k
    cdef long r
    for c in range(k):
        r = rr[c]
        if r < 0 or r >= k or out_rows[r] >= 0:
            raise ValueError("monomial map is not a bijection")
        out_rows[r] = c
        out_ph[r] = _mod(-pp[c], n)
    return out_rows, out_ph


def braid(deg_a, deg_b, long sign, long n):
    cdef Py_ssize_t i, j, na = len(deg_a), nb = len(deg_b), at = 0
    cdef long[:] da = _as_long(deg_a), db = _as_long(deg_b)
    cdef list rows = [0] * (na * nb), ph = [0] * (na * nb)
    for i in range(na):
        for j in range(nb):
            rows[at] = j * na + i
            ph[at] = _mod(sign * da[i] * db[j], n)
            at += 1
    return rows, ph


cdef long[:] _as_long(seq):
    from array import array
    if len(seq) == 0:
        return array("l", [0])[:0]
    return array("l", seq)
