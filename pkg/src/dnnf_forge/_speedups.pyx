# distutils: language = c++
"""Compiled kernels. Mirrors :mod:`dnnf_forge._fallback` exactly."""

import numpy as np

from libcpp.vector cimport vector


cdef inline Py_ssize_t _code(int lit) nogil:
    return 2 * lit if lit > 0 else 1 - 2 * lit


def grid_matches(const int[::1] lits, const long long[::1] offsets,
                 const long long[::1] occ_ptr, const int[::1] occ_idx,
                 const int[::1] units, const int[::1] m_cls, int seed):
    cdef Py_ssize_t ncodes = occ_ptr.shape[0] - 1
    cdef unsigned char[::1] mark = np.zeros(ncodes, dtype=np.uint8)
    cdef vector[int] out_p, out_k, out_d
    cdef Py_ssize_t p, j, t, lo, hi, best_lo, best_hi, size, dsize
    cdef int c, d, lit, k, nmarked, nfree
    cdef Py_ssize_t code, best

    with nogil:
        for p in range(m_cls.shape[0]):
            c = m_cls[p]
            size = offsets[c + 1] - offsets[c]
            best = -1
            for j in range(offsets[c], offsets[c + 1]):
                lit = lits[j]
                if lit == seed:
                    continue
                code = _code(lit)
                mark[code] = 1
                if best < 0 or occ_ptr[code + 1] - occ_ptr[code] < occ_ptr[best + 1] - occ_ptr[best]:
                    best = code
            if best >= 0:
                for t in range(occ_ptr[best], occ_ptr[best + 1]):
                    d = occ_idx[t]
                    if d == c:
                        continue
                    dsize = offsets[d + 1] - offsets[d]
                    if dsize != size:
                        continue
                    nmarked = 0
                    nfree = 0
                    k = 0
                    for j in range(offsets[d], offsets[d + 1]):
                        if mark[_code(lits[j])]:
                            nmarked += 1
                        else:
                            nfree += 1
                            k = lits[j]
                    if nfree == 1 and nmarked == size - 1:
                        out_p.push_back(<int>p)
                        out_k.push_back(k)
                        out_d.push_back(d)
            else:
                for t in range(units.shape[0]):
                    d = units[t]
                    if d != c:
                        out_p.push_back(<int>p)
                        out_k.push_back(lits[offsets[d]])
                        out_d.push_back(d)
            for j in range(offsets[c], offsets[c + 1]):
                if lits[j] != seed:
                    mark[_code(lits[j])] = 0

    n = out_p.size()
    rp = np.empty(n, dtype=np.int32)
    rk = np.empty(n, dtype=np.int32)
    rd = np.empty(n, dtype=np.int32)
    cdef int[::1] vp = rp, vk = rk, vd = rd
    cdef Py_ssize_t i
    for i in range(<Py_ssize_t>n):
        vp[i] = out_p[i]
        vk[i] = out_k[i]
        vd[i] = out_d[i]
    return rp, rk, rd
