# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.  Same API as ``minmod._kernels_py``."""

from libc.stdlib cimport malloc, calloc, free
ctypedef unsigned long long uint64_t


def first_violated(const int[:] head_ptr, const int[:] head_idx,
                   const int[:] body_ptr, const int[:] body_idx,
                   const unsigned char[:] member):
    cdef Py_ssize_t n_clauses = head_ptr.shape[0] - 1
    cdef Py_ssize_t c, k
    cdef bint sat
    for c in range(n_clauses):
        sat = False
        for k in range(head_ptr[c], head_ptr[c + 1]):
            if member[head_idx[k]]:
                sat = True
                break
        if sat:
            continue
        for k in range(body_ptr[c], body_ptr[c + 1]):
            if not member[body_idx[k]]:
                sat = True
                break
        if not sat:
            return c
    return -1


def horn_closure(int n_atoms, const int[:] head_ptr, const int[:] head_idx,
                 const int[:] body_ptr, const int[:] body_idx,
                 const int[:] occ_ptr, const int[:] occ_idx,
                 const unsigned char[:] allowed):
    cdef Py_ssize_t n_clauses = head_ptr.shape[0] - 1
    cdef int *target = <int *> malloc((n_clauses + 1) * sizeof(int))
    cdef int *remaining = <int *> malloc((n_clauses + 1) * sizeof(int))
    cdef int *queue = <int *> malloc((n_clauses + 1) * sizeof(int))
    cdef unsigned char *derived = <unsigned char *> calloc(n_atoms + 1, 1)
    cdef Py_ssize_t c, k, d, qlen = 0, pos = 0
    cdef int h, a, cnt
    out_atoms = []
    out_clauses = []
    if not target or not remaining or not queue or not derived:
        free(target); free(remaining); free(queue); free(derived)
        raise MemoryError()
    try:
        for c in range(n_clauses):
            target[c] = -1
            h = -1
            cnt = 0
            for k in range(head_ptr[c], head_ptr[c + 1]):
                a = head_idx[k]
                if allowed[a]:
                    cnt += 1
                    h = a
            if cnt != 1:
                continue
            target[c] = h
            remaining[c] = body_ptr[c + 1] - body_ptr[c]
            if remaining[c] == 0:
                queue[qlen] = c
                qlen += 1
        while pos < qlen:
            c = queue[pos]
            pos += 1
            h = target[c]
            if derived[h]:
                continue
            derived[h] = 1
            out_atoms.append(h)
            out_clauses.append(c)
            for k in range(occ_ptr[h], occ_ptr[h + 1]):
                d = occ_idx[k]
                if target[d] < 0:
                    continue
                remaining[d] -= 1
                if remaining[d] == 0:
                    queue[qlen] = d
                    qlen += 1
    finally:
        free(target); free(remaining); free(queue); free(derived)
    return out_atoms, out_clauses


def model_table(int n_bits, const uint64_t[:] heads, const uint64_t[:] bodies):
    cdef uint64_t size = (<uint64_t> 1) << n_bits
    cdef Py_ssize_t n_clauses = heads.shape[0]
    out = bytearray(size)
    cdef unsigned char[:] view = out
    cdef uint64_t m, h, b
    cdef Py_ssize_t c
    cdef unsigned char ok
    for m in range(size):
        ok = 1
        for c in range(n_clauses):
            h = heads[c]
            b = bodies[c]
            if (h & m) == 0 and (b & m) == b:
                ok = 0
                break
        view[m] = ok
    return out


def minimal_table(int n_bits, const unsigned char[:] table):
    cdef uint64_t size = (<uint64_t> 1) << n_bits
    cdef unsigned char *below = <unsigned char *> calloc(size, 1)
    if not below:
        raise MemoryError()
    out = bytearray(size)
    cdef unsigned char[:] view = out
    cdef uint64_t m, x, low, s
    cdef unsigned char hit
    try:
        for m in range(size):
            hit = 0
            x = m
            while x:
                low = x & (~x + 1)
                x ^= low
                s = m ^ low
                if table[s] or below[s]:
                    hit = 1
                    break
            below[m] = hit
            if table[m] and not hit:
                view[m] = 1
    finally:
        free(below)
    return out


cdef inline bint _outbound(uint64_t z, uint64_t rest, const uint64_t[:] heads,
                           const uint64_t[:] bodies) nogil:
    cdef Py_ssize_t c
    cdef uint64_t h, b
    for c in range(heads.shape[0]):
        h = heads[c]
        b = bodies[c]
        if (h & z) and (b & rest) and not (b & z) and not (h & rest):
            return True
    return False


def is_outbound_mask(uint64_t z, uint64_t y, const uint64_t[:] heads,
                     const uint64_t[:] bodies):
    return _outbound(z, y & ~z, heads, bodies)


cdef bint _elementary(uint64_t y, const uint64_t[:] heads,
                      const uint64_t[:] bodies) nogil:
    cdef uint64_t z = (y - 1) & y
    while z:
        if not _outbound(z, y & ~z, heads, bodies):
            return False
        z = (z - 1) & y
    return True


def is_elementary_mask(uint64_t y, const uint64_t[:] heads,
                       const uint64_t[:] bodies):
    return _elementary(y, heads, bodies)


def hef_witness(int n_bits, const uint64_t[:] heads, const uint64_t[:] bodies):
    cdef uint64_t size = (<uint64_t> 1) << n_bits
    cdef uint64_t y, hy
    cdef Py_ssize_t c
    cdef bint disjunctive
    for y in range(3, size):
        if (y & (y - 1)) == 0:
            continue
        disjunctive = False
        for c in range(heads.shape[0]):
            hy = heads[c] & y
            if hy & (hy - 1):
                disjunctive = True
                break
        if disjunctive and _elementary(y, heads, bodies):
            return y
    return 0
