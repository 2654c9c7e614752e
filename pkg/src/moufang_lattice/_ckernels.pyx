# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contracts as ``_pykernels``."""

import numpy as np
cimport numpy as cnp

NAME = "cython"

ctypedef cnp.int32_t i32


cdef inline _as_table(table):
    return np.ascontiguousarray(table, dtype=np.int32)


cdef bytes _mask_bytes(object mask, Py_ssize_t n):
    return int(mask).to_bytes((n + 7) // 8 + 1, "little")


cdef object _bytes_mask(unsigned char[::1] flags, Py_ssize_t n):
    cdef Py_ssize_t i
    buf = bytearray((n + 7) // 8)
    cdef unsigned char[::1] b = buf
    for i in range(n):
        if flags[i]:
            b[i >> 3] |= <unsigned char>(1 << (i & 7))
    return int.from_bytes(buf, "little")


cdef Py_ssize_t _close(const i32[:, ::1] t, unsigned char[::1] flags,
                       i32[::1] members, Py_ssize_t count, Py_ssize_t start) noexcept nogil:
    cdef Py_ssize_t i = start, j
    cdef i32 x, y, p
    while i < count:
        x = members[i]
        for j in range(i + 1):
            y = members[j]
            p = t[x, y]
            if not flags[p]:
                flags[p] = 1
                members[count] = p
                count += 1
            p = t[y, x]
            if not flags[p]:
                flags[p] = 1
                members[count] = p
                count += 1
        i += 1
    return count


def closure(table, seeds, base=0):
    cdef const i32[:, ::1] t = _as_table(table)
    cdef Py_ssize_t n = t.shape[0], i, count = 0, start
    flags_arr = np.zeros(n, dtype=np.uint8)
    members_arr = np.empty(n, dtype=np.int32)
    cdef unsigned char[::1] flags = flags_arr
    cdef i32[::1] members = members_arr
    cdef bytes raw = _mask_bytes(base, n)
    cdef const unsigned char* rb = raw
    for i in range(n):
        if (rb[i >> 3] >> (i & 7)) & 1:
            flags[i] = 1
            members[count] = <i32>i
            count += 1
    start = count
    for s in seeds:
        i = s
        if not flags[i]:
            flags[i] = 1
            members[count] = <i32>i
            count += 1
    with nogil:
        _close(t, flags, members, count, start)
    return _bytes_mask(flags, n)


def extensions(table, mask):
    cdef const i32[:, ::1] t = _as_table(table)
    cdef Py_ssize_t n = t.shape[0], i, g, base_count = 0, count
    base_arr = np.zeros(n, dtype=np.uint8)
    flags_arr = np.zeros(n, dtype=np.uint8)
    members_arr = np.empty(n, dtype=np.int32)
    cdef unsigned char[::1] base_flags = base_arr
    cdef unsigned char[::1] flags = flags_arr
    cdef i32[::1] members = members_arr
    cdef bytes raw = _mask_bytes(mask, n)
    cdef const unsigned char* rb = raw
    for i in range(n):
        if (rb[i >> 3] >> (i & 7)) & 1:
            base_flags[i] = 1
    found = []
    seen = set()
    for g in range(n):
        if base_flags[g]:
            continue
        with nogil:
            count = 0
            for i in range(n):
                flags[i] = base_flags[i]
                if flags[i]:
                    members[count] = <i32>i
                    count += 1
            base_count = count
            flags[g] = 1
            members[count] = <i32>g
            count += 1
            _close(t, flags, members, count, base_count)
        ext = _bytes_mask(flags, n)
        if ext not in seen:
            seen.add(ext)
            found.append(ext)
    return found


def moufang_violation(table):
    cdef const i32[:, ::1] t = _as_table(table)
    cdef Py_ssize_t n = t.shape[0], x, y, z
    cdef i32 xyx
    for x in range(n):
        for y in range(n):
            xyx = t[t[x, y], x]
            for z in range(n):
                if t[xyx, z] != t[x, t[y, t[x, z]]]:
                    return (x, y, z)
    return None


def associative_violation(table):
    cdef const i32[:, ::1] t = _as_table(table)
    cdef Py_ssize_t n = t.shape[0], x, y, z
    cdef i32 xy
    for x in range(n):
        for y in range(n):
            xy = t[x, y]
            for z in range(n):
                if t[xy, z] != t[x, t[y, z]]:
                    return (x, y, z)
    return None


def extend_hom(src, dst, steps, domain, image):
    """``image`` must be a writable int32 array; it is updated in place."""
    cdef const i32[:, ::1] s = _as_table(src)
    cdef const i32[:, ::1] t = _as_table(dst)
    cdef const i32[:, ::1] st = np.ascontiguousarray(steps, dtype=np.int32).reshape(-1, 3)
    cdef const i32[::1] dom = np.ascontiguousarray(domain, dtype=np.int32)
    cdef i32[::1] img = image
    cdef Py_ssize_t n = t.shape[0], m = st.shape[0], d = dom.shape[0], i, j
    cdef i32 x, y, fx
    seen_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] seen = seen_arr
    cdef bint ok = True
    with nogil:
        for i in range(m):
            if img[st[i, 1]] < 0 or img[st[i, 2]] < 0:
                ok = False
                break
            img[st[i, 0]] = t[img[st[i, 1]], img[st[i, 2]]]
        for i in range(d):
            if not ok:
                break
            fx = img[dom[i]]
            if fx < 0 or seen[fx]:
                ok = False
                break
            seen[fx] = 1
        if ok:
            for i in range(d):
                x = dom[i]
                fx = img[x]
                for j in range(d):
                    y = dom[j]
                    if img[s[x, y]] != t[fx, img[y]]:
                        ok = False
                        break
                if not ok:
                    break
    return ok


def image_mask(perm, mask):
    cdef const i32[::1] p = np.ascontiguousarray(perm, dtype=np.int32)
    cdef Py_ssize_t n = p.shape[0], i
    cdef bytes raw = _mask_bytes(mask, n)
    cdef const unsigned char* rb = raw
    flags_arr = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] flags = flags_arr
    for i in range(n):
        if (rb[i >> 3] >> (i & 7)) & 1:
            flags[p[i]] = 1
    return _bytes_mask(flags, n)
