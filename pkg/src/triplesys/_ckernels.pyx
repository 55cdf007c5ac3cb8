# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled identity scans over Cayley tables.

Every scan covers the outermost index range [lo, hi) and returns the
lexicographically least failing (or, for the anti-distributivity scan,
satisfying) tuple in that range, or None.
"""


def medial_witness(const int[:, ::1] T, Py_ssize_t lo, Py_ssize_t hi):
    cdef Py_ssize_t n = T.shape[0]
    cdef Py_ssize_t x, y, u, v
    cdef int xy, xu
    with nogil:
        for x in range(lo, hi):
            for y in range(n):
                xy = T[x, y]
                for u in range(n):
                    xu = T[x, u]
                    for v in range(n):
                        if T[xy, T[u, v]] != T[xu, T[y, v]]:
                            with gil:
                                return (x, y, u, v)
    return None


def left_distributive_witness(const int[:, ::1] T, Py_ssize_t lo, Py_ssize_t hi):
    cdef Py_ssize_t n = T.shape[0]
    cdef Py_ssize_t x, y, z
    with nogil:
        for x in range(lo, hi):
            for y in range(n):
                for z in range(n):
                    if T[x, T[y, z]] != T[T[x, y], T[x, z]]:
                        with gil:
                            return (x, y, z)
    return None


def right_distributive_witness(const int[:, ::1] T, Py_ssize_t lo, Py_ssize_t hi):
    cdef Py_ssize_t n = T.shape[0]
    cdef Py_ssize_t x, y, z
    with nogil:
        for x in range(lo, hi):
            for y in range(n):
                for z in range(n):
                    if T[T[x, y], z] != T[T[x, z], T[y, z]]:
                        with gil:
                            return (x, y, z)
    return None


def antidistributive_witness(const int[:, ::1] T, Py_ssize_t lo, Py_ssize_t hi, bint strict):
    """Least distinct non-block (x, y, z) satisfying a distributive law.

    Returns (x, y, z, law) with law 0 = right, 1 = left.  Without ``strict``
    only the right law is examined.
    """
    cdef Py_ssize_t n = T.shape[0]
    cdef Py_ssize_t x, y, z
    cdef int xy
    with nogil:
        for x in range(lo, hi):
            for y in range(n):
                if y == x:
                    continue
                xy = T[x, y]
                for z in range(n):
                    if z == x or z == y or z == xy:
                        continue
                    if T[xy, z] == T[T[x, z], T[y, z]]:
                        with gil:
                            return (x, y, z, 0)
                    if strict and T[x, T[y, z]] == T[xy, T[x, z]]:
                        with gil:
                            return (x, y, z, 1)
    return None


def cml_witness(const int[:, ::1] T, Py_ssize_t lo, Py_ssize_t hi):
    """Least (x, y, z) with (x+x)+(y+z) != (x+y)+(x+z)."""
    cdef Py_ssize_t n = T.shape[0]
    cdef Py_ssize_t x, y, z
    cdef int xx
    with nogil:
        for x in range(lo, hi):
            xx = T[x, x]
            for y in range(n):
                for z in range(n):
                    if T[xx, T[y, z]] != T[T[x, y], T[x, z]]:
                        with gil:
                            return (x, y, z)
    return None
