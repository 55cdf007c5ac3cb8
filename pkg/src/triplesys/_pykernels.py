"""Numpy fallback for the compiled scans in ``_ckernels``.

Signatures and results are identical; only speed differs.
"""

import numpy as np


def _first(mask: np.ndarray):
    hits = np.argwhere(mask)
    if len(hits) == 0:
        return None
    return tuple(int(i) for i in hits[0])


def medial_witness(T, lo, hi):
    T = np.asarray(T)
    n = T.shape[0]
    for x in range(lo, hi):
        for y in range(n):
            lhs = T[T[x, y], T]                      # (xy)(uv) over (u, v)
            rhs = T[T[x, :][:, None], T[y, :][None, :]]  # (xu)(yv) over (u, v)
            hit = _first(lhs != rhs)
            if hit is not None:
                return (x, y) + hit
    return None


def left_distributive_witness(T, lo, hi):
    T = np.asarray(T)
    for x in range(lo, hi):
        lhs = T[x, T]                                # x(yz)
        rhs = T[T[x, :][:, None], T[x, :][None, :]]  # (xy)(xz)
        hit = _first(lhs != rhs)
        if hit is not None:
            return (x,) + hit
    return None


def right_distributive_witness(T, lo, hi):
    T = np.asarray(T)
    n = T.shape[0]
    z = np.arange(n)
    for x in range(lo, hi):
        lhs = T[T[x, :][:, None], z[None, :]]   # (xy)z
        rhs = T[T[x, :][None, :], T]            # (xz)(yz)
        hit = _first(lhs != rhs)
        if hit is not None:
            return (x,) + hit
    return None


def antidistributive_witness(T, lo, hi, strict):
    T = np.asarray(T)
    n = T.shape[0]
    ys = np.arange(n)[:, None]
    zs = np.arange(n)[None, :]
    for x in range(lo, hi):
        xy = T[x, :][:, None]
        eligible = (ys != x) & (zs != x) & (zs != ys) & (zs != xy)
        right = T[xy, zs] == T[T[x, :][None, :], T]
        if strict:
            left = T[x, T] == T[xy, T[x, :][None, :]]
        else:
            left = np.zeros_like(right)
        hits = np.argwhere(eligible & (right | left))
        if len(hits):
            y, z = (int(i) for i in hits[0])
            return (x, y, z, 0 if right[y, z] else 1)
    return None


def cml_witness(T, lo, hi):
    T = np.asarray(T)
    for x in range(lo, hi):
        lhs = T[T[x, x], T]
        rhs = T[T[x, :][:, None], T[x, :][None, :]]
        hit = _first(lhs != rhs)
        if hit is not None:
            return (x,) + hit
    return None
