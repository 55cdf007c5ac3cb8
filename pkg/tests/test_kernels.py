"""Compiled and numpy scans must agree with each other and with a naive oracle."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from triplesys import kernels
from triplesys.constructions import anti_double, field_mendelsohn, projective_sts, steiner_affine
from triplesys.designs import mts_to_quasigroup

BACKENDS = ["python"] + (["compiled"] if kernels.BACKEND == "compiled" else [])


def naive(name, T, strict=False):
    n = len(T)
    r = range(n)
    if name == "medial_witness":
        for x, y, u, v in itertools.product(r, r, r, r):
            if T[T[x][y]][T[u][v]] != T[T[x][u]][T[y][v]]:
                return (x, y, u, v)
    if name == "left_distributive_witness":
        for x, y, z in itertools.product(r, r, r):
            if T[x][T[y][z]] != T[T[x][y]][T[x][z]]:
                return (x, y, z)
    if name == "right_distributive_witness":
        for x, y, z in itertools.product(r, r, r):
            if T[T[x][y]][z] != T[T[x][z]][T[y][z]]:
                return (x, y, z)
    if name == "cml_witness":
        for x, y, z in itertools.product(r, r, r):
            if T[T[x][x]][T[y][z]] != T[T[x][y]][T[x][z]]:
                return (x, y, z)
    if name == "antidistributive_witness":
        for x, y, z in itertools.product(r, r, r):
            if len({x, y, z}) < 3 or z == T[x][y]:
                continue
            if T[T[x][y]][z] == T[T[x][z]][T[y][z]]:
                return (x, y, z, 0)
            if strict and T[x][T[y][z]] == T[T[x][y]][T[x][z]]:
                return (x, y, z, 1)
    return None


@st.composite
def latin_squares(draw):
    """Isotopes of cyclic groups: x o y = gamma(alpha(x) + beta(y))."""
    n = draw(st.integers(1, 6))
    perms = [draw(st.permutations(range(n))) for _ in range(3)]
    a, b, c = (np.array(p) for p in perms)
    return c[(a[:, None] + b[None, :]) % n]


@given(latin_squares())
@settings(max_examples=60, deadline=None)
def test_scans_match_naive(T):
    L = T.tolist()
    for name in ("medial_witness", "left_distributive_witness", "right_distributive_witness",
                 "cml_witness"):
        want = naive(name, L)
        for b in BACKENDS:
            got = kernels.scan(name, T, backend=b)
            assert (None if got is None else tuple(got)) == want, (name, b)


def _mendelsohn_tables():
    yield field_mendelsohn(7, 1).table
    yield steiner_affine(1).table
    yield mts_to_quasigroup(anti_double(projective_sts(3))).table


@pytest.mark.parametrize("strict", [False, True])
def test_antidistributive_scan_matches_naive(strict):
    for T in _mendelsohn_tables():
        want = naive("antidistributive_witness", T.tolist(), strict)
        for b in BACKENDS:
            got = kernels.scan("antidistributive_witness", T, strict, backend=b)
            assert (None if got is None else tuple(got)) == want


@pytest.mark.parametrize("threads", [1, 2, 3, 7])
def test_thread_count_does_not_change_witness(threads):
    T = mts_to_quasigroup(anti_double(steiner_affine_sts())).table
    base = kernels.scan("right_distributive_witness", T, threads=1)
    assert kernels.scan("right_distributive_witness", T, threads=threads) == base
    assert kernels.scan("medial_witness", T, threads=threads) == kernels.scan("medial_witness", T)


def steiner_affine_sts():
    from triplesys.constructions import affine_plane_sts
    return affine_plane_sts()


def test_backend_names():
    assert kernels.BACKEND in ("python", "compiled")
    with pytest.raises(ValueError):
        kernels.backend_module("fortran")
