import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from triplesys.algebra import check_automorphism, make_abelian_group, make_field
from triplesys.constructions import (affine_mendelsohn, affine_plane_sts, affine_table,
                                     anti_double, char2_mendelsohn, char2_parameters,
                                     field_mendelsohn, field_parameters, netto_sts,
                                     projective_sts, spectrum_construct, spectrum_member,
                                     spectrum_offenders, spectrum_plan, steiner_affine)
from triplesys.designs import find_mitre, is_proper, mts_to_quasigroup, quasigroup_to_mts
from triplesys.errors import (BoundExceeded, ConditionMViolated, InvalidSTS, NotAutomorphism,
                              NotInSpectrum, OrderNotOneModSix, OrderNotSevenModTwelve)
from triplesys.quasigroup import is_antidistributive, predicate_suite


def loeschian(v: int) -> bool:
    return any(x * x + x * y + y * y == v
               for x in range(int(math.isqrt(v)) + 1) for y in range(int(math.isqrt(v)) + 1)
               if (x, y) != (0, 0))


def test_affine_table_formula():
    G = make_abelian_group([5])
    Q = affine_table(G, 2)
    assert all(Q(x, y) == (-x + 2 * y) % 5 for x in range(5) for y in range(5))
    with pytest.raises(NotAutomorphism):
        affine_table(G, 1)  # I - k = 0
    with pytest.raises(ConditionMViolated):
        affine_mendelsohn(G, 2)


def test_field_parameters_give_sixth_root():
    for p, d in [(7, 1), (13, 1), (5, 2), (7, 2)]:
        G, k = field_parameters(p, d)
        F = make_field(p, d)
        c = int(k.perm[1])
        assert F.power(c, 6) == 1 and all(F.power(c, e) != 1 for e in (1, 2, 3))
    with pytest.raises(OrderNotOneModSix):
        field_parameters(5, 1)


def test_char2_quasigroup():
    assert char2_mendelsohn(1).table.tolist() == [[0, 2, 3, 1], [3, 1, 0, 2], [1, 3, 2, 0], [2, 0, 1, 3]]
    G, k = char2_parameters(2)
    assert G.order == 16
    kk = k.perm[k.perm[k.perm]]
    assert np.array_equal(kk, np.arange(16))


def test_steiner_affine_formula():
    Q = steiner_affine(2)
    G = make_abelian_group([3, 3])
    for x in range(9):
        for y in range(9):
            assert Q(x, y) == G.index(G.neg(G.add(G.vector(x), G.vector(y))))


@pytest.mark.parametrize("v", [1, 3, 4, 7, 9, 12, 13, 16, 19, 21, 25, 27, 28, 36, 37, 39, 48, 49])
def test_spectrum_construct_valid(v):
    Q = spectrum_construct(v)
    r = predicate_suite(Q)
    assert Q.n == v and r.mendelsohn and r.medial and r.distributive
    quasigroup_to_mts(Q)


def test_spectrum_plan_and_errors():
    assert spectrum_plan(84) == [("steiner", 3, 1), ("char2", 2, 1), ("field", 7, 1)]
    with pytest.raises(NotInSpectrum):
        spectrum_construct(10)
    assert spectrum_offenders(15) == [(5, 1)]
    assert spectrum_offenders(1) == []
    with pytest.raises(BoundExceeded):
        spectrum_member(2**17)


@given(st.integers(1, 5000))
@settings(max_examples=200, deadline=None)
def test_spectrum_is_loeschian(v):
    assert spectrum_member(v) == loeschian(v)


def test_projective_and_netto():
    assert len(projective_sts(3)) == 7
    assert len(projective_sts(4)) == 35
    N = netto_sts(19)
    assert len(N) == 57
    assert find_mitre(N) is None
    assert len(netto_sts(7)) == 7
    with pytest.raises(OrderNotSevenModTwelve):
        netto_sts(13)


def test_netto_blocks_follow_rule():
    F = make_field(19, 1)
    s = (19 - 7) // 12
    e1, e2 = F.power(F.omega, 2 * s + 1), F.power(F.omega, 10 * s + 5)
    assert int(F.add(e1, e2)) == 1 and int(F.mul(e1, e2)) == 1
    N = netto_sts(19)
    for a in range(19):
        for b in range(19):
            if a != b and F.log[int(F.sub(b, a))] % 2 == 0:
                c = int(F.add(F.mul(a, e1), F.mul(b, e2)))
                assert tuple(sorted((a, b, c))) in N.blocks


def test_anti_double_shape():
    S = anti_double(projective_sts(3))
    assert S.v == 15 and len(S) == 70 and is_proper(S)
    assert (0, 2, 4) in S.blocks
    assert is_antidistributive(mts_to_quasigroup(S), strict=True)


def test_anti_double_needs_anti_mitre():
    S = anti_double(affine_plane_sts())
    assert S.v == 19 and is_proper(S)
    assert not is_antidistributive(mts_to_quasigroup(S))


def test_anti_double_orientation():
    C = projective_sts(3)
    blk = sorted(C.blocks)[0]
    flipped = (blk[0], blk[2], blk[1])
    S = anti_double(C, [flipped])
    assert S != anti_double(C)
    assert is_antidistributive(mts_to_quasigroup(S))
    with pytest.raises(InvalidSTS):
        anti_double(C, [(0, 1, 5)])
