import itertools

import numpy as np
import pytest

from triplesys.algebra import check_automorphism, make_abelian_group, partitions
from triplesys.constructions import affine_table
from triplesys.enumeration import (canonical_forms, conjugacy_classes, count_affine,
                                   find_conjugator, is_self_converse, kepka_nemec_iso,
                                   solutions_of_f, structured_classes)
from triplesys.errors import BoundExceeded, SearchBudgetExceeded
from triplesys.quasigroup import converse, is_isomorphic


def P(n):
    return len(partitions(n))


def module_count(p: int, r: int) -> int:
    """Finite Z[w]-modules of order p^r (w^2 - w + 1 = 0): the number of classes."""
    if p == 3:
        return P(r)
    if p % 3 == 1:
        return sum(P(i) * P(r - i) for i in range(r + 1))
    return P(r // 2) if r % 2 == 0 else 0


def brute_automorphisms(G):
    """Every automorphism of G from a raw scan over integer matrices."""
    m, f = G.rank, G.factors
    ranges = [range(f[i]) for i in range(m) for _ in range(m)]
    E = G.elements
    out = []
    for flat in itertools.product(*ranges):
        A = np.array(flat).reshape(m, m)
        if any((A[i, j] * f[j]) % f[i] for i in range(m) for j in range(m)):
            continue
        perm = G.indices(E @ A.T)
        if len(np.unique(perm)) == G.order:
            out.append(perm)
    return np.array(out)


def brute_classes(G):
    auts = brute_automorphisms(G)
    add, neg = G.add_table, G.neg_table
    idx = np.arange(G.order)
    sols = [a for a in auts if np.all(add[add[a[a], neg[a]], idx] == 0)]
    inv = np.argsort(auts, axis=1)
    seen = set()
    classes = 0
    for k in sols:
        if k.tobytes() in seen:
            continue
        classes += 1
        orbit = auts[np.arange(len(auts))[:, None], k[inv]]
        seen.update(row.tobytes() for row in orbit)
    return len(sols), classes


@pytest.mark.parametrize("factors", [[2, 2], [3, 3], [4, 2], [4, 4], [9, 3], [3, 3, 3], [7, 7],
                                     [2, 2, 2], [8, 2], [13], [9]])
def test_solutions_and_classes_match_brute(factors):
    G = make_abelian_group(factors)
    nsol, ncls = brute_classes(G)
    sols = solutions_of_f(G)
    assert len(sols) == nsol
    assert len(conjugacy_classes(G, sols)) == ncls


@pytest.mark.parametrize("factors,count", [([2, 2, 2, 2], 112), ([13, 13], 184), ([9, 9], 72),
                                           ([8, 8], 32), ([3, 3, 3, 3], 7281)])
def test_solution_counts(factors, count):
    assert len(solutions_of_f(make_abelian_group(factors))) == count


@pytest.mark.parametrize("v", [3, 4, 7, 9, 13, 16, 19, 25, 27, 31, 32, 49, 64, 81, 121, 125, 128, 169, 243])
def test_prime_power_counts_match_module_oracle(v):
    (p, r), = __import__("triplesys.algebra", fromlist=["factorize"]).factorize(v).items()
    assert count_affine(v).a == module_count(p, r)


@pytest.mark.parametrize("v", [16, 27, 49])
def test_search_mode_agrees(v):
    a = count_affine(v, mode="structured")
    b = count_affine(v, mode="search")
    assert [g.count for g in a.per_group] == [g.count for g in b.per_group]


def test_multiplicativity():
    assert count_affine(21).a == count_affine(3).a * count_affine(7).a == 2
    assert count_affine(63).a == count_affine(9).a * count_affine(7).a == 4
    assert count_affine(6).a == 0


def test_canonical_forms_are_non_conjugate():
    for p, m in [(7, 3), (3, 4), (2, 4), (13, 2), (5, 2)]:
        G = make_abelian_group([p] * m)
        reps = structured_classes(G)
        assert len(reps) == len(canonical_forms(p, m))
    assert canonical_forms(2, 3) == []


def test_class_representatives_are_least():
    G = make_abelian_group([7, 7])
    for c in conjugacy_classes(G, solutions_of_f(G)):
        assert c.representative.key == min(k.key for k in c.members)
        for k in c.members:
            psi = find_conjugator(c.representative, k)
            assert psi is not None
            assert c.representative.conjugate_by(psi) == k


def test_conjugacy_iso_across_factor_orders():
    G1, G2 = make_abelian_group([9, 3]), make_abelian_group([3, 9])
    k1 = solutions_of_f(G1)[0]
    for k2 in solutions_of_f(G2):
        assert kepka_nemec_iso(G1, k1, G2, k2)
        phi = is_isomorphic(affine_table(G1, k1), affine_table(G2, k2))
        assert phi is not None
    assert not kepka_nemec_iso(make_abelian_group([9]), 2, make_abelian_group([3, 3]), [[2, 0], [0, 2]])


def test_self_converse():
    G = make_abelian_group([7])
    assert not is_self_converse(G, 3) and not is_self_converse(G, 5)
    G = make_abelian_group([3, 3])
    for k in solutions_of_f(G):
        assert is_self_converse(G, k)
        Q = affine_table(G, k)
        assert is_isomorphic(Q, converse(Q)) is not None
    G = make_abelian_group([7, 7])
    for c in conjugacy_classes(G, solutions_of_f(G)):
        Q = affine_table(G, c.representative)
        assert is_self_converse(G, c.representative) == (is_isomorphic(Q, converse(Q)) is not None)


def test_report_text_and_representatives():
    r = count_affine(49)
    assert str(r).splitlines() == ["GROUP 49 classes=2", "GROUP 7x7 classes=3", "a(49)=5"]
    reps = r.representatives()
    assert len(reps) == 5 and all(Q.n == 49 for Q in reps)
    assert len(count_affine(21).representatives()) == 2


def test_bounds_and_budget():
    with pytest.raises(BoundExceeded):
        count_affine(512)
    with pytest.raises(SearchBudgetExceeded):
        count_affine(81, mode="search", budget=5)
