"""The ten acceptance criteria, each timed against its limit.

Every test records one ``CRITERION n PASS|FAIL ...`` line; conftest.py prints
them in a summary section at the end of the pytest run.  Running
``python tests/test_acceptance.py`` runs just these tests.
"""

from __future__ import annotations

import itertools
import sys
import time

import numpy as np
import pytest

from triplesys.algebra import make_abelian_group, partitions, roots_of_f, factorize
from triplesys.constructions import (affine_plane_sts, affine_table, anti_double, char2_mendelsohn,
                                     field_mendelsohn, netto_sts, projective_sts,
                                     spectrum_construct, spectrum_member, steiner_affine)
from triplesys.designs import (double_sts, find_mitre, is_proper, mts_to_quasigroup,
                               quasigroup_to_mts, validate_mts)
from triplesys.enumeration import (conjugacy_classes, count_affine, is_self_converse,
                                   kepka_nemec_iso, solutions_of_f)
from triplesys.quasigroup import (converse, is_antidistributive, is_isomorphic, predicate_suite,
                                  three_generated_medial)


RESULTS: list[str] = []   # collected by the terminal-summary hook in conftest.py


def emit(n: int, ok: bool, title: str, elapsed: float, limit: float, detail: str = "") -> None:
    status = "PASS" if ok and elapsed < limit else "FAIL"
    line = f"CRITERION {n:2d} {status} {title} ({elapsed:.2f} s, limit {limit:g} s)"
    if detail:
        line += f" {detail}"
    RESULTS.append(line)
    print(line, flush=True)


def check(n, title, limit, body):
    t = time.perf_counter()
    ok, detail = body()
    elapsed = time.perf_counter() - t
    emit(n, ok, title, elapsed, limit, detail)
    assert ok, detail
    assert elapsed < limit, f"took {elapsed:.2f} s"


# 1 ---------------------------------------------------------------------------

GROUND_TRUTH = {3: 1, 9: 2, 7: 2, 49: 5, 13: 2, 169: 5, 4: 1, 25: 1, 5: 0, 8: 0, 11: 0}


def test_criterion_01_enumeration_ground_truths():
    def body():
        got = {v: count_affine(v).a for v in GROUND_TRUTH}
        bad = {v: got[v] for v in GROUND_TRUTH if got[v] != GROUND_TRUTH[v]}
        return not bad, f"mismatches={bad}" if bad else ""
    check(1, "a(v) ground truths", 10, body)


# 2 ---------------------------------------------------------------------------

TABULATED = {16: 2, 27: 3, 81: 5, 64: 3}


def test_criterion_02_table_one_structured():
    def body():
        got = {v: count_affine(v, mode="structured").a for v in TABULATED}
        return got == TABULATED, f"got={got}"
    check(2, "tabulated a(v) values, structured solver", 30, body)


def test_criterion_02_table_one_brute_cross_check():
    def body():
        detail = []
        ok = True
        for v in TABULATED:
            s = count_affine(v, mode="structured")
            b = count_affine(v, mode="search")
            same = [g.count for g in s.per_group] == [g.count for g in b.per_group]
            ok &= same and b.a == TABULATED[v]
            detail.append(f"a({v})={b.a}")
        return ok, " ".join(detail)
    check(2, "tabulated a(v) values, exhaustive search cross-check", 600, body)


# 3 ---------------------------------------------------------------------------

def _prime_powers(limit):
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, int(limit ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = False
    for p in map(int, np.flatnonzero(sieve)):
        d, q = 1, p
        while q <= limit:
            yield p, d
            d, q = d + 1, q * p


def test_criterion_03_root_counting():
    def body():
        bad = []
        count = 0
        for p, d in _prime_powers(10**4):
            m = p ** d
            k = np.arange(m, dtype=np.int64)
            trial = np.flatnonzero((k * k - k + 1) % m == 0).tolist()
            expected = 2 if p % 3 == 1 else (1 if (p, d) == (3, 1) else 0)
            roots = roots_of_f(p, d)
            count += 1
            if roots != trial or len(roots) != expected:
                bad.append((p, d))
        return not bad, f"prime powers={count} mismatches={bad[:5]}"
    check(3, "roots of k^2 - k + 1 for p^d <= 10^4", 5, body)


# 4 ---------------------------------------------------------------------------

def _constructed_for_validity():
    for q in (7, 13, 19, 25, 31, 37, 43, 49):
        (p, d), = factorize(q).items()
        yield f"field {q}", field_mendelsohn(p, d)
    for d in (1, 2, 3):
        yield f"char2 {4 ** d}", char2_mendelsohn(d)
    for d in (1, 2, 3):
        yield f"steiner {3 ** d}", steiner_affine(d)
    for v in range(1, 101):
        if spectrum_member(v):
            yield f"spectrum {v}", spectrum_construct(v)


def test_criterion_04_construction_validity():
    def body():
        bad = []
        total = 0
        for name, Q in _constructed_for_validity():
            total += 1
            r = predicate_suite(Q)
            S = quasigroup_to_mts(Q)
            validate_mts(S.v, S.blocks, check_order=False)
            if not (r.idempotent and r.semisymmetric and r.medial) or len(S) != Q.n * (Q.n - 1) // 3:
                bad.append(name)
        return not bad, f"quasigroups={total} failures={bad}"
    check(4, "construction validity", 60, body)


# 5 ---------------------------------------------------------------------------

def test_criterion_05_spectrum_equivalence():
    def body():
        limit = 2000
        x = np.arange(int(np.sqrt(limit)) + 2)
        vals = (x[:, None] ** 2 + x[:, None] * x[None, :] + x[None, :] ** 2).ravel()
        reachable = set(vals[(vals > 0) & (vals <= limit)].tolist())
        bad = [v for v in range(1, limit + 1) if spectrum_member(v) != (v in reachable)]
        return not bad, f"mismatches={bad[:5]}"
    check(5, "spectrum equals x^2+xy+y^2 representability, v <= 2000", 1, body)


# 6 ---------------------------------------------------------------------------

def _strict_triple_count(Q):
    """Independent scan over every ordered triple of distinct points."""
    T = Q.table.astype(np.int64)
    n = Q.n
    x, y, z = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    distinct = (x != y) & (y != z) & (x != z)
    block = T[x, y] == z
    right = T[T[x, y], z] == T[T[x, z], T[y, z]]
    left = T[x, T[y, z]] == T[T[x, y], T[x, z]]
    bad = distinct & ~block & (right | left)
    return int(distinct.sum()), int((distinct & block).sum()), int(bad.sum())


def test_criterion_06_anti_distributive_doubling():
    def body():
        fano = anti_double(projective_sts(3))
        Qf = mts_to_quasigroup(fano)
        triples, blocks, bad = _strict_triple_count(Qf)
        ok_f = (fano.v == 15 and len(fano) == 70 and is_proper(fano) and triples == 2730
                and bad == 0 and blocks == 210 and is_antidistributive(Qf, strict=True))
        pg = anti_double(projective_sts(4))
        Qp = mts_to_quasigroup(pg)
        ok_p = pg.v == 31 and is_proper(pg) and is_antidistributive(Qp, strict=True)
        ag = anti_double(affine_plane_sts())
        Qa = mts_to_quasigroup(ag)
        ok_a = (ag.v == 19 and is_proper(ag) and not is_antidistributive(Qa)
                and not is_antidistributive(Qa, strict=True))
        return ok_f and ok_p and ok_a, (f"fano: triples={triples} violations-missing={bad} "
                                        f"pg32={ok_p} ag23-not-anti={ok_a}")
    check(6, "anti-distributive doubling", 5, body)


# 7 ---------------------------------------------------------------------------

def test_criterion_07_mitre_duality():
    def body():
        systems = {"Fano": projective_sts(3), "AG(2,3)": affine_plane_sts(),
                   "PG(3,2)": projective_sts(4), "Netto(19)": netto_sts(19)}
        out = []
        ok = True
        for name, S in systems.items():
            anti_mitre = find_mitre(S) is None
            both = mts_to_quasigroup(double_sts(S))
            anti = is_antidistributive(both, strict=True)
            doubled = is_antidistributive(mts_to_quasigroup(anti_double(S)), strict=True)
            ok &= anti_mitre == anti == doubled
            out.append(f"{name}:{'anti-mitre' if anti_mitre else 'mitre'}")
        return ok, " ".join(out)
    check(7, "mitre-free iff anti-distributive", 10, body)


# 8 ---------------------------------------------------------------------------

def test_criterion_08_converse_structure():
    def body():
        ok = True
        for p in (7, 13):
            rep = count_affine(p)
            (gc,) = rep.per_group
            G = gc.group
            k1, k2 = gc.representatives
            Q1, Q2 = affine_table(G, k1), affine_table(G, k2)
            ok &= len(gc.representatives) == 2
            ok &= is_isomorphic(Q1, Q2) is None
            ok &= not is_self_converse(G, k1) and not is_self_converse(G, k2)
            ok &= k1.one_minus() == k2
            ok &= converse(Q1) == Q2 and converse(Q2) == Q1
        return ok, ""
    check(8, "converse pairs for p = 7, 13", 1, body)


# 9 ---------------------------------------------------------------------------

def _groups_up_to(n):
    for v in range(2, n + 1):
        parts = [[[p ** e for e in lam] for lam in partitions(r)] for p, r in factorize(v).items()]
        for combo in itertools.product(*parts):
            yield make_abelian_group([d for part in combo for d in part])


def test_criterion_09_oracle_agreement():
    def body():
        samples = []
        for G in _groups_up_to(27):
            for c in conjugacy_classes(G, solutions_of_f(G)):
                samples.append((G, c.representative))
                if len(c.members) > 1:          # also a non-canonical member of the class
                    samples.append((G, c.members[-1]))
        tables = [affine_table(G, k) for G, k in samples]
        mismatches = 0
        iso_pairs = 0
        for (i, (G1, k1)), (j, (G2, k2)) in itertools.product(enumerate(samples), repeat=2):
            kn = kepka_nemec_iso(G1, k1, G2, k2)
            iso = tables[i].n == tables[j].n and is_isomorphic(tables[i], tables[j]) is not None
            mismatches += kn != iso
            iso_pairs += iso
        return mismatches == 0, f"parameters={len(samples)} isomorphic-pairs={iso_pairs} mismatches={mismatches}"
    check(9, "group conjugacy agrees with table isomorphism, |G| <= 27", 60, body)


# 10 --------------------------------------------------------------------------

def _mendelsohn_up_to_27():
    for q, (p, d) in [(7, (7, 1)), (13, (13, 1)), (19, (19, 1)), (25, (5, 2))]:
        yield f"field {q}", field_mendelsohn(p, d)
    for d in (1, 2):
        yield f"char2 {4 ** d}", char2_mendelsohn(d)
    for d in (1, 2, 3):
        yield f"steiner {3 ** d}", steiner_affine(d)
    for v in range(1, 28):
        if spectrum_member(v):
            yield f"spectrum {v}", spectrum_construct(v)
    for G in _groups_up_to(27):
        for c in conjugacy_classes(G, solutions_of_f(G)):
            yield f"affine {G}", affine_table(G, c.representative)
    for name, S in [("Fano", projective_sts(3)), ("AG(2,3)", affine_plane_sts()),
                    ("PG(3,2)", projective_sts(4)), ("Netto(7)", netto_sts(7)),
                    ("Netto(19)", netto_sts(19))]:
        yield f"both orientations {name}", mts_to_quasigroup(double_sts(S))
        if 2 * S.v + 1 <= 27:
            yield f"anti_double {name}", mts_to_quasigroup(anti_double(S))


def test_criterion_10_three_generated_medial():
    def body():
        bad = []
        seen = 0
        non_distributive = 0
        for name, Q in _mendelsohn_up_to_27():
            seen += 1
            dist = predicate_suite(Q).distributive
            non_distributive += not dist
            if three_generated_medial(Q)[0] != dist:
                bad.append(name)
        return not bad, f"quasigroups={seen} non-distributive={non_distributive} failures={bad}"
    check(10, "distributive iff every 3-generated subquasigroup is medial", 120, body)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
