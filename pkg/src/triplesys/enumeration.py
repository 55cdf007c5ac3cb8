"""Isomorphism classes of affine Mendelsohn quasigroups.

Aff(G, k) is Mendelsohn exactly when k^2 - k + I = 0, and two such
quasigroups are isomorphic exactly when their groups are isomorphic and the
automorphisms are conjugate.  Counting a(v) therefore means listing the
solutions k of f(k) = k^2 - k + I = 0 for every abelian group of order v and
splitting them into Aut(G)-conjugacy classes.

Partial maps on a group are int arrays over the labels with -1 where the map
is still unknown; their domain is always a subgroup.  Both searches here
(for solutions of f and for conjugators) grow that subgroup one cyclic
extension at a time and reject as soon as the map stops being a well defined
injective homomorphism.
"""

from __future__ import annotations

import itertools
import math
import os
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .algebra import (AbelianGroup, GroupAutomorphism, check_automorphism, factorize,
                      from_perm, is_root_of_f, make_abelian_group, partitions, prime_power,
                      roots_of_f)
from .constructions import affine_table
from .errors import BoundExceeded, ConsistencyFailure, SearchBudgetExceeded
from .moufang import LoopTable, affine_over_loop, is_commutative_moufang, nucleus, one_minus
from .quasigroup import (CayleyTable, DEFAULT_BUDGET, _extend_hom, element_invariants,
                         generated_sub, is_isomorphic, is_medial)

SEARCH_BOUND = 256          # largest group searched exhaustively
PART_BOUND = 256            # largest prime-power part accepted by count_affine


def default_budget() -> int:
    return int(os.environ.get("TRIPLESYS_BUDGET", DEFAULT_BUDGET))


class _Counter:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def tick(self):
        self.used += 1
        if self.used > self.limit:
            raise SearchBudgetExceeded(f"search exceeded {self.limit} nodes")


# -- partial homomorphisms ---------------------------------------------------

@lru_cache(maxsize=64)
def _multiples(G: AbelianGroup) -> list[np.ndarray]:
    return [G.multiples(x) for x in range(G.order)]


def _add_pair(G: AbelianGroup, img: np.ndarray, g: int, y: int) -> np.ndarray | None:
    """Extend the partial injective hom ``img`` by g -> y, or None if impossible."""
    if img[g] >= 0:
        return img if img[g] == y else None
    orders = G.element_orders
    if orders[g] != orders[y]:
        return None
    mult = _multiples(G)
    dom = np.flatnonzero(img >= 0)
    add = G.add_table
    E = add[dom[:, None], mult[g][None, :]].ravel()
    I = add[img[dom][:, None], mult[y][None, :]].ravel()
    tmp = np.full(G.order, -1, dtype=np.int64)
    tmp[E] = I
    if np.any(tmp[E] != I):
        return None
    new = np.where(tmp >= 0, tmp, img)
    vals = new[new >= 0]
    if len(np.unique(vals)) != len(vals):
        return None
    return new


def _close_f(G: AbelianGroup, img: np.ndarray) -> np.ndarray | None:
    """Propagate k(k(x)) = k(x) - x until the domain is k-invariant."""
    add, neg = G.add_table, G.neg_table
    while True:
        dom = np.flatnonzero(img >= 0)
        kx = img[dom]
        want = add[kx, neg[dom]]
        have = img[kx]
        known = have >= 0
        if np.any(have[known] != want[known]):
            return None
        todo = np.flatnonzero(~known)
        if len(todo) == 0:
            return img
        i = todo[0]
        img = _add_pair(G, img, int(kx[i]), int(want[i]))
        if img is None:
            return None


def _close_conj(G: AbelianGroup, img: np.ndarray, k1: np.ndarray, k2: np.ndarray):
    """Propagate psi(k1(x)) = k2(psi(x)) until the domain is k1-invariant."""
    while True:
        dom = np.flatnonzero(img >= 0)
        src = k1[dom]
        want = k2[img[dom]]
        have = img[src]
        known = have >= 0
        if np.any(have[known] != want[known]):
            return None
        todo = np.flatnonzero(~known)
        if len(todo) == 0:
            return img
        i = todo[0]
        img = _add_pair(G, img, int(src[i]), int(want[i]))
        if img is None:
            return None


def _empty_map(G: AbelianGroup) -> np.ndarray:
    img = np.full(G.order, -1, dtype=np.int64)
    img[0] = 0
    return img


# -- solutions of f ----------------------------------------------------------

def solutions_of_f(G: AbelianGroup, budget: int | None = None) -> list[GroupAutomorphism]:
    """Every automorphism k of G with k^2 - k + I = 0, sorted by matrix.

    Backtracks over the images of the canonical generators.  After each
    choice k(e) = c the forced value k(c) = c - e is propagated, so the
    domain grows as the k-submodule generated by the chosen generators.
    """
    if G.order > SEARCH_BOUND:
        raise BoundExceeded(f"|G| = {G.order} exceeds the search bound {SEARCH_BOUND}")
    counter = _Counter(budget or default_budget())
    orders = G.element_orders
    gens = G.generators()
    found: list[np.ndarray] = []

    def search(img):
        counter.tick()
        g = next((e for e in gens if img[e] < 0), None)
        if g is None:
            found.append(img)
            return
        used = np.zeros(G.order, dtype=bool)
        used[img[img >= 0]] = True
        for c in np.flatnonzero((orders == orders[g]) & ~used):
            nxt = _add_pair(G, img, g, int(c))
            if nxt is not None:
                nxt = _close_f(G, nxt)
            if nxt is not None:
                search(nxt)

    start = _close_f(G, _empty_map(G))
    search(start)
    sols = [from_perm(G, perm) for perm in found]
    for k in sols:
        if not is_root_of_f(k):
            raise ConsistencyFailure("search produced a non-solution")
    return sorted(sols, key=lambda k: k.key)


# -- conjugacy ---------------------------------------------------------------

@lru_cache(maxsize=4096)
def _element_signatures(k: GroupAutomorphism) -> tuple[tuple[int, int, int], ...]:
    """Per element x: (order of x, size of the k-invariant subgroup it generates,
    length of its k-orbit).  Conjugation preserves all three."""
    G = k.group
    mult = _multiples(G)
    add = G.add_table
    perm = k.perm
    out = []
    for x in range(G.order):
        orbit = [x]
        y = int(perm[x])
        while y != x:
            orbit.append(y)
            y = int(perm[y])
        mask = np.zeros(G.order, dtype=bool)
        mask[mult[x]] = True
        for o in orbit[1:]:
            if not mask[o]:
                elems = np.flatnonzero(mask)
                mask[add[elems[:, None], mult[o][None, :]].ravel()] = True
        out.append((int(G.element_orders[x]), int(mask.sum()), len(orbit)))
    return tuple(out)


def conjugacy_invariant(k: GroupAutomorphism) -> tuple:
    return tuple(sorted(Counter(_element_signatures(k)).items()))


def find_conjugator(k1: GroupAutomorphism, k2: GroupAutomorphism,
                    budget: int | None = None) -> GroupAutomorphism | None:
    """An automorphism psi with psi k1 = k2 psi, or None."""
    G = k1.group
    if k2.group != G:
        raise ValueError("automorphisms of different groups")
    if k1 == k2:
        return check_automorphism(G, np.eye(G.rank, dtype=np.int64).tolist())
    sig1, sig2 = _element_signatures(k1), _element_signatures(k2)
    if Counter(sig1) != Counter(sig2):
        return None
    counter = _Counter(budget or default_budget())
    gens = G.generators()
    sig2_arr = np.array([hash(s) for s in sig2])
    p1, p2 = np.asarray(k1.perm), np.asarray(k2.perm)

    def search(img):
        counter.tick()
        g = next((e for e in gens if img[e] < 0), None)
        if g is None:
            return img
        used = np.zeros(G.order, dtype=bool)
        used[img[img >= 0]] = True
        for y in np.flatnonzero((sig2_arr == hash(sig1[g])) & ~used):
            nxt = _add_pair(G, img, g, int(y))
            if nxt is not None:
                nxt = _close_conj(G, nxt, p1, p2)
            if nxt is not None:
                res = search(nxt)
                if res is not None:
                    return res
        return None

    res = search(_empty_map(G))
    if res is None:
        return None
    psi = from_perm(G, res)
    if not np.array_equal(psi.perm[p1], p2[psi.perm]):
        raise ConsistencyFailure("conjugator search returned a non-conjugator")
    return psi


def _unit_generators(d: int) -> list[int]:
    pe = prime_power(d)
    p, e = pe
    if p == 2:
        return [u for u in (d - 1, 5) if 1 < u < d]
    phi = d - d // p
    divs = factorize(phi)
    for g in range(2, d):
        if g % p and all(pow(g, phi // r, d) != 1 for r in divs):
            return [g]
    return []


def aut_generators(G: AbelianGroup) -> list[GroupAutomorphism]:
    """Scalings, transvections and swaps of canonical generators.

    These are used only to merge conjugates quickly; classes that they fail
    to connect are still merged by an explicit conjugator search.
    """
    m = G.rank
    f = G.factors
    out = []
    eye = np.eye(m, dtype=np.int64)
    for i in range(m):
        for u in _unit_generators(f[i]):
            A = eye.copy()
            A[i, i] = u
            out.append(A)
    for i, j in itertools.permutations(range(m), 2):
        c = f[i] // math.gcd(f[i], f[j])
        if c < f[i]:
            A = eye.copy()
            A[i, j] = c
            out.append(A)
        if f[i] == f[j] and i < j:
            A = eye.copy()
            A[:, [i, j]] = A[:, [j, i]]
            out.append(A)
    return [check_automorphism(G, A.tolist()) for A in out]


@dataclass
class ConjugacyClass:
    representative: GroupAutomorphism
    members: list[GroupAutomorphism] = field(repr=False)

    def __len__(self):
        return len(self.members)


def conjugacy_classes(G: AbelianGroup, ks: Sequence[GroupAutomorphism],
                      budget: int | None = None) -> list[ConjugacyClass]:
    """Partition ks into Aut(G)-conjugacy classes.

    Orbits under a fixed set of generating automorphisms are found by union-find;
    the resulting orbits are then merged wherever a conjugator search succeeds.
    Representatives are the lexicographically least matrices; classes are
    sorted by representative.
    """
    ks = sorted(set(ks), key=lambda k: k.key)
    if not ks:
        return []
    index = {k.perm.tobytes(): i for i, k in enumerate(ks)}
    parent = list(range(len(ks)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    for psi in aut_generators(G):
        inv = psi.inverse().perm
        for i, k in enumerate(ks):
            j = index.get(psi.perm[k.perm[inv]].tobytes())
            if j is not None:
                union(i, j)

    orbits: dict[int, list[int]] = defaultdict(list)
    for i in range(len(ks)):
        orbits[find(i)].append(i)
    reps = sorted(orbits)               # least member of each orbit
    by_inv: dict[tuple, list[int]] = defaultdict(list)
    for r in reps:
        by_inv[conjugacy_invariant(ks[r])].append(r)
    for group in by_inv.values():
        for a_pos, a in enumerate(group):
            for b in group[a_pos + 1:]:
                if find(a) != find(b) and find_conjugator(ks[a], ks[b], budget) is not None:
                    union(a, b)

    classes: dict[int, list[GroupAutomorphism]] = defaultdict(list)
    for i, k in enumerate(ks):
        classes[find(i)].append(k)
    out = [ConjugacyClass(members[0], members) for members in classes.values()]
    return sorted(out, key=lambda c: c.representative.key)


# -- structured classes for elementary abelian groups -----------------------

def _blockdiag(blocks: list[list[list[int]]]) -> list[list[int]]:
    m = sum(len(b) for b in blocks)
    A = [[0] * m for _ in range(m)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, val in enumerate(row):
                A[off + i][off + j] = val
        off += len(b)
    return A


def canonical_forms(p: int, m: int) -> list[list[list[int]]]:
    """Normal forms of the solutions of f in GL(m, p), one per conjugacy class.

    p = 1 (mod 3): f splits with distinct roots t1 < t2, so solutions are
    diagonalizable: diag(t1 repeated a times, t2 repeated m - a times).
    p = 3: f = (x + 1)^2, so solutions are -I + N with N^2 = 0, classified by
    the number r of 2x2 Jordan blocks [[2, 1], [0, 2]].
    p = 2 (mod 3): f is irreducible, so m must be even and every solution is
    conjugate to copies of the companion block [[0, -1], [1, 1]].
    """
    if m == 0:
        return [[]]
    if p == 3:
        out = []
        for r in range(m // 2 + 1):
            blocks = [[[2, 1], [0, 2]]] * r + [[[2]]] * (m - 2 * r)
            out.append(_blockdiag(blocks))
        return out
    if p % 3 == 1:
        t1, t2 = roots_of_f(p, 1)
        return [_blockdiag([[[t1]]] * a + [[[t2]]] * (m - a)) for a in range(m, -1, -1)]
    if m % 2:
        return []
    return [_blockdiag([[[0, p - 1], [1, 1]]] * (m // 2))]


def structured_classes(G: AbelianGroup, budget: int | None = None) -> list[GroupAutomorphism]:
    """Class representatives for elementary abelian G from normal forms.

    Each form is checked to solve f, and the forms are checked pairwise
    non-conjugate by conjugator search.
    """
    pe = prime_power(G.factors[0]) if G.factors else None
    if pe is None or any(d != G.factors[0] for d in G.factors) or pe[1] != 1:
        raise ValueError("structured classes need an elementary abelian group")
    reps = [check_automorphism(G, A) for A in canonical_forms(pe[0], G.rank)]
    for k in reps:
        if not is_root_of_f(k):
            raise ConsistencyFailure(f"normal form {k.matrix} does not solve f")
    for a, b in itertools.combinations(reps, 2):
        if find_conjugator(a, b, budget) is not None:
            raise ConsistencyFailure("two normal forms are conjugate")
    return sorted(reps, key=lambda k: k.key)


def _layer_ranks(G: AbelianGroup) -> list[int]:
    """Ranks of the F_p-layers p^i G[p] / p^(i+1) G[p] (factors of exponent > i)."""
    exps = [prime_power(d)[1] for d in G.factors]
    return [sum(1 for e in exps if e > i) for i in range(max(exps, default=0))]


def _layer_obstructed(G: AbelianGroup) -> bool:
    """True if some characteristic F_p-layer of G admits no solution of f.

    A solution k on G induces one on each layer (an elementary abelian section
    of rank r), so an empty normal-form list for some layer rules G out.
    """
    if not G.factors:
        return False
    p = prime_power(G.factors[0])[0]
    return any(not canonical_forms(p, r) for r in _layer_ranks(G))


# -- counting ----------------------------------------------------------------

@dataclass
class GroupClasses:
    group: AbelianGroup
    count: int
    representatives: list[GroupAutomorphism] = field(repr=False)


@dataclass
class EnumerationReport:
    v: int
    per_group: list[GroupClasses]
    a: int
    b: int | None = None
    d: int | None = None

    def lines(self) -> list[str]:
        out = [f"GROUP {gc.group} classes={gc.count}" for gc in self.per_group]
        out.append(f"a({self.v})={self.a}")
        if self.b is not None:
            out.append(f"b({self.v})={self.b}")
            out.append(f"d({self.v})={self.d}")
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines())

    def representatives(self) -> list[CayleyTable]:
        """One quasigroup per class; composite orders combine parts by direct product."""
        from .quasigroup import direct_product, trivial
        parts: dict[int, list[CayleyTable]] = defaultdict(list)
        for gc in self.per_group:
            p = prime_power(gc.group.factors[0])[0] if gc.group.factors else 1
            parts[p] += [affine_table(gc.group, k) for k in gc.representatives]
        tables = [trivial()]
        for p in sorted(parts):
            tables = [direct_product(A, B) for A in tables for B in parts[p]]
        return tables if self.a else []


def groups_of_order(p: int, r: int) -> list[AbelianGroup]:
    """One abelian group per partition of r, factors in non-increasing order."""
    return [make_abelian_group([p ** e for e in lam]) for lam in partitions(r)]


def classes_for_group(G: AbelianGroup, mode: str = "structured",
                      budget: int | None = None) -> list[GroupAutomorphism]:
    """Class representatives of solutions of f on G."""
    if mode not in ("structured", "search"):
        raise ValueError("mode must be 'structured' or 'search'")
    elementary = G.factors and len(set(G.factors)) == 1 and prime_power(G.factors[0])[1] == 1
    if mode == "structured":
        if elementary and G.rank > 1:
            return structured_classes(G, budget)
        if _layer_obstructed(G):
            return []
    return [c.representative for c in conjugacy_classes(G, solutions_of_f(G, budget), budget)]


def count_affine(v: int, mode: str = "structured", budget: int | None = None,
                 loops: Sequence[LoopTable] = ()) -> EnumerationReport:
    """a(v), the number of affine Mendelsohn quasigroups of order v up to isomorphism.

    Prime-power parts are enumerated group by group; a(v) is the product of
    the part counts.  When loop tables of order v are supplied, b(v) and
    d(v) = a(v) + b(v) are filled in from them.
    """
    if v < 1:
        raise ValueError("v must be positive")
    per_group = []
    a = 1
    for p, r in sorted(factorize(v).items()):
        if p ** r > PART_BOUND:
            raise BoundExceeded(f"prime-power part {p}^{r} exceeds {PART_BOUND}")
        total = 0
        for G in groups_of_order(p, r):
            reps = classes_for_group(G, mode, budget)
            per_group.append(GroupClasses(G, len(reps), reps))
            total += len(reps)
        a *= total
    report = EnumerationReport(v, per_group, a)
    if loops:
        report.b = count_nonaffine(loops, v, budget)
        report.d = report.a + report.b
    return report


# -- affine quasigroups as parameters ---------------------------------------

def _transport(G1: AbelianGroup, G2: AbelianGroup, k2: GroupAutomorphism) -> GroupAutomorphism:
    """Carry k2 to G1 along a coordinate permutation identifying G2 with G1."""
    pool = list(range(G2.rank))
    pi = []
    for d in G1.factors:
        j = next(j for j in pool if G2.factors[j] == d)
        pool.remove(j)
        pi.append(j)
    # theta: G2 -> G1 sends coordinate pi[i] to coordinate i
    theta = G1.indices(G2.elements[:, pi])
    theta_inv = np.empty_like(theta)
    theta_inv[theta] = np.arange(G1.order)
    return from_perm(G1, theta[k2.perm[theta_inv]])


def _as_aut(G: AbelianGroup, k) -> GroupAutomorphism:
    if isinstance(k, GroupAutomorphism):
        return k
    if isinstance(k, (int, np.integer)):
        k = (int(k) * np.eye(G.rank, dtype=np.int64)).tolist()
    return check_automorphism(G, k)


def kepka_nemec_iso(G1: AbelianGroup, k1, G2: AbelianGroup, k2,
                    budget: int | None = None) -> bool:
    """Aff(G1, k1) = Aff(G2, k2) iff G1 = G2 and k1, k2 are conjugate."""
    k1, k2 = _as_aut(G1, k1), _as_aut(G2, k2)
    if sorted(G1.factors) != sorted(G2.factors):
        return False
    if G1 != G2:
        k2 = _transport(G1, G2, k2)
    return find_conjugator(k1, k2, budget) is not None


def is_self_converse(G: AbelianGroup, k, budget: int | None = None) -> bool:
    """Aff(G, k) is isomorphic to its converse Aff(G, I - k) iff k ~ I - k."""
    k = _as_aut(G, k)
    ik = k.one_minus()
    if G.rank <= 1:                      # Aut(G) is commutative
        return k == ik
    return find_conjugator(k, ik, budget) is not None


def converse_parameter(k: GroupAutomorphism) -> GroupAutomorphism:
    """The parameter of the converse quasigroup: converse(Aff(G, k)) = Aff(G, I - k)."""
    return k.one_minus()


# -- non-affine classes from imported loops ---------------------------------

def loop_solutions(L: LoopTable, budget: int | None = None) -> list[np.ndarray]:
    """Nuclear automorphisms k of a CML with k - k^2 = I, as permutations."""
    if not is_commutative_moufang(L):
        raise ValueError("loop is not a commutative Moufang loop")
    counter = _Counter(budget or default_budget())
    n = L.n
    T = L.table.astype(np.int64)
    Q = CayleyTable(T)
    sig = element_invariants(Q)
    inv = L.inverse
    e = L.identity
    # generating sequence of the loop
    gens: list[int] = []
    span: frozenset[int] = frozenset([e])
    for x in range(n):
        if x not in span:
            gens.append(x)
            span = generated_sub(Q, gens)
    nuc = np.zeros(n, dtype=bool)
    nuc[list(nucleus(L))] = True
    found = []

    def close(phi, pinv):
        while True:
            dom = np.flatnonzero(phi >= 0)
            kx = phi[dom]
            want = T[kx, inv[dom]]           # k(k(x)) = k(x) - x
            have = phi[kx]
            known = have >= 0
            if np.any(have[known] != want[known]):
                return None
            todo = np.flatnonzero(~known)
            if len(todo) == 0:
                return phi, pinv
            i = todo[0]
            ext = _extend_hom(T, T, phi, pinv, sig, sig, int(kx[i]), int(want[i]))
            if ext is None:
                return None
            phi, pinv = ext

    def search(i, phi, pinv):
        counter.tick()
        if i == len(gens):
            if nuc[T[np.arange(n), phi]].all() and len(np.unique(one_minus(L, phi))) == n:
                found.append(phi.copy())
            return
        g = gens[i]
        if phi[g] >= 0:
            search(i + 1, phi, pinv)
            return
        for c in range(n):
            if pinv[c] >= 0 or sig[c] != sig[g]:
                continue
            ext = _extend_hom(T, T, phi, pinv, sig, sig, g, c)
            if ext is not None:
                ext = close(*ext)
            if ext is not None:
                search(i + 1, *ext)

    phi0 = np.full(n, -1, dtype=np.int64)
    phi0[e] = e
    pinv0 = phi0.copy()
    start = close(phi0, pinv0)
    if start is not None:
        search(0, *start)
    return found


def count_nonaffine(loops: Sequence[LoopTable], v: int | None = None,
                    budget: int | None = None) -> int:
    """Isomorphism classes of non-medial Aff(L, k) over the given loops."""
    reps: list[CayleyTable] = []
    for L in loops:
        if v is not None and L.n != v:
            raise ValueError(f"loop of order {L.n} supplied for v = {v}")
        for k in loop_solutions(L, budget):
            Q = affine_over_loop(L, k)
            if is_medial(Q):
                continue
            if not any(is_isomorphic(Q, R, budget or default_budget()) is not None for R in reps):
                reps.append(Q)
    return len(reps)
