"""Quasigroups as Cayley tables and the identities checked on them."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import (ConsistencyFailure, NotLatinSquare, NotMendelsohn, ParseError,
                     SearchBudgetExceeded)

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True, eq=False)
class CayleyTable:
    """Latin square on labels ``0 .. n-1``; ``table[x, y] = x o y``."""

    table: np.ndarray = field(repr=False)

    def __post_init__(self):
        T = np.array(self.table, dtype=np.int32, copy=True)
        if T.ndim != 2 or T.shape[0] != T.shape[1]:
            raise NotLatinSquare("table must be square")
        n = T.shape[0]
        if n == 0:
            raise NotLatinSquare("empty table")
        if T.min() < 0 or T.max() >= n:
            raise NotLatinSquare("entries out of range")
        srt = np.arange(n, dtype=np.int32)
        if not (np.all(np.sort(T, axis=1) == srt) and np.all(np.sort(T, axis=0) == srt[:, None])):
            raise NotLatinSquare("some row or column is not a permutation")
        T.setflags(write=False)
        object.__setattr__(self, "table", T)

    @property
    def n(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.n

    def __call__(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def __eq__(self, other) -> bool:
        return isinstance(other, CayleyTable) and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash(self.table.tobytes())

    def __repr__(self) -> str:
        return f"CayleyTable(n={self.n})"

    @classmethod
    def from_function(cls, n: int, op) -> "CayleyTable":
        return cls(np.array([[op(x, y) for y in range(n)] for x in range(n)]))

    def left_division(self) -> np.ndarray:
        """``D[x, y]`` is the z with x o z = y."""
        D = np.empty_like(self.table)
        rows = np.arange(self.n)[:, None]
        D[rows, self.table] = np.arange(self.n)[None, :]
        return D

    def right_division(self) -> np.ndarray:
        """``D[y, x]`` is the z with z o x = y."""
        D = np.empty_like(self.table)
        cols = np.arange(self.n)[None, :]
        D[self.table, cols] = np.arange(self.n)[:, None]
        return D


def trivial() -> CayleyTable:
    return CayleyTable(np.zeros((1, 1), dtype=np.int32))


# -- predicates -------------------------------------------------------------

@dataclass
class PropertyReport:
    idempotent: bool
    commutative: bool
    semisymmetric: bool
    totally_symmetric: bool
    medial: bool
    left_distributive: bool
    right_distributive: bool
    witnesses: dict[str, tuple[int, ...]] = field(default_factory=dict)

    @property
    def distributive(self) -> bool:
        return self.left_distributive and self.right_distributive

    @property
    def mendelsohn(self) -> bool:
        return self.idempotent and self.semisymmetric

    def as_dict(self) -> dict[str, bool]:
        keys = ("idempotent", "commutative", "semisymmetric", "totally_symmetric", "medial",
                "left_distributive", "right_distributive", "distributive")
        return {k: getattr(self, k) for k in keys}


def _first_pair(mask: np.ndarray) -> tuple[int, ...] | None:
    hits = np.argwhere(mask)
    return tuple(int(i) for i in hits[0]) if len(hits) else None


def idempotent_witness(Q: CayleyTable) -> tuple[int] | None:
    bad = np.flatnonzero(np.diag(Q.table) != np.arange(Q.n))
    return (int(bad[0]),) if len(bad) else None


def commutative_witness(Q: CayleyTable):
    return _first_pair(Q.table != Q.table.T)


def semisymmetric_witness(Q: CayleyTable):
    """Least (x, y) with x o (y o x) != y."""
    T = Q.table
    n = Q.n
    # rows indexed by x: T[x, T[y, x]]
    val = T[np.arange(n)[:, None], T.T]
    return _first_pair(val != np.arange(n)[None, :])


def _translations_semisymmetric(Q: CayleyTable) -> bool:
    # L_x R_x = I for every x
    T = Q.table
    ident = np.arange(Q.n)
    return all(np.array_equal(T[x][T[:, x]], ident) for x in range(Q.n))


def _translations_commutative(Q: CayleyTable) -> bool:
    # L_x = R_x for every x
    return all(np.array_equal(Q.table[x, :], Q.table[:, x]) for x in range(Q.n))


def is_medial(Q: CayleyTable) -> bool:
    return kernels.scan("medial_witness", Q.table) is None


def predicate_suite(Q: CayleyTable, threads: int | None = None) -> PropertyReport:
    """Evaluate every identity exhaustively, keeping the least counterexample of each."""
    w: dict[str, tuple[int, ...]] = {}

    def record(name, wit):
        if wit is not None:
            w[name] = tuple(int(i) for i in wit)
        return wit is None

    idem = record("idempotent", idempotent_witness(Q))
    comm = record("commutative", commutative_witness(Q))
    semi = record("semisymmetric", semisymmetric_witness(Q))
    if semi != _translations_semisymmetric(Q) or comm != _translations_commutative(Q):
        raise ConsistencyFailure("identity and translation forms disagree")
    medial = record("medial", kernels.scan("medial_witness", Q.table, threads=threads))
    left = record("left_distributive",
                  kernels.scan("left_distributive_witness", Q.table, threads=threads))
    right = record("right_distributive",
                   kernels.scan("right_distributive_witness", Q.table, threads=threads))
    return PropertyReport(
        idempotent=idem, commutative=comm, semisymmetric=semi,
        totally_symmetric=idem and comm and semi, medial=medial,
        left_distributive=left, right_distributive=right, witnesses=w)


def is_mendelsohn(Q: CayleyTable) -> bool:
    return idempotent_witness(Q) is None and semisymmetric_witness(Q) is None


def antidistributivity_witness(Q: CayleyTable, strict: bool = False,
                               threads: int | None = None) -> tuple[int, int, int, str] | None:
    """Least ordered triple of distinct points, not a block, satisfying a distributive law.

    Returns ``(x, y, z, law)`` with law ``"right"`` or ``"left"``, or None when
    the quasigroup is anti-distributive.  In the default mode only right
    distributivity is scanned: if every eligible triple violates it, every such
    triple also violates left distributivity, so the left scan is redundant.
    ``strict`` scans both laws for every triple.
    """
    if not is_mendelsohn(Q):
        raise NotMendelsohn("anti-distributivity is defined for Mendelsohn quasigroups")
    hit = kernels.scan("antidistributive_witness", Q.table, bool(strict), threads=threads)
    if hit is None:
        return None
    x, y, z, law = hit
    return int(x), int(y), int(z), ("right" if law == 0 else "left")


def is_antidistributive(Q: CayleyTable, strict: bool = False, threads: int | None = None) -> bool:
    return antidistributivity_witness(Q, strict=strict, threads=threads) is None


# -- constructions on tables ------------------------------------------------

def converse(Q: CayleyTable) -> CayleyTable:
    return CayleyTable(Q.table.T)


def direct_product(Q1: CayleyTable, Q2: CayleyTable) -> CayleyTable:
    """Componentwise product; the pair (a1, a2) has label a1 * n2 + a2."""
    n1, n2 = Q1.n, Q2.n
    T = (Q1.table[:, None, :, None].astype(np.int64) * n2 + Q2.table[None, :, None, :])
    return CayleyTable(T.reshape(n1 * n2, n1 * n2))


def relabel(Q: CayleyTable, perm: Sequence[int]) -> CayleyTable:
    """The isomorphic copy in which x is renamed perm[x]."""
    perm = np.asarray(perm, dtype=np.int64)
    inv = np.empty_like(perm)
    inv[perm] = np.arange(len(perm))
    return CayleyTable(perm[Q.table[np.ix_(inv, inv)]])


def subtable(Q: CayleyTable, elements: Iterable[int]) -> CayleyTable:
    """Restriction to a closed subset, relabelled in increasing order."""
    elems = np.array(sorted(set(int(e) for e in elements)), dtype=np.int64)
    index = np.full(Q.n, -1, dtype=np.int64)
    index[elems] = np.arange(len(elems))
    sub = index[Q.table[np.ix_(elems, elems)]]
    if np.any(sub < 0):
        raise ValueError("subset is not closed under the operation")
    return CayleyTable(sub)


def generated_sub(Q: CayleyTable, S: Iterable[int]) -> frozenset[int]:
    """Smallest subquasigroup containing S.

    Closure under the product is computed first; the restriction is then
    checked to be Latin and, if it were not, divisions are added until a
    fixpoint is reached.
    """
    mask = np.zeros(Q.n, dtype=bool)
    mask[list(S)] = True
    if not mask.any():
        raise ValueError("generating set must be nonempty")
    T = Q.table
    ldiv = rdiv = None
    while True:
        while True:
            idx = np.flatnonzero(mask)
            new = np.zeros_like(mask)
            new[T[np.ix_(idx, idx)].ravel()] = True
            if not (new & ~mask).any():
                break
            mask |= new
        idx = np.flatnonzero(mask)
        sub = T[np.ix_(idx, idx)]
        if all(len(np.unique(r)) == len(idx) for r in sub) and \
                all(len(np.unique(c)) == len(idx) for c in sub.T):
            return frozenset(int(i) for i in idx)
        # a finite product-closed subset is always Latin; kept for safety
        if ldiv is None:
            ldiv, rdiv = Q.left_division(), Q.right_division()
        before = mask.copy()
        mask[ldiv[np.ix_(idx, idx)].ravel()] = True
        mask[rdiv[np.ix_(idx, idx)].ravel()] = True
        if np.array_equal(before, mask):
            return frozenset(int(i) for i in idx)


def three_generated_medial(Q: CayleyTable) -> tuple[bool, tuple[int, ...] | None]:
    """Whether every subquasigroup generated by three elements is medial.

    Returns ``(ok, generators)`` where ``generators`` is the least triple whose
    generated subquasigroup is not medial.  Subsets generated by fewer points
    sit inside some 3-generated one and mediality passes to subquasigroups.
    """
    seen: dict[frozenset[int], bool] = {}
    n = Q.n
    triples = itertools.combinations(range(n), 3) if n >= 3 else [tuple(range(n))]
    for trip in triples:
        sub = generated_sub(Q, trip)
        ok = seen.get(sub)
        if ok is None:
            ok = is_medial(subtable(Q, sub))
            seen[sub] = ok
        if not ok:
            return False, tuple(trip)
    return True, None


# -- isomorphism ------------------------------------------------------------

def _cycle_type(perm: np.ndarray) -> tuple[int, ...]:
    seen = np.zeros(len(perm), dtype=bool)
    out = []
    for s in range(len(perm)):
        if seen[s]:
            continue
        length = 0
        x = s
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        out.append(length)
    return tuple(sorted(out))


def element_invariants(Q: CayleyTable) -> list[tuple]:
    """Per element: (cycle type of L_x, cycle type of R_x, x o x == x)."""
    T = Q.table
    return [(_cycle_type(T[x, :]), _cycle_type(T[:, x]), bool(T[x, x] == x)) for x in range(Q.n)]


class _Budget:
    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0

    def tick(self):
        self.used += 1
        if self.used > self.limit:
            raise SearchBudgetExceeded(f"search exceeded {self.limit} nodes")


def _extend_hom(T1, T2, phi, inv, sig1, sig2, x, y):
    """Map x -> y and close under the product.  Returns new (phi, inv) or None."""
    phi = phi.copy()
    inv = inv.copy()
    if phi[x] >= 0:
        return (phi, inv) if phi[x] == y else None
    if inv[y] >= 0 or sig1[x] != sig2[y]:
        return None
    phi[x] = y
    inv[y] = x
    while True:
        dom = np.flatnonzero(phi >= 0)
        src = T1[np.ix_(dom, dom)].ravel()
        dst = T2[np.ix_(phi[dom], phi[dom])].ravel()
        known = phi[src]
        clash = (known >= 0) & (known != dst)
        if clash.any():
            return None
        fresh = known < 0
        if not fresh.any():
            return phi, inv
        s, first = np.unique(src[fresh], return_index=True)
        d = dst[fresh][first]
        # the same new source must have one image
        chk = np.full(len(phi), -1)
        chk[src[fresh]] = dst[fresh]
        if np.any(chk[src[fresh]] != dst[fresh]):
            return None
        if len(np.unique(d)) != len(d) or np.any(inv[d] >= 0):
            return None
        if any(sig1[a] != sig2[b] for a, b in zip(s, d)):
            return None
        phi[s] = d
        inv[d] = s


def is_isomorphic(Q1: CayleyTable, Q2: CayleyTable,
                  budget: int = DEFAULT_BUDGET) -> np.ndarray | None:
    """Return phi with phi[x o y] = phi[x] o' phi[y], or None if none exists.

    Backtracks over images of a generating sequence of Q1.  Candidate images
    must share the element invariant (cycle types of both translations), and
    each assignment is closed under the product before going deeper.
    """
    if Q1.n != Q2.n:
        return None
    sig1 = element_invariants(Q1)
    sig2 = element_invariants(Q2)
    if Counter(sig1) != Counter(sig2):
        return None
    n = Q1.n
    by_sig: dict[tuple, list[int]] = {}
    for y, s in enumerate(sig2):
        by_sig.setdefault(s, []).append(y)
    T1, T2 = Q1.table.astype(np.int64), Q2.table.astype(np.int64)

    # generating sequence: prefer elements with few candidate images
    gens: list[int] = []
    covered: frozenset[int] = frozenset()
    order = sorted(range(n), key=lambda x: (len(by_sig[sig1[x]]), x))
    while len(covered) < n:
        g = next(x for x in order if x not in covered)
        gens.append(g)
        covered = generated_sub(Q1, gens)

    counter = _Budget(budget)
    phi0 = np.full(n, -1, dtype=np.int64)

    def search(i, phi, inv):
        counter.tick()
        if i == len(gens):
            return phi
        g = gens[i]
        if phi[g] >= 0:
            return search(i + 1, phi, inv)
        for y in by_sig[sig1[g]]:
            if inv[y] >= 0:
                continue
            ext = _extend_hom(T1, T2, phi, inv, sig1, sig2, g, y)
            if ext is None:
                continue
            found = search(i + 1, *ext)
            if found is not None:
                return found
        return None

    phi = search(0, phi0, phi0.copy())
    if phi is None:
        return None
    if not np.array_equal(phi[T1], T2[np.ix_(phi, phi)]):
        raise ConsistencyFailure("isomorphism search returned a non-isomorphism")
    return phi


# -- text format ------------------------------------------------------------

def _content_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_table(text: str, header: str = "QG") -> tuple[list[str], np.ndarray]:
    """Parse ``HEADER n ...`` followed by n rows of n integers."""
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty input")
    head = lines[0].split()
    if head[0] != header or len(head) < 2:
        raise ParseError(f"expected header '{header} n'")
    try:
        n = int(head[1])
        rows = [[int(t) for t in line.split()] for line in lines[1:]]
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if n < 1 or len(rows) != n or any(len(r) != n for r in rows):
        raise ParseError(f"expected {n} rows of {n} integers")
    return head, np.array(rows, dtype=np.int64)


def loads_table(text: str) -> CayleyTable:
    _, rows = parse_table(text, "QG")
    try:
        return CayleyTable(rows)
    except NotLatinSquare as exc:
        raise ParseError(f"not a quasigroup: {exc}") from None


def dumps_table(Q: CayleyTable) -> str:
    lines = [f"QG {Q.n}"] + [" ".join(str(int(v)) for v in row) for row in Q.table]
    return "\n".join(lines) + "\n"
