"""Steiner and Mendelsohn triple systems as block sets.

Oriented blocks are stored rotated so that the least point comes first;
unordered blocks are stored sorted.  Both systems keep their blocks in a
frozenset, and exports list them in sorted order so files are diffable.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .errors import BadOrder, InvalidSTS, NotMendelsohn, PairCovered, ParseError
from .quasigroup import CayleyTable, idempotent_witness, semisymmetric_witness

Block = tuple[int, int, int]


def rotate(block: Iterable[int]) -> Block:
    a, b, c = block
    m = min(a, b, c)
    if m == a:
        return (a, b, c)
    if m == b:
        return (b, c, a)
    return (c, a, b)


@dataclass(frozen=True)
class OrientedTripleSystem:
    v: int
    blocks: frozenset[Block]

    def sorted_blocks(self) -> list[Block]:
        return sorted(self.blocks)

    def __len__(self):
        return len(self.blocks)


@dataclass(frozen=True)
class UnorderedTripleSystem:
    v: int
    blocks: frozenset[Block]

    def sorted_blocks(self) -> list[Block]:
        return sorted(self.blocks)

    def __len__(self):
        return len(self.blocks)


def _check_points(v: int, raw) -> list[Block]:
    out = []
    for blk in raw:
        blk = tuple(int(p) for p in blk)
        if len(blk) != 3:
            raise ValueError(f"block {blk} does not have three points")
        if any(p < 0 or p >= v for p in blk):
            raise ValueError(f"block {blk} has a point outside 0..{v - 1}")
        if len(set(blk)) != 3:
            raise PairCovered(f"block {blk} repeats a point")
        out.append(blk)
    return out


def validate_mts(v: int, raw_blocks, check_order: bool = True) -> OrientedTripleSystem:
    """Check that every ordered pair of distinct points lies in exactly one block.

    ``check_order=False`` downgrades the v = 0, 1 (mod 3), v != 6 test to a
    warning, for deliberately importing malformed data.
    """
    if v % 3 not in (0, 1) or v == 6:
        if check_order:
            raise BadOrder(f"no MTS of order {v} exists")
        warnings.warn(f"no MTS of order {v} exists", stacklevel=2)
    blocks = [rotate(b) for b in _check_points(v, raw_blocks)]
    seen = np.zeros((v, v), dtype=np.int64)
    for a, b, c in blocks:
        for x, y in ((a, b), (b, c), (c, a)):
            if seen[x, y]:
                raise PairCovered(f"ordered pair ({x},{y}) covered twice")
            seen[x, y] = 1
    missing = np.argwhere((seen == 0) & ~np.eye(v, dtype=bool))
    if len(missing):
        x, y = missing[0]
        raise PairCovered(f"ordered pair ({x},{y}) not covered")
    return OrientedTripleSystem(v, frozenset(blocks))


def validate_sts(v: int, raw_blocks, check_order: bool = True) -> UnorderedTripleSystem:
    """Check that every unordered pair of distinct points lies in exactly one block."""
    if v % 6 not in (1, 3):
        if check_order:
            raise BadOrder(f"no STS of order {v} exists")
        warnings.warn(f"no STS of order {v} exists", stacklevel=2)
    blocks = [tuple(sorted(b)) for b in _check_points(v, raw_blocks)]
    seen = np.zeros((v, v), dtype=np.int64)
    for a, b, c in blocks:
        for x, y in ((a, b), (a, c), (b, c)):
            if seen[x, y]:
                raise PairCovered(f"pair {{{x},{y}}} covered twice")
            seen[x, y] = seen[y, x] = 1
    missing = np.argwhere((seen == 0) & ~np.eye(v, dtype=bool))
    if len(missing):
        x, y = missing[0]
        raise PairCovered(f"pair {{{x},{y}}} not covered")
    return UnorderedTripleSystem(v, frozenset(blocks))


# -- quasigroup correspondence ----------------------------------------------

def mts_to_quasigroup(S: OrientedTripleSystem) -> CayleyTable:
    T = np.zeros((S.v, S.v), dtype=np.int64)
    T[np.arange(S.v), np.arange(S.v)] = np.arange(S.v)
    for a, b, c in S.blocks:
        T[a, b], T[b, c], T[c, a] = c, a, b
    return CayleyTable(T)


def quasigroup_to_mts(Q: CayleyTable) -> OrientedTripleSystem:
    if idempotent_witness(Q) is not None or semisymmetric_witness(Q) is not None:
        raise NotMendelsohn("table is not idempotent and semisymmetric")
    n = Q.n
    blocks = {rotate((x, y, int(Q.table[x, y])))
              for x in range(n) for y in range(n) if x != y}
    return validate_mts(n, blocks, check_order=False)


def sts_to_quasigroup(S: UnorderedTripleSystem) -> CayleyTable:
    return mts_to_quasigroup(double_sts(S))


def quasigroup_to_sts(Q: CayleyTable) -> UnorderedTripleSystem:
    if not np.array_equal(Q.table, Q.table.T):
        raise ValueError("a Steiner quasigroup is commutative")
    M = quasigroup_to_mts(Q)
    return validate_sts(M.v, {tuple(sorted(b)) for b in M.blocks}, check_order=False)


def double_sts(S: UnorderedTripleSystem) -> OrientedTripleSystem:
    """Write every block in both cyclic orders."""
    blocks = set()
    for a, b, c in S.blocks:
        blocks.add(rotate((a, b, c)))
        blocks.add(rotate((a, c, b)))
    return OrientedTripleSystem(S.v, frozenset(blocks))


def is_proper(S: OrientedTripleSystem) -> bool:
    """True iff some block appears without its reverse."""
    return any(rotate((a, c, b)) not in S.blocks for a, b, c in S.blocks)


# -- mitres -----------------------------------------------------------------

class Mitre(NamedTuple):
    """Five blocks {z,b,x}, {z,g,c}, {z,a,y}, {b,g,a}, {x,c,y} on seven points."""

    x: int
    y: int
    z: int
    a: int
    b: int
    c: int
    g: int

    @property
    def blocks(self) -> tuple[Block, ...]:
        x, y, z, a, b, c, g = self
        return tuple(tuple(sorted(t)) for t in
                     ((z, b, x), (z, g, c), (z, a, y), (b, g, a), (x, c, y)))


def _steiner_product(S: UnorderedTripleSystem) -> np.ndarray:
    T = np.zeros((S.v, S.v), dtype=np.int64)
    T[np.arange(S.v), np.arange(S.v)] = np.arange(S.v)
    for a, b, c in S.blocks:
        T[a, b] = T[b, a] = c
        T[a, c] = T[c, a] = b
        T[b, c] = T[c, b] = a
    return T


def find_mitre(S: UnorderedTripleSystem) -> Mitre | None:
    """Least mitre, found as the least distinct non-collinear (x, y, z) with
    (x o y) o z = (x o z) o (y o z) in the Steiner quasigroup; None if anti-mitre.
    """
    T = _steiner_product(S)
    v = S.v
    pts = np.arange(v)
    for x in range(v):
        for y in range(v):
            if y == x:
                continue
            c = T[x, y]
            lhs = T[c, pts]
            rhs = T[T[x, pts], T[y, pts]]
            ok = (lhs == rhs) & (pts != x) & (pts != y) & (pts != c)
            hits = np.flatnonzero(ok)
            if len(hits):
                z = int(hits[0])
                b, a = int(T[x, z]), int(T[y, z])
                m = Mitre(x, y, z, a, b, int(c), int(lhs[z]))
                if len(set(m)) != 7 or any(blk not in S.blocks for blk in m.blocks):
                    raise InvalidSTS("distributive instance does not form a mitre")
                return m
    return None


# -- text format ------------------------------------------------------------

def loads_design(text: str, check_order: bool = True):
    """Parse an ``MTS v`` or ``STS v`` block file."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ParseError("empty input")
    head = lines[0].split()
    if len(head) != 2 or head[0] not in ("MTS", "STS"):
        raise ParseError("expected header 'MTS v' or 'STS v'")
    try:
        v = int(head[1])
        blocks = [tuple(int(t) for t in line.split()) for line in lines[1:]]
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if any(len(b) != 3 for b in blocks):
        raise ParseError("every block line needs three points")
    expected = v * (v - 1) // (3 if head[0] == "MTS" else 6)
    if len(blocks) != expected:
        raise ParseError(f"expected {expected} blocks, found {len(blocks)}")
    if head[0] == "MTS":
        return validate_mts(v, blocks, check_order=check_order)
    return validate_sts(v, blocks, check_order=check_order)


def dumps_design(S: OrientedTripleSystem | UnorderedTripleSystem) -> str:
    kind = "MTS" if isinstance(S, OrientedTripleSystem) else "STS"
    lines = [f"{kind} {S.v}"] + [" ".join(map(str, b)) for b in S.sorted_blocks()]
    return "\n".join(lines) + "\n"
