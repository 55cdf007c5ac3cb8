"""Commutative Moufang loops: identity checks, nucleus, and affine quasigroups over them.

Loops arrive as raw Cayley tables (typically imported from a file), so
automorphisms are passed around as permutations of the labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import IminusKNotBijective, NotCML, NotLatinSquare, NotNuclear, ParseError
from .quasigroup import CayleyTable, parse_table


@dataclass(frozen=True, eq=False)
class LoopTable:
    table: np.ndarray = field(repr=False)
    identity: int = 0

    def __post_init__(self):
        T = np.array(self.table, dtype=np.int32, copy=True)
        CayleyTable(T)  # Latin check
        e = int(self.identity)
        n = T.shape[0]
        if not (0 <= e < n) or not (np.array_equal(T[e], np.arange(n))
                                    and np.array_equal(T[:, e], np.arange(n))):
            raise NotLatinSquare(f"{e} is not a two-sided identity")
        T.setflags(write=False)
        object.__setattr__(self, "table", T)
        object.__setattr__(self, "identity", e)

    @property
    def n(self) -> int:
        return self.table.shape[0]

    def __eq__(self, other):
        return (isinstance(other, LoopTable) and self.identity == other.identity
                and np.array_equal(self.table, other.table))

    def __hash__(self):
        return hash((self.identity, self.table.tobytes()))

    @property
    def inverse(self) -> np.ndarray:
        """inverse[x] is the y with x + y = e."""
        return np.argmax(self.table == self.identity, axis=1)

    def sub(self, x, y):
        """x - y, i.e. x plus the loop inverse of y."""
        return self.table[x, self.inverse[y]]


def loop_from_group(G) -> LoopTable:
    """The Cayley table of an AbelianGroup, as a loop with identity 0."""
    return LoopTable(G.add_table, 0)


def is_commutative_moufang(L: LoopTable) -> bool:
    T = L.table
    if not np.array_equal(T, T.T):
        return False
    return kernels.scan("cml_witness", T) is None


def nucleus(L: LoopTable) -> frozenset[int]:
    """Elements a with (a+x)+y = a+(x+y), (x+a)+y = x+(a+y), (x+y)+a = x+(y+a) for all x, y."""
    T = L.table.astype(np.int64)
    n = L.n
    out = []
    for a in range(n):
        left = np.array_equal(T[T[a, :], :], T[a, T])          # (a+x)+y vs a+(x+y)
        middle = np.array_equal(T[T[:, a], :], T[np.arange(n)[:, None], T[a, :][None, :]])
        right = np.array_equal(T[T, a], T[np.arange(n)[:, None], T[:, a][None, :]])
        if left and middle and right:
            out.append(a)
    return frozenset(out)


def is_automorphism(L: LoopTable, k) -> bool:
    k = np.asarray(k, dtype=np.int64)
    if k.shape != (L.n,) or len(np.unique(k)) != L.n or k.min() < 0 or k.max() >= L.n:
        return False
    return bool(np.array_equal(k[L.table], L.table[np.ix_(k, k)]))


def is_nuclear_automorphism(L: LoopTable, k) -> bool:
    if not is_automorphism(L, k):
        return False
    k = np.asarray(k, dtype=np.int64)
    N = np.zeros(L.n, dtype=bool)
    N[list(nucleus(L))] = True
    return bool(N[L.table[np.arange(L.n), k]].all())


def one_minus(L: LoopTable, k) -> np.ndarray:
    """The map x -> x - k(x)."""
    k = np.asarray(k, dtype=np.int64)
    return L.sub(np.arange(L.n), k)


def affine_over_loop(L: LoopTable, k) -> CayleyTable:
    """x * y = (x - k(x)) + k(y) for a nuclear automorphism k with I - k bijective."""
    if not is_commutative_moufang(L):
        raise NotCML("loop is not a commutative Moufang loop")
    k = np.asarray(k, dtype=np.int64)
    if not is_nuclear_automorphism(L, k):
        raise NotNuclear("k is not a nuclear automorphism")
    ik = one_minus(L, k)
    if len(np.unique(ik)) != L.n:
        raise IminusKNotBijective("x -> x - k(x) is not a bijection")
    return CayleyTable(L.table[ik[:, None], k[None, :]])


def loads_loop(text: str) -> LoopTable:
    head, rows = parse_table(text, "LOOP")
    if len(head) != 3:
        raise ParseError("expected header 'LOOP n e'")
    try:
        return LoopTable(rows, int(head[2]))
    except (NotLatinSquare, ValueError) as exc:
        raise ParseError(f"not a loop: {exc}") from None


def dumps_loop(L: LoopTable) -> str:
    lines = [f"LOOP {L.n} {L.identity}"] + [" ".join(map(str, r)) for r in L.table.tolist()]
    return "\n".join(lines) + "\n"
