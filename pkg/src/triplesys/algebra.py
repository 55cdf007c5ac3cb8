"""Finite abelian groups, their automorphisms, Galois fields, and roots of x^2 - x + 1.

Group elements are mixed-radix vectors.  Every group also carries a dense
integer labelling ``0 .. order-1`` (first factor varies fastest) so that
Cayley tables built from groups are reproducible.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import BoundExceeded, NonPrimePowerFactor, NotBijective, NotHomomorphism

ORDER_CAP = 2**16


# -- integers ---------------------------------------------------------------

def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (n is small by design)."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out: dict[int, int] = {}
    q = 2
    while q * q <= n:
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
        q += 1 if q == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == {n: 1}


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, e)`` with ``n == p**e`` and e >= 1, or None."""
    if n < 2:
        return None
    f = factorize(n)
    if len(f) != 1:
        return None
    (p, e), = f.items()
    return p, e


def partitions(r: int, largest: int | None = None) -> list[tuple[int, ...]]:
    """Integer partitions of r as non-increasing tuples, in reverse lex order."""
    if largest is None:
        largest = r
    if r == 0:
        return [()]
    out = []
    for first in range(min(r, largest), 0, -1):
        for rest in partitions(r - first, first):
            out.append((first,) + rest)
    return out


# -- abelian groups ---------------------------------------------------------

@dataclass(frozen=True)
class AbelianGroup:
    """Direct product of cyclic groups of prime-power orders ``factors``."""

    factors: tuple[int, ...]

    @property
    def order(self) -> int:
        return math.prod(self.factors)

    @property
    def rank(self) -> int:
        return len(self.factors)

    def __str__(self) -> str:
        return "x".join(map(str, self.factors)) if self.factors else "1"

    @cached_property
    def weights(self) -> np.ndarray:
        w = np.ones(self.rank, dtype=np.int64)
        for i in range(1, self.rank):
            w[i] = w[i - 1] * self.factors[i - 1]
        return w

    @cached_property
    def moduli(self) -> np.ndarray:
        return np.array(self.factors, dtype=np.int64)

    @cached_property
    def elements(self) -> np.ndarray:
        """``order x rank`` array; row i is the vector with label i."""
        idx = np.arange(self.order, dtype=np.int64)
        if self.rank == 0:
            return np.zeros((1, 0), dtype=np.int64)
        return (idx[:, None] // self.weights[None, :]) % self.moduli[None, :]

    def index(self, vec: Sequence[int]) -> int:
        return int(sum((int(x) % d) * int(w) for x, d, w in zip(vec, self.factors, self.weights)))

    def vector(self, i: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.elements[i])

    def indices(self, vecs: np.ndarray) -> np.ndarray:
        """Labels of an ``(..., rank)`` array of (unreduced) vectors."""
        return ((vecs % self.moduli) * self.weights).sum(axis=-1)

    @cached_property
    def add_table(self) -> np.ndarray:
        e = self.elements
        return self.indices(e[:, None, :] + e[None, :, :])

    @cached_property
    def neg_table(self) -> np.ndarray:
        return self.indices(-self.elements)

    @cached_property
    def element_orders(self) -> np.ndarray:
        if self.rank == 0:
            return np.ones(1, dtype=np.int64)
        e = self.elements
        per = self.moduli[None, :] // np.gcd(e, self.moduli[None, :])
        return np.lcm.reduce(per, axis=1)

    @property
    def exponent(self) -> int:
        return reduce(math.lcm, self.factors, 1)

    def generators(self) -> list[int]:
        """Labels of the canonical generators e_1, ..., e_m."""
        return [int(w) for w in self.weights]

    def multiples(self, x: int, count: int | None = None) -> np.ndarray:
        """Labels of 0, x, 2x, ..., (count-1)x."""
        if count is None:
            count = int(self.element_orders[x])
        a = np.arange(count, dtype=np.int64)
        return self.indices(a[:, None] * self.elements[x][None, :])

    # vector-level operations
    def add(self, x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.factors))

    def neg(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple((-a) % d for a, d in zip(x, self.factors))

    def smul(self, c: int, x: Sequence[int]) -> tuple[int, ...]:
        return tuple((c * a) % d for a, d in zip(x, self.factors))


def make_abelian_group(orders: Iterable[int]) -> AbelianGroup:
    orders = tuple(int(d) for d in orders)
    for d in orders:
        if prime_power(d) is None:
            raise NonPrimePowerFactor(f"factor {d} is not a prime power")
    if math.prod(orders) > ORDER_CAP:
        raise BoundExceeded(f"group order {math.prod(orders)} exceeds {ORDER_CAP}")
    return AbelianGroup(orders)


# -- automorphisms ----------------------------------------------------------

def _normalize(G: AbelianGroup, A) -> tuple[tuple[int, ...], ...]:
    m = G.rank
    rows = [[int(A[i][j]) % G.factors[i] for j in range(m)] for i in range(m)]
    return tuple(tuple(r) for r in rows)


def _hom_defect(G: AbelianGroup, A) -> tuple[int, int] | None:
    for j, dj in enumerate(G.factors):
        for i, di in enumerate(G.factors):
            if (A[i][j] * dj) % di:
                return i, j
    return None


def _perm_of(G: AbelianGroup, A) -> np.ndarray:
    if G.rank == 0:
        return np.zeros(1, dtype=np.int64)
    M = np.array(A, dtype=np.int64)
    return G.indices(G.elements @ M.T)


@dataclass(frozen=True, eq=False)
class GroupAutomorphism:
    """A validated automorphism; column j of ``matrix`` is the image of e_j."""

    group: AbelianGroup
    matrix: tuple[tuple[int, ...], ...]
    perm: np.ndarray = field(repr=False)

    def __eq__(self, other):
        return (isinstance(other, GroupAutomorphism) and self.group == other.group
                and self.matrix == other.matrix)

    def __hash__(self):
        return hash((self.group, self.matrix))

    def __call__(self, x: Sequence[int]) -> tuple[int, ...]:
        return self.group.vector(int(self.perm[self.group.index(x)]))

    @property
    def key(self) -> tuple[int, ...]:
        """Row-major flattening; the order used for "lexicographically least"."""
        return tuple(itertools.chain.from_iterable(self.matrix))

    def __matmul__(self, other: "GroupAutomorphism") -> "GroupAutomorphism":
        return from_perm(self.group, self.perm[other.perm])

    def inverse(self) -> "GroupAutomorphism":
        inv = np.empty_like(self.perm)
        inv[self.perm] = np.arange(len(self.perm))
        return from_perm(self.group, inv)

    def conjugate_by(self, psi: "GroupAutomorphism") -> "GroupAutomorphism":
        """psi o self o psi^-1."""
        inv = np.empty_like(psi.perm)
        inv[psi.perm] = np.arange(len(psi.perm))
        return from_perm(self.group, psi.perm[self.perm[inv]])

    def one_minus(self) -> "GroupAutomorphism":
        """I - k, validated."""
        G = self.group
        p = G.add_table[np.arange(G.order), G.neg_table[self.perm]]
        return from_perm(G, p)


def check_automorphism(G: AbelianGroup, A) -> GroupAutomorphism:
    """Validate an integer matrix as an automorphism of G."""
    if isinstance(A, int) or np.isscalar(A):
        A = [[int(A)]]
    A = [list(map(int, row)) for row in A]
    m = G.rank
    if len(A) != m or any(len(r) != m for r in A):
        raise ValueError(f"expected a {m}x{m} matrix")
    bad = _hom_defect(G, A)
    if bad is not None:
        i, j = bad
        raise NotHomomorphism(
            f"entry ({i},{j}): {G.factors[j]} * {A[i][j]} is not 0 mod {G.factors[i]}")
    M = _normalize(G, A)
    perm = _perm_of(G, M)
    if len(np.unique(perm)) != G.order:
        raise NotBijective("matrix does not induce a permutation of the group")
    perm.setflags(write=False)
    return GroupAutomorphism(G, M, perm)


def from_perm(G: AbelianGroup, perm: np.ndarray) -> GroupAutomorphism:
    """Automorphism from its action on labels (assumed a homomorphism)."""
    perm = np.asarray(perm, dtype=np.int64)
    if len(np.unique(perm)) != G.order:
        raise NotBijective("not a permutation")
    cols = [G.elements[perm[g]] for g in G.generators()]
    M = tuple(tuple(int(cols[j][i]) for j in range(G.rank)) for i in range(G.rank))
    perm = perm.copy()
    perm.setflags(write=False)
    return GroupAutomorphism(G, M, perm)


def identity_automorphism(G: AbelianGroup) -> GroupAutomorphism:
    return check_automorphism(G, np.eye(G.rank, dtype=np.int64).tolist())


def scalar_automorphism(G: AbelianGroup, c: int) -> GroupAutomorphism:
    """x -> c x."""
    return check_automorphism(G, (c * np.eye(G.rank, dtype=np.int64)).tolist())


def is_root_of_f(k: GroupAutomorphism) -> bool:
    """k(k(x)) - k(x) + x == 0 for every x."""
    G = k.group
    kk = k.perm[k.perm]
    lhs = G.add_table[G.add_table[kk, G.neg_table[k.perm]], np.arange(G.order)]
    return bool(np.all(lhs == 0))


# -- roots of x^2 - x + 1 ---------------------------------------------------

def _f(k: int, m: int) -> int:
    return (k * k - k + 1) % m


def roots_of_f(p: int, d: int) -> list[int]:
    """Sorted roots of x^2 - x + 1 modulo p**d, by Hensel lifting roots mod p."""
    if not is_prime(p) or d < 1:
        raise ValueError("need a prime p and d >= 1")
    if p == 3:
        return [2] if d == 1 else []
    roots = [k for k in range(p) if _f(k, p) == 0]
    m = p
    for _ in range(1, d):
        m_next = m * p
        lifted = []
        for k in roots:
            # f'(k) = 2k - 1 is a unit mod p for p != 3
            t = (-(k * k - k + 1) // m) * pow(2 * k - 1, -1, p) % p
            lifted.append((k + t * m) % m_next)
        roots, m = lifted, m_next
    return sorted(roots)


# -- Galois fields ----------------------------------------------------------

def _poly_mod(a: list[int], mod: list[int], p: int) -> list[int]:
    """Remainder of a by the monic polynomial mod (coefficient lists, low first)."""
    a = a[:]
    dm = len(mod) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * mod[j]) % p
    return [x % p for x in a[:dm]] + [0] * max(0, dm - len(a))


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _poly_mod(prod, mod, p)


def _is_irreducible(mod: list[int], p: int) -> bool:
    d = len(mod) - 1
    for k in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=k):
            divisor = list(low) + [1]
            if not any(_poly_mod(mod, divisor, p)):
                return False
    return True


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """GF(p^d).  Elements are labelled by ``c0 + c1 p + ... + c_{d-1} p^{d-1}``.

    ``modulus`` holds the low coefficients of the monic defining polynomial;
    it is None when d == 1 (arithmetic is then plain arithmetic mod p).
    """

    p: int
    d: int
    modulus: tuple[int, ...] | None
    omega: int
    exp: np.ndarray = field(repr=False)
    log: np.ndarray = field(repr=False)

    @property
    def q(self) -> int:
        return self.p ** self.d

    @cached_property
    def digits(self) -> np.ndarray:
        i = np.arange(self.q, dtype=np.int64)
        return (i[:, None] // (self.p ** np.arange(self.d))[None, :]) % self.p

    @cached_property
    def _place(self) -> np.ndarray:
        return self.p ** np.arange(self.d, dtype=np.int64)

    def element(self, coeffs: Sequence[int]) -> int:
        return int(sum((int(c) % self.p) * self.p ** i for i, c in enumerate(coeffs)))

    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.digits[a])

    def add(self, a, b):
        return ((self.digits[a] + self.digits[b]) % self.p) @ self._place

    def neg(self, a):
        return ((-self.digits[a]) % self.p) @ self._place

    def sub(self, a, b):
        return ((self.digits[a] - self.digits[b]) % self.p) @ self._place

    def mul(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        la = self.log[a]
        lb = self.log[b]
        out = self.exp[(la + lb) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self.exp[(-self.log[a]) % (self.q - 1)])

    def power(self, a: int, e: int) -> int:
        if a == 0:
            return 1 if e == 0 else 0
        return int(self.exp[(self.log[a] * e) % (self.q - 1)])

    @property
    def one(self) -> int:
        return 1

    def mul_matrix(self, c: int) -> list[list[int]]:
        """Matrix over F_p of multiplication by c (column j = c * x^j)."""
        cols = [self.coeffs(int(self.mul(c, self.p ** j))) for j in range(self.d)]
        return [[cols[j][i] for j in range(self.d)] for i in range(self.d)]

    def __call__(self, coeffs) -> "FieldElement":
        if isinstance(coeffs, (int, np.integer)):
            return FieldElement(self, int(coeffs) % self.q)
        return FieldElement(self, self.element(coeffs))


@dataclass(frozen=True)
class FieldElement:
    """Thin operator wrapper around a field label."""

    field: FieldSpec
    label: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.label)

    def _wrap(self, v) -> "FieldElement":
        return FieldElement(self.field, int(v))

    def __add__(self, o):
        return self._wrap(self.field.add(self.label, o.label))

    def __sub__(self, o):
        return self._wrap(self.field.sub(self.label, o.label))

    def __neg__(self):
        return self._wrap(self.field.neg(self.label))

    def __mul__(self, o):
        return self._wrap(self.field.mul(self.label, o.label))

    def __truediv__(self, o):
        return self._wrap(self.field.mul(self.label, self.field.inv(o.label)))

    def __pow__(self, e: int):
        return self._wrap(self.field.power(self.label, e))


def _prime_divisors(n: int) -> list[int]:
    return sorted(factorize(n)) if n > 1 else []


def _is_primitive_poly_elt(a: list[int], mod: list[int], p: int, q: int) -> bool:
    def pw(base, e):
        result = [1] + [0] * (len(mod) - 2)
        b = base
        while e:
            if e & 1:
                result = _poly_mulmod(result, b, mod, p)
            b = _poly_mulmod(b, b, mod, p)
            e >>= 1
        return result

    one = [1] + [0] * (len(mod) - 2)
    if not any(a):
        return False
    if pw(a, q - 1) != one:
        return False
    return all(pw(a, (q - 1) // r) != one for r in _prime_divisors(q - 1))


def make_field(p: int, d: int) -> FieldSpec:
    """GF(p^d) with lexicographically least irreducible modulus and primitive element.

    Polynomials and elements are compared by their coefficient vectors,
    constant term first.
    """
    if not is_prime(p) or d < 1:
        raise ValueError("need a prime p and d >= 1")
    q = p ** d
    if q > ORDER_CAP:
        raise BoundExceeded(f"field order {q} exceeds {ORDER_CAP}")
    place = [p ** i for i in range(d)]
    if d == 1:
        modulus = None
        omega = next(g for g in range(1, p) if
                     pow(g, p - 1, p) == 1 and all(pow(g, (p - 1) // r, p) != 1
                                                   for r in _prime_divisors(p - 1)))
        omega_c = [omega]
        mod_list = None
    else:
        for low in itertools.product(range(p), repeat=d):
            mod_list = list(low) + [1]
            if _is_irreducible(mod_list, p):
                modulus = tuple(low)
                break
        for cand in itertools.product(range(p), repeat=d):
            if _is_primitive_poly_elt(list(cand), mod_list, p, q):
                omega_c = list(cand)
                break
        omega = sum(c * w for c, w in zip(omega_c, place))
    exp = np.zeros(q - 1, dtype=np.int64)
    log = np.zeros(q, dtype=np.int64)
    cur = [1] + [0] * (d - 1)
    for i in range(q - 1):
        label = sum(c * w for c, w in zip(cur, place))
        exp[i] = label
        log[label] = i
        if d == 1:
            cur = [(cur[0] * omega) % p]
        else:
            cur = _poly_mulmod(cur, omega_c, mod_list, p)
    if len(set(exp.tolist())) != q - 1:
        raise AssertionError("primitive element search failed")
    exp.setflags(write=False)
    log.setflags(write=False)
    return FieldSpec(p, d, modulus, int(omega), exp, log)


def additive_group(F: FieldSpec) -> AbelianGroup:
    """(Z_p)^d, whose labels coincide with the field labels."""
    return make_abelian_group([F.p] * F.d)
