"""Explicit constructions of triple systems and their quasigroups.

Distributive side: affine Mendelsohn quasigroups over groups and Galois
fields, and their direct products covering every order whose primes
q = 2 (mod 3) occur to even powers.  Anti-distributive side: projective and
Netto Steiner systems and the doubling that turns an anti-mitre STS(u) into a
proper anti-distributive MTS(2u+1).
"""

from __future__ import annotations

import itertools
from typing import Iterable

import numpy as np

from .algebra import (AbelianGroup, GroupAutomorphism, additive_group, check_automorphism,
                      factorize, is_prime, is_root_of_f, make_abelian_group, make_field)
from .designs import OrientedTripleSystem, UnorderedTripleSystem, rotate, validate_mts, validate_sts
from .errors import (BoundExceeded, ConditionMViolated, ConsistencyFailure, InvalidSTS,
                     NotAutomorphism, NotBijective, NotHomomorphism, NotInSpectrum,
                     OrderNotOneModSix, OrderNotSevenModTwelve, PairCovered, BadOrder)
from .quasigroup import CayleyTable, direct_product, trivial

CONSTRUCT_CAP = 4096
SPECTRUM_CAP = 2**16


def _as_automorphism(G: AbelianGroup, k) -> GroupAutomorphism:
    if isinstance(k, GroupAutomorphism):
        if k.group != G:
            raise NotAutomorphism("automorphism belongs to a different group")
        return k
    if isinstance(k, (int, np.integer)):
        k = (int(k) * np.eye(G.rank, dtype=np.int64)).tolist()
    try:
        return check_automorphism(G, k)
    except (NotHomomorphism, NotBijective, ValueError) as exc:
        raise NotAutomorphism(str(exc)) from None


def affine_table(G: AbelianGroup, k) -> CayleyTable:
    """Aff(G, k): x * y = (I - k)(x) + k(y), for k and I - k automorphisms."""
    k = _as_automorphism(G, k)
    try:
        ik = k.one_minus()
    except NotBijective:
        raise NotAutomorphism("I - k is not an automorphism") from None
    return CayleyTable(G.add_table[ik.perm[:, None], k.perm[None, :]])


def affine_mendelsohn(G: AbelianGroup, k) -> CayleyTable:
    """Aff(G, k) for k with k^2 - k + I = 0, which makes it semisymmetric."""
    k = _as_automorphism(G, k)
    if not is_root_of_f(k):
        raise ConditionMViolated("k^2 - k + I is not zero")
    return affine_table(G, k)


def field_parameters(p: int, d: int) -> tuple[AbelianGroup, GroupAutomorphism]:
    """Additive group of GF(p^d) and multiplication by omega^s, p^d - 1 = 6s."""
    q = p ** d
    if q % 6 != 1:
        raise OrderNotOneModSix(f"{p}^{d} = {q} is not 1 mod 6")
    F = make_field(p, d)
    k = F.power(F.omega, (q - 1) // 6)
    G = additive_group(F)
    return G, check_automorphism(G, F.mul_matrix(k))


def field_mendelsohn(p: int, d: int) -> CayleyTable:
    return affine_mendelsohn(*field_parameters(p, d))


def char2_parameters(d: int) -> tuple[AbelianGroup, GroupAutomorphism]:
    """Additive group of GF(2^2d) and the cube root of unity omega^s, 2^2d - 1 = 3s."""
    if d < 1:
        raise ValueError("d must be at least 1")
    q = 4 ** d
    if q > CONSTRUCT_CAP:
        raise BoundExceeded(f"order {q} exceeds {CONSTRUCT_CAP}")
    F = make_field(2, 2 * d)
    k = F.power(F.omega, (q - 1) // 3)
    G = additive_group(F)
    return G, check_automorphism(G, F.mul_matrix(k))


def char2_mendelsohn(d: int) -> CayleyTable:
    return affine_mendelsohn(*char2_parameters(d))


def steiner_parameters(d: int) -> tuple[AbelianGroup, GroupAutomorphism]:
    if d < 1:
        raise ValueError("d must be at least 1")
    G = make_abelian_group([3] * d)
    return G, check_automorphism(G, (-np.eye(d, dtype=np.int64)).tolist())


def steiner_affine(d: int) -> CayleyTable:
    """Aff((Z_3)^d, -I): x o y = -x - y, the Steiner quasigroup of AG(d, 3)."""
    return affine_mendelsohn(*steiner_parameters(d))


# -- spectrum ---------------------------------------------------------------

def spectrum_offenders(v: int) -> list[tuple[int, int]]:
    """Prime powers q^e in v with q = 2 (mod 3) and e odd."""
    if v < 1:
        raise ValueError("v must be positive")
    return [(q, e) for q, e in sorted(factorize(v).items()) if q % 3 == 2 and e % 2]


def spectrum_member(v: int) -> bool:
    """Whether a distributive Mendelsohn quasigroup of order v exists."""
    if v > SPECTRUM_CAP:
        raise BoundExceeded(f"v = {v} exceeds {SPECTRUM_CAP}")
    return not spectrum_offenders(v)


def spectrum_plan(v: int) -> list[tuple[str, int, int]]:
    """Factor constructions used for v, one per prime power, in increasing order."""
    if not spectrum_member(v):
        q, e = spectrum_offenders(v)[0]
        raise NotInSpectrum(f"{v} has {q}^{e}, an odd power of a prime 2 mod 3")
    plan = []
    for q, e in sorted(factorize(v).items(), key=lambda t: t[0] ** t[1]):
        if q == 3:
            plan.append(("steiner", 3, e))
        elif q == 2:
            plan.append(("char2", 2, e // 2))
        else:
            plan.append(("field", q, e))
    return plan


def _plan_parameters(kind: str, q: int, e: int):
    if kind == "steiner":
        return steiner_parameters(e)
    if kind == "char2":
        return char2_parameters(e)
    return field_parameters(q, e)


def spectrum_construct(v: int) -> CayleyTable:
    """A medial Mendelsohn quasigroup of order v, as a product over prime powers."""
    plan = spectrum_plan(v)
    if v > CONSTRUCT_CAP:
        raise BoundExceeded(f"order {v} exceeds {CONSTRUCT_CAP}")
    Q = trivial()
    for kind, q, e in plan:
        Q = direct_product(Q, affine_mendelsohn(*_plan_parameters(kind, q, e)))
    return Q


# -- anti-mitre Steiner systems ---------------------------------------------

def projective_sts(n: int) -> UnorderedTripleSystem:
    """PG(n-1, 2): nonzero vectors of F_2^n (label = value - 1), blocks x + y + z = 0."""
    if n < 2:
        raise ValueError("n must be at least 2")
    v = 2 ** n - 1
    if v > CONSTRUCT_CAP:
        raise BoundExceeded(f"order {v} exceeds {CONSTRUCT_CAP}")
    blocks = {tuple(sorted((x - 1, y - 1, (x ^ y) - 1)))
              for x in range(1, v + 1) for y in range(x + 1, v + 1)}
    return validate_sts(v, blocks)


def netto_sts(p: int, d: int = 1) -> UnorderedTripleSystem:
    """Netto system of order p^d = 7 (mod 12); points are GF(p^d) labels."""
    if not is_prime(p) or d < 1:
        raise ValueError("need a prime p and d >= 1")
    q = p ** d
    if q % 12 != 7:
        raise OrderNotSevenModTwelve(f"{q} is not 7 mod 12")
    if q > CONSTRUCT_CAP:
        raise BoundExceeded(f"order {q} exceeds {CONSTRUCT_CAP}")
    F = make_field(p, d)
    s = (q - 7) // 12
    e1 = F.power(F.omega, 2 * s + 1)
    e2 = F.power(F.omega, 10 * s + 5)
    if int(F.mul(e1, e2)) != 1 or int(F.add(e1, e2)) != 1:
        raise ConsistencyFailure("epsilon identities fail")
    a, b = np.triu_indices(q, 1)
    fwd = F.sub(b, a)
    bwd = F.sub(a, b)
    fwd_even = F.log[fwd] % 2 == 0
    bwd_even = F.log[bwd] % 2 == 0
    if np.any(fwd_even == bwd_even):
        raise ConsistencyFailure("pair order is not a tournament")
    lo = np.where(fwd_even, a, b)   # lo < hi in the field order
    hi = np.where(fwd_even, b, a)
    third = F.add(F.mul(lo, e1), F.mul(hi, e2))
    blocks = {tuple(sorted(t)) for t in zip(a.tolist(), b.tolist(), third.tolist())}
    try:
        return validate_sts(q, blocks)
    except (PairCovered, BadOrder, ValueError) as exc:
        raise ConsistencyFailure(f"Netto blocks invalid: {exc}") from None


def anti_double(C: UnorderedTripleSystem,
                orientation: Iterable[Iterable[int]] | None = None) -> OrientedTripleSystem:
    """MTS(2u+1) on points 2a + j (a in C, j in {0, 1}) and infinity = 2u.

    Each block {a, b, c} of C is oriented <a, b, c> with a < b < c unless
    ``orientation`` supplies a cyclic order for it.  The result is proper, and
    it is anti-distributive whenever C is anti-mitre.
    """
    try:
        C = validate_sts(C.v, C.blocks)
    except (PairCovered, BadOrder, ValueError) as exc:
        raise InvalidSTS(str(exc)) from None
    chosen = {blk: blk for blk in C.blocks}
    for t in orientation or ():
        t = tuple(int(x) for x in t)
        key = tuple(sorted(t))
        if key not in chosen or len(set(t)) != 3:
            raise InvalidSTS(f"orientation {t} is not a block of the system")
        chosen[key] = t
    u = C.v
    inf = 2 * u
    out = []
    for a, b, c in chosen.values():
        a0, a1, b0, b1, c0, c1 = 2 * a, 2 * a + 1, 2 * b, 2 * b + 1, 2 * c, 2 * c + 1
        out += [(a0, b0, c0), (a1, b1, c0), (a1, b0, c1), (a0, b1, c1),
                (a0, c0, b1), (a0, c1, b0), (a1, c0, b0), (a1, c1, b1)]
    for x in range(u):
        out += [(inf, 2 * x, 2 * x + 1), (inf, 2 * x + 1, 2 * x)]
    return validate_mts(2 * u + 1, [rotate(b) for b in out])


def affine_plane_sts() -> UnorderedTripleSystem:
    """AG(2, 3), the unique STS(9)."""
    from .designs import quasigroup_to_sts
    return quasigroup_to_sts(steiner_affine(2))
