"""Constructors for the named group families."""

from __future__ import annotations

from functools import reduce
from typing import Sequence

import numpy as np

from .errors import NotAGroup, NotAPGroup, OrderCapExceeded
from .group import (
    ORDER_CAP,
    FiniteGroup,
    Subgroup,
    _make_group,
    _perm_closure,
    _perm_table,
    center,
    derived_subgroup,
    direct_product,
    from_permutations,
    p_log,
    quotient,
    subgroup_closure,
)


def _cap(n: int):
    if n > ORDER_CAP:
        raise OrderCapExceeded(f"order {n} exceeds cap {ORDER_CAP}")


def _prime_of_powers(orders: Sequence[int]) -> int:
    primes = set()
    for q in orders:
        if q < 2:
            raise ValueError(f"cyclic factor order {q} must be at least 2")
        for p in range(2, q + 1):
            if q % p == 0:
                break
        if p_log(q, p) is None:
            raise NotAPGroup(f"{q} is not a prime power")
        primes.add(p)
    if len(primes) > 1:
        raise NotAPGroup(f"mixed primes {sorted(primes)}")
    return primes.pop()


def abelian(orders: Sequence[int], name: str | None = None) -> FiniteGroup:
    """Direct sum Z/q_1 + ... + Z/q_k, mixed-radix indexed (first factor slowest)."""
    orders = [int(q) for q in orders]
    if not orders:
        return _make_group(np.zeros((1, 1), dtype=np.int64), 2, name=name or "trivial")
    p = _prime_of_powers(orders)
    n = int(np.prod(orders))
    _cap(n)
    idx = np.arange(n)
    digits = []
    rest = idx.copy()
    for q in reversed(orders):
        digits.append(rest % q)
        rest //= q
    digits.reverse()
    mul = np.zeros((n, n), dtype=np.int64)
    for q, d in zip(orders, digits):
        mul = mul * q + (d[:, None] + d[None, :]) % q
    return _make_group(mul, p, name=name or f"abelian{tuple(orders)}")


def cyclic(q: int) -> FiniteGroup:
    return abelian([q], name=f"Z/{q}")


def _metacyclic(n: int, twist: int, b_square: int, name: str) -> FiniteGroup:
    """<a, b | a^(n/2), b^2 = a^b_square, b a b^-1 = a^twist>, element a^i b^j at i + m*j."""
    _cap(n)
    m = n // 2
    idx = np.arange(n)
    i, j = idx % m, idx // m
    tj = np.where(j == 1, twist % m, 1)
    new_i = i[:, None] + tj[:, None] * i[None, :] + np.where((j[:, None] + j[None, :]) == 2, b_square, 0)
    new_j = (j[:, None] + j[None, :]) % 2
    mul = (new_i % m) + m * new_j
    return _make_group(mul, 2, name=name)


def _two_power(n: int, minimum: int, what: str) -> int:
    k = p_log(n, 2)
    if k is None or n < minimum:
        raise ValueError(f"{what}({n}) needs a power of 2 that is at least {minimum}")
    return k


def dihedral(n: int) -> FiniteGroup:
    _two_power(n, 8, "dihedral")
    return _metacyclic(n, -1, 0, f"D{n}")


def quaternion(n: int) -> FiniteGroup:
    _two_power(n, 8, "quaternion")
    return _metacyclic(n, -1, n // 4, f"Q{n}")


def semidihedral(n: int) -> FiniteGroup:
    _two_power(n, 16, "semidihedral")
    return _metacyclic(n, n // 4 - 1, 0, f"SD{n}")


def modular(n: int) -> FiniteGroup:
    _two_power(n, 16, "modular")
    return _metacyclic(n, n // 4 + 1, 0, f"M{n}")


EXTRASPECIAL_TYPES = {"+": "+", "-": "-", "d8": "+", "q8": "-", "p": "p", "p2": "p2"}


def extraspecial(p: int, m: int, kind: str) -> FiniteGroup:
    """Extraspecial group of order p^(2m+1) as a central extension of F_p^(2m).

    Elements are triples (a, b, c) with a, b in F_p^m and c in Z/p, multiplied by
    (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a.b'+extra).  For p = 2 the extra term
    selects the quadratic form: none for "+" (D8 central products), x1 x1' + y1 y1'
    for "-" (one Q8 factor).  For odd p, "p" has no extra term (exponent p) and
    "p2" adds the carry of a_1, making (e_1, 0, 0) of order p^2.
    """
    key = EXTRASPECIAL_TYPES.get(str(kind).lower())
    if key is None:
        raise ValueError(f"unknown extraspecial type {kind!r}")
    if m < 1:
        raise ValueError("m must be at least 1")
    if p == 2 and key not in "+-":
        raise ValueError("for p = 2 the type is '+' (D8) or '-' (Q8)")
    if p != 2 and key in "+-":
        raise ValueError("for odd p the type is 'p' or 'p2'")
    n = p ** (2 * m + 1)
    _cap(n)
    idx = np.arange(n)
    c = idx % p
    rest = idx // p
    b = np.empty((n, m), dtype=np.int64)
    a = np.empty((n, m), dtype=np.int64)
    for k in range(m):
        b[:, k] = rest % p
        rest //= p
    for k in range(m):
        a[:, k] = rest % p
        rest //= p
    mul = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        aa = (a[x] + a) % p
        bb = (b[x] + b) % p
        cc = c[x] + c + (b * a[x]).sum(axis=1)
        if key == "-":
            cc = cc + a[x, 0] * a[:, 0] + b[x, 0] * b[:, 0]
        elif key == "p2":
            cc = cc + ((a[x, 0] + a[:, 0]) >= p)
        code = np.zeros(n, dtype=np.int64)
        for k in reversed(range(m)):
            code = code * p + aa[:, k]
        for k in reversed(range(m)):
            code = code * p + bb[:, k]
        mul[x] = code * p + cc % p
    label = {"+": "+", "-": "-", "p": "exp p", "p2": "exp p^2"}[key]
    G = _make_group(mul, p, name=f"extraspecial({p},{m},{label})")
    _check_extraspecial(G)
    return G


def _check_extraspecial(G: FiniteGroup):
    C = center(G)
    if C.order != G.p:
        raise NotAGroup(f"{G.name}: center has order {C.order}, expected {G.p}")
    Q, _ = quotient(G, C)
    if not Q.is_abelian or Q.exponent > G.p:
        raise NotAGroup(f"{G.name}: central quotient is not elementary abelian")


def heisenberg(p: int) -> FiniteGroup:
    if p == 2:
        return extraspecial(2, 1, "+")
    return extraspecial(p, 1, "p")


def power(G: FiniteGroup, n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("n must be positive")
    return reduce(direct_product, [G] * n)


def tuple_index(G: FiniteGroup, entries: Sequence[int]) -> int:
    """Index in G^n (built by repeated direct_product) of a tuple of G-elements."""
    idx = 0
    for e in entries:
        idx = idx * G.order + int(e)
    return idx


def product_one_subgroup(G: FiniteGroup, n: int, Gn: FiniteGroup) -> Subgroup:
    """{(c_1..c_n) in C(G)^n : c_1...c_n = 1} inside Gn = G^n; needs C(G) cyclic."""
    C = center(G)
    gens = C.generators
    if len(gens) > 1:
        raise NotAGroup("center is not cyclic")
    if not gens:
        return Gn.trivial()
    z = gens[0]
    zinv = int(G.inv[z])
    seeds = []
    for i in range(n - 1):
        entries = [0] * n
        entries[i], entries[i + 1] = z, zinv
        seeds.append(tuple_index(G, entries))
    return subgroup_closure(Gn, seeds)


def quotient_center_diag(G: FiniteGroup, n: int) -> FiniteGroup:
    """G^n modulo the product-one subgroup of C(G)^n."""
    Gn = power(G, n)
    H = product_one_subgroup(G, n, Gn)
    Q, _ = quotient(Gn, H)
    Q.name = f"quotientCenterDiag({G.name},{n})"
    return Q


def gamma_power_quotient(gamma: FiniteGroup, n: int) -> FiniteGroup:
    """Gamma^n / H_n for a nonabelian Gamma of order p^3; checked extraspecial."""
    p = gamma.p
    if gamma.order != p**3 or derived_subgroup(gamma).is_trivial:
        raise NotAGroup("Gamma must be nonabelian of order p^3")
    _cap(gamma.order ** n)
    Q = quotient_center_diag(gamma, n)
    Q.name = f"gammaQ({gamma.name},{n})"
    if Q.order != p ** (2 * n + 1):
        raise NotAGroup(f"quotient has order {Q.order}, expected p^{2 * n + 1}")
    _check_extraspecial(Q)
    return Q


def _wreath_gens(offset: int, k: int) -> list[list[tuple[int, int]]]:
    """Transposition-pair generators of the iterated wreath product on 2^k points."""
    if k == 0:
        return []
    half = 1 << (k - 1)
    gens = _wreath_gens(offset, k - 1)
    swap = [(offset + i, offset + half + i) for i in range(half)]
    return gens + [swap]


def sylow2_generators(n: int) -> list[list[int]]:
    gens = []
    offset = 0
    for k in reversed(range(n.bit_length())):
        if n >> k & 1:
            for pairs in _wreath_gens(offset, k):
                img = list(range(n))
                for a, b in pairs:
                    img[a], img[b] = b, a
                gens.append(img)
            offset += 1 << k
    return gens


def sylow2_sym(n: int) -> FiniteGroup:
    """A Sylow 2-subgroup of S_n acting on n points."""
    if n < 1:
        raise ValueError("n must be positive")
    G = from_permutations(n, sylow2_generators(n), p=2, name=f"P{n}")
    return G


def _sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    s = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def _signed_det(img: Sequence[int], n: int) -> int:
    """det of the signed permutation matrix on points 0..n-1 (+e_i) and n..2n-1 (-e_i)."""
    tau = [x % n for x in img[:n]]
    eps = 1
    for x in img[:n]:
        if x >= n:
            eps = -eps
    return eps * _sign(tau)


def _signed_gens(n: int) -> list[list[int]]:
    gens = []
    for i in range(n):
        img = list(range(2 * n))
        img[i], img[n + i] = n + i, i
        gens.append(img)
    for tau in sylow2_generators(n):
        gens.append([tau[i] for i in range(n)] + [n + tau[i] for i in range(n)])
    return gens


def signed_perm_F(n: int) -> FiniteGroup:
    """Kernel of det on mu_2^n x| P_n, realized on the 2n points +-e_i."""
    if n < 1:
        raise ValueError("n must be positive")
    elems = _perm_closure(2 * n, _signed_gens(n), cap=2 * ORDER_CAP)
    kernel = [e for e in elems if _signed_det(e, n) == 1]
    _cap(len(kernel))
    mul = _perm_table(2 * n, kernel)
    G = _make_group(mul, 2, name=f"F{n}")
    G._cache["signed_images"] = np.array(kernel, dtype=np.int64)
    G._cache["signed_n"] = n
    return G


def signed_matrix(G: FiniteGroup, g: int) -> np.ndarray:
    """The n x n signed permutation matrix of element g of signed_perm_F(n)."""
    n = G._cache["signed_n"]
    img = G._cache["signed_images"][g]
    M = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        M[img[i] % n, i] = 1 if img[i] < n else -1
    return M


def diag_subgroup_D(G: FiniteGroup) -> Subgroup:
    """Diagonal (trivial permutation part) elements of signed_perm_F(n)."""
    n = G._cache["signed_n"]
    img = G._cache["signed_images"][:, :n]
    mask = ((img % n) == np.arange(n)[None, :]).all(axis=1)
    return G.subgroup_from_mask(mask)


def embed_signed_product(Gm: FiniteGroup, Gn: FiniteGroup, Gmn: FiniteGroup) -> Subgroup:
    """Image of F_m x F_n in F_(m+n) acting block-diagonally."""
    m, n = Gm._cache["signed_n"], Gn._cache["signed_n"]
    total = Gmn._cache["signed_n"]
    if m + n != total:
        raise ValueError("block sizes do not add up")
    lookup = {tuple(row): i for i, row in enumerate(Gmn._cache["signed_images"].tolist())}

    def lift(img, shift, size):
        out = {}
        for i in range(size):
            x = img[i]
            tgt = x % size + shift
            out[i + shift] = tgt if x < size else tgt + total
        return out

    members = []
    for a in Gm._cache["signed_images"].tolist():
        for b in Gn._cache["signed_images"].tolist():
            pos = {**lift(a, 0, m), **lift(b, m, n)}
            full = [pos[i] for i in range(total)]
            full += [(x + total) % (2 * total) for x in full]
            key = tuple(full)
            if key not in lookup:
                raise NotAGroup("block element missing from F_(m+n)")
            members.append(lookup[key])
    mask = np.zeros(Gmn.order, dtype=bool)
    mask[members] = True
    return Gmn.subgroup_from_mask(mask)
