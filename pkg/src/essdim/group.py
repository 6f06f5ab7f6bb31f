"""Finite p-groups as dense multiplication tables over element indices.

Index 0 is always the identity.  Subgroups are canonical bitsets (Python
ints) over the parent's indices, so two subgroups of the same parent are
equal exactly when their bitsets are.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from sympy import isprime

from .errors import MixedParents, NotAGroup, NotAPGroup, NotNormal, OrderCapExceeded

ORDER_CAP = 4096
EXHAUSTIVE_ASSOC_LIMIT = 512
_CHUNK = 1 << 22


@dataclass(frozen=True)
class FieldDescriptor:
    """Base field data: k holds a primitive p^r-th root of unity, not p^(r+1)."""

    p: int
    r: int = 1

    def __post_init__(self):
        if not isprime(self.p):
            raise ValueError(f"p={self.p} is not prime")
        if self.r < 1:
            raise ValueError("r must be at least 1")

    @property
    def modulus(self) -> int:
        return self.p**self.r


def p_log(n: int, p: int) -> int | None:
    """Return a with n == p**a, or None."""
    a = 0
    while n > 1 and n % p == 0:
        n //= p
        a += 1
    return a if n == 1 else None


def _prime_of(n: int) -> int | None:
    if n == 1:
        return None
    for q in range(2, n + 1):
        if n % q == 0:
            return q if p_log(n, q) is not None else None
    return None


def bits_from_mask(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def mask_from_bits(bits: int, n: int) -> np.ndarray:
    raw = bits.to_bytes((n + 7) // 8, "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:n].astype(bool)


class FiniteGroup:
    """A finite p-group given by its full multiplication table.

    Use the module constructors (``from_cayley_table``, ``from_permutations``,
    ...) rather than calling this directly; they validate the table.
    """

    def __init__(self, mul: np.ndarray, inv: np.ndarray, generators: Sequence[int],
                 p: int, labels: Sequence[str] | None = None, name: str | None = None):
        self.mul = mul
        self.inv = inv
        self.order = int(mul.shape[0])
        self.generators = tuple(int(g) for g in generators)
        self.p = p
        self.labels = tuple(labels) if labels is not None else None
        self.name = name
        self.mul.setflags(write=False)
        self.inv.setflags(write=False)
        self._cache: dict = {}

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<FiniteGroup{tag} order={self.order} p={self.p}>"

    @property
    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.intp)

    def full(self) -> Subgroup:
        return Subgroup(self, (1 << self.order) - 1)

    def trivial(self) -> Subgroup:
        return Subgroup(self, 1)

    def subgroup_from_mask(self, mask: np.ndarray) -> Subgroup:
        return Subgroup(self, bits_from_mask(mask))

    def power(self, x, q: int) -> np.ndarray:
        """Elementwise x**q for an index array x."""
        x = np.asarray(x, dtype=np.intp)
        result = np.zeros_like(x)
        base = x
        while q:
            if q & 1:
                result = self.mul[result, base].astype(np.intp)
            q >>= 1
            if q:
                base = self.mul[base, base].astype(np.intp)
        return result

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.ones(self.order, dtype=np.int64)
        cur = self.elements
        while True:
            live = cur != 0
            if not live.any():
                return orders
            orders[live] *= self.p
            cur = self.power(cur, self.p)

    @cached_property
    def exponent(self) -> int:
        return int(self.element_orders.max())

    @cached_property
    def full_roots(self) -> int:
        """Smallest r such that Z/p^r carries every character of G."""
        return max(1, p_log(self.exponent, self.p) or 0)

    @cached_property
    def is_abelian(self) -> bool:
        g = list(self.generators)
        return bool(np.array_equal(self.mul[np.ix_(g, g)], self.mul[np.ix_(g, g)].T))

    def conjugate(self, elems, g: int) -> np.ndarray:
        """g * elems * g^-1."""
        return self.mul[self.mul[g, elems].astype(np.intp), self.inv[g]].astype(np.intp)


class Subgroup:
    """Subgroup of a FiniteGroup stored as a bitset over parent indices."""

    __slots__ = ("parent", "bits", "__dict__")

    def __init__(self, parent: FiniteGroup, bits: int):
        self.parent = parent
        self.bits = bits

    @cached_property
    def order(self) -> int:
        return self.bits.bit_count()

    @cached_property
    def mask(self) -> np.ndarray:
        m = mask_from_bits(self.bits, self.parent.order)
        m.setflags(write=False)
        return m

    @cached_property
    def members(self) -> np.ndarray:
        m = np.flatnonzero(self.mask).astype(np.intp)
        m.setflags(write=False)
        return m

    @property
    def index(self) -> int:
        return self.parent.order // self.order

    def __contains__(self, g: int) -> bool:
        return bool((self.bits >> int(g)) & 1)

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and other.parent is self.parent
                and other.bits == self.bits)

    def __hash__(self):
        return hash((id(self.parent), self.bits))

    def __le__(self, other: Subgroup) -> bool:
        _same_parent(self, other)
        return self.bits & ~other.bits == 0

    def __and__(self, other: Subgroup) -> Subgroup:
        _same_parent(self, other)
        return Subgroup(self.parent, self.bits & other.bits)

    def __repr__(self):
        return f"<Subgroup order={self.order} of {self.parent!r}>"

    @property
    def is_trivial(self) -> bool:
        return self.bits == 1

    def sort_key(self):
        return (self.order, tuple(self.members.tolist()))

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Greedy generating set, smallest indices first."""
        _, gens = _generate(self.parent, self.members)
        return tuple(gens)

    def is_normal(self) -> bool:
        G = self.parent
        mask = self.mask
        return all(mask[G.conjugate(self.members, g)].all() for g in G.generators)

    @cached_property
    def is_abelian(self) -> bool:
        g = list(self.generators)
        if len(g) < 2:
            return True
        block = self.parent.mul[np.ix_(g, g)]
        return bool(np.array_equal(block, block.T))


def _same_parent(a: Subgroup, b: Subgroup):
    if a.parent is not b.parent:
        raise MixedParents("subgroups belong to different groups")


def _generate(G: FiniteGroup, seeds: Iterable[int], mask: np.ndarray | None = None,
              gens: list[int] | None = None) -> tuple[np.ndarray, list[int]]:
    """Closure of ``seeds`` (plus an optional starting subgroup) under products.

    Only seeds that enlarge the running closure are kept as generators.
    """
    mul = G.mul
    if mask is None:
        mask = np.zeros(G.order, dtype=bool)
        mask[0] = True
        gens = []
    else:
        mask = mask.copy()
        gens = list(gens or [])
    elems = np.flatnonzero(mask).astype(np.intp)
    for s in seeds:
        s = int(s)
        if mask[s]:
            continue
        gens.append(s)
        g = np.asarray(gens, dtype=np.intp)
        frontier = elems
        while frontier.size:
            prods = np.unique(mul[frontier[:, None], g[None, :]])
            new = prods[~mask[prods]].astype(np.intp)
            if not new.size:
                break
            mask[new] = True
            frontier = new
            elems = np.concatenate([elems, new])
    return mask, gens


def _validate(mul: np.ndarray, p: int | None, exhaustive: bool) -> tuple[np.ndarray, list[int], int]:
    n = mul.shape[0]
    if mul.shape != (n, n) or n == 0:
        raise NotAGroup("table must be square and nonempty")
    if mul.min() < 0 or mul.max() >= n:
        raise NotAGroup("table entries out of range")
    if n > ORDER_CAP:
        raise OrderCapExceeded(f"order {n} exceeds cap {ORDER_CAP}")
    if p is None:
        p = _prime_of(n)
        if p is None:
            if n == 1:
                p = 2
            else:
                raise NotAPGroup(f"order {n} is not a prime power")
    elif p_log(n, p) is None:
        raise NotAPGroup(f"order {n} is not a power of {p}")
    idx = np.arange(n)
    if not (np.array_equal(mul[0], idx) and np.array_equal(mul[:, 0], idx)):
        raise NotAGroup("index 0 is not a two-sided identity")
    where = mul == 0
    if not (where.sum(axis=1) == 1).all():
        raise NotAGroup("some element has no unique right inverse")
    inv = where.argmax(axis=1)
    if not (mul[inv, idx] == 0).all():
        raise NotAGroup("right inverses are not left inverses")
    for axis in (0, 1):
        s = np.sort(mul, axis=axis)
        ref = idx[:, None] if axis == 0 else idx[None, :]
        if not (s == ref).all():
            raise NotAGroup("table is not a Latin square")
    G_tmp = FiniteGroup(mul, inv, [], p)
    mask, gens = _generate(G_tmp, range(n))
    if not mask.all():
        raise NotAGroup("products of elements do not close")
    _check_associative(mul, gens, exhaustive)
    return inv, gens, p


def _check_associative(mul: np.ndarray, gens: list[int], exhaustive: bool):
    n = mul.shape[0]
    if exhaustive:
        for a in range(n):
            # (a b) c vs a (b c) for all b, c
            if not np.array_equal(mul[mul[a]], mul[a][mul]):
                raise NotAGroup(f"associativity fails with left factor {a}")
        return
    # Light's test: (x y) g == x (y g) for all x, y and every generator g.
    for g in gens:
        lhs = mul[mul, g]
        rhs = mul[:, mul[:, g]]
        if not np.array_equal(lhs, rhs):
            raise NotAGroup(f"associativity fails at generator {g}")


def _table_dtype(n: int):
    return np.uint16 if n <= 65535 else np.uint32


def _make_group(mul: np.ndarray, p: int | None = None, labels=None, name=None,
                exhaustive: bool | None = None) -> FiniteGroup:
    mul = np.ascontiguousarray(mul, dtype=_table_dtype(mul.shape[0]))
    n = mul.shape[0]
    if exhaustive is None:
        exhaustive = n <= EXHAUSTIVE_ASSOC_LIMIT
    inv, gens, p = _validate(mul, p, exhaustive)
    return FiniteGroup(mul, inv.astype(mul.dtype), gens, p, labels=labels, name=name)


def from_cayley_table(table, p: int, labels=None, name=None) -> FiniteGroup:
    """Validate a Cayley table (row g, column h holds g*h) and wrap it."""
    mul = np.asarray(table, dtype=np.int64)
    if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.size == 0:
        raise NotAGroup("table must be square and nonempty")
    if mul.min() < 0 or mul.max() >= mul.shape[0]:
        raise NotAGroup("table entries out of range")
    if mul.shape[0] > ORDER_CAP:
        raise OrderCapExceeded(f"order {mul.shape[0]} exceeds cap {ORDER_CAP}")
    if p_log(mul.shape[0], p) is None:
        raise NotAPGroup(f"order {mul.shape[0]} is not a power of {p}")
    return _make_group(mul, p, labels=labels, name=name)


def _void_rows(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    return a.view(np.dtype((np.void, a.dtype.itemsize * a.shape[1]))).ravel()


def table_from_elements(elements: Sequence, op) -> np.ndarray:
    """Multiplication table of an explicit element list (identity first)."""
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    mul = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            mul[i, j] = index[op(a, b)]
    return mul


def _perm_closure(degree: int, gens: Sequence[Sequence[int]], cap: int) -> list[tuple[int, ...]]:
    """Breadth-first closure of permutation generators, identity first."""
    ident = tuple(range(degree))
    gen_t = []
    for g in gens:
        g = tuple(int(x) for x in g)
        if sorted(g) != list(ident):
            raise NotAGroup(f"{g} is not a permutation of {degree} points")
        gen_t.append(g)
    elements = [ident]
    index = {ident: 0}
    i = 0
    while i < len(elements):
        x = elements[i]
        for g in gen_t:
            y = tuple(g[v] for v in x)
            if y not in index:
                if len(elements) >= cap:
                    raise OrderCapExceeded(f"closure exceeds order cap {cap}")
                index[y] = len(elements)
                elements.append(y)
        i += 1
    return elements


def _perm_table(degree: int, elements: Sequence[Sequence[int]]) -> np.ndarray:
    """Table of a closed permutation set; the product a*h applies a, then h."""
    n = len(elements)
    dtype = np.uint8 if degree <= 255 else np.uint16
    P = np.array(elements, dtype=dtype).reshape(n, degree)
    keys = _void_rows(P)
    order = np.argsort(keys)
    sorted_keys = keys[order]
    mul = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        comp = P[:, P[a]]
        pos = np.searchsorted(sorted_keys, _void_rows(comp))
        pos = np.minimum(pos, n - 1)
        if not np.array_equal(sorted_keys[pos], _void_rows(comp)):
            raise NotAGroup("permutation set is not closed")
        mul[a] = order[pos]
    return mul


def from_permutations(degree: int, gens: Sequence[Sequence[int]], p: int | None = None,
                      cap: int = ORDER_CAP, name=None, labels: bool = False) -> FiniteGroup:
    """Group generated by permutations given as 0-based image lists.

    The product g*h means "apply g, then h".  Elements are numbered in
    breadth-first discovery order with the identity first.
    """
    elements = _perm_closure(degree, gens, cap)
    n = len(elements)
    if p is not None and p_log(n, p) is None:
        raise NotAPGroup(f"order {n} is not a power of {p}")
    if p is None and n > 1 and _prime_of(n) is None:
        raise NotAPGroup(f"order {n} is not a prime power")
    mul = _perm_table(degree, elements)
    lab = [_cycle_string(e) for e in elements] if labels else None
    G = _make_group(mul, p, labels=lab, name=name)
    G._cache["perm_images"] = np.array(elements, dtype=np.int64).reshape(n, degree)
    return G


def _cycle_string(perm: Sequence[int]) -> str:
    seen, out = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(str(x + 1))
            x = perm[x]
        out.append("(" + " ".join(cyc) + ")")
    return "".join(out) or "()"


def perm_from_cycles(degree: int, cycles: Sequence[Sequence[int]]) -> list[int]:
    """0-based image list from 1-based cycles."""
    img = list(range(degree))
    for cyc in cycles:
        cyc = [c - 1 for c in cyc]
        if any(c < 0 or c >= degree for c in cyc):
            raise ValueError(f"cycle {cyc} out of range for degree {degree}")
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a] = b
    return img


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """G x H with element (g, h) at index g*|H| + h."""
    if G.p != H.p and G.order > 1 and H.order > 1:
        raise NotAPGroup(f"mixed primes {G.p} and {H.p}")
    p = G.p if G.order > 1 else H.p
    n, m = G.order, H.order
    if n * m > ORDER_CAP:
        raise OrderCapExceeded(f"order {n * m} exceeds cap {ORDER_CAP}")
    gm = G.mul.astype(np.int64)
    hm = H.mul.astype(np.int64)
    mul = (gm[:, None, :, None] * m + hm[None, :, None, :]).reshape(n * m, n * m)
    labels = None
    if G.labels and H.labels:
        labels = [f"({a},{b})" for a in G.labels for b in H.labels]
    return _make_group(mul, p, labels=labels, exhaustive=False)


def subgroup_closure(G: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    seed = [int(s) for s in seed]
    for s in seed:
        if not 0 <= s < G.order:
            raise IndexError(f"element {s} out of range")
    mask, _ = _generate(G, seed)
    return G.subgroup_from_mask(mask)


def subgroup_from_elements(G: FiniteGroup, elems: Iterable[int]) -> Subgroup:
    """Subgroup with exactly these members; checks closure."""
    mask = np.zeros(G.order, dtype=bool)
    mask[list(elems)] = True
    sub = G.subgroup_from_mask(mask)
    if not is_subgroup_mask(G, mask):
        raise NotAGroup("element set is not closed")
    return sub


def is_subgroup_mask(G: FiniteGroup, mask: np.ndarray) -> bool:
    m = np.flatnonzero(mask)
    if not mask[0]:
        return False
    return bool(mask[G.mul[m[:, None], m[None, :]]].all() and mask[G.inv[m]].all())


def center(G: FiniteGroup) -> Subgroup:
    gens = list(G.generators)
    if not gens:
        return G.full()
    mask = (G.mul[:, gens] == G.mul[gens, :].T).all(axis=1)
    return G.subgroup_from_mask(mask)


def _unique_products(G: FiniteGroup, left: np.ndarray, right: np.ndarray, fn) -> np.ndarray:
    """Distinct values fn(a, b) over a in left, b in right, chunked by rows."""
    out = np.zeros(G.order, dtype=bool)
    step = max(1, _CHUNK // max(1, right.size))
    for s in range(0, left.size, step):
        vals = fn(left[s:s + step, None], right[None, :])
        out[vals.ravel()] = True
    return np.flatnonzero(out)


def commutators(G: FiniteGroup, A: Subgroup, B: Subgroup) -> np.ndarray:
    """Distinct values of [a, b] = a b a^-1 b^-1."""
    mul, inv = G.mul, G.inv

    def comm(a, b):
        return mul[mul[a, b], mul[inv[a], inv[b]]]

    return _unique_products(G, A.members, B.members, comm)


def commutator_subgroup(G: FiniteGroup, A: Subgroup, B: Subgroup) -> Subgroup:
    return subgroup_closure(G, commutators(G, A, B))


def derived_subgroup(G: FiniteGroup, H: Subgroup | None = None) -> Subgroup:
    H = H if H is not None else G.full()
    return commutator_subgroup(G, H, H)


def power_subgroup(G: FiniteGroup, H: Subgroup, q: int) -> Subgroup:
    if q < 1:
        raise ValueError("q must be positive")
    vals = np.unique(G.power(H.members, q))
    return subgroup_closure(G, vals)


def h_prime(G: FiniteGroup, H: Subgroup, field: FieldDescriptor) -> Subgroup:
    """Common kernel of all homomorphisms H -> Z/p^r, i.e. [H,H] * H^(p^r)."""
    if field.p != G.p and G.order > 1:
        raise ValueError(f"field prime {field.p} differs from group prime {G.p}")
    key = ("h_prime", H.bits, field.r)
    hit = G._cache.get(key)
    if hit is not None:
        return hit
    if H.is_abelian:
        comm = np.zeros(0, dtype=np.intp)
    else:
        comm = commutators(G, H, H)
    pows = np.unique(G.power(H.members, field.modulus))
    res = subgroup_closure(G, np.concatenate([comm, pows]))
    G._cache[key] = res
    return res


def derived_series(G: FiniteGroup, i: int) -> Subgroup:
    if i < 0:
        raise ValueError("i must be nonnegative")
    H = G.full()
    for _ in range(i):
        if H.is_trivial:
            break
        H = derived_subgroup(G, H)
    return H


@dataclass(frozen=True, eq=False)
class ElementaryAbelianView:
    """An elementary abelian subgroup with a fixed F_p-basis."""

    subgroup: Subgroup
    basis: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def _coords(self) -> dict[int, tuple[int, ...]]:
        G = self.subgroup.parent
        p = G.p
        table = {0: (0,) * self.dim}
        for j, b in enumerate(self.basis):
            nxt = {}
            for x, c in table.items():
                y = x
                for k in range(p):
                    cc = list(c)
                    cc[j] = k
                    nxt[y] = tuple(cc)
                    y = int(G.mul[y, b])
            table = nxt
        return table

    def coords(self, g: int) -> tuple[int, ...]:
        return self._coords[int(g)]

    def element(self, coords: Sequence[int]) -> int:
        G = self.subgroup.parent
        x = 0
        for b, c in zip(self.basis, coords):
            x = int(G.mul[x, int(G.power([b], int(c) % G.p)[0])])
        return x

    def dim_of(self, sub: Subgroup) -> int:
        """F_p-dimension of sub intersected with this space."""
        from .fp import rank

        inter = sub & self.subgroup
        rows = [self.coords(g) for g in inter.members]
        return rank(rows, self.subgroup.parent.p) if self.dim else 0


def p_torsion_center(G: FiniteGroup) -> ElementaryAbelianView:
    key = "p_torsion_center"
    if key in G._cache:
        return G._cache[key]
    C = center(G)
    members = C.members
    torsion = members[G.power(members, G.p) == 0]
    sub = subgroup_from_elements(G, torsion)
    basis: list[int] = []
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    for z in torsion:
        if not mask[z]:
            basis.append(int(z))
            mask, _ = _generate(G, basis)
    view = ElementaryAbelianView(sub, tuple(basis))
    G._cache[key] = view
    return view


def promote(G: FiniteGroup, H: Subgroup) -> tuple[FiniteGroup, np.ndarray]:
    """H as a standalone group, plus embed[i] = parent index of element i."""
    key = ("promote", H.bits)
    if key in G._cache:
        return G._cache[key]
    m = H.members
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[m] = np.arange(m.size)
    mul = pos[G.mul[m[:, None], m[None, :]]]
    labels = [G.labels[i] for i in m] if G.labels else None
    sub = _make_group(mul, G.p, labels=labels, exhaustive=False)
    res = (sub, m.copy())
    G._cache[key] = res
    return res


def quotient(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, np.ndarray]:
    """G/N with cosets labelled by least member; returns (group, projection)."""
    if N.parent is not G:
        raise MixedParents("N is not a subgroup of G")
    if not N.is_normal():
        raise NotNormal("subgroup is not normal")
    key = ("quotient", N.bits)
    if key in G._cache:
        return G._cache[key]
    nm = N.members
    reps = np.empty(G.order, dtype=np.int64)
    step = max(1, _CHUNK // nm.size)
    for s in range(0, G.order, step):
        reps[s:s + step] = G.mul[s:s + step][:, nm].min(axis=1)
    uniq = np.unique(reps)
    label = np.full(G.order, -1, dtype=np.int64)
    label[uniq] = np.arange(uniq.size)
    proj = label[reps]
    mul = proj[G.mul[uniq[:, None], uniq[None, :]]]
    Q = _make_group(mul, G.p, exhaustive=False)
    res = (Q, proj)
    G._cache[key] = res
    return res


def is_p_group_order(n: int, p: int) -> bool:
    return p_log(n, p) is not None
