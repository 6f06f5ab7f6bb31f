"""Linear characters, monomial irreducibles, and minimal faithful representations.

Characters take values in the additive group Z/p^r.  When k holds all the
p-power roots of unity of exponent dividing exp(G), irreducibility of an
induced representation is Mackey's criterion.  With fewer roots it is
decided by the exact character layer in ``characters``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import fp
from .errors import FlagBasisIncomplete, NotAbelian, OrderCapExceeded
from .group import (
    FieldDescriptor,
    FiniteGroup,
    Subgroup,
    _generate,
    h_prime,
    p_log,
    p_torsion_center,
    promote,
    quotient,
)
from .lattice import iter_subgroups_of_index

ORACLE_CAP = 256


def abelian_basis(A) -> list[tuple[int, int]]:
    """Independent generators of an abelian p-group with descending orders.

    Accepts a FiniteGroup or a Subgroup; elements are returned as indices of
    the group passed in (the parent, for a Subgroup).  Each step adjoins an
    element of largest order modulo the current span, lifted inside its coset
    to an element of that same order, which keeps the sum direct.
    """
    if isinstance(A, Subgroup):
        G, members = A.parent, A.members
        if not A.is_abelian:
            raise NotAbelian("abelian_basis needs an abelian group")
    else:
        G, members = A, A.elements
        if not A.is_abelian:
            raise NotAbelian("abelian_basis needs an abelian group")
    p = G.p
    span = np.zeros(G.order, dtype=bool)
    span[0] = True
    gens: list[int] = []
    basis: list[tuple[int, int]] = []
    target = members.size
    size = 1
    while size < target:
        # order of each member modulo the span
        rel = np.ones(members.size, dtype=np.int64)
        cur = members.copy()
        pending = ~span[cur]
        while pending.any():
            rel[pending] *= p
            cur = G.power(cur, p)
            pending &= ~span[cur]
        k = int(np.argmax(rel))
        o = int(rel[k])
        x = int(members[k])
        coset = G.mul[x, np.flatnonzero(span)]
        orders = G.element_orders[coset]
        y = int(coset[np.flatnonzero(orders == o)[0]])
        basis.append((y, o))
        span, gens = _generate(G, [y], span, gens)
        size *= o
    return basis


def _coordinates(G: FiniteGroup, basis: list[tuple[int, int]]) -> np.ndarray:
    """Exponent vectors of every element of G in an abelian basis."""
    elems = np.zeros(1, dtype=np.intp)
    vecs = np.zeros((1, len(basis)), dtype=np.int64)
    for j, (b, o) in enumerate(basis):
        layers_e, layers_v = [elems], [vecs]
        cur = elems
        for k in range(1, o):
            cur = G.mul[cur, b].astype(np.intp)
            v = vecs.copy()
            v[:, j] = k
            layers_e.append(cur)
            layers_v.append(v)
        elems = np.concatenate(layers_e)
        vecs = np.concatenate(layers_v)
    coords = np.zeros((G.order, len(basis)), dtype=np.int64)
    coords[elems] = vecs
    return coords


def character_matrix(G: FiniteGroup, H: Subgroup, field: FieldDescriptor) -> np.ndarray:
    """Every homomorphism H -> Z/p^r as a row of length |G| (-1 outside H),
    rows in lexicographic order of their values on H."""
    key = ("chars", H.bits, field.r)
    hit = G._cache.get(key)
    if hit is not None:
        return hit
    q = field.modulus
    Hg, embed = promote(G, H)
    hp = h_prime(G, H, field)
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[embed] = np.arange(embed.size)
    inner_mask = np.zeros(Hg.order, dtype=bool)
    inner_mask[pos[hp.members]] = True
    Q, proj = quotient(Hg, Hg.subgroup_from_mask(inner_mask))
    basis = abelian_basis(Q) if Q.order > 1 else []
    coords = _coordinates(Q, basis)[proj]  # per member of H
    if basis:
        choices = [range(0, q, q // o) for _, o in basis]
        vs = np.array(list(itertools.product(*choices)), dtype=np.int64)
        vals = (vs @ coords.T) % q
    else:
        vals = np.zeros((1, embed.size), dtype=np.int64)
    order = np.lexsort(vals.T[::-1])
    vals = vals[order]
    rows = np.full((vals.shape[0], G.order), -1, dtype=np.int64)
    rows[:, embed] = vals
    rows.setflags(write=False)
    G._cache[key] = rows
    return rows


@dataclass(frozen=True, eq=False)
class LinearCharacter:
    domain: Subgroup
    modulus: int
    values: np.ndarray  # length |G|, -1 outside the domain

    def __call__(self, g: int) -> int:
        v = int(self.values[g])
        if v < 0:
            raise ValueError(f"element {g} is outside the domain")
        return v

    def kernel(self) -> Subgroup:
        G = self.domain.parent
        return G.subgroup_from_mask(self.values == 0)

    def on_generators(self) -> list[int]:
        return [int(self.values[g]) for g in self.domain.generators]

    def key(self):
        return (self.domain.sort_key(), tuple(int(v) for v in self.values[self.domain.members]))

    def __eq__(self, other):
        return (isinstance(other, LinearCharacter) and self.domain == other.domain
                and self.modulus == other.modulus and np.array_equal(self.values, other.values))

    def __hash__(self):
        return hash((self.domain, self.modulus, self.values.tobytes()))


def linear_characters(G: FiniteGroup, H: Subgroup, field: FieldDescriptor) -> list[LinearCharacter]:
    rows = character_matrix(G, H, field)
    return [LinearCharacter(H, field.modulus, row) for row in rows]


def _field_of(G: FiniteGroup, lam: LinearCharacter) -> FieldDescriptor:
    return FieldDescriptor(G.p, p_log(lam.modulus, G.p))


def _splits(G: FiniteGroup, field: FieldDescriptor) -> bool:
    return G.order == 1 or field.r >= G.full_roots


def _irreducible_rows(G: FiniteGroup, H: Subgroup, rows: np.ndarray, field: FieldDescriptor) -> np.ndarray:
    from .characters import _mackey_mask, is_k_irreducible

    if rows.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    if not p_torsion_center(G).subgroup <= H:
        return np.zeros(rows.shape[0], dtype=bool)
    if H.order == G.order:
        return np.ones(rows.shape[0], dtype=bool)
    if _splits(G, field):
        return _mackey_mask(G, H, rows)
    return np.array([is_k_irreducible(G, H, row, field) for row in rows], dtype=bool)


def is_induced_irreducible(G: FiniteGroup, H: Subgroup, lam: LinearCharacter,
                           field: FieldDescriptor | None = None) -> bool:
    """Whether ind_H^G lam is irreducible over k.

    With enough roots of unity this is Mackey's test: every g outside H must
    move lam on H meet gHg^-1.
    """
    field = field or _field_of(G, lam)
    return bool(_irreducible_rows(G, H, lam.values[None, :], field)[0])


def normal_core(G: FiniteGroup, K: Subgroup) -> Subgroup:
    bits = K.bits
    while True:
        new = bits
        for g in G.generators:
            conj = Subgroup(G, bits).members
            img = G.mul[G.mul[g, conj], G.inv[g]]
            mask = np.zeros(G.order, dtype=bool)
            mask[img] = True
            new &= G.subgroup_from_mask(mask).bits
        if new == bits:
            return Subgroup(G, bits)
        bits = new


def kernel_of_induced(G: FiniteGroup, H: Subgroup, lam: LinearCharacter) -> Subgroup:
    """ker(ind_H^G lam): the normal core of ker(lam)."""
    key = ("core", lam.kernel().bits)
    hit = G._cache.get(key)
    if hit is None:
        hit = normal_core(G, lam.kernel())
        G._cache[key] = hit
    return hit


@dataclass(frozen=True)
class DualVector:
    coords: tuple[int, ...]

    def is_zero(self) -> bool:
        return not any(self.coords)


def central_character(G: FiniteGroup, lam: LinearCharacter) -> DualVector:
    """lam restricted to C(G)_p as coordinates in the dual of the fixed basis."""
    view = p_torsion_center(G)
    step = lam.modulus // G.p
    return DualVector(tuple(lam(c) // step for c in view.basis))


@dataclass(frozen=True, eq=False)
class MonomialIrrep:
    inducing_subgroup: Subgroup
    character: LinearCharacter
    degree: int
    central_character: DualVector

    @property
    def index_exponent(self) -> int:
        return p_log(self.degree, self.inducing_subgroup.parent.p)


def _make_irrep(G: FiniteGroup, H: Subgroup, lam: LinearCharacter) -> MonomialIrrep:
    return MonomialIrrep(H, lam, G.order // H.order, central_character(G, lam))


def _central_rows(G: FiniteGroup, rows: np.ndarray, modulus: int) -> np.ndarray:
    view = p_torsion_center(G)
    if not view.basis:
        return np.zeros((rows.shape[0], 0), dtype=np.int64)
    return rows[:, list(view.basis)] // (modulus // G.p)


def irreps_of_dim(G: FiniteGroup, i: int, field: FieldDescriptor) -> list[MonomialIrrep]:
    """Every irreducible pair (H, lam) with [G:H] = p^i, without identifying
    equivalent representations."""
    key = ("irreps", i, field.r)
    if key in G._cache:
        return G._cache[key]
    out = []
    C = p_torsion_center(G).subgroup
    for H in _canonical_level(G, i):
        if not C <= H:
            continue
        rows = character_matrix(G, H, field)
        for row in rows[_irreducible_rows(G, H, rows, field)]:
            out.append(_make_irrep(G, H, LinearCharacter(H, field.modulus, row)))
    G._cache[key] = out
    return out


def _canonical_level(G: FiniteGroup, i: int) -> list[Subgroup]:
    from .lattice import subgroups_of_index

    return list(subgroups_of_index(G, i))


def ass_set(G: FiniteGroup, i: int, field: FieldDescriptor) -> set[DualVector]:
    return {rho.central_character for rho in irreps_of_dim(G, i, field)}


def minimal_faithful_rep(G: FiniteGroup, field: FieldDescriptor | None = None) -> list[MonomialIrrep]:
    """Greedy basis of C* along the flag (C*)_0 <= (C*)_1 <= ..., each member
    an irreducible of the lowest possible degree."""
    from .chains import chain_profile

    prof = chain_profile(G, field)
    field = prof.field
    view = p_torsion_center(G)
    c = view.dim
    chosen: list[MonomialIrrep] = []
    span: list[tuple[int, ...]] = []
    i = 0
    while len(chosen) < c:
        target = c - prof.c_dims[i + 1] if i + 1 < len(prof.c_dims) else c
        for H in _canonical_level(G, i):
            if len(span) >= target:
                break
            if not view.subgroup <= H:
                continue
            rows = character_matrix(G, H, field)
            cent = _central_rows(G, rows, field.modulus)
            for row, v in zip(rows, cent):
                if len(span) >= target:
                    break
                if fp.in_span(v, span, G.p):
                    continue
                if not _irreducible_rows(G, H, row[None, :], field)[0]:
                    continue
                span.append(tuple(int(x) for x in v))
                chosen.append(_make_irrep(G, H, LinearCharacter(H, field.modulus, row)))
        if len(span) < target:
            raise FlagBasisIncomplete(
                f"irreducibles of degree <= p^{i} span {len(span)} dimensions, expected {target}")
        i += 1
    return chosen


def is_faithful(G: FiniteGroup, reps: list[MonomialIrrep]) -> bool:
    """A sum of irreducibles is faithful iff their central characters span C*."""
    c = p_torsion_center(G).dim
    if c == 0:
        return G.order == 1
    rows = [rho.central_character.coords for rho in reps]
    return fp.rank(rows, G.p) == c if rows else False


def min_degree_per_dual_vector(G: FiniteGroup, field: FieldDescriptor) -> dict[tuple[int, ...], int]:
    """For each vector of C*, the least degree of an irreducible with that
    central character, by exhaustive enumeration of inducing pairs."""
    view = p_torsion_center(G)
    c, p = view.dim, G.p
    best: dict[tuple[int, ...], int] = {}
    i = 0
    while len(best) < p**c:
        for H in iter_subgroups_of_index(G, i):
            if not view.subgroup <= H:
                continue
            rows = character_matrix(G, H, field)
            cent = _central_rows(G, rows, field.modulus)
            fresh = np.array([tuple(int(x) for x in v) not in best for v in cent], dtype=bool)
            if not fresh.any():
                continue
            ok = np.zeros(rows.shape[0], dtype=bool)
            ok[fresh] = _irreducible_rows(G, H, rows[fresh], field)
            for v in cent[ok]:
                best.setdefault(tuple(int(x) for x in v), p**i)
        i += 1
    return best


_EXHAUSTIVE_BASES = 200_000


def min_faithful_dim_oracle(G: FiniteGroup, field: FieldDescriptor | None = None) -> int:
    """Least total degree of a faithful sum of irreducibles, by exhaustive search."""
    from .chains import default_field
    from math import comb

    if G.order > ORACLE_CAP:
        raise OrderCapExceeded(f"oracle limited to order {ORACLE_CAP}, got {G.order}")
    field = field or default_field(G)
    c, p = p_torsion_center(G).dim, G.p
    if c == 0:
        return 0
    best = min_degree_per_dual_vector(G, field)
    vecs = sorted((d, v) for v, d in best.items() if any(v))
    if comb(len(vecs), c) <= _EXHAUSTIVE_BASES:
        result = None
        for combo in itertools.combinations(vecs, c):
            total = sum(d for d, _ in combo)
            if result is not None and total >= result:
                continue
            if fp.rank([v for _, v in combo], p) == c:
                result = total
        return result
    # minimum-weight basis of a linear matroid: greedy is exact
    span, total = [], 0
    for d, v in vecs:
        if not fp.in_span(v, span, p):
            span.append(v)
            total += d
    return total
