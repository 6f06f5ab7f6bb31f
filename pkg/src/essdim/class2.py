"""Commutator forms of class-2 groups, isotropic subgroups, and the ed bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import IsotropicConstructionError, NotClassTwo
from .group import (
    FieldDescriptor,
    FiniteGroup,
    Subgroup,
    _generate,
    center,
    derived_subgroup,
    h_prime,
    p_log,
    p_torsion_center,
    promote,
    quotient,
)
from .reps import _coordinates, abelian_basis


@dataclass(frozen=True, eq=False)
class SkewForm:
    modulus: int
    dim: int
    matrix: np.ndarray  # beta(x_j, x_k) on the generating tuple of Q
    generators: tuple[int, ...]  # elements of Q
    orders: tuple[int, ...]

    def evaluate(self, u, v) -> int:
        """beta on coordinate vectors relative to the generating tuple."""
        return int(np.asarray(u) @ self.matrix @ np.asarray(v)) % self.modulus


@dataclass(frozen=True, eq=False)
class Class2Context:
    group: FiniteGroup
    Q: FiniteGroup
    projection: np.ndarray  # G -> Q
    q_coords: np.ndarray  # coordinates of every element of Q
    derived_basis: tuple[tuple[int, int], ...]
    forms: tuple[SkewForm, ...]

    @property
    def m(self) -> int:
        return p_log(self.Q.order, self.group.p)


def _check_class_two(G: FiniteGroup):
    if not derived_subgroup(G) <= center(G):
        raise NotClassTwo("[G,G] is not central")


def _lift(proj: np.ndarray, q: int) -> int:
    return int(np.flatnonzero(proj == q)[0])


def class2_context(G: FiniteGroup) -> Class2Context:
    key = "class2"
    if key in G._cache:
        return G._cache[key]
    _check_class_two(G)
    D = derived_subgroup(G)
    Q, proj = quotient(G, center(G))
    qbasis = abelian_basis(Q) if Q.order > 1 else []
    qcoords = _coordinates(Q, qbasis)
    dbasis = abelian_basis(D) if D.order > 1 else []
    Dg, embed = promote(G, D)
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[embed] = np.arange(embed.size)
    local = [(int(pos[h]), o) for h, o in dbasis]
    dcoords = _coordinates(Dg, local)
    lifts = [_lift(proj, q) for q, _ in qbasis]
    n = len(qbasis)
    mats = [np.zeros((n, n), dtype=np.int64) for _ in dbasis]
    for j in range(n):
        for k in range(n):
            a, b = lifts[j], lifts[k]
            c = G.mul[G.mul[a, b], G.mul[G.inv[a], G.inv[b]]]
            for i, (_, o) in enumerate(dbasis):
                mats[i][j, k] = dcoords[pos[c], i] % o
    forms = []
    for i, (_, o) in enumerate(dbasis):
        M = mats[i]
        if np.any(np.diag(M) % o) or np.any((M + M.T) % o):
            raise NotClassTwo("commutator form is not alternating")
        forms.append(SkewForm(o, n, M, tuple(q for q, _ in qbasis), tuple(o for _, o in qbasis)))
    ctx = Class2Context(G, Q, proj, qcoords, tuple(dbasis), tuple(forms))
    _check_well_defined(ctx)
    G._cache[key] = ctx
    return ctx


def _check_well_defined(ctx: Class2Context):
    """beta computed on any lifts of generator pairs must agree with the matrix."""
    G = ctx.group
    if not ctx.forms:
        return
    Z = center(G).members
    dim = len(ctx.q_coords[0])
    Dg, embed = promote(G, derived_subgroup(G))
    pos = np.full(G.order, -1, dtype=np.int64)
    pos[embed] = np.arange(embed.size)
    local = [(int(pos[h]), o) for h, o in ctx.derived_basis]
    dcoords = _coordinates(Dg, local)
    gens = ctx.forms[0].generators
    for j in range(dim):
        for k in range(dim):
            a0, b0 = _lift(ctx.projection, gens[j]), _lift(ctx.projection, gens[k])
            for z in Z[:4]:
                a = int(G.mul[a0, z])
                c = G.mul[G.mul[a, b0], G.mul[G.inv[a], G.inv[b0]]]
                for i, f in enumerate(ctx.forms):
                    if dcoords[pos[c], i] % f.modulus != f.matrix[j, k]:
                        raise NotClassTwo("commutator form does not descend to G/C(G)")


def commutator_forms(G: FiniteGroup) -> list[SkewForm]:
    return list(class2_context(G).forms)


def isotropic_subgroup(ctx: Class2Context, which: int) -> Subgroup:
    """A maximal isotropic subgroup of Q for the form ``which``, grown by
    adjoining the least element of the current orthogonal complement."""
    Q, form = ctx.Q, ctx.forms[which]
    vals = (ctx.q_coords @ form.matrix @ ctx.q_coords.T) % form.modulus  # |Q| x |Q|
    mask = np.zeros(Q.order, dtype=bool)
    mask[0] = True
    gens: list[int] = []
    while True:
        members = np.flatnonzero(mask)
        perp = ~vals[:, members].any(axis=1)
        cand = np.flatnonzero(perp & ~mask)
        if cand.size == 0:
            break
        mask, gens = _generate(Q, [int(cand[0])], mask, gens)
    I = Q.subgroup_from_mask(mask)
    members = I.members
    if vals[np.ix_(members, members)].any():
        raise IsotropicConstructionError("constructed subgroup is not isotropic")
    need = ctx.group.p ** ((ctx.m + 1) // 2)
    if I.order < need:
        raise IsotropicConstructionError(f"isotropic subgroup of order {I.order} < {need}")
    return I


def pullback(ctx: Class2Context, I: Subgroup) -> Subgroup:
    return ctx.group.subgroup_from_mask(I.mask[ctx.projection])


def isotropic_pullbacks(G: FiniteGroup) -> list[Subgroup]:
    ctx = class2_context(G)
    return [pullback(ctx, isotropic_subgroup(ctx, i)) for i in range(len(ctx.forms))]


def pullback_intersection(G: FiniteGroup, field: FieldDescriptor) -> Subgroup:
    """Intersection of H' over the isotropic pullbacks (G' when s = 0)."""
    bits = h_prime(G, G.full(), field).bits
    for P in isotropic_pullbacks(G):
        bits &= h_prime(G, P, field).bits
    return Subgroup(G, bits)


@dataclass(frozen=True)
class Class2Bounds:
    m: int
    rank_center: int
    rank_derived: int
    bound_a: int
    derived_cyclic: bool
    quotient_is_square: bool | None
    formula_b: int | None
    ed: int
    hypothesis_met: bool
    a_holds: bool
    b_exact: bool | None
    pullback_levels: int
    pullbacks_kill_chain: bool

    @property
    def ok(self) -> bool:
        if not self.hypothesis_met:
            return True
        return self.a_holds and self.b_exact is not False and self.pullbacks_kill_chain


def class2_bounds(G: FiniteGroup, field: FieldDescriptor | None = None) -> Class2Bounds:
    from .chains import chain_profile

    ctx = class2_context(G)
    prof = chain_profile(G, field)
    field = prof.field
    p, m = G.p, ctx.m
    rank_c = p_torsion_center(G).dim
    s = len(ctx.derived_basis)
    bound_a = rank_c + s * (p ** (m // 2) - 1)
    cyclic = s <= 1
    square = formula = None
    if cyclic:
        root = math.isqrt(ctx.Q.order)
        square = root * root == ctx.Q.order
        formula = root + rank_c - 1 if square else None
    hyp = field.r >= G.full_roots
    b_exact = (formula == prof.ed) if (cyclic and hyp) else None
    # K_i is trivial from i = floor(m/2) on, witnessed by the pullbacks
    level = m // 2
    chain_ok = True
    if hyp:
        chain_ok = pullback_intersection(G, field).is_trivial and (
            level + 1 >= len(prof.k_chain) or prof.k_chain[level + 1].is_trivial)
    return Class2Bounds(m, rank_c, s, bound_a, cyclic, square, formula, prof.ed, hyp,
                        prof.ed <= bound_a, b_exact, level, chain_ok)
