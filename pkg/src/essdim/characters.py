"""Exact complex characters of p-groups with values in Z[zeta_N], N = exp(G).

A character value is stored as an integer vector c of length N meaning
sum_a c[a] zeta^a.  ``reduce`` maps it to the unique coordinates on the
basis 1, zeta, ..., zeta^(phi(N)-1), so equality of values is equality of
reduced vectors.

This layer exists for fields that hold only some of the p-power roots of
unity.  There a representation induced from a k-valued character can be
irreducible over k while splitting over C, so irreducibility over k is
decided from the decomposition into complex irreducibles, their Galois
orbits over k, and Schur indices.  The model field is Q(zeta_(p^r)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .group import FieldDescriptor, FiniteGroup, Subgroup, center
from .lattice import iter_subgroups_of_index


def reduce(arr: np.ndarray, N: int, p: int) -> np.ndarray:
    """Canonical coordinates of Z[zeta_N] elements along the last axis."""
    arr = np.array(arr, dtype=np.int64)
    if N == 1:
        return arr
    M = N // p
    phi = N - M
    top = arr[..., phi:]
    for j in range(1, p):
        arr[..., N - (j + 1) * M:N - j * M] -= top
    return arr[..., :phi]


def as_integer(vec: np.ndarray) -> int | None:
    """The rational integer a reduced value equals, or None."""
    if np.any(vec[1:]):
        return None
    return int(vec[0])


def left_coset_reps(G: FiniteGroup, H: Subgroup) -> list[int]:
    covered = np.zeros(G.order, dtype=bool)
    reps = []
    for x in range(G.order):
        if not covered[x]:
            reps.append(x)
            covered[G.mul[x, H.members]] = True
    return reps


def induced_counts(G: FiniteGroup, H: Subgroup, values: np.ndarray, N: int) -> np.ndarray:
    """Unreduced values of ind_H^G of a character given as exponents of zeta_N.

    ``values`` has length |G| with -1 outside H.
    """
    counts = np.zeros(G.order * N, dtype=np.int64)
    g = np.arange(G.order)
    for x in left_coset_reps(G, H):
        y = G.mul[G.inv[x], G.mul[g, x]]
        v = values[y]
        inside = v >= 0
        counts += np.bincount(g[inside] * N + v[inside], minlength=G.order * N)
    return counts.reshape(G.order, N)


@dataclass(frozen=True, eq=False)
class ComplexIrrep:
    degree: int
    values: np.ndarray  # reduced, shape (|G|, phi(N))
    inducing_subgroup: Subgroup


@dataclass(frozen=True, eq=False)
class CharacterTable:
    N: int
    irreps: tuple[ComplexIrrep, ...]


def _mackey_mask(G: FiniteGroup, H: Subgroup, V: np.ndarray) -> np.ndarray:
    """For a stack of characters V (rows, length |G|, -1 outside H) flag the
    rows whose induction is irreducible by Mackey's criterion."""
    ok = np.ones(V.shape[0], dtype=bool)
    hm = H.members
    for g in left_coset_reps(G, H)[1:]:
        y = G.mul[G.inv[g], G.mul[hm, g]]
        inside = H.mask[y]
        if not inside.any():
            ok[:] = False
            break
        moved = (V[:, y[inside]] != V[:, hm[inside]]).any(axis=1)
        ok &= moved
        if not ok.any():
            break
    return ok


def complex_irreps(G: FiniteGroup) -> CharacterTable:
    """All complex irreducible characters, found as Mackey-irreducible
    inductions of linear characters into Z/exp(G)."""
    key = "complex_irreps"
    if key in G._cache:
        return G._cache[key]
    from .reps import character_matrix

    if G.order == 1:
        table = CharacterTable(1, (ComplexIrrep(1, np.ones((1, 1), dtype=np.int64), G.full()),))
        G._cache[key] = table
        return table
    p = G.p
    N = G.exponent
    e = G.full_roots
    field = FieldDescriptor(p, e)
    Z = center(G)
    seen: set[bytes] = set()
    found: list[ComplexIrrep] = []
    total = 0
    i = 0
    while total < G.order:
        for H in iter_subgroups_of_index(G, i):
            if not Z <= H:
                continue
            V = character_matrix(G, H, field) * (N // p**e)
            for row in V[_mackey_mask(G, H, V)]:
                vals = reduce(induced_counts(G, H, row, N), N, p)
                k = vals.tobytes()
                if k in seen:
                    continue
                seen.add(k)
                deg = G.order // H.order
                found.append(ComplexIrrep(deg, vals, H))
                total += deg * deg
            if total >= G.order:
                break
        i += 1
    table = CharacterTable(N, tuple(found))
    G._cache[key] = table
    return table


@dataclass(frozen=True)
class RationalityData:
    """Galois orbit label and Schur index of each complex irreducible over k."""

    orbit: tuple[int, ...]
    orbit_size: tuple[int, ...]
    schur: tuple[int, ...]


def rationality(G: FiniteGroup, field: FieldDescriptor) -> RationalityData:
    key = ("rationality", field.r)
    if key in G._cache:
        return G._cache[key]
    table = complex_irreps(G)
    N, p = table.N, G.p
    index = {ir.values.tobytes(): j for j, ir in enumerate(table.irreps)}
    step = min(p**field.r, N)
    ts = [t for t in range(1, N + 1, step) if t % p]
    orbit = [-1] * len(table.irreps)
    size = [0] * len(table.irreps)
    label = 0
    for j, ir in enumerate(table.irreps):
        if orbit[j] >= 0:
            continue
        members = set()
        for t in ts:
            img = ir.values[G.power(G.elements, t)]
            members.add(index[img.tobytes()])
        for m in members:
            orbit[m] = label
            size[m] = len(members)
        label += 1
    schur = []
    for ir in table.irreps:
        m = 1
        if p == 2 and field.r == 1 and _is_real(G, ir) and frobenius_schur(G, ir, N) == -1:
            m = 2
        schur.append(m)
    res = RationalityData(tuple(orbit), tuple(size), tuple(schur))
    G._cache[key] = res
    return res


def _is_real(G: FiniteGroup, ir: ComplexIrrep) -> bool:
    # the complex conjugate of psi is g -> psi(g^-1)
    return bool(np.array_equal(ir.values, ir.values[G.inv]))


def frobenius_schur(G: FiniteGroup, ir: ComplexIrrep, N: int) -> int:
    sq = G.mul[G.elements, G.elements]
    # a sum of reduced vectors is already reduced
    return as_integer(ir.values[sq].sum(axis=0)) // G.order


def multiplicities(G: FiniteGroup, H: Subgroup, values: np.ndarray, modulus: int) -> list[int]:
    """<ind_H^G lambda, psi> for every complex irreducible psi, by Frobenius
    reciprocity; ``values`` are in Z/modulus with -1 outside H."""
    table = complex_irreps(G)
    N, p = table.N, G.p
    hm = H.members
    v = values[hm].astype(np.int64)
    shift = v * (N // modulus) if modulus <= N else v // (modulus // N)
    cols = (np.arange(N)[None, :] - shift[:, None]) % N
    out = []
    for ir in table.irreps:
        padded = np.zeros((hm.size, N), dtype=np.int64)
        padded[:, :ir.values.shape[1]] = ir.values[hm]
        acc = np.bincount(cols.ravel(), weights=padded.ravel(), minlength=N)
        s = as_integer(reduce(np.rint(acc).astype(np.int64), N, p))
        out.append(s // H.order)
    return out


def is_k_irreducible(G: FiniteGroup, H: Subgroup, values: np.ndarray, field: FieldDescriptor) -> bool:
    """Whether ind_H^G lambda is irreducible over Q(zeta_(p^r))."""
    mult = multiplicities(G, H, values, field.modulus)
    rat = rationality(G, field)
    support = [j for j, m in enumerate(mult) if m]
    if not support:
        return False
    lab = rat.orbit[support[0]]
    if any(rat.orbit[j] != lab for j in support):
        return False
    if len(support) != rat.orbit_size[support[0]]:
        return False
    return all(mult[j] == rat.schur[j] for j in support)
