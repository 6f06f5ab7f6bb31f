"""Subgroups of index p^i via Frattini hyperplanes and level-by-level descent.

In a p-group every proper subgroup lies in a maximal subgroup, and maximal
subgroups have index p.  So the subgroups of index p^(i+1) are exactly the
maximal subgroups of the subgroups of index p^i.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .errors import EssDimError, MixedParents
from .group import FiniteGroup, Subgroup, _generate, commutators, p_log

_THREADS = 1


def set_threads(n: int):
    """Worker count used by the descent; results never depend on it."""
    global _THREADS
    _THREADS = max(1, int(n))


@dataclass(frozen=True)
class SubgroupSet:
    parent: FiniteGroup
    items: tuple[Subgroup, ...]
    index_exponent: int

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __getitem__(self, i):
        return self.items[i]


def canonical_sort(subs: Iterable[Subgroup]) -> list[Subgroup]:
    return sorted(subs, key=lambda s: s.sort_key())


def frattini_of(G: FiniteGroup, H: Subgroup) -> Subgroup:
    """[H,H] H^p, computed inside the parent."""
    key = ("frattini", H.bits)
    hit = G._cache.get(key)
    if hit is not None:
        return hit
    comm = np.zeros(0, dtype=np.intp) if H.is_abelian else commutators(G, H, H)
    pows = np.unique(G.power(H.members, G.p))
    mask, _ = _generate(G, np.concatenate([comm, pows]))
    res = G.subgroup_from_mask(mask)
    G._cache[key] = res
    return res


def frattini(G: FiniteGroup) -> Subgroup:
    if G.order == 1:
        raise EssDimError("the trivial group has no Frattini subgroup")
    return frattini_of(G, G.full())


def _normalized_covectors(d: int, p: int) -> Iterator[tuple[int, ...]]:
    """Nonzero vectors of F_p^d whose first nonzero coordinate is 1."""
    for lead in range(d):
        for tail in itertools.product(range(p), repeat=d - lead - 1):
            yield (0,) * lead + (1,) + tail


def _frattini_coordinates(G: FiniteGroup, H: Subgroup) -> tuple[np.ndarray, int]:
    """Coordinates of every member of H in the F_p-space H/Phi(H)."""
    p = G.p
    phi = frattini_of(G, H)
    members = H.members
    fm = phi.members
    label = np.full(G.order, -1, dtype=np.int64)
    step = max(1, (1 << 22) // fm.size)
    for s in range(0, members.size, step):
        chunk = members[s:s + step]
        label[chunk] = G.mul[chunk[:, None], fm[None, :]].min(axis=1)
    d = p_log(H.order // phi.order, p)
    # basis of H/Phi by greedy choice, spans enumerated as coset reps
    basis: list[int] = []
    span_mask = phi.mask.copy()
    gens: list[int] = list(phi.generators)
    for h in members:
        if len(basis) == d:
            break
        if not span_mask[h]:
            basis.append(int(h))
            span_mask, gens = _generate(G, [int(h)], span_mask, gens)
    elems = np.zeros(1, dtype=np.intp)
    vecs = np.zeros((1, d), dtype=np.int64)
    for j, b in enumerate(basis):
        layers_e, layers_v = [elems], [vecs]
        cur = elems
        for k in range(1, p):
            cur = G.mul[cur, b].astype(np.intp)
            v = vecs.copy()
            v[:, j] = k
            layers_e.append(cur)
            layers_v.append(v)
        elems = np.concatenate(layers_e)
        vecs = np.concatenate(layers_v)
    lab = label[elems]
    coords = np.zeros((G.order, d), dtype=np.int64)
    order = np.argsort(lab)
    lab_sorted = lab[order]
    pos = np.searchsorted(lab_sorted, label[members])
    coords[members] = vecs[order][pos]
    return coords[members], d


def maximal_of(G: FiniteGroup, H: Subgroup) -> list[Subgroup]:
    """All subgroups of index p in H (as subgroups of G), canonically sorted."""
    key = ("maximal", H.bits)
    hit = G._cache.get(key)
    if hit is not None:
        return hit
    if H.order == 1:
        G._cache[key] = []
        return []
    p = G.p
    coords, d = _frattini_coordinates(G, H)
    members = H.members
    out = []
    for w in _normalized_covectors(d, p):
        keep = (coords @ np.array(w, dtype=np.int64)) % p == 0
        mask = np.zeros(G.order, dtype=bool)
        mask[members[keep]] = True
        out.append(G.subgroup_from_mask(mask))
    out = canonical_sort(out)
    G._cache[key] = out
    return out


def maximal_subgroups(G: FiniteGroup) -> SubgroupSet:
    if G.order == 1:
        raise EssDimError("the trivial group has no maximal subgroups")
    return SubgroupSet(G, tuple(maximal_of(G, G.full())), 1)


def _level(G: FiniteGroup, i: int) -> list[Subgroup]:
    levels = G._cache.setdefault("levels", [[G.full()]])
    while len(levels) <= i:
        prev = levels[-1]
        levels.append(canonical_sort(_children(G, prev)))
    return levels[i]


def _children(G: FiniteGroup, parents: list[Subgroup]) -> Iterator[Subgroup]:
    """Distinct maximal subgroups of the given subgroups, in discovery order."""
    seen: set[int] = set()
    if _THREADS > 1 and len(parents) > 1:
        with ThreadPoolExecutor(_THREADS) as pool:
            batches = list(pool.map(lambda H: maximal_of(G, H), parents))
    else:
        batches = (maximal_of(G, H) for H in parents)
    for batch in batches:
        for M in batch:
            if M.bits not in seen:
                seen.add(M.bits)
                yield M


def _check_index(G: FiniteGroup, i: int):
    if i < 0 or G.p**i > G.order:
        raise EssDimError(f"index p^{i} exceeds the group order {G.order}")


def subgroups_of_index(G: FiniteGroup, i: int) -> SubgroupSet:
    _check_index(G, i)
    return SubgroupSet(G, tuple(_level(G, i)), i)


def iter_subgroups_of_index(G: FiniteGroup, i: int) -> Iterator[Subgroup]:
    """Stream the subgroups of index p^i without materializing the whole level.

    Order is discovery order, not canonical order; use ``subgroups_of_index``
    when a canonical listing is needed.
    """
    _check_index(G, i)
    levels = G._cache.get("levels", [[G.full()]])
    if i < len(levels):
        yield from levels[i]
        return
    if i == 0:
        yield G.full()
        return
    yield from _children(G, _level(G, i - 1))


def intersect_all(subs, parent: FiniteGroup | None = None) -> Subgroup:
    """Intersection of a list of subgroups; the empty list gives the parent."""
    items = list(subs)
    if parent is None:
        if isinstance(subs, SubgroupSet):
            parent = subs.parent
        elif items:
            parent = items[0].parent
        else:
            raise ValueError("empty list needs an explicit parent")
    bits = (1 << parent.order) - 1
    for s in items:
        if s.parent is not parent:
            raise MixedParents("subgroups belong to different groups")
        bits &= s.bits
    return Subgroup(parent, bits)
