"""K_i / C_i chains, the essential-dimension sum, and its corollaries."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .group import (
    FieldDescriptor,
    FiniteGroup,
    Subgroup,
    center,
    derived_series,
    h_prime,
    p_torsion_center,
)
from .lattice import iter_subgroups_of_index, maximal_subgroups


def _check_field(G: FiniteGroup, field: FieldDescriptor):
    if G.order > 1 and field.p != G.p:
        raise ValueError(f"field prime {field.p} differs from group prime {G.p}")


def default_field(G: FiniteGroup) -> FieldDescriptor:
    """Full roots: k holds a primitive root of unity of order exp(G)."""
    return FieldDescriptor(G.p, G.full_roots)


def k_chain(G: FiniteGroup, field: FieldDescriptor) -> list[Subgroup]:
    """[K_-1 = G, K_0, K_1, ...], ending with the first trivial term."""
    _check_field(G, field)
    key = ("k_chain", field.r)
    if key in G._cache:
        return G._cache[key]
    chain = [G.full()]
    i = 0
    while not chain[-1].is_trivial:
        full = (1 << G.order) - 1
        running = full
        for H in iter_subgroups_of_index(G, i):
            running &= h_prime(G, H, field).bits
            if running == 1:
                break
        chain.append(Subgroup(G, running))
        i += 1
    G._cache[key] = chain
    return chain


def c_chain(G: FiniteGroup, chain: list[Subgroup]) -> tuple[list[int], list[int]]:
    """dim C_i for i = -1, 0, 1, ... and delta_i = dim C_(i-1) - dim C_i for i >= 0."""
    view = p_torsion_center(G)
    dims = [view.dim_of(K) for K in chain]
    delta = [a - b for a, b in zip(dims, dims[1:])]
    return dims, delta


@dataclass(frozen=True, eq=False)
class ChainProfile:
    field: FieldDescriptor
    k_chain: tuple[Subgroup, ...]
    c_dims: tuple[int, ...]
    delta: tuple[int, ...]
    ed: int

    @property
    def k_orders(self) -> list[int]:
        return [K.order for K in self.k_chain]

    @property
    def Delta(self) -> list[int]:
        """Partial sums delta_0 + ... + delta_i."""
        out, s = [], 0
        for d in self.delta:
            s += d
            out.append(s)
        return out


def chain_profile(G: FiniteGroup, field: FieldDescriptor | None = None) -> ChainProfile:
    field = field or default_field(G)
    chain = k_chain(G, field)
    dims, delta = c_chain(G, chain)
    ed = sum(d * field.p**i for i, d in enumerate(delta))
    return ChainProfile(field, tuple(chain), tuple(dims), tuple(delta), ed)


def essential_dimension(G: FiniteGroup, field: FieldDescriptor | None = None) -> int:
    return chain_profile(G, field).ed


def is_full_roots(G: FiniteGroup, field: FieldDescriptor) -> bool:
    return field.r >= G.full_roots


@dataclass(frozen=True)
class ClassificationVerdict:
    g_prime_trivial: bool
    ed_value: int
    ed_le_p: bool
    ed_eq_p: bool
    center_cyclic: bool
    has_index_p_abelianizing_subgroup: bool
    conditions_consistent: bool


def classify_ed_le_p(G: FiniteGroup, field: FieldDescriptor | None = None) -> ClassificationVerdict:
    """Evaluate ed <= p, ed = p, and the structural condition independently."""
    field = field or default_field(G)
    _check_field(G, field)
    p = G.p
    g_prime_trivial = h_prime(G, G.full(), field).is_trivial
    ed = essential_dimension(G, field)
    cyclic = len(center(G).generators) <= 1
    has_a = False
    if G.order > 1:
        has_a = any(h_prime(G, A, field).is_trivial for A in maximal_subgroups(G))
    a, b, c = ed <= p, ed == p, cyclic and has_a
    consistent = True if g_prime_trivial else (a == b == c)
    return ClassificationVerdict(g_prime_trivial, ed, a, b, cyclic, has_a, consistent)


@dataclass(frozen=True)
class DivisibilityReport:
    ed: int
    k_levels: tuple[int, ...] = dc_field(default=())
    derived_levels: tuple[int, ...] = dc_field(default=())
    violations: tuple[str, ...] = dc_field(default=())

    @property
    def max_k_level(self) -> int | None:
        return max(self.k_levels) if self.k_levels else None

    @property
    def max_derived_level(self) -> int | None:
        return max(self.derived_levels) if self.derived_levels else None

    @property
    def ok(self) -> bool:
        return not self.violations


def divisibility_checks(G: FiniteGroup, field: FieldDescriptor | None = None) -> DivisibilityReport:
    """Check p^(i+1) | ed when C(G)_p <= K_i, and p^i | ed when C(G)_p <= G^(i)."""
    field = field or default_field(G)
    prof = chain_profile(G, field)
    C = p_torsion_center(G).subgroup
    p, ed = G.p, prof.ed
    k_levels, derived_levels, violations = [], [], []
    for i, K in enumerate(prof.k_chain[1:]):
        if C <= K:
            k_levels.append(i)
            if ed % p ** (i + 1):
                violations.append(f"C(G)_p <= K_{i} but p^{i + 1} does not divide {ed}")
    i = 0
    while True:
        D = derived_series(G, i)
        if not C <= D:
            break
        derived_levels.append(i)
        if ed % p**i:
            violations.append(f"C(G)_p <= G^({i}) but p^{i} does not divide {ed}")
        if D.is_trivial:
            break
        i += 1
    return DivisibilityReport(ed, tuple(k_levels), tuple(derived_levels), tuple(violations))
