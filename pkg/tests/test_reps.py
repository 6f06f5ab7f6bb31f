import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from essdim import fp, zoo
from essdim.chains import chain_profile
from essdim.characters import complex_irreps, frobenius_schur, is_k_irreducible, rationality
from essdim.errors import NotAbelian, OrderCapExceeded
from essdim.group import FieldDescriptor as F, center, derived_subgroup, p_torsion_center, subgroup_closure
from essdim.lattice import intersect_all, subgroups_of_index
from essdim.reps import (
    DualVector,
    LinearCharacter,
    _make_irrep,
    abelian_basis,
    ass_set,
    character_matrix,
    irreps_of_dim,
    is_faithful,
    is_induced_irreducible,
    kernel_of_induced,
    linear_characters,
    min_faithful_dim_oracle,
    minimal_faithful_rep,
)
from essdim.verify import SMALL_ZOO, fields_for, group


def d8_parts():
    G = zoo.dihedral(8)
    r = next(x for x in range(8) if G.element_orders[x] == 4)
    r2 = int(G.mul[r, r])
    s = next(x for x in range(8) if G.element_orders[x] == 2 and x != r2)
    return G, r, r2, s


def test_abelian_basis_examples():
    assert [o for _, o in abelian_basis(zoo.abelian([4, 2]))] == [4, 2]
    assert [o for _, o in abelian_basis(zoo.abelian([3, 3]))] == [3, 3]
    Q8 = zoo.quaternion(8)
    assert [o for _, o in abelian_basis(derived_subgroup(Q8))] == [2]
    with pytest.raises(NotAbelian):
        abelian_basis(Q8)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from([2, 4, 8]), min_size=1, max_size=4))
def test_abelian_basis_is_a_direct_decomposition(orders):
    A = zoo.abelian(orders)
    basis = abelian_basis(A)
    assert sorted((o for _, o in basis), reverse=True) == sorted(orders, reverse=True)
    assert [o for _, o in basis] == sorted((o for _, o in basis), reverse=True)
    # every element is reached exactly once by the exponent vectors
    seen = set()
    for exps in itertools.product(*(range(o) for _, o in basis)):
        x = 0
        for (b, _), e in zip(basis, exps):
            x = int(A.mul[x, A.power([b], e)[0]])
        seen.add(x)
    assert len(seen) == A.order


def test_linear_character_counts():
    V4 = zoo.abelian([2, 2])
    assert len(linear_characters(V4, V4.full(), F(2, 1))) == 4
    Z4 = zoo.cyclic(4)
    assert len(linear_characters(Z4, Z4.full(), F(2, 1))) == 2
    Q8 = zoo.quaternion(8)
    for r in (1, 2, 3):
        assert len(linear_characters(Q8, Q8.full(), F(2, r))) == 4


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([s for s in SMALL_ZOO if group(s).order <= 32]), st.integers(1, 3), st.data())
def test_characters_are_homomorphisms(spec, r, data):
    G = group(spec)
    f = F(G.p, r)
    H = subgroup_closure(G, [data.draw(st.integers(0, G.order - 1)) for _ in range(2)])
    rows = character_matrix(G, H, f)
    assert len({row.tobytes() for row in rows}) == rows.shape[0]
    hm = H.members
    a, b = data.draw(st.sampled_from(hm.tolist())), data.draw(st.sampled_from(hm.tolist()))
    for row in rows:
        assert row[0] == 0
        assert row[G.mul[a, b]] == (row[a] + row[b]) % f.modulus


def test_mackey_examples():
    G, r, r2, s = d8_parts()
    for lam in linear_characters(G, G.full(), F(2, 1)):
        assert is_induced_irreducible(G, G.full(), lam)
    R = subgroup_closure(G, [r])
    for lam in linear_characters(G, R, F(2, 1)):
        assert not is_induced_irreducible(G, R, lam)
    V = subgroup_closure(G, [r2, s])
    lam = next(l for l in linear_characters(G, V, F(2, 1)) if l(r2) == 1 and l(s) == 0)
    assert is_induced_irreducible(G, V, lam)


def test_kernel_of_induced_examples():
    G, r, r2, s = d8_parts()
    triv = linear_characters(G, G.full(), F(2, 1))[0]
    assert kernel_of_induced(G, G.full(), triv) == G.full()
    V = subgroup_closure(G, [r2, s])
    lam = next(l for l in linear_characters(G, V, F(2, 1)) if l(r2) == 1 and l(s) == 0)
    assert kernel_of_induced(G, V, lam).is_trivial
    Q8 = zoo.quaternion(8)
    i = next(x for x in range(8) if Q8.element_orders[x] == 4)
    H = subgroup_closure(Q8, [i])
    lam = next(l for l in linear_characters(Q8, H, F(2, 2)) if l(i) == 1)
    assert kernel_of_induced(Q8, H, lam).is_trivial


def test_irreps_of_dim_examples():
    G = zoo.dihedral(8)
    assert len(irreps_of_dim(G, 0, F(2, 1))) == 4
    deg2 = irreps_of_dim(G, 1, F(2, 1))
    assert deg2 and all(not rho.central_character.is_zero() for rho in deg2)
    V4 = zoo.abelian([2, 2])
    assert irreps_of_dim(V4, 1, F(2, 1)) == []


def test_ass_set_examples():
    G = zoo.dihedral(8)
    assert ass_set(G, 0, F(2, 1)) == {DualVector((0,))}
    assert DualVector((1,)) in ass_set(G, 1, F(2, 1))
    V4 = zoo.abelian([2, 2])
    assert len(ass_set(V4, 0, F(2, 1))) == 4


def test_minimal_faithful_rep_examples():
    E = zoo.abelian([2, 2, 2])
    assert [rho.degree for rho in minimal_faithful_rep(E, F(2, 1))] == [1, 1, 1]
    He = zoo.extraspecial(3, 1, "p")
    assert [rho.degree for rho in minimal_faithful_rep(He, F(3, 1))] == [3]
    Q8 = zoo.quaternion(8)
    (rho,) = minimal_faithful_rep(Q8, F(2, 1))
    assert rho.degree == 4 and rho.inducing_subgroup == center(Q8)
    assert not rho.central_character.is_zero()


def test_is_faithful_examples():
    G, r, r2, s = d8_parts()
    assert not is_faithful(G, [])
    V4 = zoo.abelian([2, 2])
    allchars = [_make_irrep(V4, V4.full(), lam) for lam in linear_characters(V4, V4.full(), F(2, 1))]
    assert is_faithful(V4, allchars)
    V = subgroup_closure(G, [r2, s])
    lam = next(l for l in linear_characters(G, V, F(2, 1)) if l(r2) == 1 and l(s) == 0)
    assert is_faithful(G, [_make_irrep(G, V, lam)])


def test_oracle_examples():
    assert min_faithful_dim_oracle(zoo.abelian([3, 3])) == 2
    assert min_faithful_dim_oracle(zoo.quaternion(8), F(2, 2)) == 2
    assert min_faithful_dim_oracle(zoo.quaternion(8), F(2, 1)) == 4
    with pytest.raises(OrderCapExceeded):
        min_faithful_dim_oracle(zoo.signed_perm_F(6), F(2, 1))


CASES = [(s, f) for s in SMALL_ZOO if group(s).order <= 32 for f in fields_for(group(s))]


@pytest.mark.parametrize("spec,field", CASES, ids=[f"{s}-r{f.r}" for s, f in CASES])
def test_irreducible_pairs_contain_the_center(spec, field):
    G = group(spec)
    C = p_torsion_center(G).subgroup
    for i in range(len(chain_profile(G, field).k_chain) - 1):
        for rho in irreps_of_dim(G, i, field):
            assert C <= rho.inducing_subgroup
            if field.r >= G.full_roots:
                assert center(G) <= rho.inducing_subgroup


@pytest.mark.parametrize("spec,field", CASES, ids=[f"{s}-r{f.r}" for s, f in CASES])
def test_minimal_rep_matches_delta(spec, field):
    G = group(spec)
    prof = chain_profile(G, field)
    reps = minimal_faithful_rep(G, field)
    assert is_faithful(G, reps) or G.order == 1
    keys = [rho.character.key() for rho in reps]
    assert len(set(keys)) == len(keys)
    assert sorted(rho.degree for rho in reps) == sorted(
        G.p**i for i, d in enumerate(prof.delta) for _ in range(d))
    cores = [kernel_of_induced(G, rho.inducing_subgroup, rho.character) for rho in reps]
    assert intersect_all(cores, parent=G).is_trivial
    # D_i = Delta_i for the constructed representation
    for i, total in enumerate(prof.Delta):
        assert sum(1 for rho in reps if rho.degree <= G.p**i) == total


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([c for c in CASES if group(c[0]).order <= 16]), st.data())
def test_any_faithful_list_respects_delta(case, data):
    spec, field = case
    G = group(spec)
    prof = chain_profile(G, field)
    pool = [rho for i in range(len(prof.k_chain) - 1) for rho in irreps_of_dim(G, i, field)]
    picks = data.draw(st.lists(st.sampled_from(pool), min_size=1, max_size=6)) if pool else []
    if not is_faithful(G, picks):
        return
    for i, total in enumerate(prof.Delta):
        rows = [rho.central_character.coords for rho in picks if rho.degree <= G.p**i]
        assert (fp.rank(rows, G.p) if rows else 0) <= total


def test_complex_irreps_sum_of_squares_and_class_count():
    for spec in ["dihedral(16)", "quaternion(16)", "heisenberg(3)", "F(4)", "extraspecial(3,1,p2)"]:
        G = group(spec)
        table = complex_irreps(G)
        assert sum(ir.degree**2 for ir in table.irreps) == G.order
        classes = {min(int(G.mul[G.mul[g, x], G.inv[g]]) for g in range(G.order)) for x in range(G.order)}
        assert len(table.irreps) == len(classes)


def test_schur_indices():
    Q8, D8 = zoo.quaternion(8), zoo.dihedral(8)
    for G, nu in [(Q8, -1), (D8, 1)]:
        table = complex_irreps(G)
        two = [j for j, ir in enumerate(table.irreps) if ir.degree == 2]
        assert len(two) == 1
        assert frobenius_schur(G, table.irreps[two[0]], table.N) == nu
        assert rationality(G, F(2, 1)).schur[two[0]] == (2 if nu == -1 else 1)
        assert rationality(G, F(2, 2)).schur[two[0]] == 1


def test_galois_orbits_over_rationals():
    G = zoo.quaternion(16)
    rat = rationality(G, F(2, 1))
    table = complex_irreps(G)
    faithful = [j for j, ir in enumerate(table.irreps) if ir.degree == 2 and
                kernel_is_trivial(G, ir)]
    assert len(faithful) == 2 and rat.orbit[faithful[0]] == rat.orbit[faithful[1]]
    assert rationality(G, F(2, 3)).orbit_size[faithful[0]] == 1


def kernel_is_trivial(G, ir):
    deg = ir.values[0]
    return all(not np.array_equal(ir.values[g], deg) for g in range(1, G.order))


@pytest.mark.parametrize("spec", ["dihedral(16)", "quaternion(16)", "heisenberg(3)", "modular(16)",
                                  "extraspecial(2,2,-)", "product(quaternion(8),abelian(2))"])
def test_mackey_agrees_with_character_norm(spec):
    G = group(spec)
    full = F(G.p, G.full_roots)
    C = p_torsion_center(G).subgroup
    for i in range(3):
        for H in subgroups_of_index(G, i):
            if not C <= H:
                continue
            for lam in linear_characters(G, H, full):
                assert is_induced_irreducible(G, H, lam) == is_k_irreducible(G, H, lam.values, full)


def test_partial_roots_center_induction():
    Q8 = zoo.quaternion(8)
    Z = center(Q8)
    sign = next(l for l in linear_characters(Q8, Z, F(2, 1)) if l.values[Z.members].any())
    assert is_induced_irreducible(Q8, Z, sign, F(2, 1))
    lam4 = LinearCharacter(Z, 4, np.where(sign.values > 0, 2, sign.values))
    assert not is_induced_irreducible(Q8, Z, lam4, F(2, 2))
