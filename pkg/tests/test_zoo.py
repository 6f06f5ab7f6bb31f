import numpy as np
import pytest

from essdim import zoo
from essdim.errors import EssDimError, OrderCapExceeded
from essdim.group import center, derived_subgroup, p_torsion_center, quotient
from essdim.lattice import frattini


def test_abelian_examples():
    assert zoo.abelian([2, 2, 2]).order == 8
    assert zoo.abelian([4]).exponent == 4
    A = zoo.abelian([9, 3])
    assert A.order == 27 and p_torsion_center(A).dim == 2


def test_abelian_mixed_primes():
    with pytest.raises(EssDimError):
        zoo.abelian([2, 3])


def test_dihedral_family():
    assert center(zoo.dihedral(8)).order == 2
    Q8 = zoo.quaternion(8)
    assert int((Q8.element_orders == 2).sum()) == 1
    assert center(zoo.modular(16)).order == 4
    assert derived_subgroup(zoo.semidihedral(16)).order == 4
    with pytest.raises(ValueError):
        zoo.semidihedral(8)


@pytest.mark.parametrize("p,m,kind", [(2, 1, "d8"), (2, 1, "q8"), (2, 2, "+"), (2, 2, "-"),
                                      (3, 1, "p"), (3, 1, "p2"), (5, 1, "p"), (3, 2, "p")])
def test_extraspecial_structure(p, m, kind):
    G = zoo.extraspecial(p, m, kind)
    assert G.order == p ** (2 * m + 1)
    Z = center(G)
    assert Z.order == p
    Q, _ = quotient(G, Z)
    assert Q.is_abelian and Q.exponent == p
    assert frattini(G) == Z


def test_extraspecial_exponents():
    assert zoo.extraspecial(3, 1, "p").exponent == 3
    assert zoo.extraspecial(3, 1, "p2").exponent == 9
    assert zoo.extraspecial(2, 1, "q8").exponent == 4


def test_gamma_power_quotient():
    for base in (zoo.dihedral(8), zoo.quaternion(8)):
        assert zoo.gamma_power_quotient(base, 2).order == 32
    assert zoo.gamma_power_quotient(zoo.heisenberg(3), 2).order == 243
    with pytest.raises(EssDimError):
        zoo.gamma_power_quotient(zoo.abelian([2, 4]), 2)


def test_sylow2():
    assert [zoo.sylow2_sym(n).order for n in (2, 4, 6, 8)] == [2, 8, 16, 128]


def test_signed_permutations():
    F2 = zoo.signed_perm_F(2)
    assert F2.order == 4 and F2.exponent == 4
    F4 = zoo.signed_perm_F(4)
    assert F4.order == 64
    for g in range(F4.order):
        M = zoo.signed_matrix(F4, g)
        assert round(np.linalg.det(M)) == 1
    assert zoo.signed_perm_F(6).order == 512


def test_diagonal_subgroup():
    for n in (2, 4, 6):
        F = zoo.signed_perm_F(n)
        D = zoo.diag_subgroup_D(F)
        assert D.order == 2 ** (n - 1) and D.is_abelian
        assert F.element_orders[D.members].max() <= 2


def test_signed_product_inclusion():
    for m, n in ((2, 2), (4, 2)):
        Fm, Fn, Fmn = zoo.signed_perm_F(m), zoo.signed_perm_F(n), zoo.signed_perm_F(m + n)
        assert zoo.embed_signed_product(Fm, Fn, Fmn).order == Fm.order * Fn.order


def test_cap():
    with pytest.raises(OrderCapExceeded):
        zoo.extraspecial(2, 6, "+")
