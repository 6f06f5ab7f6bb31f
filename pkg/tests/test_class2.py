import numpy as np
import pytest

from essdim import zoo
from essdim.class2 import (
    class2_bounds,
    class2_context,
    commutator_forms,
    isotropic_pullbacks,
    isotropic_subgroup,
)
from essdim.errors import NotClassTwo
from essdim.group import FieldDescriptor as F, h_prime
from essdim.verify import SMALL_ZOO, group


def test_forms_examples():
    assert commutator_forms(zoo.abelian([4, 2])) == []
    (form,) = commutator_forms(zoo.quaternion(8))
    assert form.modulus == 2 and form.matrix.tolist() == [[0, 1], [1, 0]]
    (form,) = commutator_forms(zoo.heisenberg(3))
    assert form.modulus == 3 and form.dim == 2
    assert round(np.linalg.det(form.matrix)) % 3 != 0


def test_not_class_two():
    with pytest.raises(NotClassTwo):
        commutator_forms(zoo.dihedral(16))


def test_isotropic_examples():
    ctx = class2_context(zoo.heisenberg(5))
    assert isotropic_subgroup(ctx, 0).order == 5
    ctx = class2_context(zoo.quaternion(8))
    assert isotropic_subgroup(ctx, 0).order == 2
    ctx = class2_context(zoo.extraspecial(2, 2, "+"))
    assert isotropic_subgroup(ctx, 0).order == 4


def test_bounds_examples():
    b = class2_bounds(zoo.extraspecial(2, 2, "+"), F(2, 2))
    assert (b.bound_a, b.formula_b, b.ed) == (4, 4, 4)
    b = class2_bounds(zoo.quaternion(8), F(2, 2))
    assert b.formula_b == 2 == b.ed
    b = class2_bounds(zoo.abelian([3, 3]), F(3, 1))
    assert b.bound_a == 2 == b.ed


CLASS2 = []
for spec in SMALL_ZOO + ["extraspecial(2,3,+)", "extraspecial(5,1,p)", "product(heisenberg(3),heisenberg(3))"]:
    try:
        class2_context(group(spec))
        CLASS2.append(spec)
    except NotClassTwo:
        pass


@pytest.mark.parametrize("spec", CLASS2)
def test_forms_are_alternating_and_isotropics_valid(spec):
    G = group(spec)
    ctx = class2_context(G)
    for i, form in enumerate(ctx.forms):
        M = form.matrix
        assert not np.any(np.diag(M) % form.modulus)
        assert not np.any((M + M.T) % form.modulus)
        I = isotropic_subgroup(ctx, i)
        assert I.order ** 2 >= ctx.Q.order
    # each pullback's commutators avoid its own coordinate
    full = F(G.p, G.full_roots)
    pulls = isotropic_pullbacks(G)
    inter = h_prime(G, G.full(), full).bits
    for P in pulls:
        inter &= h_prime(G, P, full).bits
    assert inter == 1


@pytest.mark.parametrize("spec", CLASS2)
def test_bounds_hold(spec):
    G = group(spec)
    b = class2_bounds(G, F(G.p, G.full_roots))
    assert b.a_holds and b.pullbacks_kill_chain
    if b.derived_cyclic:
        assert b.quotient_is_square and b.b_exact
