"""Named verification suites; each case records expected vs actual."""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterator

from .chains import chain_profile, classify_ed_le_p, default_field, divisibility_checks
from .class2 import class2_bounds
from .errors import NotClassTwo
from .group import FieldDescriptor, FiniteGroup, center, derived_subgroup, h_prime, p_torsion_center
from .groupspec import build_group
from .lattice import intersect_all
from .reps import irreps_of_dim, kernel_of_induced, min_faithful_dim_oracle, minimal_faithful_rep
from . import zoo

# every zoo group of order <= 64 exercised by the sweeps
SMALL_ZOO = [
    "abelian(2)", "abelian(4)", "abelian(2,2)", "abelian(8)", "abelian(4,2)", "abelian(2,2,2)",
    "abelian(4,4)", "abelian(8,2)", "abelian(4,2,2)", "abelian(2,2,2,2)", "abelian(32,2)",
    "abelian(3)", "abelian(9)", "abelian(3,3)", "abelian(9,3)", "abelian(5,5)", "abelian(7,7)",
    "dihedral(8)", "quaternion(8)",
    "dihedral(16)", "quaternion(16)", "semidihedral(16)", "modular(16)",
    "dihedral(32)", "quaternion(32)", "semidihedral(32)", "modular(32)",
    "dihedral(64)", "quaternion(64)", "semidihedral(64)", "modular(64)",
    "extraspecial(2,2,+)", "extraspecial(2,2,-)",
    "heisenberg(3)", "extraspecial(3,1,p2)",
    "P2(6)", "F(4)", "diagD(4)",
    "product(dihedral(8),abelian(2))", "product(quaternion(8),abelian(2))",
    "product(quaternion(8),abelian(4))", "product(dihedral(8),abelian(4))",
    "product(dihedral(8),abelian(2,2))", "product(modular(16),abelian(2))",
    "product(dihedral(16),abelian(2))", "product(quaternion(16),abelian(2))",
    "product(dihedral(8),dihedral(8))", "product(quaternion(8),quaternion(8))",
    "product(dihedral(8),quaternion(8))",
    "gammaQ(dihedral(8),2)", "gammaQ(quaternion(8),2)",
]

EXTRASPECIAL_CASES = [
    (2, 1, "d8"), (2, 1, "q8"), (2, 2, "+"), (2, 2, "-"),
    (3, 1, "p"), (3, 1, "p2"), (5, 1, "p"), (2, 3, "+"),
]


@dataclass
class Case:
    name: str
    expected: object
    actual: object
    passed: bool
    seconds: float = 0.0
    note: str = ""


@dataclass
class SuiteResult:
    suite: str
    cases: list[Case] = dc_field(default_factory=list)
    skipped: list[str] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def failures(self) -> list[Case]:
        return [c for c in self.cases if not c.passed]


_GROUPS: dict[str, FiniteGroup] = {}


def group(spec: str) -> FiniteGroup:
    """Memoized construction so suites share lattice caches."""
    if spec not in _GROUPS:
        _GROUPS[spec] = build_group(spec)
    return _GROUPS[spec]


def fields_for(G: FiniteGroup) -> list[FieldDescriptor]:
    """r = 1 and full roots (one field when they coincide)."""
    rs = sorted({1, G.full_roots})
    return [FieldDescriptor(G.p, r) for r in rs]


def _small(max_order: int | None) -> Iterator[str]:
    for spec in SMALL_ZOO:
        if max_order is None or group(spec).order <= max_order:
            yield spec


def _case(name, expected, fn: Callable[[], object], compare=None) -> Case:
    t = time.perf_counter()
    actual = fn()
    dt = time.perf_counter() - t
    ok = compare(expected, actual) if compare else expected == actual
    return Case(name, expected, actual, bool(ok), dt)


def suite_extraspecial(max_order=None) -> SuiteResult:
    res = SuiteResult("extraspecial")
    for p, m, kind in EXTRASPECIAL_CASES:
        spec = f"extraspecial({p},{m},{kind})"
        if max_order is not None and p ** (2 * m + 1) > max_order:
            res.skipped.append(spec)
            continue

        def run(spec=spec):
            G = group(spec)
            return chain_profile(G, default_field(G)).ed

        res.cases.append(_case(f"ed {spec}", p**m, run))
    return res


def suite_slnz(max_order=None) -> SuiteResult:
    res = SuiteResult("slnz")
    for d in (2, 3):
        spec = f"F({2 * d})"
        if max_order is not None and group(spec).order > max_order:
            res.skipped.append(spec)
            continue
        res.cases.append(_case(f"ed {spec} at r=1", 2 * d,
                               lambda s=spec: chain_profile(group(s), FieldDescriptor(2, 1)).ed))
        res.cases.append(_case(f"C({spec}) inside [F,F]", True,
                               lambda s=spec: center(group(s)) <= derived_subgroup(group(s))))
    res.cases.append(_case("F(2) order and exponent", (4, 4), lambda: (group("F(2)").order, group("F(2)").exponent)))
    res.cases.append(_case("F(2) cyclic", True, lambda: group("F(2)").order == group("F(2)").exponent))
    for m, n in ((2, 2), (4, 2)):
        def contains(m=m, n=n):
            return zoo.embed_signed_product(group(f"F({m})"), group(f"F({n})"), group(f"F({m + n})")).order
        expected = group(f"F({m})").order * group(f"F({n})").order
        res.cases.append(_case(f"F({m})xF({n}) inside F({m + n})", expected, contains))
    return res


def suite_diagonal(max_order=None) -> SuiteResult:
    res = SuiteResult("diagonal")
    for d in (2, 3):
        spec = f"diagD({2 * d})"
        res.cases.append(_case(f"ed {spec}", 2 * d - 1, lambda s=spec: chain_profile(group(s)).ed))
        res.cases.append(_case(f"{spec} elementary abelian of rank {2 * d - 1}", (2 ** (2 * d - 1), 2),
                               lambda s=spec: (group(s).order, group(s).exponent)))
    return res


def suite_jly(max_order=None) -> SuiteResult:
    res = SuiteResult("jly-quotient")
    cases = [("dihedral(8)", 2, 4), ("quaternion(8)", 2, 4), ("heisenberg(3)", 2, 9), ("dihedral(8)", 3, 8)]
    for base, n, expected in cases:
        G0 = group(base)
        if max_order is not None and G0.order ** n > max_order:
            res.skipped.append(f"gammaQ({base},{n})")
            continue
        q = f"gammaQ({base},{n})"
        res.cases.append(_case(f"ed {q}", expected, lambda s=q: chain_profile(group(s)).ed))
        power = f"power({base},{n})"
        ed_base = chain_profile(G0).ed

        def run_power(base=base, n=n):
            Gn = zoo.power(group(base), n)
            return chain_profile(Gn).ed

        res.cases.append(_case(f"ed {power}", n * ed_base, run_power))
    return res


def suite_ed_le_p(max_order=None) -> SuiteResult:
    res = SuiteResult("ed-le-p")
    exercised = set()
    for spec in _small(max_order):
        G = group(spec)
        if G.p != 2 or G.order > 64:
            continue
        for f in fields_for(G):
            if h_prime(G, G.full(), f).is_trivial:
                continue
            exercised.add(spec)
            v = classify_ed_le_p(G, f)
            res.cases.append(Case(f"{spec} r={f.r}", "consistent", "consistent" if v.conditions_consistent else
                                  f"ed={v.ed_value} cyclic={v.center_cyclic} A={v.has_index_p_abelianizing_subgroup}",
                                  v.conditions_consistent))
    res.cases.append(Case("distinct groups exercised >= 12", ">= 12", len(exercised), len(exercised) >= 12))
    q8 = classify_ed_le_p(group("quaternion(8)"), FieldDescriptor(2, 1))
    res.cases.append(Case("Q8 r=1 condition (c) fails", False, q8.center_cyclic and q8.has_index_p_abelianizing_subgroup,
                          not (q8.center_cyclic and q8.has_index_p_abelianizing_subgroup)))
    return res


def _degree_multiset(G, prof) -> list[int]:
    return sorted(G.p**i for i, d in enumerate(prof.delta) for _ in range(d))


def suite_oracle(max_order=64) -> SuiteResult:
    res = SuiteResult("oracle")
    for spec in _small(max_order):
        G = group(spec)
        for f in fields_for(G):
            t = time.perf_counter()
            prof = chain_profile(G, f)
            oracle = min_faithful_dim_oracle(G, f)
            rep = minimal_faithful_rep(G, f)
            degs = sorted(r.degree for r in rep)
            actual = (prof.ed, oracle, sum(degs), degs)
            expected = (prof.ed, prof.ed, prof.ed, _degree_multiset(G, prof))
            res.cases.append(Case(f"{spec} r={f.r}", expected, actual, actual == expected,
                                  time.perf_counter() - t))
    return res


def lemma_ki_mismatches(G: FiniteGroup, f: FieldDescriptor) -> list[str]:
    """Compare K_i and C_i with the kernels of irreducibles of degree <= p^i."""
    prof = chain_profile(G, f)
    C = p_torsion_center(G).subgroup
    bad = []
    kernels = []
    for i in range(len(prof.k_chain) - 1):
        for rho in irreps_of_dim(G, i, f):
            kernels.append(kernel_of_induced(G, rho.inducing_subgroup, rho.character))
        K = intersect_all(kernels, parent=G)
        if K != prof.k_chain[i + 1]:
            bad.append(f"K_{i}: lattice order {prof.k_chain[i + 1].order}, kernels {K.order}")
        # C_i via central characters: elements of C killed by every character
        Ci = intersect_all([rho.character.kernel() & C for j in range(i + 1)
                            for rho in irreps_of_dim(G, j, f)], parent=G) & C
        if Ci != prof.k_chain[i + 1] & C:
            bad.append(f"C_{i}: chain order {(prof.k_chain[i + 1] & C).order}, characters {Ci.order}")
    return bad


def suite_lemma_ki(max_order=64) -> SuiteResult:
    res = SuiteResult("lemma-ki")
    for spec in _small(max_order):
        G = group(spec)
        for f in fields_for(G):
            t = time.perf_counter()
            bad = lemma_ki_mismatches(G, f)
            res.cases.append(Case(f"{spec} r={f.r}", [], bad, not bad, time.perf_counter() - t))
    return res


CLASS2_EXTRA = [f"extraspecial({p},{m},{k})" for p, m, k in EXTRASPECIAL_CASES]


def suite_class2(max_order=None) -> SuiteResult:
    res = SuiteResult("class2")
    specs = list(dict.fromkeys(list(_small(max_order)) + CLASS2_EXTRA))
    for spec in specs:
        G = group(spec)
        if max_order is not None and G.order > max_order:
            res.skipped.append(spec)
            continue
        try:
            b = class2_bounds(G, default_field(G))
        except NotClassTwo:
            continue
        summary = {"ed": b.ed, "bound_a": b.bound_a, "formula_b": b.formula_b, "square": b.quotient_is_square}
        ok = b.ok and (not b.derived_cyclic or (b.quotient_is_square and b.b_exact))
        res.cases.append(Case(spec, "bounds hold", summary, ok))
    return res


def suite_divisibility(max_order=None) -> SuiteResult:
    res = SuiteResult("divisibility")
    pairs = []
    for spec in _small(max_order):
        G = group(spec)
        pairs += [(spec, G, f) for f in fields_for(G)]
    for spec in [f"extraspecial({p},{m},{k})" for p, m, k in EXTRASPECIAL_CASES] + \
            ["F(4)", "F(6)", "diagD(6)", "gammaQ(heisenberg(3),2)"]:
        G = group(spec)
        if max_order is not None and G.order > max_order:
            res.skipped.append(spec)
            continue
        pairs += [(spec, G, f) for f in fields_for(G)]
    for spec, G, f in pairs:
        rep = divisibility_checks(G, f)
        res.cases.append(Case(f"{spec} r={f.r}", [], list(rep.violations), rep.ok))
    return res


def random_abelian_specs(count=10, seed=20240601, max_order=256) -> list[tuple[str, int]]:
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        p = rng.choice([2, 3, 5, 7])
        budget = int(math.log(max_order, p) + 1e-9)
        exps = []
        while budget > 0 and (not exps or rng.random() < 0.7):
            e = rng.randint(1, budget)
            exps.append(e)
            budget -= e
        exps.sort(reverse=True)
        spec = f"abelian({','.join(str(p**e) for e in exps)})"
        out.append((spec, len(exps)))
    return out


def suite_abelian(max_order=256) -> SuiteResult:
    res = SuiteResult("abelian")
    for spec, rank in random_abelian_specs(max_order=max_order or 256):
        res.cases.append(_case(f"ed {spec}", rank, lambda s=spec: chain_profile(group(s)).ed))
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "extraspecial": suite_extraspecial,
    "ed-le-p": suite_ed_le_p,
    "slnz": suite_slnz,
    "jly-quotient": suite_jly,
    "lemma-ki": suite_lemma_ki,
    "class2": suite_class2,
    "oracle": suite_oracle,
    "divisibility": suite_divisibility,
    "diagonal": suite_diagonal,
    "abelian": suite_abelian,
}


def run_suite(name: str, max_order: int | None = None) -> SuiteResult:
    fn = SUITES[name]
    if max_order is None:
        return fn()
    return fn(max_order=max_order)
