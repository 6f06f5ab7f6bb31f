"""The ten acceptance criteria at their stated tolerances.

Each test records a one-line verdict that is printed in the terminal summary.
Timed groups are built fresh so no cached lattice work is reused.
"""

import time
from collections import Counter

from essdim import zoo
from essdim.chains import chain_profile, classify_ed_le_p, default_field, divisibility_checks
from essdim.class2 import class2_bounds
from essdim.errors import NotClassTwo
from essdim.group import FieldDescriptor as F, center, derived_subgroup
from essdim.groupspec import build_group
from essdim.reps import min_faithful_dim_oracle, minimal_faithful_rep
from essdim.verify import EXTRASPECIAL_CASES, SMALL_ZOO, fields_for, group, lemma_ki_mismatches, random_abelian_specs

# (spec, field) pairs computed by criteria 1-6, checked again by criterion 8
_COMPUTED: list = []


def _timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def test_extraspecial_formula(criterion):
    bad = []
    slowest = 0.0
    for p, m, kind in EXTRASPECIAL_CASES:
        def run():
            G = zoo.extraspecial(p, m, kind)
            return G, chain_profile(G, default_field(G)).ed
        (G, ed), dt = _timed(run)
        limit = 60 if G.order == 128 else 10
        slowest = max(slowest, dt)
        _COMPUTED.append((G, default_field(G)))
        if ed != p**m or dt >= limit:
            bad.append(f"{p},{m},{kind}: ed {ed} vs {p**m} in {dt:.1f}s")
    assert criterion(1, not bad, f"8 extraspecial cases, ed = p^m, slowest {slowest:.1f}s {bad or ''}")


def test_slnz(criterion):
    bad = []
    F2 = zoo.signed_perm_F(2)
    if (F2.order, F2.exponent) != (4, 4):
        bad.append("F_2 is not Z/4")
    times = {}
    for d in (2, 3):
        def run():
            G = build_group(f"F({2 * d})")
            return G, chain_profile(G, F(2, 1)).ed
        (G, ed), dt = _timed(run)
        times[2 * d] = dt
        _COMPUTED.append((G, F(2, 1)))
        if ed != 2 * d:
            bad.append(f"ed F_{2 * d} = {ed}")
        if not center(G) <= derived_subgroup(G):
            bad.append(f"C(F_{2 * d}) not in [F,F]")
    if times[6] >= 300:
        bad.append(f"F_6 took {times[6]:.0f}s")
    assert criterion(2, not bad, f"ed F_4 = 4, ed F_6 = 6 ({times[6]:.1f}s), center inclusion, F_2 = Z/4 {bad or ''}")


def test_diagonal(criterion):
    bad = []
    for d in (2, 3):
        G = build_group(f"diagD({2 * d})")
        for f in fields_for(G):
            _COMPUTED.append((G, f))
            ed = chain_profile(G, f).ed
            if ed != 2 * d - 1:
                bad.append(f"diagD({2 * d}) r={f.r}: {ed}")
    assert criterion(3, not bad, f"ed D_4 = 3, ed D_6 = 5 {bad or ''}")


def test_quotient_counterexample(criterion):
    bad = []
    for base in ("dihedral(8)", "quaternion(8)"):
        Q = zoo.gamma_power_quotient(group(base), 2)
        P = zoo.power(group(base), 2)
        for G, want in ((Q, 4), (P, 4)):
            f = default_field(G)
            _COMPUTED.append((G, f))
            ed = chain_profile(G, f).ed
            if ed != want:
                bad.append(f"{G.name}: {ed}")

    def run():
        G = zoo.gamma_power_quotient(zoo.heisenberg(3), 2)
        return G, chain_profile(G, default_field(G)).ed
    (G, ed), dt = _timed(run)
    _COMPUTED.append((G, default_field(G)))
    if G.order != 243 or ed != 9 or dt >= 120:
        bad.append(f"Heisenberg(3)^2/H_2: order {G.order}, ed {ed}, {dt:.1f}s")
    assert criterion(4, not bad, f"Gamma^2/H_2 and Gamma^2 give 4, Heisenberg quotient gives 9 in {dt:.1f}s {bad or ''}")


def test_classification(criterion):
    groups = [s for s in SMALL_ZOO if group(s).p == 2 and group(s).order <= 64 and not group(s).is_abelian]
    bad = []
    failing_c = 0
    for spec in groups:
        G = group(spec)
        for f in fields_for(G):
            _COMPUTED.append((G, f))
            v = classify_ed_le_p(G, f)
            if not v.conditions_consistent:
                bad.append(f"{spec} r={f.r}")
            failing_c += not v.ed_le_p
    q8 = classify_ed_le_p(group("quaternion(8)"), F(2, 1))
    ok = not bad and len(groups) >= 12 and not q8.ed_le_p and failing_c > 0
    assert criterion(5, ok, f"{len(groups)} nonabelian 2-groups, {failing_c} cases with ed > p, "
                            f"{len(bad)} inconsistencies {bad or ''}")


def test_formula_vs_oracle(criterion):
    bad = []
    n = 0
    t = time.perf_counter()
    for spec in SMALL_ZOO:
        G = group(spec)
        for f in fields_for(G):
            n += 1
            _COMPUTED.append((G, f))
            prof = chain_profile(G, f)
            reps = minimal_faithful_rep(G, f)
            oracle = min_faithful_dim_oracle(G, f)
            degrees = Counter(rho.degree for rho in reps)
            want = Counter({G.p**i: d for i, d in enumerate(prof.delta) if d})
            if not (prof.ed == oracle == sum(rho.degree for rho in reps)) or degrees != want:
                bad.append(f"{spec} r={f.r}: ed {prof.ed}, oracle {oracle}, degrees {sorted(degrees.elements())}")
    dt = time.perf_counter() - t
    ok = not bad and dt < 600
    assert criterion(6, ok, f"{n} (group, r) pairs, {len(bad)} mismatches in {dt:.1f}s {bad or ''}")


def test_lemma_identities(criterion):
    bad = []
    n = 0
    for spec in SMALL_ZOO:
        G = group(spec)
        for f in fields_for(G):
            n += 1
            bad += [f"{spec} r={f.r}: {m}" for m in lemma_ki_mismatches(G, f)]
    assert criterion(7, not bad, f"{n} (group, r) pairs, {len(bad)} mismatches {bad[:3] or ''}")


def test_divisibility(criterion):
    assert _COMPUTED, "run together with criteria 1-6"
    bad = []
    seen = set()
    for G, f in _COMPUTED:
        key = (id(G), f.r)
        if key in seen:
            continue
        seen.add(key)
        rep = divisibility_checks(G, f)
        if not rep.ok:
            bad.append(f"{G.name} r={f.r}: {rep.violations}")
    assert criterion(8, not bad, f"{len(seen)} (group, r) pairs, {len(bad)} violations {bad or ''}")


def test_class2_bounds(criterion):
    specs = SMALL_ZOO + ["extraspecial(2,3,+)", "extraspecial(5,1,p)"]
    bad = []
    n = 0
    cyclic = []
    for spec in specs:
        G = group(spec)
        if G.is_abelian:
            continue
        try:
            b = class2_bounds(G, default_field(G))
        except NotClassTwo:
            continue
        n += 1
        if not b.a_holds:
            bad.append(f"{spec}: (a) {b.bound_a} < ed {b.ed}")
        if b.derived_cyclic:
            cyclic.append(spec)
            if not (b.quotient_is_square and b.b_exact):
                bad.append(f"{spec}: (b) {b.formula_b} vs ed {b.ed}")
    required = {"quaternion(8)", "dihedral(8)", "modular(16)", "extraspecial(2,2,+)", "extraspecial(2,2,-)",
                "heisenberg(3)", "extraspecial(3,1,p2)", "extraspecial(2,3,+)", "extraspecial(5,1,p)"}
    missing = required - set(cyclic)
    ok = not bad and not missing
    assert criterion(9, ok, f"{n} class-2 groups, {len(cyclic)} with cyclic [G,G], {len(bad)} violations "
                            f"{bad or ''}{sorted(missing) if missing else ''}")


def test_abelian_sanity(criterion):
    bad = []
    specs = random_abelian_specs(10, max_order=256)
    for spec, rank in specs:
        G = build_group(spec)
        ed = chain_profile(G, default_field(G)).ed
        if G.order > 256 or ed != rank:
            bad.append(f"{spec}: {ed} vs {rank}")
    assert criterion(10, not bad, f"{len(specs)} random abelian groups, ed = rank {bad or ''}")
