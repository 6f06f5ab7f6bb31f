"""EdReport: the whole pipeline for one group, as text or JSON."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass

from .chains import chain_profile, classify_ed_le_p, default_field, divisibility_checks
from .class2 import class2_bounds
from .errors import NotClassTwo
from .group import FieldDescriptor, FiniteGroup, p_torsion_center
from .reps import minimal_faithful_rep

FULL_ROOTS = "full-roots"
PARTIAL_ROOTS = "partial-roots"
PARTIAL_CAVEAT = ("k lacks a primitive root of unity of order exp(G); the chain value and "
                  "witness are computed in the partial-roots model, not asserted as the theorem")


@dataclass
class EdReport:
    spec: str
    order: int
    p: int
    r: int
    exponent: int
    center_rank: int
    chain: dict
    ed: int
    min_rep: list
    classification: dict | None
    class2: dict | None
    divisibility: dict
    field_model: str
    timings: dict | None = None

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> EdReport:
        return cls(**json.loads(text))

    def render(self) -> str:
        out = [
            f"group      {self.spec}",
            f"order      {self.order} = {self.p}^{_log(self.order, self.p)}, exponent {self.exponent}",
            f"field      p = {self.p}, r = {self.r} ({self.field_model})",
            f"rank C(G)  {self.center_rank}",
            "",
            f"{'i':>3} {'|K_i|':>7} {'dim C_i':>8} {'delta_i':>8} {'delta_i p^i':>12}",
        ]
        ch = self.chain
        for j, (k, c) in enumerate(zip(ch["k_orders"], ch["c_dims"])):
            i = j - 1
            if i < 0:
                out.append(f"{'G':>3} {k:>7} {c:>8} {'':>8} {'':>12}")
            else:
                d = ch["delta"][i]
                out.append(f"{i:>3} {k:>7} {c:>8} {d:>8} {d * self.p**i:>12}")
        out += ["", f"ed = {self.ed}", "", "minimal faithful representation:"]
        for rep in self.min_rep:
            out.append(
                f"  degree {rep['degree']:>3}  induced from index {rep['inducing_index']} "
                f"(order {rep['subgroup_order']}), lambda on generators {rep['character_on_generators']} "
                f"mod {rep['modulus']}, central character {rep['central_character']}")
        if not self.min_rep:
            out.append("  (zero-dimensional: G is trivial)")
        if self.classification:
            c = self.classification
            if c["g_prime_trivial"]:
                out.append("\ned <= p classification: G' trivial, not applicable")
            else:
                out.append(
                    f"\ned <= p: {c['ed_le_p']}, ed = p: {c['ed_eq_p']}, center cyclic: {c['center_cyclic']}, "
                    f"index-p A with A' = 1: {c['has_index_p_abelianizing_subgroup']}, "
                    f"consistent: {c['conditions_consistent']}")
        if self.class2:
            c = self.class2
            line = f"class 2: m = {c['m']}, bound (a) = {c['bound_a']}"
            if c["formula_b"] is not None:
                line += f", formula (b) = {c['formula_b']}"
            if not c["hypothesis_met"]:
                line += " (full-roots hypothesis not met, bounds not asserted)"
            out.append(line)
        if self.field_model == PARTIAL_ROOTS:
            out.append(f"\nnote: {PARTIAL_CAVEAT}")
        if self.timings:
            out.append("")
            out += [f"time {k:<14} {v:.3f}s" for k, v in self.timings.items()]
        return "\n".join(out) + "\n"


def _log(n: int, p: int) -> int:
    k = 0
    while n > 1:
        n //= p
        k += 1
    return k


def build_report(G: FiniteGroup, spec: str, r: int | None = None, timings: bool = False) -> EdReport:
    clock: dict[str, float] = {}

    def timed(label, fn, *args):
        t = time.perf_counter()
        res = fn(*args)
        clock[label] = time.perf_counter() - t
        return res

    field = default_field(G) if r is None else FieldDescriptor(G.p, r)
    model = FULL_ROOTS if field.r >= G.full_roots else PARTIAL_ROOTS
    prof = timed("chain", chain_profile, G, field)
    reps = timed("witness", minimal_faithful_rep, G, field)
    chain = {
        "k_orders": prof.k_orders,
        "c_dims": list(prof.c_dims),
        "delta": list(prof.delta),
        "terms": [d * G.p**i for i, d in enumerate(prof.delta)],
    }
    min_rep = [{
        "degree": rho.degree,
        "inducing_index": rho.degree,
        "subgroup_order": rho.inducing_subgroup.order,
        "subgroup_generators": [int(g) for g in rho.inducing_subgroup.generators],
        "character_on_generators": rho.character.on_generators(),
        "modulus": rho.character.modulus,
        "central_character": list(rho.central_character.coords),
    } for rho in reps]
    classification = None
    if G.order > 1:
        classification = asdict(timed("classification", classify_ed_le_p, G, field))
    try:
        c2 = timed("class2", class2_bounds, G, field)
        class2 = asdict(c2)
    except NotClassTwo:
        class2 = None
    div = asdict(divisibility_checks(G, field))
    # round-trip through JSON so tuples become lists and from_json(to_json(x)) == x
    chain, min_rep, classification, class2, div = json.loads(
        json.dumps([chain, min_rep, classification, class2, div]))
    return EdReport(
        spec=spec, order=G.order, p=G.p, r=field.r, exponent=G.exponent,
        center_rank=p_torsion_center(G).dim, chain=chain, ed=prof.ed, min_rep=min_rep,
        classification=classification, class2=class2, divisibility=div, field_model=model,
        timings={k: round(v, 6) for k, v in clock.items()} if timings else None,
    )
