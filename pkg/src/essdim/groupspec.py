"""Group-spec language and the Cayley/permutation text formats.

    extraspecial(p,m,type)   type one of p, p2, +, -, d8, q8
    dihedral(n) quaternion(n) semidihedral(n) modular(n)
    abelian(a,b,...) heisenberg(p) F(n) P2(n) diagD(n)
    gammaQ(spec,n) product(spec,spec) quotientCenterDiag(spec,n)
    perm <degree>: (1 2 3)(4 5), (1 3)
    table:<path>

Whitespace between tokens is ignored.  Errors report byte offsets into the
input.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from . import zoo
from .errors import EssDimError, SpecError
from .group import ORDER_CAP, FiniteGroup, from_cayley_table, from_permutations, perm_from_cycles, promote


@dataclass(frozen=True)
class GroupSpec:
    name: str
    args: tuple = field(default_factory=tuple)
    offset: int = 0

    def __str__(self):
        if self.name == "perm":
            degree, gens = self.args
            body = ", ".join("".join("(" + " ".join(map(str, c)) + ")" for c in g) or "()" for g in gens)
            return f"perm {degree}: {body}"
        if self.name == "table":
            return f"table:{self.args[0]}"
        return f"{self.name}({','.join(str(a) for a in self.args)})"


_INT_ARGS = {
    "dihedral": 1, "quaternion": 1, "semidihedral": 1, "modular": 1,
    "heisenberg": 1, "F": 1, "P2": 1, "diagD": 1,
}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def offset(self, i: int | None = None) -> int:
        return len(self.text[: self.i if i is None else i].encode())

    def fail(self, msg: str, i: int | None = None):
        raise SpecError(msg, self.offset(i))

    def ws(self):
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.ws()
        return self.text[self.i] if self.i < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            self.fail(f"expected {ch!r}, found {found}")
        self.i += 1

    def ident(self) -> str:
        self.ws()
        start = self.i
        while self.i < len(self.text) and (self.text[self.i].isalnum() or self.text[self.i] == "_"):
            self.i += 1
        if start == self.i:
            self.fail("expected a constructor name")
        return self.text[start:self.i]

    def integer(self) -> int:
        self.ws()
        start = self.i
        while self.i < len(self.text) and self.text[self.i].isdigit():
            self.i += 1
        if start == self.i:
            self.fail("expected an integer")
        return int(self.text[start:self.i])

    def word(self) -> str:
        self.ws()
        start = self.i
        while self.i < len(self.text) and (self.text[self.i].isalnum() or self.text[self.i] in "+-"):
            self.i += 1
        if start == self.i:
            self.fail("expected a type word")
        return self.text[start:self.i]

    def top(self) -> GroupSpec:
        self.ws()
        rest = self.text[self.i:]
        if rest.startswith("table:"):
            start = self.i
            path = rest[len("table:"):].strip()
            if not path:
                self.fail("table: needs a path", start + 6)
            self.i = len(self.text)
            return GroupSpec("table", (path,), self.offset(start))
        if rest.startswith("perm") and not rest[4:5].isalnum() and rest[4:5] != "(":
            spec = self.perm()
        else:
            spec = self.call()
        if self.peek():
            self.fail(f"unexpected trailing input {self.peek()!r}")
        return spec

    def perm(self) -> GroupSpec:
        start = self.i
        self.i += 4
        degree = self.integer()
        self.expect(":")
        gens = []
        while True:
            gens.append(self.cycles(degree))
            if self.peek() != ",":
                break
            self.i += 1
        return GroupSpec("perm", (degree, tuple(gens)), self.offset(start))

    def cycles(self, degree: int) -> tuple:
        out = []
        if self.peek() != "(":
            self.fail("expected '(' to start a cycle")
        while self.peek() == "(":
            self.i += 1
            cyc = []
            while self.peek() != ")":
                if not self.peek():
                    self.fail("unterminated cycle")
                pos = self.i
                pt = self.integer()
                if not 1 <= pt <= degree:
                    self.fail(f"point {pt} outside 1..{degree}", pos)
                if pt in cyc:
                    self.fail(f"point {pt} repeated in a cycle", pos)
                cyc.append(pt)
                if self.peek() == ",":
                    self.i += 1
            self.i += 1
            if cyc:
                out.append(tuple(cyc))
        return tuple(out)

    def call(self) -> GroupSpec:
        self.ws()
        start = self.i
        name = self.ident()
        self.expect("(")
        if name in _INT_ARGS:
            args = (self.integer(),)
        elif name == "abelian":
            args = [self.integer()]
            while self.peek() == ",":
                self.i += 1
                args.append(self.integer())
            args = tuple(args)
        elif name == "extraspecial":
            p = self.integer()
            self.expect(",")
            m = self.integer()
            self.expect(",")
            pos = self.i
            kind = self.word()
            if kind not in zoo.EXTRASPECIAL_TYPES:
                self.fail(f"unknown extraspecial type {kind!r}", pos)
            args = (p, m, kind)
        elif name in ("gammaQ", "quotientCenterDiag"):
            inner = self.call()
            self.expect(",")
            args = (inner, self.integer())
        elif name == "product":
            a = self.call()
            self.expect(",")
            args = (a, self.call())
        else:
            self.fail(f"unknown constructor {name!r}", start)
        self.expect(")")
        return GroupSpec(name, args, self.offset(start))


def parse_group_spec(text: str) -> GroupSpec:
    return _Parser(text).top()


def _estimated_order(spec: GroupSpec) -> int | None:
    """Order implied by the parameters alone, when cheap to know."""
    n = spec.args[0] if spec.args else None
    if spec.name in ("dihedral", "quaternion", "semidihedral", "modular"):
        return n
    if spec.name == "abelian":
        out = 1
        for a in spec.args:
            out *= a
        return out
    if spec.name == "extraspecial":
        return spec.args[0] ** (2 * spec.args[1] + 1)
    if spec.name == "heisenberg":
        return n**3
    if spec.name == "product":
        a, b = (_estimated_order(s) for s in spec.args)
        return a * b if a and b else None
    return None


def build_group(spec: GroupSpec | str, max_order: int = ORDER_CAP) -> FiniteGroup:
    if isinstance(spec, str):
        spec = parse_group_spec(spec)
    est = _estimated_order(spec)
    if est is not None and est > max_order:
        raise SpecError(f"{spec} has order {est} > {max_order}", spec.offset)
    try:
        G = _build(spec)
    except SpecError:
        raise
    except (EssDimError, ValueError) as exc:
        raise SpecError(f"{spec}: {exc}", spec.offset) from exc
    if G.order > max_order:
        raise SpecError(f"{spec} has order {G.order} > {max_order}", spec.offset)
    return G


def _build(spec: GroupSpec) -> FiniteGroup:
    name, args = spec.name, spec.args
    simple = {
        "dihedral": zoo.dihedral, "quaternion": zoo.quaternion,
        "semidihedral": zoo.semidihedral, "modular": zoo.modular,
        "heisenberg": zoo.heisenberg, "F": zoo.signed_perm_F, "P2": zoo.sylow2_sym,
    }
    if name in simple:
        return simple[name](*args)
    if name == "abelian":
        return zoo.abelian(list(args))
    if name == "extraspecial":
        return zoo.extraspecial(*args)
    if name == "diagD":
        F = zoo.signed_perm_F(args[0])
        return promote(F, zoo.diag_subgroup_D(F))[0]
    if name == "gammaQ":
        return zoo.gamma_power_quotient(_build(args[0]), args[1])
    if name == "quotientCenterDiag":
        return zoo.quotient_center_diag(_build(args[0]), args[1])
    if name == "product":
        from .group import direct_product

        return direct_product(_build(args[0]), _build(args[1]))
    if name == "perm":
        degree, gens = args
        return from_permutations(degree, [perm_from_cycles(degree, g) for g in gens], name=str(spec))
    if name == "table":
        return read_group_file(args[0])
    raise SpecError(f"unknown constructor {name!r}", spec.offset)


def parse_cayley_text(text: str) -> FiniteGroup:
    """``order <n> prime <p>`` followed by n rows of n 0-based indices."""
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise SpecError("empty Cayley table", 0)
    head = lines[0].split()
    if len(head) != 4 or head[0] != "order" or head[2] != "prime":
        raise SpecError("first line must be 'order <n> prime <p>'", 0)
    try:
        n, p = int(head[1]), int(head[3])
        rows = [[int(x) for x in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise SpecError(f"non-integer entry: {exc}", 0) from exc
    if len(rows) != n or any(len(r) != n for r in rows):
        raise SpecError(f"expected {n} rows of {n} entries", 0)
    return from_cayley_table(rows, p)


def read_group_file(path: str) -> FiniteGroup:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}", 0) from exc
    if text.lstrip().startswith("perm"):
        return build_group(parse_group_spec(text.strip()))
    return parse_cayley_text(text)


def write_cayley_text(G: FiniteGroup) -> str:
    lines = [f"order {G.order} prime {G.p}"]
    lines += [" ".join(str(int(x)) for x in row) for row in G.mul]
    return "\n".join(lines) + "\n"
