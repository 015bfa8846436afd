"""Parser and normalizer for Pseudo-Boolean competition (OPB) files.

Supported surface: `*` comment lines, an optional `min:` objective line
(parsed, flagged and otherwise ignored; encoding is decision-only), and
constraints of the form

    +2 x1 +3 ~x2 >= 5 ;

with relations >=, <= and =.  Every constraint is rewritten into
Pseudo-Boolean normal form: positive coefficients, each variable at most
once, relation >= with a positive threshold.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd

from .encoder import PbConstraint
from .mixedradix import Multiset


class OpbParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class RawConstraint:
    """One constraint as written: signed coefficients on possibly negated
    named variables."""

    terms: tuple[tuple[int, str, bool], ...]  # (coefficient, name, negated)
    relation: str  # ">=", "<=" or "="
    rhs: int
    line: int = 0

    def holds(self, assignment: dict[str, bool]) -> bool:
        total = 0
        for coef, name, negated in self.terms:
            v = assignment[name]
            if negated:
                v = not v
            if v:
                total += coef
        if self.relation == ">=":
            return total >= self.rhs
        if self.relation == "<=":
            return total <= self.rhs
        return total == self.rhs


@dataclass
class PbInstance:
    names: list[str]                      # index i holds the name of id i+1
    ids: dict[str, int]
    constraints: list[PbConstraint]
    sources: list[int]                    # source line per constraint
    objective: tuple[tuple[int, str, bool], ...] | None = None
    skipped_objective: bool = False

    def name_of(self, var: int) -> str:
        return self.names[var - 1]


_TOKEN = re.compile(r"\S+")
_VAR = re.compile(r"~?x\d+$")


def _tokens(text: str):
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.lstrip()
        if not stripped or stripped.startswith("*"):
            continue
        for m in _TOKEN.finditer(line):
            yield m.group(0), lineno, m.start() + 1
    yield None, -1, -1


def parse(text: str) -> tuple[list[RawConstraint], tuple | None]:
    """Raw constraints plus the objective term list, if one is present."""
    constraints: list[RawConstraint] = []
    objective: tuple | None = None

    toks = _tokens(text)
    tok, line, col = next(toks)
    while tok is not None:
        if tok == "min:":
            if objective is not None:
                raise OpbParseError("second objective line", line, col)
            terms, tail = _parse_terms(toks, need_relation=False)
            objective = tuple(terms)
            tok, line, col = tail
            continue
        first = (tok, line, col)
        terms, (rel_tok, rline, rcol) = _parse_terms(toks, need_relation=True,
                                                     first=first)
        if rel_tok not in (">=", "<=", "="):
            raise OpbParseError(f"expected a relation, got {rel_tok!r}",
                                rline, rcol)
        rhs_tok, hline, hcol = next(toks)
        rhs = _parse_int(rhs_tok, hline, hcol)
        semi, sline, scol = next(toks)
        if semi != ";":
            raise OpbParseError(f"expected ';', got {semi!r}", sline, scol)
        if not terms:
            raise OpbParseError("constraint without terms", rline, rcol)
        constraints.append(RawConstraint(tuple(terms), rel_tok, rhs,
                                         line=first[1]))
        tok, line, col = next(toks)
    return constraints, objective


def _parse_int(tok, line, col) -> int:
    if tok is None:
        raise OpbParseError("unexpected end of input", line, col)
    body = tok[1:] if tok[0] in "+-" else tok
    if not body.isdigit():
        raise OpbParseError(f"expected an integer, got {tok!r}", line, col)
    return int(tok)


def _parse_terms(toks, need_relation: bool, first=None):
    """Coefficient/variable pairs until a relation token (or ';' for the
    objective).  Returns (terms, stopping token triple)."""
    terms: list[tuple[int, str, bool]] = []
    pending = first
    while True:
        tok, line, col = pending if pending is not None else next(toks)
        pending = None
        if tok is None:
            raise OpbParseError("unexpected end of input", line, col)
        if tok in (">=", "<=", "="):
            if not need_relation:
                raise OpbParseError("relation inside objective", line, col)
            return terms, (tok, line, col)
        if tok == ";":
            if need_relation:
                raise OpbParseError("constraint without relation", line, col)
            return terms, next(toks)
        coef = _parse_int(tok, line, col)
        vtok, vline, vcol = next(toks)
        if vtok is None or not _VAR.match(vtok):
            raise OpbParseError(f"expected a variable, got {vtok!r}",
                                vline, vcol)
        negated = vtok.startswith("~")
        terms.append((coef, vtok[1:] if negated else vtok, negated))


def normalize(rc: RawConstraint, ids: dict[str, int],
              saturate: bool = False) -> list[PbConstraint]:
    """Rewrite one raw constraint into zero, one or two normal-form
    constraints over dense variable ids (registering new names in `ids`).

    `=` splits into a >= and a negated >=; `<=` negates through.  Negative
    coefficients flip the literal, duplicate occurrences of a variable
    merge, coefficients and threshold are reduced by their common gcd
    (threshold rounded up), and a constraint with a non-positive threshold
    is dropped as trivially true.  A constraint whose coefficients cannot
    reach the threshold is kept; it encodes to the empty clause.

    Saturation (clamping coefficients to the threshold) is available but
    off by default, since it changes the multisets the base search sees.
    """
    if rc.relation == "=":
        ge = RawConstraint(rc.terms, ">=", rc.rhs, rc.line)
        neg_terms = tuple((-c, n, neg) for c, n, neg in rc.terms)
        le = RawConstraint(neg_terms, ">=", -rc.rhs, rc.line)
        return normalize(ge, ids, saturate) + normalize(le, ids, saturate)
    if rc.relation == "<=":
        flipped = RawConstraint(tuple((-c, n, neg) for c, n, neg in rc.terms),
                                ">=", -rc.rhs, rc.line)
        return normalize(flipped, ids, saturate)

    # fold negated literals into coefficients on the positive variable
    rhs = rc.rhs
    net: dict[int, int] = {}
    for coef, name, negated in rc.terms:
        if name not in ids:
            ids[name] = len(ids) + 1
        var = ids[name]
        if negated:
            rhs -= coef
            coef = -coef
        net[var] = net.get(var, 0) + coef

    terms: list[tuple[int, int]] = []
    for var in sorted(net):
        coef = net[var]
        if coef > 0:
            terms.append((coef, var))
        elif coef < 0:
            terms.append((-coef, -var))
            rhs += -coef
    if rhs <= 0:
        return []

    while True:
        if saturate:
            terms = [(min(c, rhs), lit) for c, lit in terms]
        g = gcd(rhs, *[c for c, _ in terms]) if terms else rhs
        if g <= 1:
            break
        terms = [(c // g, lit) for c, lit in terms]
        rhs = -(-rhs // g)  # ceiling division
        if not saturate:
            break

    return [PbConstraint(tuple(terms), rhs)]


def load_instance(text: str, saturate: bool = False) -> PbInstance:
    raws, objective = parse(text)
    ids: dict[str, int] = {}
    constraints: list[PbConstraint] = []
    sources: list[int] = []
    for rc in raws:
        for pc in normalize(rc, ids, saturate):
            constraints.append(pc)
            sources.append(rc.line)
    names = [None] * len(ids)
    for name, i in ids.items():
        names[i - 1] = name
    return PbInstance(names, ids, constraints, sources,
                      objective=objective,
                      skipped_objective=objective is not None)


def coefficient_multiset(c: PbConstraint) -> Multiset:
    """The multiset of coefficients, duplicates preserved."""
    return Multiset.of(coef for coef, _ in c.terms)


def instance_to_opb(inst: PbInstance) -> str:
    """Render an instance back to OPB text (normalized constraints)."""
    lines = [f"* #variable= {len(inst.names)} #constraint= {len(inst.constraints)}"]
    if inst.objective is not None:
        parts = [f"{c:+d} {'~' if neg else ''}{n}" for c, n, neg in inst.objective]
        lines.append("min: " + " ".join(parts) + " ;")
    for pc in inst.constraints:
        parts = []
        for coef, lit in pc.terms:
            name = inst.name_of(abs(lit))
            parts.append(f"+{coef} {'~' if lit < 0 else ''}{name}")
        parts.append(f">= {pc.threshold} ;")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"
