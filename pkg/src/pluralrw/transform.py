"""Compilation of plural pattern matching into plain rewriting.

Each transformed rule delays its pattern match: the patterns move into a
fresh boolean `match` function and the variables they would have bound
are fetched by fresh `proj` functions. Since every projection re-matches
the same argument expression independently, plain rewriting of the
transformed program recombines bindings the way plural parameter passing
does. The class analyzer `is_class_cab` identifies programs on which the
two plural semantics agree.

Fresh symbols are named `match$k` and `proj$k$v` (k the source rule
index, v the projected variable); `$` cannot occur in surface
identifiers, so they are collision-free by construction.
"""

from typing import Dict, FrozenSet, List, Tuple

from .syntax import PL, Program, Rule, assemble_program
from .terms import APP, Term, app, apply_subst, var

UNTOUCHED = "untouched"
SIMPLE = "simple"
OPT_IDENTITY = "optimized-identity"
OPT_PARTIAL = "optimized-partial"


class TransformReport:
    """Transformation outcome: the output program, the fresh-symbol table
    (fresh name -> source rule index), and one applied-case label per
    source rule."""

    __slots__ = ("output", "fresh", "cases")

    def __init__(self, output: Program, fresh: Dict[str, int], cases: Tuple[str, ...]):
        self.output = output
        self.fresh = fresh
        self.cases = cases

    def __repr__(self):
        return "<transform %s: %s>" % (self.output.name, ", ".join(self.cases) or "no rules")


def _fresh_symbol(base: str, taken) -> str:
    # `$` already guarantees freshness against surface programs; the loop
    # only matters when a transformed program is transformed again
    name = base
    while name in taken:
        name += "$"
    return name


def _fresh_var(index: int, used: FrozenSet[str]) -> str:
    name = "Y%d" % index
    while name in used:
        name += "_"
    return name


def _transform(program: Program, route_all: bool) -> TransformReport:
    taken = set(program.signature.constructors) | set(program.signature.functions)
    fresh: Dict[str, int] = {}
    cases: List[str] = []
    out_rules: List[Tuple[Term, Term]] = []
    for k, rule in enumerate(program.rules):
        args = rule.args
        if route_all:
            routed = list(range(len(args)))
        else:
            routed = [
                i for i, p in enumerate(args) if p.kind == APP and p.varset
            ]
        if not route_all and not routed:
            out_rules.append((rule.lhs, rule.rhs))
            cases.append(UNTOUCHED)
            continue
        used = rule.lhs.varset | rule.rhs.varset
        ys = {i: var(_fresh_var(i + 1, used)) for i in routed}
        match_name = _fresh_symbol("match$%d" % k, taken)
        taken.add(match_name)
        fresh[match_name] = k

        new_args = tuple(ys.get(i, p) for i, p in enumerate(args))
        mapping: Dict[str, Term] = {}
        proj_rules: List[Tuple[Term, Term]] = []
        for i in routed:
            for x in sorted(args[i].varset & rule.rhs.varset):
                proj_name = _fresh_symbol("proj$%d$%s" % (k, x), taken)
                taken.add(proj_name)
                fresh[proj_name] = k
                proj_rules.append((app(proj_name, (args[i],)), var(x)))
                mapping[x] = app(proj_name, (ys[i],))
        guard = app(match_name, tuple(ys[i] for i in routed))
        body = apply_subst(rule.rhs, mapping)
        out_rules.append((app(rule.name, new_args), app("if_then", (guard, body))))
        out_rules.append((app(match_name, tuple(args[i] for i in routed)), app("tt")))
        out_rules.extend(proj_rules)
        if route_all:
            cases.append(SIMPLE)
        elif len(routed) == len(args):
            cases.append(OPT_IDENTITY)
        else:
            cases.append(OPT_PARTIAL)
    output = assemble_program(program.name + "-pst", out_rules)
    return TransformReport(output, fresh, tuple(cases))


def pst_simple(program: Program) -> TransformReport:
    """Route every argument of every rule through match/proj functions."""
    return _transform(program, route_all=True)


def pst_optimized(program: Program) -> TransformReport:
    """Route only the arguments where delaying the match can matter: those
    that are neither variables nor ground. Rules with no such argument
    are kept as they are."""
    return _transform(program, route_all=False)


pst = pst_optimized


def is_class_cab(program: Program, respect_plurality: bool = False):
    """Whether each lhs argument shares at most one variable with its rhs.

    On such programs the two plural semantics coincide. With
    respect_plurality, arguments declared singular are exempt, since they
    never bind more than one value anyway. Returns (verdict, violations),
    each violation a (rule, argument position (1-based), shared variable
    set) triple.
    """
    violations: List[Tuple[Rule, int, FrozenSet[str]]] = []
    for rule in program.rules:
        tags = program.plurality_of(rule.name) if respect_plurality else None
        for i, p in enumerate(rule.args):
            if tags is not None and tags[i] != PL:
                continue
            shared = p.varset & rule.rhs.varset
            if len(shared) > 1:
                violations.append((rule, i + 1, frozenset(shared)))
    return (not violations, violations)
