"""Plain term rewriting, which is what run-time choice means here.

Once a rule copies an argument, the copies evolve independently, so the
set of reachable expressions is the whole story. This module provides
the one-step relation, bounded reachability search in breadth-first or
depth-first order, and the run-time denotation assembled from shells of
reachable expressions.
"""

from collections import deque
from typing import Dict, Iterator, List, Optional, Tuple

from .syntax import Program
from .terms import (
    APP,
    Term,
    apply_subst,
    down_closure,
    match_value,
    replace_at,
    shell,
    subterm_at,
)

DEPTH_FIRST = "depth-first"
BREADTH_FIRST = "breadth-first"

DEFAULT_BOUND = 10_000


class RewriteStep:
    """One application of rule `rule_index` (into Program.all_rules) at
    `position`, with `matcher` binding the rule's variables.

    Internal equations, checkable against the expression it was taken
    from:  result == replace_at(source, position, rhs·matcher)  and
    subterm_at(source, position) == lhs·matcher.
    """

    __slots__ = ("rule_index", "position", "matcher", "result")

    def __init__(self, rule_index: int, position: Tuple[int, ...],
                 matcher: Dict[str, Term], result: Term):
        self.rule_index = rule_index
        self.position = position
        self.matcher = matcher
        self.result = result

    def replay(self, program: Program, source: Term) -> bool:
        """Recheck both internal equations against the source expression."""
        rule = program.all_rules[self.rule_index]
        sub = subterm_at(source, self.position)
        if apply_subst(rule.lhs, self.matcher) is not sub:
            return False
        rebuilt = replace_at(source, self.position, apply_subst(rule.rhs, self.matcher))
        return rebuilt is self.result

    def __repr__(self):
        return "<step rule %d at %r>" % (self.rule_index, self.position)


class SearchStrategy:
    """Exploration order plus a derivation-length bound.

    `bound` limits derivation length (number of rewrite steps from the
    start expression); None means unbounded, in which case termination
    relies on the reachable state space being finite.
    """

    __slots__ = ("kind", "bound")

    def __init__(self, kind: str = BREADTH_FIRST, bound: Optional[int] = DEFAULT_BOUND):
        if kind not in (DEPTH_FIRST, BREADTH_FIRST):
            raise ValueError("unknown search strategy %r" % (kind,))
        if bound is not None and bound < 0:
            raise ValueError("bound must be non-negative")
        self.kind = kind
        self.bound = bound


def _redexes(t: Term) -> Iterator[Tuple[Tuple[int, ...], Term]]:
    # (position, subterm) pairs, leftmost-innermost order
    for i, c in enumerate(t.children, start=1):
        for pos, sub in _redexes(c):
            yield (i,) + pos, sub
    yield (), t


def one_step(program: Program, expr: Term) -> List[RewriteStep]:
    """All single rewrite steps out of expr, in a deterministic order:
    leftmost-innermost positions, rules in program order (user rules
    before the built-ins). Empty list means expr is a normal form.
    """
    if not expr.total:
        raise ValueError("rewriting inputs must be total expressions")
    sig = program.signature
    steps: List[RewriteStep] = []
    for pos, sub in _redexes(expr):
        if sub.kind != APP or not sig.is_function(sub.name):
            continue
        for idx, rule in enumerate(program.all_rules):
            if rule.name != sub.name:
                continue
            m = match_value(rule.lhs, sub)
            if m is None:
                continue
            result = replace_at(expr, pos, apply_subst(rule.rhs, m))
            steps.append(RewriteStep(idx, pos, m, result))
    return steps


class ReachStream:
    """Iterator of (expression, derivation length) pairs, deduplicated.

    Breadth-first yields by increasing derivation length, so the length
    reported for each expression is the shortest one. Depth-first
    backtracks; lengths are those of the first visit. After the stream
    is drained, `exhausted` tells whether the bound cut off at least one
    expression that was never reached another way.
    """

    __slots__ = ("exhausted", "_it")

    def __init__(self, program: Program, expr: Term, strategy: SearchStrategy):
        self.exhausted = False
        self._it = self._walk(program, expr, strategy)

    def __iter__(self):
        return self

    def __next__(self):
        return next(self._it)

    def _walk(self, program: Program, expr: Term, strategy: SearchStrategy):
        bound = strategy.bound
        visited = {expr}
        suppressed: set = set()
        if strategy.kind == BREADTH_FIRST:
            queue = deque(((expr, 0),))
            pop = queue.popleft
            push = queue.append
            order = iter
        else:
            queue = deque(((expr, 0),))
            pop = queue.pop
            push = queue.append
            order = reversed  # keep leftmost successors on top of the stack
        while queue:
            cur, n = pop()
            yield cur, n
            succs = [s.result for s in one_step(program, cur)]
            if bound is not None and n >= bound:
                suppressed.update(s for s in succs if s not in visited)
                continue
            for s in order(succs):
                if s not in visited:
                    visited.add(s)
                    push((s, n + 1))
        self.exhausted = not suppressed.issubset(visited)


def reachable(program: Program, expr: Term,
              strategy: Optional[SearchStrategy] = None) -> ReachStream:
    """Stream the expressions reachable from expr within the strategy's
    derivation-length bound, each exactly once.
    """
    if not expr.total:
        raise ValueError("rewriting inputs must be total expressions")
    return ReachStream(program, expr, strategy or SearchStrategy())


def runtime_denotation(program: Program, expr: Term, bound: int = DEFAULT_BOUND,
                       totals_only: bool = True) -> frozenset:
    """The run-time denotation of expr, up to the given derivation length.

    With totals_only, the reachable total c-terms: these are exactly the
    maximal elements of the denotation. Otherwise the full down-closure
    of the shells of all reachable expressions, which is exponential in
    term size and meant for small terms.
    """
    stream = reachable(program, expr, SearchStrategy(BREADTH_FIRST, bound))
    sig = program.signature
    fnames = frozenset(sig.functions)
    out: set = set()
    if totals_only:
        for e, _n in stream:
            if e.total and e.symbols.isdisjoint(fnames):
                out.add(e)
    else:
        for e, _n in stream:
            out |= down_closure(shell(e, sig))
    return frozenset(out)
