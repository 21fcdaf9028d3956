"""Terms, orderings, matching and the shared low-level vocabulary.

Expressions are trees built from three node kinds: variables, an explicit
"undefined" leaf (input token ``bot``, printed ``_|_``), and applications
of named symbols. Whether an application is a constructor or a defined
function is not a property of the tree; it is decided by the Signature the
term is used with, so the same term values can be shared freely between
programs.

Terms are interned: structurally equal terms are the same object. Equality
is therefore identity, hashes are precomputed, and frequently needed facts
(depth, variable set, applied symbols, totality, canonical sort key) are
stored on the node at construction time. This is what keeps the denotation
enumerator affordable. Interning is not thread safe; build terms from one
thread and share them read-only afterwards.
"""

from __future__ import annotations

from itertools import product
from typing import Iterator, Mapping, Optional, Sequence

BOTTOM, VAR, APP = 0, 1, 2


class Term:
    __slots__ = (
        "kind",
        "name",
        "children",
        "depth",
        "size",
        "weight",
        "total",
        "varset",
        "symbols",
        "key",
        "_hash",
    )

    kind: int
    name: str
    children: tuple["Term", ...]
    depth: int
    size: int
    weight: int
    total: bool
    varset: frozenset
    symbols: frozenset
    key: tuple

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:  # debugging aid, not the surface printer
        if self.kind == BOTTOM:
            return "_|_"
        if self.kind == VAR:
            return self.name
        if not self.children:
            return self.name
        return "%s(%s)" % (self.name, ",".join(repr(c) for c in self.children))


_TABLE: dict = {}


def _make(kind: int, name: str, children: tuple) -> Term:
    probe = (kind, name, children)
    hit = _TABLE.get(probe)
    if hit is not None:
        return hit
    t = Term.__new__(Term)
    t.kind = kind
    t.name = name
    t.children = children
    if kind == BOTTOM:
        t.depth = 0
        t.size = 1
        t.weight = 0
        t.total = False
        t.varset = frozenset()
        t.symbols = frozenset()
        t.key = (0, 0)
    elif kind == VAR:
        t.depth = 0
        t.size = 1
        t.weight = 1
        t.total = True
        t.varset = frozenset((name,))
        t.symbols = frozenset()
        t.key = (0, 1, name)
    else:
        t.depth = 1 + max((c.depth for c in children), default=0)
        t.size = 1 + sum(c.size for c in children)
        t.weight = 1 + sum(c.weight for c in children)
        t.total = all(c.total for c in children)
        vs: frozenset = frozenset()
        sy: frozenset = frozenset((name,))
        for c in children:
            if c.varset:
                vs = vs | c.varset
            if c.symbols:
                sy = sy | c.symbols
        t.varset = vs
        t.symbols = sy
        t.key = (t.depth, 2, name, tuple(c.key for c in children))
    t._hash = hash(probe)
    _TABLE[probe] = t
    return t


BOT: Term = _make(BOTTOM, "", ())


def var(name: str) -> Term:
    return _make(VAR, name, ())


def app(name: str, children: Sequence[Term] = ()) -> Term:
    return _make(APP, name, tuple(children))


def term_key(t: Term) -> tuple:
    """Canonical sort key: by depth, with _|_ least and variables before
    applications, then by root name and children."""
    return t.key


def approx_leq(a: Term, b: Term) -> bool:
    """The approximation ordering: a is b with some subterms cut to _|_."""
    if a is BOT or a is b:
        return True
    if a.kind != APP or b.kind != APP or a.name != b.name:
        return False
    if len(a.children) != len(b.children):
        return False
    return all(approx_leq(x, y) for x, y in zip(a.children, b.children))


_DC_CACHE: dict = {}


def down_closure(t: Term) -> frozenset:
    """All terms below t in the approximation ordering.

    Exponential in the size of t; memoized on the interned term so shared
    subterms pay once.
    """
    if t is BOT:
        return frozenset((BOT,))
    if t.kind == VAR:
        return frozenset((BOT, t))
    got = _DC_CACHE.get(t)
    if got is not None:
        return got
    out = {BOT}
    for combo in product(*(down_closure(c) for c in t.children)):
        out.add(app(t.name, combo))
    result = frozenset(out)
    _DC_CACHE[t] = result
    return result


def apply_subst(t: Term, mapping: Mapping[str, Term]) -> Term:
    if not mapping or t.varset.isdisjoint(mapping):
        return t
    if t.kind == VAR:
        return mapping.get(t.name, t)
    return app(t.name, tuple(apply_subst(c, mapping) for c in t.children))


def match_value(pattern: Term, value: Term) -> Optional[dict]:
    """Match a linear constructor pattern against a partial value.

    Returns the unique binding map (identity bindings omitted) such that
    applying it to the pattern reproduces the value, or None. _|_ in the
    value matches only pattern variables.
    """
    out: dict = {}
    if _match(pattern, value, out):
        return out
    return None


def _match(p: Term, t: Term, out: dict) -> bool:
    if p.kind == VAR:
        if p.name in out:
            return out[p.name] is t  # repeated var: tolerate, require same value
        if not (t.kind == VAR and t.name == p.name):
            out[p.name] = t
        return True
    if p.kind == BOTTOM:
        return t is BOT
    if t.kind != APP or t.name != p.name or len(t.children) != len(p.children):
        return False
    return all(_match(pc, tc, out) for pc, tc in zip(p.children, t.children))


class PositionError(ValueError):
    pass


def positions(t: Term) -> Iterator[tuple]:
    """All positions of t, root first, children left to right (1-based)."""
    yield ()
    for i, c in enumerate(t.children, start=1):
        for rest in positions(c):
            yield (i,) + rest


def subterm_at(t: Term, pos: Sequence[int]) -> Term:
    cur = t
    for i in pos:
        if cur.kind != APP or not (1 <= i <= len(cur.children)):
            raise PositionError("no position %r in %r" % (tuple(pos), t))
        cur = cur.children[i - 1]
    return cur


def replace_at(t: Term, pos: Sequence[int], repl: Term) -> Term:
    if not pos:
        return repl
    i = pos[0]
    if t.kind != APP or not (1 <= i <= len(t.children)):
        raise PositionError("no position %r in %r" % (tuple(pos), t))
    kids = list(t.children)
    kids[i - 1] = replace_at(kids[i - 1], pos[1:], repl)
    return app(t.name, tuple(kids))


class SignatureError(ValueError):
    pass


class Signature:
    """Disjoint constructor and function symbol tables with arities.

    The choice operator `?` and the conditional `if_then` are functions of
    arity 2 in every signature. tt and ff are always nullary constructors.
    """

    __slots__ = ("constructors", "functions")

    def __init__(self, constructors=None, functions=None):
        self.constructors = dict(constructors or {})
        self.functions = dict(functions or {})
        for builtin in ("?", "if_then"):
            have = self.functions.setdefault(builtin, 2)
            if have != 2:
                raise SignatureError("%s must have arity 2" % builtin)
        for const in ("tt", "ff"):
            have = self.constructors.setdefault(const, 0)
            if have != 0:
                raise SignatureError("%s must be a constant" % const)
        clash = set(self.constructors) & set(self.functions)
        if clash:
            raise SignatureError(
                "symbols are both constructor and function: %s" % ", ".join(sorted(clash))
            )
        for table in (self.constructors, self.functions):
            for name, ar in table.items():
                if not isinstance(ar, int) or ar < 0:
                    raise SignatureError("bad arity for %s: %r" % (name, ar))

    def is_function(self, name: str) -> bool:
        return name in self.functions

    def is_constructor(self, name: str) -> bool:
        return name in self.constructors

    def arity(self, name: str) -> Optional[int]:
        if name in self.constructors:
            return self.constructors[name]
        return self.functions.get(name)

    def ensure_constant(self, name: str) -> None:
        """Register an ad-hoc nullary constructor (used by query parsing)."""
        if name in self.functions:
            raise SignatureError("%s is a function" % name)
        have = self.constructors.setdefault(name, 0)
        if have != 0:
            raise SignatureError("%s already has arity %d" % (name, have))

    def is_cterm(self, t: Term) -> bool:
        """No defined function symbol anywhere in t."""
        return t.symbols.isdisjoint(self.functions)

    def check_arities(self, t: Term) -> None:
        if t.kind == APP:
            ar = self.arity(t.name)
            if ar is not None and ar != len(t.children):
                raise SignatureError(
                    "%s used with %d arguments, declared with %d"
                    % (t.name, len(t.children), ar)
                )
            for c in t.children:
                self.check_arities(c)


def shell(t: Term, sig: Signature) -> Term:
    """The outer constructor part: function-rooted subterms become _|_."""
    if t.kind != APP:
        return t
    if sig.is_function(t.name):
        return BOT
    return app(t.name, tuple(shell(c, sig) for c in t.children))


def is_linear(terms: Sequence[Term]) -> bool:
    """True when no variable occurs twice across the given tuple of terms."""
    seen: set = set()
    total = 0
    for t in terms:
        total += _count_var_occurrences(t)
        seen |= t.varset
    return total == len(seen)


def _count_var_occurrences(t: Term) -> int:
    if t.kind == VAR:
        return 1
    return sum(_count_var_occurrences(c) for c in t.children)
