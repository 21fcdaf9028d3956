"""Disjunctive substitutions and the algebra of plural parameter passing.

A plain substitution (PSubst) is a dict mapping variable names to partial
c-terms, identity bindings omitted. A DisjSubst maps each variable to a
non-empty disjunction of partial c-terms; plain substitutions embed as the
all-singleton case. The ?-combination of several plain substitutions, the
compressibility test on substitution sets, and compressible completion
live here; the calculi consume them for parameter passing.

Alternative lists are kept deduplicated and canonically sorted. Denotation
is invariant under reordering and duplication of alternatives, so nothing
is lost, and streams become deterministic.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Set, Tuple

from .terms import Term, app, apply_subst, approx_leq, term_key, var

PSubst = Dict[str, Term]


def image_of(theta: Mapping[str, Term], name: str) -> Term:
    """X under theta; identity for variables outside the domain."""
    return theta.get(name, var(name))


def restrict(theta: Mapping[str, Term], keep: Iterable[str]) -> PSubst:
    keep = set(keep)
    return {x: t for x, t in theta.items() if x in keep}


def subst_key(theta: Mapping[str, Term]) -> tuple:
    """Canonical substitution order: by sorted (variable, image) items."""
    return tuple(sorted((x, term_key(t)) for x, t in theta.items()))


def subst_leq(a: Mapping[str, Term], b: Mapping[str, Term]) -> bool:
    """Pointwise approximation over the union of both domains."""
    names = set(a) | set(b)
    return all(approx_leq(image_of(a, x), image_of(b, x)) for x in names)


def maximal_substs(thetas: Iterable[Mapping[str, Term]]) -> List[PSubst]:
    """The maximal elements under pointwise approximation, input order kept."""
    uniq: List[PSubst] = []
    seen = set()
    for t in thetas:
        d = dict(t)
        frozen = frozenset(d.items())
        if frozen not in seen:
            seen.add(frozen)
            uniq.append(d)
    if len(uniq) <= 1:
        return uniq
    # sweep heavy-to-light so every dominator is met before its victims;
    # identity bindings score zero whether explicit or dropped, so the
    # weight is consistent across the union domains subst_leq inspects,
    # and it strictly decreases along proper pointwise approximation
    order = sorted(
        range(len(uniq)),
        key=lambda i: -sum(t.weight - 1 for t in uniq[i].values()),
    )
    kept: List[int] = []
    for i in order:
        c = uniq[i]
        if not any(subst_leq(c, uniq[j]) for j in kept):
            kept.append(i)
    kept.sort()
    return [uniq[i] for i in kept]


class DisjSubst:
    """Map from variable names to non-empty disjunctions of partial c-terms.

    Stored canonicalized: alternatives sorted by the canonical term order
    with duplicates collapsed; a variable bound only to itself is dropped
    from the domain. Hashable, so substitution choices deduplicate.
    """

    __slots__ = ("alts", "_hash")

    def __init__(self, alts: Mapping[str, Sequence[Term]]):
        canon: Dict[str, Tuple[Term, ...]] = {}
        for name, terms in alts.items():
            if not terms:
                raise ValueError("empty disjunction for %s" % name)
            unique = sorted(set(terms), key=term_key)
            if len(unique) == 1 and unique[0] is var(name):
                continue
            canon[name] = tuple(unique)
        self.alts = canon
        self._hash = hash(tuple(sorted((n, ts) for n, ts in canon.items())))

    @classmethod
    def plain(cls, theta: Mapping[str, Term]) -> "DisjSubst":
        return cls({x: (t,) for x, t in theta.items()})

    @property
    def dom(self) -> Set[str]:
        return set(self.alts)

    def chain(self, name: str) -> Term:
        """The alternatives of one variable as a right-nested ?-term."""
        ts = self.alts.get(name)
        if ts is None:
            return var(name)
        out = ts[-1]
        for t in reversed(ts[:-1]):
            out = app("?", (t, out))
        return out

    def apply(self, t: Term) -> Term:
        return apply_subst(t, {x: self.chain(x) for x in self.alts})

    def is_plain(self) -> bool:
        return all(len(ts) == 1 for ts in self.alts.values())

    def __eq__(self, other):
        return isinstance(other, DisjSubst) and self.alts == other.alts

    def __hash__(self):
        return self._hash

    def __repr__(self):
        inner = ", ".join(
            "%s/%s" % (x, " ? ".join(repr(t) for t in ts))
            for x, ts in sorted(self.alts.items())
        )
        return "[%s]" % inner


def question_combine(thetas: Sequence[Mapping[str, Term]]) -> DisjSubst:
    """?-combine an ordered sequence of plain substitutions.

    For each variable in the union of the domains: if every substitution
    binds it, the disjunction collects all its images; otherwise the
    variable itself is an extra first alternative and the images come from
    exactly the substitutions that do bind it.
    """
    if not thetas:
        raise ValueError("cannot ?-combine an empty sequence")
    names: Set[str] = set()
    for t in thetas:
        names |= set(t)
    alts: Dict[str, List[Term]] = {}
    for x in names:
        images = [t[x] for t in thetas if x in t]
        if len(images) < len(thetas):
            alts[x] = [var(x)] + images
        else:
            alts[x] = images
    return DisjSubst(alts)


def question_combine_set(thetas: Iterable[Mapping[str, Term]]) -> DisjSubst:
    """Set form: order the substitutions canonically, then combine."""
    ordered = sorted((dict(t) for t in thetas), key=subst_key)
    return question_combine(ordered)


def _tuples_over(thetas: Sequence[Mapping[str, Term]], names: Sequence[str]):
    return [tuple(image_of(t, x) for x in names) for t in thetas]


def is_compressible(thetas: Iterable[Mapping[str, Term]]) -> bool:
    """Whether the variable-image tuples of the set form a full product.

    Uses the recombination criterion: for every way of picking one member
    substitution per variable there must be a member realizing exactly the
    picked images, coordinate by coordinate. Singletons and
    single-variable domains are immediate.
    """
    pool = [dict(t) for t in thetas]
    names = sorted(set().union(*pool) if pool else set())
    if len(pool) <= 1 or len(names) <= 1:
        return True
    rows = sorted(set(_tuples_over(pool, names)), key=lambda r: tuple(map(term_key, r)))
    if len(rows) <= 1:
        return True
    rowset = set(rows)
    for picks in product(rows, repeat=len(names)):
        recombined = tuple(picks[i][i] for i in range(len(names)))
        if recombined not in rowset:
            return False
    return True


def compressible_completion(thetas: Iterable[Mapping[str, Term]]) -> List[PSubst]:
    """cc: all coordinate recombinations, one image per variable per member."""
    pool = [dict(t) for t in thetas]
    if not pool:
        raise ValueError("compressible completion of an empty set")
    names = sorted(set().union(*pool))
    columns = [sorted({image_of(t, x) for t in pool}, key=term_key) for x in names]
    seen = set()
    out: List[PSubst] = []
    for picked in product(*columns):
        theta = {x: img for x, img in zip(names, picked) if img is not var(x)}
        frozen = frozenset(theta.items())
        if frozen not in seen:
            seen.add(frozen)
            out.append(theta)
    return out


def restrict_compressible(
    thetas: Iterable[Mapping[str, Term]], keep: Iterable[str]
) -> List[PSubst]:
    """Restrict a compressible set to a variable subset; stays compressible."""
    pool = [dict(t) for t in thetas]
    if not is_compressible(pool):
        raise ValueError("restrict_compressible: input set is not compressible")
    keep = set(keep)
    seen = set()
    out: List[PSubst] = []
    for t in pool:
        r = restrict(t, keep)
        frozen = frozenset(r.items())
        if frozen not in seen:
            seen.add(frozen)
            out.append(r)
    assert is_compressible(out)
    return out


def compressible_subsets(
    thetas: Sequence[Mapping[str, Term]], width: int
) -> Iterator[Tuple[PSubst, ...]]:
    """Non-empty compressible subsets of at most `width` substitutions.

    Input is canonically ordered first so enumeration order is stable.
    """
    pool = sorted((dict(t) for t in thetas), key=subst_key)
    top = min(width, len(pool)) if width else len(pool)
    for size in range(1, top + 1):
        for combo in combinations(pool, size):
            if size == 1 or is_compressible(combo):
                yield combo
