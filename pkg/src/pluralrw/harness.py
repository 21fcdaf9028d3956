"""Randomized differential checks across the semantics implementations.

Small constructor-based programs are generated deterministically from a
seed, then the per-mode denotations are computed at matched bounds and
compared against the inclusions they must satisfy. Violations come out as
machine-readable witness lines, one per line: program text, expression,
semantics pair, witness term. A command line runner drives seed ranges.
"""

from __future__ import annotations

import argparse
import random
import sys
from collections import deque
from itertools import product
from typing import FrozenSet, List, Optional, Sequence, Tuple

from .calculi import (
    ALPHA,
    BETA,
    BudgetExceeded,
    CALL_TIME,
    DenotationStream,
    EnumConfig,
    Enumerator,
)
from .disjsubst import image_of, is_compressible
from .rewriting import one_step
from .syntax import Program, assemble_program, format_program, format_term
from .terms import APP, BOT, Term, app, apply_subst, term_key, var
from .transform import is_class_cab, pst_optimized, pst_simple

HOLE_NAME = "HOLE"
HOLE = var(HOLE_NAME)

_CONSTRUCTORS = (("0", 0), ("1", 0), ("c", 1), ("d", 2))

GATING_SUITES = ("hierarchy", "pst", "cab", "bubbling", "compress")
SUITES = GATING_SUITES + ("rightlinear",)


class GenConfig:
    """Knobs for the random program generator. Deterministic per seed."""

    __slots__ = (
        "seed",
        "max_constructors",
        "max_functions",
        "max_arity",
        "max_rules",
        "max_rhs_depth",
        "shared_var_prob",
        "force_cab",
    )

    def __init__(
        self,
        seed: int,
        max_constructors: int = 4,
        max_functions: int = 3,
        max_arity: int = 2,
        max_rules: int = 3,
        max_rhs_depth: int = 3,
        shared_var_prob: float = 0.35,
        force_cab: bool = False,
    ):
        if not 1 <= max_constructors <= len(_CONSTRUCTORS):
            raise ValueError("max_constructors out of range")
        if max_functions < 1 or max_arity < 1 or max_rules < 1:
            raise ValueError("need at least one function, argument and rule")
        if max_rhs_depth < 0:
            raise ValueError("negative rhs depth")
        if not 0.0 <= shared_var_prob <= 1.0:
            raise ValueError("shared_var_prob must be a probability")
        self.seed = seed
        self.max_constructors = max_constructors
        self.max_functions = max_functions
        self.max_arity = max_arity
        self.max_rules = max_rules
        self.max_rhs_depth = max_rhs_depth
        self.shared_var_prob = shared_var_prob
        self.force_cab = force_cab


def _gen_pattern(rng: random.Random, cons, depth: int, namer) -> Term:
    roll = rng.random()
    if depth <= 0 or roll < 0.45:
        return var(namer())
    name, ar = rng.choice(cons)
    return app(name, tuple(_gen_pattern(rng, cons, depth - 1, namer) for _ in range(ar)))


def _gen_rhs(rng, cons, callables, recursive, arg_vars, cfg, used_by_arg, used):
    """One rhs term. `used_by_arg`/`used` persist across the whole rhs so
    the force-C_AB discipline (one rhs variable per lhs argument) and the
    shared-variable bias see every choice made so far."""

    def pick_var() -> Optional[Term]:
        if used and rng.random() < cfg.shared_var_prob:
            return var(rng.choice(sorted(used)))
        open_args = []
        for i, names in enumerate(arg_vars):
            if not names:
                continue
            if cfg.force_cab and i in used_by_arg:
                open_args.append((i, [used_by_arg[i]]))
            else:
                open_args.append((i, names))
        if not open_args:
            return None
        i, names = rng.choice(open_args)
        name = rng.choice(names)
        used_by_arg.setdefault(i, name)
        used.add(name)
        return var(name)

    def build(depth: int, allow_rec: bool, fun_budget: int) -> Term:
        roll = rng.random()
        if depth <= 0:
            picked = pick_var() if roll < 0.5 else None
            if picked is not None:
                return picked
            return app(rng.choice([n for n, a in cons if a == 0]))
        if roll < 0.3:
            picked = pick_var()
            if picked is not None:
                return picked
            roll = 0.5
        if allow_rec and recursive is not None and fun_budget > 0 and roll > 0.78:
            fname, arity, j, inner = recursive
            args = [
                var(inner) if i == j else build(0, False, 0) for i in range(arity)
            ]
            return app(fname, tuple(args))
        if callables and fun_budget > 0 and roll > 0.62:
            fname, arity = rng.choice(callables)
            return app(
                fname,
                tuple(build(depth - 1, False, fun_budget - 1) for _ in range(arity)),
            )
        name, ar = rng.choice(cons)
        return app(name, tuple(build(depth - 1, allow_rec, fun_budget) for _ in range(ar)))

    # composition towers multiply value sets, so only two nested calls
    return build(cfg.max_rhs_depth, True, 2)


def gen_program(cfg: GenConfig) -> Program:
    """A valid left-linear constructor-based program, deterministic in
    cfg.seed. Function calls are acyclic except for self-recursion that
    routes a variable from strictly inside a constructor pattern back into
    the same argument position, so rewriting always terminates."""
    rng = random.Random(cfg.seed)
    cons = list(_CONSTRUCTORS[: cfg.max_constructors])
    funs = [
        ("f%d" % (i + 1), rng.randint(1, cfg.max_arity))
        for i in range(rng.randint(1, cfg.max_functions))
    ]
    raw: List[Tuple[Term, Term]] = []
    for fi, (fname, arity) in enumerate(funs):
        for _ in range(rng.randint(1, cfg.max_rules)):
            counter = [0]

            def namer():
                counter[0] += 1
                return "X%d" % counter[0]

            pats = [_gen_pattern(rng, cons, 2, namer) for _ in range(arity)]
            lhs = app(fname, tuple(pats))
            arg_vars = [sorted(p.varset) for p in pats]
            recursive = None
            guarded = [
                (j, p) for j, p in enumerate(pats) if p.kind == APP and p.varset
            ]
            if guarded and rng.random() < 0.3:
                j, p = rng.choice(guarded)
                recursive = (fname, arity, j, rng.choice(sorted(p.varset)))
            rhs = _gen_rhs(
                rng, cons, funs[:fi], recursive, arg_vars, cfg, {}, set()
            )
            raw.append((lhs, rhs))
    return assemble_program("gen-%d" % cfg.seed, raw)


def gen_ground_expr(program: Program, rng: random.Random, max_depth: int = 3) -> Term:
    """A random ground expression over the program's signature, mixing
    function calls, constructor terms and the choice operator."""
    sig = program.signature
    funs = sorted(
        (n, a) for n, a in sig.functions.items() if n not in ("?", "if_then")
    )
    cons = sorted(
        (n, a) for n, a in sig.constructors.items() if n not in ("tt", "ff")
    )
    nullary = [n for n, a in cons if a == 0] or ["tt"]

    def build(depth: int, fun_budget: int) -> Term:
        if depth <= 0:
            return app(rng.choice(nullary))
        roll = rng.random()
        if funs and fun_budget > 0 and roll < 0.55:
            fname, arity = rng.choice(funs)
            return app(fname, tuple(build(depth - 1, fun_budget - 1) for _ in range(arity)))
        if roll < 0.75:
            return app("?", (build(depth - 1, fun_budget), build(depth - 1, fun_budget)))
        name, ar = rng.choice(cons if cons else [("tt", 0)])
        return app(name, tuple(build(depth - 1, fun_budget) for _ in range(ar)))

    return build(max_depth, 2)


class CheckReport:
    """Outcome of one differential check.

    ok is the verdict; failures holds machine-readable witness lines;
    strict lists informational strictness witnesses (term present in the
    larger set only), which are expected, not errors. refused marks inputs
    the check declines to judge (e.g. a non-constructor context)."""

    __slots__ = ("name", "ok", "failures", "strict", "refused", "saturated")

    def __init__(self, name, ok, failures=(), strict=(), refused=False, saturated=None):
        self.name = name
        self.ok = ok
        self.failures = tuple(failures)
        self.strict = tuple(strict)
        self.refused = refused
        self.saturated = saturated

    def __repr__(self):
        state = "refused" if self.refused else ("ok" if self.ok else "FAIL")
        return "<CheckReport %s %s failures=%d>" % (self.name, state, len(self.failures))


def witness_line(program: Program, expr: Term, pair: str, witness: Term) -> str:
    text = " ".join(format_program(program).split())
    return "\t".join((text, format_term(expr), pair, format_term(witness)))


def program_size(program: Program) -> int:
    return max(1, sum(r.lhs.size + r.rhs.size for r in program.rules))


VALUE_CAP = 2_000


def _denotation(program, mode, expr, depth, cap=VALUE_CAP):
    """Value set at the depth bound, whether the stream proved its fixpoint
    (the set is the whole denotation), and whether the enumeration was
    abandoned because it outgrew the cap. A capped set is still a sound
    subset of the real one, but proves nothing about what the semantics
    cannot reach."""
    enum = Enumerator(program, mode, value_budget=cap)
    stream = DenotationStream(enum, expr, EnumConfig(depth=depth))
    got: List[Term] = []
    try:
        for t in stream:
            got.append(t)
            if len(got) > cap:
                return frozenset(got), False, True
    except BudgetExceeded:
        return frozenset(got), False, True
    return frozenset(got), stream.complete, False


def _totals(terms: FrozenSet[Term]) -> FrozenSet[Term]:
    return frozenset(t for t in terms if t.total)


def _sorted_missing(missing) -> List[Term]:
    return sorted(missing, key=lambda t: (t.depth, term_key(t)))


NODE_CAP = 20_000
SIZE_CAP = 256


def _bounded_reach(program, expr, bound, node_cap=NODE_CAP):
    """Totals reachable within the derivation-length bound by breadth-first
    search over all rewrite steps, abandoning the walk once node_cap
    distinct expressions were seen. Oversized intermediate expressions are
    cut as well: a guarded rule whose guard is stuck can grow its own call
    without bound, and walking those chains buys nothing. complete means
    nothing was cut, so the result is the full run-time denotation."""
    fnames = frozenset(program.signature.functions)
    visited = {expr}
    queue = deque(((expr, 0),))
    out = set()
    complete = True
    while queue:
        cur, n = queue.popleft()
        if cur.total and cur.symbols.isdisjoint(fnames):
            out.add(cur)
        succs = [s.result for s in one_step(program, cur)]
        if n >= bound:
            if any(s not in visited for s in succs):
                complete = False
            continue
        for s in succs:
            if s not in visited:
                if s.size > SIZE_CAP or len(visited) >= node_cap:
                    complete = False
                    continue
                visited.add(s)
                queue.append((s, n + 1))
    return frozenset(out), complete


_GROW_FACTORS = (1, 2, 4)


def _grow_mode(program, mode, expr, small, depth):
    """Deepen a denotation until it covers `small`, proves its fixpoint, or
    overruns the caps. Values already present in an argument can take many
    more levels to propagate through rule bodies (a disjunctive binding
    unfolds one alternative per level), so a single doubling is not enough
    for the growing programs. Any bounded set is a sound subset, which
    makes coverage at any depth a proof of inclusion; only a set with a
    proven fixpoint can condemn one. Returns the verdict and the totals of
    the last set."""
    last: FrozenSet[Term] = frozenset()
    for f in _GROW_FACTORS:
        got, complete, capped = _denotation(program, mode, expr, depth * f, VALUE_CAP * f)
        last = _totals(got)
        if small <= got:
            return "included", last
        if capped:
            return "inconclusive", last
        if complete:
            return "violated", last
    return "inconclusive", last


def _grow_reach(program, expr, small, bound):
    """Reachability twin of _grow_mode: a complete search condemns, a cut
    one only confirms."""
    got: FrozenSet[Term] = frozenset()
    for f in _GROW_FACTORS:
        got, complete = _bounded_reach(program, expr, bound * f, NODE_CAP * f)
        if small <= got:
            return "included", got
        if complete:
            return "violated", got
    return "inconclusive", got


def check_hierarchy(program: Program, expr: Term, depth: int) -> CheckReport:
    """Total values must grow along call-time, run-time, beta, alpha.

    The run-time set uses a step bound of 2^depth times the program size.
    A missing inclusion deepens the larger side before it counts, and only
    a proven-complete larger side can turn the miss into a report; when
    every retry was cut short (node cap, value cap) the check refuses to
    judge rather than cry wolf."""
    bound = (2 ** depth) * program_size(program)
    ct, _, _ = _denotation(program, CALL_TIME, expr, depth)
    beta, _, _ = _denotation(program, BETA, expr, depth)
    alpha, _, _ = _denotation(program, ALPHA, expr, depth)
    rt, _ = _bounded_reach(program, expr, bound)
    failures: List[str] = []
    strict: List[Tuple[str, Term]] = []
    inconclusive = False

    def judge(small_name, small, big_name, big, grow):
        nonlocal inconclusive
        pair = "%s<=%s" % (small_name, big_name)
        missing = small - big
        if missing:
            verdict, grown = grow()
            big = big | grown
            if verdict == "inconclusive":
                inconclusive = True
                return
            missing = small - big
        for t in _sorted_missing(missing):
            failures.append(witness_line(program, expr, pair, t))
        for t in _sorted_missing(big - small)[:1]:
            strict.append((pair, t))

    ct_tot = _totals(ct)
    judge(
        CALL_TIME,
        ct_tot,
        "run-time",
        rt,
        lambda: _grow_reach(program, expr, ct_tot, bound),
    )
    judge(
        "run-time",
        rt,
        BETA,
        _totals(beta),
        lambda: _grow_mode(program, BETA, expr, rt, depth),
    )
    judge(
        BETA,
        _totals(beta),
        ALPHA,
        _totals(alpha),
        lambda: _grow_mode(program, ALPHA, expr, _totals(beta), depth),
    )
    if inconclusive and not failures:
        return CheckReport("hierarchy", False, refused=True)
    return CheckReport("hierarchy", not failures, failures, strict)


def check_cab_equivalence(program: Program, expr: Term, depth: int) -> CheckReport:
    """Alpha and beta total values agree on programs whose rules pass at
    most one variable per argument to the rhs. Exact equality when both
    denotations prove their fixpoints, mutual inclusion with deepening
    retries otherwise."""
    member, _ = is_class_cab(program)
    if not member:
        return CheckReport("cab", False, refused=True)
    alpha, sat_a, _ = _denotation(program, ALPHA, expr, depth)
    beta, sat_b, _ = _denotation(program, BETA, expr, depth)
    saturated = sat_a and sat_b
    failures: List[str] = []
    inconclusive = False
    if saturated:
        for t in _sorted_missing(_totals(alpha) ^ _totals(beta)):
            side = "%s=%s" % (ALPHA, BETA)
            failures.append(witness_line(program, expr, side, t))
    else:
        sides = [
            (ALPHA, _totals(alpha), _totals(beta), BETA),
            (BETA, _totals(beta), _totals(alpha), ALPHA),
        ]
        for small_name, small, big, big_mode in sides:
            if small <= big:
                continue
            verdict, grown = _grow_mode(program, big_mode, expr, small, depth)
            if verdict == "included":
                continue
            if verdict == "inconclusive":
                inconclusive = True
                continue
            pair = "%s<=%s" % (small_name, big_mode)
            for t in _sorted_missing(small - grown):
                failures.append(witness_line(program, expr, pair, t))
    if inconclusive and not failures:
        return CheckReport("cab", False, refused=True)
    return CheckReport("cab", not failures, failures, saturated=saturated)


def check_pst_adequacy(program: Program, expr: Term, depth: int) -> CheckReport:
    """Rewriting the transformed program must stay inside the alpha-plural
    totals of the source (a miss deepens alpha before it counts, and only
    a proven-complete alpha can turn it into a report), and must reach all
    of them when alpha proves its fixpoint and the rewrite search was not
    cut. On uncut searches the simple and optimized transforms must reach
    identical totals."""
    opt = pst_optimized(program).output
    sim = pst_simple(program).output
    # the reach is the small side of the soundness inclusion, so cutting
    # it early is sound; the routed programs branch too wide for the full
    # node budget to pay off
    reached, complete = _bounded_reach(
        opt, expr, (2 ** depth) * program_size(opt), NODE_CAP // 4
    )
    alpha, saturated, _ = _denotation(program, ALPHA, expr, depth)
    failures: List[str] = []
    inconclusive = False
    atot = _totals(alpha)
    missing = reached - atot
    if missing:
        verdict, grown = _grow_mode(program, ALPHA, expr, reached, depth)
        if verdict == "included":
            missing = frozenset()
        elif verdict == "inconclusive":
            inconclusive = True
            missing = frozenset()
        else:
            missing = reached - grown
    for t in _sorted_missing(missing):
        failures.append(witness_line(program, expr, "pst-reach<=%s" % ALPHA, t))
    if saturated and complete:
        for t in _sorted_missing(atot - reached):
            failures.append(witness_line(program, expr, "%s<=pst-reach" % ALPHA, t))
    if complete:
        # the all-argument routing multiplies interleavings, and a cut
        # search cannot be judged anyway, so give up on the differential
        # early instead of walking the full node cap for nothing
        plain, plain_complete = _bounded_reach(
            sim, expr, (2 ** depth) * program_size(sim), NODE_CAP // 8
        )
        if plain_complete:
            for t in _sorted_missing(plain ^ reached):
                failures.append(witness_line(program, expr, "pst-simple=pst-optimized", t))
    if inconclusive and not failures:
        return CheckReport("pst", False, refused=True)
    return CheckReport("pst", not failures, failures, saturated=saturated and complete)


def _hole_positions(context: Term) -> int:
    if context is HOLE:
        return 1
    if context.kind == APP:
        return sum(_hole_positions(c) for c in context.children)
    return 0


def is_c_context(context: Term, program: Program) -> bool:
    """One hole, and every application node is a constructor."""
    if _hole_positions(context) != 1:
        return False
    stack = [context]
    while stack:
        t = stack.pop()
        if t.kind == APP:
            if program.signature.is_function(t.name):
                return False
            stack.extend(t.children)
    return True


def plug(context: Term, filler: Term) -> Term:
    return apply_subst(context, {HOLE_NAME: filler})


def check_bubbling(program: Program, context: Term, e1: Term, e2: Term, depth: int) -> CheckReport:
    """A choice below a constructor context may bubble to the top: the
    value sets of C[e1?e2] and C[e1]?C[e2] agree under the plural modes.
    Contexts containing function symbols are refused, the law does not
    cover them."""
    if not is_c_context(context, program):
        return CheckReport("bubbling", False, refused=True)
    inside = plug(context, app("?", (e1, e2)))
    outside = app("?", (plug(context, e1), plug(context, e2)))
    failures: List[str] = []
    inconclusive = False
    for mode in (ALPHA, BETA):
        # equality is only judged on proven-complete sets: the rootward
        # choice shifts depths, so bounded sets differ transiently
        diff = None
        for f in _GROW_FACTORS:
            a, sat_a, cap_a = _denotation(program, mode, inside, depth * f, VALUE_CAP * f)
            b, sat_b, cap_b = _denotation(program, mode, outside, depth * f, VALUE_CAP * f)
            if sat_a and sat_b:
                diff = a ^ b
                break
            if cap_a or cap_b:
                break
        if diff is None:
            inconclusive = True
            continue
        for t in _sorted_missing(diff):
            failures.append(witness_line(program, inside, "bubbling-%s" % mode, t))
    if inconclusive and not failures:
        return CheckReport("bubbling", False, refused=True)
    return CheckReport("bubbling", not failures, failures)


def brute_force_compressible(thetas: Sequence[dict]) -> bool:
    """Definition form: the realized image tuples must be the full product
    of the per-variable image columns."""
    pool = [dict(t) for t in thetas]
    names = sorted(set().union(*pool) if pool else set())
    if not names:
        return True
    realized = {tuple(image_of(t, x) for x in names) for t in pool}
    columns = [{image_of(t, x) for t in pool} for x in names]
    return realized == set(product(*columns))


_THETA_IMAGES = (
    BOT,
    app("0"),
    app("1"),
    app("c", (app("0"),)),
    app("c", (BOT,)),
    app("d", (app("0"), app("1"))),
    app("d", (var("X"), app("1"))),
)


def random_theta_set(seed: int, max_substs: int = 5) -> List[dict]:
    rng = random.Random(seed)
    names = rng.sample(("X", "Y", "Z"), rng.randint(1, 3))
    out = []
    for _ in range(rng.randint(1, max_substs)):
        theta = {}
        for x in names:
            if rng.random() < 0.85:
                theta[x] = rng.choice(_THETA_IMAGES)
        out.append(theta)
    return out


def check_compress(seed: int) -> CheckReport:
    """The compressibility test must agree with the brute-force product
    construction on a random substitution set."""
    thetas = random_theta_set(seed)
    got = is_compressible(thetas)
    want = brute_force_compressible(thetas)
    if got == want:
        return CheckReport("compress", True)
    desc = "; ".join(
        "[%s]" % ", ".join("%s/%s" % (x, format_term(t[x])) for x in sorted(t))
        for t in thetas
    )
    line = "\t".join((desc, "-", "is_compressible=brute-force", "got=%s want=%s" % (got, want)))
    return CheckReport("compress", False, (line,))


def check_right_linear(program: Program, expr: Term, depth: int) -> CheckReport:
    """Exploratory: on right-linear programs call-time and beta-plural
    totals are expected to agree. Counterexamples are reported for study
    and never gate anything."""
    from .terms import is_linear

    if not all(is_linear(r.rhs) for r in program.rules):
        return CheckReport("rightlinear", False, refused=True)
    ct, sat_c, cap_c = _denotation(program, CALL_TIME, expr, depth)
    beta, sat_b, cap_b = _denotation(program, BETA, expr, depth)
    if cap_c or cap_b:
        return CheckReport("rightlinear", False, refused=True)
    failures: List[str] = []
    diff = _totals(beta) - _totals(ct)
    if diff and not (sat_c and sat_b):
        ct2, sat_c, cap_c = _denotation(program, CALL_TIME, expr, depth * 2, VALUE_CAP * 2)
        diff = _totals(beta) - _totals(ct2)
        if diff and (cap_c or not sat_c):
            return CheckReport("rightlinear", False, refused=True)
    for t in _sorted_missing(diff):
        failures.append(witness_line(program, expr, "%s<=%s" % (BETA, CALL_TIME), t))
    return CheckReport("rightlinear", not failures, failures)


def _expr_rng(seed: int) -> random.Random:
    return random.Random(seed * 1000003 + 17)


def run_suite(suite: str, seeds: Sequence[int], depth: int, out=None) -> Tuple[int, int]:
    """Run one suite over a seed range. Returns (checked, failed) and
    writes witness lines through `out` (default: stdout)."""
    emit = out if out is not None else lambda line: print(line)
    checked = failed = 0

    def record(report: CheckReport):
        nonlocal checked, failed
        if report.refused:
            return
        checked += 1
        if not report.ok:
            failed += 1
            for line in report.failures:
                emit(line)

    for seed in seeds:
        if suite == "compress":
            record(check_compress(seed))
            continue
        force = suite == "cab"
        cfg = GenConfig(seed=seed, force_cab=force)
        if suite == "rightlinear":
            cfg.shared_var_prob = 0.0
        program = gen_program(cfg)
        rng = _expr_rng(seed)
        if suite == "hierarchy":
            for _ in range(3):
                record(check_hierarchy(program, gen_ground_expr(program, rng), depth))
        elif suite == "cab":
            for _ in range(3):
                record(check_cab_equivalence(program, gen_ground_expr(program, rng), depth))
        elif suite == "pst":
            # shallow expressions: the transforms copy routed arguments, and
            # deep nesting makes the interleaving space explode
            for _ in range(2):
                record(check_pst_adequacy(program, gen_ground_expr(program, rng, 2), depth))
        elif suite == "bubbling":
            ctx = _gen_context(program, rng)
            e1 = gen_ground_expr(program, rng, 2)
            e2 = gen_ground_expr(program, rng, 2)
            record(check_bubbling(program, ctx, e1, e2, depth))
        elif suite == "rightlinear":
            for _ in range(3):
                record(check_right_linear(program, gen_ground_expr(program, rng), depth))
        else:
            raise ValueError("unknown suite %r" % suite)
    return checked, failed


def _ground_cterm(rng: random.Random, cons, depth: int) -> Term:
    nullary = [n for n, a in cons if a == 0] or ["tt"]
    if depth <= 0 or rng.random() < 0.4:
        return app(rng.choice(nullary))
    name, ar = rng.choice(cons)
    return app(name, tuple(_ground_cterm(rng, cons, depth - 1) for _ in range(ar)))


def _gen_context(program: Program, rng: random.Random) -> Term:
    """A one- or two-level constructor context with ground c-term siblings."""
    cons = sorted(
        (n, a)
        for n, a in program.signature.constructors.items()
        if n not in ("tt", "ff")
    )
    spine = [(n, a) for n, a in cons if a > 0]
    if not spine:
        return HOLE
    ctx = HOLE
    for _ in range(rng.randint(1, 2)):
        name, ar = rng.choice(spine)
        slot = rng.randrange(ar)
        children = tuple(
            ctx if i == slot else _ground_cterm(rng, cons, 1) for i in range(ar)
        )
        ctx = app(name, children)
    return ctx


def _parse_seeds(text: str) -> List[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        a, b = int(lo), int(hi)
        if b < a:
            raise ValueError("empty seed range %s" % text)
        return list(range(a, b + 1))
    return [int(text)]


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="pluralrw-harness",
        description="differential checks over randomly generated programs",
    )
    parser.add_argument("--seeds", default="1..20", help="seed range A..B or a single seed")
    parser.add_argument("--depth", type=int, default=4, help="enumeration depth bound")
    parser.add_argument("--suite", choices=SUITES, default="hierarchy")
    args = parser.parse_args(argv)
    try:
        seeds = _parse_seeds(args.seeds)
    except ValueError as err:
        print("error: %s" % err, file=sys.stderr)
        return 2
    checked, failed = run_suite(args.suite, seeds, args.depth)
    print(
        "suite=%s seeds=%s depth=%d checked=%d failed=%d"
        % (args.suite, args.seeds, args.depth, checked, failed),
        file=sys.stderr,
    )
    if args.suite == "rightlinear":
        return 0
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
