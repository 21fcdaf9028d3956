import resource
import sys
import time

resource.setrlimit(resource.RLIMIT_AS, (3 << 30, 3 << 30))
sys.path.insert(0, "/root/pkg/src")

from pluralrw.harness import (
    GenConfig,
    VALUE_CAP,
    _bounded_reach,
    _denotation,
    _expr_rng,
    gen_ground_expr,
    gen_program,
    program_size,
)
from pluralrw.calculi import ALPHA
from pluralrw.syntax import format_term
from pluralrw.transform import pst_optimized, pst_simple

seed = int(sys.argv[1])
prog = gen_program(GenConfig(seed))
rng = _expr_rng(seed)
exprs = [gen_ground_expr(prog, rng, max_depth=2) for _ in range(2)]


def stage(label, fn):
    t0 = time.time()
    out = fn()
    print("  %-34s %6.2fs %s" % (label, time.time() - t0, out), flush=True)
    return out


opt = stage("pst_optimized", lambda: pst_optimized(prog).output)
sim = stage("pst_simple", lambda: pst_simple(prog).output)
for expr in exprs:
    print("expr %s" % format_term(expr), flush=True)
    bound = (2 ** 4) * program_size(opt)
    reached, complete = stage(
        "reach opt bound=%d" % bound,
        lambda: (lambda r: (len(r[0]), r[1]))(_bounded_reach(opt, expr, bound)),
    )
    for f in (1, 2, 4):
        stage(
            "alpha depth=%d cap=%d" % (4 * f, VALUE_CAP * f),
            lambda f=f: (lambda r: (len(r[0]), r[1], r[2]))(
                _denotation(prog, ALPHA, expr, 4 * f, VALUE_CAP * f)
            ),
        )
    if complete:
        stage(
            "reach sim",
            lambda: (lambda r: (len(r[0]), r[1]))(
                _bounded_reach(sim, expr, (2 ** 4) * program_size(sim))
            ),
        )
