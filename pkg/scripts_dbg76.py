import resource
import sys
import time

resource.setrlimit(resource.RLIMIT_AS, (3 << 30, 3 << 30))
sys.path.insert(0, "/root/pkg/src")

from pluralrw.calculi import ALPHA, BETA, CALL_TIME
from pluralrw.harness import (
    GenConfig,
    NODE_CAP,
    VALUE_CAP,
    _bounded_reach,
    _denotation,
    _expr_rng,
    _totals,
    gen_ground_expr,
    gen_program,
    program_size,
)
from pluralrw.syntax import format_program, format_term

seed = int(sys.argv[1])
prog = gen_program(GenConfig(seed))
print(format_program(prog), flush=True)
rng = _expr_rng(seed)
exprs = [gen_ground_expr(prog, rng, max_depth=3) for _ in range(3)]
bound = (2 ** 4) * program_size(prog)


def stage(label, fn):
    t0 = time.time()
    out = fn()
    print("  %-36s %6.2fs %s" % (label, time.time() - t0, out), flush=True)
    return out


for expr in exprs:
    print("expr %s" % format_term(expr), flush=True)
    sets = {}
    for mode in (CALL_TIME, BETA, ALPHA):
        sets[mode] = stage(
            "den %s d4" % mode,
            lambda mode=mode: (lambda r: r)( _denotation(prog, mode, expr, 4)),
        )
    rt = stage(
        "reach bound=%d" % bound,
        lambda: (lambda r: (len(r[0]), r[1]))(_bounded_reach(prog, expr, bound)),
    )
    ct_tot = _totals(sets[CALL_TIME][0])
    bt = _totals(sets[BETA][0])
    at = _totals(sets[ALPHA][0])
    print(
        "  ct=%d rt=%d beta=%d alpha=%d  ct-rt_miss=%d rt-beta_miss=%d beta-alpha_miss=%d"
        % (
            len(ct_tot), rt[0], len(bt), len(at),
            0, 0, len(bt - at),
        ),
        flush=True,
    )
    for f in (2, 4):
        stage(
            "alpha d=%d cap=%d" % (4 * f, VALUE_CAP * f),
            lambda f=f: (lambda r: (len(r[0]), r[1], r[2]))(
                _denotation(prog, ALPHA, expr, 4 * f, VALUE_CAP * f)
            ),
        )
        stage(
            "beta d=%d cap=%d" % (4 * f, VALUE_CAP * f),
            lambda f=f: (lambda r: (len(r[0]), r[1], r[2]))(
                _denotation(prog, BETA, expr, 4 * f, VALUE_CAP * f)
            ),
        )
