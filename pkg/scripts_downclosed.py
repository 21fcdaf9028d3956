import resource
import sys

resource.setrlimit(resource.RLIMIT_AS, (3 << 30, 3 << 30))
sys.path.insert(0, "/root/pkg/src")

from pluralrw.calculi import ALPHA, BETA, CALL_TIME, Enumerator
from pluralrw.harness import GenConfig, _expr_rng, gen_ground_expr, gen_program
from pluralrw.terms import down_closure

bad = 0
for seed in range(1, 60):
    prog = gen_program(GenConfig(seed))
    rng = _expr_rng(seed)
    exprs = [gen_ground_expr(prog, rng, max_depth=3) for _ in range(2)]
    for mode in (CALL_TIME, BETA, ALPHA):
        enum = Enumerator(prog, mode)
        for expr in exprs:
            vals = enum.values(expr, 5)
            for v in vals:
                if not down_closure(v) <= vals:
                    bad += 1
                    print("NOT DOWN-CLOSED seed=%d mode=%s" % (seed, mode), flush=True)
                    break
print("done, violations:", bad, flush=True)
