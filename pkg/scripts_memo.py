import resource
import sys
import time

resource.setrlimit(resource.RLIMIT_AS, (3 << 30, 3 << 30))
sys.path.insert(0, "/root/pkg/src")

from pluralrw.calculi import ALPHA, Enumerator
from pluralrw.harness import GenConfig, gen_program
from pluralrw.syntax import parse_expression

prog = gen_program(GenConfig(23))
for ename in ("f1(f2(0))", "f2(f2(1))"):
    expr = parse_expression(ename, prog.signature)
    enum = Enumerator(prog, ALPHA)
    for depth in (4, 8, 12, 16):
        t0 = time.time()
        vals = enum.values(expr, depth)
        dt = time.time() - t0
        print(
            "%s depth=%2d memo=%6d set=%5d %6.2fs"
            % (ename, depth, len(enum._memo), len(vals), dt),
            flush=True,
        )
