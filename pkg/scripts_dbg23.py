import resource
import sys

resource.setrlimit(resource.RLIMIT_AS, (3 << 30, 3 << 30))
sys.path.insert(0, "/root/pkg/src")

from pluralrw.calculi import ALPHA, DenotationStream, EnumConfig, Enumerator
from pluralrw.harness import GenConfig, gen_program, _bounded_reach, program_size
from pluralrw.syntax import parse_expression, format_term
from pluralrw.transform import pst_optimized

prog = gen_program(GenConfig(23))
expr = parse_expression("f1(f2(0))", prog.signature)
witness = parse_expression("d(0,d(d(0,0),1))", prog.signature)

opt = pst_optimized(prog).output
print("opt rules same as source:", len(opt.rules) == len(prog.rules), flush=True)
reached, complete = _bounded_reach(opt, expr, (2 ** 4) * program_size(opt))
print("reached=%d complete=%s witness-in-reached=%s" % (len(reached), complete, witness in reached), flush=True)

for depth in (4, 6, 8, 10):
    enum = Enumerator(prog, ALPHA)
    vals = enum.values(expr, depth)
    totals = {t for t in vals if t.total}
    print("alpha depth=%d totals=%d witness=%s" % (depth, len(totals), witness in vals), flush=True)

enum = Enumerator(prog, ALPHA)
stream = DenotationStream(enum, expr, EnumConfig(depth=8))
got = set()
for t in stream:
    got.add(t)
print("stream depth=8 yielded=%d witness=%s saturated_at=%s" % (len(got), witness in got, stream.saturated_at()), flush=True)
