import resource
import sys

resource.setrlimit(resource.RLIMIT_AS, (3 << 30, 3 << 30))
sys.path.insert(0, "/root/pkg/src")

from pluralrw.harness import GenConfig, gen_program
from pluralrw.rewriting import one_step
from pluralrw.syntax import format_term, parse_expression
from pluralrw.transform import pst_optimized

prog = gen_program(GenConfig(33))
opt = pst_optimized(prog).output

frontier = [parse_expression("f3(f1(1),0)", prog.signature)]
seen = set(frontier)
for level in range(6):
    nxt = []
    for t in frontier:
        print("level %d one_step on %s" % (level, format_term(t)[:160]), flush=True)
        succs = [st.result for st in one_step(opt, t)]
        print("   -> %d successors" % len(succs), flush=True)
        for s in succs:
            if s not in seen:
                seen.add(s)
                nxt.append(s)
    frontier = nxt
    print("level %d done, frontier %d" % (level, len(frontier)), flush=True)
