import resource
import sys
import time
from collections import deque

resource.setrlimit(resource.RLIMIT_AS, (3 << 30, 3 << 30))
sys.path.insert(0, "/root/pkg/src")

from pluralrw.harness import GenConfig, gen_program, program_size
from pluralrw.rewriting import one_step
from pluralrw.syntax import format_program, format_term, parse_expression
from pluralrw.transform import pst_optimized

prog = gen_program(GenConfig(33))
print(format_program(prog), flush=True)
opt = pst_optimized(prog).output
print(format_program(opt), flush=True)

expr = parse_expression("f3(f1(1),0)", prog.signature)
fnames = frozenset(opt.signature.functions)
visited = {expr}
queue = deque(((expr, 0),))
t0 = time.time()
seen = 0
maxsize = 0
while queue:
    cur, n = queue.popleft()
    seen += 1
    maxsize = max(maxsize, cur.size)
    if seen % 500 == 0:
        print(
            "seen=%d queue=%d visited=%d maxsize=%d depth=%d %.2fs"
            % (seen, len(queue), len(visited), maxsize, n, time.time() - t0),
            flush=True,
        )
    if seen > 3000:
        print("bail; sample term:", format_term(cur)[:300], flush=True)
        break
    for s in (st.result for st in one_step(opt, cur)):
        if s not in visited and len(visited) < 20000:
            visited.add(s)
            queue.append((s, n + 1))
