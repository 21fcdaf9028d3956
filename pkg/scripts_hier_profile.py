import resource
import sys
import time

resource.setrlimit(resource.RLIMIT_AS, (3 << 30, 3 << 30))
sys.path.insert(0, "/root/pkg/src")

from pluralrw.harness import run_suite

suite = sys.argv[1]
lo, hi = int(sys.argv[2]), int(sys.argv[3])
rows = []
for seed in range(lo, hi + 1):
    t0 = time.time()
    checked, failed = run_suite(suite, [seed], 4, out=None)
    rows.append((time.time() - t0, seed, checked, failed))
rows.sort(reverse=True)
total = sum(r[0] for r in rows)
print("total %.2fs over %d seeds" % (total, len(rows)), flush=True)
for dt, seed, checked, failed in rows[:12]:
    print("  seed %3d %6.2fs checked=%d failed=%d" % (seed, dt, checked, failed), flush=True)
