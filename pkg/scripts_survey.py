import resource
import sys
import time

resource.setrlimit(resource.RLIMIT_AS, (3 << 30, 3 << 30))
sys.path.insert(0, "/root/pkg/src")

from pluralrw.harness import run_suite

suite = sys.argv[1]
lo, hi = int(sys.argv[2]), int(sys.argv[3])
depth = int(sys.argv[4]) if len(sys.argv) > 4 else 4
t0 = time.time()
lines = []
checked, failed = run_suite(suite, range(lo, hi + 1), depth, out=lines)
dt = time.time() - t0
print("%s checked=%d failed=%d %.2fs" % (suite, checked, failed, dt), flush=True)
for ln in lines:
    print("  " + ln, flush=True)
