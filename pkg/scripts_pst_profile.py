import resource
import sys
import time

resource.setrlimit(resource.RLIMIT_AS, (3 << 30, 3 << 30))
sys.path.insert(0, "/root/pkg/src")

from pluralrw.harness import run_suite

lo, hi = int(sys.argv[1]), int(sys.argv[2])
for seed in range(lo, hi + 1):
    t0 = time.time()
    checked, failed = run_suite("pst", [seed], 4, out=None)
    dt = time.time() - t0
    flag = " <<<" if dt > 2.0 else ""
    print("seed %3d checked=%d failed=%d %6.2fs%s" % (seed, checked, failed, dt, flag), flush=True)
