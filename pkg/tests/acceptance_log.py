"""Collects one status line per acceptance criterion for the terminal summary."""
import time
from contextlib import contextmanager

LINES = []


@contextmanager
def criterion(label, budget):
    from hwtheta.homology import clear_cache
    clear_cache()
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.perf_counter() - t0
        in_time = dt < budget
        status = "PASS" if ok and in_time else "FAIL"
        line = "criterion %-4s %s  %6.2fs (budget %ds)" % (label, status, dt, budget)
        LINES.append(line)
        print(line)
    assert in_time, "criterion %s took %.1fs, budget %ds" % (label, dt, budget)
