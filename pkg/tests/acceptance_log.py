"""Collects one verdict line per acceptance criterion."""

import time
from contextlib import contextmanager

LINES = []


@contextmanager
def criterion(number, title, limit):
    """Time the body; record PASS only if it finished without error inside ``limit`` seconds."""
    start = time.perf_counter()
    status, detail = "FAIL", ""
    try:
        yield
        elapsed = time.perf_counter() - start
        if elapsed < limit:
            status = "PASS"
        else:
            detail = " over the %gs limit" % limit
            raise AssertionError("criterion %d took %.1fs, limit %gs" % (number, elapsed, limit))
    except BaseException as exc:
        if not detail:
            detail = " (%s)" % type(exc).__name__
        raise
    finally:
        elapsed = time.perf_counter() - start
        line = "criterion %d %-34s %s  %.2fs%s" % (number, title, status, elapsed, detail)
        LINES.append(line)
        print(line)
