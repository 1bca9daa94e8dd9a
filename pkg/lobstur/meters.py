# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.

import math
import time


class AverageMeter(object):
    """Running mean and population standard deviation (Welford update)."""
    def __init__(self):
        self.reset()

    def reset(self):
        self.val = 0
        self.count = 0
        self.avg = 0.
        self._m2 = 0.

    def update(self, val, n=1):
        self.val = val
        for _ in range(n):
            self.count += 1
            delta = val - self.avg
            self.avg += delta / self.count
            self._m2 += delta * (val - self.avg)

    @property
    def sum(self):
        return self.avg * self.count

    @property
    def var(self):
        return self._m2 / self.count if self.count > 0 else 0.

    @property
    def std(self):
        return math.sqrt(max(self.var, 0.))


class StopwatchMeter(object):
    """Wall-clock seconds spent in a block, usable as ``with timer:``."""
    def __init__(self):
        self.reset()

    def reset(self):
        self.sum = 0.
        self.n = 0
        self.start_time = None

    def start(self):
        self.start_time = time.perf_counter()

    def stop(self, n=1):
        if self.start_time is None:
            return
        self.sum += time.perf_counter() - self.start_time
        self.n += n
        self.start_time = None

    def __enter__(self):
        self.start()
        return self

    def __exit__(self, *exc):
        self.stop()
        return False

    @property
    def avg(self):
        return self.sum / self.n if self.n > 0 else 0.
