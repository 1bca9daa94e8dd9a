# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.

"""
Progress reporting for long loops over replicas and tuning cells.

Every bar yields the wrapped items unchanged. It tracks the seconds between
consecutive items and reports the running rate every ``log_interval`` items,
then prints one summary line once the iterator is exhausted.
"""

from collections import OrderedDict
import json
import sys
import time

from tqdm import tqdm

from lobstur.meters import AverageMeter


LOG_FORMATS = ['json', 'none', 'simple', 'tqdm']


def build_progress_bar(args, iterator, prefix=None, total=None, default='tqdm', no_progress_bar='none'):
    log_format = getattr(args, 'log_format', None)
    if log_format is None:
        log_format = no_progress_bar if getattr(args, 'no_progress_bar', False) else default

    if log_format == 'tqdm' and not sys.stderr.isatty():
        log_format = 'simple'

    log_interval = getattr(args, 'log_interval', 10)
    if log_format == 'json':
        return json_progress_bar(iterator, prefix, log_interval, total)
    elif log_format == 'none':
        return noop_progress_bar(iterator, prefix, total)
    elif log_format == 'simple':
        return simple_progress_bar(iterator, prefix, log_interval, total)
    elif log_format == 'tqdm':
        return tqdm_progress_bar(iterator, prefix, total)
    raise ValueError('Unknown log format: {}, choose from {}'.format(log_format, ', '.join(LOG_FORMATS)))


class progress_bar(object):
    """Base class: subclasses implement :func:`_report` and :func:`_finish`."""

    def __init__(self, iterable, prefix=None, total=None, log_interval=None):
        self.iterable = iterable
        self.prefix = prefix or 'progress'
        if total is None and hasattr(iterable, '__len__'):
            total = len(iterable)
        self.total = total
        self.log_interval = log_interval
        self.seconds = AverageMeter()
        self.done = 0

    def __iter__(self):
        last = time.perf_counter()
        for obj in self._items():
            now = time.perf_counter()
            self.seconds.update(now - last)
            last = now
            self.done += 1
            yield obj
            if self.log_interval and self.done % self.log_interval == 0:
                self._report(self.stats())
        self._finish(self.stats())

    def _items(self):
        return self.iterable

    def stats(self):
        stats = OrderedDict()
        stats['done'] = self.done
        if self.total is not None:
            stats['total'] = self.total
        stats['sec_per_item'] = round(self.seconds.avg, 4)
        return stats

    def _counter(self, stats):
        return '{} / {}'.format(stats['done'], stats.get('total', '?'))

    def _report(self, stats):
        raise NotImplementedError

    def _finish(self, stats):
        raise NotImplementedError


class json_progress_bar(progress_bar):
    """One JSON object per report, for log collectors."""

    def __init__(self, iterable, prefix=None, log_interval=10, total=None):
        super().__init__(iterable, prefix, total, log_interval)

    def _dump(self, stats, final):
        record = OrderedDict([('prefix', self.prefix), ('final', final)])
        record.update(stats)
        print(json.dumps(record), flush=True)

    def _report(self, stats):
        self._dump(stats, False)

    def _finish(self, stats):
        self._dump(stats, True)


class noop_progress_bar(progress_bar):
    """No logging."""

    def _report(self, stats):
        pass

    def _finish(self, stats):
        pass


class simple_progress_bar(progress_bar):
    """Plain lines for non-TTY environments."""

    def __init__(self, iterable, prefix=None, log_interval=10, total=None):
        super().__init__(iterable, prefix, total, log_interval)

    def _report(self, stats):
        print('| {}: {:>11} | {:.3f}s per item'.format(
            self.prefix, self._counter(stats), stats['sec_per_item']), flush=True)

    def _finish(self, stats):
        print('| {}: done {} in {:.1f}s'.format(
            self.prefix, self._counter(stats), self.seconds.sum), flush=True)


class tqdm_progress_bar(progress_bar):
    """Interactive bar on stderr."""

    def __init__(self, iterable, prefix=None, total=None):
        super().__init__(iterable, prefix, total, log_interval=1)
        self.tqdm = tqdm(iterable, '| ' + self.prefix, total=self.total, leave=False)

    def _items(self):
        return self.tqdm

    def _report(self, stats):
        self.tqdm.set_postfix(sec_per_item=stats['sec_per_item'], refresh=False)

    def _finish(self, stats):
        self.tqdm.close()
        self.tqdm.write('| {}: done {} in {:.1f}s'.format(
            self.prefix, self._counter(stats), self.seconds.sum))
