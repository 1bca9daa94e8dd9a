#!/usr/bin/env python3 -u
# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.
"""
Entry point of the ``lobstur`` command: ``lobstur <subcommand> [options]``.

Exit codes: 0 success, 1 usage error, 2 data error, 3 embedder failure.
"""

from collections import OrderedDict
import logging
import sys

from lobstur import options
from lobstur.errors import DataError, EmbedderError, UsageError
from lobstur_cli import bootstrap, metrics, stats, synth, tune


SUBCOMMANDS = OrderedDict([
    ('synth', synth),
    ('bootstrap', bootstrap),
    ('stats', stats),
    ('metrics', metrics),
    ('tune', tune),
])

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_EMBEDDER = 3


def usage():
    return 'usage: lobstur {{{}}} [options]'.format(','.join(SUBCOMMANDS))


def error(message):
    print('| error: {}'.format(message), file=sys.stderr, flush=True)


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    if len(argv) == 0:
        error(usage())
        return EXIT_USAGE
    if argv[0] in ('-h', '--help'):
        print(usage())
        return EXIT_OK
    if argv[0] not in SUBCOMMANDS:
        error('unknown subcommand {!r}; {}'.format(argv[0], usage()))
        return EXIT_USAGE

    logging.basicConfig(format='| %(levelname)s | %(name)s | %(message)s', level=logging.WARNING)
    module = SUBCOMMANDS[argv[0]]
    try:
        args = options.parse_args_and_sampler(module.get_parser(), argv[1:])
        module.main(args)
    except SystemExit as e:
        # --help
        return e.code if isinstance(e.code, int) else EXIT_OK
    except UsageError as e:
        error(e)
        return EXIT_USAGE
    except (DataError, OSError) as e:
        error(e)
        return EXIT_DATA
    except EmbedderError as e:
        error(e)
        return EXIT_EMBEDDER
    return EXIT_OK


def cli_main():
    sys.exit(main())


if __name__ == '__main__':
    cli_main()
