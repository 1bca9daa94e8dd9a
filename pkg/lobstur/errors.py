# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.


class LobsturError(Exception):
    """Base class for all errors raised on purpose by lobstur."""


class DataError(LobsturError, ValueError):
    """Malformed or invalid input data (files, matrices, graphs)."""


class UsageError(LobsturError):
    """Invalid command line or configuration."""


class EmbedderError(LobsturError, RuntimeError):
    """An embedder could not produce a valid embedding."""
