# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.

__version__ = '0.1.0'

from .errors import DataError, EmbedderError, LobsturError, UsageError

__all__ = ['DataError', 'EmbedderError', 'LobsturError', 'UsageError', '__version__']

import lobstur.data
import lobstur.metrics
import lobstur.samplers
import lobstur.embedders
