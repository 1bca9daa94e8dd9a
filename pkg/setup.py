#!/usr/bin/env python3
# Copyright (c) 2025-present, the lobstur authors.
# All rights reserved.
#
# This source code is licensed under the license found in the LICENSE file in
# the root directory of this source tree.

from setuptools import setup, find_packages
import sys


if sys.version_info < (3, 6):
    sys.exit('Sorry, Python >= 3.6 is required for lobstur.')

with open('README.md') as f:
    readme = f.read()

with open('requirements.txt') as f:
    reqs = f.read()


setup(
    name='lobstur',
    version='0.1.0',
    description='Local nonparametric bootstrap for attributed graphs and stability-based '
                'hyperparameter selection for graph embeddings',
    long_description=readme,
    long_description_content_type='text/markdown',
    install_requires=reqs.strip().split('\n'),
    packages=find_packages(exclude=['tests', 'tests.*']),
    entry_points={
        'console_scripts': ['lobstur = lobstur_cli.main:cli_main'],
    },
    test_suite='tests',
)
