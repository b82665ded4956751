#!/usr/bin/env python
# -*- coding: utf-8 -*-
# setup.py

# Copyright (c) 2024, the voicemap developers
#
# This file is part of the voicemap package.
#
# voicemap is free software: you can redistribute it and/or modify
# it under the terms of the MIT licence.
#
# voicemap is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the
# MIT License for more details.
#
# You should have received a copy of the license
# along with voicemap. If not, see <https://opensource.org/licenses/MIT>

from setuptools import setup

setup(name='voicemap',
      version="1.0.0",
      description='Cycle synchronous voice maps of speech recordings and their comparison',
      author='the voicemap developers',
      license='MIT',
      packages=['voicemap', 'voicemap.scripts'],
      install_requires=[
          'numpy',
          'pandas',
          'scipy',
          'tqdm',
      ],
      extras_require={
        'plotting':  ["matplotlib"],
      },
      entry_points={
          'console_scripts': [
              'voicemap=voicemap.scripts.voicemap_cli:main',
          ],
      },
      )
