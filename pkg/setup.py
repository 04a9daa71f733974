#!/usr/bin/env python3
# coding=utf-8

#
# Copyright (c) 2026 The cpfkt Authors.
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#

from setuptools import setup

INSTALL_REQUIRES = [
    "numpy>=1.21",
    "pandas>=1.5",
]

EXTRAS_REQUIRE = {
    "test": ["pytest>=7.0"],
}


def main():
    setup(name='cpfkt',
          version='0.1.0',
          description='concept prerequisite graph and personalized '
                      'forgetting knowledge tracing',
          url='',
          package_dir={'': 'src'},
          packages=['cpfkt',
                    'cpfkt._core',
                    'cpfkt._core.autodiff',
                    'cpfkt._core.command',
                    'cpfkt._core.config',
                    'cpfkt._core.data',
                    'cpfkt._core.executor',
                    'cpfkt._core.graph',
                    'cpfkt._core.model',
                    'cpfkt._core.oracle',
                    'cpfkt._core.report'
                    ],
          package_data={
              'cpfkt._core': [
                  'resource/*.txt'
              ]
          },
          entry_points={
              'console_scripts': [
                  'cpf=cpfkt.__main__:main_process'
              ]
          },
          zip_safe=False,
          python_requires='>=3.8',
          install_requires=INSTALL_REQUIRES,
          extras_require=EXTRAS_REQUIRE,
          )


if __name__ == "__main__":
    main()
