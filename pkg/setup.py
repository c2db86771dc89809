# Copyright 2026 The gnormal Authors. All Rights Reserved.
#
# Use of this source code is governed by a BSD-style
# license that can be found in the LICENSE file.

from setuptools import setup

import gnormal

NAME = 'gnormal'

DESCRIPTION = 'G-expectation and responsive distributions on trinomial trees'

VERSION = gnormal.__version__

AUTHOR = gnormal.__author__

AUTHOR_EMAIL = gnormal.__author_email__

LICENSE = gnormal.__license__

PLATFORMS = ['Posix', 'MacOS X', 'Windows']

CLASSIFIERS = ['Development Status :: 3 - Alpha',
               'Intended Audience :: Science/Research',
               'License :: OSI Approved :: BSD License',
               'Programming Language :: Python :: 3',
               'Topic :: Scientific/Engineering :: Mathematics']

PACKAGES = ['gnormal',
            'gnormal.payoff',
            'gnormal.scheme']

INSTALL_REQUIRES = ['numpy>=1.17']

SCRIPTS = ['scripts/gnormal-run.py']

setup(name=NAME,
      description=DESCRIPTION,
      version=VERSION,
      author=AUTHOR,
      author_email=AUTHOR_EMAIL,
      license=LICENSE,
      platforms=PLATFORMS,
      classifiers=CLASSIFIERS,
      packages=PACKAGES,
      install_requires=INSTALL_REQUIRES,
      python_requires='>=3.7',
      scripts=SCRIPTS)
