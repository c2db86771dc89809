# Copyright 2026 The gnormal Authors. All Rights Reserved.
#
# Use of this source code is governed by a BSD-style
# license that can be found in the LICENSE file.

__author__ = 'The gnormal Authors'
__author_email__ = '<gnormal-dev @t lists d0t org>'
__version__ = '0.1.0'
__license__ = 'BSD License'
