#!/usr/bin/env python

# Copyright 2026 The gnormal Authors. All Rights Reserved.
#
# Use of this source code is governed by a BSD-style
# license that can be found in the LICENSE file.

import sys

from gnormal import cli

if __name__ == '__main__':
    sys.exit(cli.main())
