# Copyright 2026 The gnormal Authors. All Rights Reserved.
#
# Use of this source code is governed by a BSD-style
# license that can be found in the LICENSE file.

import csv
import io
import json
import math

import numpy as np


def format_float(value):
    """Shortest decimal that reads back to the same double; '' for None."""
    if value is None:
        return ''
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_float(v) for v in row])
    return buf.getvalue()


def _plain(value):
    # numpy scalars and arrays are not json serializable as-is
    if isinstance(value, dict):
        return dict((str(k), _plain(v)) for k, v in value.items())
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_plain(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        if not math.isfinite(value):
            raise ValueError('cannot serialize non-finite value %r' % value)
        return value
    return value


def canonical_json(obj):
    """Sorted keys, two-space indent and a trailing newline.

    Floats go through repr, so loading and dumping again gives the same
    bytes.
    """
    return json.dumps(_plain(obj), sort_keys=True, indent=2,
                      allow_nan=False) + '\n'


def table_json(header, rows):
    return canonical_json([dict(zip(header, row)) for row in rows])


def write_text(path, text):
    with open(path, 'w', encoding='utf-8', newline='') as f:
        f.write(text)
