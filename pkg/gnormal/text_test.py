# Copyright 2026 The gnormal Authors. All Rights Reserved.
#
# Use of this source code is governed by a BSD-style
# license that can be found in the LICENSE file.

import json
import unittest

import numpy as np

from gnormal import text


class TestFormatting(unittest.TestCase):

    def test_format_float(self):
        self.assertEqual(text.format_float(0.1), '0.1')
        self.assertEqual(text.format_float(np.float64(1.0) / 3.0),
                         '0.3333333333333333')
        self.assertEqual(text.format_float(None), '')
        self.assertEqual(text.format_float(800), '800')
        self.assertEqual(text.format_float(np.int64(7)), '7')

    def test_csv_text(self):
        body = text.csv_text(('x', 'mass', 'density'), [(-0.5, 0.25, 2.5),
                                                        (0.0, 0.5, 5.0)])
        self.assertEqual(body, 'x,mass,density\n-0.5,0.25,2.5\n0.0,0.5,5.0\n')

    def test_canonical_json_round_trip(self):
        body = text.canonical_json({'b': np.float64(0.1) * 3, 'a': np.int64(2),
                                    'c': [1.0, None]})
        self.assertEqual(text.canonical_json(json.loads(body)), body)
        self.assertTrue(body.index('"a"') < body.index('"b"'))
        self.assertTrue(body.endswith('\n'))

    def test_non_finite_rejected(self):
        self.assertRaises(ValueError, text.canonical_json, {'x': float('inf')})

    def test_table_json(self):
        rows = json.loads(text.table_json(('N', 'rate'), [(100, None)]))
        self.assertEqual(rows, [{'N': 100, 'rate': None}])


if __name__ == '__main__':
    unittest.main()
