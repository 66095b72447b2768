from fractions import Fraction
import io
import json
import unittest

import sympy

from k3brauer import exactnum, reporting


class Described(object):

    def to_json(self):
        return {'value': Fraction(3, 4)}


class ToJsonableTests(unittest.TestCase):

    def test_that_fractions_become_canonical_strings(self):
        self.assertEqual(reporting.to_jsonable(Fraction(6, 4)), '3/2')
        self.assertEqual(reporting.to_jsonable(Fraction(4, 2)), '2')

    def test_that_qmod2z_uses_its_representative(self):
        value = exactnum.QMod2Z(Fraction(-1, 2))
        self.assertEqual(reporting.to_jsonable(value), '3/2')

    def test_that_sympy_rationals_are_accepted(self):
        self.assertEqual(reporting.to_jsonable(sympy.Rational(-5, 10)),
                         '-1/2')

    def test_that_matrices_become_nested_lists(self):
        matrix = exactnum.IntMatrix([[1, 2], [3, 4]])
        self.assertEqual(reporting.to_jsonable(matrix), [[1, 2], [3, 4]])

    def test_that_objects_describe_themselves(self):
        self.assertEqual(reporting.to_jsonable([Described(), (1, True)]),
                         [{'value': '3/4'}, [1, True]])

    def test_that_sets_are_sorted(self):
        self.assertEqual(reporting.to_jsonable({3, 1, 2}), [1, 2, 3])

    def test_that_unknown_values_are_refused(self):
        with self.assertRaises(TypeError):
            reporting.to_jsonable(object())


class DumpsTests(unittest.TestCase):

    def test_that_keys_are_sorted(self):
        text = reporting.dumps({'b': 1, 'a': Fraction(1, 3)})
        self.assertLess(text.index('"a"'), text.index('"b"'))
        self.assertEqual(json.loads(text), {'a': '1/3', 'b': 1})

    def test_that_report_writes_one_document(self):
        stream = io.StringIO()
        reporting.report({'verdict': 'isometric'}, stream=stream)
        self.assertTrue(stream.getvalue().endswith('\n'))
        self.assertEqual(json.loads(stream.getvalue()),
                         {'verdict': 'isometric'})
