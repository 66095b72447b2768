import random
import unittest
try:
    from unittest import mock
except ImportError:
    import mock

import k3brauer
from k3brauer import exactnum


class K3BrauerTestCase(unittest.TestCase):

    def setUp(self):
        super(K3BrauerTestCase, self).setUp()
        self.settings = k3brauer.settings()
        self.rng = random.Random(self.settings['seed'])

    def assertGramEqual(self, lattice, rows):
        self.assertEqual(lattice.gram.to_lists(), rows)

    def assertIsWitness(self, witness, first, second):
        first = exactnum.IntMatrix(first)
        second = exactnum.IntMatrix(second)
        self.assertEqual(witness.transpose() * first * witness, second)
        self.assertIn(witness.determinant(), (1, -1))

    def assertQValue(self, value, expected):
        self.assertEqual(str(value), expected)


def patch_registry(target):
    """Keep registrations made inside a test from leaking out of it."""
    return mock.patch.dict(target)
