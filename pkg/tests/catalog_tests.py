from k3brauer import catalog, errors, lattice
import tests.helpers


class RegistryTests(tests.helpers.K3BrauerTestCase):

    def test_that_unknown_lattice_is_rejected(self):
        with self.assertRaises(errors.InvalidInput) as context:
            catalog.get_lattice('no-such-lattice')
        self.assertIn('LAMBDA_BC', str(context.exception))

    def test_that_lookup_ignores_case(self):
        self.assertIs(catalog.get_lattice('lambda_bc'),
                      catalog.get_lattice('LAMBDA_BC'))

    def test_that_new_lattices_can_be_registered(self):
        with tests.helpers.patch_registry(catalog._lattice_factories):
            catalog.add_lattice('a2', lambda: lattice.GramLattice(
                [[2, -1], [-1, 2]]))
            built = catalog.standard_lattice('A2')
            self.assertEqual(built.determinant(), 3)
            self.assertEqual(built.name, 'A2')
        self.assertNotIn('A2', catalog.registered_names())

    def test_that_standard_names_are_registered(self):
        for name in ('U', 'E8_MINUS_1', 'LAMBDA_PRIME', 'LAMBDA_K3',
                     'LAMBDA_BC', 'GAMMA_BC', 'T2D', 'RULED', 'GAMMA_ALPHA'):
            self.assertIn(name, catalog.registered_names())

    def test_that_wrong_parameter_count_is_rejected(self):
        with self.assertRaises(errors.InvalidInput):
            catalog.standard_lattice('U', 1, 2)


class SpecParsingTests(tests.helpers.K3BrauerTestCase):

    def test_that_parameters_are_parsed(self):
        built = catalog.parse_spec('lambda_bc(5, 2)')
        self.assertGramEqual(built, [[0, 5], [5, 4]])
        self.assertEqual(built.name, 'LAMBDA_BC(5,2)')

    def test_that_bare_names_are_parsed(self):
        self.assertEqual(catalog.parse_spec('LAMBDA_PRIME').rank, 20)

    def test_that_malformed_specs_are_rejected(self):
        for text in ('U(2', 'RANK1(x)', '(1,2)'):
            with self.assertRaises(errors.InvalidInput):
                catalog.parse_spec(text)

    def test_that_format_spec_round_trips_names(self):
        self.assertEqual(catalog.format_spec('gamma_bc', (3, 1)),
                         'GAMMA_BC(3,1)')
        self.assertEqual(catalog.format_spec('u', ()), 'U')


class StandardLatticeTests(tests.helpers.K3BrauerTestCase):

    def test_that_lambda_needs_nonzero_b(self):
        with self.assertRaises(errors.InvalidInput):
            catalog.lambda_bc(0, 1)

    def test_that_gamma_bc_has_rank_20(self):
        gamma = catalog.gamma_bc(5, 2)
        self.assertEqual(gamma.rank, 20)
        self.assertEqual(gamma.determinant(), 25)
        self.assertEqual(gamma.signature(), (2, 18))

    def test_that_transcendental_lattice_has_det_minus_2d(self):
        t2 = catalog.transcendental(1)
        self.assertEqual(t2.rank, 21)
        self.assertEqual(t2.determinant(), -2)
        self.assertEqual(t2.signature(), (2, 19))

    def test_that_gamma_alpha_has_det_minus_8d(self):
        self.assertEqual(catalog.gamma_alpha(1).determinant(), -8)
        self.assertEqual(catalog.gamma_alpha(2).determinant(), -16)

    def test_that_ruled_surface_section_is_negative(self):
        self.assertGramEqual(catalog.ruled_surface(3), [[0, 1], [1, -3]])
        with self.assertRaises(errors.InvalidInput):
            catalog.ruled_surface(-1)

    def test_that_degenerate_entries_are_rejected(self):
        for factory, argument in ((catalog.hyperbolic_plane, 0),
                                  (catalog.rank_one, 0),
                                  (catalog.transcendental, 0),
                                  (catalog.gamma_alpha, 0)):
            with self.assertRaises(errors.InvalidInput):
                factory(argument)
