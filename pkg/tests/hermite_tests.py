from fractions import Fraction

import sympy

from k3brauer import errors, exactnum, hermite
import tests.helpers


def quartic_v4_plus_1():
    return hermite.QuarticModel.from_plain([1, 0, 0, 0, 1])


class QuarticModelTests(tests.helpers.K3BrauerTestCase):

    def test_that_plain_coefficients_are_divided_by_binomials(self):
        model = hermite.QuarticModel.from_plain([1, 4, 6, 4, 1])
        self.assertEqual(model.constants(), [1, 1, 1, 1, 1])

    def test_that_five_coefficients_are_required(self):
        with self.assertRaises(errors.InvalidInput):
            hermite.QuarticModel([1, 0, 0, 1])

    def test_that_zero_model_is_rejected(self):
        with self.assertRaises(errors.InvalidInput):
            hermite.QuarticModel([0, 0, 0, 0, 0])

    def test_that_declared_degrees_are_enforced(self):
        with self.assertRaises(errors.InvalidInput):
            hermite.QuarticModel(['0,1', 0, 0, 0, 1],
                                 degrees=(0, 0, 0, 0, 0))
        model = hermite.QuarticModel(['0,1', 0, 0, 0, 1],
                                     degrees=(1, 0, 0, 0, 0))
        self.assertEqual(model.to_json()['degrees'], [1, 0, 0, 0, 0])

    def test_that_string_coefficients_use_comma_format(self):
        model = hermite.QuarticModel(['1,2', 0, 0, 0, '1'])
        self.assertEqual(model.to_json()['coeffs'][0], '1,2')
        self.assertFalse(model.is_constant())

    def test_that_specialisation_substitutes_the_base_variable(self):
        model = hermite.QuarticModel(['1', 0, '0,1', 0, '1'])
        self.assertEqual(model.specialize(2).constants(), [1, 0, 2, 0, 1])
        self.assertEqual(model.specialize(Fraction(1, 3)).constants()[2],
                         Fraction(1, 3))

    def test_that_non_constant_models_have_no_constants(self):
        with self.assertRaises(errors.InvalidInput):
            hermite.QuarticModel(['0,1', 0, 0, 0, 1]).constants()

    def test_that_translation_moves_the_roots(self):
        moved = quartic_v4_plus_1().translated(1)
        self.assertEqual(moved.constants(), [1, 1, 1, 1, 2])

    def test_that_repeated_roots_are_detected(self):
        self.assertTrue(hermite.QuarticModel.from_plain(
            [1, 4, 6, 4, 1]).has_repeated_root())
        self.assertFalse(quartic_v4_plus_1().has_repeated_root())

    def test_that_repeated_root_check_needs_a0(self):
        with self.assertRaises(errors.InvalidInput):
            hermite.QuarticModel([0, 1, 0, 0, 1]).has_repeated_root()


class JacobianTests(tests.helpers.K3BrauerTestCase):

    def test_that_v4_plus_1_has_g2_1_and_g3_0(self):
        jacobian = hermite.hermite_jacobian(quartic_v4_plus_1())
        self.assertEqual(jacobian.to_json(), {'g2': '1', 'g3': '0'})
        self.assertTrue(jacobian.is_smooth())

    def test_that_invariants_survive_translation(self):
        for shift in (1, Fraction(-2, 3)):
            model = hermite.random_smooth_quartic(self.rng)
            before = hermite.hermite_jacobian(model)
            after = hermite.hermite_jacobian(model.translated(shift))
            self.assertEqual(before.g2, after.g2)
            self.assertEqual(before.g3, after.g3)

    def test_that_discriminant_is_g2_cubed_minus_27_g3_squared(self):
        jacobian = hermite.hermite_jacobian(quartic_v4_plus_1())
        self.assertEqual(hermite.weierstrass_disc(jacobian).as_expr(), 1)
        singular = hermite.hermite_jacobian(
            hermite.QuarticModel.from_plain([1, 4, 6, 4, 1]))
        self.assertTrue(hermite.weierstrass_disc(singular).is_zero)

    def test_that_discriminant_vanishes_exactly_at_repeated_roots(self):
        v = sympy.Symbol('v')
        seen = set()
        for _ in range(12):
            r, s, u = (self.rng.randint(-4, 4) for _ in range(3))
            double = sympy.Poly((v - r) ** 2 * (v ** 2 + s * v + u), v)
            generic = [self.rng.randint(1, 5)] + [
                self.rng.randint(-9, 9) for _ in range(4)]
            for model in (hermite.QuarticModel.from_plain(
                              double.all_coeffs()),
                          hermite.QuarticModel.from_plain(generic)):
                repeated = model.has_repeated_root()
                disc = hermite.weierstrass_disc(
                    hermite.hermite_jacobian(model))
                self.assertEqual(disc.is_zero, repeated)
                seen.add(repeated)
        self.assertEqual(seen, {True, False})

    def test_that_invariants_survive_shifts_by_the_base_variable(self):
        t = sympy.Symbol('t')
        model = hermite.random_quartic(
            self.rng, degrees=hermite.NODAL_SEXTIC_DEGREES)
        free = hermite.QuarticModel(model.coefficients)
        before = hermite.hermite_jacobian(free)
        for shift in (t, 2 * t + 1, t ** 2):
            after = hermite.hermite_jacobian(free.translated(shift))
            self.assertEqual(sympy.expand(before.g2.as_expr() -
                                          after.g2.as_expr()), 0)
            self.assertEqual(sympy.expand(before.g3.as_expr() -
                                          after.g3.as_expr()), 0)

    def test_that_fourth_power_is_singular(self):
        model = hermite.QuarticModel.from_plain([1, 4, 6, 4, 1])
        self.assertFalse(hermite.hermite_jacobian(model).is_smooth())

    def test_that_base_degrees_follow_the_weights(self):
        t = sympy.Symbol('t')
        model = hermite.QuarticModel(['0,0,0,0,1', 0, 0, 0, '0,0,0,0,1'])
        jacobian = hermite.hermite_jacobian(model)
        self.assertEqual(jacobian.g2.as_expr(), t ** 8)
        self.assertTrue(jacobian.g3.is_zero)

    def test_that_random_families_stay_within_8_and_12(self):
        for degrees in (hermite.DOUBLE_QUADRIC_DEGREES,
                        hermite.NODAL_SEXTIC_DEGREES):
            model = hermite.random_quartic(self.rng, degrees=degrees)
            jacobian = hermite.hermite_jacobian(model)
            self.assertLessEqual(exactnum.degree(jacobian.g2), 8)
            self.assertLessEqual(exactnum.degree(jacobian.g3), 12)


class ConicMatrixTests(tests.helpers.K3BrauerTestCase):

    def test_that_identity_holds_symbolically(self):
        self.assertTrue(hermite.symbolic_identity())

    def test_that_v4_plus_1_gives_4x3_minus_x(self):
        result = hermite.conic_matrix(quartic_v4_plus_1())
        self.assertTrue(result.identity_verified)
        self.assertEqual(result.determinant(),
                         4 * hermite.X ** 3 - hermite.X)

    def test_that_nonzero_g3_keeps_the_identity(self):
        model = hermite.QuarticModel([0, 0, 1, 0, 0])
        jacobian = hermite.hermite_jacobian(model)
        self.assertEqual((jacobian.g2.as_expr(), jacobian.g3.as_expr()),
                         (3, -1))
        result = hermite.conic_matrix(model)
        self.assertEqual(result.determinant(),
                         4 * hermite.X ** 3 - 3 * hermite.X + 1)

    def test_that_quartic_entries_carry_a_minus_sign(self):
        matrix = hermite.conic_matrix(quartic_v4_plus_1()).matrix
        x = hermite.X
        self.assertEqual(matrix.tolist(),
                         [[-1, 0, 2 * x], [0, -x, 0], [2 * x, 0, -1]])

    def test_that_random_rational_quartics_keep_the_identity(self):
        for _ in range(10):
            model = hermite.QuarticModel(
                [self.rng.randint(1, 9)] +
                [Fraction(self.rng.randint(-9, 9), self.rng.randint(1, 5))
                 for _ in range(4)])
            self.assertTrue(hermite.conic_matrix(model).identity_verified)

    def test_that_identity_holds_over_the_base(self):
        model = hermite.random_quartic(
            self.rng, degrees=hermite.NODAL_SEXTIC_DEGREES)
        self.assertTrue(hermite.conic_matrix(model).identity_verified)


class NumericsTests(tests.helpers.K3BrauerTestCase):

    def test_that_genus_is_6d_minus_2(self):
        for d in range(1, 6):
            self.assertEqual(hermite.fibration_numerics(d).genus, 6 * d - 2)
            self.assertEqual(hermite.adjunction_genus(d), 6 * d - 2)

    def test_that_d_2_gives_a_k3(self):
        numerics = hermite.FibrationNumerics(2)
        self.assertEqual(numerics.euler, 24)
        self.assertEqual(numerics.b2, 22)
        self.assertEqual(numerics.brauer2_rank, 20)
        self.assertEqual(numerics.to_json()['theta_dim'], 4)

    def test_that_nonpositive_d_is_rejected(self):
        with self.assertRaises(errors.InvalidInput):
            hermite.FibrationNumerics(0)
        with self.assertRaises(errors.InvalidInput):
            hermite.adjunction_genus(0)


class TrigonalTests(tests.helpers.K3BrauerTestCase):

    def test_that_pairings_map_to_cubic_roots(self):
        _, report = hermite.trigonal_resolvent(quartic_v4_plus_1())
        self.assertTrue(report.passed)
        self.assertAlmostEqual(float(abs(report.alpha)), 0.25, places=10)
        self.assertAlmostEqual(float(abs(report.beta)), 0.0, places=10)

    def test_that_random_models_pass(self):
        for _ in range(5):
            model = hermite.random_smooth_quartic(self.rng)
            _, report = hermite.trigonal_resolvent(model)
            self.assertTrue(report.passed)

    def test_that_report_keeps_numbers_apart(self):
        _, report = hermite.trigonal_resolvent(quartic_v4_plus_1())
        document = report.to_json()
        self.assertTrue(document['passed'])
        self.assertEqual(len(document['numerical']['quartic_roots']), 4)
        self.assertEqual(len(document['numerical']['pairings']), 3)

    def test_that_repeated_roots_are_rejected(self):
        with self.assertRaises(errors.InvalidInput):
            hermite.trigonal_resolvent(
                hermite.QuarticModel.from_plain([1, 4, 6, 4, 1]))

    def test_that_unspecialised_models_are_rejected(self):
        with self.assertRaises(errors.InvalidInput):
            hermite.trigonal_resolvent(
                hermite.QuarticModel(['0,1', 0, 0, 0, 1]))


class DiagonalizationTests(tests.helpers.K3BrauerTestCase):

    def test_that_v4_plus_1_diagonalises(self):
        result = hermite.diagonalize_symmetric(
            hermite.conic_ratfunc_matrix(quartic_v4_plus_1()))
        self.assertTrue(result.verified)
        self.assertEqual(len(result.entries), 3)
        self.assertTrue(result.to_json()['identity_verified'])

    def test_that_zero_pivots_are_repaired(self):
        for _ in range(4):
            model = hermite.random_pivot_quartic(self.rng)
            self.assertEqual(model.constants()[0], 0)
            result = hermite.diagonalize_symmetric(
                hermite.conic_ratfunc_matrix(model))
            self.assertTrue(result.verified)
            self.assertTrue(all(not v.is_zero() for v in result.entries))

    def test_that_asymmetric_matrices_are_rejected(self):
        matrix = hermite.conic_ratfunc_matrix(quartic_v4_plus_1())
        matrix[0][1] = exactnum.RatFunc.constant(5, hermite.X)
        with self.assertRaises(errors.InvalidInput):
            hermite.diagonalize_symmetric(matrix)


class QuaternionSymbolTests(tests.helpers.K3BrauerTestCase):

    def test_that_symbol_is_minus_fg_minus_fh(self):
        self.assertEqual(hermite.quaternion_symbol((1, 2, 3)), (-2, -3))
        self.assertEqual(
            hermite.quaternion_symbol([[2, 0, 0], [0, 5, 0], [0, 0, 7]]),
            (-10, -14))

    def test_that_zero_entries_are_rejected(self):
        with self.assertRaises(errors.InvalidInput):
            hermite.quaternion_symbol((1, 0, 3))

    def test_that_diagonalisations_are_accepted(self):
        result = hermite.diagonalize_symmetric(
            hermite.conic_ratfunc_matrix(quartic_v4_plus_1()))
        first, second = hermite.quaternion_symbol(result)
        f, g, h = result.entries
        self.assertEqual(first, -(f * g))
        self.assertEqual(second, -(f * h))
