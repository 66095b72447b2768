from fractions import Fraction

from k3brauer import catalog, errors, exactnum, lattice
import tests.helpers


def section_form():
    half = Fraction(1, 2)
    return lattice.DiscriminantForm(
        [2, 2, 2], [half, 0, 0], [[0, 0, 0], [0, 0, half], [0, half, 0]])


class GramLatticeTests(tests.helpers.K3BrauerTestCase):

    def test_that_non_symmetric_gram_is_rejected(self):
        with self.assertRaises(errors.InvalidInput):
            lattice.GramLattice([[0, 1], [2, 0]])

    def test_that_e8_is_even_unimodular_and_negative_definite(self):
        e8 = catalog.e8_minus_one()
        self.assertEqual(e8.determinant(), 1)
        self.assertTrue(e8.is_even())
        self.assertEqual(e8.signature(), (0, 8))

    def test_that_k3_lattice_has_signature_3_19(self):
        k3 = catalog.lambda_k3()
        self.assertEqual(k3.rank, 22)
        self.assertEqual(k3.determinant(), -1)
        self.assertEqual(k3.signature(), (3, 19))

    def test_that_degenerate_signature_is_rejected(self):
        with self.assertRaises(errors.DegenerateLattice):
            lattice.GramLattice([[0, 0], [0, 2]]).signature()

    def test_that_direct_sum_and_scaling_compose(self):
        u = catalog.hyperbolic_plane()
        self.assertGramEqual(u.scaled(2), [[0, 2], [2, 0]])
        total = u.direct_sum(catalog.rank_one(-2))
        self.assertGramEqual(total, [[0, 1, 0], [1, 0, 0], [0, 0, -2]])

    def test_that_inner_accepts_rational_vectors(self):
        u = catalog.hyperbolic_plane()
        self.assertEqual(u.inner((Fraction(1, 2), 0), (0, Fraction(1, 2))),
                         Fraction(1, 4))
        self.assertEqual(u.norm((1, 1)), 2)

    def test_that_sublattice_records_its_basis(self):
        u = catalog.hyperbolic_plane()
        sub = u.sublattice([(1, 1)])
        self.assertGramEqual(sub, [[2]])
        self.assertEqual(sub.basis, [(1, 1)])


class DiscriminantFormTests(tests.helpers.K3BrauerTestCase):

    def test_that_coprime_lambda_has_cyclic_group(self):
        form = lattice.discriminant_form(catalog.lambda_bc(5, 1))
        self.assertEqual(form.invariant_factors, [25])
        self.assertEqual(form.order, 25)
        self.assertTrue(form.is_cyclic())

    def test_that_unimodular_lattice_has_trivial_group(self):
        form = lattice.discriminant_form(catalog.lambda_k3())
        self.assertEqual(form.order, 1)
        self.assertEqual(form.orders, ())

    def test_that_rank_one_form_has_expected_q(self):
        form = lattice.discriminant_form(catalog.rank_one(-2))
        self.assertEqual(form.orders, (2,))
        self.assertQValue(form.q((1,)), '3/2')

    def test_that_degenerate_lattice_has_no_form(self):
        with self.assertRaises(errors.DegenerateLattice):
            lattice.discriminant_form(lattice.GramLattice([[0, 0], [0, 2]]))

    def test_that_orders_below_two_are_rejected(self):
        with self.assertRaises(errors.InvalidInput):
            lattice.DiscriminantForm([1], [0])

    def test_that_quadratic_form_uses_cross_terms(self):
        form = section_form()
        self.assertEqual(form.q((0, 1, 1)), 1)
        self.assertEqual(form.q((1, 0, 0)), Fraction(1, 2))
        self.assertEqual(form.b((0, 1, 0), (0, 0, 1)), Fraction(1, 2))

    def test_that_negation_flips_q(self):
        form = lattice.DiscriminantForm.cyclic(8, Fraction(1, 8)).negate()
        self.assertQValue(form.q((1,)), '15/8')

    def test_that_subgroups_are_measured(self):
        form = lattice.DiscriminantForm.cyclic(25, Fraction(2, 25))
        self.assertEqual(form.subgroup_order([(5,)]), 5)
        self.assertEqual(len(form.span([(5,)])), 5)
        self.assertEqual(form.element_order((10,)), 5)

    def test_that_invariant_factors_are_normalised(self):
        form = lattice.DiscriminantForm([2, 3], [0, Fraction(2, 3)])
        self.assertEqual(form.invariant_factors, [6])

    def test_that_direct_sum_concatenates(self):
        form = lattice.DiscriminantForm.cyclic(2, Fraction(1, 2)).direct_sum(
            lattice.DiscriminantForm.cyclic(2, Fraction(3, 2)))
        self.assertEqual(form.order, 4)
        self.assertTrue(form.q((1, 1)).is_zero())


class IsotropicSubgroupTests(tests.helpers.K3BrauerTestCase):

    def test_that_section_form_has_two_isotropic_lines(self):
        subgroups = lattice.isotropic_subgroups(section_form())
        self.assertEqual([s.generators for s in subgroups],
                         [[(0, 0, 1)], [(0, 1, 0)]])
        self.assertTrue(all(s.maximal for s in subgroups))

    def test_that_lambda_2_0_has_two_maximal_subgroups(self):
        form = lattice.discriminant_form(catalog.lambda_bc(2, 0))
        subgroups = lattice.isotropic_subgroups(form)
        self.assertEqual(sum(1 for s in subgroups if s.maximal), 2)

    def test_that_gamma_has_one_subgroup_of_order_b(self):
        for c in range(1, 5):
            form = lattice.discriminant_form(catalog.gamma_bc(5, c))
            subgroups = lattice.isotropic_subgroups(form)
            self.assertEqual(sum(1 for s in subgroups if s.order == 5), 1)

    def test_that_large_groups_are_inconclusive(self):
        with self.assertRaises(errors.Inconclusive) as context:
            lattice.isotropic_subgroups(section_form(), enumeration_bound=4)
        self.assertEqual(context.exception.bound, 4)


class FormIsomorphismTests(tests.helpers.K3BrauerTestCase):

    def test_that_cyclic_forms_match_by_unit(self):
        first = lattice.DiscriminantForm.cyclic(5, Fraction(2, 5))
        second = lattice.DiscriminantForm.cyclic(5, Fraction(8, 5))
        isomorphism = lattice.disc_forms_isomorphic(first, second)
        self.assertEqual(isomorphism.multiplier, 2)
        self.assertEqual(second.q(isomorphism((1,))), first.q((1,)))

    def test_that_non_square_multiple_is_not_isometric(self):
        first = lattice.DiscriminantForm.cyclic(5, Fraction(2, 5))
        second = lattice.DiscriminantForm.cyclic(5, Fraction(4, 5))
        self.assertIsNone(lattice.disc_forms_isomorphic(first, second))

    def test_that_different_groups_are_not_isometric(self):
        first = lattice.DiscriminantForm.cyclic(4, Fraction(1, 4))
        second = lattice.DiscriminantForm([2, 2], [Fraction(1, 2)] * 2)
        self.assertIsNone(lattice.disc_forms_isomorphic(first, second))

    def test_that_scaled_plane_matches_hyperbolic_form(self):
        half = Fraction(1, 2)
        expected = lattice.DiscriminantForm([2, 2], [0, 0],
                                            [[0, half], [half, 0]])
        computed = lattice.discriminant_form(catalog.lambda_bc(2, 0))
        self.assertIsNotNone(lattice.disc_forms_isomorphic(computed,
                                                           expected))

    def test_that_anisotropic_form_differs_from_section_form(self):
        form = section_form()
        other = lattice.DiscriminantForm([2, 2, 2], [Fraction(1, 2)] * 3)
        self.assertIsNone(lattice.disc_forms_isomorphic(form, other))


class KernelAndComplementTests(tests.helpers.K3BrauerTestCase):

    def test_that_pairing_character_reads_gram_rows(self):
        u = catalog.hyperbolic_plane()
        character = lattice.Character.pairing_with(u, (1, 0), 2)
        self.assertEqual(character.values, (0, 1))
        self.assertEqual(character((0, 1)), 1)

    def test_that_kernel_has_index_modulus(self):
        u = catalog.hyperbolic_plane()
        kernel = lattice.kernel_sublattice(
            u, lattice.Character(u, 2, [1, 0]))
        self.assertEqual(kernel.determinant(), -4)
        for row in kernel.basis:
            self.assertEqual(row[0] % 2, 0)

    def test_that_zero_character_is_rejected(self):
        u = catalog.hyperbolic_plane()
        with self.assertRaises(errors.InvalidInput):
            lattice.kernel_sublattice(u, lattice.Character(u, 2, [2, 4]))

    def test_that_complement_is_orthogonal(self):
        u = catalog.hyperbolic_plane()
        ambient = u.direct_sum(u)
        complement = lattice.orthogonal_complement(ambient, [(1, 0, 1, 0)])
        self.assertEqual(complement.rank, 3)
        for row in complement.basis:
            self.assertEqual(ambient.inner(row, (1, 0, 1, 0)), 0)

    def test_that_dependent_sub_basis_is_rejected(self):
        u = catalog.hyperbolic_plane()
        with self.assertRaises(errors.InvalidInput):
            lattice.orthogonal_complement(u.direct_sum(u),
                                          [(1, 0, 0, 0), (2, 0, 0, 0)])


class DiscriminantFormLawTests(tests.helpers.K3BrauerTestCase):

    def lift_of(self, form, x):
        rank = len(form.lifts[0])
        return [sum(xi * lift[k] for xi, lift in zip(x, form.lifts))
                for k in range(rank)]

    def test_that_q_ignores_the_choice_of_lift(self):
        for lat in (catalog.lambda_bc(5, 2), catalog.lambda_bc(6, 1),
                    catalog.rank_one(-6).direct_sum(
                        catalog.hyperbolic_plane(2))):
            form = lattice.discriminant_form(lat)
            for x in form.elements():
                lift = self.lift_of(form, x)
                for _ in range(3):
                    shift = [self.rng.randint(-5, 5) for _ in lift]
                    moved = [a + s for a, s in zip(lift, shift)]
                    self.assertEqual(
                        exactnum.QMod2Z(lat.norm(moved)), form.q(x))

    def test_that_forms_of_direct_sums_are_direct_sums(self):
        a2 = lattice.GramLattice([[2, 1], [1, 2]])
        for first, second in ((a2, catalog.rank_one(-4)),
                              (catalog.lambda_bc(3, 1), catalog.rank_one(-2)),
                              (catalog.hyperbolic_plane(2), a2)):
            combined = lattice.discriminant_form(first.direct_sum(second))
            summed = lattice.discriminant_form(first).direct_sum(
                lattice.discriminant_form(second))
            self.assertEqual(combined.order, summed.order)
            self.assertIsNotNone(
                lattice.disc_forms_isomorphic(summed, combined))
            self.assertIsNotNone(
                lattice.disc_forms_isomorphic(combined, summed))
