"""Linear categories: validation, envelopes, graded view, bimodules, twists."""

import itertools

import numpy as np
import pytest

from triobstruct.exactalg import Coefficients, ExactMatrix, ModuleMap, PresentedModule
from triobstruct.fixtures import (
    one_object_category,
    ring_category_dual_numbers,
    ring_category_z4,
    two_object_swap_category,
)
from triobstruct.lincat import (
    Mor,
    additive_envelope,
    envelope_matrix_mor,
    full_subcategory,
    hom_bimodule,
    identity_automorphism,
    twist_bimodule,
    validate_category,
)

Z4 = Coefficients.integers_mod(4)


class TestValidation:
    def test_z4_one_object_valid(self):
        assert validate_category(ring_category_z4())

    def test_dual_numbers_valid(self):
        assert validate_category(ring_category_dual_numbers())

    def test_corrupted_constant_reports_triple(self):
        cat = ring_category_dual_numbers()
        bad = np.empty((2, 2), dtype=object)
        # non-associative table: (e e) e = 1 e = 1 but e (e e) = e 1 = e
        bad[0, 0] = np.asarray([1, 0], dtype=object)
        bad[0, 1] = np.asarray([1, 0], dtype=object)
        bad[1, 0] = np.asarray([0, 1], dtype=object)
        bad[1, 1] = np.asarray([1, 0], dtype=object)
        cat._comp[("R", "R", "R")] = bad
        report = validate_category(cat)
        assert not report.valid
        assert any(f[0] == "associativity" for f in report.failures)

    def test_missing_identity_reports_unit_failure(self):
        cat = one_object_category(Z4, 1, [[[1]]], [0])
        report = validate_category(cat)
        assert not report.valid
        assert any(f[0].startswith("unit") for f in report.failures)


class TestSubcategoryAndEnvelope:
    def test_full_subcategory_roundtrip(self):
        cat, _ = two_object_swap_category()
        sub = full_subcategory(cat, ["A"])
        assert sub.objects == ["A"]
        assert validate_category(sub)
        full = full_subcategory(cat, cat.objects)
        assert full.objects == cat.objects

    def test_unknown_object_rejected(self):
        cat = ring_category_z4()
        with pytest.raises(KeyError):
            full_subcategory(cat, ["X"])

    def test_envelope_counts_z4(self):
        env = additive_envelope(ring_category_z4(), 2)
        assert len(env.objects) == 3  # 0, R, R+R
        h = env.hom("R+R", "R+R")
        assert h.invariant_factors() == [4, 4, 4, 4]
        assert validate_category(env)

    def test_envelope_rank_one_adjoins_zero(self):
        env = additive_envelope(ring_category_z4(), 1)
        assert sorted(env.objects) == ["0", "R"]
        assert env.hom("0", "R").is_zero_module()
        assert env.hom("R", "R").invariant_factors() == [4]

    def test_envelope_composition_is_matrix_product(self):
        cat = ring_category_z4()
        env = additive_envelope(cat, 2)
        r2 = "R+R"
        a = [[cat.mor("R", "R", [1]), cat.mor("R", "R", [2])],
             [cat.mor("R", "R", [0]), cat.mor("R", "R", [3])]]
        b = [[cat.mor("R", "R", [2]), cat.mor("R", "R", [1])],
             [cat.mor("R", "R", [1]), cat.mor("R", "R", [0])]]
        fa = envelope_matrix_mor(env, r2, r2, a)
        fb = envelope_matrix_mor(env, r2, r2, b)
        prod = [[cat.mor("R", "R", [(2 * 1 + 1 * 2) % 4]), cat.mor("R", "R", [1])],
                [cat.mor("R", "R", [3]), cat.mor("R", "R", [0])]]
        # (a o b)_{ik} = sum_j a_{ij} b_{jk}
        want = envelope_matrix_mor(env, r2, r2, prod)
        got = env.compose(fa, fb)
        assert env.hom(r2, r2).eq(got.vec, want.vec)

    def test_envelope_dual_numbers_valid(self):
        env = additive_envelope(ring_category_dual_numbers(), 2)
        assert validate_category(env)


class TestGradedView:
    def test_graded_composition_associative_small_degrees(self):
        cat, swap = two_object_swap_category()
        assert swap.validate()
        from triobstruct.lincat import SuspendedGradedView

        view = SuspendedGradedView(cat, swap)
        degs = [-2, -1, 0, 1, 2]
        for p, q, r in itertools.product(degs, repeat=3):
            if abs(p) + abs(q) + abs(r) > 3:
                continue
            f = view.mor("A", "A", p, [1])
            g = view.mor("A", "A", q, [1])
            h = view.mor("A", "A", r, [1])
            lhs = view.compose(view.compose(f, g), h)
            rhs = view.compose(f, view.compose(g, h))
            assert lhs.deg == rhs.deg
            assert view.hom_module("A", "A", lhs.deg).eq(lhs.vec, rhs.vec)

    def test_iota_conjugation_is_automorphism(self):
        cat, swap = two_object_swap_category()
        from triobstruct.lincat import SuspendedGradedView

        view = SuspendedGradedView(cat, swap)
        for x in cat.objects:
            for y in cat.objects:
                conj = view.iota_conjugation(x, y)
                assert conj.is_well_defined()
                # invertible: the unique nonzero generator maps to a generator
                assert not conj.is_zero_map()

    def test_graded_sigma_sign(self):
        cat, swap = two_object_swap_category()
        from triobstruct.lincat import SuspendedGradedView

        view = SuspendedGradedView(cat, swap)
        f = view.mor("A", "B", 1, [1])
        sf = view.graded_sigma(f)
        # p = 2: sign (-1)^1 = -1 = 1 over F_2; shape bookkeeping checks
        assert (sf.src, sf.dst, sf.deg) == ("B", "A", 1)


class TestBimodules:
    def test_hom_bimodule_valid(self):
        for cat in (ring_category_z4(), ring_category_dual_numbers()):
            bm = hom_bimodule(cat, identity_automorphism(cat))
            assert bm.validate()

    def test_twist_by_zero_is_identity(self):
        cat = ring_category_z4()
        bm = hom_bimodule(cat, identity_automorphism(cat))
        tw = twist_bimodule(bm, 0)
        for key in bm.values:
            assert tw.value(*key).is_isomorphic_to(bm.value(*key))
            assert np.all(tw.left[key + ("R",)][0, 0] == bm.left[key + ("R",)][0, 0])

    def test_twist_minus_one_with_identity_sigma(self):
        # sigma = id: the degree -1 slice has the same values as hom itself
        cat = ring_category_z4()
        bm = hom_bimodule(cat, identity_automorphism(cat))
        tw = twist_bimodule(bm, -1)
        assert tw.value("R", "R").is_isomorphic_to(cat.hom("R", "R"))

    def test_twist_composition(self):
        cat, swap = two_object_swap_category()
        bm = hom_bimodule(cat, swap)
        t1 = twist_bimodule(twist_bimodule(bm, 1), 2)
        t2 = twist_bimodule(bm, 3)
        for key in bm.values:
            assert t1.value(*key).is_isomorphic_to(t2.value(*key))
            for k2 in [(key[0], key[1], o) for o in cat.objects]:
                a, b = t1.left[k2], t2.left[k2]
                assert a.shape == b.shape
                for j in range(a.shape[0]):
                    for i in range(a.shape[1]):
                        assert np.all(a[j, i] == b[j, i])

    def test_twisted_bimodule_validates(self):
        cat, swap = two_object_swap_category()
        bm = hom_bimodule(cat, swap)
        assert twist_bimodule(bm, 1).validate()
        assert twist_bimodule(bm, -1).validate()

    def test_twist_respects_monoid_structure(self):
        # composition against twisted slices matches tau^q-twisted composition
        cat = ring_category_z4()
        sig = identity_automorphism(cat)
        bm = hom_bimodule(cat, sig)
        tw = twist_bimodule(bm, -1)
        # with sigma = id the twisted product of x in M^p, y in M^q is tau^q(x) y = x y
        x = cat.mor("R", "R", [3])
        y = cat.mor("R", "R", [2])
        prod = cat.compose(x, y)
        via_tau = cat.compose(Mor("R", "R", bm.apply_tau("R", "R", x.vec, -1)), y)
        assert cat.hom("R", "R").eq(prod.vec, via_tau.vec)
