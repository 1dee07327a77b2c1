from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gaquot.derivations import apply, exp_action
from gaquot.errors import ConstructionFailure, UnsupportedBlock
from gaquot.expr import parse
from gaquot.poly import Poly
from gaquot.reps import (
    RepSpec,
    build_derivation,
    catalog_invariants,
    group_substitution,
    nonstable_coordinates,
    sl2_triple,
    spec_from_blocks,
    spec_to_blocks,
)

SMALL_SPECS = [
    RepSpec((1,)),
    RepSpec((2,)),
    RepSpec((3,)),
    RepSpec((1, 1)),
    RepSpec((1, 1, 1)),
    RepSpec((1, 3)),
    RepSpec((2,), "unit"),
    RepSpec((3,), "unit"),
    RepSpec((1, 1, 3), "unit", tuple(f"w{i}" for i in range(1, 9))),
]


class TestRepSpec:
    def test_dimension_and_coords(self):
        spec = RepSpec((1, 2))
        assert spec.dim == 5
        assert spec.coords == ("w0", "w1", "w2", "w3", "w4")

    def test_custom_coordinate_names(self):
        spec = RepSpec((1,), "unit", ("a", "b"))
        assert spec.coords == ("a", "b")

    def test_weights(self):
        assert RepSpec((1, 1)).weights == (1, -1, 1, -1)
        assert RepSpec((3,)).weights == (3, 1, -1, -3)
        df = RepSpec((1, 1, 3), "unit", tuple(f"w{i}" for i in range(1, 9)))
        assert df.weights == (1, -1, 1, -1, 3, 1, -1, -3)
        assert df.weight_of["w5"] == 3

    def test_blocks(self):
        spec = RepSpec((1, 2))
        assert spec.blocks() == [(1, ("w0", "w1")), (2, ("w2", "w3", "w4"))]

    def test_validation(self):
        with pytest.raises(ValueError):
            RepSpec(())
        with pytest.raises(ValueError):
            RepSpec((1,), "fancy")
        with pytest.raises(ValueError):
            RepSpec((1,), coord_names=("a",))
        with pytest.raises(ValueError):
            RepSpec((1,), coord_names=("a", "a"))

    @pytest.mark.parametrize("spec", SMALL_SPECS)
    def test_block_serialization_round_trip(self, spec):
        assert spec_from_blocks(spec_to_blocks(spec)) == spec

    def test_block_serialization_shape(self):
        blocks = spec_to_blocks(RepSpec((1, 1, 3), "unit", tuple(f"w{i}" for i in range(1, 9))))
        assert blocks["normalization"] == "unit"
        assert blocks["blocks"] == [{"vblock": 2}, {"sym": 3}]
        assert blocks["coordinates"] == [f"w{i}" for i in range(1, 9)]

    def test_weights_sum_to_zero(self):
        for spec in SMALL_SPECS:
            assert sum(spec.weights) == 0


class TestDerivationConstruction:
    def test_section5_images(self):
        d = build_derivation(RepSpec((3,)))
        w = {name: Poly.variable(d.vars, name) for name in d.vars}
        assert d(w["w0"]).is_zero
        assert d(w["w1"]) == 3 * w["w0"]
        assert d(w["w2"]) == 2 * w["w1"]
        assert d(w["w3"]) == w["w2"]

    def test_unit_images(self):
        d = build_derivation(RepSpec((3,), "unit"))
        w = {name: Poly.variable(d.vars, name) for name in d.vars}
        assert d(w["w1"]) == w["w0"]
        assert d(w["w2"]) == w["w1"]
        assert d(w["w3"]) == w["w2"]

    @pytest.mark.parametrize("spec", SMALL_SPECS)
    def test_images_raise_weight_by_two(self, spec):
        # lowering the symmetric-power index raises the diagonal weight
        d = build_derivation(spec)
        for name in spec.coords:
            image = d(Poly.variable(spec.coords, name))
            if image.is_zero:
                continue
            (variable,) = image.support()
            assert spec.weight_of[variable] == spec.weight_of[name] + 2

    @pytest.mark.parametrize("spec", SMALL_SPECS)
    def test_nilpotency_degree(self, spec):
        d = build_derivation(spec)
        for k, names in spec.blocks():
            top = Poly.variable(spec.coords, names[-1])
            power = top
            for _ in range(k + 1):
                power = d(power)
            assert power.is_zero


class TestOperatorTriple:
    @pytest.mark.parametrize("spec", SMALL_SPECS)
    def test_diagonal_scales_by_weight(self, spec):
        triple = sl2_triple(spec)
        for name, weight in zip(spec.coords, spec.weights):
            x = Poly.variable(spec.coords, name)
            assert apply(triple.diag, x) == weight * x

    def test_raising_closed_form_section5(self):
        for k in (1, 2, 3, 4):
            spec = RepSpec((k,))
            triple = sl2_triple(spec)
            for i in range(k + 1):
                x = Poly.variable(spec.coords, f"w{i}")
                image = apply(triple.raising, x)
                if i == k:
                    assert image.is_zero
                else:
                    expected = (i + 1) * Poly.variable(spec.coords, f"w{i + 1}")
                    assert image == expected

    def test_raising_closed_form_unit(self):
        for k in (1, 2, 3, 4):
            spec = RepSpec((k,), "unit")
            triple = sl2_triple(spec)
            for i in range(k + 1):
                x = Poly.variable(spec.coords, f"w{i}")
                image = apply(triple.raising, x)
                if i == k:
                    assert image.is_zero
                else:
                    expected = (i + 1) * (k - i) * Poly.variable(spec.coords, f"w{i + 1}")
                    assert image == expected

    @pytest.mark.parametrize("spec", SMALL_SPECS)
    def test_bracket_relations_on_coordinates(self, spec):
        # the acting derivation F fills the weight-raising slot of the
        # triple: [F, E] = H, [H, F] = 2F, [H, E] = -2E
        triple = sl2_triple(spec)
        E, F, H = triple.raising, triple.lower, triple.diag
        for name in spec.coords:
            x = Poly.variable(spec.coords, name)
            assert apply(F, apply(E, x)) - apply(E, apply(F, x)) == apply(H, x)
            assert apply(H, apply(F, x)) - apply(F, apply(H, x)) == 2 * apply(F, x)
            assert apply(H, apply(E, x)) - apply(E, apply(H, x)) == -2 * apply(E, x)

    def test_lower_equals_build_derivation(self):
        spec = RepSpec((1, 1, 1))
        assert sl2_triple(spec).lower == build_derivation(spec)


SL2_SAMPLES = [
    ((1, 0), (0, 1)),
    ((1, 2), (0, 1)),
    ((1, 0), (3, 1)),
    ((2, 1), (1, 1)),
    ((0, -1), (1, 0)),
    ((3, 2), (4, 3)),
]


def _mat_mul(a, b):
    return tuple(
        tuple(a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)) for i in range(2)
    )


class TestGroupSubstitution:
    def test_identity(self):
        spec = RepSpec((1, 1))
        images = group_substitution(spec, ((1, 0), (0, 1)))
        for name, value in images.items():
            assert value.as_poly() == Poly.variable(spec.coords, name)

    def test_determinant_checked(self):
        spec = RepSpec((1,))
        with pytest.raises(ValueError):
            group_substitution(spec, ((2, 0), (0, 1)))

    @pytest.mark.parametrize("a", SL2_SAMPLES)
    @pytest.mark.parametrize("b", SL2_SAMPLES)
    def test_functoriality(self, a, b):
        spec = RepSpec((2,))
        sa = {k: v.as_poly() for k, v in group_substitution(spec, a).items()}
        sb = {k: v.as_poly() for k, v in group_substitution(spec, b).items()}
        sab = {k: v.as_poly() for k, v in group_substitution(spec, _mat_mul(a, b)).items()}
        for name in spec.coords:
            assert sa[name].substitute(sb) == sab[name]

    @pytest.mark.parametrize("spec", [RepSpec((2,)), RepSpec((3,), "unit"), RepSpec((1, 1))])
    def test_lower_triangular_matches_flow(self, spec):
        t = Poly.variable(("t",), "t")
        images = group_substitution(spec, ((Poly.const(("t",), 1), Poly.const(("t",), 0)), (t, Poly.const(("t",), 1))))
        d = build_derivation(spec)
        for name in spec.coords:
            flowed = exp_action(d, Poly.variable(spec.coords, name))
            wide = flowed.vars
            assert parse(str(images[name].as_poly()), wide) == flowed


class TestCatalog:
    def test_plane_pair_minor(self):
        entries = catalog_invariants(RepSpec((1, 1)))
        assert [e.label for e in entries] == ["minor[0,1]"]
        assert str(entries[0].poly) == "w0*w3 - w1*w2"
        assert entries[0].stable

    def test_three_plane_minors(self):
        # block indices are zero-based, pairs in lexicographic order
        labels = [e.label for e in catalog_invariants(RepSpec((1, 1, 1)))]
        assert labels == ["minor[0,1]", "minor[0,2]", "minor[1,2]"]

    def test_cubic_discriminant_is_classical(self):
        (entry,) = catalog_invariants(RepSpec((3,)))
        assert entry.label == "disc[0]"
        classical = parse(
            "18*w0*w1*w2*w3 - 4*w1^3*w3 + w1^2*w2^2 - 4*w0*w2^3 - 27*w0^2*w3^2",
            ("w0", "w1", "w2", "w3"),
        )
        assert entry.poly == -classical

    def test_quintic_discriminant_shape(self):
        (entry,) = catalog_invariants(RepSpec((5,)))
        assert entry.poly.total_degree() == 8
        parts = entry.poly.homogeneous_components()
        assert list(parts) == [8]

    @pytest.mark.parametrize("spec", [RepSpec((1, 1)), RepSpec((3,)), RepSpec((1, 3))])
    def test_entries_killed_by_whole_triple(self, spec):
        triple = sl2_triple(spec)
        for entry in catalog_invariants(spec):
            for op in (triple.lower, triple.raising, triple.diag):
                assert apply(op, entry.poly).is_zero

    def test_uncovered_representation_rejected(self):
        with pytest.raises(UnsupportedBlock):
            catalog_invariants(RepSpec((2,)))


class TestNonstableCoordinates:
    def test_positive_weight_names(self):
        assert nonstable_coordinates(RepSpec((1, 1))) == ("w0", "w2")
        df = RepSpec((1, 1, 3), "unit", tuple(f"w{i}" for i in range(1, 9)))
        assert nonstable_coordinates(df) == ("w1", "w3", "w5", "w6")
