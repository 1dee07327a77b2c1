from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gaquot.errors import NonInvariantInput, VariableTableMismatch
from gaquot.expr import parse
from gaquot.poly import Poly
from gaquot.reps import RepSpec, build_derivation, catalog_invariants
from gaquot.transfer import (
    BoundaryClass,
    extend,
    extended_spec,
    verify_invariance,
)

PAIR = RepSpec((1, 1))
TRIPLE = RepSpec((1, 1, 1))


def _restrict(extension):
    """Specialize the two transfer coordinates back to the base point."""
    return extension.substitute({"u": 0, "v": 1})


class TestExtendedSpec:
    def test_prepends_a_plane(self):
        wide = extended_spec(PAIR)
        assert wide.summands == (1, 1, 1)
        assert wide.coords == ("u", "v", "w0", "w1", "w2", "w3")
        assert wide.normalization == PAIR.normalization

    def test_preserves_normalization(self):
        df = RepSpec((1, 1, 3), "unit", tuple(f"w{i}" for i in range(1, 9)))
        assert extended_spec(df).normalization == "unit"


class TestExtendOracles:
    def test_single_plane_invariant(self):
        spec = RepSpec((1,))
        result = extend(spec, parse("w0", spec.coords))
        assert str(result.extension) == "-u*w1 + v*w0"
        assert result.f00.is_zero
        assert result.boundary is BoundaryClass.CONTAINS
        assert str(result.boundary_part) == "w0"

    def test_constant(self):
        result = extend(PAIR, Poly.const(PAIR.coords, 1))
        assert str(result.extension) == "1"
        assert result.boundary is BoundaryClass.MISSES

    def test_weight_zero_invariant_is_fixed(self):
        minor = parse("w0*w3 - w1*w2", PAIR.coords)
        result = extend(PAIR, minor)
        assert str(result.extension) == str(minor)
        assert result.f00 == minor
        assert result.boundary is BoundaryClass.INTERSECTS
        assert result.boundary_part.is_zero

    def test_winkelmann_hypersurface(self):
        f = parse("1 + w2*w5 - w3*w4 - w0", TRIPLE.coords)
        result = extend(TRIPLE, f)
        assert str(result.extension) == "u*w1 - v*w0 + w2*w5 - w3*w4 + 1"
        assert str(result.f00) == "w2*w5 - w3*w4 + 1"
        assert str(result.boundary_part) == "-w0"
        assert result.boundary is BoundaryClass.INTERSECTS

    def test_decomposition_is_exact(self):
        f = parse("1 + w2*w5 - w3*w4 - w0", TRIPLE.coords)
        result = extend(TRIPLE, f)
        assert result.f00 + result.boundary_part == f


class TestExtendGuards:
    def test_non_invariant_rejected(self):
        with pytest.raises(NonInvariantInput):
            extend(PAIR, parse("w1", PAIR.coords))

    def test_wrong_table_rejected(self):
        with pytest.raises(VariableTableMismatch):
            extend(PAIR, parse("x", ("x",)))


catalog = catalog_invariants(TRIPLE)
small = st.integers(min_value=-3, max_value=3)
picks = st.lists(
    st.tuples(st.integers(min_value=0, max_value=len(catalog) - 1), small),
    min_size=1,
    max_size=3,
)


def _combination(pairs):
    f = Poly.zero(TRIPLE.coords)
    for index, coeff in pairs:
        f = f + coeff * catalog[index].poly
    return f


class TestExtendProperties:
    @given(picks, small)
    def test_restriction_recovers_input(self, pairs, shift):
        f = _combination(pairs) + shift
        result = extend(TRIPLE, f)
        restricted = _restrict(result.extension)
        assert parse(str(f), result.extension.vars) == restricted

    @given(picks, picks)
    def test_multiplicative(self, a, b):
        fa, fb = _combination(a), _combination(b)
        lhs = extend(TRIPLE, fa * fb).extension
        rhs = extend(TRIPLE, fa).extension * extend(TRIPLE, fb).extension
        assert lhs == rhs

    @given(picks, picks)
    def test_additive(self, a, b):
        fa, fb = _combination(a), _combination(b)
        lhs = extend(TRIPLE, fa + fb).extension
        rhs = extend(TRIPLE, fa).extension + extend(TRIPLE, fb).extension
        assert lhs == rhs

    @given(picks, small)
    def test_extension_is_invariant_for_extended_action(self, pairs, shift):
        f = _combination(pairs) + shift
        assert verify_invariance(TRIPLE, extend(TRIPLE, f).extension)

    @given(picks)
    def test_boundary_class_matches_f00(self, pairs):
        f = _combination(pairs) + 1
        result = extend(TRIPLE, f)
        if result.f00.is_zero:
            assert result.boundary is BoundaryClass.CONTAINS
        elif result.f00.is_constant():
            assert result.boundary is BoundaryClass.MISSES
        else:
            assert result.boundary is BoundaryClass.INTERSECTS


class TestVerifyInvariance:
    def test_rejects_non_invariant_extension(self):
        wide = extended_spec(PAIR)
        assert not verify_invariance(PAIR, parse("w1", wide.coords))

    def test_accepts_extended_invariant(self):
        f = parse("w0*w3 - w1*w2", PAIR.coords)
        assert verify_invariance(PAIR, extend(PAIR, f).extension)
