"""Representations of the additive group inside rank-one symmetric powers.

A :class:`RepSpec` describes a direct sum of symmetric powers
``Sym^k V`` of the standard two-dimensional representation, with one
coordinate per weight-basis vector.  Within a summand of exponent ``k``
the inner index ``i`` runs ``0..k`` and the coordinate carries torus
weight ``k - 2i``; the additive group sits inside the rank-one group as
the strictly lower-triangular one-parameter subgroup.

Two coordinate normalisations of the induced vector-field are supported:

* ``section5`` -- the triangular derivation sends ``w_{i+1}`` to
  ``(k - i) * w_i``;
* ``unit`` -- a diagonal rescaling of the same summand in which
  ``w_{i+1}`` maps to ``w_i`` on the nose.

The lowering operator, its raising partner (solved from the bracket
relations, not copied from a formula), and the diagonal weight operator
form a triple whose commutation relations are asserted on every
generator at construction time, together with the fact that the
exponential of the lowering operator reproduces the substitution action
of the lower-triangular subgroup.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Mapping, Sequence, Tuple, Union

from .derivations import Derivation, apply, exp_action
from .errors import ConstructionFailure, UnsupportedBlock, VariableTableMismatch
from .linalg import Row, det_bareiss, solve
from .poly import Poly

NORMALIZATIONS = ("section5", "unit")


@dataclass(frozen=True)
class RepSpec:
    """A direct sum of symmetric powers with named weight coordinates."""

    summands: Tuple[int, ...]
    normalization: str = "section5"
    coord_names: Tuple[str, ...] = ()

    def __post_init__(self):
        summands = tuple(int(k) for k in self.summands)
        if not summands or any(k < 0 for k in summands):
            raise ValueError(f"summand exponents must be non-negative, got {summands}")
        if self.normalization not in NORMALIZATIONS:
            raise ValueError(f"unknown normalization {self.normalization!r}")
        dim = sum(k + 1 for k in summands)
        names = tuple(self.coord_names) or tuple(f"w{i}" for i in range(dim))
        if len(names) != dim or len(set(names)) != dim:
            raise ValueError(f"need {dim} distinct coordinate names, got {names}")
        object.__setattr__(self, "summands", summands)
        object.__setattr__(self, "coord_names", names)

    @property
    def coords(self) -> Tuple[str, ...]:
        return self.coord_names

    @property
    def dim(self) -> int:
        return len(self.coord_names)

    def blocks(self) -> List[Tuple[int, Tuple[str, ...]]]:
        """``(exponent, coordinate names)`` per summand, in order."""
        out = []
        offset = 0
        for k in self.summands:
            out.append((k, self.coord_names[offset: offset + k + 1]))
            offset += k + 1
        return out

    @property
    def weights(self) -> Tuple[int, ...]:
        out: List[int] = []
        for k in self.summands:
            out.extend(k - 2 * i for i in range(k + 1))
        return tuple(out)

    @property
    def weight_of(self) -> Dict[str, int]:
        return dict(zip(self.coord_names, self.weights))


def _basis_scale(k: int, i: int, normalization: str) -> Fraction:
    """Scale of the ``i``-th basis vector relative to the plain monomial basis."""
    if normalization == "section5":
        return Fraction(1)
    return Fraction(math.factorial(k), math.factorial(k - i))


def spec_to_blocks(spec: RepSpec) -> Dict:
    """JSON-friendly description: ``{"sym": k}`` / ``{"vblock": n}`` blocks."""
    blocks: List[Dict[str, int]] = []
    run = 0
    for k in spec.summands + (-1,):
        if k == 1:
            run += 1
            continue
        if run == 1:
            blocks.append({"sym": 1})
        elif run > 1:
            blocks.append({"vblock": run})
        run = 0
        if k >= 0:
            blocks.append({"sym": k})
    data: Dict = {"blocks": blocks, "normalization": spec.normalization}
    default = tuple(f"w{i}" for i in range(spec.dim))
    if spec.coord_names != default:
        data["coordinates"] = list(spec.coord_names)
    return data


def spec_from_blocks(data: Mapping) -> RepSpec:
    """Inverse of :func:`spec_to_blocks`; accepts either block form."""
    summands: List[int] = []
    for block in data["blocks"]:
        if "sym" in block:
            summands.append(int(block["sym"]))
        elif "vblock" in block:
            count = int(block["vblock"])
            if count < 1:
                raise ValueError(f"vblock count must be positive, got {count}")
            summands.extend([1] * count)
        else:
            raise ValueError(f"block must name 'sym' or 'vblock': {block}")
    names = tuple(data.get("coordinates", ()))
    return RepSpec(
        tuple(summands),
        normalization=data.get("normalization", "section5"),
        coord_names=names,
    )


# ----------------------------------------------------------------------
# Laurent bookkeeping for substitutions with powers of 1/v


class LaurentV:
    """A polynomial divided by a tracked power of one designated variable.

    Keeps the main polynomial type free of negative exponents: the value
    is ``poly / denom**vexp`` and normalisation cancels common powers of
    the denominator variable out of the numerator.
    """

    __slots__ = ("poly", "vexp", "denom")

    def __init__(self, poly: Poly, vexp: int = 0, denom: str = "v"):
        if vexp < 0:
            raise ValueError("denominator exponent must be non-negative")
        if poly.is_zero:
            vexp = 0
        elif vexp > 0:
            if denom not in poly.vars:
                raise VariableTableMismatch(
                    f"denominator variable {denom!r} is not in table {poly.vars}"
                )
            idx = poly.vars.index(denom)
            shift = min(vexp, min(e[idx] for e in poly.terms))
            if shift:
                poly = Poly(
                    poly.vars,
                    {e[:idx] + (e[idx] - shift,) + e[idx + 1:]: c for e, c in poly.terms.items()},
                )
                vexp -= shift
        object.__setattr__(self, "poly", poly)
        object.__setattr__(self, "vexp", vexp)
        object.__setattr__(self, "denom", denom)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("LaurentV is immutable")

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero

    def _lift(self, other) -> "LaurentV":
        if isinstance(other, LaurentV):
            if other.poly.vars != self.poly.vars or other.denom != self.denom:
                raise VariableTableMismatch("Laurent values over different tables")
            return other
        if isinstance(other, Poly):
            return LaurentV(other, 0, self.denom)
        if isinstance(other, (int, Fraction)):
            return LaurentV(Poly.const(self.poly.vars, other), 0, self.denom)
        raise TypeError(f"cannot combine LaurentV with {type(other).__name__}")

    def _scaled_numerator(self, target_exp: int) -> Poly:
        extra = target_exp - self.vexp
        if extra == 0 or self.poly.is_zero:
            return self.poly
        idx = self.poly.vars.index(self.denom)
        return Poly(
            self.poly.vars,
            {e[:idx] + (e[idx] + extra,) + e[idx + 1:]: c for e, c in self.poly.terms.items()},
        )

    def __add__(self, other) -> "LaurentV":
        rhs = self._lift(other)
        vexp = max(self.vexp, rhs.vexp)
        return LaurentV(self._scaled_numerator(vexp) + rhs._scaled_numerator(vexp), vexp, self.denom)

    __radd__ = __add__

    def __neg__(self) -> "LaurentV":
        return LaurentV(-self.poly, self.vexp, self.denom)

    def __sub__(self, other) -> "LaurentV":
        return self + (-self._lift(other))

    def __mul__(self, other) -> "LaurentV":
        rhs = self._lift(other)
        return LaurentV(self.poly * rhs.poly, self.vexp + rhs.vexp, self.denom)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "LaurentV":
        if exponent < 0:
            raise ValueError("LaurentV powers take non-negative integers")
        return LaurentV(self.poly ** exponent, self.vexp * exponent, self.denom)

    def __eq__(self, other) -> bool:
        try:
            rhs = self._lift(other)
        except (TypeError, VariableTableMismatch):
            return NotImplemented
        return (self - rhs).is_zero

    def __hash__(self):
        return hash((self.poly, self.vexp, self.denom))

    def as_poly(self) -> Poly:
        """The value as a plain polynomial; fails on a true denominator."""
        if self.vexp != 0:
            raise ValueError(f"residual denominator {self.denom}^{self.vexp} does not cancel")
        return self.poly

    def __repr__(self) -> str:
        if self.vexp == 0:
            return f"LaurentV({self.poly})"
        return f"LaurentV(({self.poly}) / {self.denom}^{self.vexp})"


MatrixEntry = Union[LaurentV, Poly, int, Fraction]


def group_substitution(
    spec: RepSpec,
    matrix: Sequence[Sequence[MatrixEntry]],
    denom: str = "v",
) -> Dict[str, LaurentV]:
    """Coordinate substitution induced by a determinant-one 2x2 matrix.

    Matrix entries may be scalars, polynomials over a shared parameter
    table, or :class:`LaurentV` values with powers of ``denom`` below.
    The images live over the parameter table followed by the spec
    coordinates and satisfy the symmetric-power functoriality
    ``subst(m1*m2) = subst(m2) o subst(m1)``.
    """
    if len(matrix) != 2 or any(len(row) != 2 for row in matrix):
        raise ValueError("expected a 2x2 matrix")
    entry_table: Tuple[str, ...] = ()
    for row in matrix:
        for entry in row:
            if isinstance(entry, LaurentV):
                candidate = entry.poly.vars
            elif isinstance(entry, Poly):
                candidate = entry.vars
            else:
                continue
            if entry_table and candidate != entry_table:
                raise VariableTableMismatch("matrix entries use more than one parameter table")
            entry_table = candidate
    collision = set(entry_table) & set(spec.coord_names)
    if collision:
        raise ValueError(f"parameter names collide with coordinates: {sorted(collision)}")
    full = entry_table + spec.coord_names

    def lift(entry: MatrixEntry) -> LaurentV:
        if isinstance(entry, LaurentV):
            return LaurentV(entry.poly.extend_table(full), entry.vexp, denom)
        if isinstance(entry, Poly):
            return LaurentV(entry.extend_table(full), 0, denom)
        return LaurentV(Poly.const(full, entry), 0, denom)

    a, b = lift(matrix[0][0]), lift(matrix[0][1])
    c, d = lift(matrix[1][0]), lift(matrix[1][1])
    one = LaurentV(Poly.const(full, 1), 0, denom)
    if a * d - b * c != one:
        raise ValueError("matrix must have determinant one")

    images: Dict[str, LaurentV] = {}
    for block_index, (k, names) in enumerate(spec.blocks()):
        scales = [_basis_scale(k, i, spec.normalization) for i in range(k + 1)]
        coord_values = [lift(Poly.variable(full, name)) for name in names]
        apows = [one] + [a ** p for p in range(1, k + 1)]
        bpows = [one] + [b ** p for p in range(1, k + 1)]
        cpows = [one] + [c ** p for p in range(1, k + 1)]
        dpows = [one] + [d ** p for p in range(1, k + 1)]
        for j in range(k + 1):
            image = LaurentV(Poly.zero(full), 0, denom)
            for i in range(k + 1):
                entry = LaurentV(Poly.zero(full), 0, denom)
                for q in range(max(0, j - (k - i)), min(i, j) + 1):
                    coeff = math.comb(k - i, j - q) * math.comb(i, q)
                    entry = entry + coeff * (
                        apows[k - i - j + q] * cpows[j - q] * bpows[i - q] * dpows[q]
                    )
                if entry.is_zero:
                    continue
                image = image + (scales[i] / scales[j]) * entry * coord_values[i]
            images[names[j]] = image
    return images


# ----------------------------------------------------------------------
# the operator triple


@dataclass(frozen=True)
class Sl2Triple:
    """Lowering, raising and diagonal operators with verified brackets."""

    lower: Derivation
    raising: Derivation
    diag: Derivation


def _linear_coefficients(p: Poly) -> Dict[int, Fraction]:
    """Coefficients of a linear homogeneous polynomial by variable index."""
    out: Dict[int, Fraction] = {}
    for exponent, coeff in p.terms.items():
        if sum(exponent) != 1:
            raise ValueError(f"expected a linear polynomial, got {p}")
        out[exponent.index(1)] = coeff
    return out


def _lower_images(spec: RepSpec) -> Dict[str, Poly]:
    coords = spec.coord_names
    images: Dict[str, Poly] = {}
    for k, names in spec.blocks():
        images[names[0]] = Poly.zero(coords)
        for i in range(k):
            factor = (k - i) if spec.normalization == "section5" else 1
            images[names[i + 1]] = Poly.variable(coords, names[i]) * factor
    return images


def _solve_raising(spec: RepSpec, lower: Dict[str, Poly]) -> Dict[str, Poly]:
    """Solve the raising operator from the bracket with the lowering one.

    Unknowns are the matrix entries of a weight-shift-(-2) linear
    operator; the commutation relation against the lowering operator must
    reproduce the diagonal weight operator.  The solution is required to
    be unique.
    """
    coords = spec.coord_names
    weights = spec.weights
    n = len(coords)
    lower_coeffs = [_linear_coefficients(lower[name]) for name in coords]
    columns: List[Tuple[int, int]] = [
        (g, j) for g in range(n) for j in range(n) if weights[j] == weights[g] - 2
    ]
    col_index = {pair: idx for idx, pair in enumerate(columns)}
    rows: List[Row] = []
    rhs: List[Fraction] = []
    for g in range(n):
        for m in range(n):
            row: Row = {}
            for j in range(n):
                pair = (g, j)
                if pair not in col_index:
                    continue
                coeff = lower_coeffs[j].get(m)
                if coeff:
                    row[col_index[pair]] = row.get(col_index[pair], Fraction(0)) + coeff
            for i, coeff in lower_coeffs[g].items():
                pair = (i, m)
                if pair in col_index:
                    row[col_index[pair]] = row.get(col_index[pair], Fraction(0)) - coeff
            row = {c: v for c, v in row.items() if v}
            value = Fraction(weights[g]) if m == g else Fraction(0)
            if row or value:
                rows.append(row)
                rhs.append(value)
    outcome = solve(rows, rhs, len(columns))
    if outcome is None:
        raise ConstructionFailure("no raising operator satisfies the bracket relations")
    solution, free = outcome
    if free:
        raise ConstructionFailure("raising operator is not unique; bracket system is degenerate")
    images: Dict[str, Poly] = {name: Poly.zero(coords) for name in coords}
    for (g, j), idx in col_index.items():
        if solution[idx]:
            images[coords[g]] = images[coords[g]] + solution[idx] * Poly.variable(coords, coords[j])
    return images


def _check_brackets(coords: Tuple[str, ...], low: Derivation, high: Derivation, diag: Derivation) -> None:
    for name in coords:
        x = Poly.variable(coords, name)
        if apply(high, diag(x)) - apply(diag, high(x)) != 2 * high(x):
            raise ConstructionFailure(f"diagonal/raising bracket fails on {name}")
        if apply(low, diag(x)) - apply(diag, low(x)) != -2 * low(x):
            raise ConstructionFailure(f"diagonal/lowering bracket fails on {name}")
        if apply(low, high(x)) - apply(high, low(x)) != diag(x):
            raise ConstructionFailure(f"raising/lowering bracket fails on {name}")


def _check_one_parameter_flow(spec: RepSpec, lower: Derivation) -> None:
    """The substitution by the lower-triangular flow is exp of the derivation."""
    t = Poly.variable(("t",), "t")
    images = group_substitution(spec, [[1, Poly.zero(("t",))], [t, 1]])
    target_table = ("t",) + spec.coord_names
    for name in spec.coord_names:
        flowed = images[name].as_poly()
        series = exp_action(lower, Poly.variable(spec.coord_names, name), "t")
        if flowed != series.extend_table(target_table):
            raise ConstructionFailure(
                f"one-parameter flow disagrees with the exponential on {name}"
            )


@lru_cache(maxsize=None)
def sl2_triple(spec: RepSpec) -> Sl2Triple:
    """The verified operator triple attached to a representation."""
    coords = spec.coord_names
    weight_of = spec.weight_of
    lower_images = _lower_images(spec)
    raising_images = _solve_raising(spec, lower_images)
    diag_images = {
        name: Poly.variable(coords, name) * weight_of[name] for name in coords
    }
    raising = Derivation(coords, raising_images, weight_of=weight_of)
    diag = Derivation(coords, diag_images, weight_of=weight_of)
    lower = Derivation(coords, lower_images, weight_of=weight_of, sl2_raise=raising)
    _check_brackets(coords, lower, raising, diag)
    _check_one_parameter_flow(spec, lower)
    return Sl2Triple(lower=lower, raising=raising, diag=diag)


def build_derivation(spec: RepSpec) -> Derivation:
    """The locally nilpotent derivation of the additive-group action."""
    return sl2_triple(spec).lower


def nonstable_coordinates(spec: RepSpec) -> Tuple[str, ...]:
    """Coordinates of strictly positive weight.

    Their common zero locus is the complement of the open set of points
    whose orbit closure meets no smaller stratum under the scaling
    subgroup; restriction to it drives the stability certificate.
    """
    return tuple(name for name, w in zip(spec.coord_names, spec.weights) if w > 0)


# ----------------------------------------------------------------------
# catalogued invariants


@dataclass(frozen=True)
class CatalogEntry:
    """A closed-form invariant with its stability marker."""

    label: str
    poly: Poly
    stable: bool


def _binary_form_coefficients(spec: RepSpec, k: int, names: Tuple[str, ...]) -> List[Poly]:
    """Coefficients ``c_j`` of the generic form ``sum c_j x^(k-j) y^j``."""
    coords = spec.coord_names
    return [
        Poly.variable(coords, names[j]) * _basis_scale(k, j, spec.normalization)
        for j in range(k + 1)
    ]


def _discriminant(spec: RepSpec, k: int, names: Tuple[str, ...]) -> Poly:
    """Discriminant of an odd binary form via the resultant of its partials."""
    c = _binary_form_coefficients(spec, k, names)
    fx = [(k - j) * c[j] for j in range(k)]
    fy = [(j + 1) * c[j + 1] for j in range(k)]
    m = k - 1
    size = 2 * m
    zero = Poly.zero(spec.coord_names)
    sylvester: List[List[Poly]] = []
    for shift in range(m):
        row = [zero] * size
        for idx, entry in enumerate(fx):
            row[shift + idx] = entry
        sylvester.append(row)
    for shift in range(m):
        row = [zero] * size
        for idx, entry in enumerate(fy):
            row[shift + idx] = entry
        sylvester.append(row)
    resultant = det_bareiss(sylvester)
    if resultant.is_zero:
        raise ConstructionFailure("vanishing discriminant resultant")
    return resultant.normalized()


@lru_cache(maxsize=None)
def catalog_invariants(spec: RepSpec) -> Tuple[CatalogEntry, ...]:
    """Closed-form invariants for the supported block types.

    Pairs of one-dimensional summands contribute their two-by-two
    minors; odd symmetric powers up to the fifth contribute their
    discriminants.  Every returned polynomial is checked to be killed by
    all three operators of the triple.  A spec providing none of these
    raises :class:`UnsupportedBlock`.
    """
    triple = sl2_triple(spec)
    coords = spec.coord_names
    entries: List[CatalogEntry] = []
    vblocks = [(idx, names) for idx, (k, names) in enumerate(spec.blocks()) if k == 1]
    for pos_a in range(len(vblocks)):
        for pos_b in range(pos_a + 1, len(vblocks)):
            idx_a, names_a = vblocks[pos_a]
            idx_b, names_b = vblocks[pos_b]
            minor = (
                Poly.variable(coords, names_a[0]) * Poly.variable(coords, names_b[1])
                - Poly.variable(coords, names_a[1]) * Poly.variable(coords, names_b[0])
            )
            entries.append(CatalogEntry(f"minor[{idx_a},{idx_b}]", minor, True))
    for idx, (k, names) in enumerate(spec.blocks()):
        if k in (3, 5):
            entries.append(CatalogEntry(f"disc[{idx}]", _discriminant(spec, k, names), True))
    if not entries:
        raise UnsupportedBlock(
            f"no catalogued invariants for summands {spec.summands}; "
            "supported: paired one-dimensional blocks, odd symmetric powers up to five"
        )
    for entry in entries:
        for op in (triple.lower, triple.raising, triple.diag):
            if not apply(op, entry.poly).is_zero:
                raise ConstructionFailure(f"catalog entry {entry.label} is not invariant")
    return tuple(entries)
