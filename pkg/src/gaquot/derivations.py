"""Derivations of a polynomial ring and exact graded solvers.

A :class:`Derivation` is determined by its images on the generators and
extends by the Leibniz rule.  The solvers in this module decide, per
homogeneous degree, whether a polynomial lies in the image of a
degree-preserving derivation, compute kernel generators, restrict a
derivation to a graph subvariety, and search for slice elements.  Every
decision is an exact rational linear-algebra computation.

When a derivation carries an attached weight grading and a raising
partner (set up by the representation layer), membership tests for
polynomials the derivation kills use the operator identity
``D(E(q)) = weight(q) * q``: components of nonzero weight get an
explicit preimage ``E(q)/weight`` and a nonzero weight-zero component
is a proof of non-membership.  The generic per-degree linear solver
handles everything else and doubles as an independent oracle in tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import (
    GraphInconsistency,
    InternalInconsistency,
    NonInvariantInput,
    NonNilpotentIteration,
    VariableTableMismatch,
)
from .linalg import Row, nullspace, reduce_against, rref, solve
from .poly import Poly, exponents_of_degree, exponents_up_to_degree, grlex_key

_MAX_EXP_STEPS = 512


class Derivation:
    """A derivation of ``k[vars]`` given by generator images."""

    __slots__ = ("vars", "images", "graded_linear", "weight_of", "sl2_raise", "_img_list")

    def __init__(
        self,
        variables: Sequence[str],
        images: Mapping[str, Poly],
        weight_of: Optional[Mapping[str, int]] = None,
        sl2_raise: Optional["Derivation"] = None,
    ):
        vt = tuple(variables)
        table: Dict[str, Poly] = {}
        for name in vt:
            img = images.get(name)
            if img is None:
                img = Poly.zero(vt)
            if img.vars != vt:
                raise VariableTableMismatch(
                    f"image of {name!r} lives on table {img.vars}, expected {vt}"
                )
            table[name] = img
        unknown = set(images) - set(vt)
        if unknown:
            raise ValueError(f"images given for unknown variables {sorted(unknown)}")
        graded = all(
            img.is_zero or all(sum(e) == 1 for e in img.terms) for img in table.values()
        )
        object.__setattr__(self, "vars", vt)
        object.__setattr__(self, "images", table)
        object.__setattr__(self, "graded_linear", graded)
        object.__setattr__(self, "weight_of", dict(weight_of) if weight_of else None)
        object.__setattr__(self, "sl2_raise", sl2_raise)
        object.__setattr__(self, "_img_list", [table[name] for name in vt])

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Derivation is immutable")

    def __call__(self, p: Poly) -> Poly:
        return apply(self, p)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.vars == other.vars and self.images == other.images

    def __hash__(self):
        return hash((self.vars, tuple(sorted((k, v) for k, v in self.images.items()))))

    def __repr__(self) -> str:
        imgs = ", ".join(f"{v} -> {self.images[v]}" for v in self.vars)
        return f"Derivation({imgs})"


def apply(d: Derivation, p: Poly) -> Poly:
    """Apply the derivation via the Leibniz rule."""
    if p.vars != d.vars:
        raise VariableTableMismatch(f"polynomial table {p.vars} does not match {d.vars}")
    acc: Dict[Tuple[int, ...], Fraction] = {}
    for exponent, coeff in p.terms.items():
        for i, e in enumerate(exponent):
            if not e:
                continue
            image = d._img_list[i]
            if image.is_zero:
                continue
            factor = coeff * e
            base = exponent[:i] + (e - 1,) + exponent[i + 1:]
            for ie, ic in image.terms.items():
                key = tuple(a + b for a, b in zip(base, ie))
                prev = acc.get(key)
                val = factor * ic
                acc[key] = val if prev is None else prev + val
                if not acc[key]:
                    del acc[key]
    return Poly(d.vars, acc)


def exp_action(d: Derivation, p: Poly, tname: str = "t", max_steps: int = _MAX_EXP_STEPS) -> Poly:
    """``exp(t*D)`` applied to ``p``: the sum of ``t^m D^m(p)/m!``.

    The result lives over the table extended by the fresh parameter
    ``tname``.  Locally nilpotent input terminates; anything else hits
    the iteration bound and raises.
    """
    if tname in d.vars:
        raise ValueError(f"parameter name {tname!r} collides with a ring variable")
    extended = d.vars + (tname,)
    acc: Dict[Tuple[int, ...], Fraction] = {}
    q = p
    m = 0
    factorial = 1
    while not q.is_zero:
        if m > max_steps:
            raise NonNilpotentIteration(
                f"exp iteration exceeded {max_steps} steps; derivation is not locally nilpotent on input"
            )
        for exponent, coeff in q.terms.items():
            acc[exponent + (m,)] = coeff / factorial
        q = apply(d, q)
        m += 1
        factorial *= m
    return Poly(extended, acc)


# ----------------------------------------------------------------------
# graded membership


def _weight_of_exponent(exponent: Tuple[int, ...], weights: Sequence[int]) -> int:
    return sum(e * w for e, w in zip(exponent, weights))


def weight_components(p: Poly, weight_of: Mapping[str, int]) -> Dict[int, Poly]:
    """Split by total monomial weight under the given per-variable weights."""
    weights = [weight_of[name] for name in p.vars]
    buckets: Dict[int, Dict[Tuple[int, ...], Fraction]] = {}
    for exponent, coeff in p.terms.items():
        buckets.setdefault(_weight_of_exponent(exponent, weights), {})[exponent] = coeff
    return {w: Poly(p.vars, t) for w, t in sorted(buckets.items())}


def _ladder_membership(d: Derivation, p: Poly) -> Optional[Poly]:
    """Membership decision for ``p`` killed by ``d`` via the sl2 ladder."""
    raising = d.sl2_raise
    assert raising is not None and d.weight_of is not None
    preimage = Poly.zero(d.vars)
    for weight, component in weight_components(p, d.weight_of).items():
        if weight == 0:
            return None
        if weight < 0:
            raise InternalInconsistency(
                "negative-weight component inside the kernel; sl2 metadata is broken"
            )
        preimage = preimage + apply(raising, component) * Fraction(1, weight)
    if apply(d, preimage) != p:
        raise InternalInconsistency("ladder preimage failed verification")
    return preimage


def _solve_stratum(d: Derivation, target: Poly, degree: int, weight: Optional[int]) -> Optional[Poly]:
    """Solve ``D(x) = target`` inside one homogeneous (degree, weight) piece."""
    n = len(d.vars)
    if weight is None:
        columns = list(exponents_of_degree(n, degree))
        row_monos = columns
    else:
        weights = [d.weight_of[name] for name in d.vars]  # type: ignore[index]
        all_monos = list(exponents_of_degree(n, degree))
        columns = [e for e in all_monos if _weight_of_exponent(e, weights) == weight - 2]
        row_monos = [e for e in all_monos if _weight_of_exponent(e, weights) == weight]
    row_index = {e: i for i, e in enumerate(row_monos)}
    rows: List[Row] = [dict() for _ in row_monos]
    for j, exponent in enumerate(columns):
        image = apply(d, Poly.monomial(d.vars, exponent))
        for ie, ic in image.terms.items():
            rows[row_index[ie]][j] = ic
    rhs = [target.terms.get(e, Fraction(0)) for e in row_monos]
    outcome = solve(rows, rhs, len(columns))
    if outcome is None:
        return None
    solution, _ = outcome
    return Poly(d.vars, {e: c for e, c in zip(columns, solution) if c})


def graded_image_membership(d: Derivation, p: Poly) -> Optional[Poly]:
    """Exact preimage of ``p`` under a degree-preserving derivation, or ``None``.

    The decision is complete: each homogeneous piece is a
    finite-dimensional linear system over the rationals.  ``None`` means
    ``p`` is certainly not in the image.
    """
    if not d.graded_linear:
        raise ValueError("image membership requires a degree-preserving derivation")
    if p.vars != d.vars:
        raise VariableTableMismatch(f"polynomial table {p.vars} does not match {d.vars}")
    if p.is_zero:
        return Poly.zero(d.vars)
    if d.sl2_raise is not None and d.weight_of is not None and apply(d, p).is_zero:
        return _ladder_membership(d, p)
    preimage = Poly.zero(d.vars)
    for degree, piece in p.homogeneous_components().items():
        if degree == 0:
            return None
        if d.weight_of is not None:
            for weight, component in weight_components(piece, d.weight_of).items():
                part = _solve_stratum(d, component, degree, weight)
                if part is None:
                    return None
                preimage = preimage + part
        else:
            part = _solve_stratum(d, piece, degree, None)
            if part is None:
                return None
            preimage = preimage + part
    if apply(d, preimage) != p:  # pragma: no cover - solver post-condition
        raise InternalInconsistency("linear solve produced a wrong preimage")
    return preimage


@dataclass(frozen=True)
class PowerInImage:
    """Outcome of the bounded search for a power inside the image."""

    power: Optional[int]
    preimage: Optional[Poly]
    kmax: int

    @property
    def found(self) -> bool:
        return self.power is not None


def power_in_image(d: Derivation, h: Poly, kmax: int = 3) -> PowerInImage:
    """Smallest ``k <= kmax`` with ``h^k`` in the image of ``d``.

    Requires ``d`` to kill ``h`` (so every power is again killed) and to
    be degree-preserving.
    """
    if not apply(d, h).is_zero:
        raise NonInvariantInput("power_in_image expects a polynomial killed by the derivation")
    power = Poly.const(d.vars, 1)
    for k in range(1, kmax + 1):
        power = power * h
        preimage = graded_image_membership(d, power)
        if preimage is not None:
            return PowerInImage(k, preimage, kmax)
    return PowerInImage(None, None, kmax)


# ----------------------------------------------------------------------
# kernel generators


def _vectorize(p: Poly, index: Mapping[Tuple[int, ...], int]) -> Row:
    return {index[e]: c for e, c in p.terms.items()}


def _products_of_degree(generators: Sequence[Poly], degree: int, table: Sequence[str]) -> List[Poly]:
    """All products of earlier generators with total degree exactly ``degree``."""
    out: List[Poly] = []

    def recurse(start: int, remaining: int, acc: Poly) -> None:
        for i in range(start, len(generators)):
            d = generators[i].total_degree()
            if d > remaining:
                continue
            prod = acc * generators[i]
            if d == remaining:
                out.append(prod)
            else:
                recurse(i, remaining - d, prod)

    recurse(0, degree, Poly.const(table, 1))
    return out


def graded_kernel_generators(d: Derivation, maxdeg: int) -> List[Poly]:
    """Minimal homogeneous kernel generators up to the degree bound.

    In each degree the kernel is computed exactly and reduced modulo
    products of lower-degree generators; what survives is normalised to
    integer content one with positive leading coefficient.  The listing
    is deterministic: degree ascending, then leading monomial descending.
    """
    if not d.graded_linear:
        raise ValueError("kernel generators require a degree-preserving derivation")
    n = len(d.vars)
    generators: List[Poly] = []
    for degree in range(1, maxdeg + 1):
        monos = list(exponents_of_degree(n, degree))
        index = {e: i for i, e in enumerate(monos)}
        rows: Dict[int, Row] = {}
        for j, exponent in enumerate(monos):
            image = apply(d, Poly.monomial(d.vars, exponent))
            for ie, ic in image.terms.items():
                rows.setdefault(index[ie], {})[j] = ic
        kernel = nullspace([rows[i] for i in sorted(rows)], len(monos))
        if not kernel:
            continue
        canonical = rref(kernel, len(monos))
        spanned: List[Row] = [
            _vectorize(p, index) for p in _products_of_degree(generators, degree, d.vars)
        ]
        for _, row in canonical:
            remainder = reduce_against(row, rref(spanned, len(monos)))
            if remainder:
                poly = Poly(d.vars, {monos[c]: v for c, v in remainder.items()})
                generators.append(poly.normalized())
                spanned.append(remainder)
    return generators


# ----------------------------------------------------------------------
# graph restriction and slices


@dataclass(frozen=True)
class GraphPresentation:
    """A subvariety presented as a graph over explicit free coordinates.

    ``free`` identifies ambient coordinates with parameter variables
    one-for-one; ``dependent`` expresses the remaining coordinates as
    polynomials in the parameters.  Nothing is inferred: the split is
    part of the data.
    """

    zvars: Tuple[str, ...]
    free: Mapping[str, str]
    dependent: Mapping[str, Poly]

    def substitution(self) -> Dict[str, Poly]:
        """Ambient coordinate -> polynomial over the parameter table."""
        table: Dict[str, Poly] = {}
        for ambient, zname in self.free.items():
            table[ambient] = Poly.variable(self.zvars, zname)
        for ambient, image in self.dependent.items():
            table[ambient] = image
        return table


def restrict_to_graph(d: Derivation, graph: GraphPresentation) -> Derivation:
    """Restrict the ambient derivation to a graph subvariety.

    The restricted derivation acts on the parameter variables; the graph
    must be stable under ``d``, which is checked via the chain rule on
    every dependent coordinate and raises :class:`GraphInconsistency`
    otherwise.
    """
    ambient = set(graph.free) | set(graph.dependent)
    if ambient != set(d.vars) or set(graph.free) & set(graph.dependent):
        raise ValueError("graph must split the ambient coordinates into free and dependent")
    if sorted(graph.free.values()) != sorted(graph.zvars):
        raise ValueError("free coordinates must biject onto the parameter variables")
    for name, image in graph.dependent.items():
        if image.vars != tuple(graph.zvars):
            raise VariableTableMismatch(f"dependent image of {name!r} is not over {graph.zvars}")
    substitution = graph.substitution()
    images: Dict[str, Poly] = {}
    for ambient_name, zname in graph.free.items():
        images[zname] = apply(d, Poly.variable(d.vars, ambient_name)).substitute(substitution)
    restricted = Derivation(graph.zvars, images)
    for ambient_name, h in graph.dependent.items():
        lhs = apply(d, Poly.variable(d.vars, ambient_name)).substitute(substitution)
        rhs = Poly.zero(graph.zvars)
        for zname in graph.zvars:
            rhs = rhs + h.partial(zname) * images[zname]
        if lhs != rhs:
            raise GraphInconsistency(
                f"graph is not stable under the derivation at {ambient_name!r}: "
                f"ambient action gives {lhs}, chain rule gives {rhs}"
            )
    return restricted


@dataclass(frozen=True)
class SliceSearch:
    """Outcome of the bounded linear search for a slice element."""

    found: Optional[Poly]
    degree_bound: int


def slice_search(d: Derivation, degree_bound: int = 3) -> SliceSearch:
    """Look for ``s`` with ``D(s) = 1`` among polynomials of bounded degree.

    The ansatz is linear in the unknown coefficients, so the bounded
    search is an exact linear solve; a miss only means no slice exists
    up to the bound.
    """
    n = len(d.vars)
    candidates = list(exponents_up_to_degree(n, degree_bound))
    constant = (0,) * n
    row_index: Dict[Tuple[int, ...], int] = {constant: 0}
    rows: List[Row] = [dict()]
    for j, exponent in enumerate(candidates):
        image = apply(d, Poly.monomial(d.vars, exponent))
        for ie, ic in image.terms.items():
            i = row_index.setdefault(ie, len(rows))
            if i == len(rows):
                rows.append(dict())
            rows[i][j] = ic
    rhs = [Fraction(0)] * len(rows)
    rhs[0] = Fraction(1)
    outcome = solve(rows, rhs, len(candidates))
    if outcome is None:
        return SliceSearch(None, degree_bound)
    solution, _ = outcome
    found = Poly(d.vars, {e: c for e, c in zip(candidates, solution) if c})
    if apply(d, found) != Poly.const(d.vars, 1):  # pragma: no cover - solver post-condition
        raise InternalInconsistency("slice candidate failed verification")
    return SliceSearch(found, degree_bound)
