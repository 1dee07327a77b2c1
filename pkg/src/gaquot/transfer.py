"""Extension of additive-group invariants to invariants of the full group.

An invariant ``f`` on the representation space extends uniquely to a
function ``F`` on the product of the standard plane (coordinates
``u, v``) with the representation space, invariant under the full
rank-one group acting diagonally.  ``F`` is computed by substituting
the inverse of an explicit determinant-one section matrix whose second
column is ``(u, v)``; the theory forces every intermediate power of
``1/v`` to cancel, and surviving denominators convict the input of
non-invariance.

The constant coefficient ``F00`` (the ``u^0 v^0`` part of ``F``) splits
``f = F00 + g`` and its shape classifies how the closure of the lifted
hypersurface meets the boundary locus ``{u = v = 0}``:

* ``F00`` a non-zero constant -- the closure misses the boundary;
* ``F00 = 0`` -- the boundary is contained in the closure;
* anything else -- the closure meets the boundary properly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict

from .derivations import apply
from .errors import InternalInconsistency, NonInvariantInput, VariableTableMismatch
from .poly import Poly
from .reps import LaurentV, RepSpec, build_derivation, group_substitution, sl2_triple

PLANE_COORDS = ("u", "v")


class BoundaryClass(enum.Enum):
    MISSES = "Misses"
    INTERSECTS = "Intersects"
    CONTAINS = "Contains"


@dataclass(frozen=True)
class TransferResult:
    """The invariant extension together with its boundary split."""

    extension: Poly       # over ("u", "v") + coords
    f00: Poly             # over coords
    boundary_part: Poly   # over coords; f = f00 + boundary_part
    boundary: BoundaryClass


@lru_cache(maxsize=None)
def _section_inverse_substitution(spec: RepSpec) -> Dict[str, LaurentV]:
    """Substitution by the inverse of the section ``[[1/v, u], [0, v]]``.

    The section has second column ``(u, v)`` and determinant one; its
    inverse is ``[[v, -u], [0, 1/v]]``.  Images live over the table
    ``("u", "v") + coords`` with a tracked ``v``-denominator.
    """
    collision = set(PLANE_COORDS) & set(spec.coord_names)
    if collision:
        raise ValueError(f"coordinates shadow the plane variables: {sorted(collision)}")
    u = Poly.variable(PLANE_COORDS, "u")
    v = Poly.variable(PLANE_COORDS, "v")
    one = Poly.const(PLANE_COORDS, 1)
    inverse = [
        [LaurentV(v), LaurentV(-u)],
        [LaurentV(Poly.zero(PLANE_COORDS)), LaurentV(one, 1)],
    ]
    return group_substitution(spec, inverse)


@lru_cache(maxsize=None)
def extended_spec(spec: RepSpec) -> RepSpec:
    """The spec enlarged by the standard plane as a leading summand."""
    return RepSpec(
        (1,) + spec.summands,
        normalization=spec.normalization,
        coord_names=PLANE_COORDS + spec.coord_names,
    )


def extend(spec: RepSpec, f: Poly) -> TransferResult:
    """Extend an invariant across the group and classify its boundary.

    Raises :class:`NonInvariantInput` when the derivation does not kill
    ``f``; a residual denominator after clearing is the same defect and
    raises identically.
    """
    if f.vars != spec.coord_names:
        raise VariableTableMismatch(
            f"polynomial table {f.vars} does not match the spec coordinates {spec.coord_names}"
        )
    derivation = build_derivation(spec)
    if not apply(derivation, f).is_zero:
        raise NonInvariantInput("transfer input is not killed by the derivation")
    images = _section_inverse_substitution(spec)
    full = PLANE_COORDS + spec.coord_names
    zero = LaurentV(Poly.zero(full))
    accumulated = zero
    power_cache: Dict[tuple, LaurentV] = {}
    for exponent, coeff in f.terms.items():
        term = LaurentV(Poly.const(full, coeff))
        for idx, e in enumerate(exponent):
            if not e:
                continue
            key = (idx, e)
            cached = power_cache.get(key)
            if cached is None:
                cached = images[spec.coord_names[idx]] ** e
                power_cache[key] = cached
            term = term * cached
        accumulated = accumulated + term
    if accumulated.vexp != 0:
        raise NonInvariantInput(
            f"denominator v^{accumulated.vexp} fails to cancel; input is not invariant"
        )
    extension = accumulated.as_poly()
    restriction = extension.substitute(
        {
            "u": Poly.zero(spec.coord_names),
            "v": Poly.const(spec.coord_names, 1),
            **{name: Poly.variable(spec.coord_names, name) for name in spec.coord_names},
        }
    )
    if restriction != f:
        raise InternalInconsistency("extension does not restrict back to its input")
    f00 = extension.coefficient({"u": 0, "v": 0})
    if f00.is_zero:
        boundary = BoundaryClass.CONTAINS
    elif f00.is_constant():
        boundary = BoundaryClass.MISSES
    else:
        boundary = BoundaryClass.INTERSECTS
    return TransferResult(
        extension=extension,
        f00=f00,
        boundary_part=f - f00,
        boundary=boundary,
    )


def verify_invariance(spec: RepSpec, extension: Poly) -> bool:
    """Whether the operator triple of the enlarged spec kills ``extension``.

    The enlarged action puts weights ``+1`` and ``-1`` on ``u`` and ``v``
    and acts on the original coordinates as before.
    """
    enlarged = extended_spec(spec)
    if extension.vars != enlarged.coord_names:
        raise VariableTableMismatch(
            f"polynomial table {extension.vars} does not match {enlarged.coord_names}"
        )
    triple = sl2_triple(enlarged)
    return all(
        apply(op, extension).is_zero
        for op in (triple.lower, triple.raising, triple.diag)
    )
