"""The decision pipeline for invariant hypersurface quotients.

``classify`` runs the whole chain on one input: verify invariance,
certify stability by restricting to the non-stable coordinate subspace,
extend across the group and read off the boundary class, search for a
slice when a graph presentation is available, and record every
independent route's agreement as a crosscheck.  The possible verdicts:

* ``Affine`` -- the lifted closure misses the boundary;
* ``StrictlyQuasiAffine`` -- stability is certified but the closure
  meets the boundary properly;
* ``NotEverywhereStable`` -- an exact rational point of the variety
  lies in the non-stable subspace;
* ``Unknown`` -- the sufficient certificate failed and no witness was
  found within the sample budget.

Disagreement between routes that are theorems of each other never
produces a verdict: it raises, because it can only mean broken code or
a falsified input.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .derivations import (
    Derivation,
    GraphPresentation,
    PowerInImage,
    SliceSearch,
    apply,
    power_in_image,
    restrict_to_graph,
    slice_search,
)
from .errors import (
    GraphInconsistency,
    InternalInconsistency,
    NonInvariantInput,
    VariableTableMismatch,
)
from .linalg import Row, nullspace, solve
from .poly import Poly, squarefree_distinct_root_count
from .reps import RepSpec, build_derivation, catalog_invariants, nonstable_coordinates
from .transfer import BoundaryClass, TransferResult, extend


class Verdict(enum.Enum):
    AFFINE = "Affine"
    STRICTLY_QUASI_AFFINE = "StrictlyQuasiAffine"
    NOT_EVERYWHERE_STABLE = "NotEverywhereStable"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Bounds:
    """Search bounds; every bounded verdict cites the bound it honored."""

    kmax: int = 3
    slice_degree: int = 3
    invariant_degree: int = 2
    sample_budget: int = 64
    seed: int = 101

    def as_dict(self) -> Dict[str, int]:
        return {
            "kmax": self.kmax,
            "sliceDeg": self.slice_degree,
            "invariantDeg": self.invariant_degree,
        }


@dataclass(frozen=True)
class StabilityCertificate:
    """Restriction of the defining polynomial to the non-stable subspace.

    ``certified`` means the restriction is a non-zero constant, so the
    variety avoids the subspace entirely.  The test is sufficient, never
    necessary: a failed certificate proves nothing by itself.
    """

    restriction: Poly
    certified: bool


@dataclass(frozen=True)
class UnstableWitness:
    """An exact rational point of the variety in the non-stable subspace."""

    subspace: Tuple[str, ...]
    point: Tuple[Tuple[str, Fraction], ...]

    def point_dict(self) -> Dict[str, Fraction]:
        return dict(self.point)


@dataclass(frozen=True)
class SmoothnessReport:
    """Bounded Jacobian analysis of the boundary-intersection polynomial."""

    outcome: str  # "SmoothProven" | "SmoothOnSamples" | "SingularWitness"
    witness: Optional[Tuple[Tuple[str, Fraction], ...]]
    samples: int


@dataclass(frozen=True)
class ClassificationReport:
    spec: RepSpec
    verdict: Verdict
    certificate: Optional[StabilityCertificate]
    transfer: Optional[TransferResult]
    slice_result: Optional[SliceSearch]
    witness: Optional[UnstableWitness]
    smoothness: Optional[SmoothnessReport]
    crosschecks: Tuple[Tuple[str, bool], ...]
    notes: Tuple[str, ...]
    bounds: Bounds

    def to_dict(self) -> Dict:
        """JSON-ready structure; polynomials and rationals become strings."""
        out: Dict = {
            "verdict": self.verdict.value,
            "bounds": self.bounds.as_dict(),
            "crosschecks": [[name, ok] for name, ok in self.crosschecks],
            "notes": list(self.notes),
        }
        if self.certificate is not None:
            out["certificate"] = {
                "restriction": str(self.certificate.restriction),
                "certified": self.certificate.certified,
            }
        if self.transfer is not None:
            out["transfer"] = {
                "extension": str(self.transfer.extension),
                "f00": str(self.transfer.f00),
                "boundaryPart": str(self.transfer.boundary_part),
                "boundary": self.transfer.boundary.value,
            }
        if self.slice_result is not None:
            out["slice"] = {
                "found": None if self.slice_result.found is None else str(self.slice_result.found),
                "degreeBound": self.slice_result.degree_bound,
            }
        if self.witness is not None:
            out["witness"] = {
                "subspace": list(self.witness.subspace),
                "point": {name: str(value) for name, value in self.witness.point},
            }
        if self.smoothness is not None:
            out["smoothness"] = {
                "outcome": self.smoothness.outcome,
                "witness": None
                if self.smoothness.witness is None
                else {name: str(value) for name, value in self.smoothness.witness},
                "samples": self.smoothness.samples,
            }
        return out


# ----------------------------------------------------------------------
# stability


def certify_everywhere_stable(spec: RepSpec, f: Poly) -> StabilityCertificate:
    """Restrict ``f`` to the subspace killing all positive-weight coordinates."""
    derivation = build_derivation(spec)
    if f.vars != spec.coord_names:
        raise VariableTableMismatch(
            f"polynomial table {f.vars} does not match the spec coordinates"
        )
    if not apply(derivation, f).is_zero:
        raise NonInvariantInput("stability certificate expects an invariant polynomial")
    positive = set(nonstable_coordinates(spec))
    restriction = f.substitute(
        {name: Poly.zero(spec.coord_names) for name in positive}
    )
    certified = (not restriction.is_zero) and restriction.is_constant()
    return StabilityCertificate(restriction=restriction, certified=certified)


def _small_rationals() -> List[Fraction]:
    return [Fraction(x) for x in (1, -1, 2, -2, 3, -3)] + [
        Fraction(1, 2),
        Fraction(-1, 2),
        Fraction(1, 3),
        Fraction(-1, 3),
        Fraction(3, 2),
        Fraction(-3, 2),
    ]


def _candidate_points(names: Sequence[str], bounds: Bounds) -> Iterator[Dict[str, Fraction]]:
    """Deterministic candidates first (origin, axes, axis pairs), then seeded samples."""

    def deterministic():
        zero = {name: Fraction(0) for name in names}
        yield dict(zero)
        values = _small_rationals()
        for name in names:
            for value in values:
                point = dict(zero)
                point[name] = value
                yield point
        for a, b in itertools.combinations(names, 2):
            for va in values[:4]:
                for vb in values[:4]:
                    point = dict(zero)
                    point[a] = va
                    point[b] = vb
                    yield point

    def sampled():
        rng = random.Random(bounds.seed)
        for _ in range(bounds.sample_budget):
            yield {
                name: Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for name in names
            }

    return itertools.chain(deterministic(), sampled())


def _common_zero(
    constraints: Sequence[Poly], names: Sequence[str], bounds: Bounds
) -> Optional[Dict[str, Fraction]]:
    """A rational point killing every constraint, or ``None`` within budget.

    Candidates assign only ``names``; any other constraint variable is
    taken to be zero, which is exact in both call sites because those
    variables have already been substituted away or pinned to zero.
    """
    live = [c for c in constraints if not c.is_zero]
    if any(c.is_constant() for c in live):
        return None
    if not live:
        return {name: Fraction(0) for name in names}

    def value_at(c: Poly, point: Dict[str, Fraction]) -> Fraction:
        return c.evaluate({v: point.get(v, Fraction(0)) for v in c.vars})

    for point in _candidate_points(names, bounds):
        if all(value_at(c, point) == 0 for c in live):
            return point
    return None


def _find_unstable_point(spec: RepSpec, f: Poly, bounds: Bounds) -> Optional[UnstableWitness]:
    """Search the non-stable subspace for an exact rational point of the variety."""
    positive = nonstable_coordinates(spec)
    restriction = f.substitute({name: Poly.zero(spec.coord_names) for name in positive})
    names = [name for name in spec.coord_names if name not in set(positive)]
    solution = _common_zero([restriction], names, bounds)
    if solution is None:
        return None
    full = {**{name: Fraction(0) for name in positive}, **solution}
    if f.evaluate(full) != 0:  # pragma: no cover - search post-condition
        raise InternalInconsistency("unstable witness failed evaluation")
    point = tuple((name, full[name]) for name in spec.coord_names)
    return UnstableWitness(subspace=positive, point=point)


def _find_unstable_point_on_graph(
    spec: RepSpec, graph: GraphPresentation, f: Optional[Poly], bounds: Bounds
) -> Optional[UnstableWitness]:
    """Graph-route witness search: zero the free positive-weight parameters.

    The remaining constraints are the dependent positive-weight images
    after that substitution; when they vanish identically the witness
    subspace is cut by the free positive-weight coordinates alone.
    """
    positive = set(nonstable_coordinates(spec))
    free_positive = [name for name in spec.coord_names if name in positive and name in graph.free]
    zero_z = {graph.free[name]: Fraction(0) for name in free_positive}
    zeroing = {z: Poly.zero(graph.zvars) for z in zero_z}
    constraints = []
    all_identically_zero = True
    for name, image in graph.dependent.items():
        if name not in positive:
            continue
        reduced = image.substitute(zeroing)
        constraints.append(reduced)
        if not reduced.is_zero:
            all_identically_zero = False
    remaining = [z for z in graph.zvars if z not in zero_z]
    solution = _common_zero(constraints, remaining, bounds)
    if solution is None:
        return None
    zpoint: Dict[str, Fraction] = {**zero_z, **solution}
    ambient: Dict[str, Fraction] = {}
    for name, zname in graph.free.items():
        ambient[name] = zpoint[zname]
    for name, image in graph.dependent.items():
        ambient[name] = image.evaluate(zpoint)
    for name in positive:
        if ambient[name] != 0:  # pragma: no cover - search post-condition
            raise InternalInconsistency("graph witness left a positive-weight coordinate alive")
    if f is not None and f.evaluate(ambient) != 0:  # pragma: no cover - ditto
        raise InternalInconsistency("graph witness is not on the hypersurface")
    subspace = (
        tuple(free_positive)
        if all_identically_zero
        else tuple(name for name in spec.coord_names if name in positive)
    )
    point = tuple((name, ambient[name]) for name in spec.coord_names)
    return UnstableWitness(subspace=subspace, point=point)


def _graph_certifies_stability(spec: RepSpec, graph: GraphPresentation) -> bool:
    """Whether the graph provably avoids the non-stable subspace.

    True when the constraint system (free positive-weight parameters
    zeroed, dependent positive-weight images required to vanish) reduces
    to a non-zero constant equation.
    """
    positive = set(nonstable_coordinates(spec))
    zeroing = {
        graph.free[name]: Poly.zero(graph.zvars)
        for name in graph.free
        if name in positive
    }
    for name, image in graph.dependent.items():
        if name not in positive:
            continue
        reduced = image.substitute(zeroing)
        if (not reduced.is_zero) and reduced.is_constant():
            return True
    return False


# ----------------------------------------------------------------------
# the crosscheck routes


def crosscheck_constant_removed(spec: RepSpec, f: Poly) -> bool:
    """Agreement of the boundary route with its constant-removed variant.

    For a certified input, the closure misses the boundary exactly when
    the constant-removed polynomial's extension contains it; the check
    compares the two routes and returns their agreement.
    """
    certificate = certify_everywhere_stable(spec, f)
    if not certificate.certified:
        raise ValueError("constant-removed crosscheck expects a certified input")
    base = extend(spec, f)
    reduced = f - Poly.const(spec.coord_names, f.constant_term())
    affine_by_boundary = base.boundary is BoundaryClass.MISSES
    reduced_contains = extend(spec, reduced).f00.is_zero
    return affine_by_boundary == reduced_contains


def localized_quotient_affine(spec: RepSpec, h: Poly, kmax: int = 3) -> PowerInImage:
    """Bounded test for the localization at ``h`` having an affine quotient.

    The localized quotient is affine with trivially-fibered quotient map
    exactly when some power of ``h`` lies in the derivation's image;
    the bounded search result carries the witness pair.
    """
    return power_in_image(build_derivation(spec), h, kmax)


def jacobian_boundary_smoothness(
    spec: RepSpec, f00: Poly, bounds: Bounds = Bounds()
) -> SmoothnessReport:
    """Look for singular points: common zeros of ``f00`` and its gradient.

    When every partial is linear the critical locus is solved exactly and
    the answer is a proof either way; otherwise a deterministic-then-
    seeded point search returns either a definitive witness or
    evidence-only absence.
    """
    if f00.is_constant():
        raise ValueError("smoothness analysis expects a non-constant polynomial")
    names = f00.vars
    partials = [f00.partial(name) for name in names]
    if all(p.total_degree() <= 1 for p in partials):
        return _linear_gradient_analysis(f00, partials, bounds)
    samples = 0
    for point in _candidate_points(names, bounds):
        samples += 1
        if f00.evaluate(point) == 0 and all(p.evaluate(point) == 0 for p in partials):
            witness = tuple((name, point[name]) for name in names)
            return SmoothnessReport("SingularWitness", witness, samples)
    return SmoothnessReport("SmoothOnSamples", None, samples)


def _linear_gradient_analysis(
    f00: Poly, partials: Sequence[Poly], bounds: Bounds
) -> SmoothnessReport:
    """Exact treatment when the gradient system is linear."""
    names = f00.vars
    n = len(names)
    unit = {tuple(1 if j == i else 0 for j in range(n)): i for i in range(n)}
    rows: List[Row] = []
    rhs: List[Fraction] = []
    for p in partials:
        row: Row = {}
        constant = Fraction(0)
        for exponent, coeff in p.terms.items():
            if sum(exponent) == 0:
                constant = coeff
            else:
                row[unit[exponent]] = coeff
        rows.append(row)
        rhs.append(-constant)
    outcome = solve(rows, rhs, n)
    if outcome is None:
        return SmoothnessReport("SmoothProven", None, 0)
    particular, free = outcome
    base_point = {name: particular[i] for i, name in enumerate(names)}
    if not free:
        if f00.evaluate(base_point) == 0:
            witness = tuple((name, base_point[name]) for name in names)
            return SmoothnessReport("SingularWitness", witness, 0)
        return SmoothnessReport("SmoothProven", None, 0)
    directions = nullspace(rows, n)
    tnames = tuple(f"s{i}" for i in range(len(directions)))
    images = {
        name: Poly.const(tnames, particular[i])
        + sum(
            (Poly.variable(tnames, tnames[j]) * vec.get(i, Fraction(0)) for j, vec in enumerate(directions)),
            Poly.zero(tnames),
        )
        for i, name in enumerate(names)
    }
    restricted = f00.substitute(images)
    if restricted.is_zero:
        witness = tuple((name, base_point[name]) for name in names)
        return SmoothnessReport("SingularWitness", witness, 0)
    if restricted.is_constant():
        return SmoothnessReport("SmoothProven", None, 0)
    samples = 0
    for tpoint in _candidate_points(tnames, bounds):
        samples += 1
        if restricted.evaluate(tpoint) == 0:
            point = {name: image.evaluate(tpoint) for name, image in images.items()}
            witness = tuple((name, point[name]) for name in names)
            return SmoothnessReport("SingularWitness", witness, samples)
    return SmoothnessReport("SmoothOnSamples", None, samples)


# ----------------------------------------------------------------------
# the pipeline


def classify(
    spec: RepSpec,
    f: Optional[Poly] = None,
    graph: Optional[GraphPresentation] = None,
    bounds: Bounds = Bounds(),
) -> ClassificationReport:
    """Full verdict pipeline; see the module docstring for the contract."""
    if f is None and graph is None:
        raise ValueError("classification needs a defining polynomial, a graph, or both")
    derivation = build_derivation(spec)
    notes: List[str] = []
    crosschecks: List[Tuple[str, bool]] = []

    if f is not None:
        if f.vars != spec.coord_names:
            raise VariableTableMismatch(
                f"polynomial table {f.vars} does not match the spec coordinates"
            )
        if f.is_constant():
            raise ValueError("a constant polynomial does not define a hypersurface")
        if not apply(derivation, f).is_zero:
            raise NonInvariantInput("classification input is not killed by the derivation")

    restricted: Optional[Derivation] = None
    if graph is not None:
        restricted = restrict_to_graph(derivation, graph)
        if f is not None:
            on_graph = f.substitute(graph.substitution())
            if not on_graph.is_zero:
                raise GraphInconsistency(
                    f"polynomial does not vanish on the graph; residue {on_graph}"
                )
            crosschecks.append(("graph-lies-on-hypersurface", True))

    certificate: Optional[StabilityCertificate] = None
    witness: Optional[UnstableWitness] = None
    if f is not None:
        certificate = certify_everywhere_stable(spec, f)
        certified = certificate.certified
    else:
        certified = _graph_certifies_stability(spec, graph)
        if certified:
            notes.append("graph avoids the non-stable subspace by a constant constraint")

    transfer_result = extend(spec, f) if f is not None else None

    if certified:
        if transfer_result is None:
            verdict = Verdict.UNKNOWN
            notes.append(
                "stability certified from the graph alone; no defining polynomial, "
                "so the boundary test cannot run"
            )
        elif transfer_result.boundary is BoundaryClass.CONTAINS:
            raise InternalInconsistency(
                "certified input whose extension contains the boundary: "
                "the origin would lie on the variety"
            )
        elif transfer_result.boundary is BoundaryClass.MISSES:
            verdict = Verdict.AFFINE
        else:
            verdict = Verdict.STRICTLY_QUASI_AFFINE
    else:
        if graph is not None:
            witness = _find_unstable_point_on_graph(spec, graph, f, bounds)
        else:
            witness = _find_unstable_point(spec, f, bounds)
        if witness is not None:
            verdict = Verdict.NOT_EVERYWHERE_STABLE
        else:
            verdict = Verdict.UNKNOWN
            notes.append(
                "certificate failed and no rational point of the non-stable "
                "subspace was found within the sample budget"
            )

    if f is not None and certified:
        crosschecks.append(("constant-removed-boundary", crosscheck_constant_removed(spec, f)))
        reduced = f - Poly.const(spec.coord_names, f.constant_term())
        localized = localized_quotient_affine(spec, reduced, bounds.kmax)
        crosschecks.append(
            ("localized-power-duality", localized.found == (verdict is Verdict.AFFINE))
        )

    slice_result: Optional[SliceSearch] = None
    if restricted is not None:
        slice_result = slice_search(restricted, bounds.slice_degree)
        found = slice_result.found is not None
        if found and verdict in (
            Verdict.STRICTLY_QUASI_AFFINE,
            Verdict.NOT_EVERYWHERE_STABLE,
        ):
            raise InternalInconsistency(
                "a slice was found for a quotient classified as non-affine"
            )
        crosschecks.append(("slice-agreement", found == (verdict is Verdict.AFFINE)))
        if verdict is Verdict.AFFINE and not found:
            notes.append(
                f"no slice up to degree {bounds.slice_degree}; bounded miss, not a refutation"
            )

    smoothness: Optional[SmoothnessReport] = None
    if transfer_result is not None and transfer_result.boundary is BoundaryClass.INTERSECTS:
        smoothness = jacobian_boundary_smoothness(spec, transfer_result.f00, bounds)

    return ClassificationReport(
        spec=spec,
        verdict=verdict,
        certificate=certificate,
        transfer=transfer_result,
        slice_result=slice_result,
        witness=witness,
        smoothness=smoothness,
        crosschecks=tuple(crosschecks),
        notes=tuple(notes),
        bounds=bounds,
    )


# ----------------------------------------------------------------------
# families


@dataclass(frozen=True)
class FamilyMember:
    """One member of the hypersurface family ``1 + phi(invariant) - w0``."""

    spec: RepSpec
    phi: Poly
    delta_label: str


class FamilyOutcome(enum.Enum):
    NON_ISOMORPHIC = "NonIsomorphicBoundaryCounts"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class FamilyComparison:
    outcome: FamilyOutcome
    counts: Tuple[int, int]


def build_family_member(
    spec: RepSpec, phi: Poly, delta_label: str
) -> Tuple[Poly, GraphPresentation]:
    """Construct the member polynomial and its graph presentation.

    The defining polynomial is ``1 + phi(delta) - w0`` where ``w0`` is
    the invariant coordinate of the leading summand and ``delta`` is a
    catalogued invariant supported away from that summand; the graph
    realizes the hypersurface as affine space.
    """
    if len(phi.vars) != 1:
        raise ValueError("family parameter polynomial must be univariate")
    if phi.constant_term() == -1:
        raise ValueError(
            "family parameter value at zero is -1, placing the origin on the hypersurface"
        )
    first_k, first_names = spec.blocks()[0]
    if first_k < 1:
        raise ValueError("leading summand must be a positive symmetric power")
    catalog = {entry.label: entry for entry in catalog_invariants(spec)}
    if delta_label not in catalog:
        raise ValueError(
            f"unknown catalog invariant {delta_label!r}; available: {sorted(catalog)}"
        )
    delta = catalog[delta_label].poly
    overlap = set(delta.support()) & set(first_names)
    if overlap:
        raise ValueError(
            f"invariant {delta_label!r} touches the leading summand coordinates {sorted(overlap)}"
        )
    coords = spec.coord_names
    pivot = first_names[0]
    tname = phi.vars[0]
    h_phi = Poly.const(coords, 1) + phi.substitute({tname: delta})
    f = h_phi - Poly.variable(coords, pivot)
    others = [name for name in coords if name != pivot]
    zvars = tuple(f"z{i}" for i in range(1, len(coords)))
    free = {name: z for name, z in zip(others, zvars)}
    to_z = {name: Poly.variable(zvars, z) for name, z in free.items()}
    dependent = {pivot: h_phi.coefficient({pivot: 0}).substitute(to_z)}
    return f, GraphPresentation(zvars=zvars, free=free, dependent=dependent)


def compare_family(m1: FamilyMember, m2: FamilyMember) -> FamilyComparison:
    """Compare two members by their boundary component counts.

    The count for a member is the number of distinct roots of its
    parameter polynomial over an algebraic closure; distinct counts
    prove the quotients non-isomorphic, equal counts decide nothing.
    Members must share the representation and invariant choice and have
    squarefree parameters.  The comparison is arithmetic on the
    parameters alone and does not rebuild the members; stability of each
    member is the caller's hypothesis (the builder's origin guard is
    deliberately not repeated here, so parameters whose value at zero is
    -1 can still be compared).
    """
    if m1.spec != m2.spec or m1.delta_label != m2.delta_label:
        raise ValueError("family members must share a representation and invariant choice")
    counts: List[int] = []
    for member in (m1, m2):
        count, squarefree = squarefree_distinct_root_count(member.phi)
        if not squarefree:
            raise ValueError("family parameter polynomial must have no repeated roots")
        counts.append(count)
    outcome = (
        FamilyOutcome.NON_ISOMORPHIC if counts[0] != counts[1] else FamilyOutcome.INCONCLUSIVE
    )
    return FamilyComparison(outcome=outcome, counts=(counts[0], counts[1]))
