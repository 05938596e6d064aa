"""Rim tori, vanishing cycles, and deck groups from divisor homology data.

The topological input is the first homology of a (possibly disconnected)
divisor V = V_1 u ... u V_N inside an ambient manifold, plus the subgroup
of H_1(V) swept out by intersecting with 3-cycles of the ambient space.
Every construction below is a finite exact computation on that data:
the rim tori module is the quotient by that subgroup, contact profiles
induce a weighted-sum homomorphism whose image and preimage control the
deck groups of the associated abelian covers, and gluing two sides
produces the vanishing-cycles module as an explicit cokernel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .groups import (
    AmbientMismatchError,
    CanonicalForm,
    FgAbGroup,
    Homomorphism,
    Subgroup,
)
from .matrices import IntMatrix, block_diagonal, determinant, solve_integral


@dataclass(frozen=True)
class DivisorComponent:
    """One connected component of the divisor.

    ``flux`` lists generators (ambient columns of this component) of the
    subgroup of H_1 traced out by loops of self-homeomorphisms.  A torus
    component always has full flux, so ``flux`` may be omitted when
    ``is_torus`` is set.
    """

    name: str
    h1: FgAbGroup
    is_torus: bool = False
    flux: IntMatrix | None = None

    def __post_init__(self):
        if self.flux is not None and self.flux.rows != self.h1.ambient_rank:
            raise ValueError(f"flux generators of {self.name!r} must live in its H_1 ambient")

    def flux_generators(self) -> IntMatrix:
        """Flux generator columns; tori default to all of H_1."""
        if self.is_torus:
            return IntMatrix.identity(self.h1.ambient_rank)
        if self.flux is None:
            raise ValueError(f"component {self.name!r} carries no flux data")
        return self.flux


@dataclass(frozen=True)
class DivisorData:
    """Homological data of a divisor inside an ambient manifold.

    ``h_xv`` is the subgroup of the direct sum of the component H_1's
    swept out by ambient 3-cycles; ``intersections``, when given, fixes
    the total intersection number with each component and constrains the
    admissible contact profiles.
    """

    components: tuple[DivisorComponent, ...]
    h_xv: Subgroup
    dim_v: int = 2
    intersections: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.dim_v < 2 or self.dim_v % 2:
            raise ValueError("divisor dimension must be a positive even integer")
        if self.h_xv.ambient != self.total_h1():
            raise AmbientMismatchError(
                "h_xv must be a subgroup of the direct sum of the component H_1 groups")
        if self.intersections is not None and len(self.intersections) != len(self.components):
            raise ValueError("one intersection number per component required")

    def total_h1(self) -> FgAbGroup:
        """Direct sum of the component H_1 groups, in declaration order."""
        total = FgAbGroup.trivial()
        for comp in self.components:
            total = total.direct_sum(comp.h1)
        return total

    def block_offsets(self) -> list[int]:
        offsets = [0]
        for comp in self.components:
            offsets.append(offsets[-1] + comp.h1.ambient_rank)
        return offsets

    def component_inclusion_columns(self, index: int) -> list[tuple[int, ...]]:
        """Ambient columns of the standard generators of component ``index``."""
        offsets = self.block_offsets()
        n = offsets[-1]
        cols = []
        for k in range(self.components[index].h1.ambient_rank):
            col = [0] * n
            col[offsets[index] + k] = 1
            cols.append(tuple(col))
        return cols


@dataclass(frozen=True)
class ContactProfile:
    """Tuples of nonzero contact orders, one tuple per divisor component."""

    tuples: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        for s in self.tuples:
            if any(x == 0 for x in s):
                raise ValueError("contact orders must be nonzero entries")

    @staticmethod
    def of(*tuples: Sequence[int]) -> ContactProfile:
        return ContactProfile(tuple(tuple(int(x) for x in s) for s in tuples))

    def total_contacts(self) -> int:
        return sum(len(s) for s in self.tuples)

    def gcds(self) -> tuple[int, ...]:
        return tuple(gcd_tuple(s) for s in self.tuples)


def gcd_tuple(s: Sequence[int]) -> int:
    """gcd of the absolute values; 0 for the empty tuple by convention."""
    if any(x == 0 for x in s):
        raise ValueError("contact orders must be nonzero")
    return math.gcd(*(abs(x) for x in s)) if s else 0


def check_profile(divisor: DivisorData, profile: ContactProfile) -> None:
    """Validate a profile against a divisor (component count, order sums)."""
    if len(profile.tuples) != len(divisor.components):
        raise ValueError(
            f"profile has {len(profile.tuples)} tuples for {len(divisor.components)} components")
    for s in profile.tuples:
        gcd_tuple(s)  # rejects zero entries
    if divisor.intersections is not None:
        for r, (s, total) in enumerate(zip(profile.tuples, divisor.intersections)):
            if sum(s) != total:
                raise ValueError(
                    f"contact orders of component {r} sum to {sum(s)}, expected {total}")


def contact_sum_hom(divisor: DivisorData, profile: ContactProfile) -> Homomorphism:
    """The weighted-sum homomorphism of a contact profile.

    Source is the direct sum of one copy of H_1(V_r) per contact point on
    V_r; a tuple of loops maps to the sum of the loops scaled by their
    contact orders.
    """
    check_profile(divisor, profile)
    source = FgAbGroup.trivial()
    blocks: list[IntMatrix] = []
    offsets = divisor.block_offsets()
    n = offsets[-1]
    for r, comp in enumerate(divisor.components):
        nr = comp.h1.ambient_rank
        for weight in profile.tuples[r]:
            source = source.direct_sum(comp.h1)
            cols = []
            for k in range(nr):
                col = [0] * n
                col[offsets[r] + k] = weight
                cols.append(col)
            blocks.append(IntMatrix.from_columns(cols, rows=n))
    matrix = blocks[0] if blocks else IntMatrix.zeros(n, 0)
    for b in blocks[1:]:
        matrix = matrix.hstack(b)
    return Homomorphism(source, divisor.total_h1(), matrix)


def rim_tori_module(divisor: DivisorData) -> tuple[FgAbGroup, Homomorphism]:
    """The rim tori module H_1(V)/H_X^V with its quotient projection."""
    return divisor.total_h1().quotient(divisor.h_xv)


def contact_preimage(divisor: DivisorData, profile: ContactProfile) -> Subgroup:
    """Preimage of H_X^V under the contact-sum homomorphism.

    This subgroup of the source acts trivially on the contact cover; it
    is the kernel of the induced map onto the contact image.
    """
    return contact_sum_hom(divisor, profile).preimage(divisor.h_xv)


def contact_image(divisor: DivisorData, profile: ContactProfile) -> Subgroup:
    """Image of the contact-sum homomorphism inside the rim tori module."""
    rim, projection = rim_tori_module(divisor)
    phi = contact_sum_hom(divisor, profile)
    return projection.compose(phi).image()


@dataclass(frozen=True)
class DeckGroupReport:
    """Deck transformation group of the contact cover, in two factors.

    The cover splits as a finite-index set of sheets indexed by the
    quotient of the rim tori module by the contact image, each carrying a
    regular cover with deck group the contact image itself; ``total`` is
    the canonical form of the product.
    """

    rim_tori: FgAbGroup
    contact_image: Subgroup
    finite_part: CanonicalForm
    free_part: CanonicalForm
    total: CanonicalForm


def deck_group(divisor: DivisorData, profile: ContactProfile) -> DeckGroupReport:
    rim, _ = rim_tori_module(divisor)
    image = contact_image(divisor, profile)
    sheet_group, _ = rim.quotient(image)
    image_group = image.as_group()
    total = sheet_group.direct_sum(image_group)
    return DeckGroupReport(
        rim_tori=rim,
        contact_image=image,
        finite_part=sheet_group.canonical_form(),
        free_part=image_group.canonical_form(),
        total=total.canonical_form(),
    )


def _side_quotient_relations(divisor: DivisorData) -> IntMatrix:
    return divisor.h_xv.span_matrix()


def vanishing_cycles(side_x: DivisorData, side_y: DivisorData,
                     ident: IntMatrix | None = None) -> FgAbGroup:
    """Vanishing-cycles module of a gluing, for injective divisor classes.

    When the divisor classes inject into the ambient homology on both
    sides, the module is the cokernel of
    H_1(V) -> H_1(V)_X (+) H_1(V)_Y, sending a loop to its class on the X
    side and the class of its identification on the Y side.  ``ident`` is
    the matrix of that identification on H_1(V); None means the identity.
    """
    h1x = side_x.total_h1()
    h1y = side_y.total_h1()
    if h1x.ambient_rank != h1y.ambient_rank:
        raise AmbientMismatchError("the two sides must share the divisor H_1 ambient")
    n = h1x.ambient_rank
    if ident is None:
        ident = IntMatrix.identity(n)
    if ident.rows != n or ident.cols != n:
        raise ValueError("identification matrix must be square on the H_1 ambient")
    # invertibility over Z, and compatibility with the relation lattices
    if abs(determinant(ident)) != 1:
        raise ValueError("identification must be invertible over the integers")
    Homomorphism(h1x, h1y, ident)  # raises if relations are not respected

    stacked = IntMatrix.identity(n).vstack(ident)
    relations = block_diagonal([
        _side_quotient_relations(side_x),
        _side_quotient_relations(side_y),
    ])
    return FgAbGroup(2 * n, stacked.hstack(relations))


def vanishing_cycles_from_pairs(rim_x: FgAbGroup, rim_y: FgAbGroup,
                                pair_generators: IntMatrix) -> FgAbGroup:
    """Vanishing-cycles module from caller-supplied matched-pair generators.

    In the general (non-injective) case the module is the cokernel of the
    span of the supplied columns inside the direct sum of the two rim
    tori modules; the columns are the images of the matched sphere-bundle
    classes, which are not determined by H_1 data alone.
    """
    total = rim_x.direct_sum(rim_y)
    if pair_generators.rows != total.ambient_rank:
        raise ValueError("pair generators must live in the direct-sum ambient")
    return FgAbGroup(total.ambient_rank, pair_generators.hstack(total.relations))


def self_glue(divisor: DivisorData) -> FgAbGroup:
    """Vanishing-cycles module of gluing a manifold to itself.

    Computed directly as the cokernel of the diagonal map into two copies
    of the rim tori module; its canonical form agrees with the rim tori
    module itself.
    """
    n = divisor.total_h1().ambient_rank
    stacked = IntMatrix.identity(n).vstack(IntMatrix.identity(n))
    relations = block_diagonal([
        _side_quotient_relations(divisor),
        _side_quotient_relations(divisor),
    ])
    return FgAbGroup(2 * n, stacked.hstack(relations))


def active_component_span(divisor: DivisorData,
                          profile: ContactProfile) -> tuple[Subgroup, bool]:
    """Span of the components with contacts inside the rim tori module.

    Returns the subgroup generated by the images of H_1(V_r) over all r
    with at least one contact point, and whether it has finite index.
    """
    check_profile(divisor, profile)
    rim, _ = rim_tori_module(divisor)
    cols: list[tuple[int, ...]] = []
    for r, s in enumerate(profile.tuples):
        if s:
            cols.extend(divisor.component_inclusion_columns(r))
    span = rim.subgroup(IntMatrix.from_columns(cols, rows=rim.ambient_rank))
    finite = rim.index_of(span) is not None
    return span, finite


def cover_homology_finitely_generated(
        divisor: DivisorData, profile: ContactProfile,
        component_fg: bool | Sequence[bool] = True) -> bool:
    """Whether the contact cover has finitely generated rational homology.

    ``component_fg`` asserts, per component, that the maximal relevant
    abelian cover of that component has finitely generated homology; only
    components with contacts enter the conclusion.
    """
    check_profile(divisor, profile)
    if isinstance(component_fg, bool):
        flags = (component_fg,) * len(divisor.components)
    else:
        flags = tuple(component_fg)
        if len(flags) != len(divisor.components):
            raise ValueError("one finite-generation flag per component required")
    _, finite_index = active_component_span(divisor, profile)
    active_ok = all(flag for flag, s in zip(flags, profile.tuples) if s)
    return finite_index and active_ok


def vanishing_threshold(divisor: DivisorData, profile: ContactProfile) -> int:
    """Largest useful relative insertion degree for this contact pattern.

    Relative invariants with total insertion degree above the returned
    value vanish.  The bound is (dim V) * (number of contact points)
    minus the free rank of the span of the contacted components in the
    rim tori module; for a connected divisor that rank is the free rank
    of the rim tori module itself.
    """
    check_profile(divisor, profile)
    ell = profile.total_contacts()
    if ell == 0:
        raise ValueError("the threshold requires at least one contact point")
    span, _ = active_component_span(divisor, profile)
    rank = span.as_group().free_rank()
    return divisor.dim_v * ell - rank


@dataclass(frozen=True)
class InvarianceVerdict:
    """Which invariance properties the refined counts enjoy.

    ``lift_independent`` means the counts do not depend on the choice of
    evaluation lift; ``equals_standard_gw`` strengthens it to agreement
    with the unrefined invariants.  ``reasons`` records each condition
    checked.
    """

    lift_independent: bool
    equals_standard_gw: bool
    reasons: tuple[tuple[str, bool], ...]

    def __post_init__(self):
        if self.equals_standard_gw and not self.lift_independent:
            raise ValueError("agreement with standard invariants implies lift independence")


def invariance_verdict(divisor: DivisorData, profile: ContactProfile) -> InvarianceVerdict:
    """Decide lift-independence and agreement with the standard counts.

    The contact orders are "relatively prime" to the rim tori module when
    the contact image is the whole module; for an infinite module this
    amounts to the gcd of the orders being 1.  The flux condition asks,
    for a connected divisor, that flux classes span the whole rim tori
    module, and for a disconnected one that flux classes of contacted
    components already span what all flux classes span.  Agreement with
    the standard invariants additionally needs rank at most 1, or every
    component to be a torus (which forces a connected cover here).
    """
    check_profile(divisor, profile)
    rim, _ = rim_tori_module(divisor)
    image = contact_image(divisor, profile)
    coprime = image == rim.full_subgroup()

    offsets = divisor.block_offsets()
    n = offsets[-1]

    def flux_columns(indices):
        cols = []
        for r in indices:
            comp = divisor.components[r]
            for col in comp.flux_generators().columns():
                full = [0] * n
                for k, x in enumerate(col):
                    full[offsets[r] + k] = x
                cols.append(tuple(full))
        return IntMatrix.from_columns(cols, rows=n)

    if len(divisor.components) <= 1:
        flux_ok = rim.subgroup(flux_columns(range(len(divisor.components)))) == rim.full_subgroup()
    else:
        active = [r for r, s in enumerate(profile.tuples) if s]
        everyone = range(len(divisor.components))
        flux_ok = rim.subgroup(flux_columns(active)) == rim.subgroup(flux_columns(everyone))

    rank_small = rim.free_rank() <= 1
    all_torus = bool(divisor.components) and all(c.is_torus for c in divisor.components)

    lift = flux_ok and coprime
    equals = lift and (rank_small or all_torus)
    reasons = (
        ("flux_condition", flux_ok),
        ("contacts_relatively_prime", coprime),
        ("rank_at_most_one", rank_small),
        ("torus_divisor", all_torus),
    )
    return InvarianceVerdict(lift, equals, reasons)


def deck_action(divisor: DivisorData, profile: ContactProfile,
                representatives: Sequence[Sequence[int]],
                eta: Sequence[int]) -> list[tuple[int, tuple[int, ...]]]:
    """Action of an ambient H_1 class on the sheets of the contact cover.

    ``representatives`` must be a full transversal of the quotient of the
    rim tori module by the contact image.  For each representative j the
    class ``eta`` sends sheet j to a unique sheet j', shifted by a
    translation witness from the cover's source lattice; the returned
    list pairs each j with (j', witness).
    """
    check_profile(divisor, profile)
    phi = contact_sum_hom(divisor, profile)
    n = divisor.total_h1().ambient_rank
    reps = [tuple(int(x) for x in v) for v in representatives]
    for v in reps:
        if len(v) != n:
            raise ValueError("representatives must be ambient H_1 vectors")
    if len(tuple(eta)) != n:
        raise ValueError("eta must be an ambient H_1 vector")

    # lattice defining the sheet set: contact image plus h_xv plus relations
    sheet_lattice = phi.matrix.hstack(divisor.h_xv.span_matrix())
    rim, _ = rim_tori_module(divisor)
    sheet_count = rim.index_of(rim.subgroup(phi.matrix))
    if sheet_count is None:
        raise ValueError("the sheet set is infinite; no finite transversal exists")
    if len(reps) != sheet_count:
        raise ValueError(f"expected {sheet_count} coset representatives, got {len(reps)}")
    for a in range(len(reps)):
        for b in range(a + 1, len(reps)):
            diff = tuple(x - y for x, y in zip(reps[a], reps[b]))
            if solve_integral(sheet_lattice, diff) is not None:
                raise ValueError("representatives are not pairwise distinct sheets")

    result = []
    for j, gamma in enumerate(reps):
        shifted = tuple(g + e for g, e in zip(gamma, eta))
        target = None
        for jp, candidate in enumerate(reps):
            diff = tuple(x - y for x, y in zip(shifted, candidate))
            witness = solve_integral(sheet_lattice, diff)
            if witness is not None:
                target = (jp, tuple(witness[: phi.source.ambient_rank]))
                break
        if target is None:
            raise RuntimeError("transversal validated but no sheet matched; internal error")
        result.append(target)
    return result
