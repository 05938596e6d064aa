"""Finitely generated abelian groups, subgroups, and homomorphisms.

A group is always presented as Z^n modulo the lattice spanned by the
columns of a relation matrix.  Subgroups of such a quotient are given by
generators in ambient coordinates; the relation lattice is implicitly
part of every span, which makes quotients of quotients and preimages
compose without special cases.  Rank-0 ambients and empty generator sets
are legal everywhere.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .matrices import (
    IntMatrix,
    block_diagonal,
    hermite_form,
    integer_kernel,
    smith_normal_form,
    solve_integral,
    unimodular_inverse,
)


class AmbientMismatchError(ValueError):
    """Raised when an operation mixes objects over different ambient groups."""


class IllDefinedHomomorphismError(ValueError):
    """Raised when a matrix does not send source relations into target relations."""


CanonicalForm = tuple[int, tuple[int, ...]]


def format_canonical(form: CanonicalForm) -> str:
    """Render (free rank, invariant factors) as ``Z^r + Z/d1 + Z/d2``.

    Factors appear in divisibility order d1 | d2 | ...; the trivial group
    renders as ``0``.
    """
    rank, factors = form
    parts = []
    if rank == 1:
        parts.append("Z")
    elif rank > 1:
        parts.append(f"Z^{rank}")
    parts.extend(f"Z/{d}" for d in factors)
    return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class FgAbGroup:
    """Z^ambient_rank modulo the column lattice of ``relations``."""

    ambient_rank: int
    relations: IntMatrix

    def __post_init__(self):
        if self.relations.rows != self.ambient_rank:
            raise ValueError("relation matrix must have ambient_rank rows")

    @staticmethod
    def free(rank: int) -> FgAbGroup:
        return FgAbGroup(rank, IntMatrix.zeros(rank, 0))

    @staticmethod
    def trivial() -> FgAbGroup:
        return FgAbGroup.free(0)

    @staticmethod
    def from_invariants(free_rank: int, torsion: Sequence[int]) -> FgAbGroup:
        """Z^free_rank plus a Z/d summand per entry of ``torsion``."""
        n = free_rank + len(torsion)
        cols = []
        for k, d in enumerate(torsion):
            if d <= 1:
                raise ValueError("torsion orders must exceed 1")
            col = [0] * n
            col[free_rank + k] = d
            cols.append(col)
        return FgAbGroup(n, IntMatrix.from_columns(cols, rows=n))

    # Two presentations are the same group when their relation lattices agree.
    def __eq__(self, other) -> bool:
        if not isinstance(other, FgAbGroup):
            return NotImplemented
        return (self.ambient_rank == other.ambient_rank
                and hermite_form(self.relations) == hermite_form(other.relations))

    def __hash__(self) -> int:
        return hash((self.ambient_rank, hermite_form(self.relations)))

    def canonical_form(self) -> CanonicalForm:
        """Free rank and invariant factors > 1, in divisibility order."""
        diag = smith_normal_form(self.relations).diagonal()
        rank = sum(1 for d in diag if d != 0)
        return (self.ambient_rank - rank, tuple(d for d in diag if d > 1))

    def canonical_string(self) -> str:
        return format_canonical(self.canonical_form())

    def order(self) -> int | None:
        """Number of elements, or None when the group is infinite."""
        rank, factors = self.canonical_form()
        if rank:
            return None
        result = 1
        for d in factors:
            result *= d
        return result

    def is_trivial(self) -> bool:
        return self.canonical_form() == (0, ())

    def free_rank(self) -> int:
        return self.canonical_form()[0]

    # -- subgroups ------------------------------------------------------

    def subgroup(self, generators: IntMatrix | Sequence[Sequence[int]]) -> Subgroup:
        if not isinstance(generators, IntMatrix):
            generators = IntMatrix.from_columns(generators, rows=self.ambient_rank)
        return Subgroup(self, generators)

    def zero_subgroup(self) -> Subgroup:
        return self.subgroup(IntMatrix.zeros(self.ambient_rank, 0))

    def full_subgroup(self) -> Subgroup:
        return self.subgroup(IntMatrix.identity(self.ambient_rank))

    def contains_vector(self, vector: Sequence[int]) -> bool:
        """Whether the class of ``vector`` is zero, i.e. lies in the relations."""
        return solve_integral(self.relations, vector) is not None

    # -- constructions ----------------------------------------------------

    def quotient(self, sub: Subgroup) -> tuple[FgAbGroup, Homomorphism]:
        """Quotient by a subgroup, with the projection homomorphism."""
        if sub.ambient != self:
            raise AmbientMismatchError("subgroup lives in a different ambient group")
        quot = FgAbGroup(self.ambient_rank, self.relations.hstack(sub.generators))
        proj = Homomorphism(self, quot, IntMatrix.identity(self.ambient_rank))
        return quot, proj

    def direct_sum(self, other: FgAbGroup) -> FgAbGroup:
        return FgAbGroup(self.ambient_rank + other.ambient_rank,
                         block_diagonal([self.relations, other.relations]))

    def index_of(self, sub: Subgroup) -> int | None:
        """Index [G : S], or None when infinite."""
        if sub.ambient != self:
            raise AmbientMismatchError("subgroup lives in a different ambient group")
        return self.quotient(sub)[0].order()

    def coset_representatives(self, sub: Subgroup) -> list[tuple[int, ...]]:
        """One ambient vector per coset of a finite-index subgroup."""
        if sub.ambient != self:
            raise AmbientMismatchError("subgroup lives in a different ambient group")
        dec = smith_normal_form(sub.span_matrix())
        diag = dec.diagonal()
        if len(diag) < self.ambient_rank or any(d == 0 for d in diag):
            raise ValueError("subgroup has infinite index; no finite transversal")
        uinv = unimodular_inverse(dec.u)
        reps = []
        for combo in itertools.product(*(range(d) for d in diag)):
            reps.append(uinv.apply(combo))
        return reps

    def __str__(self) -> str:
        return self.canonical_string()


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of an FgAbGroup, generated by columns in ambient coordinates."""

    ambient: FgAbGroup
    generators: IntMatrix

    def __post_init__(self):
        if self.generators.rows != self.ambient.ambient_rank:
            raise ValueError("generator columns must live in the ambient Z^n")

    def span_matrix(self) -> IntMatrix:
        """Generators together with the ambient relations: the full lattice."""
        return self.generators.hstack(self.ambient.relations)

    def hermite_span(self) -> IntMatrix:
        return hermite_form(self.span_matrix())

    # Equality is equality of lattices [generators | relations].
    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.ambient == other.ambient and self.hermite_span() == other.hermite_span()

    def __hash__(self) -> int:
        return hash((self.ambient, self.hermite_span()))

    def contains_vector(self, vector: Sequence[int]) -> bool:
        return solve_integral(self.span_matrix(), vector) is not None

    def contains(self, other: Subgroup) -> bool:
        if other.ambient != self.ambient:
            raise AmbientMismatchError("subgroups live in different ambient groups")
        return all(self.contains_vector(c) for c in other.generators.columns())

    def sum(self, other: Subgroup) -> Subgroup:
        if other.ambient != self.ambient:
            raise AmbientMismatchError("subgroups live in different ambient groups")
        return Subgroup(self.ambient, self.generators.hstack(other.generators))

    def intersection(self, other: Subgroup) -> Subgroup:
        """Exact lattice intersection via the kernel of the difference map."""
        if other.ambient != self.ambient:
            raise AmbientMismatchError("subgroups live in different ambient groups")
        a = self.span_matrix()
        b = other.span_matrix()
        ker = integer_kernel(a.hstack(-b))
        gens = [a.apply(col[: a.cols]) for col in ker.columns()]
        return Subgroup(self.ambient, IntMatrix.from_columns(gens, rows=a.rows))

    def as_group(self) -> FgAbGroup:
        """The subgroup as an abstract group (its own presentation)."""
        basis = self.hermite_span()
        cols = []
        for rel in self.ambient.relations.columns():
            x = solve_integral(basis, rel)
            cols.append(x)
        return FgAbGroup(basis.cols, IntMatrix.from_columns(cols, rows=basis.cols))

    def embedding(self) -> tuple[FgAbGroup, Homomorphism]:
        """The abstract group together with its inclusion into the ambient."""
        group = self.as_group()
        return group, Homomorphism(group, self.ambient, self.hermite_span())

    def canonical_form(self) -> CanonicalForm:
        return self.as_group().canonical_form()

    def __str__(self) -> str:
        return f"subgroup {format_canonical(self.canonical_form())} of {self.ambient}"


@dataclass(frozen=True)
class Homomorphism:
    """Group homomorphism given by an integer matrix on ambient coordinates."""

    source: FgAbGroup
    target: FgAbGroup
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.rows != self.target.ambient_rank:
            raise ValueError("matrix row count must equal target ambient rank")
        if self.matrix.cols != self.source.ambient_rank:
            raise ValueError("matrix column count must equal source ambient rank")
        for col in self.source.relations.columns():
            image = self.matrix.apply(col)
            if solve_integral(self.target.relations, image) is None:
                raise IllDefinedHomomorphismError(
                    "matrix does not send source relations into target relations")

    @staticmethod
    def identity(group: FgAbGroup) -> Homomorphism:
        return Homomorphism(group, group, IntMatrix.identity(group.ambient_rank))

    def __call__(self, vector: Sequence[int]) -> tuple[int, ...]:
        return self.matrix.apply(vector)

    def compose(self, inner: Homomorphism) -> Homomorphism:
        """self after inner."""
        if inner.target != self.source:
            raise AmbientMismatchError("composition requires matching middle group")
        return Homomorphism(inner.source, self.target, self.matrix @ inner.matrix)

    def kernel(self) -> Subgroup:
        stacked = self.matrix.hstack(self.target.relations)
        ker = integer_kernel(stacked)
        n = self.source.ambient_rank
        gens = [col[:n] for col in ker.columns()]
        return Subgroup(self.source, IntMatrix.from_columns(gens, rows=n))

    def image(self) -> Subgroup:
        return Subgroup(self.target, self.matrix)

    def cokernel(self) -> FgAbGroup:
        return FgAbGroup(self.target.ambient_rank,
                         self.matrix.hstack(self.target.relations))

    def preimage(self, sub: Subgroup) -> Subgroup:
        if sub.ambient != self.target:
            raise AmbientMismatchError("subgroup must live in the target group")
        stacked = self.matrix.hstack(sub.span_matrix())
        ker = integer_kernel(stacked)
        n = self.source.ambient_rank
        gens = [col[:n] for col in ker.columns()]
        return Subgroup(self.source, IntMatrix.from_columns(gens, rows=n))

    def is_injective(self) -> bool:
        return self.kernel() == self.source.zero_subgroup()

    def is_surjective(self) -> bool:
        return self.image() == self.target.full_subgroup()

    def equal_as_maps(self, other: Homomorphism) -> bool:
        """Whether the two maps agree on every group element."""
        if self.source != other.source or self.target != other.target:
            return False
        diff = self.matrix - other.matrix
        return all(self.target.contains_vector(col) for col in diff.columns())
