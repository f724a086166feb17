"""Pseudo-lattices in a real quadratic field and their endomorphism orders."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm

from .errors import DependentGeneratorsError, FieldMismatchError, InvariantError
from .quadratic import QuadraticIrrational, _is_squarefree

__all__ = [
    "QuadraticOrder",
    "PseudoLattice",
    "endomorphism_ring",
    "normalize_pseudolattice",
    "companion_tori",
]

Generator = Fraction | QuadraticIrrational


@dataclass(frozen=True)
class QuadraticOrder:
    """The order Z + f*O_k of conductor f in the real quadratic field Q(sqrt(D))."""

    D: int
    f: int

    def __post_init__(self):
        if self.D <= 1 or not _is_squarefree(self.D):
            raise ValueError(f"D must be squarefree and > 1, got {self.D}")
        if self.f < 1:
            raise ValueError(f"conductor must be >= 1, got {self.f}")

    @property
    def field_discriminant(self) -> int:
        return self.D if self.D % 4 == 1 else 4 * self.D

    @property
    def discriminant(self) -> int:
        return self.f * self.f * self.field_discriminant

    def __str__(self) -> str:
        return f"Z + {self.f}*O_Q(sqrt({self.D}))" if self.f > 1 else f"O_Q(sqrt({self.D}))"


def _as_pair(value: Generator | int, D: int | None) -> tuple[Fraction, Fraction, int | None]:
    """Coordinates (u, v) of a field element u + v*sqrt(D); checks the field tag."""
    if isinstance(value, QuadraticIrrational):
        if D is not None and value.D != D:
            raise FieldMismatchError(f"generator in Q(sqrt({value.D})), expected Q(sqrt({D}))")
        return Fraction(value.a, value.c), Fraction(value.b, value.c), value.D
    return Fraction(value), Fraction(0), D


def _from_pair(u: Fraction, v: Fraction, D: int | None) -> Generator:
    if v == 0:
        return u
    den = lcm(u.denominator, v.denominator)
    return QuadraticIrrational.canonical(
        int(u * den), int(v * den), den, D
    )


def _div_pairs(u1, v1, u2, v2, D) -> tuple[Fraction, Fraction]:
    norm = u2 * u2 - v2 * v2 * D
    if norm == 0:
        raise ZeroDivisionError("division by zero field element")
    return (u1 * u2 - v1 * v2 * D) / norm, (v1 * u2 - u1 * v2) / norm


@dataclass(frozen=True)
class PseudoLattice:
    """Finitely generated subgroup of R spanned by generators in one field.

    Generators are recorded in order; by convention generator 0 is 1.  The
    recorded generators must be Z-linearly independent, which for elements of
    a single quadratic field caps the rank at 2.
    """

    generators: tuple[Generator, ...]

    def __post_init__(self):
        if not self.generators:
            raise ValueError("a pseudo-lattice needs at least one generator")
        D = None
        coords = []
        for g in self.generators:
            u, v, D = _as_pair(g, D)
            coords.append((u, v))
        rank = _coord_rank(coords)
        if rank != len(coords):
            raise DependentGeneratorsError(
                f"generators {self.generators} are Z-linearly dependent "
                f"(rank {rank} < {len(coords)})"
            )
        object.__setattr__(self, "_D", D)

    @property
    def D(self) -> int | None:
        """Radicand of the field the generators live in; None if all rational."""
        return self._D

    @property
    def rank(self) -> int:
        return len(self.generators)


def _coord_rank(coords: list[tuple[Fraction, Fraction]]) -> int:
    """Rank over Q of vectors in Q^2 (Z-independence equals Q-independence here)."""
    if len(coords) > 2:
        return 2 if _coord_rank(coords[:2]) == 2 else _coord_rank(coords[1:])
    if len(coords) == 1:
        return 0 if coords[0] == (0, 0) else 1
    (u1, v1), (u2, v2) = coords
    if u1 * v2 - u2 * v1 != 0:
        return 2
    return _coord_rank([coords[0]]) or _coord_rank([coords[1]])


def normalize_pseudolattice(gens) -> PseudoLattice:
    """Scale the generators so the leading one becomes 1.

    Every generator is divided exactly by the leading generator, which makes
    the result invariant under scaling the whole family by any nonzero field
    element and idempotent on already-normalized input.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("no generators given")
    D = None
    coords = []
    for g in gens:
        u, v, D = _as_pair(g, D)
        coords.append((u, v))
    u0, v0 = coords[0]
    if (u0, v0) == (0, 0):
        raise ZeroDivisionError("leading generator is zero, cannot scale by it")
    D_eff = D if D is not None else 2  # D unused when every v is zero
    scaled = [_div_pairs(u, v, u0, v0, D_eff) for u, v in coords]
    return PseudoLattice(tuple(_from_pair(u, v, D) for u, v in scaled))


def endomorphism_ring(theta: QuadraticIrrational) -> QuadraticOrder:
    """The order End(Z + theta*Z), read off the minimal polynomial of theta.

    The discriminant of the primitive minimal polynomial factors as
    f**2 * d_K, which pins down the conductor.
    """
    disc = theta.discriminant()
    d_K = theta.D if theta.D % 4 == 1 else 4 * theta.D
    f2, rem = divmod(disc, d_K)
    if rem:
        raise InvariantError(f"discriminant {disc} is not a multiple of d_K = {d_K}")
    f = isqrt(f2)
    if f * f != f2:
        raise InvariantError(f"discriminant ratio {f2} is not a perfect square")
    return QuadraticOrder(theta.D, f)


def companion_tori(order: QuadraticOrder) -> list[QuadraticIrrational]:
    """One quadratic irrational per ideal class of the order.

    Each companion is the larger root (-b + sqrt(disc))/(2a) of the
    lexicographically least reduced form (a, b, c) with a > 0 in its class,
    so all companions share the endomorphism order and are pairwise
    inequivalent under GL(2, Z).  Ordered by the (a, b) of the chosen form.
    """
    from . import classgroup  # deferred: classgroup imports QuadraticOrder from here

    disc = order.discriminant
    reps = []
    for forms in classgroup._wide_class_forms(disc):
        a, b, _ = min(f for f in forms if f[0] > 0)
        reps.append((a, b))
    out = []
    for a, b in sorted(reps):
        out.append(QuadraticIrrational.canonical(-b, 1, 2 * a, disc))
    return out
