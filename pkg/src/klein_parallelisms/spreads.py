"""Regular spreads of PG(3,K) and their quadric-side images.

A regular spread is handled through one of two finite descriptions:

  * coset form: the lines {c * L} (or {L * c}) for a quadratic subfield L of
    a four-dimensional division algebra H, with the algebra as the underlying
    vector space of PG(3);
  * secant form: a 0-secant line G of the Klein quadric in PG(5); the spread
    consists of the preimages of the points of the elliptic section cut out
    of H5 by the solid polar(G).

`gamma` sends a spread to its 0-secant (the polar of the solid spanned by
the image of the spread), and the secant form inverts it.  Partition claims
are verified by seeded sampling with independent membership rechecks, never
assumed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebras import AlgebraH, SubfieldL, intermediate_field, is_separable_quadratic
from .fields import Field
from .klein import (
    SECANT_0,
    classify_line,
    is_external_plane,
    klein_form,
    pencil_plane,
    plucker_embed,
    plucker_point,
    polar,
    polar_value,
)
from .projspace import (
    ProjSubspace,
    incident,
    meet,
    random_line,
    random_point,
    span,
    whole_space,
)


class SpanDeficient(RuntimeError):
    """The sampled spread lines failed to span a solid."""


class NotZeroSecant(ValueError):
    pass


class PartitionViolation(AssertionError):
    """A sampled point or line broke the partition property."""


class VerificationFailed(AssertionError):
    """A construction failed its own postcondition checks."""


# ---------------------------------------------------------------------------
# descriptors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CosetSpread:
    algebra: AlgebraH
    subfield: SubfieldL
    side: str = "left"

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")

    @property
    def field(self) -> Field:
        return self.algebra.field

    def line_at(self, c) -> ProjSubspace:
        """The spread line through the point with coordinate vector c."""
        alg = self.algebra
        c = alg.coerce(c)
        x = self.subfield.gen
        other = alg.mul(c, x) if self.side == "left" else alg.mul(x, c)
        line = ProjSubspace.from_vectors(alg.field, 3, [c, other])
        if not line.is_line():
            raise PartitionViolation(
                "coset collapsed to a point; the algebra is not division"
            )
        return line


@dataclass(frozen=True)
class SecantSpread:
    line: ProjSubspace  # the 0-secant G in PG(5)
    solid: ProjSubspace  # polar(G)

    @property
    def field(self) -> Field:
        return self.line.field


@dataclass(frozen=True)
class CliffordParallelism:
    algebra: AlgebraH
    side: str = "left"


@dataclass(frozen=True)
class HfdParallelism:
    descriptor: object  # hfd.HfdDescriptor


def coset_spread(algebra: AlgebraH, x, side: str = "left") -> CosetSpread:
    """The spread of cosets of the subfield generated by x."""
    return CosetSpread(algebra, intermediate_field(algebra, x), side)


def spread_from_secant(g: ProjSubspace) -> SecantSpread:
    if classify_line(g) != SECANT_0:
        raise NotZeroSecant("the line meets the Klein quadric")
    return SecantSpread(g, polar(g))


# ---------------------------------------------------------------------------
# lines of a spread
# ---------------------------------------------------------------------------

def _secant_point_through(spread: SecantSpread, p: ProjSubspace) -> ProjSubspace:
    """The quadric point of the spread's elliptic section above a PG(3) point."""
    mu = pencil_plane(p)
    cut = meet(mu, spread.solid)
    if not cut.is_point():
        raise PartitionViolation(
            f"pencil image meets the solid in dimension {cut.dim}, expected a point"
        )
    return cut


def spread_line_through(spread, p: ProjSubspace) -> ProjSubspace:
    """The unique spread line through a point of PG(3)."""
    if isinstance(spread, CosetSpread):
        return spread.line_at(p.vector())
    from .klein import line_from_plucker

    cut = _secant_point_through(spread, p)
    return line_from_plucker(spread.field, cut.vector())


def _translate_to_unit(algebra: AlgebraH, line3: ProjSubspace, side: str):
    """The coset representative through 1: w1^{-1} * W as span(1, x).

    Projectively w1^{-1} is conj(w1) (they differ by the scalar norm), so no
    division is needed; returns None when the first basis vector has zero
    norm, which cannot happen in a division algebra.
    """
    w1, w2 = line3.rows
    if not algebra.norm(w1):
        return None
    c = algebra.conj(w1)
    x = algebra.mul(c, w2) if side == "left" else algebra.mul(w2, c)
    return ProjSubspace.from_vectors(algebra.field, 3, [algebra.one(), x]), x


def spread_contains_line(spread, line3: ProjSubspace) -> bool:
    """Exact spread membership for a line of PG(3)."""
    if isinstance(spread, CosetSpread):
        translated = _translate_to_unit(spread.algebra, line3, spread.side)
        if translated is None:
            return False
        return translated[0] == spread.subfield.as_subspace()
    x = plucker_embed(line3)
    return not any(polar_value(spread.field, x, g) for g in spread.line.rows)


# ---------------------------------------------------------------------------
# gamma and its inverse
# ---------------------------------------------------------------------------

def _spanning_candidates(field: Field, rng):
    one, zero = field.one(), field.zero()
    fixed = [
        (one, zero, zero, zero),
        (zero, one, zero, zero),
        (zero, zero, one, zero),
        (zero, zero, zero, one),
        (one, one, zero, zero),
        (one, zero, one, zero),
        (one, zero, zero, one),
        (zero, one, one, zero),
        (one, one, one, zero),
        (one, one, one, one),
    ]
    yield from fixed
    amb = whole_space(field, 3)
    for _ in range(20):
        yield random_point(amb, rng).vector()


def image_solid(spread, rng=None) -> ProjSubspace:
    """The solid spanned by the quadric image of a regular spread."""
    rng = rng or random.Random(0)
    field = spread.field
    points = []
    current = None
    for c in _spanning_candidates(field, rng):
        if isinstance(spread, CosetSpread):
            # pluecker coordinates straight from the coset pair (c, c*x)
            alg = spread.algebra
            x = spread.subfield.gen
            other = alg.mul(c, x) if spread.side == "left" else alg.mul(x, c)
            from .klein import plucker_from_pair

            pt = ProjSubspace.point(field, plucker_from_pair(field, c, other))
        else:
            pt = _secant_point_through(spread, ProjSubspace.point(field, c))
        points.append(pt)
        current = span(*points)
        if current.dim == 3:
            break
    if current is None or current.dim != 3:
        raise SpanDeficient("spread image did not span a solid")
    return current


def gamma(spread, rng=None) -> ProjSubspace:
    """The 0-secant of a regular spread: polar of the span of its image."""
    g = polar(image_solid(spread, rng))
    if classify_line(g) != SECANT_0:
        raise SpanDeficient("polar of the spanned solid is not a 0-secant")
    return g


# ---------------------------------------------------------------------------
# Clifford parallelisms
# ---------------------------------------------------------------------------

def clifford_class(algebra: AlgebraH, side: str, line3: ProjSubspace) -> CosetSpread:
    """The parallel class of a line, as a coset spread."""
    translated = _translate_to_unit(algebra, line3, side)
    if translated is None:
        raise VerificationFailed("zero-norm basis vector; the algebra is not division")
    sub, _ = translated
    # the canonical basis row off the centre is the tidiest generator
    return CosetSpread(algebra, intermediate_field(algebra, sub.rows[1]), side)


def clifford_hfd_plane(
    algebra: AlgebraH, side: str = "left", rng=None, samples: int = 50
) -> ProjSubspace:
    """The plane of PG(5) whose lines are the gamma-images of the classes.

    Built from three fixed classes, verified external, then checked against
    the images of `samples` random classes.
    """
    rng = rng or random.Random(0)
    field = algebra.field
    zero, one = field.zero(), field.one()
    gens = [
        (zero, one, zero, zero),
        (zero, zero, one, zero),
        (zero, one, one, zero),
    ]
    images = [gamma(coset_spread(algebra, g, side), rng) for g in gens]
    plane = span(images[0], images[1])
    if not plane.is_plane():
        raise VerificationFailed("two class images did not span a plane")
    if not incident(images[2], plane):
        raise VerificationFailed("a third class image left the plane")
    try:
        if not is_external_plane(plane):
            raise VerificationFailed("the class-image plane meets the quadric")
    except VerificationFailed:
        raise
    except Exception as exc:  # undecided externality is a failure here
        raise VerificationFailed(f"externality check failed: {exc}") from exc
    # gamma(class) lies in the plane iff the image solid contains the
    # plane's polar; that avoids a polarity computation per sample
    polar_plane = polar(plane)
    for _ in range(samples):
        line3 = random_line(field, 3, rng)
        cls = clifford_class(algebra, side, line3)
        if not incident(polar_plane, image_solid(cls, rng)):
            raise VerificationFailed("a sampled class image left the plane")
    return plane


# ---------------------------------------------------------------------------
# partition verification
# ---------------------------------------------------------------------------

def verify_partition(obj, samples: int, seed: int, strict: bool = True) -> dict:
    """Sampled partition check; returns {checked, failures, seed}.

    Spreads: random points must lie on exactly one spread line.  Clifford or
    hfd parallelisms: random lines must lie in exactly one parallel class.
    With strict=True the first violation raises PartitionViolation.
    """
    rng = random.Random(seed)
    failures: list[str] = []

    def fail(msg):
        if strict:
            raise PartitionViolation(msg)
        failures.append(msg)

    if isinstance(obj, (CosetSpread, SecantSpread)):
        field = obj.field
        amb = whole_space(field, 3)
        seen: list[ProjSubspace] = []
        for k in range(samples):
            p = random_point(amb, rng)
            try:
                line3 = spread_line_through(obj, p)
            except PartitionViolation as exc:
                fail(f"sample {k}: {exc}")
                continue
            if not incident(p, line3):
                fail(f"sample {k}: point off its own spread line")
                continue
            if not spread_contains_line(obj, line3):
                fail(f"sample {k}: returned line fails the membership recheck")
                continue
            for other in seen:
                if other != line3 and incident(p, other):
                    fail(f"sample {k}: point on two distinct spread lines")
            seen.append(line3)
            if len(seen) > 6:
                seen.pop(0)
        return {"checked": samples, "failures": failures, "seed": seed}

    if isinstance(obj, CliffordParallelism):
        field = obj.algebra.field

        def class_of(line3):
            return clifford_class(obj.algebra, obj.side, line3)

        def contains(cls, line3):
            return spread_contains_line(cls, line3)

        def same_class(c1, c2):
            return c1.subfield.as_subspace() == c2.subfield.as_subspace()

    elif isinstance(obj, HfdParallelism):
        from .flocks import parallelism_from_hfd

        field = obj.descriptor.D.field

        def class_of(line3):
            return parallelism_from_hfd(obj.descriptor, line3)

        def contains(cls, line3):
            return spread_contains_line(cls, line3)

        def same_class(c1, c2):
            return c1.line == c2.line

    else:
        raise TypeError(f"cannot verify {type(obj).__name__}")

    seen = []
    for k in range(samples):
        line3 = random_line(field, 3, rng)
        cls = class_of(line3)
        if not contains(cls, line3):
            fail(f"sample {k}: line missing from its own parallel class")
            continue
        for other in seen:
            if not same_class(other, cls) and contains(other, line3):
                fail(f"sample {k}: line lies in two distinct classes")
        seen.append(cls)
        if len(seen) > 6:
            seen.pop(0)
    return {"checked": samples, "failures": failures, "seed": seed}


# ---------------------------------------------------------------------------
# the Galois criterion
# ---------------------------------------------------------------------------

def galois_criterion_check(spread: CosetSpread, rng=None) -> bool:
    """Agreement of the algebraic and geometric Galois criteria.

    K(x)/K is a Galois extension exactly when the spread's 0-secant G is
    skew to its polar solid S; since G = polar(S) and the polarity is an
    involution, G cut with polar(G) equals S cut with polar(S), which the
    restricted Gram radical computes without leaving S.
    """
    from .klein import radical_in

    solid = image_solid(spread, rng)
    separable = is_separable_quadratic(spread.subfield)
    skew = radical_in(solid).is_empty()
    return separable == skew
