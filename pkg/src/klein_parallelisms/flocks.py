"""General linear complexes, linear flocks, and parallel classes in PG(3).

A point p of PG(5) off the Klein quadric determines a general linear complex
G(p): the lines of PG(3) whose quadric images are B-conjugate to p.  An
external plane eps through p splits G(p) into a linear flock: the regular
spreads indexed by the pencil of 0-secants with vertex p in eps, each spread
being the preimage of the elliptic section cut by the polar solid of its
pencil line.

For a pencilled hfd descriptor, the parallel class of a line of PG(3) is
found by intersecting the tangent hyperplane at its quadric image with the
assigned carrier plane; the non-Clifford case also carries a distinguished
class, the spread of the common line D.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .hfd import (
    COLLINEAR_VERTICES,
    HfdDescriptor,
    classify,
    line_in_tangent_hyperplane,
)
from .klein import (
    is_external_plane,
    on_quadric,
    pencil_plane,
    plucker_embed,
    plucker_point,
    polar,
    polar_value,
)
from .projspace import (
    LineParam,
    ProjSubspace,
    incident,
    meet,
    point_at,
    random_point,
    span,
)
from .spreads import SecantSpread, spread_contains_line, spread_from_secant


class SpecialComplex(ValueError):
    """The pole lies on the quadric; only general complexes are supported."""


class NotInComplex(ValueError):
    pass


class CliffordCase(ValueError):
    """A plane-of-lines descriptor has no distinguished line."""


@dataclass(frozen=True)
class LinearComplexRef:
    pole: ProjSubspace  # point of PG(5) off the quadric

    def __post_init__(self):
        if not self.pole.is_point() or self.pole.n != 5:
            raise ValueError("the pole must be a point of PG(5)")
        if on_quadric(self.pole):
            raise SpecialComplex("the pole lies on the Klein quadric")


@dataclass(frozen=True)
class LinearFlockRef:
    pole: ProjSubspace
    carrier: ProjSubspace  # external plane through the pole

    def __post_init__(self):
        LinearComplexRef(self.pole)  # reuse the pole checks
        if not self.carrier.is_plane() or self.carrier.n != 5:
            raise ValueError("the carrier must be a plane of PG(5)")
        if not incident(self.pole, self.carrier):
            raise ValueError("the pole must lie in the carrier plane")


def complex_contains(c: LinearComplexRef, line3: ProjSubspace) -> bool:
    """Line membership in G(p): one bilinear evaluation."""
    x = plucker_embed(line3)
    return not polar_value(line3.field, x, c.pole.vector())


def sample_complex_line(c: LinearComplexRef, rng) -> ProjSubspace:
    """A random line of G(p), found exactly.

    The image plane of the line star at a random PG(3) point always meets
    the hyperplane polar(p); any point of that cut is a quadric point whose
    preimage belongs to the complex.
    """
    from .projspace import whole_space
    from .klein import line_from_plucker

    field = c.pole.field
    hyp = polar(c.pole)
    amb3 = whole_space(field, 3)
    while True:
        mu = pencil_plane(random_point(amb3, rng))
        cut = meet(mu, hyp)
        if cut.is_empty():
            continue
        if cut.is_point():
            x = cut
        else:
            line = ProjSubspace.from_vectors(field, 5, cut.rows[:2])
            x = point_at(
                LineParam(line, field.random_scalar(rng), field.random_nonzero(rng))
            )
        return line_from_plucker(field, x.vector())


def flock_spread_through(fl: LinearFlockRef, line3: ProjSubspace):
    """The unique flock member through a line of G(p).

    Returns (X, spread): X is the pencil line (vertex p, in the carrier)
    whose spread contains the given line.
    """
    x = plucker_embed(line3)
    field = line3.field
    if polar_value(field, x, fl.pole.vector()):
        raise NotInComplex("the line is not in the complex of the pole")
    pol_eps = polar(fl.carrier)
    xp = plucker_point(line3)
    if incident(xp, pol_eps):
        raise AssertionError(
            "a quadric point landed on the polar of an external plane"
        )
    solid = span(pol_eps, xp)
    if solid.dim != 3:
        raise AssertionError("pencil solid construction failed")
    X = polar(solid)
    if not X.is_line() or not incident(fl.pole, X) or not incident(X, fl.carrier):
        raise AssertionError("the pencil member failed its incidences")
    spread = spread_from_secant(X)
    if not spread_contains_line(spread, line3):
        raise AssertionError("the claimed flock member misses the line")
    return X, spread


def distinguished_class(
    d: HfdDescriptor, rng=None, vertex_samples: int = 10, line_samples: int = 100
) -> SecantSpread:
    """The spread of the distinguished line D, with the intersection check.

    Sampled lines of the spread must lie in the complex of every sampled
    vertex of D, and conversely sampled lines from the intersection of those
    complexes must belong to the spread.
    """
    rng = rng or random.Random(0)
    result = classify(d)
    if result.case != COLLINEAR_VERTICES:
        raise CliffordCase("a plane of lines has no distinguished line")
    spread = spread_from_secant(d.D)
    field = d.field
    from .projspace import whole_space

    vertices = []
    one, zero = field.one(), field.zero()
    sweep = [(one, zero), (zero, one)]
    k = 1
    while len(sweep) < vertex_samples:
        sweep.append((one, field.from_int(k)))
        k += 1
    for t0, t1 in sweep[:vertex_samples]:
        if not (t0 or t1):
            continue
        vertices.append(point_at(LineParam(d.D, t0, t1)))

    amb3 = whole_space(field, 3)
    for k in range(line_samples):
        p3 = random_point(amb3, rng)
        from .spreads import spread_line_through

        line3 = spread_line_through(spread, p3)
        x = plucker_embed(line3)
        for v in vertices:
            if polar_value(field, x, v.vector()):
                raise AssertionError(
                    "a spread line escaped the complex of a vertex of D"
                )
    # converse: sample quadric points of the solid polar(D) independently,
    # through secant lines of the solid, and check their lines are members
    solid = spread.solid
    from .klein import line_quadric_points, line_from_plucker

    found = 0
    while found < line_samples:
        a = random_point(solid, rng)
        b = random_point(solid, rng)
        if a == b:
            continue
        chord = span(a, b)
        if not chord.is_line():
            continue
        points, contained = line_quadric_points(chord)
        if contained:
            raise AssertionError("the elliptic section contains no lines")
        for x in points:
            line3 = line_from_plucker(field, x.vector())
            if not spread_contains_line(spread, line3):
                raise AssertionError(
                    "a line of the intersection of the complexes escaped the spread"
                )
            found += 1
    return spread


def parallelism_from_hfd(d: HfdDescriptor, line3: ProjSubspace) -> SecantSpread:
    """The parallel class of a PG(3) line under the descriptor's parallelism.

    The tangent hyperplane at the line's quadric image contains exactly one
    member line G; the class is the spread of G, and it contains the input
    line by construction (G lies in that tangent hyperplane).
    """
    x = plucker_point(line3)
    tau = polar(x)
    g = line_in_tangent_hyperplane(d, tau)
    spread = spread_from_secant(g)
    if not spread_contains_line(spread, line3):
        raise AssertionError("the parallel class misses its defining line")
    return spread
