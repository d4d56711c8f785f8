"""The Klein correspondence and the quadric-side geometry.

Lines of PG(3,K) map to points of the quadric H5 in PG(5,K) via their
Pluecker coordinates (p01, p02, p03, p12, p13, p23).  With that ordering the
quadric is

    Q(p) = p01*p23 - p02*p13 + p03*p12,

whose polarisation B is nondegenerate in every characteristic and alternating
in characteristic 2.  The polarity of PG(5) induced by B is `polar` below.

Two lines of PG(3) meet iff their images are B-conjugate; a line of PG(5) is
classified by how the restricted binary form vanishes on it; a plane is
external when the restricted ternary form is anisotropic.  Over F2(s,t) the
ternary decision is certificate-driven: a plane on which B vanishes and whose
diagonal values fall into pairwise distinct exponent-parity classes cannot
meet the quadric, because the three groups of monomials can never cancel.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .fields import F2RationalFunctions, Field, PrimeField
from .projspace import (
    LineParam,
    ProjSubspace,
    incident,
    kernel,
    meet,
    point_at,
    random_point,
    span,
    whole_space,
)
from .quadforms import (
    QuadraticForm,
    binary_anisotropic,
    restrict_form,
    ternary_isotropic,
)

PLUCKER_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))

SECANT_0 = "secant_0"
SECANT_1_TANGENT = "secant_1_tangent"
SECANT_2 = "secant_2"
CONTAINED = "contained_in_H5"

SKEW = "skew"
MEETS_IN_POINT = "meets_in_point"
SELF_POLAR = "self_polar"


class NotALine(ValueError):
    pass


class NotOnQuadric(ValueError):
    pass


class SearchExhausted(RuntimeError):
    pass


class CentreOnQuadric(ValueError):
    pass


class NotExternal(ValueError):
    pass


class FiniteFieldError(ValueError):
    """The construction needs an infinite ground field."""


class UndecidedWithoutCertificate(RuntimeError):
    """F2(s,t) externality left open: no certificate and no zero found."""


class UndecidableSecancy(RuntimeError):
    """Line classification over F2(s,t) hit the open Artin-Schreier case."""


class PolarTypeUndefined(RuntimeError):
    """A plane met its polar in a line; outside the contract's three classes."""


class UnsupportedDimension(ValueError):
    pass


@dataclass(frozen=True)
class AnisotropyCertificate:
    """Names the anisotropy proof for an F2(s,t) plane.

    kind 'diagonal_parity': the plane must carry an identically zero polar
    form and diagonal values in pairwise distinct exponent-parity classes.
    The certificate is verified, never trusted.
    """

    kind: str = "diagonal_parity"


# ---------------------------------------------------------------------------
# the quadric
# ---------------------------------------------------------------------------

def klein_form(field: Field) -> QuadraticForm:
    one = field.one()
    zero = field.zero()
    coeffs = [[zero] * 6 for _ in range(6)]
    coeffs[0][5] = one
    coeffs[1][4] = -one
    coeffs[2][3] = one
    return QuadraticForm.from_upper(field, coeffs)


def quadric_value(field: Field, p):
    p = field.vec(p)
    return p[0] * p[5] - p[1] * p[4] + p[2] * p[3]


def polar_value(field: Field, x, y):
    x = field.vec(x)
    y = field.vec(y)
    return (
        x[0] * y[5] + x[5] * y[0]
        - x[1] * y[4] - x[4] * y[1]
        + x[2] * y[3] + x[3] * y[2]
    )


def on_quadric(point: ProjSubspace) -> bool:
    return not quadric_value(point.field, point.vector())


# ---------------------------------------------------------------------------
# the correspondence
# ---------------------------------------------------------------------------

def plucker_from_pair(field: Field, x, y):
    """Pluecker coordinates from any two spanning vectors of a line.

    The result only changes by a scalar when the basis changes, so callers
    may pass uncanonicalised vectors (which keeps F2(s,t) entries small).
    """
    x = field.vec(x)
    y = field.vec(y)
    p = tuple(x[i] * y[j] - x[j] * y[i] for i, j in PLUCKER_PAIRS)
    if not any(p):
        raise NotALine("the two vectors do not span a line")
    return p


def plucker_embed(line3: ProjSubspace):
    """Pluecker coordinate vector of a line of PG(3)."""
    if line3.n != 3 or not line3.is_line():
        raise NotALine(f"expected a line of PG(3), got dim {line3.dim} in PG({line3.n})")
    return plucker_from_pair(line3.field, *line3.rows)


def plucker_point(line3: ProjSubspace) -> ProjSubspace:
    return ProjSubspace.point(line3.field, plucker_embed(line3))


def line_from_plucker(field: Field, p) -> ProjSubspace:
    """The unique line of PG(3) with the given quadric point coordinates.

    The antisymmetric 4x4 matrix built from the coordinates has rank 2
    exactly when Q(p) = 0, and its column space is the line.
    """
    p = field.vec(p)
    if len(p) != 6 or not any(p):
        raise NotOnQuadric("need a nonzero 6-vector")
    if quadric_value(field, p):
        raise NotOnQuadric("the vector is not on the quadric")
    p01, p02, p03, p12, p13, p23 = p
    zero = field.zero()
    mat = (
        (zero, p01, p02, p03),
        (-p01, zero, p12, p13),
        (-p02, -p12, zero, p23),
        (-p03, -p13, -p23, zero),
    )
    cols = [tuple(mat[r][c] for r in range(4)) for c in range(4)]
    line = ProjSubspace.from_vectors(field, 3, [c for c in cols if any(c)])
    if not line.is_line():
        raise NotOnQuadric("rank of the coordinate matrix is not 2")
    return line


# ---------------------------------------------------------------------------
# polarity
# ---------------------------------------------------------------------------

def polar(s: ProjSubspace) -> ProjSubspace:
    """B-orthogonal subspace; dim polar(S) = 4 - dim S."""
    if s.n != 5:
        raise ValueError("the polarity lives in PG(5)")
    field = s.field
    if s.is_empty():
        return whole_space(field, 5)
    bmat_rows = [
        (r[5], -r[4], r[3], r[2], -r[1], r[0])  # row of B's Gram matrix action
        for r in s.rows
    ]
    return ProjSubspace(field, 5, tuple(kernel(field, bmat_rows, 6)))


# ---------------------------------------------------------------------------
# secancy
# ---------------------------------------------------------------------------

def line_quadric_points(g: ProjSubspace):
    """Exact intersection of a PG(5) line with H5.

    Returns (points, contained); `contained` is True when the whole line lies
    on the quadric.  Raises UndecidableSecancy when the F2(s,t) bounded
    Artin-Schreier search is inconclusive.
    """
    if g.n != 5 or not g.is_line():
        raise NotALine("expected a line of PG(5)")
    field = g.field
    form = restrict_form(klein_form(field), g)
    a, b, c = form.upper[0][0], form.upper[0][1], form.upper[1][1]
    if not a and not b and not c:
        return [], True

    params = []
    one = field.one()
    zero = field.zero()
    if field.characteristic != 2:
        if not a:
            params.append((one, zero))
            if b:
                params.append((-c / b, one))
        else:
            disc = b * b - field.from_int(4) * a * c
            sq, r = field.is_square(disc)
            if sq:
                two_a = field.from_int(2) * a
                params.append(((-b + r) / two_a, one))
                if r:
                    params.append(((-b - r) / two_a, one))
    else:
        if not b:
            # Q = a t0^2 + c t1^2 is a perfect square of a linear form
            if not a:
                params.append((one, zero))
            elif not c:
                params.append((zero, one))
            else:
                sq, r = field.is_square(c / a)
                if sq:
                    params.append((r, one))
        elif not a:
            params.append((one, zero))
            params.append((c / b, one))
        else:
            w = a * c / (b * b)
            roots = []
            if isinstance(field, PrimeField):
                roots = [u for u in field.elements() if u * u + u == w]
            else:
                from .quadforms import _artin_schreier_root

                u = _artin_schreier_root(w)
                if u is None:
                    raise UndecidableSecancy(
                        "bounded Artin-Schreier search cannot settle this line"
                    )
                roots = [u, u + one]
            params.extend((b * u / a, one) for u in roots)

    points = []
    for t0, t1 in params:
        pt = point_at(LineParam(g, t0, t1))
        if quadric_value(field, pt.vector()):
            raise AssertionError("computed root is not on the quadric")
        if pt not in points:
            points.append(pt)
    return points, False


def classify_line(g: ProjSubspace) -> str:
    points, contained = line_quadric_points(g)
    if contained:
        return CONTAINED
    return (SECANT_0, SECANT_1_TANGENT, SECANT_2)[len(points)]


# ---------------------------------------------------------------------------
# external planes
# ---------------------------------------------------------------------------

def _small_nonzero_scalars(field: Field):
    """Deterministic sweep of small nonzero scalars, per field."""
    if isinstance(field, F2RationalFunctions):
        one, s, t = field.one(), field.s(), field.t()
        return [
            one, s, t, one + s, one + t, s + t, s * t,
            one + s + t, s * s, t * t, one / s, one / t,
        ]
    if isinstance(field, PrimeField):
        return [field.from_int(k) for k in range(1, field.p)]
    return [field.from_int(k) for k in (1, -1, 2, -2, 3, -3, 4, 5, -5, 7)]


def _f2st_plane_zero_search(field, form: QuadraticForm):
    """Bounded search for a zero of the restricted ternary form."""
    small = [field.zero()] + _small_nonzero_scalars(field)
    for a in small:
        for b in small:
            for c in small:
                if not (a or b or c):
                    continue
                if not form.evaluate((a, b, c)):
                    return (a, b, c)
    return None


def _f2st_diagonal_parity_anisotropic(form: QuadraticForm) -> bool:
    """Verified parity certificate for a ternary form over F2(s,t).

    Requires B = 0 on the space (so Q is additive in coordinate squares) and
    diagonal values q0, q1, q2 that are nonzero, exponent-parity pure, and in
    pairwise distinct parity classes.  Monomial groups in distinct classes
    cannot cancel, so q0 x^2 + q1 y^2 + q2 z^2 = 0 forces x = y = z = 0.
    """
    for i in range(3):
        for j in range(i + 1, 3):
            if form.upper[i][j]:
                return False
    classes = []
    for i in range(3):
        q = form.upper[i][i]
        if not q:
            return False
        cls = (q.num * q.den).parity_classes()
        if len(cls) != 1:
            return False
        classes.append(next(iter(cls)))
    return len(set(classes)) == 3


def plane_quadric_point(eps: ProjSubspace, certificate: AnisotropyCertificate | None = None):
    """A point of eps on H5, or None if eps is (certified) external."""
    if eps.n != 5 or not eps.is_plane():
        raise ValueError("expected a plane of PG(5)")
    field = eps.field
    form = restrict_form(klein_form(field), eps)
    if isinstance(field, F2RationalFunctions):
        hit = _f2st_plane_zero_search(field, form)
        if hit is not None:
            coords = [field.zero()] * 6
            for c, row in zip(hit, eps.rows):
                if c:
                    coords = [a + c * b for a, b in zip(coords, row)]
            return ProjSubspace.point(field, coords)
        if _f2st_diagonal_parity_anisotropic(form):
            return None
        raise UndecidedWithoutCertificate(
            "bounded search found no zero and the parity certificate does not apply"
        )
    verdict = ternary_isotropic(form)
    if verdict.status == "anisotropic":
        return None
    coords = [field.zero()] * 6
    for c, row in zip(verdict.witness, eps.rows):
        if c:
            coords = [a + c * b for a, b in zip(coords, row)]
    return ProjSubspace.point(field, coords)


def is_external_plane(eps: ProjSubspace, certificate: AnisotropyCertificate | None = None) -> bool:
    """True iff the plane misses H5 entirely.

    Over Q and GF(p) this is the ternary isotropy decision.  Over F2(s,t) a
    bounded zero search runs first; externality is then certified by the
    verified parity certificate, else the question is left undecided.
    """
    field = eps.field
    if isinstance(field, F2RationalFunctions):
        form = restrict_form(klein_form(field), eps)
        if _f2st_plane_zero_search(field, form) is not None:
            return False
        if _f2st_diagonal_parity_anisotropic(form):
            return True
        raise UndecidedWithoutCertificate(
            "bounded search found no zero and the parity certificate does not apply"
        )
    return plane_quadric_point(eps) is None


# ---------------------------------------------------------------------------
# tangent hyperplanes
# ---------------------------------------------------------------------------

def pencil_plane(point3: ProjSubspace) -> ProjSubspace:
    """The plane of H5 formed by the images of all lines through a PG(3) point."""
    if point3.n != 3 or not point3.is_point():
        raise ValueError("expected a point of PG(3)")
    field = point3.field
    p = point3.vector()
    # drop one unit vector e_c with p_c != 0 so that p and the rest span PG(3)
    c = next(i for i in range(4) if p[i])
    images = []
    for i in range(4):
        if i == c:
            continue
        unit = [field.zero()] * 4
        unit[i] = field.one()
        images.append(plucker_from_pair(field, p, unit))
    plane = ProjSubspace.from_vectors(field, 5, images)
    if not plane.is_plane():
        raise AssertionError("a line pencil image must span a plane")
    return plane


def _hyperplane_through(sub: ProjSubspace) -> ProjSubspace:
    """Any hyperplane of PG(5) containing the given subspace (dim <= 3)."""
    field = sub.field
    rows = list(sub.rows)
    if len(rows) > 5:
        raise ValueError("no hyperplane contains the whole space")
    for i in range(6):
        if len(rows) == 5:
            break
        unit = [field.zero()] * 6
        unit[i] = field.one()
        extended = ProjSubspace.from_vectors(field, 5, rows + [unit])
        if extended.dim > len(rows) - 1:
            rows = list(extended.rows)
    hyp = ProjSubspace(field, 5, tuple(rows))
    if hyp.dim != 4:
        raise AssertionError("failed to extend to a hyperplane")
    return hyp


def tangent_hyperplane_containing(
    s: ProjSubspace, certificate: AnisotropyCertificate | None = None
):
    """A tangent hyperplane through S plus a witness M in S on H5.

    Returns (tau, M) with dim M >= dim S - 2, or None when no tangent
    hyperplane contains S.  The decision is exact for dim S <= 2: for a
    plane it is the externality test, and for dim S <= 1 a hyperplane
    always exists.
    """
    if s.n != 5:
        raise ValueError("expected a subspace of PG(5)")
    field = s.field
    if s.dim > 2:
        raise UnsupportedDimension("decision implemented for dim S <= 2")
    empty = ProjSubspace.empty(field, 5)

    def tangent_via_plane_of_quadric(mu: ProjSubspace, witness: ProjSubspace):
        joined = span(s, mu) if not s.is_empty() else mu
        tau = _hyperplane_through(joined)
        x = polar(tau)
        if not on_quadric(x):
            raise AssertionError("hyperplane through a quadric plane must be tangent")
        return tau, witness

    def some_quadric_plane_avoidant():
        # a plane on H5; any line pencil image will do
        e0 = ProjSubspace.point(field, field.vec((1, 0, 0, 0)))
        return pencil_plane(e0)

    if s.is_empty():
        return tangent_via_plane_of_quadric(some_quadric_plane_avoidant(), empty)

    if s.is_point():
        if on_quadric(s):
            return polar(s), s
        return tangent_via_plane_of_quadric(some_quadric_plane_avoidant(), empty)

    if s.is_line():
        points, contained = line_quadric_points(s)
        if contained:
            return polar(ProjSubspace.point(field, s.rows[0])), s
        if len(points) == 1:
            # tangent line: it lies inside the tangent hyperplane at its point
            return polar(points[0]), points[0]
        if len(points) == 2:
            mu = pencil_plane_through_quadric_point(points[0])
            return tangent_via_plane_of_quadric(mu, points[0])
        return tangent_via_plane_of_quadric(some_quadric_plane_avoidant(), empty)

    # plane: a tangent hyperplane exists iff the plane meets the quadric
    w = plane_quadric_point(s, certificate)
    if w is None:
        return None
    mu = pencil_plane_through_quadric_point(w)
    return tangent_via_plane_of_quadric(mu, w)


def pencil_plane_through_quadric_point(x: ProjSubspace) -> ProjSubspace:
    """A plane of H5 through the quadric point x."""
    if not on_quadric(x):
        raise NotOnQuadric("need a point of H5")
    line3 = line_from_plucker(x.field, x.vector())
    p3 = ProjSubspace.point(x.field, line3.rows[0])
    mu = pencil_plane(p3)
    # x is the image of a line through p3, hence lies in the pencil plane
    return mu


def tangent_through_point_avoiding(
    p: ProjSubspace, g: ProjSubspace, rng=None, budget: int = 64
) -> ProjSubspace:
    """A quadric point x with B(x, p) = 0 whose tangent hyperplane misses g.

    p must be off the quadric and on the line g.  Found by sweeping planes of
    H5 (line pencil images), cutting them with polar(p), and picking a point
    off polar(g); every output is verified exactly.
    """
    field = p.field
    if on_quadric(p):
        raise ValueError("the point must be off the quadric")
    if not incident(p, g):
        raise ValueError("the point must lie on the line")
    rng = rng or random.Random(0)
    polar_p = polar(p)
    polar_g = polar(g)
    amb3 = whole_space(field, 3)
    for _ in range(budget):
        base = random_point(amb3, rng)
        mu = pencil_plane(base)
        cut = meet(mu, polar_p)  # at least a line, entirely on H5
        if cut.is_empty():
            continue
        candidates = []
        if cut.is_point():
            candidates.append(cut)
        else:
            line = ProjSubspace.from_vectors(field, 5, cut.rows[:2])
            one, zero = field.one(), field.zero()
            sweep = [(one, zero)] + [(c, one) for c in [zero] + _small_nonzero_scalars(field)[:5]]
            for t0, t1 in sweep:
                candidates.append(point_at(LineParam(line, t0, t1)))
        for x in candidates:
            if not incident(x, polar_g):
                assert on_quadric(x)
                assert not polar_value(field, x.vector(), p.vector())
                return x
    raise SearchExhausted("no tangent avoiding the line within the sample budget")


# ---------------------------------------------------------------------------
# the quadric-preserving reflections and the second external plane
# ---------------------------------------------------------------------------

def reflect_vector(field: Field, q, x):
    """sigma(x) = x - (B(x,q)/Q(q)) q; fixes polar(q) pointwise, preserves Q."""
    q = field.vec(q)
    x = field.vec(x)
    qq = quadric_value(field, q)
    if not qq:
        raise CentreOnQuadric("reflection centre must be off the quadric")
    f = polar_value(field, x, q) / qq
    return tuple(a - f * b for a, b in zip(x, q))


def reflect_subspace(q: ProjSubspace, s: ProjSubspace) -> ProjSubspace:
    field = s.field
    qv = q.vector()
    return ProjSubspace.from_vectors(
        field, 5, [reflect_vector(field, qv, row) for row in s.rows]
    )


def second_external_plane(
    eps1: ProjSubspace,
    rng=None,
    certificate: AnisotropyCertificate | None = None,
) -> ProjSubspace:
    """Another external plane meeting eps1 in a line.

    Picks a tangent line T of H5, a centre q on T off H5, eps1 and
    polar(eps1), and reflects eps1 through q.  The reflection preserves Q
    exactly, so the image is external; all postconditions are checked.
    """
    field = eps1.field
    if isinstance(field, PrimeField):
        raise FiniteFieldError("external planes need an infinite field")
    f2st = isinstance(field, F2RationalFunctions)
    if not is_external_plane(eps1, certificate):
        raise NotExternal("the input plane meets the quadric")
    rng = rng or random.Random(0)
    pol_eps1 = polar(eps1)

    # tangent line: x0 on H5 joined with a non-quadric point of polar(x0)
    from .projspace import random_line

    while True:
        x0 = plucker_point(random_line(field, 3, rng))
        tangent_hyp = polar(x0)
        r = random_point(tangent_hyp, rng)
        if not on_quadric(r) and not incident(r, ProjSubspace.point(field, x0.vector())):
            t_line = span(x0, r)
            if classify_line(t_line) != SECANT_1_TANGENT:
                raise AssertionError("construction should give a tangent line")
            break

    # points x0 + c*r for c != 0 are exactly the off-quadric points of T
    for c in _small_nonzero_scalars(field) + [field.random_nonzero(rng) for _ in range(20)]:
        qv = tuple(a + c * b for a, b in zip(x0.vector(), r.vector()))
        q = ProjSubspace.point(field, qv)
        if incident(q, eps1) or incident(q, pol_eps1):
            continue
        eps2 = reflect_subspace(q, eps1)
        if eps2 == eps1 or not eps2.is_plane():
            continue
        common = meet(eps1, eps2)
        if not common.is_line():
            continue
        if not f2st:
            if not is_external_plane(eps2):
                raise AssertionError("reflection must preserve externality")
        # over F2(s,t) externality holds because the reflection preserves Q
        return eps2
    raise SearchExhausted("no admissible reflection centre found on the tangent line")


# ---------------------------------------------------------------------------
# polar types, characteristic 2
# ---------------------------------------------------------------------------

def radical_in(s: ProjSubspace) -> ProjSubspace:
    """The subspace s cut with its polar, via the restricted Gram matrix.

    A combination of basis rows is B-orthogonal to all of s exactly when its
    coefficient vector kills the k x k Gram matrix of B on the basis, so the
    computation stays in k dimensions (important over F2(s,t), where a polar
    of a polar blows up the gcd-free fractions).
    """
    field = s.field
    k = len(s.rows)
    if k == 0:
        return s
    gram = [
        [polar_value(field, s.rows[i], s.rows[j]) for j in range(k)]
        for i in range(k)
    ]
    coeffs = kernel(field, gram, k)
    vectors = []
    for a in coeffs:
        vec = [field.zero()] * 6
        for c, row in zip(a, s.rows):
            if c:
                vec = [u + c * v for u, v in zip(vec, row)]
        vectors.append(vec)
    return ProjSubspace.from_vectors(field, 5, vectors)


def plane_polar_type(eps: ProjSubspace) -> str:
    """How a plane meets its polar plane: skew, in a point, or self-polar."""
    if eps.n != 5 or not eps.is_plane():
        raise ValueError("expected a plane of PG(5)")
    d = radical_in(eps).dim
    if d == -1:
        return SKEW
    if d == 0:
        return MEETS_IN_POINT
    if d == 2:
        return SELF_POLAR
    raise PolarTypeUndefined(
        "the plane meets its polar in a line; this cannot happen for an "
        "external plane (the rank parity argument in characteristic 2, "
        "skewness otherwise)"
    )


def is_nucleus_line(n_line: ProjSubspace) -> bool:
    """True iff the line is contained in its own polar solid.

    Equivalent to B vanishing identically on the line, which needs only the
    Gram entry of its two basis rows (B is alternating where this happens).
    """
    if n_line.n != 5 or not n_line.is_line():
        raise NotALine("expected a line of PG(5)")
    field = n_line.field
    r0, r1 = n_line.rows
    return (
        not polar_value(field, r0, r1)
        and not polar_value(field, r0, r0)
        and not polar_value(field, r1, r1)
    )


def nucleus_pencil_consistency(eps: ProjSubspace, g: ProjSubspace) -> bool:
    """Char 2, plane meeting its polar in a point q: check the equivalence

        g in polar(g)  <=>  g belongs to the pencil with vertex q in eps.

    Only exercisable when such a plane is supplied; none is constructible
    over the fields in scope.
    """
    if eps.field.characteristic != 2:
        raise ValueError("the dichotomy is a characteristic 2 phenomenon")
    if not incident(g, eps):
        raise ValueError("the line must lie in the plane")
    q = meet(eps, polar(eps))
    if not q.is_point():
        raise ValueError("the plane must meet its polar in a single point")
    lhs = is_nucleus_line(g)
    rhs = incident(q, g)
    return lhs == rhs
