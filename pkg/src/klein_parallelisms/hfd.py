"""Pencilled hyperflock-determining line sets.

A pencilled hfd line set is a union of line pencils in PG(5) whose carrier
planes are external to the Klein quadric and share a distinguished line D:
each point v of D carries a pencil in an assigned plane f(v) through D, and
every tangent hyperplane of the quadric then contains exactly one member
line.  The preimage under the spread correspondence is a regular parallelism
of PG(3).

Descriptors keep f finitely presented: one default plane plus a finite list
of exceptional parameters on D.  That covers the constant case (a plane of
lines, the Clifford parallelisms) and every finite-image assignment;
assignments with infinite exception structure are out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .fields import Field
from .klein import (
    SECANT_0,
    AnisotropyCertificate,
    classify_line,
    is_external_plane,
    on_quadric,
    polar,
)
from .projspace import LineParam, ProjSubspace, incident, meet, span


class PlaneNotThroughD(ValueError):
    pass


class PlaneNotExternal(ValueError):
    pass


class PointNotOnD(ValueError):
    pass


class NotTangent(ValueError):
    pass


class ClassificationInconsistency(AssertionError):
    """The descriptor contradicts the structure theory; treated as a bug."""


PLANE_OF_LINES = "plane_of_lines"
COLLINEAR_VERTICES = "collinear_vertices"


@dataclass(frozen=True)
class PencilRef:
    """A pencil of lines: vertex point and carrier plane through it."""

    vertex: ProjSubspace
    carrier: ProjSubspace

    def __post_init__(self):
        if not incident(self.vertex, self.carrier):
            raise ValueError("pencil vertex must lie in the carrier plane")


@dataclass(frozen=True)
class HfdDescriptor:
    """Line D, planes through D, and the finitely presented assignment f."""

    D: ProjSubspace
    planes: tuple
    default: int
    exceptions: tuple  # ((t0, t1), plane_index) pairs, parameters on D
    certificates: tuple | None = None  # per-plane, for F2(s,t)

    @property
    def field(self) -> Field:
        return self.D.field

    def to_json(self) -> dict:
        field = self.field
        data = {
            "D": self.D.to_json(),
            "planes": [p.to_json() for p in self.planes],
            "default": self.default,
            "exceptions": [
                {"param": [field.format(t0), field.format(t1)], "plane": idx}
                for (t0, t1), idx in self.exceptions
            ],
        }
        if self.certificates is not None:
            data["certificates"] = [
                (None if c is None else {"kind": c.kind}) for c in self.certificates
            ]
        return data

    @staticmethod
    def from_json(field: Field, data: dict) -> "HfdDescriptor":
        D = ProjSubspace.from_json(field, data["D"])
        planes = tuple(ProjSubspace.from_json(field, p) for p in data["planes"])
        exceptions = tuple(
            ((field.parse(e["param"][0]), field.parse(e["param"][1])), int(e["plane"]))
            for e in data.get("exceptions", ())
        )
        certs = data.get("certificates")
        if certs is not None:
            certs = tuple(
                None if c is None else AnisotropyCertificate(c["kind"]) for c in certs
            )
        return HfdDescriptor(
            D, planes, int(data.get("default", 0)), exceptions, certs
        )


def _params_projectively_equal(a, b) -> bool:
    return a[0] * b[1] == a[1] * b[0]


def validate_descriptor(d: HfdDescriptor) -> HfdDescriptor:
    """Check the construction hypotheses; returns a normalised descriptor.

    Every plane must pass through D and be external to the quadric; D itself
    must be a 0-secant.  Exceptions pointing at the default plane are
    dropped, exception parameters must be projectively distinct, and with
    more than one plane each non-default plane must actually be attained.
    """
    if not d.D.is_line() or d.D.n != 5:
        raise ValueError("D must be a line of PG(5)")
    if not d.planes:
        raise ValueError("at least one carrier plane is required")
    if not (0 <= d.default < len(d.planes)):
        raise ValueError("default plane index out of range")
    certs = d.certificates or (None,) * len(d.planes)
    if len(certs) != len(d.planes):
        raise ValueError("one certificate slot per plane, please")
    for i, plane in enumerate(d.planes):
        if not plane.is_plane() or plane.n != 5:
            raise ValueError(f"entry {i} is not a plane of PG(5)")
        if not incident(d.D, plane):
            raise PlaneNotThroughD(f"plane {i} does not contain D")
        if not is_external_plane(plane, certs[i]):
            raise PlaneNotExternal(f"plane {i} meets the Klein quadric")
        for j in range(i):
            if d.planes[j] == plane:
                raise ValueError(f"planes {j} and {i} coincide")
    if classify_line(d.D) != SECANT_0:
        raise ClassificationInconsistency(
            "D lies in an external plane yet is not a 0-secant"
        )
    kept = []
    for (t0, t1), idx in d.exceptions:
        if not (t0 or t1):
            raise ValueError("exception parameter (0, 0) is not projective")
        if not (0 <= idx < len(d.planes)):
            raise ValueError("exception plane index out of range")
        if idx == d.default:
            continue
        for (s0, s1), _ in kept:
            if _params_projectively_equal((t0, t1), (s0, s1)):
                raise ValueError("exception parameters must be projectively distinct")
        kept.append(((t0, t1), idx))
    attained = {d.default} | {idx for _, idx in kept}
    if attained != set(range(len(d.planes))):
        missing = sorted(set(range(len(d.planes))) - attained)
        raise ValueError(f"planes {missing} are never attained by the assignment")
    return replace(d, exceptions=tuple(kept))


# ---------------------------------------------------------------------------
# the assignment f
# ---------------------------------------------------------------------------

def param_of_point(d: HfdDescriptor, v: ProjSubspace):
    """Solve v = t0 b0 + t1 b1 on D's canonical basis."""
    if not v.is_point() or v.n != 5:
        raise PointNotOnD("expected a point of PG(5)")
    b0, b1 = d.D.rows
    lead0 = next(c for c in range(6) if b0[c])
    lead1 = next(c for c in range(6) if b1[c])
    vec = v.vector()
    t0, t1 = vec[lead0], vec[lead1]
    rebuilt = tuple(t0 * x + t1 * y for x, y in zip(b0, b1))
    if rebuilt != vec:
        raise PointNotOnD("the point is not on D")
    return t0, t1


def f_of(d: HfdDescriptor, v: ProjSubspace) -> ProjSubspace:
    """The plane assigned to a point of D: exception plane or default."""
    t = param_of_point(d, v)
    for param, idx in d.exceptions:
        if _params_projectively_equal(t, param):
            return d.planes[idx]
    return d.planes[d.default]


# ---------------------------------------------------------------------------
# membership and the defining property
# ---------------------------------------------------------------------------

def hfd_membership(d: HfdDescriptor, x_line: ProjSubspace):
    """Is the line a member? Returns (bool, PencilRef or None).

    A line belongs iff it is D itself, or it meets D in a point v and lies
    in the plane f(v).
    """
    if not x_line.is_line() or x_line.n != 5:
        raise ValueError("membership is a question about lines of PG(5)")
    if x_line == d.D:
        v = ProjSubspace.point(d.field, d.D.rows[0])
        return True, PencilRef(v, f_of(d, v))
    common = meet(x_line, d.D)
    if not common.is_point():
        return False, None
    plane = f_of(d, common)
    if incident(x_line, plane):
        return True, PencilRef(common, plane)
    return False, None


def line_in_tangent_hyperplane(d: HfdDescriptor, tau: ProjSubspace) -> ProjSubspace:
    """The unique member line inside a tangent hyperplane.

    If D lies in tau the answer is D; otherwise tau meets D in a point p and
    the answer is the line tau cut with f(p).
    """
    if tau.n != 5 or tau.dim != 4:
        raise NotTangent("expected a hyperplane of PG(5)")
    pole = polar(tau)
    if not pole.is_point() or not on_quadric(pole):
        raise NotTangent("the hyperplane is not tangent to the quadric")
    if incident(d.D, tau):
        return d.D
    p = meet(tau, d.D)
    if not p.is_point():
        raise AssertionError("a hyperplane meets a line it does not contain in a point")
    result = meet(tau, f_of(d, p))
    if not result.is_line():
        raise ClassificationInconsistency(
            "an external plane met a tangent hyperplane off a line"
        )
    if not incident(result, tau) or not hfd_membership(d, result)[0]:
        raise ClassificationInconsistency("postcondition failed on the member line")
    return result


@dataclass(frozen=True)
class HfdCheck:
    passed: bool
    detail: str
    member: ProjSubspace | None = None


def verify_hfd_at(d: HfdDescriptor, x: ProjSubspace) -> HfdCheck:
    """Exactly-one check at a quadric point x.

    Every member line inside tau = polar(x) lies in some carrier plane, so
    the candidates are the (finitely many) lines tau cut with each plane;
    exactly one may be a member, and it must agree with the direct algorithm.
    """
    if not x.is_point() or not on_quadric(x):
        raise ValueError("verification point must lie on the quadric")
    tau = polar(x)
    candidates = []
    for i, plane in enumerate(d.planes):
        cut = meet(tau, plane)
        if not cut.is_line():
            return HfdCheck(False, f"plane {i} meets the tangent hyperplane in dim {cut.dim}")
        if cut not in candidates:
            candidates.append(cut)
    members = [c for c in candidates if hfd_membership(d, c)[0]]
    if len(members) != 1:
        return HfdCheck(False, f"{len(members)} member lines in one tangent hyperplane")
    expected = line_in_tangent_hyperplane(d, tau)
    if members[0] != expected:
        return HfdCheck(False, "member does not match the direct computation")
    return HfdCheck(True, "ok", members[0])


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HfdClassification:
    case: str  # plane_of_lines | collinear_vertices
    V: ProjSubspace
    K: tuple
    dimension: int


def classify(d: HfdDescriptor) -> HfdClassification:
    """Structure of the pencilled set: its vertex set, planes, and dimension.

    One attained plane: the set is the plane of lines in it (dimension 2).
    Several: the vertices fill the line D, which is itself a member, the
    planes meet exactly in D, and the dimension is that of their span.
    """
    attained = [d.planes[d.default]] + [
        d.planes[idx] for _, idx in d.exceptions if idx != d.default
    ]
    distinct = []
    for p in attained:
        if p not in distinct:
            distinct.append(p)
    if len(distinct) == 1:
        return HfdClassification(PLANE_OF_LINES, distinct[0], tuple(distinct), 2)
    common = distinct[0]
    for p in distinct[1:]:
        common = meet(common, p)
    if common != d.D:
        raise ClassificationInconsistency("the carrier planes do not meet exactly in D")
    if not hfd_membership(d, d.D)[0]:
        raise ClassificationInconsistency("D must be a member line")
    dimension = span(*distinct).dim
    if dimension not in (3, 4, 5):
        raise ClassificationInconsistency(f"dimension {dimension} out of range")
    return HfdClassification(COLLINEAR_VERTICES, d.D, tuple(distinct), dimension)


def is_clifford(d: HfdDescriptor) -> bool:
    """Constant assignments, and only they, give Clifford parallelisms."""
    return classify(d).case == PLANE_OF_LINES
