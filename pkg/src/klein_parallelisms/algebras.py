"""Four-dimensional algebras whose unit groups act on PG(3) by translations.

Two kinds are supported:

  * quaternion algebras (a,b) over a field of characteristic != 2, with
    basis (1, i, j, k), i^2 = a, j^2 = b, k = ij = -ji;
  * the inseparable tower over K = F2(s,t): the commutative extension field
    K(u, w) with u^2 = s, w^2 = t, so every element squares into K.

Left (or right) translations by nonzero elements act on the line set of
PG(3); the orbits are the parallel classes of the corresponding Clifford
parallelism.  Division is decided exactly: over Q by Hilbert symbols at the
relevant places, for the tower by square tests on s, t and s*t.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import F2RationalFunctions, Field, FieldMismatch, Rationals
from .quadforms import factor_int, hilbert_symbol
from .projspace import ProjSubspace


class UnsupportedBaseField(ValueError):
    pass


class CentralElement(ValueError):
    pass


class NotDivision(ValueError):
    pass


class AlgebraH:
    """Structure constants and arithmetic of one of the two algebra kinds."""

    def __init__(self, field: Field, kind: str, a=None, b=None):
        self.field = field
        self.kind = kind
        if kind == "quaternion":
            if field.characteristic == 2:
                raise UnsupportedBaseField(
                    "quaternion structure constants require characteristic != 2"
                )
            a = field.coerce(a)
            b = field.coerce(b)
            if not a or not b:
                raise ValueError("quaternion parameters must be nonzero")
        elif kind == "tower":
            if not isinstance(field, F2RationalFunctions):
                raise UnsupportedBaseField("the tower algebra lives over F2(s,t)")
            a = field.s()
            b = field.t()
        else:
            raise ValueError(f"unknown algebra kind {kind!r}")
        self.a = a
        self.b = b
        self._table = self._build_table()
        self._division: bool | None = None

    def _build_table(self):
        f = self.field
        zero, one = f.zero(), f.one()
        a, b = self.a, self.b

        def vec(c0=zero, c1=zero, c2=zero, c3=zero):
            return (c0, c1, c2, c3)

        if self.kind == "quaternion":
            e = {
                (0, 0): vec(one), (0, 1): vec(c1=one), (0, 2): vec(c2=one), (0, 3): vec(c3=one),
                (1, 0): vec(c1=one), (1, 1): vec(a), (1, 2): vec(c3=one), (1, 3): vec(c2=a),
                (2, 0): vec(c2=one), (2, 1): vec(c3=-one), (2, 2): vec(b), (2, 3): vec(c1=-b),
                (3, 0): vec(c3=one), (3, 1): vec(c2=-a), (3, 2): vec(c1=b), (3, 3): vec(-a * b),
            }
        else:
            e = {
                (0, 0): vec(one), (0, 1): vec(c1=one), (0, 2): vec(c2=one), (0, 3): vec(c3=one),
                (1, 0): vec(c1=one), (1, 1): vec(a), (1, 2): vec(c3=one), (1, 3): vec(c2=a),
                (2, 0): vec(c2=one), (2, 1): vec(c3=one), (2, 2): vec(b), (2, 3): vec(c1=b),
                (3, 0): vec(c3=one), (3, 1): vec(c2=a), (3, 2): vec(c1=b), (3, 3): vec(a * b),
            }
        return e

    # -- arithmetic ---------------------------------------------------------

    def coerce(self, x):
        v = self.field.vec(x)
        if len(v) != 4:
            raise FieldMismatch("algebra elements are 4-vectors over the base field")
        return v

    def one(self):
        f = self.field
        return (f.one(), f.zero(), f.zero(), f.zero())

    def scalar(self, c):
        f = self.field
        return (f.coerce(c), f.zero(), f.zero(), f.zero())

    def mul(self, x, y):
        x = self.coerce(x)
        y = self.coerce(y)
        f = self.field
        out = [f.zero()] * 4
        for i in range(4):
            if not x[i]:
                continue
            for j in range(4):
                if not y[j]:
                    continue
                c = x[i] * y[j]
                basis = self._table[(i, j)]
                for k in range(4):
                    if basis[k]:
                        out[k] = out[k] + c * basis[k]
        return tuple(out)

    def conj(self, x):
        if self.kind != "quaternion":
            return self.coerce(x)
        x = self.coerce(x)
        return (x[0], -x[1], -x[2], -x[3])

    def norm(self, x):
        """Quaternion: x * conj(x); tower: the scalar x^2."""
        x = self.coerce(x)
        a, b = self.a, self.b
        if self.kind == "quaternion":
            return x[0] * x[0] - a * x[1] * x[1] - b * x[2] * x[2] + a * b * x[3] * x[3]
        sq = self.mul(x, x)
        if any(sq[1:]):
            raise AssertionError("tower elements must square into the centre")
        return sq[0]

    def inverse(self, x):
        x = self.coerce(x)
        n = self.norm(x)
        if not n:
            raise NotDivision("element with zero norm has no inverse")
        if self.kind == "quaternion":
            c = self.conj(x)
            return tuple(ci / n for ci in c)
        return tuple(ci / n for ci in x)

    def is_central(self, x) -> bool:
        x = self.coerce(x)
        return not any(x[1:])

    # -- division -----------------------------------------------------------

    def is_division(self) -> bool:
        """Exact division test.

        Quaternion over Q: division iff the Hilbert symbol (a,b)_v is -1 at
        some place among infinity, 2, and the primes dividing a or b.  The
        tower is a degree-4 field extension iff s, t, st are nonsquares,
        which exponent parity certifies.
        """
        if self._division is not None:
            return self._division
        if self.kind == "quaternion":
            if not isinstance(self.field, Rationals):
                raise UnsupportedBaseField("the division test is implemented over Q")
            places = ["infinity", 2]
            for x in (self.a, self.b):
                for n in (x.numerator, x.denominator):
                    places.extend(p for p in factor_int(n) if p != 2)
            self._division = any(
                hilbert_symbol(self.a, self.b, v) == -1 for v in dict.fromkeys(places)
            )
        else:
            f = self.field
            self._division = not any(
                f.is_square(v)[0] for v in (self.a, self.b, self.a * self.b)
            )
        return self._division

    def random_element(self, rng):
        return tuple(self.field.random_scalar(rng) for _ in range(4))

    def random_nonzero(self, rng):
        while True:
            x = self.random_element(rng)
            if any(x):
                return x

    def to_json(self) -> dict:
        if self.kind == "quaternion":
            return {
                "kind": "quaternion",
                "a": self.field.format(self.a),
                "b": self.field.format(self.b),
            }
        return {"kind": "tower"}


def algebra_from_json(field: Field, data: dict) -> AlgebraH:
    kind = data.get("kind")
    if kind == "quaternion":
        return AlgebraH(field, "quaternion", field.parse(data["a"]), field.parse(data["b"]))
    if kind == "tower":
        return AlgebraH(field, "tower")
    raise ValueError(f"unknown algebra kind {kind!r}")


# ---------------------------------------------------------------------------
# quadratic subfields
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SubfieldL:
    """Two-dimensional subfield K(x) of H, as span(1, x) with x^2 + beta x + gamma = 0."""

    algebra: AlgebraH
    gen: tuple
    beta: object
    gamma: object

    def as_subspace(self) -> ProjSubspace:
        alg = self.algebra
        return ProjSubspace.from_vectors(alg.field, 3, [alg.one(), self.gen])


def intermediate_field(algebra: AlgebraH, x) -> SubfieldL:
    """The subfield generated by a non-central element of a division algebra."""
    x = algebra.coerce(x)
    if algebra.is_central(x):
        raise CentralElement("span(1, x) needs x outside the centre")
    f = algebra.field
    if algebra.kind == "quaternion":
        beta = -f.from_int(2) * x[0]
        gamma = algebra.norm(x)
    else:
        beta = f.zero()
        gamma = algebra.norm(x)  # x^2 = gamma, and -gamma = gamma in char 2
    # check the minimal relation x^2 + beta x + gamma = 0 holds exactly
    sq = algebra.mul(x, x)
    lhs = tuple(
        sq[k] + beta * x[k] + (gamma if k == 0 else f.zero()) for k in range(4)
    )
    if any(lhs):
        raise AssertionError("quadratic minimal relation failed")
    return SubfieldL(algebra, x, beta, gamma)


def is_separable_quadratic(sub: SubfieldL) -> bool:
    """Separability of K(x)/K; in characteristic 2 this needs beta != 0."""
    if sub.algebra.field.characteristic != 2:
        return True
    return bool(sub.beta)
