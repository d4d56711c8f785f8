"""Exact scalar arithmetic over the supported ground fields.

Three concrete fields are provided: arbitrary-precision rationals, prime
fields GF(p) for small p, and the rational function field F2(s,t) in two
indeterminates over GF(2).  Everything is exact; no floating point is used
anywhere in the package.

Elements of F2(s,t) are kept as unreduced fractions of multivariate
polynomials (there is no multivariate gcd here, on purpose).  Equality is
decided by cross-multiplication, a/b = c/d iff a*d = c*b, which is all the
geometry needs.  Numerator and denominator only ever shed a common monomial
factor, which keeps expression growth in check without a gcd.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction


class FieldMismatch(ArithmeticError):
    """Operands belong to different fields."""


class DivisionByZero(ZeroDivisionError):
    """Division or inversion with a zero operand."""


class ScalarParseError(ValueError):
    """A scalar literal could not be parsed."""


SMALL_PRIMES = (2, 3, 5, 7, 11, 13)


# ---------------------------------------------------------------------------
# prime field elements
# ---------------------------------------------------------------------------

class GFElement:
    """Residue in GF(p), canonically stored in [0, p)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _check(self, other):
        if isinstance(other, GFElement):
            if other.p != self.p:
                raise FieldMismatch(f"GF({self.p}) vs GF({other.p})")
            return other
        if isinstance(other, int):
            return GFElement(other, self.p)
        return None

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return GFElement(self.value + o.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return GFElement(self.value - o.value, self.p)

    def __rsub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return GFElement(o.value - self.value, self.p)

    def __mul__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return GFElement(self.value * o.value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        if o.value == 0:
            raise DivisionByZero(f"division by zero in GF({self.p})")
        return GFElement(self.value * pow(o.value, self.p - 2, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GFElement(-self.value, self.p)

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, GFElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            # compare the canonical residue against the int as-is, so that
            # equality stays consistent with hash(value)
            return self.value == other
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return f"GF{self.p}({self.value})"


# ---------------------------------------------------------------------------
# F2[s,t] polynomials and their fraction field
# ---------------------------------------------------------------------------

class F2Poly:
    """Polynomial over GF(2) in s and t, stored as a set of monomials.

    A monomial is an exponent pair (i, j) for s^i t^j; coefficients are 0/1
    so addition is symmetric difference of monomial sets.
    """

    __slots__ = ("monos",)

    def __init__(self, monos=()):
        self.monos = frozenset(monos)

    @staticmethod
    def from_terms(terms):
        """Accumulate monomials with GF(2) cancellation."""
        acc: set = set()
        for m in terms:
            if m in acc:
                acc.discard(m)
            else:
                acc.add(m)
        return F2Poly(acc)

    def __add__(self, other):
        return F2Poly(self.monos ^ other.monos)

    __sub__ = __add__

    def __mul__(self, other):
        acc: set = set()
        for (a, b) in self.monos:
            for (c, d) in other.monos:
                m = (a + c, b + d)
                if m in acc:
                    acc.discard(m)
                else:
                    acc.add(m)
        return F2Poly(acc)

    def __bool__(self):
        return bool(self.monos)

    def __eq__(self, other):
        if isinstance(other, F2Poly):
            return self.monos == other.monos
        return NotImplemented

    def __hash__(self):
        return hash(self.monos)

    def is_zero(self):
        return not self.monos

    def sqrt(self):
        """Exact square root, or None.

        Over GF(2) squaring doubles every exponent, so a polynomial is a
        square iff all its exponents are even.
        """
        if any(i % 2 or j % 2 for (i, j) in self.monos):
            return None
        return F2Poly((i // 2, j // 2) for (i, j) in self.monos)

    def parity_classes(self):
        """Set of (i mod 2, j mod 2) over the monomials present."""
        return {(i % 2, j % 2) for (i, j) in self.monos}

    def content(self):
        """(min s-exponent, min t-exponent), or None for the zero polynomial."""
        if not self.monos:
            return None
        return (min(i for i, _ in self.monos), min(j for _, j in self.monos))

    def shifted(self, di, dj):
        return F2Poly((i - di, j - dj) for (i, j) in self.monos)

    def __str__(self):
        if not self.monos:
            return "0"
        parts = []
        for (i, j) in sorted(self.monos, key=lambda m: (-(m[0] + m[1]), -m[0])):
            factors = []
            if i == 1:
                factors.append("s")
            elif i > 1:
                factors.append(f"s^{i}")
            if j == 1:
                factors.append("t")
            elif j > 1:
                factors.append(f"t^{j}")
            parts.append("*".join(factors) if factors else "1")
        return "+".join(parts)

    __repr__ = __str__


POLY_ZERO = F2Poly()
POLY_ONE = F2Poly([(0, 0)])
POLY_S = F2Poly([(1, 0)])
POLY_T = F2Poly([(0, 1)])

_TERM_RE = re.compile(r"^(1|s(\^\d+)?|t(\^\d+)?)$")


def _parse_poly(text: str) -> F2Poly:
    text = text.strip()
    if text == "0":
        return POLY_ZERO
    terms = []
    for term in text.split("+"):
        term = term.strip()
        if not term:
            raise ScalarParseError(f"empty term in {text!r}")
        i = j = 0
        for factor in term.split("*"):
            factor = factor.strip()
            if not _TERM_RE.match(factor):
                raise ScalarParseError(f"bad factor {factor!r} in {text!r}")
            if factor == "1":
                continue
            var = factor[0]
            exp = int(factor[2:]) if "^" in factor else 1
            if var == "s":
                i += exp
            else:
                j += exp
        terms.append((i, j))
    return F2Poly.from_terms(terms)


class F2Rat:
    """Unreduced fraction in F2(s,t); equality by cross-multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num: F2Poly, den: F2Poly = POLY_ONE):
        if den.is_zero():
            raise DivisionByZero("zero denominator in F2(s,t)")
        if num.is_zero():
            num, den = POLY_ZERO, POLY_ONE
        else:
            # cancel the common monomial factor only; never a full gcd
            ci, cj = num.content()
            di, dj = den.content()
            ci, cj = min(ci, di), min(cj, dj)
            if ci or cj:
                num = num.shifted(ci, cj)
                den = den.shifted(ci, cj)
        self.num = num
        self.den = den

    def _coerce(self, other):
        if isinstance(other, F2Rat):
            return other
        if isinstance(other, int):
            return F2Rat(POLY_ONE if other % 2 else POLY_ZERO)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return F2Rat(self.num + o.num, self.den)
        return F2Rat(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__
    __sub__ = __add__  # char 2
    __rsub__ = __add__

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return F2Rat(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise DivisionByZero("division by zero in F2(s,t)")
        return F2Rat(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return self

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    __hash__ = None  # unreduced fractions have no canonical hash

    def __str__(self):
        return f"({self.num})/({self.den})"

    __repr__ = __str__


# ---------------------------------------------------------------------------
# field objects
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Field:
    """Base for the three concrete field descriptors."""

    kind: str
    characteristic: int

    def check(self, x):
        raise NotImplementedError

    # shared convenience -----------------------------------------------------
    def vec(self, coords):
        """Coerce a sequence of ints/scalars into a tuple of field elements."""
        return tuple(self.coerce(c) for c in coords)

    def add(self, x, y):
        return self.check(x) + self.check(y)

    def sub(self, x, y):
        return self.check(x) - self.check(y)

    def mul(self, x, y):
        return self.check(x) * self.check(y)

    def div(self, x, y):
        y = self.check(y)
        if not y:
            raise DivisionByZero(f"division by zero over {self.kind}")
        return self.check(x) / y

    def neg(self, x):
        return -self.check(x)

    def inv(self, x):
        return self.div(self.one(), x)

    def random_coord(self, rng):
        """Random scalar for homogeneous coordinates (see F2(s,t) override)."""
        return self.random_scalar(rng)


class Rationals(Field):
    def __init__(self):
        super().__init__(kind="rationals", characteristic=0)

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n: int):
        return Fraction(n)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return self.parse(x)
        raise FieldMismatch(f"{x!r} is not a rational scalar")

    check = coerce

    def parse(self, text: str):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ScalarParseError(f"bad rational literal {text!r}") from exc

    def format(self, x) -> str:
        return str(self.check(x))

    def is_square(self, x):
        x = self.check(x)
        if x < 0:
            return False, None
        if x == 0:
            return True, Fraction(0)
        rn = math.isqrt(x.numerator)
        rd = math.isqrt(x.denominator)
        if rn * rn == x.numerator and rd * rd == x.denominator:
            return True, Fraction(rn, rd)
        return False, None

    def random_scalar(self, rng):
        return Fraction(rng.randint(-6, 6), rng.randint(1, 6))

    def random_nonzero(self, rng):
        while True:
            x = self.random_scalar(rng)
            if x:
                return x


class PrimeField(Field):
    p: int

    def __init__(self, p: int):
        if p not in SMALL_PRIMES:
            raise ValueError(f"prime field size must be one of {SMALL_PRIMES}, got {p}")
        super().__init__(kind="prime_field", characteristic=p)
        object.__setattr__(self, "p", p)

    def zero(self):
        return GFElement(0, self.p)

    def one(self):
        return GFElement(1, self.p)

    def from_int(self, n: int):
        return GFElement(n, self.p)

    def coerce(self, x):
        if isinstance(x, GFElement):
            if x.p != self.p:
                raise FieldMismatch(f"GF({x.p}) element in GF({self.p})")
            return x
        if isinstance(x, int):
            return GFElement(x, self.p)
        if isinstance(x, str):
            return self.parse(x)
        raise FieldMismatch(f"{x!r} is not a GF({self.p}) scalar")

    check = coerce

    def parse(self, text: str):
        try:
            return GFElement(int(text.strip()), self.p)
        except ValueError as exc:
            raise ScalarParseError(f"bad GF({self.p}) literal {text!r}") from exc

    def format(self, x) -> str:
        return str(self.check(x).value)

    def elements(self):
        return [GFElement(v, self.p) for v in range(self.p)]

    def is_square(self, x):
        x = self.check(x)
        for v in range(self.p):
            if (v * v) % self.p == x.value:
                return True, GFElement(v, self.p)
        return False, None

    def random_scalar(self, rng):
        return GFElement(rng.randrange(self.p), self.p)

    def random_nonzero(self, rng):
        return GFElement(rng.randrange(1, self.p), self.p)


class F2RationalFunctions(Field):
    def __init__(self):
        super().__init__(kind="f2_rational_functions", characteristic=2)

    def zero(self):
        return F2Rat(POLY_ZERO)

    def one(self):
        return F2Rat(POLY_ONE)

    def s(self):
        return F2Rat(POLY_S)

    def t(self):
        return F2Rat(POLY_T)

    def from_int(self, n: int):
        return F2Rat(POLY_ONE if n % 2 else POLY_ZERO)

    def coerce(self, x):
        if isinstance(x, F2Rat):
            return x
        if isinstance(x, int):
            return self.from_int(x)
        if isinstance(x, str):
            return self.parse(x)
        raise FieldMismatch(f"{x!r} is not an F2(s,t) scalar")

    check = coerce

    def parse(self, text: str):
        text = text.strip()
        m = re.match(r"^\((?P<num>[^()]*)\)\s*/\s*\((?P<den>[^()]*)\)$", text)
        if m:
            num = _parse_poly(m.group("num"))
            den = _parse_poly(m.group("den"))
            if den.is_zero():
                raise ScalarParseError(f"zero denominator in {text!r}")
            return F2Rat(num, den)
        if "(" in text or ")" in text or "/" in text:
            raise ScalarParseError(f"bad F2(s,t) literal {text!r}")
        return F2Rat(_parse_poly(text))

    def format(self, x) -> str:
        x = self.check(x)
        return f"({x.num})/({x.den})"

    def is_square(self, x):
        """Square test via the Frobenius: a/b is a square iff a*b is.

        A polynomial over GF(2) is a square iff every monomial exponent is
        even, in which case halving the exponents gives the root.
        """
        x = self.check(x)
        if not x:
            return True, self.zero()
        root = (x.num * x.den).sqrt()
        if root is None:
            return False, None
        return True, F2Rat(root, x.den)

    def random_scalar(self, rng):
        def poly():
            k = rng.randint(0, 2)
            return F2Poly.from_terms(
                (rng.randint(0, 2), rng.randint(0, 2)) for _ in range(k)
            )

        num = poly()
        den = poly()
        while den.is_zero():
            den = poly()
        return F2Rat(num, den)

    def random_nonzero(self, rng):
        while True:
            x = self.random_scalar(rng)
            if x:
                return x

    def random_coord(self, rng):
        """Small polynomial scalar; growth control for the unreduced fractions.

        Homogeneous coordinates can always be cleared to polynomials, so this
        samples the same projective objects while keeping the gcd-free
        arithmetic at desk scale.
        """
        k = rng.randint(0, 2)
        return F2Rat(
            F2Poly.from_terms((rng.randint(0, 1), rng.randint(0, 1)) for _ in range(k))
        )


# ---------------------------------------------------------------------------
# spec-level helpers
# ---------------------------------------------------------------------------

def arith(field: Field, op: str, x, y=None):
    """Named arithmetic dispatch with field membership checks."""
    if op in ("neg", "inv"):
        return getattr(field, op)(x)
    if op in ("add", "sub", "mul", "div"):
        return getattr(field, op)(x, y)
    raise ValueError(f"unknown arithmetic op {op!r}")


def field_to_json(field: Field) -> dict:
    spec = {"kind": field.kind}
    if isinstance(field, PrimeField):
        spec["p"] = field.p
    return spec


def field_from_json(spec: dict) -> Field:
    kind = spec.get("kind")
    if kind == "rationals":
        return Rationals()
    if kind == "prime_field":
        return PrimeField(int(spec["p"]))
    if kind == "f2_rational_functions":
        return F2RationalFunctions()
    raise ValueError(f"unknown field kind {kind!r}")


def field_from_flag(flag: str) -> Field:
    """CLI field flags: Q, gf2, gf3, ..., f2st."""
    flag = flag.strip()
    if flag in ("Q", "q", "rationals"):
        return Rationals()
    if flag == "f2st":
        return F2RationalFunctions()
    m = re.match(r"^gf(\d+)$", flag.lower())
    if m:
        return PrimeField(int(m.group(1)))
    raise ValueError(f"unknown field flag {flag!r}")
