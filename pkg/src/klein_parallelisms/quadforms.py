"""Exact isotropy decisions for small quadratic forms.

A form is stored by its upper-triangular coefficients, Q(x) = sum over i<=j
of c[i][j] x_i x_j.  That presentation works in every characteristic; the
polarisation B(x,y) = Q(x+y) - Q(x) - Q(y) is computed from it directly and
in characteristic 2 is the alternating form the geometry needs.

Decision procedures:
  * binary forms: exact in all supported fields except the Artin-Schreier
    case over F2(s,t), which falls back to a bounded-degree root search and
    may come back "unknown";
  * ternary forms over Q: diagonalise, strip square factors, decide by the
    Hilbert symbol product over the relevant places, then produce a witness
    by a search bounded by the classical minimal-solution estimate;
  * ternary forms over GF(p): exhaustive search (they are always isotropic
    when nondegenerate, which doubles as a cross-check).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .fields import (
    F2Poly,
    F2Rat,
    F2RationalFunctions,
    Field,
    PrimeField,
    Rationals,
)

SQUAREFREE_TRIAL_BOUND = 10 ** 6
WITNESS_SEARCH_CAP = 1500


class InvalidPlace(ValueError):
    """Hilbert symbol place that is neither a prime nor infinity."""


class UnsupportedField(ValueError):
    """The requested decision procedure does not cover this field."""


class DimensionMismatch(ValueError):
    """Form and subspace dimensions disagree."""


class FactorizationError(ArithmeticError):
    """A coefficient resisted trial division; refusing to guess."""


class WitnessSearchExhausted(ArithmeticError):
    """The form is isotropic but no witness was found within the cap."""


# ---------------------------------------------------------------------------
# quadratic forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadraticForm:
    field: Field
    n: int
    upper: tuple  # upper[i][j] valid for j >= i; zeros below

    @staticmethod
    def from_upper(field: Field, coeffs) -> "QuadraticForm":
        n = len(coeffs)
        rows = []
        zero = field.zero()
        for i, row in enumerate(coeffs):
            if len(row) != n:
                raise DimensionMismatch("coefficient matrix must be square")
            full = [zero] * i + [field.coerce(c) for c in row[i:]]
            rows.append(tuple(full))
        return QuadraticForm(field, n, tuple(rows))

    @staticmethod
    def diagonal(field: Field, entries) -> "QuadraticForm":
        n = len(entries)
        zero = field.zero()
        rows = []
        for i, e in enumerate(entries):
            row = [zero] * n
            row[i] = field.coerce(e)
            rows.append(tuple(row))
        return QuadraticForm(field, n, tuple(rows))

    @staticmethod
    def from_symmetric(field: Field, gram) -> "QuadraticForm":
        """Build from a symmetric Gram matrix; needs characteristic != 2."""
        if field.characteristic == 2:
            raise UnsupportedField("symmetric Gram input needs char != 2")
        n = len(gram)
        two = field.from_int(2)
        coeffs = []
        for i in range(n):
            row = [field.zero()] * n
            row[i] = field.coerce(gram[i][i])
            for j in range(i + 1, n):
                row[j] = two * field.coerce(gram[i][j])
            coeffs.append(row)
        return QuadraticForm.from_upper(field, coeffs)

    def evaluate(self, x):
        x = self.field.vec(x)
        if len(x) != self.n:
            raise DimensionMismatch(f"vector length {len(x)} for n={self.n}")
        acc = self.field.zero()
        for i in range(self.n):
            if not x[i]:
                continue
            for j in range(i, self.n):
                c = self.upper[i][j]
                if c and x[j]:
                    acc = acc + c * x[i] * x[j]
        return acc

    def polar(self, x, y):
        """Full polarisation B(x, y) = Q(x+y) - Q(x) - Q(y)."""
        x = self.field.vec(x)
        y = self.field.vec(y)
        acc = self.field.zero()
        two = self.field.from_int(2)
        for i in range(self.n):
            for j in range(i, self.n):
                c = self.upper[i][j]
                if not c:
                    continue
                if i == j:
                    acc = acc + two * c * x[i] * y[i]
                else:
                    acc = acc + c * (x[i] * y[j] + x[j] * y[i])
        return acc

    def polar_matrix(self):
        """Gram matrix of B; alternating with zero diagonal in char 2."""
        two = self.field.from_int(2)
        rows = []
        for i in range(self.n):
            row = []
            for j in range(self.n):
                if i == j:
                    row.append(two * self.upper[i][i])
                elif i < j:
                    row.append(self.upper[i][j])
                else:
                    row.append(self.upper[j][i])
            rows.append(tuple(row))
        return tuple(rows)

    def symmetric_gram(self):
        """Symmetric Gram matrix with Q(x) = x G x^T; char != 2 only."""
        if self.field.characteristic == 2:
            raise UnsupportedField("no symmetric Gram in characteristic 2")
        two = self.field.from_int(2)
        rows = []
        for i in range(self.n):
            row = []
            for j in range(self.n):
                if i == j:
                    row.append(self.upper[i][i])
                elif i < j:
                    row.append(self.upper[i][j] / two)
                else:
                    row.append(self.upper[j][i] / two)
            rows.append(tuple(row))
        return tuple(rows)


def restrict_form(ambient: QuadraticForm, subspace) -> QuadraticForm:
    """Pull the form back along a subspace basis (or explicit rows)."""
    basis_rows = getattr(subspace, "rows", subspace)
    rows = [ambient.field.vec(r) for r in basis_rows]
    for r in rows:
        if len(r) != ambient.n:
            raise DimensionMismatch("subspace does not live in the form's space")
    k = len(rows)
    field = ambient.field
    coeffs = [[field.zero()] * k for _ in range(k)]
    for i in range(k):
        coeffs[i][i] = ambient.evaluate(rows[i])
        for j in range(i + 1, k):
            coeffs[i][j] = ambient.polar(rows[i], rows[j])
    return QuadraticForm.from_upper(field, coeffs)


# ---------------------------------------------------------------------------
# verdicts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IsotropyVerdict:
    status: str  # isotropic | anisotropic | unknown
    witness: tuple | None
    proof: str  # brute_force | hasse_minkowski | certificate | bounded_search_exhausted

    def to_json(self, field: Field) -> dict:
        data = {"status": self.status, "proof": self.proof}
        if self.witness is not None:
            data["witness"] = [field.format(x) for x in self.witness]
        return data


def isotropic(form: QuadraticForm, witness, proof: str) -> IsotropyVerdict:
    w = form.field.vec(witness)
    if not any(w):
        raise ValueError("isotropy witness must be nonzero")
    if form.evaluate(w):
        raise ValueError("isotropy witness does not annihilate the form")
    return IsotropyVerdict("isotropic", w, proof)


def anisotropic(proof: str) -> IsotropyVerdict:
    return IsotropyVerdict("anisotropic", None, proof)


def unknown(proof: str = "bounded_search_exhausted") -> IsotropyVerdict:
    return IsotropyVerdict("unknown", None, proof)


# ---------------------------------------------------------------------------
# integer utilities and the Hilbert symbol
# ---------------------------------------------------------------------------

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factor_int(n: int, bound: int = SQUAREFREE_TRIAL_BOUND) -> dict:
    """Prime factorisation by trial division; raises rather than guessing."""
    if n == 0:
        raise ValueError("cannot factor 0")
    n = abs(n)
    factors: dict = {}
    d = 2
    while d * d <= n and d <= bound:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        # any composite cofactor <= bound^2 would have had a factor <= bound
        if n <= bound * bound or _is_prime(n):
            factors[n] = factors.get(n, 0) + 1
        else:
            raise FactorizationError(f"coefficient factor {n} exceeds the trial bound")
    return factors


def squarefree_part(n: int, bound: int = SQUAREFREE_TRIAL_BOUND):
    """n = squarefree * root^2 with signs on the squarefree part."""
    if n == 0:
        return 0, 1
    sf, root = 1, 1
    for p, e in factor_int(n, bound).items():
        if e % 2:
            sf *= p
        root *= p ** (e // 2)
    return (sf if n > 0 else -sf), root


def _vp(n: int, p: int):
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v, n


def hilbert_symbol(a, b, place) -> int:
    """Classical Hilbert symbol (a, b)_v over Q; returns +1 or -1.

    (a, b)_v = +1 iff z^2 = a x^2 + b y^2 has a nontrivial solution over the
    completion at v.  Rational arguments are replaced by num*den, which is
    the same square class.
    """
    a = Fraction(a)
    b = Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("hilbert symbol needs nonzero arguments")
    ai = a.numerator * a.denominator
    bi = b.numerator * b.denominator
    if place == "infinity":
        return -1 if (ai < 0 and bi < 0) else 1
    if not isinstance(place, int) or not _is_prime(place):
        raise InvalidPlace(f"{place!r} is not a prime or 'infinity'")
    p = place
    alpha, u = _vp(abs(ai), p)
    beta, v = _vp(abs(bi), p)
    u = u if ai > 0 else -u
    v = v if bi > 0 else -v
    if p != 2:
        def legendre(x):
            return 1 if pow(x % p, (p - 1) // 2, p) <= 1 else -1

        sign = 1
        if alpha % 2 and beta % 2 and (p - 1) // 2 % 2:
            sign = -sign
        if beta % 2:
            sign *= legendre(u)
        if alpha % 2:
            sign *= legendre(v)
        return sign

    def eps(x):  # (x - 1)/2 mod 2 for odd x
        return ((x % 8) - 1) // 2 % 2

    def omega(x):  # (x^2 - 1)/8 mod 2 for odd x
        return (x % 8) in (3, 5)

    e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
    return -1 if e % 2 else 1


def hilbert_symbol_all_places(a, b):
    """Symbol at infinity, 2, and the odd primes dividing either argument."""
    a = Fraction(a)
    b = Fraction(b)
    places = {"infinity", 2}
    for n in (a.numerator, a.denominator, b.numerator, b.denominator):
        for p in factor_int(n):
            places.add(p)
    ordered = ["infinity"] + sorted(pl for pl in places if pl != "infinity")
    return {pl: hilbert_symbol(a, b, pl) for pl in ordered}


# ---------------------------------------------------------------------------
# diagonalisation (characteristic != 2)
# ---------------------------------------------------------------------------

def diagonalize(form: QuadraticForm):
    """Basis rows p_0..p_{n-1} with B(p_i, p_j) = 0 for i != j.

    Returns (diag, basis) with Q(basis[i]) = diag[i].
    """
    if form.field.characteristic == 2:
        raise UnsupportedField("diagonalisation needs char != 2")
    field = form.field
    n = form.n
    one = field.one()
    zero = field.zero()
    basis = [[one if i == j else zero for j in range(n)] for i in range(n)]

    def b_val(x, y):
        return form.polar(x, y)

    for i in range(n):
        if not form.evaluate(basis[i]):
            swapped = False
            for j in range(i + 1, n):
                if form.evaluate(basis[j]):
                    basis[i], basis[j] = basis[j], basis[i]
                    swapped = True
                    break
            if not swapped:
                for j in range(i + 1, n):
                    if b_val(basis[i], basis[j]):
                        basis[i] = [a + b for a, b in zip(basis[i], basis[j])]
                        break
        qi = form.evaluate(basis[i])
        if not qi:
            continue  # basis[i] is in the radical of what remains
        for j in range(i + 1, n):
            c = b_val(basis[i], basis[j]) / (field.from_int(2) * qi)
            if c:
                basis[j] = [a - c * b for a, b in zip(basis[j], basis[i])]
    diag = [form.evaluate(v) for v in basis]
    return diag, [tuple(v) for v in basis]


# ---------------------------------------------------------------------------
# ternary isotropy
# ---------------------------------------------------------------------------

def _ternary_int_isotropy(e0: int, e1: int, e2: int, cap: int = WITNESS_SEARCH_CAP):
    """Squarefree integer diagonal ternary form: decide and find a witness.

    Returns (True, (x, y, z)) or (False, None).  The witness search runs
    within the classical bound |x| <= sqrt(|e1 e2|) etc., valid once the
    coefficients are squarefree and pairwise coprime.
    """
    if e0 > 0 and e1 > 0 and e2 > 0:
        return False, None
    if e0 < 0 and e1 < 0 and e2 < 0:
        return False, None
    for v in ("infinity", 2):
        if hilbert_symbol(-e0 * e2, -e1 * e2, v) == -1:
            return False, None
    odd_places = set()
    for e in (e0, e1, e2):
        odd_places.update(p for p in factor_int(abs(e)) if p != 2)
    for p in sorted(odd_places):
        if hilbert_symbol(-e0 * e2, -e1 * e2, p) == -1:
            return False, None

    # isotropic; make the coefficients pairwise coprime, tracking the
    # projective back-substitution as per-coordinate rational multipliers
    coeffs = [e0, e1, e2]
    mult = [Fraction(1)] * 3
    changed = True
    while changed:
        changed = False
        for i in range(3):
            for j in range(i + 1, 3):
                g = math.gcd(abs(coeffs[i]), abs(coeffs[j]))
                if g > 1:
                    k = 3 - i - j
                    coeffs[i] //= g
                    coeffs[j] //= g
                    coeffs[k] *= g
                    # a x^2 + b y^2 + c z^2 -> (a/g) (gx)^2 + (b/g) (gy)^2 + (gc) z^2
                    mult[i] /= g
                    mult[j] /= g
                    changed = True
            # e y^2 = sf (root*y)^2, so the old coordinate is the new one / root
            sf, root = squarefree_part(coeffs[i])
            if root != 1:
                coeffs[i] = sf
                mult[i] /= root
                changed = True

    a, b, c = coeffs

    def back(triple):
        frac = [m * t for m, t in zip(mult, triple)]
        lcm = math.lcm(*(f.denominator for f in frac))
        return tuple(int(f * lcm) for f in frac)

    # two-term zeros first: e_i x^2 + e_j y^2 = 0 iff -e_i e_j is a square
    for i in range(3):
        for j in range(i + 1, 3):
            prod_neg = -coeffs[i] * coeffs[j]
            if prod_neg >= 0:
                r = math.isqrt(prod_neg)
                if r * r == prod_neg:
                    w = [0, 0, 0]
                    w[i], w[j] = r, abs(coeffs[i])
                    return True, back(w)

    hx = math.isqrt(abs(b * c)) + 1
    hy = math.isqrt(abs(a * c)) + 1
    if max(hx, hy) > cap:
        raise WitnessSearchExhausted(
            f"witness bound {max(hx, hy)} exceeds the search cap {cap}"
        )
    for x in range(hx + 1):
        for y in range(hy + 1):
            if x == 0 and y == 0:
                continue
            t = -(a * x * x + b * y * y)
            if t % c:
                continue
            z2 = t // c
            if z2 < 0:
                continue
            z = math.isqrt(z2)
            if z * z == z2:
                return True, back((x, y, z))
    raise WitnessSearchExhausted("isotropic ternary form, witness not located")


def ternary_isotropic(form: QuadraticForm) -> IsotropyVerdict:
    """Isotropy of a ternary form over Q or GF(p), with witness."""
    if form.n != 3:
        raise DimensionMismatch("ternary decision needs n = 3")
    field = form.field
    if isinstance(field, F2RationalFunctions):
        raise UnsupportedField("ternary isotropy over F2(s,t) is certificate-driven")

    if isinstance(field, PrimeField):
        p = field.p
        for v in product(range(p), repeat=3):
            if v == (0, 0, 0):
                continue
            if not form.evaluate([field.from_int(c) for c in v]):
                return isotropic(form, [field.from_int(c) for c in v], "brute_force")
        return anisotropic("brute_force")

    if not isinstance(field, Rationals):
        raise UnsupportedField(f"ternary isotropy over {field.kind}")

    diag, basis = diagonalize(form)
    for d, vec in zip(diag, basis):
        if not d:
            # rank < 3: the diagonalising vector is already a zero of Q
            return isotropic(form, vec, "brute_force")

    # strip denominators and square factors: d y^2 = sf (r y)^2
    ints = []
    scale_back = []
    for d in diag:
        num = d.numerator * d.denominator
        sf, root = squarefree_part(num)
        ints.append(sf)
        scale_back.append(Fraction(root, d.denominator))
    ok, w = _ternary_int_isotropy(*ints)
    if not ok:
        return anisotropic("hasse_minkowski")
    ys = [Fraction(wi) / s for wi, s in zip(w, scale_back)]
    witness = [sum((y * bv for y, bv in zip(ys, col)), Fraction(0)) for col in zip(*basis)]
    lcm = math.lcm(*(c.denominator for c in witness))
    witness = [c * lcm for c in witness]
    return isotropic(form, witness, "hasse_minkowski")


# ---------------------------------------------------------------------------
# binary (an)isotropy
# ---------------------------------------------------------------------------

def _artin_schreier_root(w: F2Rat, max_degree: int = 2):
    """Bounded search for u with u^2 + u = w over F2(s,t)."""
    monos = [
        (i, j)
        for i in range(max_degree + 1)
        for j in range(max_degree + 1)
        if i + j <= max_degree
    ]
    polys = []
    for bits in range(1 << len(monos)):
        polys.append(F2Poly(m for k, m in enumerate(monos) if bits >> k & 1))
    for den in polys:
        if den.is_zero():
            continue
        den2 = den * den
        wn_d = w.num * den2
        for num in polys:
            # (num/den)^2 + num/den = w  <=>  (num^2 + num*den) * w.den = w.num * den^2
            if (num * num + num * den) * w.den == wn_d:
                return F2Rat(num, den)
    return None


def binary_anisotropic(form: QuadraticForm) -> IsotropyVerdict:
    """Exact verdict for a binary form; 'unknown' only over F2(s,t)."""
    if form.n != 2:
        raise DimensionMismatch("binary decision needs n = 2")
    field = form.field
    a = form.upper[0][0]
    b = form.upper[0][1]
    c = form.upper[1][1]
    one = field.one()
    zero = field.zero()

    if not a and not b and not c:
        return isotropic(form, (one, zero), "brute_force")

    if field.characteristic != 2:
        if not a:
            return isotropic(form, (one, zero), "brute_force")
        disc = b * b - field.from_int(4) * a * c
        sq, r = field.is_square(disc)
        if not sq:
            return anisotropic("certificate")
        t = (-b + r) / (field.from_int(2) * a)
        return isotropic(form, (t, one), "brute_force")

    # characteristic 2
    if not b:
        if not a:
            return isotropic(form, (one, zero), "brute_force")
        if not c:
            return isotropic(form, (zero, one), "brute_force")
        sq, r = field.is_square(c / a)
        if sq:
            return isotropic(form, (r, one), "brute_force")
        return anisotropic("certificate")
    if not a:
        return isotropic(form, (one, zero), "brute_force")
    w = a * c / (b * b)
    if isinstance(field, PrimeField):
        for u in field.elements():
            if u * u + u == w:
                return isotropic(form, (b * u / a, one), "brute_force")
        return anisotropic("brute_force")
    u = _artin_schreier_root(w)
    if u is not None:
        return isotropic(form, (b * u / a, one), "brute_force")
    return unknown()
