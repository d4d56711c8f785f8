"""Subspace lattice of PG(n, K) for small n.

A subspace is stored as the reduced row echelon basis of its underlying
vector subspace, with leading coefficients normalised to 1.  That canonical
form is unique, so subspace equality is literal matrix equality, over every
supported field (for F2(s,t) the entries are unreduced fractions whose
equality is cross-multiplication).

The empty subspace (projective dimension -1) is a first-class value.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .fields import F2Rat, F2Poly, POLY_ONE, Field, FieldMismatch, PrimeField


class AmbientMismatch(ValueError):
    """Subspaces live in different ambient spaces."""


class ZeroParameter(ValueError):
    """The zero pair is not a projective parameter."""


class InfiniteFieldError(ValueError):
    """Exhaustive enumeration requested over an infinite field."""


# ---------------------------------------------------------------------------
# exact linear algebra over an arbitrary field
# ---------------------------------------------------------------------------

def _clear_f2st_row(row):
    """Scale an F2(s,t) row to polynomial entries with trivial content.

    Rows are projective, so multiplying through by the denominators keeps
    the span while stopping the unreduced fractions from compounding.  Equal
    denominators (the common case after a pivot normalisation) are counted
    once, and a common monomial factor is divided out at the end.
    """
    one_monos = frozenset([(0, 0)])
    uniq: list = []  # distinct non-unit denominators, by polynomial equality
    for e in row:
        if e and e.den.monos != one_monos and all(e.den != d for d in uniq):
            uniq.append(e.den)
    nums = []
    out = []
    for e in row:
        if not e:
            out.append(None)
            continue
        cof = POLY_ONE
        for d in uniq:
            if d != e.den:
                cof = cof * d
        nums.append(e.num * cof)
        out.append(len(nums) - 1)
    if not nums:
        return row
    ci = min(min(i for i, _ in p.monos) for p in nums)
    cj = min(min(j for _, j in p.monos) for p in nums)
    if ci or cj:
        nums = [p.shifted(ci, cj) for p in nums]
    zero = F2Rat(F2Poly())
    return [zero if o is None else F2Rat(nums[o]) for o in out]


def rref(field: Field, rows) -> list:
    """Reduced row echelon form with unit pivots; zero rows dropped.

    Elimination is fraction-free (cross-multiplication), with rows divided
    by the leading entry only at the end; over F2(s,t) each row is also
    cleared to polynomial entries after every step.
    """
    f2st = field.characteristic == 2 and field.kind == "f2_rational_functions"
    work = [list(field.vec(r)) for r in rows]
    if f2st:
        work = [_clear_f2st_row(r) for r in work]
    if not work:
        return []
    width = len(work[0])
    pivot_row = 0
    for col in range(width):
        pivot = None
        for r in range(pivot_row, len(work)):
            if work[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        work[pivot_row], work[pivot] = work[pivot], work[pivot_row]
        lead = work[pivot_row][col]
        prow = work[pivot_row]
        for r in range(len(work)):
            if r != pivot_row and work[r][col]:
                f = work[r][col]
                new = [lead * a - f * b for a, b in zip(work[r], prow)]
                work[r] = _clear_f2st_row(new) if f2st else new
        pivot_row += 1
        if pivot_row == len(work):
            break
    out = []
    for r in work[:pivot_row]:
        lead = next(x for x in r if x)
        out.append(tuple(x / lead for x in r))
    return out


def kernel(field: Field, rows, width: int) -> list:
    """Canonical basis of {x : A x = 0} for the matrix with the given rows."""
    reduced = rref(field, rows)
    pivots = []
    for row in reduced:
        for col in range(width):
            if row[col]:
                pivots.append(col)
                break
    free = [c for c in range(width) if c not in pivots]
    basis = []
    zero = field.zero()
    one = field.one()
    for f in free:
        vec = [zero] * width
        vec[f] = one
        for i, p in enumerate(pivots):
            vec[p] = -reduced[i][f]
        basis.append(vec)
    return rref(field, basis)


def reduce_against(field: Field, vec, reduced_rows):
    """Residue of vec after elimination by RREF rows (unit pivots assumed)."""
    v = list(vec)
    width = len(v)
    for row in reduced_rows:
        lead = next(c for c in range(width) if row[c])
        if v[lead]:
            f = v[lead]
            v = [a - f * b for a, b in zip(v, row)]
    return v


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProjSubspace:
    """Subspace of PG(n, K); rows are the canonical RREF basis."""

    field: Field
    n: int
    rows: tuple

    @staticmethod
    def from_vectors(field: Field, n: int, vectors) -> "ProjSubspace":
        rows = rref(field, [field.vec(v) for v in vectors])
        for r in rows:
            if len(r) != n + 1:
                raise AmbientMismatch(f"vector length {len(r)} in PG({n})")
        return ProjSubspace(field, n, tuple(rows))

    @staticmethod
    def empty(field: Field, n: int) -> "ProjSubspace":
        return ProjSubspace(field, n, ())

    @staticmethod
    def point(field: Field, coords) -> "ProjSubspace":
        coords = field.vec(coords)
        if not any(coords):
            raise ValueError("a point needs a nonzero coordinate vector")
        return ProjSubspace.from_vectors(field, len(coords) - 1, [coords])

    @property
    def dim(self) -> int:
        return len(self.rows) - 1

    def is_empty(self) -> bool:
        return not self.rows

    def is_point(self) -> bool:
        return len(self.rows) == 1

    def is_line(self) -> bool:
        return len(self.rows) == 2

    def is_plane(self) -> bool:
        return len(self.rows) == 3

    def vector(self):
        """Coordinate vector of a point."""
        if not self.is_point():
            raise ValueError("vector() is only defined for points")
        return self.rows[0]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "rows": [[self.field.format(x) for x in row] for row in self.rows],
        }

    @staticmethod
    def from_json(field: Field, data: dict) -> "ProjSubspace":
        n = int(data["n"])
        rows = [[field.parse(x) for x in row] for row in data["rows"]]
        return ProjSubspace.from_vectors(field, n, rows)


def _common_ambient(subs):
    field = subs[0].field
    n = subs[0].n
    for s in subs[1:]:
        if s.field != field:
            raise FieldMismatch("subspaces over different fields")
        if s.n != n:
            raise AmbientMismatch(f"PG({s.n}) vs PG({n})")
    return field, n


def span(*subspaces: ProjSubspace) -> ProjSubspace:
    """Smallest subspace containing all the inputs."""
    if not subspaces:
        raise ValueError("span of nothing")
    field, n = _common_ambient(subspaces)
    rows = [row for s in subspaces for row in s.rows]
    return ProjSubspace(field, n, tuple(rref(field, rows)))


def meet(a: ProjSubspace, b: ProjSubspace) -> ProjSubspace:
    """Intersection, via the Zassenhaus block trick."""
    field, n = _common_ambient([a, b])
    width = n + 1
    zero = field.zero()
    block = [list(r) + list(r) for r in a.rows]
    block += [list(r) + [zero] * width for r in b.rows]
    reduced = rref(field, block)
    inter = [row[width:] for row in reduced if not any(row[:width])]
    return ProjSubspace(field, n, tuple(rref(field, inter)))


def incident(p: ProjSubspace, s: ProjSubspace) -> bool:
    """True iff p is contained in s (the empty subspace is in everything)."""
    _common_ambient([p, s])
    for row in p.rows:
        if any(reduce_against(p.field, row, s.rows)):
            return False
    return True


# ---------------------------------------------------------------------------
# points on a line
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LineParam:
    """Homogeneous parameter [t0 : t1] on a line's canonical basis (b0, b1)."""

    line: ProjSubspace
    t0: object
    t1: object

    def __post_init__(self):
        if not self.line.is_line():
            raise ValueError("LineParam needs a line")
        if not (self.t0 or self.t1):
            raise ZeroParameter("parameter (0, 0) is not projective")


def params_equal(a: LineParam, b: LineParam) -> bool:
    return a.t0 * b.t1 == a.t1 * b.t0


def point_at(lp: LineParam) -> ProjSubspace:
    b0, b1 = lp.line.rows
    coords = [lp.t0 * x + lp.t1 * y for x, y in zip(b0, b1)]
    return ProjSubspace.point(lp.line.field, coords)


def line_points(line: ProjSubspace):
    """All points of a line over a finite field (q + 1 of them)."""
    field = line.field
    if not isinstance(field, PrimeField):
        raise InfiniteFieldError("point enumeration needs a finite field")
    pts = [point_at(LineParam(line, field.one(), field.zero()))]
    for v in range(field.p):
        pts.append(point_at(LineParam(line, field.from_int(v), field.one())))
    return pts


# ---------------------------------------------------------------------------
# exhaustive enumeration over GF(p)
# ---------------------------------------------------------------------------

def rref_matrices_mod_p(p: int, width: int, k: int):
    """All k x width RREF matrices over GF(p), as tuples of int rows.

    Each matrix is the canonical basis of exactly one (k-1)-dimensional
    subspace of PG(width-1, p), so this enumerates subspaces without
    duplicates.
    """
    for pivots in combinations(range(width), k):
        free = [
            (r, c)
            for r in range(k)
            for c in range(width)
            if c > pivots[r] and c not in pivots
        ]
        for values in product(range(p), repeat=len(free)):
            rows = [[0] * width for _ in range(k)]
            for r in range(k):
                rows[r][pivots[r]] = 1
            for (r, c), v in zip(free, values):
                rows[r][c] = v
            yield tuple(tuple(r) for r in rows)


def enumerate_subspaces(field: Field, n: int, d: int):
    """Every d-dimensional subspace of PG(n, p) exactly once."""
    if not isinstance(field, PrimeField):
        raise InfiniteFieldError("subspace enumeration needs a finite field")
    if field.p not in (2, 3):
        raise InfiniteFieldError("exhaustive enumeration is limited to GF(2), GF(3)")
    if n > 5 or d > 3:
        raise ValueError("enumeration is limited to n <= 5, d <= 3")
    for rows in rref_matrices_mod_p(field.p, n + 1, d + 1):
        yield ProjSubspace(field, n, tuple(tuple(field.from_int(v) for v in r) for r in rows))


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional vector subspaces of GF(q)^n."""
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    return num // den


# ---------------------------------------------------------------------------
# seeded sampling
# ---------------------------------------------------------------------------

def random_point(ambient_or_sub, rng, n: int | None = None, field: Field | None = None):
    """Random point of a subspace (or of PG(n) if given field and n)."""
    if isinstance(ambient_or_sub, ProjSubspace):
        sub = ambient_or_sub
        field = sub.field
        basis = sub.rows
        width = sub.n + 1
        if not basis:
            raise ValueError("the empty subspace has no points")
    else:
        raise TypeError("random_point expects a ProjSubspace")
    while True:
        coeffs = [field.random_coord(rng) for _ in basis]
        if not any(coeffs):
            continue
        coords = [field.zero()] * width
        for c, row in zip(coeffs, basis):
            if c:
                coords = [a + c * b for a, b in zip(coords, row)]
        if any(coords):
            return ProjSubspace.point(field, coords)


def whole_space(field: Field, n: int) -> ProjSubspace:
    one = field.one()
    zero = field.zero()
    rows = tuple(
        tuple(one if i == j else zero for j in range(n + 1)) for i in range(n + 1)
    )
    return ProjSubspace(field, n, rows)


def random_subspace(field: Field, n: int, d: int, rng) -> ProjSubspace:
    """Random subspace of exact dimension d."""
    amb = whole_space(field, n)
    while True:
        pts = [random_point(amb, rng) for _ in range(d + 1)]
        s = span(*pts)
        if s.dim == d:
            return s


def random_line(field: Field, n: int, rng) -> ProjSubspace:
    return random_subspace(field, n, 1, rng)
