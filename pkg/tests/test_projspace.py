import random
from itertools import product

import pytest

from klein_parallelisms.fields import F2RationalFunctions, PrimeField, Rationals
from klein_parallelisms.projspace import (
    InfiniteFieldError,
    LineParam,
    ProjSubspace,
    ZeroParameter,
    enumerate_subspaces,
    gaussian_binomial,
    incident,
    line_points,
    meet,
    point_at,
    random_point,
    random_subspace,
    span,
    whole_space,
)

Q = Rationals()


def sub(field, n, rows):
    return ProjSubspace.from_vectors(field, n, rows)


def e(i, width=4):
    return tuple(1 if j == i else 0 for j in range(width))


# ---------------------------------------------------------------------------
# span / meet / incidence
# ---------------------------------------------------------------------------

def test_span_of_points_is_line():
    line = span(ProjSubspace.point(Q, e(0)), ProjSubspace.point(Q, e(1)))
    assert line == sub(Q, 3, [e(0), e(1)])
    assert line.dim == 1


def test_span_idempotent():
    line = sub(Q, 3, [e(0), e(1)])
    p = ProjSubspace.point(Q, (1, 2, 0, 0))
    assert span(line, p) == line


def test_span_three_generic_points_rank_oracle():
    rng = random.Random(1)
    amb = whole_space(Q, 5)
    for _ in range(10):
        pts = [random_point(amb, rng) for _ in range(3)]
        s = span(*pts)
        # oracle: rank by counting pivots of the naive elimination
        rows = [list(p.vector()) for p in pts]
        rank = 0
        for col in range(6):
            piv = next((r for r in range(rank, 3) if rows[r][col]), None)
            if piv is None:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            for r in range(3):
                if r != rank and rows[r][col]:
                    f = rows[r][col] / rows[rank][col]
                    rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
            rank += 1
        assert s.dim == rank - 1


def test_meet_hyperplanes_and_lines():
    h1 = sub(Q, 5, [e(i, 6) for i in range(5)])
    h2 = sub(Q, 5, [e(i, 6) for i in range(1, 6)])
    assert meet(h1, h2).dim == 3
    line = sub(Q, 5, [e(0, 6), e(5, 6)])
    assert meet(line, h1).dim == 0
    skew1 = sub(Q, 3, [e(0), e(1)])
    skew2 = sub(Q, 3, [e(2), e(3)])
    assert meet(skew1, skew2).is_empty()


def test_incident():
    line = sub(Q, 3, [e(0), e(1)])
    assert incident(ProjSubspace.point(Q, e(0)), line)
    assert not incident(ProjSubspace.point(Q, e(2)), line)
    assert incident(ProjSubspace.empty(Q, 3), line)


def test_dimension_formula_sampled():
    """dim S + dim T = dim(S v T) + dim(S ^ T) on random pairs."""
    rng = random.Random(2)
    for field in (Q, PrimeField(3), F2RationalFunctions()):
        for _ in range(12):
            s = random_subspace(field, 5, rng.randint(0, 3), rng)
            t = random_subspace(field, 5, rng.randint(0, 3), rng)
            joined = span(s, t)
            common = meet(s, t)
            assert s.dim + t.dim == joined.dim + common.dim


def test_canonical_form_invariance():
    rng = random.Random(3)
    for field in (Q, PrimeField(3), F2RationalFunctions()):
        for _ in range(10):
            s = random_subspace(field, 5, 2, rng)
            rows = list(s.rows)
            rng.shuffle(rows)
            scaled = []
            for r in rows:
                c = field.random_nonzero(rng)
                scaled.append([c * x for x in r])
            assert ProjSubspace.from_vectors(field, 5, scaled) == s


# ---------------------------------------------------------------------------
# line parameters
# ---------------------------------------------------------------------------

def test_point_at_basis():
    line = sub(Q, 3, [e(0), e(1)])
    b0, b1 = line.rows
    assert point_at(LineParam(line, Q.one(), Q.zero())).vector() == b0
    assert point_at(LineParam(line, Q.zero(), Q.one())).vector() == b1
    with pytest.raises(ZeroParameter):
        LineParam(line, Q.zero(), Q.zero())


def test_point_at_third_point_gf2():
    """[1:1] on a GF(2) line is the unique point other than the basis pair."""
    g = PrimeField(2)
    line = sub(g, 3, [(1, 0, 1, 0), (0, 1, 1, 1)])
    all_pts = []
    for c0, c1 in product(range(2), repeat=2):
        if (c0, c1) == (0, 0):
            continue
        coords = [
            (c0 * a + c1 * b) % 2 for a, b in zip((1, 0, 1, 0), (0, 1, 1, 1))
        ]
        p = ProjSubspace.point(g, coords)
        if p not in all_pts:
            all_pts.append(p)
    assert len(all_pts) == 3
    third = point_at(LineParam(line, g.one(), g.one()))
    b0 = point_at(LineParam(line, g.one(), g.zero()))
    b1 = point_at(LineParam(line, g.zero(), g.one()))
    assert third in all_pts and third != b0 and third != b1
    assert len(line_points(line)) == 3


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def test_gaussian_binomial_values():
    assert gaussian_binomial(4, 2, 2) == 35
    assert gaussian_binomial(6, 1, 2) == 63
    assert gaussian_binomial(6, 3, 2) == 1395
    assert gaussian_binomial(4, 2, 3) == 130


@pytest.mark.parametrize(
    "p,n,d,expected",
    [
        (2, 3, 1, 35),
        (2, 5, 0, 63),
        (2, 5, 2, 1395),
        (3, 3, 1, 130),
        (3, 5, 0, 364),
    ],
)
def test_enumeration_counts(p, n, d, expected):
    field = PrimeField(p)
    assert expected == gaussian_binomial(n + 1, d + 1, p)
    seen = set()
    for s in enumerate_subspaces(field, n, d):
        assert s.dim == d
        key = tuple(tuple(field.format(x) for x in row) for row in s.rows)
        assert key not in seen
        seen.add(key)
        # canonical: re-spanning reproduces the same matrix
        assert ProjSubspace.from_vectors(field, n, s.rows) == s
    assert len(seen) == expected


def test_enumeration_rejects_infinite_field():
    with pytest.raises(InfiniteFieldError):
        list(enumerate_subspaces(Q, 3, 1))


def test_subspace_json_roundtrip():
    rng = random.Random(5)
    for field in (Q, PrimeField(3), F2RationalFunctions()):
        s = random_subspace(field, 5, 2, rng)
        assert ProjSubspace.from_json(field, s.to_json()) == s
