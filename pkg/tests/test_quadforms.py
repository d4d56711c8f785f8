import random
from fractions import Fraction
from itertools import product

import pytest

from klein_parallelisms.fields import (
    F2Poly,
    F2Rat,
    F2RationalFunctions,
    PrimeField,
    Rationals,
)
from klein_parallelisms.quadforms import (
    DimensionMismatch,
    FactorizationError,
    InvalidPlace,
    QuadraticForm,
    UnsupportedField,
    binary_anisotropic,
    diagonalize,
    factor_int,
    hilbert_symbol,
    hilbert_symbol_all_places,
    restrict_form,
    squarefree_part,
    ternary_isotropic,
)

Q = Rationals()
F = F2RationalFunctions()


# ---------------------------------------------------------------------------
# integer utilities
# ---------------------------------------------------------------------------

def test_factor_int():
    assert factor_int(360) == {2: 3, 3: 2, 5: 1}
    assert factor_int(-7) == {7: 1}
    with pytest.raises(FactorizationError):
        # product of two primes beyond the trial bound
        factor_int((10**7 + 19) * (10**7 + 79), bound=10**3)


def test_squarefree_part():
    assert squarefree_part(360) == (10, 6)
    assert squarefree_part(-12) == (-3, 2)
    assert squarefree_part(49) == (1, 7)


# ---------------------------------------------------------------------------
# hilbert symbol
# ---------------------------------------------------------------------------

def test_hilbert_symbol_examples():
    assert hilbert_symbol(-1, -1, "infinity") == -1
    for b in (2, -3, Fraction(5, 7)):
        for place in ("infinity", 2, 3, 5, 7):
            assert hilbert_symbol(1, b, place) == 1
    with pytest.raises(InvalidPlace):
        hilbert_symbol(2, 3, 6)


def test_hilbert_symbol_minus1_minus1_at_2_oracle():
    """x^2 + y^2 + z^2 has no primitive zero mod 8, so (-1,-1)_2 = -1."""
    for x, y, z in product(range(8), repeat=3):
        if x % 2 == 0 and y % 2 == 0 and z % 2 == 0:
            continue
        assert (x * x + y * y + z * z) % 8 != 0
    assert hilbert_symbol(-1, -1, 2) == -1


def test_hilbert_symbol_product_formula():
    rng = random.Random(11)
    for _ in range(100):
        a = Fraction(rng.randint(-20, 20) or 1, rng.randint(1, 20))
        b = Fraction(rng.randint(-20, 20) or 1, rng.randint(1, 20))
        values = hilbert_symbol_all_places(a, b)
        prod_v = 1
        for v in values.values():
            prod_v *= v
        assert prod_v == 1


def test_hilbert_symbol_symmetry_and_bimultiplicativity():
    rng = random.Random(12)
    for _ in range(40):
        a, a2, b = (Fraction(rng.randint(1, 30)) * rng.choice([1, -1]) for _ in range(3))
        for place in ("infinity", 2, 3, 5):
            assert hilbert_symbol(a, b, place) == hilbert_symbol(b, a, place)
            assert hilbert_symbol(a * a2, b, place) == hilbert_symbol(
                a, b, place
            ) * hilbert_symbol(a2, b, place)


# ---------------------------------------------------------------------------
# diagonalisation
# ---------------------------------------------------------------------------

def test_diagonalize_orthogonal_basis():
    rng = random.Random(13)
    for _ in range(20):
        gram = [[Fraction(rng.randint(-4, 4)) for _ in range(3)] for _ in range(3)]
        for i in range(3):
            for j in range(i):
                gram[i][j] = gram[j][i]
        form = QuadraticForm.from_symmetric(Q, gram)
        diag, basis = diagonalize(form)
        for i in range(3):
            assert form.evaluate(basis[i]) == diag[i]
            for j in range(i + 1, 3):
                assert not form.polar(basis[i], basis[j])


# ---------------------------------------------------------------------------
# ternary isotropy
# ---------------------------------------------------------------------------

def _brute_zero(form, height):
    span_range = [Fraction(k) for k in range(-height, height + 1)]
    for x in range(height + 1):
        for y in span_range:
            for z in span_range:
                v = (Fraction(x), y, z)
                if any(v) and not form.evaluate(v):
                    return v
    return None


def test_ternary_examples():
    assert ternary_isotropic(QuadraticForm.diagonal(Q, (1, 1, 1))).status == "anisotropic"
    v = ternary_isotropic(QuadraticForm.diagonal(Q, (1, 1, -1)))
    assert v.status == "isotropic"
    assert v.witness is not None  # validity is enforced at construction


def test_ternary_against_bounded_oracle():
    rng = random.Random(14)
    for k in range(40):
        if k % 2:
            entries = [Fraction(rng.randint(-9, 9)) for _ in range(3)]
            if not all(entries):
                continue
            form = QuadraticForm.diagonal(Q, entries)
        else:
            gram = [[Fraction(rng.randint(-5, 5)) for _ in range(3)] for _ in range(3)]
            for i in range(3):
                for j in range(i):
                    gram[i][j] = gram[j][i]
            form = QuadraticForm.from_symmetric(Q, gram)
        verdict = ternary_isotropic(form)
        oracle = _brute_zero(form, 12)
        if oracle is not None:
            assert verdict.status == "isotropic"
        if verdict.status == "anisotropic":
            assert oracle is None


@pytest.mark.parametrize("p", [2, 3])
def test_ternary_exhaustive_finite(p):
    """Every nondegenerate ternary form over GF(p) is isotropic."""
    field = PrimeField(p)
    elems = field.elements()
    total = checked = 0
    for coeffs in product(range(p), repeat=6):
        c01, c02, c12, c00, c11, c22 = coeffs
        form = QuadraticForm.from_upper(
            field,
            [[c00, c01, c02], [0, c11, c12], [0, 0, c22]],
        )
        total += 1
        # nondegenerate: no nonzero vector that kills both B(v, .) and Q(v)
        degenerate = False
        for v in product(range(p), repeat=3):
            if v == (0, 0, 0):
                continue
            vv = [field.from_int(c) for c in v]
            if any(form.polar(vv, [field.from_int(1 if i == k else 0) for i in range(3)]) for k in range(3)):
                continue
            if not form.evaluate(vv):
                degenerate = True
                break
        if degenerate:
            continue
        checked += 1
        verdict = ternary_isotropic(form)
        assert verdict.status == "isotropic", coeffs
    assert checked > 0 and total == p ** 6


def test_ternary_rejects_f2st():
    form = QuadraticForm.diagonal(F, (F.one(), F.s(), F.t()))
    with pytest.raises(UnsupportedField):
        ternary_isotropic(form)


def test_ternary_dimension_check():
    with pytest.raises(DimensionMismatch):
        ternary_isotropic(QuadraticForm.diagonal(Q, (1, 1)))


# ---------------------------------------------------------------------------
# binary forms
# ---------------------------------------------------------------------------

def test_binary_examples():
    assert binary_anisotropic(QuadraticForm.diagonal(Q, (1, 1))).status == "anisotropic"
    v = binary_anisotropic(QuadraticForm.diagonal(Q, (1, -1)))
    assert v.status == "isotropic" and v.witness == (Fraction(1), Fraction(1))


def test_binary_f2st_nonsquare_oracle():
    # s has an odd exponent, so it is a nonsquare and x^2 + s y^2 is anisotropic
    assert all((i + j) for (i, j) in F.s().num.monos)
    form = QuadraticForm.diagonal(F, (F.one(), F.s()))
    assert binary_anisotropic(form).status == "anisotropic"


def test_binary_f2st_artin_schreier():
    one = F.one()
    s = F.s()
    # u^2 + u = s^2 + s has the root u = s
    form = QuadraticForm.from_upper(F, [[one, one], [F.zero(), s * s + s]])
    v = binary_anisotropic(form)
    assert v.status == "isotropic"
    # u^2 + u = 1 has no root in F2(s,t); the bounded search reports unknown
    form = QuadraticForm.from_upper(F, [[one, one], [F.zero(), one]])
    v = binary_anisotropic(form)
    assert v.status == "unknown" and v.proof == "bounded_search_exhausted"


def test_binary_gf2_brute():
    g = PrimeField(2)
    # x^2 + xy + y^2 is the anisotropic binary form over GF(2)
    form = QuadraticForm.from_upper(g, [[1, 1], [0, 1]])
    assert binary_anisotropic(form).status == "anisotropic"
    for v in ((1, 0), (0, 1), (1, 1)):
        assert form.evaluate([g.from_int(c) for c in v])


# ---------------------------------------------------------------------------
# restriction
# ---------------------------------------------------------------------------

def _klein6(field):
    zero = field.zero()
    one = field.one()
    coeffs = [[zero] * 6 for _ in range(6)]
    coeffs[0][5] = one
    coeffs[1][4] = -one
    coeffs[2][3] = one
    return QuadraticForm.from_upper(field, coeffs)


def test_restrict_to_coordinate_plane_is_zero():
    form = _klein6(Q)
    rows = [
        (1, 0, 0, 0, 0, 0),
        (0, 1, 0, 0, 0, 0),
        (0, 0, 1, 0, 0, 0),
    ]
    r = restrict_form(form, rows)
    assert all(not r.upper[i][j] for i in range(3) for j in range(3))


def test_restrict_matches_congruence_oracle():
    """Restriction must equal P G P^T computed directly on the Gram matrix."""
    rng = random.Random(15)
    form = _klein6(Q)
    gram = form.symmetric_gram()
    for _ in range(10):
        rows = [[Fraction(rng.randint(-3, 3)) for _ in range(6)] for _ in range(3)]
        if all(not any(r) for r in rows):
            continue
        r = restrict_form(form, rows)
        small = [
            [
                sum(rows[i][a] * gram[a][b] * rows[j][b] for a in range(6) for b in range(6))
                for j in range(3)
            ]
            for i in range(3)
        ]
        for i in range(3):
            assert r.upper[i][i] == small[i][i]
            for j in range(i + 1, 3):
                assert r.upper[i][j] == 2 * small[i][j]


def test_restrict_full_space_identity():
    form = _klein6(Q)
    eye = [[1 if i == j else 0 for j in range(6)] for i in range(6)]
    assert restrict_form(form, eye).upper == form.upper


def test_polar_consistency_all_characteristics():
    """B(x, y) = Q(x+y) - Q(x) - Q(y) for sampled vectors."""
    rng = random.Random(16)
    for field in (Q, PrimeField(2), PrimeField(3), F):
        form = _klein6(field)
        for _ in range(20):
            x = [field.random_scalar(rng) for _ in range(6)]
            y = [field.random_scalar(rng) for _ in range(6)]
            xy = [a + b for a, b in zip(x, y)]
            lhs = form.polar(x, y)
            rhs = form.evaluate(xy) - form.evaluate(x) - form.evaluate(y)
            assert lhs == rhs


def test_witness_validation():
    form = QuadraticForm.diagonal(Q, (1, 1, 1))
    from klein_parallelisms.quadforms import isotropic

    with pytest.raises(ValueError):
        isotropic(form, (1, 0, 0), "brute_force")
    with pytest.raises(ValueError):
        isotropic(form, (0, 0, 0), "brute_force")
