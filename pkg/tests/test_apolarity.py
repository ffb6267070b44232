from __future__ import annotations

import random
from fractions import Fraction

import pytest

from apolar import linalg
from apolar.apolarity import (
    ann_degree,
    apolar_length,
    catalecticant,
    dual_socle_generator,
    family_length_profile,
    hilbert_function,
    is_nondegenerate_cubic,
    leading_form_check,
    scheme_length,
    shift_table,
    translated_apolar,
)
from apolar.constructions import fiber_point, random_cubic, sum_of_cubes
from apolar.poly import (
    Poly,
    coefficient_vector,
    contract,
    monomial_index,
    monomials,
    parse_family_template,
    parse_poly,
    poly_from_vector,
    substitute_shift,
)

P = 67108859

# the five-term cubic all the worked numbers in this suite come from
FIXTURE = "x0*x1*x3 - x0*x4^2 + x1*x2^2 + x2*x4*x5 + x3*x5^2"


def _fixture():
    return parse_poly(FIXTURE, "P", 6)


def test_shift_table_indexes_products():
    table = shift_table(6, 2, 1)
    idx2 = monomials(6, 2)
    idx1 = monomials(6, 1)
    lookup = monomial_index(6, 3)
    for i, e2 in enumerate(idx2):
        for j, e1 in enumerate(idx1):
            prod = tuple(a + b for a, b in zip(e2, e1))
            assert table[i, j] == lookup[prod]


def test_catalecticant_rank_of_a_cube():
    F = parse_poly("x5^3", "P", 6)
    for r in (1, 2):
        cat = catalecticant(F, r, P)
        assert linalg.rank_fp(cat, P) == 1
    assert hilbert_function(F, P) == (1, 1, 1, 1)


def test_catalecticant_bad_degree_index():
    F = _fixture()
    with pytest.raises(ValueError):
        catalecticant(F, 5, P)
    with pytest.raises(ValueError):
        catalecticant(F, -1, P)


def test_hilbert_function_fixture():
    F = _fixture()
    assert hilbert_function(F, P) == (1, 6, 6, 1)
    assert hilbert_function(F) == (1, 6, 6, 1)  # exact rational agreement
    assert hilbert_function(F, P).socle_degree == 3


def test_hilbert_function_sum_of_cubes():
    assert hilbert_function(sum_of_cubes(), P) == (1, 6, 6, 1)


def test_hilbert_function_is_symmetric_for_random_cubics():
    for seed in range(5):
        F = random_cubic(seed=seed, p=P)
        hf = tuple(hilbert_function(F, P))
        assert hf == hf[::-1]


def test_ann_degree_dimensions():
    F = _fixture()
    assert ann_degree(F, 2, P).dim == 15
    assert ann_degree(F, 3, P).dim == 55
    # past the socle the annihilator is everything
    assert ann_degree(F, 4, P).dim == 126
    assert ann_degree(F, 2).dim == 15


def test_ann_degree_rows_annihilate():
    F = _fixture()
    A = ann_degree(F, 2, P)
    for row in A.rows:
        q = poly_from_vector([int(c) for c in row], "S", 6, 2)
        res = contract(q, F)
        assert all(c % P == 0 for c in res.terms.values())


def test_apolar_length_values():
    assert apolar_length(_fixture(), P) == 14
    assert apolar_length(parse_poly("x5^3", "P", 6), P) == 4
    assert apolar_length(Poly.zero("P", 6)) == 0
    assert scheme_length(Poly.zero("P", 6)) == 1


def test_apolar_length_rejects_high_degree():
    with pytest.raises(ValueError):
        apolar_length(Poly.monomial("P", 6, (4, 0, 0, 0, 0, 0)))


def test_is_nondegenerate_cubic():
    assert is_nondegenerate_cubic(_fixture(), P)
    assert not is_nondegenerate_cubic(parse_poly("x5^3", "P", 6), P)
    assert not is_nondegenerate_cubic(parse_poly("x0*x1*x2", "P", 6), P)
    assert not is_nondegenerate_cubic(Poly.zero("P", 6), P)


def test_dual_socle_generator_inverts_annihilator():
    """Recover the cubic from its 15 quadric annihilators, both fields."""
    F = _fixture()
    for p in (P, None):
        A = ann_degree(F, 2, p)
        qs = [poly_from_vector(list(row), "S", 6, 2) for row in A.rows]
        G = dual_socle_generator(qs, 6, p)
        # unique up to scalar; both are normalized forms of the same line
        catF = coefficient_vector(F, 3)
        catG = coefficient_vector(G, 3)
        sp = linalg.span([catF, catG], "P", 3, 6, 56, p)
        assert sp.dim == 1


def test_dual_socle_generator_degenerate_input():
    qs = [Poly.monomial("S", 6, e) for e in list(monomials(6, 2))[:3]]
    with pytest.raises(ValueError):
        dual_socle_generator(qs, 6, P)


def test_translated_apolar_length_invariant():
    rng = random.Random(12)
    F3, Q = fiber_point(seed=2, p=P)
    f = F3 + Q
    base = apolar_length(f, P)
    for _ in range(4):
        w = tuple(rng.randrange(P) for _ in range(6))
        ta = translated_apolar(f, w, P)
        assert ta.length == base
        assert ta.support == w


def test_translated_apolar_round_trip():
    """Shifting generators back by -w recovers the original slice span."""
    F3, Q = fiber_point(seed=5, p=P)
    f = F3 + Q
    w = (3, 1, 4, 1, 5, 9)
    ta = translated_apolar(f, w, P)
    zero = translated_apolar(f, (0,) * 6, P)

    def _span(gens):
        from apolar.apolarity import _le_vector
        return linalg.span([_le_vector(g, 4) for g in gens],
                           "S", 4, 6, 210, P)

    back = [substitute_shift(g, tuple(-c for c in w)) for g in ta.generators]
    assert _span(back) == _span(zero.generators)


def test_translated_apolar_generators_kill_translated_data():
    # at w = 0 the generators are plain annihilators of f
    F3, Q = fiber_point(seed=7, p=P)
    f = F3 + Q
    ta = translated_apolar(f, (0,) * 6, P)
    for g in ta.generators[:25]:
        res = contract(g, f)
        assert all(c % P == 0 for c in res.terms.values())


def test_family_length_profile_constant():
    tmpl = parse_family_template("t*x1^2 + x1*x2", 6)
    prof = family_length_profile(tmpl, [0, 1, 2, 3, 4], P)
    assert prof.flag == "CONSTANT"
    assert set(prof.lengths.values()) == {4}


def test_family_length_profile_jump():
    tmpl = parse_family_template("t*x1", 6)
    prof = family_length_profile(tmpl, [0, 1, 2, 3], P)
    assert prof.flag == "JUMP"
    assert prof.lengths[0] == 1
    assert all(prof.lengths[t] == 2 for t in (1, 2, 3))


def test_family_length_profile_constant_template():
    tmpl = parse_family_template("x1*x2 + x3", 6)
    prof = family_length_profile(tmpl, [0, 5], P)
    assert prof.flag == "CONSTANT"


def test_leading_form_check_random_inputs():
    for seed in range(6):
        F = random_cubic(seed=seed, p=P)
        assert leading_form_check(F, P)
    F3, Q = fiber_point(seed=1, p=P)
    assert leading_form_check(F3 + Q, P)
