import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from toricmld.errors import InputError, NotInLattice, NotPrimitive
from toricmld.germ import (
    Face,
    ToricGerm,
    all_faces,
    cartier_index,
    full_face,
    germ_cyclic_quotient,
    germ_from_px,
    germ_normalize,
    log_discrepancy_of_valuation,
    mld_bruteforce_oracle,
    mld_face,
    mld_global,
    px_mld_formula,
    verify_minkowski,
)
from toricmld.lattice import Lattice, lattice_from_generators


def std(dim):
    return Lattice.standard(dim)


# -- construction ----------------------------------------------------------------


def test_face_validation():
    with pytest.raises(InputError):
        Face(())
    with pytest.raises(InputError):
        Face.coerce((0, 1), 2)
    with pytest.raises(InputError):
        Face.coerce((3,), 2)
    assert Face.coerce((2, 1, 1), 3).support == (1, 2)


def test_germ_rejects_bad_boundary():
    with pytest.raises(InputError):
        ToricGerm(std(2), (F(3, 2), F(0)))
    with pytest.raises(InputError):
        germ_normalize(std(2), (F(-1, 2), F(0)))


def test_germ_requires_normal_form():
    halfaxis = lattice_from_generators(2, [(F(1, 2), 0)])
    with pytest.raises(InputError):
        ToricGerm(halfaxis, (0, 0))


def test_normalize_examples():
    g = germ_normalize(lattice_from_generators(2, [(F(1, 2), 0)]), (0, 0))
    assert g.lattice == std(2)  # a smooth germ in disguise
    g2 = germ_normalize(lattice_from_generators(2, [(F(1, 2), F(1, 4))]), (0, 0))
    assert g2.lattice == lattice_from_generators(2, [(F(1, 2), F(1, 2))])
    again = germ_normalize(g2.lattice, g2.boundary)
    assert again == g2  # idempotent


def test_cyclic_quotient_examples():
    assert germ_cyclic_quotient(3, (1, 2)).lattice == lattice_from_generators(2, [(F(1, 3), F(2, 3))])
    assert germ_cyclic_quotient(2, (1, 1)).lattice == lattice_from_generators(2, [(F(1, 2), F(1, 2))])
    assert germ_cyclic_quotient(5, (1, 2, 3)).lattice == lattice_from_generators(
        3, [(F(1, 5), F(2, 5), F(3, 5))]
    )
    with pytest.raises(InputError):
        germ_cyclic_quotient(0, (1, 1))


def test_px_construction_examples():
    g, n = germ_from_px((F(1, 2), F(1, 2)))
    assert n == (1, 1) and g.boundary == (F(0), F(0))
    assert g == germ_cyclic_quotient(2, (1, 1))

    g, n = germ_from_px((F(1, 2), F(1, 4)))
    assert n == (1, 2)
    assert g.boundary == (F(0), F(1, 2))
    assert g.lattice == lattice_from_generators(2, [(F(1, 2), F(1, 2))])

    g, n = germ_from_px((1, 1, 1))
    assert n == (1, 1, 1) and g.lattice == std(3) and g.boundary == (F(0),) * 3

    with pytest.raises(InputError):
        germ_from_px((F(3, 2), F(1, 2)))


# -- single-valuation values --------------------------------------------------------


def test_log_discrepancy_examples():
    g = ToricGerm(std(2), (F(1, 3), F(0)))
    assert log_discrepancy_of_valuation(g, (1, 0)) == F(2, 3)
    a2 = germ_cyclic_quotient(3, (1, 2))
    assert log_discrepancy_of_valuation(a2, (F(1, 3), F(2, 3))) == 1
    assert log_discrepancy_of_valuation(ToricGerm(std(2), (0, 0)), (1, 1)) == 2


def test_log_discrepancy_errors():
    g = ToricGerm(std(2), (0, 0))
    with pytest.raises(NotInLattice):
        log_discrepancy_of_valuation(g, (F(1, 2), F(1, 2)))
    with pytest.raises(InputError):
        log_discrepancy_of_valuation(g, (-1, 0))
    with pytest.raises(NotPrimitive) as err:
        log_discrepancy_of_valuation(g, (2, 4))
    assert err.value.scale == 2


# -- face minima ---------------------------------------------------------------------


def test_mld_face_examples():
    a2 = germ_cyclic_quotient(3, (1, 2))
    rep = mld_face(a2, (1, 2))
    assert rep.value == 1
    assert rep.witnesses == ((F(1, 3), F(2, 3)), (F(2, 3), F(1, 3)))

    quarter = ToricGerm(lattice_from_generators(3, [(F(1, 4), F(2, 4), F(3, 4))]), (0, 0, 0))
    assert mld_face(quarter, (1, 3)).value == 1

    g = ToricGerm(std(3), (F(1, 5), F(1, 7), F(0)))
    assert mld_face(g, (1, 2)).value == 2 - F(1, 5) - F(1, 7)
    assert mld_face(g, (2,)).value == 1 - F(1, 7)


def test_mld_witness_invariants():
    quarter = ToricGerm(lattice_from_generators(3, [(F(1, 4), F(2, 4), F(3, 4))]), (0, 0, 0))
    rep = mld_face(quarter, full_face(3))
    assert rep.value == F(3, 2)
    for w in rep.witnesses:
        assert quarter.lattice.contains(w)
        assert all(0 < c <= 1 for c in w)
        assert quarter.log_discrepancy(w) == rep.value


def test_mld_global_examples():
    assert mld_global(germ_cyclic_quotient(2, (1, 1))).value == 1
    rep = mld_global(ToricGerm(std(2), (1, 0)))
    assert rep.value == 0 and rep.witnesses == ((F(1), F(0)),) and rep.face.support == (1,)
    assert mld_global(ToricGerm(std(2), (0, 0))).value == 1


def test_oracle_examples():
    a2 = germ_cyclic_quotient(3, (1, 2))
    assert mld_bruteforce_oracle(a2, (1, 2), 3) == 1
    five = germ_cyclic_quotient(5, (1, 2, 3))
    assert mld_bruteforce_oracle(five, (1, 2, 3), 3) == F(6, 5)
    assert mld_bruteforce_oracle(ToricGerm(std(4), (0,) * 4), full_face(4), 2) == 4


small_coeff = st.sampled_from([F(0), F(1, 3), F(1, 2), F(3, 4), F(1)])
small_gen = st.tuples(
    st.fractions(min_value=0, max_value=1, max_denominator=5),
    st.fractions(min_value=0, max_value=1, max_denominator=5),
)


@given(st.lists(small_gen, max_size=2), st.tuples(small_coeff, small_coeff), st.integers(1, 3))
def test_box_reduction_matches_bruteforce(gens, boundary, radius):
    germ = germ_normalize(lattice_from_generators(2, gens), boundary)
    for face in all_faces(2):
        assert mld_face(germ, face).value == mld_bruteforce_oracle(germ, face, radius)


@given(st.lists(small_gen, max_size=2), st.tuples(small_coeff, small_coeff))
def test_nonnegativity_and_zero_only_with_unit_coefficients(gens, boundary):
    germ = germ_normalize(lattice_from_generators(2, gens), boundary)
    value = mld_global(germ).value
    assert value >= 0
    if all(b < 1 for b in boundary):
        assert value > 0


def test_single_coordinate_face_is_one_minus_b():
    germ = ToricGerm(std(3), (F(1, 2), F(2, 3), F(1)))
    for i in range(1, 4):
        assert mld_face(germ, (i,)).value == 1 - germ.boundary[i - 1]


# -- the P_x family -------------------------------------------------------------------


def test_px_formula_examples():
    assert px_mld_formula((F(1, 2), F(1, 2))) == 1
    assert px_mld_formula((F(1, 2), F(1, 4))) == F(3, 4)
    assert px_mld_formula((1, 1, 1, 1)) == 4


def test_px_formula_matches_engine_on_random_points():
    rng = random.Random(20260810)
    for _ in range(60):
        d = rng.randint(1, 4)
        x = tuple(F(rng.randint(1, q), q) for q in [rng.randint(1, 12) for _ in range(d)])
        germ, scales = germ_from_px(x)
        assert px_mld_formula(x) == mld_face(germ, full_face(d)).value
        lat = lattice_from_generators(d, [x])
        assert scales == lat.unit_scales


# -- dilation verifier ------------------------------------------------------------------


def test_minkowski_examples():
    assert verify_minkowski(germ_cyclic_quotient(2, (1, 1)), 1, F(1, 10))
    assert verify_minkowski(germ_cyclic_quotient(5, (1, 2, 3)), F(6, 5), F(1, 10))
    assert verify_minkowski(ToricGerm(std(2), (0, 0)), 2, F(1, 10))
    # sharpness on both sides
    assert not verify_minkowski(germ_cyclic_quotient(2, (1, 1)), F(11, 10), F(1, 10))
    assert not verify_minkowski(germ_cyclic_quotient(2, (1, 1)), F(1, 2), F(1, 10))


# -- the Cartier index -------------------------------------------------------------------


def test_cartier_examples():
    assert cartier_index(ToricGerm(std(4), (0,) * 4)) == 1
    assert cartier_index(germ_cyclic_quotient(3, (1, 1))) == 3
    quarter = ToricGerm(lattice_from_generators(3, [(F(1, 4), F(2, 4), F(3, 4))]), (0, 0, 0))
    assert cartier_index(quarter) == 2


@given(st.lists(small_gen, max_size=2), st.tuples(small_coeff, small_coeff))
def test_cartier_clears_every_face_value(gens, boundary):
    germ = germ_normalize(lattice_from_generators(2, gens), boundary)
    r = cartier_index(germ)
    for face in all_faces(2):
        assert (r * mld_face(germ, face).value).denominator == 1
