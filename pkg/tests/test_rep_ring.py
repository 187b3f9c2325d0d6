import random
from fractions import Fraction

import pytest

from satake.laurent import LaurentPoly, ONE
from satake.rep_ring import RepRing, gamma_power, torus_point
from satake.root_datum import build_root_datum


def char_product_decompose(rep, lam, mu):
    """Independent tensor oracle: convolve full weight tables, strip highest weights."""
    prod = {}
    for t1, m1 in rep.weights_with_multiplicity(lam):
        for t2, m2 in rep.weights_with_multiplicity(mu):
            key = tuple(a + b for a, b in zip(t1, t2))
            prod[key] = prod.get(key, 0) + m1 * m2
    datum = rep.datum
    result = {}
    while any(prod.values()):
        live = [w for w, c in prod.items() if c]
        top = max(datum.pairing_2rho(w) for w in live)
        candidates = [w for w in live if datum.pairing_2rho(w) == top and datum.is_dominant(w)]
        assert candidates, "maximal stratum should contain a dominant weight"
        nu = sorted(candidates)[0]
        count = prod[nu]
        assert count > 0
        result[nu] = count
        for w, m in rep.weights_with_multiplicity(nu):
            prod[w] = prod.get(w, 0) - count * m
    return result


# -- weight multiplicities -------------------------------------------------


def test_sl2_dual_weight_spaces_are_lines():
    rep = RepRing("PGL2")
    for nu in (-2, 0, 2):
        assert rep.weight_multiplicity((2,), (nu,)) == 1
    assert rep.weight_multiplicity((2,), (1,)) == 0
    assert rep.weight_multiplicity((2,), (4,)) == 0


def test_sl3_adjoint_zero_weight_space():
    rep = RepRing("SL3")
    assert rep.weight_multiplicity((1, 1), (0, 0)) == 2


def test_sp4_second_fundamental_agrees_across_algorithms():
    rep = RepRing("Sp4")
    freudenthal = rep.weight_multiplicity((0, 1), (0, 0))
    kostant = rep.kostant_multiplicity((0, 1), (0, 0))
    assert freudenthal == kostant == 1


def test_freudenthal_matches_kostant_on_boxes():
    for name, bound in [("PGL2", 6), ("SL2", 3), ("SL3", 4), ("Sp4", 6)]:
        rep = RepRing(name)
        for lam in rep.datum.dominant_box(bound):
            for _, mu, _ in rep.dominant_weights_below(lam):
                assert rep.weight_multiplicity(lam, mu) == rep.kostant_multiplicity(lam, mu)


def test_weight_multiplicity_requires_dominant_highest_weight():
    rep = RepRing("SL3")
    with pytest.raises(ValueError):
        rep.weight_multiplicity((-1, 0), (0, 0))


# -- dimensions ----------------------------------------------------------------


def test_weyl_dim_examples():
    assert RepRing("PGL2").weyl_dim((5,)) == 6
    rep = RepRing("SL3")
    assert rep.weyl_dim((1, 0)) == 3
    assert rep.weyl_dim((0, 1)) == 3
    assert rep.weyl_dim((1, 1)) == 8
    assert RepRing("Sp4").weyl_dim((1, 0)) == 4
    assert RepRing("G2").weyl_dim((1, 0)) == 7


def test_weight_table_mass_equals_dimension():
    for name, bound in [("PGL2", 8), ("SL3", 6), ("Sp4", 7)]:
        rep = RepRing(name)
        for lam in rep.datum.dominant_box(bound):
            table = rep.weight_table(lam)
            assert sum(table.values()) == rep.weyl_dim(lam)
            assert table[lam] == 1


def test_weight_table_support_is_below_highest_weight():
    rep = RepRing("Sp4")
    for lam in rep.datum.dominant_box(7):
        for nu in rep.weight_table(lam):
            dom = rep.datum.dominant_representative(nu).coweight
            assert rep.datum.dominance_leq(dom, lam)


def test_weight_tables_are_weyl_invariant():
    rng = random.Random(31337)
    presets = ["PGL2", "SL2", "SL3", "Sp4"]
    for _ in range(80):
        rep = RepRing(rng.choice(presets))
        datum = rep.datum
        box = datum.dominant_box(6)
        lam = rng.choice(box)
        table = rep.weight_table(lam)
        nu = rng.choice(list(table))
        image = nu
        for _ in range(rng.randint(1, 4)):
            image = datum.reflect(rng.randrange(datum.rank), image)
        assert table[image] == table[nu]
        assert rep.weight_multiplicity(lam, image) == rep.weight_multiplicity(lam, nu)


# -- tensor products ---------------------------------------------------------------


def test_clebsch_gordan_for_dual_sl2():
    rep = RepRing("PGL2")
    assert rep.tensor_multiplicity((1,), (1,), (2,)) == 1
    assert rep.tensor_multiplicity((1,), (1,), (0,)) == 1
    assert rep.tensor_multiplicity((1,), (1,), (1,)) == 0
    assert rep.tensor_decompose((1,), (1,)) == {(0,): 1, (2,): 1}


def test_sl3_three_times_three_bar():
    rep = RepRing("SL3")
    assert rep.tensor_decompose((1, 0), (0, 1)) == {(0, 0): 1, (1, 1): 1}


def test_sl3_adjoint_square():
    rep = RepRing("SL3")
    dec = rep.tensor_decompose((1, 1), (1, 1))
    assert dec[(1, 1)] == 2
    assert dec == char_product_decompose(rep, (1, 1), (1, 1))


def test_tensor_matches_character_oracle_on_box():
    rep = RepRing("PGL2")
    for a in range(7):
        for b in range(7):
            assert rep.tensor_decompose((a,), (b,)) == char_product_decompose(rep, (a,), (b,))
    rep3 = RepRing("SL3")
    box = [lam for lam in rep3.datum.dominant_box(4)]
    for lam in box:
        for mu in box:
            assert rep3.tensor_decompose(lam, mu) == char_product_decompose(rep3, lam, mu)


def test_tensor_total_dimension_and_symmetry():
    for name, bound in [("PGL2", 8), ("SL3", 5), ("Sp4", 6)]:
        rep = RepRing(name)
        box = rep.datum.dominant_box(bound)
        for lam in box:
            for mu in box:
                dec = rep.tensor_decompose(lam, mu)
                total = sum(c * rep.weyl_dim(nu) for nu, c in dec.items())
                assert total == rep.weyl_dim(lam) * rep.weyl_dim(mu)
                assert dec == rep.tensor_decompose(mu, lam)


def test_tensor_with_trivial_factor():
    rep = RepRing("SL3")
    zero = (0, 0)
    for lam in rep.datum.dominant_box(4):
        assert rep.tensor_decompose(lam, zero) == {lam: 1}


def test_tensor_requires_dominant_inputs():
    rep = RepRing("PGL2")
    with pytest.raises(ValueError):
        rep.tensor_decompose((-1,), (1,))


# -- characters ----------------------------------------------------------------------


def test_character_at_identity_is_dimension():
    for name in ["PGL2", "SL3", "Sp4"]:
        rep = RepRing(name)
        gamma = torus_point([1] * rep.datum.lattice_rank, rep.datum)
        for lam in rep.datum.dominant_box(5):
            assert rep.character_eval(lam, gamma) == rep.weyl_dim(lam)


def test_sl2_dual_characters_at_two():
    rep = RepRing("PGL2")
    gamma = torus_point([2], rep.datum)
    assert rep.character_eval((1,), gamma) == Fraction(5, 2)
    assert rep.character_eval((2,), gamma) == Fraction(21, 4)


def test_characters_multiply_through_tensor_decomposition():
    rng = random.Random(2718)
    for name in ["PGL2", "SL3"]:
        rep = RepRing(name)
        box = rep.datum.dominant_box(4)
        for _ in range(10):
            gamma = torus_point(
                [
                    Fraction(rng.choice([k for k in range(-7, 8) if k]), rng.randint(1, 7))
                    for _ in range(rep.datum.lattice_rank)
                ],
                rep.datum,
            )
            lam, mu = rng.choice(box), rng.choice(box)
            lhs = rep.character_eval(lam, gamma) * rep.character_eval(mu, gamma)
            rhs = sum(
                (c * rep.character_eval(nu, gamma) for nu, c in rep.tensor_decompose(lam, mu).items()),
                Fraction(0),
            )
            assert lhs == rhs


def test_dual_character_is_character_at_minus_w0():
    rep = RepRing("SL3")
    gamma = torus_point([2, 3], rep.datum)
    assert rep.dual_character_eval((1, 0), gamma) == rep.character_eval((0, 1), gamma)


def test_torus_point_validation():
    datum = build_root_datum("SL3")
    with pytest.raises(ValueError):
        torus_point([1], datum)
    with pytest.raises(ValueError):
        torus_point([1, 0], datum)
    assert gamma_power(torus_point([2, 3], datum), (1, -1)) == Fraction(2, 3)


# -- the q-side -------------------------------------------------------------------------


def test_q_kostant_base_cases():
    rep = RepRing("SL3")
    assert rep.q_kostant_partition((0, 0)) == ONE
    for alpha in rep.datum.simple_coroots:
        assert rep.q_kostant_partition(alpha) == LaurentPoly.q_power(1)
    # alpha_1 + alpha_2 = (1,1): one highest root or two simple roots
    assert rep.q_kostant_partition((1, 1)) == LaurentPoly({2: 1, 4: 1})
    assert rep.q_kostant_partition((1, 0)) == LaurentPoly()  # off the coroot lattice


def test_lusztig_diagonal_is_one():
    for name in ["PGL2", "SL3", "Sp4"]:
        rep = RepRing(name)
        for lam in rep.datum.dominant_box(5):
            assert rep.lusztig_q_analog(lam, lam) == ONE


def test_lusztig_rank1_closed_form():
    rep = RepRing("PGL2")
    for n in range(0, 7):
        for m in range(n % 2, n + 1, 2):
            expected = LaurentPoly.q_power((n - m) // 2)
            assert rep.lusztig_q_analog((n,), (m,)) == expected


def test_lusztig_at_one_is_weight_multiplicity():
    for name, bound in [("PGL2", 8), ("SL3", 5), ("Sp4", 6)]:
        rep = RepRing(name)
        box = rep.datum.dominant_box(bound)
        for lam in box:
            for _, mu, _ in rep.dominant_weights_below(lam):
                analog = rep.lusztig_q_analog(lam, mu)
                assert analog.eval_q(1) == rep.weight_multiplicity(lam, mu)
                assert analog.is_q_polynomial()
                assert all(c >= 0 for c in analog.q_coefficients().values())


def test_lusztig_vanishes_off_dominance_interval():
    rep = RepRing("SL3")
    assert rep.lusztig_q_analog((1, 0), (0, 1)) == LaurentPoly()


def test_adjoint_zero_weight_analog_is_exponent_polynomial():
    # the zero-weight q-analog of the adjoint representation is the
    # generalized-exponents polynomial Σ q^{e_i} (Kostant)
    cases = [
        ("PGL2", (2,), [1]),
        ("SL3", (1, 1), [1, 2]),
        ("GL3", (1, 0, -1), [1, 2]),
        ("Sp4", (2, 0), [1, 3]),
        ("G2", (0, 1), [1, 5]),
    ]
    for name, adjoint, exponents in cases:
        rep = RepRing(name)
        zero = (0,) * rep.datum.lattice_rank
        expected = LaurentPoly({2 * e: 1 for e in exponents})
        assert rep.lusztig_q_analog(adjoint, zero) == expected


def test_little_adjoint_zero_weight_analog():
    # short exponents: 2 for C2, 3 for G2
    assert RepRing("Sp4").lusztig_q_analog((0, 1), (0, 0)) == LaurentPoly.q_power(2)
    assert RepRing("G2").lusztig_q_analog((1, 0), (0, 0)) == LaurentPoly.q_power(3)


def test_multiplicity_table_is_not_aliased():
    rep = RepRing("PGL2")
    table = rep.dominant_multiplicity_table((4,))
    table[(0,)] = 99
    assert rep.weight_multiplicity((4,), (0,)) == 1
