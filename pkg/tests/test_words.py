"""Word algebra: letter products, words, commutators, serialization."""

import numpy as np
import pytest
from fractions import Fraction
from hypothesis import given, settings
from hypothesis import strategies as st

from blockade import bounds
from blockade.words import (
    LOWER,
    NUM,
    PROJ,
    RAISE,
    AdOrderBudgetError,
    Letter,
    OperatorSum,
    ad_power,
    adjoint,
    canonicalize,
    commutator_H,
    commutator_vacuum_expectation,
    dumps_operator,
    hamiltonian_terms,
    infinite_chain,
    letter_mul,
    line,
    loads_operator,
    make_word,
    number_operator,
    ring,
    single_count,
    single_site,
    vacuum_expectation,
    word_adjoint,
    word_length,
    word_mul,
)

LETTERS = (LOWER, RAISE, NUM, PROJ)

# The full 16-entry single-site product table (rows: left factor).
FULL_TABLE = {
    (LOWER, LOWER): None, (LOWER, RAISE): PROJ, (LOWER, NUM): LOWER, (LOWER, PROJ): None,
    (RAISE, LOWER): NUM, (RAISE, RAISE): None, (RAISE, NUM): None, (RAISE, PROJ): RAISE,
    (NUM, LOWER): None, (NUM, RAISE): RAISE, (NUM, NUM): NUM, (NUM, PROJ): None,
    (PROJ, LOWER): LOWER, (PROJ, RAISE): None, (PROJ, NUM): None, (PROJ, PROJ): PROJ,
}

# 2x2 matrix representation (basis: ground, excited) used as an independent
# oracle for the product table.
_R = np.array([[0, 1], [0, 0]])
_MATS = {LOWER: _R, RAISE: _R.T, NUM: _R.T @ _R, PROJ: np.eye(2) - _R.T @ _R}


class TestLetterMul:
    def test_full_table(self):
        for (a, b), want in FULL_TABLE.items():
            assert letter_mul(a, b) is want

    def test_table_against_matrix_representation(self):
        for a in LETTERS:
            for b in LETTERS:
                product = _MATS[a] @ _MATS[b]
                got = letter_mul(a, b)
                if got is None:
                    assert not product.any()
                else:
                    assert np.array_equal(product, _MATS[got])

    @pytest.mark.parametrize(
        "a, b, want",
        [(PROJ, LOWER, LOWER), (PROJ, PROJ, PROJ), (LOWER, LOWER, None)],
    )
    def test_named_products(self, a, b, want):
        assert letter_mul(a, b) is want


class TestWordMul:
    def test_projector_absorbs_flip(self):
        assert word_mul(make_word({1: PROJ}), make_word({1: LOWER})) == make_word({1: LOWER})

    def test_identity(self):
        w = make_word({1: PROJ, 2: PROJ})
        assert word_mul(w, ()) == w
        assert word_mul((), w) == w

    def test_annihilating_site(self):
        # site 2 carries m * n = 0
        x = make_word({1: LOWER, 2: PROJ})
        y = make_word({1: RAISE, 2: NUM})
        assert word_mul(x, y) is None

    def test_disjoint_merge(self):
        x = make_word({1: NUM})
        y = make_word({3: PROJ})
        assert word_mul(x, y) == make_word({1: NUM, 3: PROJ})


def words(max_sites=4, span=4):
    site = st.integers(min_value=-span, max_value=span)
    letter = st.sampled_from(LETTERS)
    return st.dictionaries(site, letter, max_size=max_sites).map(make_word)


@given(words(), words())
def test_word_mul_stays_canonical(x, y):
    p = word_mul(x, y)
    if p is not None:
        sites = [s for s, _ in p]
        assert sites == sorted(set(sites))


@given(words(3, 3), words(3, 3), words(3, 3))
def test_word_mul_associative(x, y, z):
    def mul(a, b):
        return None if (a is None or b is None) else word_mul(a, b)

    assert mul(word_mul(x, y), z) == mul(x, word_mul(y, z))


@given(words(), words())
def test_adjoint_antihomomorphism(x, y):
    p = word_mul(x, y)
    q = word_mul(word_adjoint(y), word_adjoint(x))
    assert (p is None and q is None) or word_adjoint(p) == q


class TestAdjoint:
    def test_flip_letters(self):
        op = OperatorSum({make_word({1: LOWER, 2: PROJ}): 1})
        assert adjoint(op) == OperatorSum({make_word({1: RAISE, 2: PROJ}): 1})

    def test_self_adjoint_sum(self):
        op = OperatorSum(
            {make_word({1: PROJ, 2: NUM}): 1, make_word({1: PROJ, 2: PROJ}): -1}
        )
        assert adjoint(op) == op

    def test_first_commutator_is_anti_self_adjoint(self):
        chain = infinite_chain()
        ad1 = commutator_H(number_operator(0), chain)
        assert adjoint(ad1) == -ad1

    def test_involution(self):
        op = OperatorSum({make_word({0: LOWER}): Fraction(3, 7), (): 2})
        assert adjoint(adjoint(op)) == op


class TestHamiltonianTerms:
    def test_ring5_middle_term(self):
        terms = hamiltonian_terms(ring(5))
        want = OperatorSum(
            {
                make_word({1: PROJ, 2: LOWER, 3: PROJ}): 1,
                make_word({1: PROJ, 2: RAISE, 3: PROJ}): 1,
            }
        )
        assert terms[1] == want

    def test_ring2_merges_wrapped_neighbours(self):
        terms = hamiltonian_terms(ring(2))
        want = OperatorSum(
            {make_word({1: LOWER, 2: PROJ}): 1, make_word({1: RAISE, 2: PROJ}): 1}
        )
        assert terms[0] == want

    def test_line_edge_term(self):
        terms = hamiltonian_terms(line(3))
        want = OperatorSum(
            {make_word({1: LOWER, 2: PROJ}): 1, make_word({1: RAISE, 2: PROJ}): 1}
        )
        assert terms[0] == want

    def test_fully_blockaded_ring(self):
        # range covers all other sites: flip dressed by every other projector
        terms = hamiltonian_terms(ring(4, 3))
        want = OperatorSum(
            {
                make_word({1: LOWER, 2: PROJ, 3: PROJ, 4: PROJ}): 1,
                make_word({1: RAISE, 2: PROJ, 3: PROJ, 4: PROJ}): 1,
            }
        )
        assert terms[0] == want

    def test_rejects_tiny_ring(self):
        with pytest.raises(ValueError):
            ring(1)

    def test_infinite_needs_lazy_terms(self):
        with pytest.raises(ValueError):
            hamiltonian_terms(infinite_chain())


class TestCommutator:
    def test_matches_dressed_flip_difference(self):
        chain = infinite_chain()
        got = commutator_H(number_operator(0), chain)
        want = OperatorSum(
            {
                make_word({-1: PROJ, 0: LOWER, 1: PROJ}): 1,
                make_word({-1: PROJ, 0: RAISE, 1: PROJ}): -1,
            }
        )
        assert got == want

    def test_identity_commutes(self):
        assert commutator_H(OperatorSum({(): Fraction(5, 3)}), ring(4)) == 0

    def test_two_site_ring(self):
        got = commutator_H(number_operator(1), ring(2))
        want = OperatorSum(
            {make_word({1: LOWER, 2: PROJ}): 1, make_word({1: RAISE, 2: PROJ}): -1}
        )
        assert got == want

    def test_matches_full_term_sum_on_ring(self):
        # restriction to the support window must agree with the full sum
        model = ring(7)
        op = OperatorSum({make_word({2: NUM, 4: LOWER}): 1})
        full = OperatorSum({})
        for h in hamiltonian_terms(model):
            full = full + (h * op - op * h)
        assert commutator_H(op, model) == full


class TestAdPower:
    def test_order_zero(self):
        op = number_operator(3)
        assert ad_power(op, line(5), 0) == op

    def test_second_order_structure(self):
        got = ad_power(number_operator(0), infinite_chain(), 2)
        want = OperatorSum(
            {
                make_word({-1: PROJ, 0: NUM, 1: PROJ}): 2,
                make_word({-1: PROJ, 0: PROJ, 1: PROJ}): -2,
                make_word({-2: PROJ, -1: LOWER, 0: RAISE, 1: PROJ}): 1,
                make_word({-2: PROJ, -1: RAISE, 0: LOWER, 1: PROJ}): 1,
                make_word({-1: PROJ, 0: LOWER, 1: RAISE, 2: PROJ}): 1,
                make_word({-1: PROJ, 0: RAISE, 1: LOWER, 2: PROJ}): 1,
            }
        )
        assert got == want

    def test_two_site_ring_fourth_order(self):
        got = ad_power(number_operator(1), ring(2), 4)
        want = OperatorSum(
            {
                make_word({1: NUM, 2: PROJ}): 10,
                make_word({1: PROJ, 2: NUM}): 6,
                make_word({1: PROJ, 2: PROJ}): -16,
                make_word({1: LOWER, 2: RAISE}): 8,
                make_word({1: RAISE, 2: LOWER}): 8,
            }
        )
        assert got == want

    def test_order_budget_refusal(self):
        with pytest.raises(AdOrderBudgetError) as err:
            ad_power(number_operator(0), infinite_chain(), 13)
        assert err.value.order_reached == 0
        assert err.value.requested == 13

    def test_term_guard_reports_partial_order(self):
        with pytest.raises(AdOrderBudgetError) as err:
            ad_power(number_operator(0), infinite_chain(), 6, max_terms=10)
        assert 0 < err.value.order_reached < 6


class TestVacuumExpectation:
    def test_second_order(self):
        ad2 = ad_power(number_operator(0), infinite_chain(), 2)
        assert vacuum_expectation(ad2) == -2

    def test_fourth_order(self):
        ad4 = ad_power(number_operator(0), infinite_chain(), 4)
        assert vacuum_expectation(ad4) == -24

    def test_projector_word(self):
        op = OperatorSum({make_word({3: PROJ, 5: PROJ}): Fraction(7, 2)})
        assert vacuum_expectation(op) == Fraction(7, 2)

    def test_odd_orders_vanish(self):
        chain = infinite_chain()
        op = number_operator(0)
        for j in (1, 3, 5):
            assert vacuum_expectation(ad_power(op, chain, j)) == 0

    def test_contracted_expectation_equals_direct(self):
        for model in (infinite_chain(), ring(5), line(6), infinite_chain(2)):
            op = ad_power(number_operator(1), model, 3)
            direct = vacuum_expectation(commutator_H(op, model))
            assert commutator_vacuum_expectation(op, model) == direct


class TestStructuralInvariants:
    @pytest.mark.parametrize("model", [infinite_chain(), ring(5)])
    def test_alternating_self_adjointness(self, model):
        op = number_operator(1)
        for j in range(7):
            adj = ad_power(op, model, j)
            assert adjoint(adj) == (adj if j % 2 == 0 else -adj)

    def test_single_letter_parity(self):
        chain = infinite_chain()
        cur = number_operator(0)
        for j in range(1, 7):
            cur = commutator_H(cur, chain)
            assert all(single_count(w) % 2 == j % 2 for w in cur.terms)

    def test_words_flanked_by_projectors(self):
        chain = infinite_chain()
        cur = number_operator(0)
        for j in range(1, 7):
            cur = commutator_H(cur, chain)
            for w in cur.terms:
                assert w[0][1] is PROJ and w[-1][1] is PROJ
                assert word_length(w) <= j + 2

    def test_word_count_bound(self):
        chain = infinite_chain()
        cur = number_operator(0)
        for j in range(1, 9):
            cur = commutator_H(cur, chain)
            cap = 2 * 6 ** (j - 1) * np.exp(bounds.log_kappa(float(j)))
            assert len(cur.terms) <= cap


class TestCanonicalize:
    def test_ring_residue_folding(self):
        op = single_site(NUM, 5)
        assert canonicalize(op, ring(4)) == single_site(NUM, 1)

    def test_collision_annihilates(self):
        # n and m at the same residue multiply to zero
        op = OperatorSum({make_word({1: NUM, 5: PROJ}): 1})
        assert canonicalize(op, ring(4)) == 0

    def test_line_rejects_outside_sites(self):
        with pytest.raises(ValueError):
            canonicalize(single_site(NUM, 9), line(4))


class TestSerialization:
    def test_known_lines(self):
        op = OperatorSum(
            {
                make_word({-1: PROJ, 0: RAISE, 1: PROJ}): -1,
                make_word({-1: PROJ, 0: LOWER, 1: PROJ}): 1,
            }
        )
        assert dumps_operator(op) == "1/1 -1:m 0:r 1:m\n-1/1 -1:m 0:rd 1:m"

    def test_identity_term(self):
        op = OperatorSum({(): Fraction(-3, 4)})
        assert dumps_operator(op) == "-3/4"

    @given(
        st.dictionaries(
            words(3, 3),
            st.fractions(
                min_value=-5, max_value=5, max_denominator=40
            ).filter(lambda f: f != 0),
            max_size=5,
        )
    )
    @settings(max_examples=60)
    def test_round_trip(self, terms):
        op = OperatorSum(terms)
        assert loads_operator(dumps_operator(op)) == op

    def test_deterministic(self):
        op = ad_power(number_operator(0), infinite_chain(), 3)
        assert dumps_operator(op) == dumps_operator(loads_operator(dumps_operator(op)))
