import random

from conftest import random_modvec, random_poly, random_term
from malcev.freering import ModuleVec, NCPoly
from malcev.normalform import (
    NormalForm,
    denormalize,
    nf_equal,
    normalize,
    shift_unary,
)
from malcev.terms import M, R, Signature, U, Var, Z, parse_term, print_term, substitute

SIG = Signature(1, 2)


def nf(coeffs=None, constant=None, sig=SIG):
    return NormalForm(sig, coeffs, constant)


class TestNormalize:
    def test_doubling(self):
        got = normalize(parse_term("(m x1 z x1)", SIG), SIG)
        assert got == nf({1: NCPoly.from_word(2, (), 2)})

    def test_single_binary_symbol(self):
        got = normalize(parse_term("(r 1 x1 z)", SIG), SIG)
        assert got == nf({1: NCPoly.gen(2, 1)})

    def test_single_unary_symbol(self):
        got = normalize(parse_term("(u 1 z)", SIG), SIG)
        assert got == nf(constant=ModuleVec.gen(1, 2, 1))

    def test_unary_difference_collapses_to_binary(self):
        got = normalize(parse_term("(m (u 1 x1) (u 1 z) z)", SIG), SIG)
        assert got == nf({1: NCPoly.gen(2, 1)})


class TestDenormalize:
    def test_plain_variable(self):
        assert denormalize(nf({1: NCPoly.one(2)})) == Var(1)

    def test_word_realization(self):
        t = denormalize(nf({1: NCPoly.from_word(2, (1, 2))}))
        assert print_term(t) == "(r 1 (r 2 x1 z) z)"

    def test_negated_module_generator(self):
        t = denormalize(nf(constant=ModuleVec.gen(1, 2, 1).scale(-1)))
        assert print_term(t) == "(m z (u 1 z) z)"

    def test_deterministic_shape(self):
        form = nf(
            {1: NCPoly(2, {(): 2, (1,): -1}), 2: NCPoly.one(2)},
            ModuleVec.gen(1, 2, 1),
        )
        assert print_term(denormalize(form)) == print_term(denormalize(form))
        # balanced doubling keeps multiples logarithmic
        big = nf({1: NCPoly.from_word(2, (), 1000)})
        from malcev.terms import term_size

        assert term_size(denormalize(big)) < 100


class TestPipeline:
    def test_idempotence_on_random_forms(self):
        rng = random.Random(10)
        for _ in range(150):
            form = nf(
                {1: random_poly(rng, 2), 2: random_poly(rng, 2)},
                random_modvec(rng, 1, 2),
            )
            assert normalize(denormalize(form), SIG) == form

    def test_additivity_and_negation(self):
        rng = random.Random(11)
        for _ in range(60):
            a = random_term(rng, SIG, 4)
            b = random_term(rng, SIG, 4)
            assert normalize(M(a, Z(), b), SIG) == normalize(a, SIG) + normalize(b, SIG)
            assert normalize(M(Z(), a, Z()), SIG) == -normalize(a, SIG)

    def test_binary_symbol_action_law(self):
        rng = random.Random(12)
        one = NCPoly.one(2)
        for _ in range(60):
            a = random_term(rng, SIG, 3)
            b = random_term(rng, SIG, 3)
            for i in (1, 2):
                g = NCPoly.gen(2, i)
                expect = normalize(a, SIG).scale(g) + normalize(b, SIG).scale(one - g)
                assert normalize(R(i, a, b), SIG) == expect

    def test_composition_is_ring_multiplication(self):
        # binary idempotent terms compose like their ring parts multiply
        rng = random.Random(13)
        for _ in range(80):
            s = random_term(rng, SIG, 3, nvars=1, allow_u=False)
            t = random_term(rng, SIG, 3, nvars=1, allow_u=False)
            composed = substitute(s, {1: t}, Z())
            lhs = normalize(composed, SIG).ring_part()
            rhs = normalize(s, SIG).ring_part() * normalize(t, SIG).ring_part()
            assert lhs == rhs


class TestNfEqual:
    def test_medial_rearrangement(self):
        lhs = parse_term("(m (m x1 x2 x3) (m x4 x5 x6) (m x7 x8 x9))", SIG)
        rhs = parse_term("(m (m x1 x4 x7) (m x2 x5 x8) (m x3 x6 x9))", SIG)
        assert nf_equal(lhs, rhs, SIG)

    def test_cancellation(self):
        assert nf_equal(Var(1), parse_term("(m x1 z z)", SIG), SIG)

    def test_distinct_binary_symbols_differ(self):
        assert not nf_equal(
            parse_term("(r 1 x1 z)", SIG), parse_term("(r 2 x1 z)", SIG), SIG
        )


class TestShiftUnary:
    def test_single_generator(self):
        got = shift_unary(ModuleVec.gen(1, 2, 1), SIG)
        assert got == nf({1: NCPoly.gen(2, 1)}, ModuleVec.gen(1, 2, 1))

    def test_zero_vector_gives_identity(self):
        got = shift_unary(ModuleVec.zero(1, 2), SIG)
        assert got == nf({1: NCPoly.one(2)})

    def test_scaled_generator_matches_hand_recursion(self):
        sig = Signature(2, 2)
        v = ModuleVec(2, 2, [NCPoly.zero(2), NCPoly.gen(2, 1)])  # r1 * u2
        got = shift_unary(v, sig)
        # realize r1 applied to u2 at x: r1*(r2*x + u2) + (1 - r1)*x
        r1, r2, one = NCPoly.gen(2, 1), NCPoly.gen(2, 2), NCPoly.one(2)
        expect_ring = r1 * r2 + one - r1
        expect_const = ModuleVec(2, 2, [NCPoly.zero(2), r1])
        assert got == NormalForm(sig, {1: expect_ring}, expect_const)

    def test_agrees_with_substitution_route_on_random_vectors(self):
        rng = random.Random(14)
        for _ in range(40):
            v = random_modvec(rng, 1, 2, max_deg=2)
            term = denormalize(nf(constant=v))
            direct = normalize(substitute(term, {}, Var(1)), SIG)
            assert shift_unary(v, SIG) == direct
