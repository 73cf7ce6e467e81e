import random

from conftest import random_term
from malcev.models import (
    AffineModel,
    Assignment,
    SearchParams,
    all_vectors,
    check_malcev_uniqueness,
    eval_term,
    find_separating_model,
    random_model,
    satisfies,
)
from malcev.normalform import denormalize, normalize
from malcev.presentation import VarietyPresentation
from malcev.terms import (
    M,
    Signature,
    Var,
    ambient_identities,
    parse_term,
    slice_term,
    term_variables,
)

SIG = Signature(1, 2)


def model_shapes(max_card=125):
    for q in (2, 3, 5):
        d = 1
        while q**d <= max_card:
            yield q, d
            d += 1


class TestEval:
    def test_cancellation_everywhere(self):
        rng = random.Random(40)
        t = parse_term("(m x1 z z)", SIG)
        for q, d in model_shapes(27):
            model = random_model(rng, SIG, q, d)
            for v in all_vectors(q, d):
                for zv in all_vectors(q, d):
                    a = Assignment.make({1: v}, zv)
                    assert eval_term(model, t, a) == v

    def test_idempotent_binary(self):
        rng = random.Random(41)
        model = random_model(rng, SIG, 5, 2)
        t = parse_term("(r 1 x1 x1)", SIG)
        for v in all_vectors(5, 2):
            a = Assignment.make({1: v}, (0, 0))
            assert eval_term(model, t, a) == v

    def test_unary_translation_at_zero(self):
        rng = random.Random(42)
        model = random_model(rng, SIG, 3, 2)
        a = Assignment.make({}, (0, 0))
        assert eval_term(model, parse_term("(u 1 z)", SIG), a) == model.u_trans[0]


class TestAmbientAxioms:
    def test_hold_on_random_models_exhaustively(self):
        # every model of this class satisfies the ambient identities
        rng = random.Random(43)
        ids = ambient_identities(SIG)
        for q, d in model_shapes(125):
            for _ in range(3):
                model = random_model(rng, SIG, q, d)
                for ident in ids:
                    assert satisfies(model, ident, trials=60, rng=rng)


class TestOracleAgreement:
    def test_eval_equals_eval_of_canonical_form(self):
        rng = random.Random(44)
        for _ in range(150):
            t = random_term(rng, SIG, 5)
            c = denormalize(normalize(t, SIG), SIG)
            vs = sorted(term_variables(t))
            for _ in range(5):
                q = rng.choice([2, 3, 5])
                d = rng.randrange(1, 4)
                model = random_model(rng, SIG, q, d)
                a = Assignment.make(
                    {v: tuple(rng.randrange(q) for _ in range(d)) for v in vs},
                    tuple(rng.randrange(q) for _ in range(d)),
                )
                assert eval_term(model, t, a) == eval_term(model, c, a)

    def test_slice_commutes_with_evaluation(self):
        rng = random.Random(45)
        for _ in range(100):
            t = random_term(rng, SIG, 4, nvars=3)
            vs = sorted(term_variables(t))
            q, d = rng.choice([(2, 2), (3, 1), (5, 1)])
            model = random_model(rng, SIG, q, d)
            zv = tuple(rng.randrange(q) for _ in range(d))
            for i in vs:
                xv = tuple(rng.randrange(q) for _ in range(d))
                full = Assignment.make(
                    {v: (xv if v == i else zv) for v in vs}, zv
                )
                sliced = Assignment.make({1: xv}, zv)
                assert eval_term(model, t, full) == eval_term(
                    model, slice_term(t, i), sliced
                )


class TestSeparation:
    def test_distinct_binary_symbols_separated(self):
        vp = VarietyPresentation(SIG, ())
        a = parse_term("(r 1 x1 z)", SIG)
        b = parse_term("(r 2 x1 z)", SIG)
        model = find_separating_model(a, b, vp)
        assert model is not None
        assert not satisfies(model, type(vp.ids)() or __import__("malcev.terms", fromlist=["Identity"]).Identity(a, b))

    def test_syntactically_equal_terms_not_separated(self):
        vp = VarietyPresentation(SIG, ())
        t = parse_term("(u 1 (r 2 x1 z))", SIG)
        assert find_separating_model(t, t, vp) is None

    def test_ambient_consequences_not_separated(self):
        vp = VarietyPresentation(SIG, ())
        assert (
            find_separating_model(Var(1), parse_term("(m x1 z z)", SIG), vp) is None
        )

    def test_search_is_deterministic(self):
        vp = VarietyPresentation(SIG, ())
        a = parse_term("(u 1 x1)", SIG)
        b = parse_term("(r 1 x1 z)", SIG)
        params = SearchParams(seed=7)
        m1 = find_separating_model(a, b, vp, params)
        m2 = find_separating_model(a, b, vp, params)
        assert m1 == m2 and m1 is not None


class TestMalcevUniqueness:
    def test_builtin_and_rearrangements(self):
        rng = random.Random(46)
        model = random_model(rng, SIG, 5, 2)
        assert check_malcev_uniqueness(model, M(Var(1), Var(2), Var(3)))
        assert check_malcev_uniqueness(model, M(Var(3), Var(2), Var(1)))
        medial = parse_term("(m (m x1 x2 x2) (m x2 x2 x2) (m x2 x2 x3))", SIG)
        assert check_malcev_uniqueness(model, medial)

    def test_non_malcev_candidate_rejected(self):
        rng = random.Random(47)
        model = random_model(rng, SIG, 5, 2)
        assert not check_malcev_uniqueness(model, Var(1))


def test_model_json_round_trip():
    rng = random.Random(48)
    model = random_model(rng, SIG, 3, 2)
    assert AffineModel.from_json(model.to_json()) == model
