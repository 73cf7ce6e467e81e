import random

import pytest

from conftest import random_modvec, random_poly
from malcev.freering import ModuleVec, NCPoly, RMPair


class TestPolyBasics:
    def test_free_multiplication(self):
        n = 2
        r1, r2 = NCPoly.gen(n, 1), NCPoly.gen(n, 2)
        assert r1 * r2 == NCPoly.from_word(n, (1, 2))
        p = random_poly(random.Random(1), n)
        assert p * NCPoly.one(n) == p
        assert NCPoly.one(n) * p == p
        assert r1 + (-r1) == NCPoly.zero(n)

    def test_no_zero_coefficients_stored(self):
        rng = random.Random(2)
        for _ in range(200):
            p, q = random_poly(rng, 2), random_poly(rng, 2)
            for result in (p + q, p - q, p * q, -p):
                assert all(c != 0 for c in result.terms.values())

    def test_mismatched_generator_count(self):
        with pytest.raises(ValueError):
            NCPoly.gen(2, 1) + NCPoly.gen(3, 1)

    def test_ring_axioms_randomized(self):
        rng = random.Random(3)
        for _ in range(100):
            p, q, r = (random_poly(rng, 2) for _ in range(3))
            assert (p + q) + r == p + (q + r)
            assert p + q == q + p
            assert (p * q) * r == p * (q * r)
            assert p * (q + r) == p * q + p * r
            assert (p + q) * r == p * r + q * r

    def test_homogeneous_components_partition(self):
        rng = random.Random(4)
        n = 2
        p = random_poly(rng, n, max_deg=4, nterms=6)
        total = NCPoly.zero(n)
        for d in range(p.degree() + 1):
            total = total + p.homogeneous_component(d)
        assert total == p
        q = NCPoly(n, {(1,): 1, (1, 2): 1})
        assert q.homogeneous_component(2) == NCPoly.from_word(n, (1, 2))
        assert q.homogeneous_component(0) == NCPoly.zero(n)

    def test_json_round_trip_and_order(self):
        p = NCPoly(2, {(2,): -1, (): 3, (1, 2): 2, (1,): 5})
        data = p.to_json()
        words = [tuple(e["word"]) for e in data]
        assert words == [(), (1,), (2,), (1, 2)]  # deg-lex
        assert NCPoly.from_json(2, data) == p

    def test_sandwich(self):
        p = NCPoly(2, {(1,): 2, (): 1})
        assert p.sandwich((2,), (1,)) == NCPoly(2, {(2, 1, 1): 2, (2, 1): 1})


class TestModuleVec:
    def test_unit_and_free_action(self):
        v = random_modvec(random.Random(5), 2, 2)
        assert v.scale(NCPoly.one(2)) == v
        r1 = NCPoly.gen(2, 1)
        u2 = ModuleVec.gen(2, 2, 2)
        assert u2.scale(r1) == ModuleVec(2, 2, [NCPoly.zero(2), r1])
        assert v + v.scale(-1) == ModuleVec.zero(2, 2)

    def test_module_axioms_randomized(self):
        rng = random.Random(6)
        for _ in range(100):
            p, q = random_poly(rng, 2), random_poly(rng, 2)
            v, w = random_modvec(rng, 2, 2), random_modvec(rng, 2, 2)
            assert v.scale(q).scale(p) == v.scale(p * q)
            assert v.scale(p + q) == v.scale(p) + v.scale(q)
            assert (v + w).scale(p) == v.scale(p) + w.scale(p)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            ModuleVec.gen(1, 2, 1) + ModuleVec.gen(2, 2, 1)

    def test_homogeneity(self):
        v = ModuleVec(2, 2, [NCPoly.gen(2, 1), NCPoly.gen(2, 2)])
        assert v.is_homogeneous()
        w = v + ModuleVec.gen(2, 2, 1)
        assert not w.is_homogeneous()

    def test_json_round_trip(self):
        v = random_modvec(random.Random(7), 3, 2)
        assert ModuleVec.from_json(3, 2, v.to_json()) == v


def test_rmpair_arithmetic():
    a = RMPair(NCPoly.gen(2, 1), ModuleVec.gen(1, 2, 1))
    b = RMPair(NCPoly.one(2), ModuleVec.zero(1, 2))
    assert (a - b).ring == NCPoly.gen(2, 1) - NCPoly.one(2)
    assert (a - a).is_zero()
