"""Shared generators for randomized tests. Everything is seeded explicitly."""

from __future__ import annotations

import random

from malcev.freering import ModuleVec, NCPoly
from malcev.terms import M, R, Signature, Term, U, Var, Z


def random_term(
    rng: random.Random,
    sig: Signature,
    max_depth: int,
    nvars: int = 3,
    size_budget: int = 30,
    allow_u: bool = True,
) -> Term:
    state = {"left": size_budget}
    kinds = ["r", "m"] + (["u"] if allow_u and sig.ell else [])

    def gen(depth: int) -> Term:
        state["left"] -= 1
        if depth >= max_depth or state["left"] <= 0 or rng.random() < 0.25:
            leaves = [Z()] + [Var(i) for i in range(1, nvars + 1)]
            return rng.choice(leaves)
        kind = rng.choice(kinds)
        if kind == "u":
            return U(rng.randrange(1, sig.ell + 1), gen(depth + 1))
        if kind == "r":
            return R(rng.randrange(1, sig.en + 1), gen(depth + 1), gen(depth + 1))
        return M(gen(depth + 1), gen(depth + 1), gen(depth + 1))

    return gen(0)


def random_poly(rng: random.Random, n: int, max_deg: int = 3, nterms: int = 3) -> NCPoly:
    terms = {}
    for _ in range(rng.randrange(nterms + 1)):
        d = rng.randrange(max_deg + 1)
        word = tuple(rng.randrange(1, n + 1) for _ in range(d))
        terms[word] = terms.get(word, 0) + rng.choice([-3, -2, -1, 1, 2, 3])
    return NCPoly(n, terms)


def random_modvec(rng: random.Random, ell: int, n: int, max_deg: int = 3, nterms: int = 2) -> ModuleVec:
    return ModuleVec(ell, n, [random_poly(rng, n, max_deg, nterms) for _ in range(ell)])
