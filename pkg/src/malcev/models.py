"""Finite affine models: brute-force semantics and counterexample search.

A model lives on vectors over Z_q. The ternary symbol acts as a - b + c, each
binary symbol ri as an affine combination A_i a + (1 - A_i) b, and each unary
symbol ui as a + c_i composed with the same matrix A_i. Tying the unary
matrix to the matching binary symbol's matrix makes every model of this class
satisfy the ambient identities, so the class is a sound source of
counterexamples: any model here that violates an identity refutes it.

Separation search tries structured models read off the normal-form
difference first (a nonzero coefficient word is turned into a shift-register
model that exposes exactly that word), then seeded random models in
increasing modulus and dimension.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .freering import ModuleVec, NCPoly
from .normalform import normalize
from .terms import Identity, M, R, Signature, Term, U, Var, Z, term_variables

Vector = tuple[int, ...]
Matrix = tuple[Vector, ...]

MODULI = (2, 3, 5)


def mat_vec(mat: Matrix, vec: Vector, q: int) -> Vector:
    return tuple(sum(row[j] * vec[j] for j in range(len(vec))) % q for row in mat)


def vec_add(a: Vector, b: Vector, q: int) -> Vector:
    return tuple((x + y) % q for x, y in zip(a, b))


def vec_sub(a: Vector, b: Vector, q: int) -> Vector:
    return tuple((x - y) % q for x, y in zip(a, b))


def zero_vec(d: int) -> Vector:
    return (0,) * d


def basis_vec(d: int, i: int) -> Vector:
    return tuple(1 if j == i else 0 for j in range(d))


@dataclass(frozen=True)
class AffineModel:
    q: int
    d: int
    r_mats: tuple[Matrix, ...]
    u_trans: tuple[Vector, ...]

    def __post_init__(self):
        if self.q < 2 or self.d < 1:
            raise ValueError("need modulus >= 2 and dimension >= 1")
        if len(self.u_trans) > len(self.r_mats):
            raise ValueError("more unary symbols than binary symbols")

    @property
    def sig(self) -> Signature:
        return Signature(len(self.u_trans), len(self.r_mats))

    def u_maps(self) -> list[tuple[Matrix, Vector]]:
        """Unary symbol actions; the matrix is shared with the paired binary symbol."""
        return [(self.r_mats[i], self.u_trans[i]) for i in range(len(self.u_trans))]

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "d": self.d,
            "r": [[list(row) for row in mat] for mat in self.r_mats],
            "u": [[[list(row) for row in mat], list(vec)] for mat, vec in self.u_maps()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "AffineModel":
        r_mats = tuple(tuple(tuple(row) for row in mat) for mat in data["r"])
        u_trans = tuple(tuple(vec) for _, vec in data["u"])
        return cls(data["q"], data["d"], r_mats, u_trans)


@dataclass(frozen=True)
class Assignment:
    values: tuple[tuple[int, Vector], ...]
    z_value: Vector

    @classmethod
    def make(cls, values: dict[int, Vector], z_value: Vector) -> "Assignment":
        return cls(tuple(sorted(values.items())), z_value)

    def lookup(self) -> dict[int, Vector]:
        return dict(self.values)


def eval_term(model: AffineModel, t: Term, assignment: Assignment) -> Vector:
    values = assignment.lookup()
    q = model.q

    def ev(s: Term) -> Vector:
        if isinstance(s, Var):
            try:
                return values[s.index]
            except KeyError:
                raise ValueError(f"assignment missing x{s.index}") from None
        if isinstance(s, Z):
            return assignment.z_value
        if isinstance(s, M):
            return vec_add(vec_sub(ev(s.a), ev(s.b), q), ev(s.c), q)
        if isinstance(s, R):
            a, b = ev(s.left), ev(s.right)
            mat = model.r_mats[s.sym - 1]
            return vec_add(mat_vec(mat, vec_sub(a, b, q), q), b, q)
        if isinstance(s, U):
            mat = model.r_mats[s.sym - 1]
            return vec_add(mat_vec(mat, ev(s.arg), q), model.u_trans[s.sym - 1], q)
        raise TypeError(f"not a term: {s!r}")

    return ev(t)


def all_vectors(q: int, d: int) -> list[Vector]:
    return [tuple(v) for v in itertools.product(range(q), repeat=d)]


EXHAUSTIVE_LIMIT = 1_000_000


def _space_size(model: AffineModel, nvars: int) -> int:
    return (model.q ** model.d) ** (nvars + 1)


def satisfies(
    model: AffineModel,
    ident: Identity,
    exhaustive: bool | None = None,
    trials: int = 200,
    rng: random.Random | None = None,
) -> bool:
    """Check an identity on all assignments, or on random ones when the
    assignment space is too large. Exhaustive mode is chosen automatically
    when the space has at most a million points."""
    vars_ = sorted(ident.variables())
    if exhaustive is None:
        exhaustive = _space_size(model, len(vars_)) <= EXHAUSTIVE_LIMIT
    if exhaustive:
        vectors = all_vectors(model.q, model.d)
        for combo in itertools.product(vectors, repeat=len(vars_) + 1):
            a = Assignment.make(dict(zip(vars_, combo[:-1])), combo[-1])
            if eval_term(model, ident.lhs, a) != eval_term(model, ident.rhs, a):
                return False
        return True
    rng = rng or random.Random(0)
    for _ in range(trials):
        vals = {v: tuple(rng.randrange(model.q) for _ in range(model.d)) for v in vars_}
        zv = tuple(rng.randrange(model.q) for _ in range(model.d))
        a = Assignment.make(vals, zv)
        if eval_term(model, ident.lhs, a) != eval_term(model, ident.rhs, a):
            return False
    return True


def violating_assignment(
    model: AffineModel,
    s: Term,
    t: Term,
    trials: int = 200,
    rng: random.Random | None = None,
) -> Assignment | None:
    vars_ = sorted(term_variables(s) | term_variables(t))
    if _space_size(model, len(vars_)) <= EXHAUSTIVE_LIMIT:
        vectors = all_vectors(model.q, model.d)
        for combo in itertools.product(vectors, repeat=len(vars_) + 1):
            a = Assignment.make(dict(zip(vars_, combo[:-1])), combo[-1])
            if eval_term(model, s, a) != eval_term(model, t, a):
                return a
        return None
    rng = rng or random.Random(0)
    for _ in range(trials):
        vals = {v: tuple(rng.randrange(model.q) for _ in range(model.d)) for v in vars_}
        zv = tuple(rng.randrange(model.q) for _ in range(model.d))
        a = Assignment.make(vals, zv)
        if eval_term(model, s, a) != eval_term(model, t, a):
            return a
    return None


@dataclass
class SearchParams:
    max_q: int = 5
    max_dim: int = 4
    models_per_shape: int = 4
    trials: int = 200
    seed: int = 0

    def moduli(self) -> list[int]:
        return [q for q in MODULI if q <= self.max_q]


def random_model(rng: random.Random, sig: Signature, q: int, d: int) -> AffineModel:
    r_mats = tuple(
        tuple(tuple(rng.randrange(q) for _ in range(d)) for _ in range(d))
        for _ in range(sig.en)
    )
    u_trans = tuple(tuple(rng.randrange(q) for _ in range(d)) for _ in range(sig.ell))
    return AffineModel(q, d, r_mats, u_trans)


def _shift_register_mats(word: tuple[int, ...], sig: Signature, q: int) -> tuple[Matrix, ...]:
    """Matrices for which the word acts as a full climb up the basis chain
    while every other word of its length acts as zero on e_0."""
    k = len(word)
    d = k + 1
    mats = []
    for sym in range(1, sig.en + 1):
        rows = [[0] * d for _ in range(d)]
        for t in range(1, k + 1):
            if word[k - t] == sym:
                rows[t][t - 1] = 1
        mats.append(tuple(tuple(r) for r in rows))
    return tuple(mats)


def _witness_candidates(s: Term, t: Term, sig: Signature, params: SearchParams):
    """Models built from the normal-form difference of s and t.

    A word with coefficient not divisible by q is exposed by a shift-register
    model of dimension len(word) + 1: evaluating at the first basis vector
    pushes exactly that word's coefficient into the last coordinate.
    """
    delta = normalize(s, sig) - normalize(t, sig)
    seen = set()
    for q in params.moduli():
        for var in sorted(delta.coeffs):
            for word, coeff in delta.coeffs[var].items_deglex():
                if coeff % q == 0 or len(word) + 1 > params.max_dim:
                    continue
                key = (q, word)
                if key in seen:
                    continue
                seen.add(key)
                d = len(word) + 1
                mats = _shift_register_mats(word, sig, q)
                u_trans = tuple(zero_vec(d) for _ in range(sig.ell))
                yield AffineModel(q, d, mats, u_trans)
        for slot in range(1, sig.ell + 1):
            for word, coeff in delta.constant.slot(slot).items_deglex():
                if coeff % q == 0 or len(word) + 1 > params.max_dim:
                    continue
                key = (q, word, slot)
                if key in seen:
                    continue
                seen.add(key)
                d = len(word) + 1
                mats = _shift_register_mats(word, sig, q)
                u_trans = tuple(
                    basis_vec(d, 0) if u == slot else zero_vec(d)
                    for u in range(1, sig.ell + 1)
                )
                yield AffineModel(q, d, mats, u_trans)


def model_satisfies_presentation(model: AffineModel, vp, rng=None, trials: int = 200) -> bool:
    """Whether the model satisfies every identity of the presentation.

    Identity checks are exhaustive whenever affordable; a model whose check
    had to be sampled is still accepted, so callers claiming invalidity
    should keep presentations small enough for exhaustive checking.
    """
    return all(satisfies(model, ident, trials=trials, rng=rng) for ident in vp.ids)


def find_separating_model(s: Term, t: Term, vp, params: SearchParams | None = None):
    """Search for a model of the presentation on which s and t disagree.

    Structured witness models derived from the normal-form difference are
    tried first, then seeded random models with increasing modulus and
    dimension. Returns the first separating model, or None.
    """
    if params is None:
        params = SearchParams()
    sig = vp.sig
    rng = random.Random(params.seed)

    for model in _witness_candidates(s, t, sig, params):
        if vp.ids and not model_satisfies_presentation(model, vp, rng=rng, trials=params.trials):
            continue
        if violating_assignment(model, s, t, trials=params.trials, rng=rng) is not None:
            return model

    for q in params.moduli():
        for d in range(1, params.max_dim + 1):
            for _ in range(params.models_per_shape):
                model = random_model(rng, sig, q, d)
                if vp.ids and not model_satisfies_presentation(
                    model, vp, rng=rng, trials=params.trials
                ):
                    continue
                if violating_assignment(model, s, t, trials=params.trials, rng=rng) is not None:
                    return model
    return None


def check_malcev_uniqueness(
    model: AffineModel,
    mprime: Term,
    trials: int = 200,
    rng: random.Random | None = None,
) -> bool:
    """Whether a candidate ternary term agrees with the built-in one on the model."""
    builtin = M(Var(1), Var(2), Var(3))
    return (
        violating_assignment(model, builtin, mprime, trials=trials, rng=rng) is None
    )
