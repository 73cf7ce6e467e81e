"""Canonical normal forms for terms, and canonical terms for normal forms.

Every term over the canonical signature induces the same operation as a
unique expression of the shape

    sum_i  p_i * x_i   +   (module constant),

with p_i in the free ring on r1..rn and the constant in the free module on
u1..u_ell. ``normalize`` computes that expression by structural recursion:

    x_i        ->  coefficient 1 on x_i
    z          ->  0
    m(a, b, c) ->  NF(a) - NF(b) + NF(c)
    r_i(a, b)  ->  r_i * NF(a) + (1 - r_i) * NF(b)
    u_i(a)     ->  r_i * NF(a) + u_i

Two terms induce the same operation in the ambient variety exactly when
their normal forms are equal. ``denormalize`` builds a canonical term
realizing a normal form, so the two functions are mutually inverse up to the
equational theory (exactly inverse on normal forms).
"""

from __future__ import annotations

from .freering import ModuleVec, NCPoly, Word
from .terms import M, R, Signature, SymbolBoundsError, Term, U, Var, Z, substitute


class NormalForm:
    """Per-variable ring coefficients plus a module constant."""

    __slots__ = ("sig", "coeffs", "constant", "_hash")

    def __init__(self, sig: Signature, coeffs=None, constant: ModuleVec | None = None):
        self.sig = sig
        clean: dict[int, NCPoly] = {}
        if coeffs:
            for i, p in coeffs.items():
                if p.n != sig.en:
                    raise ValueError("coefficient generator count mismatch")
                if p:
                    clean[i] = p
        self.coeffs = clean
        if constant is None:
            constant = ModuleVec.zero(sig.ell, sig.en)
        if constant.ell != sig.ell or constant.n != sig.en:
            raise ValueError("constant dimension mismatch")
        self.constant = constant
        self._hash = None

    @classmethod
    def zero(cls, sig: Signature) -> "NormalForm":
        return cls(sig)

    @classmethod
    def variable(cls, sig: Signature, i: int) -> "NormalForm":
        return cls(sig, {i: NCPoly.one(sig.en)})

    def coeff(self, i: int) -> NCPoly:
        return self.coeffs.get(i, NCPoly.zero(self.sig.en))

    def ring_part(self) -> NCPoly:
        """Coefficient of x1; the ring component of a binary term's normal form."""
        return self.coeff(1)

    def is_zero(self) -> bool:
        return not self.coeffs and not self.constant

    def __eq__(self, other):
        return (
            isinstance(other, NormalForm)
            and self.sig == other.sig
            and self.coeffs == other.coeffs
            and self.constant == other.constant
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.sig, frozenset(self.coeffs.items()), self.constant))
        return self._hash

    def __add__(self, other: "NormalForm") -> "NormalForm":
        if self.sig != other.sig:
            raise ValueError("signature mismatch")
        out = dict(self.coeffs)
        for i, p in other.coeffs.items():
            out[i] = out.get(i, NCPoly.zero(self.sig.en)) + p
        return NormalForm(self.sig, out, self.constant + other.constant)

    def __neg__(self) -> "NormalForm":
        return NormalForm(self.sig, {i: -p for i, p in self.coeffs.items()}, -self.constant)

    def __sub__(self, other: "NormalForm") -> "NormalForm":
        return self + (-other)

    def scale(self, p: NCPoly) -> "NormalForm":
        """Left multiplication of every component by a ring element."""
        return NormalForm(
            self.sig, {i: p * q for i, q in self.coeffs.items()}, self.constant.scale(p)
        )

    def to_json(self) -> dict:
        return {
            "sig": {"l": self.sig.ell, "n": self.sig.en},
            "coeffs": {str(i): self.coeffs[i].to_json() for i in sorted(self.coeffs)},
            "constant": self.constant.to_json(),
        }

    def __str__(self):
        parts = [f"({p})*x{i}" for i, p in sorted(self.coeffs.items())]
        if self.constant:
            parts.append(str(self.constant))
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"NormalForm[{self}]"


def normalize(t: Term, sig: Signature) -> NormalForm:
    """Canonical normal form of a term, by structural recursion."""
    if isinstance(t, Var):
        return NormalForm.variable(sig, t.index)
    if isinstance(t, Z):
        return NormalForm.zero(sig)
    if isinstance(t, M):
        return normalize(t.a, sig) - normalize(t.b, sig) + normalize(t.c, sig)
    if isinstance(t, R):
        if not 1 <= t.sym <= sig.en:
            raise SymbolBoundsError(f"binary symbol r{t.sym} out of bounds for {sig.header()}")
        g = NCPoly.gen(sig.en, t.sym)
        left = normalize(t.left, sig).scale(g)
        right = normalize(t.right, sig).scale(NCPoly.one(sig.en) - g)
        return left + right
    if isinstance(t, U):
        if not 1 <= t.sym <= sig.ell:
            raise SymbolBoundsError(f"unary symbol u{t.sym} out of bounds for {sig.header()}")
        g = NCPoly.gen(sig.en, t.sym)
        nf = normalize(t.arg, sig).scale(g)
        unit = NormalForm(sig, None, ModuleVec.gen(sig.ell, sig.en, t.sym))
        return nf + unit
    raise TypeError(f"not a term: {t!r}")


def _add_terms(a: Term | None, b: Term) -> Term:
    return b if a is None else M(a, Z(), b)


def _int_times(c: int, t: Term) -> Term:
    # Balanced doubling keeps the realization of c*t at O(log|c|) size.
    if c == 0:
        return Z()
    if c < 0:
        return M(Z(), _int_times(-c, t), Z())
    if c == 1:
        return t
    half = _int_times(c // 2, t)
    doubled = M(half, Z(), half)
    return M(doubled, Z(), t) if c % 2 else doubled


def _word_on(word: Word, base: Term) -> Term:
    t = base
    for sym in reversed(word):
        t = R(sym, t, Z())
    return t


def denormalize(nf: NormalForm, sig: Signature | None = None) -> Term:
    """Canonical term realizing a normal form.

    Shape is fixed for deterministic output: monomials are nested
    right-to-left r-applications, integer multiples use balanced doubling,
    parts are combined by left-nested additions (m _ z _) with variables in
    increasing index order followed by the module slots in increasing order,
    and words within one coefficient in degree-lexicographic order.
    """
    if sig is None:
        sig = nf.sig
    acc: Term | None = None
    for i in sorted(nf.coeffs):
        for word, c in nf.coeffs[i].items_deglex():
            acc = _add_terms(acc, _int_times(c, _word_on(word, Var(i))))
    for s in range(1, nf.constant.ell + 1):
        base = U(s, Z())
        for word, c in nf.constant.slot(s).items_deglex():
            acc = _add_terms(acc, _int_times(c, _word_on(word, base)))
    return acc if acc is not None else Z()


def nf_equal(s: Term, t: Term, sig: Signature) -> bool:
    """Whether two terms induce the same operation in the ambient variety."""
    return normalize(s, sig) == normalize(t, sig)


def shift_unary(v: ModuleVec, sig: Signature | None = None) -> NormalForm:
    """Normal form of the unary term realizing v, applied at x1 instead of z.

    Used to form the ring element f(x) - f(z) - x whose membership in an
    ideal is the self-consistency condition on congruence data.
    """
    if sig is None:
        sig = Signature(v.ell, v.n)
    term = denormalize(NormalForm(sig, None, v), sig)
    return normalize(substitute(term, {}, Var(1)), sig)


def shift_defect(v: ModuleVec, sig: Signature | None = None) -> NCPoly:
    """Ring part of f(x) - f(z) - x for the unary term f realizing v."""
    if sig is None:
        sig = Signature(v.ell, v.n)
    shifted = shift_unary(v, sig)
    return shifted.ring_part() - NCPoly.one(sig.en)
