"""Translating a general algebraic presentation into the canonical type.

A presentation over arbitrary finite operation symbols, together with a
declared ternary term satisfying the Mal'cev laws, is converted into an
equivalent presentation over the canonical signature. Each symbol is sliced:
sending all arguments to z gives a unary term, which receives a fresh unary
symbol; keeping one argument gives a binary term whose idempotent part
receives a fresh binary symbol. The symbol's image is the nested ternary
recombination of those slices. Unary symbols come first in the binary
numbering, paired with their own difference terms, and every identity of the
input is translated through the symbol images.

The abelianness premise (the Mal'cev term commutes with every basic
operation) is not finitely checkable in general; it is asserted by the user
and falsified where possible by the finite-model checks in
``verify_equivalence``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .presentation import VarietyPresentation
from .terms import (
    Identity,
    M,
    R,
    Signature,
    Term,
    TermSyntaxError,
    U,
    Var,
    Z,
    substitute,
    term_variables,
)


@dataclass(frozen=True)
class GeneralSignature:
    """Finite list of (name, arity) operation symbols.

    A name listed in infinite_families marks a schema of symbols with
    unbounded index; presentations with such a schema have no finite basis
    and are rejected by canonicalize.
    """

    ops: tuple[tuple[str, int], ...]
    infinite_families: tuple[str, ...] = ()

    def __post_init__(self):
        names = [n for n, _ in self.ops] + list(self.infinite_families)
        if len(set(names)) != len(names):
            raise ValueError("duplicate operation names")
        for name, arity in self.ops:
            if arity < 0:
                raise ValueError(f"negative arity for {name}")

    def arity(self, name: str) -> int:
        for n, a in self.ops:
            if n == name:
                return a
        raise KeyError(f"unknown operation {name}")


class GTerm:
    __slots__ = ()


@dataclass(frozen=True)
class GVar(GTerm):
    index: int


@dataclass(frozen=True)
class GApp(GTerm):
    name: str
    args: tuple[GTerm, ...]


@dataclass(frozen=True)
class GeneralIdentity:
    lhs: GTerm
    rhs: GTerm

    def __str__(self):
        return f"{print_general_term(self.lhs)} = {print_general_term(self.rhs)}"


def print_general_term(t: GTerm) -> str:
    if isinstance(t, GVar):
        return f"x{t.index}"
    if isinstance(t, GApp):
        if not t.args:
            return f"({t.name})"
        return "(" + " ".join([t.name] + [print_general_term(a) for a in t.args]) + ")"
    raise TypeError(f"not a general term: {t!r}")


def parse_general_term(text: str, gsig: GeneralSignature) -> GTerm:
    tokens = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()":
            tokens.append((c, i))
            i += 1
        else:
            j = i
            while j < len(text) and not text[j].isspace() and text[j] not in "()":
                j += 1
            tokens.append((text[i:j], i))
            i = j
    pos = 0

    def advance():
        nonlocal pos
        if pos >= len(tokens):
            raise TermSyntaxError("unexpected end of input", len(text))
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_one() -> GTerm:
        tok, at = advance()
        if tok.startswith("x") and tok[1:].isdigit() and int(tok[1:]) >= 1:
            return GVar(int(tok[1:]))
        if tok != "(":
            raise TermSyntaxError(f"unexpected token {tok!r}", at)
        name, nat = advance()
        if name in "()":
            raise TermSyntaxError("expected operation name", nat)
        arity = None
        try:
            arity = gsig.arity(name)
        except KeyError:
            raise TermSyntaxError(f"unknown operation {name!r}", nat) from None
        args = []
        for _ in range(arity):
            args.append(parse_one())
        tok, at = advance()
        if tok != ")":
            raise TermSyntaxError(f"expected ')' after {name}, got {tok!r}", at)
        return GApp(name, tuple(args))

    out = parse_one()
    if pos != len(tokens):
        raise TermSyntaxError(f"trailing input {tokens[pos][0]!r}", tokens[pos][1])
    return out


def gterm_variables(t: GTerm) -> frozenset[int]:
    if isinstance(t, GVar):
        return frozenset([t.index])
    out: frozenset[int] = frozenset()
    for a in t.args:
        out |= gterm_variables(a)
    return out


def substitute_general(t: GTerm, images: Mapping[int, GTerm]) -> GTerm:
    if isinstance(t, GVar):
        return images.get(t.index, t)
    return GApp(t.name, tuple(substitute_general(a, images) for a in t.args))


@dataclass(frozen=True)
class GeneralPresentation:
    gsig: GeneralSignature
    malcev_term: GTerm
    ids: tuple[GeneralIdentity, ...]

    def __post_init__(self):
        if not gterm_variables(self.malcev_term) <= {1, 2, 3}:
            raise ValueError("the declared ternary term must use variables x1, x2, x3")

    def malcev_laws(self) -> list[GeneralIdentity]:
        m = self.malcev_term
        x1, x2 = GVar(1), GVar(2)
        return [
            GeneralIdentity(substitute_general(m, {1: x1, 2: x1, 3: x2}), x2),
            GeneralIdentity(substitute_general(m, {1: x1, 2: x2, 3: x2}), x1),
        ]


@dataclass(frozen=True)
class SymbolImage:
    """Canonical realization of one general symbol.

    For arity a, ``term`` is the canonical term in x1..x_{a-1} and z that the
    symbol translates to; ``base`` realizes the all-arguments-to-z slice and
    ``slices`` realize the single-argument slices in (x1, z).
    """

    name: str
    arity: int
    u_index: int
    r_indices: tuple[int, ...]
    base: Term
    slices: tuple[Term, ...]
    term: Term


@dataclass(frozen=True)
class InterpretationMap:
    sig: Signature
    images: tuple[SymbolImage, ...]
    u_sources: tuple[str, ...]  # per unary symbol, the general term it realizes
    r_sources: tuple[str, ...]  # per binary symbol, a description of its origin

    def image(self, name: str) -> SymbolImage:
        for im in self.images:
            if im.name == name:
                return im
        raise KeyError(f"no image for operation {name}")

    def to_json(self) -> dict:
        from .terms import print_term

        return {
            "sig": {"l": self.sig.ell, "n": self.sig.en},
            "unary_symbols": list(self.u_sources),
            "binary_symbols": list(self.r_sources),
            "images": {
                im.name: {
                    "arity": im.arity,
                    "term": print_term(im.term),
                    "base": print_term(im.base),
                    "slices": [print_term(s) for s in im.slices],
                }
                for im in self.images
            },
        }


def _zero_slice_descr(name: str, arity: int) -> str:
    if arity == 0:
        return f"({name})"
    args = " ".join(["z"] * arity)
    return f"({name} {args})"


def _one_slice_descr(name: str, arity: int, pos: int) -> str:
    args = ["z"] * arity
    args[pos - 1] = "x"
    return f"({name} {' '.join(args)})"


def canonicalize(gp: GeneralPresentation) -> tuple[InterpretationMap, VarietyPresentation]:
    """Allocate canonical symbols for the slices of every operation and
    translate the presentation.

    One unary symbol is allocated per operation (its zero slice) and one
    binary symbol per operation argument below the last (the idempotent part
    of that slice). The first ell binary symbols are reserved as the paired
    difference terms of the unary symbols. Translated identities include the
    declared Mal'cev laws and, for 0-ary symbols, the constancy of their
    images.
    """
    if gp.gsig.infinite_families:
        raise ValueError("cannot canonicalize an infinite type")
    ops = gp.gsig.ops
    ell = len(ops)
    u_index = {name: i + 1 for i, (name, _) in enumerate(ops)}
    u_sources = tuple(_zero_slice_descr(name, a) for name, a in ops)
    r_sources = [f"difference term of u{i + 1}" for i in range(ell)]
    r_index: dict[tuple[str, int], int] = {}
    next_r = ell + 1
    for name, a in ops:
        for pos in range(1, a):
            r_index[(name, pos)] = next_r
            r_sources.append(f"idempotent part of {_one_slice_descr(name, a, pos)}")
            next_r += 1
    sig = Signature(ell, next_r - 1)

    images = []
    for name, a in ops:
        u = u_index[name]
        base = U(u, Z())
        slices = tuple(
            M(R(r_index[(name, pos)], Var(1), Z()), Z(), base) for pos in range(1, a)
        )
        if a == 0 or a == 1:
            term: Term = base
        else:
            def slice_at(pos: int) -> Term:
                return M(R(r_index[(name, pos)], Var(pos), Z()), Z(), base)

            term = slice_at(1)
            for pos in range(2, a):
                term = M(term, base, slice_at(pos))
        images.append(
            SymbolImage(
                name=name,
                arity=a,
                u_index=u,
                r_indices=tuple(r_index[(name, pos)] for pos in range(1, a)),
                base=base,
                slices=slices,
                term=term,
            )
        )
    imap = InterpretationMap(sig, tuple(images), u_sources, tuple(r_sources))

    translated = []
    for gid in list(gp.ids) + gp.malcev_laws():
        translated.append(
            Identity(translate_term(imap, gid.lhs), translate_term(imap, gid.rhs))
        )
    for im in images:
        if im.arity == 0:
            translated.append(Identity(U(im.u_index, Var(1)), U(im.u_index, Var(2))))
    return imap, VarietyPresentation(sig, tuple(translated))


def translate_term(imap: InterpretationMap, t: GTerm) -> Term:
    """Homomorphic replacement of every general symbol by its image."""
    if isinstance(t, GVar):
        return Var(t.index)
    im = imap.image(t.name)
    if len(t.args) != im.arity:
        raise ValueError(f"{t.name} applied to {len(t.args)} arguments, expected {im.arity}")
    if im.arity == 0:
        return im.term
    args = [translate_term(imap, a) for a in t.args]
    bindings = {i: args[i - 1] for i in range(1, im.arity)}
    return substitute(im.term, bindings, args[-1])


@dataclass(frozen=True)
class GeneralModel:
    """A finite algebra for a general signature, given by operation tables.

    Tables are nested sequences indexed by argument values; a 0-ary symbol's
    table is its element.
    """

    size: int
    tables: tuple[tuple[str, object], ...]

    @classmethod
    def make(cls, size: int, tables: Mapping[str, object]) -> "GeneralModel":
        return cls(size, tuple(sorted(tables.items())))

    def op(self, name: str):
        for n, t in self.tables:
            if n == name:
                return t
        raise KeyError(f"model has no operation {name}")

    def apply(self, name: str, args: Sequence[int]) -> int:
        t = self.op(name)
        for a in args:
            t = t[a]
        return t


def eval_general(model: GeneralModel, t: GTerm, env: Mapping[int, int]) -> int:
    if isinstance(t, GVar):
        return env[t.index]
    return model.apply(t.name, [eval_general(model, a, env) for a in t.args])


class CanonicalTables:
    """A finite algebra for a canonical signature, with operations given as
    functions; used to realize the translated structure on a general model."""

    def __init__(self, size, m_fn, u_fns, r_fns):
        self.size = size
        self.m_fn = m_fn
        self.u_fns = u_fns
        self.r_fns = r_fns

    def eval(self, t: Term, env: Mapping[int, int], z_val: int) -> int:
        if isinstance(t, Var):
            return env[t.index]
        if isinstance(t, Z):
            return z_val
        if isinstance(t, M):
            return self.m_fn(
                self.eval(t.a, env, z_val), self.eval(t.b, env, z_val), self.eval(t.c, env, z_val)
            )
        if isinstance(t, R):
            return self.r_fns[t.sym - 1](
                self.eval(t.left, env, z_val), self.eval(t.right, env, z_val)
            )
        if isinstance(t, U):
            return self.u_fns[t.sym - 1](self.eval(t.arg, env, z_val))
        raise TypeError(f"not a term: {t!r}")

    def satisfies(self, ident: Identity, limit: int = 200_000, rng=None) -> bool:
        vars_ = sorted(ident.variables())
        space = self.size ** (len(vars_) + 1)
        if space <= limit:
            combos = itertools.product(range(self.size), repeat=len(vars_) + 1)
        else:
            rng = rng or random.Random(0)
            combos = (
                tuple(rng.randrange(self.size) for _ in range(len(vars_) + 1))
                for _ in range(2000)
            )
        for combo in combos:
            env = dict(zip(vars_, combo[:-1]))
            if self.eval(ident.lhs, env, combo[-1]) != self.eval(ident.rhs, env, combo[-1]):
                return False
        return True


def canonical_structure(model: GeneralModel, gp: GeneralPresentation, imap: InterpretationMap):
    """The canonical-type algebra induced on a general model.

    Unary symbols act as the zero slices of their source operations, binary
    symbols as difference terms or idempotent slice parts, and the ternary
    symbol as the declared Mal'cev term.
    """

    def m_fn(a, b, c):
        return eval_general(model, gp.malcev_term, {1: a, 2: b, 3: c})

    ops = gp.gsig.ops
    u_fns = []
    for name, arity in ops:
        def u_fn(v, name=name, arity=arity):
            return model.apply(name, [v] * arity)

        u_fns.append(u_fn)

    r_fns: list = [None] * imap.sig.en
    for i, u_fn in enumerate(u_fns):
        def shadow(a, b, u_fn=u_fn):
            return m_fn(u_fn(a), u_fn(b), b)

        r_fns[i] = shadow
    for im in imap.images:
        for pos, r_idx in enumerate(im.r_indices, start=1):
            def part(a, b, name=im.name, arity=im.arity, pos=pos):
                args = [b] * arity
                args[pos - 1] = a
                one = model.apply(name, args)
                zero = model.apply(name, [b] * arity)
                return m_fn(one, zero, b)

            r_fns[r_idx - 1] = part
    return CanonicalTables(model.size, m_fn, u_fns, r_fns)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class EquivalenceReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"all_passed": self.all_passed, "checks": [c.to_json() for c in self.checks]}


def _general_identity_holds(model: GeneralModel, gid: GeneralIdentity, limit=200_000, rng=None):
    vars_ = sorted(gterm_variables(gid.lhs) | gterm_variables(gid.rhs))
    space = model.size ** len(vars_)
    if space <= limit:
        combos = itertools.product(range(model.size), repeat=len(vars_))
    else:
        rng = rng or random.Random(0)
        combos = (
            tuple(rng.randrange(model.size) for _ in vars_) for _ in range(2000)
        )
    for combo in combos:
        env = dict(zip(vars_, combo))
        if eval_general(model, gid.lhs, env) != eval_general(model, gid.rhs, env):
            return False
    return True


def _commutation_identity(name: str, arity: int, m: GTerm) -> GeneralIdentity | None:
    if arity == 0:
        return None
    # Variables laid out as a 3 x arity grid, rows fed to the operation.
    grid = [[GVar(row * arity + col + 1) for col in range(arity)] for row in range(3)]
    lhs = substitute_general(
        m, {1: GApp(name, tuple(grid[0])), 2: GApp(name, tuple(grid[1])), 3: GApp(name, tuple(grid[2]))}
    )
    rhs = GApp(
        name,
        tuple(
            substitute_general(m, {1: grid[0][c], 2: grid[1][c], 3: grid[2][c]})
            for c in range(arity)
        ),
    )
    return GeneralIdentity(lhs, rhs)


def verify_equivalence(
    imap: InterpretationMap,
    gp: GeneralPresentation,
    vp: VarietyPresentation,
    models: Sequence[GeneralModel],
    limit: int = 200_000,
    seed: int = 0,
) -> EquivalenceReport:
    """Desk-scale semantic checks that the translation is faithful.

    On each supplied finite model of the general presentation: the declared
    ternary term satisfies the Mal'cev laws, it commutes with every basic
    operation (the abelianness premise), the induced canonical structure
    satisfies every translated identity, and every operation agrees with the
    evaluation of its image (the round trip back). Checks are exhaustive up
    to the assignment limit, sampled past it.
    """
    rng = random.Random(seed)
    report = EquivalenceReport()
    for idx, model in enumerate(models):
        tag = f"model{idx}"
        for law_i, law in enumerate(gp.malcev_laws()):
            ok = _general_identity_holds(model, law, limit, rng)
            report.checks.append(
                CheckResult(f"{tag}:malcev_law_{law_i}", ok, str(law))
            )
        for name, arity in gp.gsig.ops:
            cid = _commutation_identity(name, arity, gp.malcev_term)
            if cid is None:
                continue
            ok = _general_identity_holds(model, cid, limit, rng)
            report.checks.append(
                CheckResult(f"{tag}:commutes_{name}", ok, "ternary term commutes with operation")
            )
        structure = canonical_structure(model, gp, imap)
        for i, ident in enumerate(vp.ids):
            ok = structure.satisfies(ident, limit, rng)
            report.checks.append(
                CheckResult(f"{tag}:translated_id_{i}", ok, str(ident))
            )
        for name, arity in gp.gsig.ops:
            im = imap.image(name)
            ok = True
            space = model.size ** max(arity, 1)
            if space <= limit:
                combos = itertools.product(range(model.size), repeat=max(arity, 1))
            else:
                combos = (
                    tuple(rng.randrange(model.size) for _ in range(arity))
                    for _ in range(2000)
                )
            for combo in combos:
                direct = model.apply(name, list(combo[:arity]))
                if arity == 0:
                    via = structure.eval(im.term, {}, combo[0])
                else:
                    env = {i: combo[i - 1] for i in range(1, arity)}
                    via = structure.eval(im.term, env, combo[arity - 1])
                if direct != via:
                    ok = False
                    break
            report.checks.append(
                CheckResult(f"{tag}:roundtrip_{name}", ok, "operation equals its translated image")
            )
    return report
