"""Terms over the canonical signature: parsing, printing, substitution, slicing.

The canonical signature has ``ell`` unary symbols u1..u_ell, ``en`` binary
symbols r1..r_en and one ternary symbol m. Terms are immutable ASTs over those
symbols, the variables x1, x2, ... and the distinguished variable z. Concrete
syntax is S-expression style::

    term := "z" | "x"INT | "(u " INT " " term ")"
          | "(r " INT " " term " " term ")" | "(m " term " " term " " term ")"
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping


class TermSyntaxError(ValueError):
    """Raised on malformed term text; carries the character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class SymbolBoundsError(ValueError):
    """Symbol index outside the signature's declared counts."""


class UnboundVariableError(ValueError):
    """Substitution hit a variable with no binding."""


@dataclass(frozen=True)
class Signature:
    """Symbol counts of the canonical type.

    ``ell`` unary symbols must not outnumber the ``en`` binary symbols:
    every unary symbol is paired with the binary symbol of the same index.
    """

    ell: int
    en: int

    def __post_init__(self):
        if self.ell < 0 or self.en < 0:
            raise ValueError("symbol counts must be nonnegative")
        if self.ell > self.en:
            raise ValueError(f"need ell <= en, got ell={self.ell}, en={self.en}")

    def header(self) -> str:
        return f"sig l={self.ell} n={self.en}"

    @classmethod
    def parse_header(cls, line: str) -> "Signature":
        parts = line.split()
        if len(parts) != 3 or parts[0] != "sig":
            raise ValueError(f"bad signature header: {line!r}")
        try:
            kl, vl = parts[1].split("=")
            kn, vn = parts[2].split("=")
            if kl != "l" or kn != "n":
                raise ValueError
            return cls(int(vl), int(vn))
        except ValueError:
            raise ValueError(f"bad signature header: {line!r}") from None


class Term:
    """Base class for term ASTs. All subclasses are frozen values."""

    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError("variable indices start at 1")


@dataclass(frozen=True)
class Z(Term):
    pass


@dataclass(frozen=True)
class U(Term):
    sym: int
    arg: Term


@dataclass(frozen=True)
class R(Term):
    sym: int
    left: Term
    right: Term


@dataclass(frozen=True)
class M(Term):
    a: Term
    b: Term
    c: Term


@dataclass(frozen=True)
class Identity:
    """An equation between two terms over the same signature."""

    lhs: Term
    rhs: Term

    def variables(self) -> frozenset[int]:
        return term_variables(self.lhs) | term_variables(self.rhs)

    def __str__(self):
        return f"{print_term(self.lhs)} = {print_term(self.rhs)}"


def term_variables(t: Term) -> frozenset[int]:
    out: set[int] = set()
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Var):
            out.add(s.index)
        elif isinstance(s, U):
            stack.append(s.arg)
        elif isinstance(s, R):
            stack.extend((s.left, s.right))
        elif isinstance(s, M):
            stack.extend((s.a, s.b, s.c))
    return frozenset(out)


def term_size(t: Term) -> int:
    if isinstance(t, (Var, Z)):
        return 1
    if isinstance(t, U):
        return 1 + term_size(t.arg)
    if isinstance(t, R):
        return 1 + term_size(t.left) + term_size(t.right)
    return 1 + term_size(t.a) + term_size(t.b) + term_size(t.c)


def term_depth(t: Term) -> int:
    if isinstance(t, (Var, Z)):
        return 0
    if isinstance(t, U):
        return 1 + term_depth(t.arg)
    if isinstance(t, R):
        return 1 + max(term_depth(t.left), term_depth(t.right))
    return 1 + max(term_depth(t.a), term_depth(t.b), term_depth(t.c))


def check_symbols(t: Term, sig: Signature) -> None:
    """Raise SymbolBoundsError if any symbol index exceeds the signature."""
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, U):
            if not 1 <= s.sym <= sig.ell:
                raise SymbolBoundsError(f"unary symbol u{s.sym} out of bounds for {sig.header()}")
            stack.append(s.arg)
        elif isinstance(s, R):
            if not 1 <= s.sym <= sig.en:
                raise SymbolBoundsError(f"binary symbol r{s.sym} out of bounds for {sig.header()}")
            stack.extend((s.left, s.right))
        elif isinstance(s, M):
            stack.extend((s.a, s.b, s.c))


def print_term(t: Term) -> str:
    if isinstance(t, Var):
        return f"x{t.index}"
    if isinstance(t, Z):
        return "z"
    if isinstance(t, U):
        return f"(u {t.sym} {print_term(t.arg)})"
    if isinstance(t, R):
        return f"(r {t.sym} {print_term(t.left)} {print_term(t.right)})"
    if isinstance(t, M):
        return f"(m {print_term(t.a)} {print_term(t.b)} {print_term(t.c)})"
    raise TypeError(f"not a term: {t!r}")


def _tokenize(text: str) -> Iterator[tuple[str, int]]:
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()":
            yield c, i
            i += 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "()":
                j += 1
            yield text[i:j], i
            i = j


def parse_term(text: str, sig: Signature) -> Term:
    """Parse the S-expression term syntax, checking symbol bounds against sig."""
    tokens = list(_tokenize(text))
    pos = 0

    def peek():
        if pos >= len(tokens):
            raise TermSyntaxError("unexpected end of input", len(text))
        return tokens[pos]

    def advance():
        nonlocal pos
        tok = peek()
        pos += 1
        return tok

    def parse_index(where: int) -> int:
        tok, at = advance()
        if not tok.isdigit():
            raise TermSyntaxError(f"expected symbol index, got {tok!r}", at)
        return int(tok)

    def parse_one() -> Term:
        tok, at = advance()
        if tok == "z":
            return Z()
        if tok.startswith("x") and tok[1:].isdigit() and int(tok[1:]) >= 1:
            return Var(int(tok[1:]))
        if tok != "(":
            raise TermSyntaxError(f"unexpected token {tok!r}", at)
        head, hat = advance()
        if head == "u":
            i = parse_index(hat)
            if not 1 <= i <= sig.ell:
                raise SymbolBoundsError(f"unary symbol u{i} out of bounds for {sig.header()}")
            arg = parse_one()
            node: Term = U(i, arg)
        elif head == "r":
            i = parse_index(hat)
            if not 1 <= i <= sig.en:
                raise SymbolBoundsError(f"binary symbol r{i} out of bounds for {sig.header()}")
            node = R(i, parse_one(), parse_one())
        elif head == "m":
            node = M(parse_one(), parse_one(), parse_one())
        else:
            raise TermSyntaxError(f"unknown operation {head!r}", hat)
        tok, at = advance()
        if tok != ")":
            raise TermSyntaxError(f"expected ')', got {tok!r}", at)
        return node

    result = parse_one()
    if pos != len(tokens):
        raise TermSyntaxError(f"trailing input {tokens[pos][0]!r}", tokens[pos][1])
    return result


def substitute(t: Term, bindings: Mapping[int, Term], z_image: Term) -> Term:
    """Simultaneously replace every variable per bindings and z by z_image.

    Every variable occurring in t must be bound.
    """
    if isinstance(t, Var):
        if t.index not in bindings:
            raise UnboundVariableError(f"no binding for x{t.index}")
        return bindings[t.index]
    if isinstance(t, Z):
        return z_image
    if isinstance(t, U):
        return U(t.sym, substitute(t.arg, bindings, z_image))
    if isinstance(t, R):
        return R(t.sym, substitute(t.left, bindings, z_image), substitute(t.right, bindings, z_image))
    if isinstance(t, M):
        return M(
            substitute(t.a, bindings, z_image),
            substitute(t.b, bindings, z_image),
            substitute(t.c, bindings, z_image),
        )
    raise TypeError(f"not a term: {t!r}")


def slice_term(t: Term, i: int, k: int | None = None) -> Term:
    """Keep one variable and send everything else to z.

    slice_term(t, 0) replaces every variable by z, yielding a unary term in z.
    For i >= 1 the variable xi is kept but renamed to x1, so the result is a
    binary term in (x1, z). Requires 0 <= i <= k; k defaults to the largest
    variable index of t but may be passed explicitly when t is one side of an
    identity with a wider variable range.
    """
    vs = term_variables(t)
    if k is None:
        k = max(vs, default=0)
    if i < 0 or i > k:
        raise ValueError(f"slice index {i} out of range 0..{k}")
    bindings: dict[int, Term] = {j: Z() for j in vs}
    if i >= 1 and i in vs:
        bindings[i] = Var(1)
    return substitute(t, bindings, Z())


def ambient_identities(sig: Signature) -> list[Identity]:
    """Defining identities of the ambient variety for the canonical type.

    These hold in every model used by this package and are never stored in a
    presentation; presentations list only the identities beyond them.
    """
    x = [Var(i) for i in range(0, 10)]  # x[0] unused
    ids = [
        Identity(M(x[1], Z(), Z()), x[1]),
        Identity(M(Z(), Z(), x[1]), x[1]),
        Identity(
            M(M(x[1], x[2], x[3]), M(x[4], x[5], x[6]), M(x[7], x[8], x[9])),
            M(M(x[1], x[4], x[7]), M(x[2], x[5], x[8]), M(x[3], x[6], x[9])),
        ),
    ]
    for i in range(1, sig.en + 1):
        ids.append(Identity(R(i, Z(), Z()), Z()))
        ids.append(
            Identity(
                M(R(i, x[1], x[2]), R(i, x[3], x[4]), R(i, x[5], x[6])),
                R(i, M(x[1], x[3], x[5]), M(x[2], x[4], x[6])),
            )
        )
    for i in range(1, sig.ell + 1):
        ids.append(Identity(M(U(i, x[1]), U(i, x[2]), U(i, x[3])), U(i, M(x[1], x[2], x[3]))))
        ids.append(Identity(M(U(i, x[1]), U(i, Z()), Z()), R(i, x[1], Z())))
    return ids
