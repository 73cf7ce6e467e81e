"""Exact arithmetic in the free ring Z<r1..rn> and the free module over it.

An NCPoly is an integer-coefficient polynomial in n noncommuting generators,
stored as a sparse map from words (tuples of generator indices) to nonzero
coefficients. The empty word is the multiplicative identity. A ModuleVec is a
formal sum over the free module generators u1..u_ell with NCPoly
coefficients acting on the left.

Both types are canonical: equal mappings mean equal elements, and no zero
coefficient is ever stored. Printing and JSON output order words
degree-lexicographically so output is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

Word = tuple[int, ...]


def word_key(w: Word):
    """Degree-lexicographic sort key."""
    return (len(w), w)


class NCPoly:
    """Element of the free integer ring on n noncommuting generators."""

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Word, int] | None = None):
        self.n = n
        clean: dict[Word, int] = {}
        if terms:
            for w, c in terms.items():
                if c != 0:
                    for s in w:
                        if not 1 <= s <= n:
                            raise ValueError(f"generator index {s} out of range 1..{n}")
                    clean[tuple(w)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def zero(cls, n: int) -> "NCPoly":
        return cls(n)

    @classmethod
    def one(cls, n: int) -> "NCPoly":
        return cls(n, {(): 1})

    @classmethod
    def gen(cls, n: int, i: int) -> "NCPoly":
        return cls(n, {(i,): 1})

    @classmethod
    def from_word(cls, n: int, word: Iterable[int], coeff: int = 1) -> "NCPoly":
        return cls(n, {tuple(word): coeff})

    def _require_same(self, other: "NCPoly"):
        if self.n != other.n:
            raise ValueError(f"mismatched generator counts {self.n} and {other.n}")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, NCPoly) and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    def __add__(self, other: "NCPoly") -> "NCPoly":
        self._require_same(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return NCPoly(self.n, out)

    def __neg__(self) -> "NCPoly":
        return NCPoly(self.n, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return NCPoly(self.n, {w: c * other for w, c in self.terms.items()})
        self._require_same(other)
        out: dict[Word, int] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = out.get(w, 0) + c1 * c2
                if s:
                    out[w] = s
                else:
                    del out[w]
        return NCPoly(self.n, out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def sandwich(self, left: Word, right: Word) -> "NCPoly":
        """left * self * right for plain words, without building word polys."""
        left, right = tuple(left), tuple(right)
        return NCPoly(self.n, {left + w + right: c for w, c in self.terms.items()})

    def degree(self) -> int:
        """Largest word length; 0 for the zero polynomial."""
        return max((len(w) for w in self.terms), default=0)

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self.terms}) <= 1

    def homogeneous_component(self, d: int) -> "NCPoly":
        if d < 0:
            raise ValueError("degree must be nonnegative")
        return NCPoly(self.n, {w: c for w, c in self.terms.items() if len(w) == d})

    def coeff(self, word: Iterable[int]) -> int:
        return self.terms.get(tuple(word), 0)

    def items_deglex(self) -> list[tuple[Word, int]]:
        return sorted(self.terms.items(), key=lambda wc: word_key(wc[0]))

    def to_json(self) -> list:
        return [{"word": list(w), "coeff": c} for w, c in self.items_deglex()]

    @classmethod
    def from_json(cls, n: int, data: list) -> "NCPoly":
        terms: dict[Word, int] = {}
        for entry in data:
            w = tuple(entry["word"])
            terms[w] = terms.get(w, 0) + int(entry["coeff"])
        return cls(n, terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.items_deglex():
            mono = "*".join(f"r{i}" for i in w) if w else "1"
            if c == 1 and w:
                s = mono
            elif c == -1 and w:
                s = f"-{mono}"
            elif w:
                s = f"{c}*{mono}"
            else:
                s = str(c)
            parts.append(s)
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self):
        return f"NCPoly({self.n}, {self})"


class ModuleVec:
    """Element of the free module on u1..u_ell over the free ring on n generators."""

    __slots__ = ("ell", "n", "slots", "_hash")

    def __init__(self, ell: int, n: int, slots: Iterable[NCPoly] | None = None):
        self.ell = ell
        self.n = n
        if slots is None:
            self.slots = tuple(NCPoly.zero(n) for _ in range(ell))
        else:
            slots = tuple(slots)
            if len(slots) != ell:
                raise ValueError(f"expected {ell} slots, got {len(slots)}")
            for p in slots:
                if p.n != n:
                    raise ValueError("slot generator count mismatch")
            self.slots = slots
        self._hash = None

    @classmethod
    def zero(cls, ell: int, n: int) -> "ModuleVec":
        return cls(ell, n)

    @classmethod
    def gen(cls, ell: int, n: int, i: int) -> "ModuleVec":
        if not 1 <= i <= ell:
            raise ValueError(f"module generator index {i} out of range 1..{ell}")
        return cls(ell, n, [NCPoly.one(n) if j == i else NCPoly.zero(n) for j in range(1, ell + 1)])

    def _require_same(self, other: "ModuleVec"):
        if self.ell != other.ell or self.n != other.n:
            raise ValueError("mismatched module dimensions")

    def __bool__(self):
        return any(self.slots)

    def __eq__(self, other):
        return (
            isinstance(other, ModuleVec)
            and self.ell == other.ell
            and self.n == other.n
            and self.slots == other.slots
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ell, self.n, self.slots))
        return self._hash

    def __add__(self, other: "ModuleVec") -> "ModuleVec":
        self._require_same(other)
        return ModuleVec(self.ell, self.n, [a + b for a, b in zip(self.slots, other.slots)])

    def __neg__(self) -> "ModuleVec":
        return ModuleVec(self.ell, self.n, [-p for p in self.slots])

    def __sub__(self, other: "ModuleVec") -> "ModuleVec":
        return self + (-other)

    def scale(self, p) -> "ModuleVec":
        """Left action: p * v, slotwise left multiplication. p is NCPoly or int."""
        if isinstance(p, int):
            return ModuleVec(self.ell, self.n, [q * p for q in self.slots])
        if p.n != self.n:
            raise ValueError("mismatched generator counts")
        return ModuleVec(self.ell, self.n, [p * q for q in self.slots])

    def slot(self, i: int) -> NCPoly:
        return self.slots[i - 1]

    def degree(self) -> int:
        return max((p.degree() for p in self.slots if p), default=0)

    def is_homogeneous(self) -> bool:
        lengths = {len(w) for p in self.slots for w in p.terms}
        return len(lengths) <= 1

    def homogeneous_component(self, d: int) -> "ModuleVec":
        return ModuleVec(self.ell, self.n, [p.homogeneous_component(d) for p in self.slots])

    def to_json(self) -> list:
        return [p.to_json() for p in self.slots]

    @classmethod
    def from_json(cls, ell: int, n: int, data: list) -> "ModuleVec":
        if len(data) != ell:
            raise ValueError(f"expected {ell} slot lists, got {len(data)}")
        return cls(ell, n, [NCPoly.from_json(n, d) for d in data])

    def __str__(self):
        parts = []
        for i, p in enumerate(self.slots, start=1):
            if p:
                parts.append(f"({p})*u{i}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"ModuleVec({self.ell}, {self.n}, {self})"


@dataclass(frozen=True)
class RMPair:
    """A ring element together with a module element.

    Binary terms decompose into an idempotent part living in the ring and a
    unary part living in the module; this pair carries the two components.
    """

    ring: NCPoly
    mod: ModuleVec

    def __add__(self, other: "RMPair") -> "RMPair":
        return RMPair(self.ring + other.ring, self.mod + other.mod)

    def __neg__(self) -> "RMPair":
        return RMPair(-self.ring, -self.mod)

    def __sub__(self, other: "RMPair") -> "RMPair":
        return self + (-other)

    def is_zero(self) -> bool:
        return not self.ring and not self.mod
