"""Bounded-degree membership decisions in the free ring and free module.

Two-sided ideal membership in a free noncommutative ring is undecidable in
general, so verdicts are explicit about their strength:

* YES comes with a certificate that re-expands exactly to the target.
* NO_HOMOGENEOUS is an exact refutation, available when the target and all
  generators are homogeneous: membership then decomposes degree by degree
  into finite integer linear systems, so unsolvability is definitive.
* NOT_AT_BOUND means no representation exists within the degree bound; it
  never claims non-membership.

All linear algebra is over the integers. Rational solvability is not enough:
2*r1 generates an ideal that contains r1 rationally but not integrally.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .freering import ModuleVec, NCPoly, Word
from .intsolve import INFEASIBLE, INT, solve_int_columns
from .terms import Identity, Signature, Term

YES = "yes"
NO_HOMOGENEOUS = "no_homogeneous"
NOT_AT_BOUND = "not_at_bound"

VALID = "valid"
INVALID = "invalid"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class IdealCert:
    """One summand mult * (left . gens[gen] . right) of a representation."""

    left: Word
    gen: int
    right: Word
    mult: int

    def to_json(self) -> dict:
        return {"left": list(self.left), "gen": self.gen, "right": list(self.right), "mult": self.mult}


@dataclass(frozen=True)
class ModuleCert:
    """One summand of a module representation.

    kind "mod": mult * (word . mod_gens[gen]).
    kind "ideal": mult * (left . ideal_gens[gen] . right) acting on slot.
    """

    kind: str
    gen: int
    mult: int
    word: Word = ()
    left: Word = ()
    right: Word = ()
    slot: int = 0

    def to_json(self) -> dict:
        if self.kind == "mod":
            return {"kind": "mod", "word": list(self.word), "gen": self.gen, "mult": self.mult}
        return {
            "kind": "ideal",
            "left": list(self.left),
            "gen": self.gen,
            "right": list(self.right),
            "slot": self.slot,
            "mult": self.mult,
        }


@dataclass
class Verdict:
    status: str
    bound: int
    certificate: Optional[list] = None

    @property
    def is_yes(self) -> bool:
        return self.status == YES

    def to_json(self) -> dict:
        out = {"status": self.status, "bound": self.bound}
        if self.certificate is not None:
            out["certificate"] = [c.to_json() for c in self.certificate]
        return out


def expand_ideal_certificate(cert: Sequence[IdealCert], gens: Sequence[NCPoly], n: int) -> NCPoly:
    total = NCPoly.zero(n)
    for entry in cert:
        total = total + gens[entry.gen].sandwich(entry.left, entry.right) * entry.mult
    return total


def expand_module_certificate(
    cert: Sequence[ModuleCert],
    mod_gens: Sequence[ModuleVec],
    ideal_gens: Sequence[NCPoly],
    ell: int,
    n: int,
) -> ModuleVec:
    total = ModuleVec.zero(ell, n)
    for entry in cert:
        if entry.kind == "mod":
            piece = mod_gens[entry.gen].scale(NCPoly.from_word(n, entry.word, entry.mult))
        else:
            poly = ideal_gens[entry.gen].sandwich(entry.left, entry.right) * entry.mult
            slots = [
                poly if s == entry.slot else NCPoly.zero(n) for s in range(1, ell + 1)
            ]
            piece = ModuleVec(ell, n, slots)
        total = total + piece
    return total


def _solve_pruned(columns: list[dict], keys: list, rhs: dict):
    """Dedupe and prune columns, then solve.

    A column touching a row that no other column touches and that the target
    misses is forced to coefficient zero and can be dropped; iterating this
    shrinks the system without changing solvability in either direction.
    """
    rhs = {k: v for k, v in rhs.items() if v}
    seen: dict = {}
    cols: list[dict] = []
    kept: list = []
    for col, key in zip(columns, keys):
        fp = frozenset(col.items())
        if fp in seen or not col:
            continue
        seen[fp] = key
        cols.append(col)
        kept.append(key)
    while True:
        count: dict = {}
        for col in cols:
            for rk in col:
                count[rk] = count.get(rk, 0) + 1
        keep_idx = [
            j
            for j, col in enumerate(cols)
            if not any(count[rk] == 1 and rk not in rhs for rk in col)
        ]
        if len(keep_idx) == len(cols):
            break
        cols = [cols[j] for j in keep_idx]
        kept = [kept[j] for j in keep_idx]
    covered = set()
    for col in cols:
        covered.update(col)
    if any(rk not in covered for rk in rhs):
        return INFEASIBLE, None, kept
    status, coeffs = solve_int_columns(cols, rhs)
    return status, coeffs, kept


def _words(n: int, length: int):
    if length == 0:
        yield ()
        return
    for w in _words(n, length - 1):
        for s in range(1, n + 1):
            yield w + (s,)


def _word_pairs(n: int, total: int):
    """All (left, right) word pairs with len(left) + len(right) == total."""
    for llen in range(total + 1):
        for left in _words(n, llen):
            for right in _words(n, total - llen):
                yield left, right


def _factor_occurrences(word: Word, factor: Word):
    """All (prefix, suffix) with prefix + factor + suffix == word."""
    k = len(factor)
    for start in range(len(word) - k + 1):
        if word[start : start + k] == factor:
            yield word[:start], word[start + k :]


def ideal_member(target: NCPoly, gens: Sequence[NCPoly], bound: int) -> Verdict:
    """Decide target in the two-sided ideal generated by gens, up to degree bound.

    Searches representations target = sum mult * (left . gen . right) with
    len(left) + deg(gen) + len(right) <= bound and integer multipliers.
    """
    n = target.n
    for g in gens:
        if g.n != n:
            raise ValueError("mismatched generator counts")
    if bound < target.degree():
        raise ValueError(f"bound {bound} below target degree {target.degree()}")
    if not target:
        return Verdict(YES, bound, [])
    live = [(i, g) for i, g in enumerate(gens) if g]
    homogeneous = target.is_homogeneous() and all(g.is_homogeneous() for _, g in live)

    if homogeneous:
        d = target.degree()
        columns, keys = _ideal_columns(target, live, d, exact=True)
        status, coeffs, kept = _solve_pruned(columns, keys, dict(target.terms))
        if status == INT:
            cert = [IdealCert(*kept[j], mult=c) for j, c in sorted(coeffs.items())]
            return Verdict(YES, d, cert)
        # Degree-by-degree decomposition is complete here, so failure of the
        # integer system is an exact refutation regardless of the bound.
        return Verdict(NO_HOMOGENEOUS, d)

    lo = max(target.degree(), min(g.degree() for _, g in live) if live else bound)
    for level in range(min(lo, bound), bound + 1):
        columns, keys = _ideal_columns(target, live, level, exact=False)
        if not columns:
            continue
        status, coeffs, kept = _solve_pruned(columns, keys, dict(target.terms))
        if status == INT:
            cert = [IdealCert(*kept[j], mult=c) for j, c in sorted(coeffs.items())]
            return Verdict(YES, level, cert)
    return Verdict(NOT_AT_BOUND, bound)


def _ideal_columns(target: NCPoly, live, level: int, exact: bool):
    """Columns (sparse word vectors) for cofactor words within the budget.

    With all generators monomial, a column is useful only if its single word
    occurs in the target, so cofactors are enumerated as factor occurrences.
    That pruning is sound in both directions because single-word columns
    outside the target support can always be set to zero.
    """
    n = target.n
    all_monomial = all(len(g.terms) == 1 for _, g in live)
    columns: list[dict] = []
    keys: list[tuple[Word, int, Word]] = []
    seen = set()
    for idx, g in live:
        e = g.degree()
        budgets = [level - e] if exact else range(0, level - e + 1)
        for budget in budgets:
            if budget < 0:
                continue
            if all_monomial:
                gword = next(iter(g.terms))
                gcoeff = g.terms[gword]
                for tword in target.terms:
                    if len(tword) != e + budget:
                        continue
                    for left, right in _factor_occurrences(tword, gword):
                        key = (left, idx, right)
                        if key in seen:
                            continue
                        seen.add(key)
                        columns.append({left + gword + right: gcoeff})
                        keys.append(key)
            else:
                for left, right in _word_pairs(n, budget):
                    key = (left, idx, right)
                    if key in seen:
                        continue
                    seen.add(key)
                    columns.append(dict(g.sandwich(left, right).terms))
                    keys.append(key)
    return columns, keys


def submodule_member(
    target: ModuleVec,
    mod_gens: Sequence[ModuleVec],
    ideal_gens: Sequence[NCPoly],
    bound: int,
) -> Verdict:
    """Decide membership in the submodule generated by mod_gens together with
    the action of the ideal generated by ideal_gens on the whole module.

    Searches target = sum q_j . v_j + sum (left . g . right) . u_slot with all
    word budgets within the degree bound.
    """
    ell, n = target.ell, target.n
    for v in mod_gens:
        if v.ell != ell or v.n != n:
            raise ValueError("mismatched module dimensions")
    for g in ideal_gens:
        if g.n != n:
            raise ValueError("mismatched generator counts")
    if bound < target.degree():
        raise ValueError(f"bound {bound} below target degree {target.degree()}")
    if not target:
        return Verdict(YES, bound, [])
    live_mod = [(j, v) for j, v in enumerate(mod_gens) if v]
    live_ideal = [(i, g) for i, g in enumerate(ideal_gens) if g]
    homogeneous = (
        target.is_homogeneous()
        and all(v.is_homogeneous() for _, v in live_mod)
        and all(g.is_homogeneous() for _, g in live_ideal)
    )

    rhs = _modvec_rows(target)
    if homogeneous:
        d = target.degree()
        columns, keys = _module_columns(target, live_mod, live_ideal, d, exact=True)
        status, coeffs, kept = _solve_pruned(columns, keys, rhs)
        if status == INT:
            cert = [_module_cert(kept[j], c) for j, c in sorted(coeffs.items())]
            return Verdict(YES, d, cert)
        return Verdict(NO_HOMOGENEOUS, d)

    degrees = [target.degree()]
    degrees += [v.degree() for _, v in live_mod] + [g.degree() for _, g in live_ideal]
    for level in range(min(max(degrees), bound), bound + 1):
        columns, keys = _module_columns(target, live_mod, live_ideal, level, exact=False)
        if not columns:
            continue
        status, coeffs, kept = _solve_pruned(columns, keys, rhs)
        if status == INT:
            cert = [_module_cert(kept[j], c) for j, c in sorted(coeffs.items())]
            return Verdict(YES, level, cert)
    return Verdict(NOT_AT_BOUND, bound)


def _modvec_rows(v: ModuleVec) -> dict:
    rows = {}
    for s in range(1, v.ell + 1):
        for w, c in v.slot(s).terms.items():
            rows[(s, w)] = c
    return rows


def _module_cert(key, mult: int) -> ModuleCert:
    if key[0] == "mod":
        _, word, j = key
        return ModuleCert(kind="mod", gen=j, mult=mult, word=word)
    _, left, i, right, slot = key
    return ModuleCert(kind="ideal", gen=i, mult=mult, left=left, right=right, slot=slot)


def _module_columns(target: ModuleVec, live_mod, live_ideal, level: int, exact: bool):
    n, ell = target.n, target.ell
    columns: list[dict] = []
    keys: list[tuple] = []
    mono_mod = all(sum(len(p.terms) for p in v.slots) == 1 for _, v in live_mod)
    mono_ideal = all(len(g.terms) == 1 for _, g in live_ideal)
    prune = mono_mod and mono_ideal
    target_rows = _modvec_rows(target)

    for j, v in live_mod:
        e = v.degree()
        budgets = [level - e] if exact else range(0, level - e + 1)
        for budget in budgets:
            if budget < 0:
                continue
            if prune:
                slot, vword, vcoeff = next(
                    (s, w, c)
                    for s in range(1, ell + 1)
                    for w, c in v.slot(s).terms.items()
                )
                for (ts, tword) in target_rows:
                    if ts != slot or len(tword) != len(vword) + budget:
                        continue
                    if tword[len(tword) - len(vword) :] == vword:
                        q = tword[: len(tword) - len(vword)]
                        keys.append(("mod", q, j))
                        columns.append({(slot, tword): vcoeff})
            else:
                for q in _words(n, budget):
                    keys.append(("mod", q, j))
                    columns.append(_modvec_rows(v.scale(NCPoly.from_word(n, q))))

    for i, g in live_ideal:
        e = g.degree()
        budgets = [level - e] if exact else range(0, level - e + 1)
        for budget in budgets:
            if budget < 0:
                continue
            if prune:
                gword = next(iter(g.terms))
                gcoeff = g.terms[gword]
                for (ts, tword) in target_rows:
                    if len(tword) != e + budget:
                        continue
                    for left, right in _factor_occurrences(tword, gword):
                        key = ("ideal", left, i, right, ts)
                        keys.append(key)
                        columns.append({(ts, tword): gcoeff})
            else:
                for left, right in _word_pairs(n, budget):
                    poly = g.sandwich(left, right)
                    for slot in range(1, ell + 1):
                        keys.append(("ideal", left, i, right, slot))
                        columns.append({(slot, w): c for w, c in poly.terms.items()})

    deduped_cols, deduped_keys, seen = [], [], set()
    for col, key in zip(columns, keys):
        if key in seen:
            continue
        seen.add(key)
        deduped_cols.append(col)
        deduped_keys.append(key)
    return deduped_cols, deduped_keys


@dataclass
class SliceCheck:
    index: int
    kind: str  # "ring" or "module"
    verdict: Verdict

    def to_json(self) -> dict:
        return {"slice": self.index, "kind": self.kind, "verdict": self.verdict.to_json()}


@dataclass
class EqualityVerdict:
    status: str
    bound: int
    slice_checks: list[SliceCheck] = field(default_factory=list)
    model: object = None

    def to_json(self) -> dict:
        out = {
            "status": self.status,
            "bound": self.bound,
            "slices": [c.to_json() for c in self.slice_checks],
        }
        if self.model is not None:
            out["model"] = self.model.to_json()
        return out


def default_bound(*degrees: int) -> int:
    """Default degree bound: twice the largest input degree, plus two."""
    return 2 * max([0, *degrees]) + 2


def equal_in_variety(s: Term, t: Term, vp, bound: int | None = None, search=None) -> EqualityVerdict:
    """Decide validity of s = t in the subvariety presented by vp.

    Valid when every slice difference lands in the extracted congruence data
    within the bound; Invalid when a finite model of vp separating s from t
    is found; Unknown otherwise.
    """
    from .models import SearchParams, find_separating_model
    from .presentation import extract_congruence, slice_identity

    sig: Signature = vp.sig
    from .normalform import normalize

    cd = extract_congruence(vp)
    slices = slice_identity(Identity(s, t))
    diffs = [normalize(sl.lhs, sig) - normalize(sl.rhs, sig) for sl in slices]
    if bound is None:
        degs = [0]
        degs += [g.degree() for g in cd.ideal_gens] + [v.degree() for v in cd.submodule_gens]
        for d in diffs:
            degs.append(max((p.degree() for p in d.coeffs.values()), default=0))
            degs.append(d.constant.degree())
        bound = default_bound(*degs)

    checks: list[SliceCheck] = []
    all_yes = True
    for i, d in enumerate(diffs):
        if i >= 1:
            ring = d.ring_part()
            verdict = ideal_member(ring, cd.ideal_gens, max(bound, ring.degree()))
            checks.append(SliceCheck(i, "ring", verdict))
            all_yes = all_yes and verdict.is_yes
    const = diffs[0].constant
    verdict = submodule_member(
        const, cd.submodule_gens, cd.ideal_gens, max(bound, const.degree())
    )
    checks.append(SliceCheck(0, "module", verdict))
    all_yes = all_yes and verdict.is_yes

    if all_yes:
        return EqualityVerdict(VALID, bound, checks)
    if search is None:
        search = SearchParams()
    model = find_separating_model(s, t, vp, search)
    if model is not None:
        return EqualityVerdict(INVALID, bound, checks, model=model)
    return EqualityVerdict(UNKNOWN, bound, checks)
