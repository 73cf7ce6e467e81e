"""Finite-basis reports: the constructive direction and chain evidence.

A finite identity basis always yields finite ring and module presentations,
so that direction is constructive and reported as such. Non-finite
generation of an ideal can never be concluded from finitely much
computation; what can be certified is an unbroken independence chain, where
each next member of a relation family stays outside the ideal generated by
the previous ones. Such chains are reported with their exact per-step
verdicts and the inference is labeled, never silently upgraded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .freering import NCPoly
from .membership import NO_HOMOGENEOUS, Verdict, YES, default_bound, ideal_member
from .presentation import (
    CongruenceData,
    FicReport,
    ModulePresentation,
    RingPresentation,
    VarietyPresentation,
    check_fic_conditions,
    extract_congruence,
)

FINITELY_BASED = "FinitelyBased"
NOT_FINITELY_BASED = "NotFinitelyBased"
INCONCLUSIVE = "Inconclusive"


@dataclass
class FBReport:
    finite_type: bool
    conclusion: str
    reason: str | None = None
    ring: RingPresentation | None = None
    module: ModulePresentation | None = None
    congruence: CongruenceData | None = None
    fic: FicReport | None = None

    def to_json(self) -> dict:
        out: dict = {"finite_type": self.finite_type, "conclusion": self.conclusion}
        if self.reason:
            out["reason"] = self.reason
        if self.ring is not None:
            out["ring_presentation"] = self.ring.to_json()
        if self.module is not None:
            out["module_presentation"] = self.module.to_json()
        if self.fic is not None:
            out["fic_conditions"] = self.fic.to_json()
        return out


def check_finite_basis(vp: VarietyPresentation, bound: int | None = None) -> FBReport:
    """Build the finite presentations determined by a finite basis.

    The conclusion is FinitelyBased by construction; the presentations are
    surfaced so a user can compare them against externally known ascending
    chains.
    """
    cd = extract_congruence(vp)
    ring = RingPresentation(vp.sig.en, cd.ideal_gens)
    module = ModulePresentation(vp.sig.ell, cd.submodule_gens, ring)
    if bound is None:
        bound = default_bound(cd.max_degree())
    fic = check_fic_conditions(cd, vp.sig, bound)
    return FBReport(
        finite_type=True,
        conclusion=FINITELY_BASED,
        ring=ring,
        module=module,
        congruence=cd,
        fic=fic,
    )


@dataclass
class TypeVerdict:
    finite: bool
    conclusion: str
    reason: str

    def to_json(self) -> dict:
        return {"finite_type": self.finite, "conclusion": self.conclusion, "reason": self.reason}


def check_infinite_type(gsig) -> TypeVerdict:
    """Infinitely many operation symbols rule out any finite basis:
    a finite identity set cannot mention them all, yet each symbol
    satisfies identities no basis omitting it can prove."""
    if gsig.infinite_families:
        fams = ", ".join(gsig.infinite_families)
        return TypeVerdict(
            finite=False,
            conclusion=NOT_FINITELY_BASED,
            reason=f"infinite type: unbounded symbol families {fams}",
        )
    return TypeVerdict(
        finite=True,
        conclusion=INCONCLUSIVE,
        reason="finite type; proceed to a finite-basis check",
    )


@dataclass
class ChainStep:
    k: int
    target: NCPoly
    verdict: Verdict

    def to_json(self) -> dict:
        return {"k": self.k, "target": self.target.to_json(), "verdict": self.verdict.to_json()}


@dataclass
class ChainReport:
    k_max: int
    bound: int
    steps: list[ChainStep] = field(default_factory=list)

    @property
    def first_collapse(self) -> int | None:
        for step in self.steps:
            if step.verdict.is_yes:
                return step.k
        return None

    @property
    def strict(self) -> bool:
        """Every step refuted exactly: no finite prefix of the family
        generates the next member, up to k_max."""
        return all(step.verdict.status == NO_HOMOGENEOUS for step in self.steps)

    def summary(self) -> str:
        if self.strict:
            return f"strict chain: no finite subfamily suffices up to k_max={self.k_max}"
        c = self.first_collapse
        if c is not None:
            return f"chain collapses at k={c}: member {c + 1} is generated by the first {c}"
        return "chain not decided at this bound"

    def to_json(self) -> dict:
        return {
            "k_max": self.k_max,
            "bound": self.bound,
            "steps": [s.to_json() for s in self.steps],
            "strict": self.strict,
            "summary": self.summary(),
        }


def witness_ascending_chain(
    family: Callable[[int], NCPoly] | Sequence[NCPoly], k_max: int, bound: int
) -> ChainReport:
    """Check, for each k <= k_max, whether member k+1 of the family escapes
    the ideal generated by members 1..k.

    The family is indexed from 1, as a callable or a sequence. Homogeneous
    members give exact refutations; otherwise verdicts degrade to
    NotAtBound.
    """

    def member(j: int) -> NCPoly:
        if callable(family):
            return family(j)
        return family[j - 1]

    report = ChainReport(k_max=k_max, bound=bound)
    for k in range(0, k_max + 1):
        target = member(k + 1)
        gens = [member(j) for j in range(1, k + 1)]
        verdict = ideal_member(target, gens, max(bound, target.degree()))
        report.steps.append(ChainStep(k, target, verdict))
    return report


def xyx_family(n: int = 2) -> Callable[[int], NCPoly]:
    """Member j is the word r1 r2^j r1; the classic non-finitely-generated
    two-sided ideal, truncated to desk scale."""

    def member(j: int) -> NCPoly:
        return NCPoly.from_word(n, (1,) + (2,) * j + (1,))

    return member


BUILTIN_CHAINS = {"xyx": xyx_family}
