"""Computable structure theory for abelian Mal'cev varieties at desk scale.

Terms over the canonical signature normalize into free-ring coefficients
plus a free-module constant; identity bases extract to ring and module
presentations; bounded exact membership decides derivability; finite affine
models supply counterexamples; and general presentations translate into the
canonical type.
"""

from .fbcheck import (
    ChainReport,
    FBReport,
    check_finite_basis,
    check_infinite_type,
    witness_ascending_chain,
    xyx_family,
)
from .freering import ModuleVec, NCPoly, RMPair, Word
from .interp import (
    GeneralIdentity,
    GeneralModel,
    GeneralPresentation,
    GeneralSignature,
    InterpretationMap,
    canonicalize,
    translate_term,
    verify_equivalence,
)
from .membership import (
    EqualityVerdict,
    Verdict,
    equal_in_variety,
    ideal_member,
    submodule_member,
)
from .models import (
    AffineModel,
    Assignment,
    SearchParams,
    check_malcev_uniqueness,
    eval_term,
    find_separating_model,
    satisfies,
)
from .normalform import NormalForm, denormalize, nf_equal, normalize, shift_unary
from .presentation import (
    CongruenceData,
    ModulePresentation,
    RingPresentation,
    VarietyPresentation,
    check_fic_conditions,
    extract_congruence,
    present_module,
    present_ring,
    slice_identity,
    synthesize_basis,
)
from .terms import (
    Identity,
    M,
    R,
    Signature,
    Term,
    U,
    Var,
    Z,
    ambient_identities,
    parse_term,
    print_term,
    slice_term,
    substitute,
)

__version__ = "0.1.0"
