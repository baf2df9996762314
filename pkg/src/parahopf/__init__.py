"""Exact computations in parabosonic and parafermionic algebras.

The algebras are realised as quotients of free algebras over the rationals
and reduced to canonical normal forms at a bounded filtration degree.  On
top of that sit the (super-)Hopf structure maps and their axiom checks, the
bosonisation over the group algebra of Z2, and the K± extension.
"""

from .bosonisation import (
    CZ2,
    ConstructionError,
    HostError,
    QuasitriangularData,
    SmashPresentation,
    bosonise,
    braiding_via_r,
    coaction_from_action,
    conjugation_check,
    cz2_action,
    cz2_r_matrix,
    generic_agreement,
    kpm_extend,
    kpm_witness,
    relation_images,
    smash_antipode,
    smash_coproduct,
    smash_multiply,
)
from .kernel import (
    Alphabet,
    AlphabetMismatchError,
    Element,
    Generator,
    HomogeneityError,
    ParahopfError,
    RankError,
    TensorElement,
    anticommutator,
    braided_tensor_multiply,
    braiding,
    commutator,
    multiply,
    parse_generator,
    plain_tensor_multiply,
    tensor,
)
from .parser import (
    ParseError,
    dump_presentation,
    evaluate,
    format_ast,
    load_presentation,
    parse,
)
from .presets import (
    BracketTable,
    algebra,
    casimir_checks,
    lie_closure_check,
    parabosonic,
    parafermionic,
    pbw_dimension,
    u_n_check,
    u_n_generators,
)
from .quotient import (
    Presentation,
    ReducedIdealBasis,
    TruncationError,
    build_ideal_basis,
    equal_mod_ideal,
    filtration_dimension,
    normal_form,
    tensor_normal_form,
)
from .report import CheckResult, Report
from .superhopf import (
    StructureMaps,
    apply_antipode,
    apply_coproduct,
    apply_counit,
    check_hopf_axioms,
    structure_maps,
)

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "AlphabetMismatchError",
    "BracketTable",
    "CZ2",
    "CheckResult",
    "ConstructionError",
    "Element",
    "Generator",
    "HomogeneityError",
    "HostError",
    "ParahopfError",
    "ParseError",
    "Presentation",
    "QuasitriangularData",
    "RankError",
    "ReducedIdealBasis",
    "Report",
    "SmashPresentation",
    "StructureMaps",
    "TensorElement",
    "TruncationError",
    "algebra",
    "anticommutator",
    "apply_antipode",
    "apply_coproduct",
    "apply_counit",
    "bosonise",
    "braided_tensor_multiply",
    "braiding",
    "braiding_via_r",
    "build_ideal_basis",
    "casimir_checks",
    "check_hopf_axioms",
    "coaction_from_action",
    "commutator",
    "conjugation_check",
    "cz2_action",
    "cz2_r_matrix",
    "dump_presentation",
    "equal_mod_ideal",
    "evaluate",
    "filtration_dimension",
    "format_ast",
    "generic_agreement",
    "kpm_extend",
    "kpm_witness",
    "lie_closure_check",
    "load_presentation",
    "multiply",
    "normal_form",
    "parabosonic",
    "parafermionic",
    "parse",
    "parse_generator",
    "pbw_dimension",
    "plain_tensor_multiply",
    "relation_images",
    "smash_antipode",
    "smash_coproduct",
    "smash_multiply",
    "structure_maps",
    "tensor",
    "tensor_normal_form",
    "u_n_check",
    "u_n_generators",
]
