"""Aperiodic sequence toolkit.

Factor atlases of primitive substitutions, palindrome exclusion for
minimal sequences, both constructions of the Rudin-Shapiro sequence,
one-dimensional cut-and-project model sets over real quadratic fields,
and finite-section probes of diagonal tight-binding operators.
"""

__version__ = "0.1.0"

from .words import (
    Alphabet,
    PalindromeVerdict,
    Word,
    exclusion_verdict,
    inner,
    is_palindrome,
    palindromes_in,
)
from .substitution import (
    Atlas,
    FixedPointStream,
    PrefixLimitError,
    SubstitutionRule,
    apply,
    atlas_by_induction,
    atlas_by_window,
    atlas_chain,
    complexity,
    compose,
    fibonacci_rule,
    fixed_point_stream,
    induced_substitute,
    is_primitive,
    matrix,
    rule_from_dict,
    thue_morse_rule,
)
from .rudin_shapiro import (
    Table1Row,
    binary_atlas,
    block_count_a,
    equivalence_check,
    phi,
    quaternary_rule,
    rs_binary_prefix,
    table1,
)
from .modelset import (
    FieldElement,
    GapSequence,
    LatticeSpec,
    ModelSetPatch,
    QuadField,
    Window,
    centro_symmetry_center,
    check_generic,
    enumerate_patch,
    gaps_to_letters,
    genericity_shift,
    inversion_witness,
    palindrome_scan,
    star,
    strong_palindromicity_report,
)
from .spectral import (
    TransferMatrixProduct,
    TridiagonalOperator,
    build_finite,
    eigenvalues,
    ids,
    sturm_count,
    transfer_product,
)
