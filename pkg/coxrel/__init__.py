"""coxrel - relative hyperbolicity of Coxeter groups from the Coxeter matrix"""

__version__ = "0.1.0"

from .classify import (
    NumericKind,
    NumericVerdict,
    SubsetClass,
    classify_subset,
    cosine_matrix,
    irreducible_affine_subsets,
    maximal_euclidean_subsets,
    minimal_hyperbolic_subsets,
    numeric_type,
    spherical_subsets,
)
from .diagram import (
    INFINITY,
    MAX_GENERATORS,
    CoxeterMatrix,
    GenSet,
    commutes,
    components,
    induced,
    new_coxeter_matrix,
    perp,
)
from .errors import CoxrelError
from .racg import (
    AffJoinSet,
    SimpleGraph,
    condition_ii_graph,
    enumerate_iaff,
    from_graph,
    gamma_structure,
)
from .relhyp import (
    Core,
    Decision,
    DecisionStatus,
    PeripheralFamily,
    cores,
    decide,
    isolated_flats,
    lemma_aff_equivalence,
    maxparab,
    minimal_family,
    moussong_hyperbolic,
    verify_family,
)

__all__ = [
    'INFINITY',
    'MAX_GENERATORS',
    'CoxeterMatrix',
    'GenSet',
    'new_coxeter_matrix',
    'induced',
    'components',
    'perp',
    'commutes',
    'SubsetClass',
    'NumericKind',
    'NumericVerdict',
    'classify_subset',
    'cosine_matrix',
    'numeric_type',
    'spherical_subsets',
    'irreducible_affine_subsets',
    'maximal_euclidean_subsets',
    'minimal_hyperbolic_subsets',
    'Core',
    'Decision',
    'DecisionStatus',
    'PeripheralFamily',
    'cores',
    'decide',
    'isolated_flats',
    'lemma_aff_equivalence',
    'maxparab',
    'minimal_family',
    'moussong_hyperbolic',
    'verify_family',
    'SimpleGraph',
    'AffJoinSet',
    'from_graph',
    'condition_ii_graph',
    'enumerate_iaff',
    'gamma_structure',
    'CoxrelError',
]
