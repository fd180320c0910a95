"""Exact classical and quantum Schubert calculus for flag manifolds G/B.

Typical use::

    >>> from qschubert import weyl_group, bgg_family, default_top_class
    >>> from qschubert import build_operators, quantum_family, quantum_product
    >>> W = weyl_group("A2")
    >>> fam = bgg_family(default_top_class(W), W)
    >>> qf = quantum_family(build_operators(W), fam)
    >>> quantum_product(qf, W.s(1), W.s(1)).format()
    'q1*σ[e] + σ[s2s1]'
"""

from .algebra import (
    LinearForm,
    Monomial,
    NotDivisible,
    Polynomial,
    RankMismatch,
    exact_divide_by_linear,
    lambda_homogeneous_components,
    parse_polynomial,
    substitute_linear,
)
from .classical import (
    BGGFamily,
    InvalidTopClass,
    SchubertExpansion,
    bgg_family,
    check_commutation_identity,
    classical_chevalley,
    classical_normal_form,
    classical_product,
    default_top_class,
    delta_w,
    divided_difference,
)
from .fixtures import B2Reference, Coordinates, load_top_class
from .quantum import (
    QuantumFamily,
    QuantumOperatorSet,
    RelationReport,
    apply_lambda_op,
    build_operators,
    dequantize,
    dequantize_binomial,
    gw_invariant,
    gw_terms,
    quantize,
    quantum_chevalley,
    quantum_family,
    quantum_normal_form,
    quantum_product,
    quantum_product_direct,
    apply_polynomial_op,
    lambda_matrices,
    verify_relation_quantization,
)
from .rootsystem import (
    InvalidCartan,
    Root,
    RootDatum,
    UnknownType,
    build_root_system,
    cartan_matrix,
    pairing,
    q_monomial,
    root_as_linear_form,
)
from .weylgroup import (
    NonFiniteGroup,
    SizeLimitExceeded,
    WeylElement,
    WeylGroup,
    generate,
    weyl_group,
)

__version__ = "0.1.0"
