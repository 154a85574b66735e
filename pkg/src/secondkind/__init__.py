"""Curvature operator of the second kind for (Kahler) algebraic curvature tensors."""
from .kernels import BACKEND
from .tensor_core import (
    CurvatureOperator,
    DimensionError,
    Scalars,
    SpaceDim,
    SymTwoTensor,
    apply_second_kind,
    bianchi_residual,
    inner_sym,
    probe_tensors,
    ricci_and_scalar,
    ring_R,
    sym_product,
    traceless_dim,
)
from .kahler import (
    ComplexStructure,
    KahlerOperator,
    NotKahlerError,
    functional_extremes,
    hsc,
    kahler_check,
    mixed_c,
    orth_bisec,
    random_unitary_frame,
    ric_perp,
)
from .bases import (
    BasisLabel,
    TracelessBasis,
    build_E_minus,
    build_E_plus,
    build_product_basis,
    diag_values,
    eta_sum_decomposition,
    iiJiJi_identity,
    kahler_basis,
    standard_basis,
)
from .spectral import (
    AlphaStatus,
    alpha_status,
    alpha_threshold,
    assemble,
    basis_probe,
    eigenvalues,
    f_partial,
    spectral_report,
    spectrum,
    status_from_spectrum,
    threshold_constants,
    threshold_from_spectrum,
)
from .models import (
    ModelSpec,
    const_hsc,
    cp_product,
    cp_times_flat,
    flat,
    kahler_product,
    product,
    random_curvature,
    random_kahler,
    scaled_product_scan,
    sphere,
    zoo,
)
from .lab import (
    CheckRecord,
    VerificationReport,
    corollary_suite,
    identity_chain_flat,
    identity_chain_h,
    identity_chain_mixed,
    identity_chain_ob,
    identity_chain_ric_perp,
    implication_suite,
)

__version__ = "0.1.0"
