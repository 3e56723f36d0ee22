"""Dual compressed shifts on the complement of a model space, in truncated coordinates."""
from .blaschke import BlaschkeProduct
from .dual import AmbientBasis, OperatorMatrix, ambient_basis, build_D, build_D_star
from .equivalence import IntertwinerCertificate, decide_unitary_equivalence
from .fourier import FourierVector
from .model_space import ModelBasis, project_model, tm_basis
from .report import VerificationReport
from .subspaces import SubspaceBasis, classify_orthogonal_sum, invariance_residual

__version__ = "0.1.0"

__all__ = [
    "AmbientBasis", "BlaschkeProduct", "FourierVector", "IntertwinerCertificate", "ModelBasis",
    "OperatorMatrix", "SubspaceBasis", "VerificationReport", "ambient_basis", "build_D",
    "build_D_star", "classify_orthogonal_sum", "decide_unitary_equivalence",
    "invariance_residual", "project_model", "tm_basis",
]
