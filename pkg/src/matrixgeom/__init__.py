"""Dense matrix decompositions and the geometry of normalised matrices."""

from .align import ProcrustesResult, center, disparity, procrustes_fit, scale_normalize
from .decomp import (
    PolarFactors,
    TruncationResult,
    nearest_best_of_rank,
    nearest_orthogonal,
    nearest_singular_on_sphere,
    polar_decompose,
    psd_sqrt,
    truncate_rank,
)
from .estimators import LowRankApproximation, PrincipalComponents, ProcrustesAligner
from .exceptions import (
    ContractError,
    ConvergenceError,
    CsvParseError,
    DegenerateInputError,
    DimensionError,
    MatrixGeomError,
    NotPSDError,
    RankError,
    SingularInputError,
)
from .linalg import (
    EigenFactors,
    SvdFactors,
    cofactor_matrix,
    det,
    frobenius_inner,
    gram_schmidt,
    rank_of,
    svd,
    sym_eigen,
)
from .pca import PcaModel, pca_fit, project, reconstruct, reconstruction_error
from .report import Report, geometry_report
from .sphere import (
    GeodesicArc,
    StratumLabel,
    angular_distance,
    classify_stratum,
    geodesic_point,
    grad_det_sphere,
    m4_normal_geodesic,
    m4_point,
    m5_ray,
    to_sphere,
    wedge_norm,
)

__version__ = "0.1.0"
