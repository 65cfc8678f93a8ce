"""Pseudo-Wishart elliptical shape densities, fitting and model comparison."""

from .densities import (
    ModelSpec,
    central_invariant_logdensity,
    density_for,
    gaussian_isotropic_shape_logdensity,
    isotropic_shape_logdensity,
    kotz_general_shape_logdensity,
    kotz_t1_shape_logdensity,
    kotz_t2_shape_logdensity,
    kotz_t3_shape_logdensity,
    shape_logdensity,
    size_shape_logdensity,
)
from .errors import PwShapeError
from .generators import GaussianGenerator, KotzGenerator, kotz_h, kotz_h_deriv
from .geometry import (
    LandmarkConfig,
    PseudoWishartShape,
    helmert_submatrix,
    preshape,
    pw_coordinates,
    shape_from_landmarks,
)
from .inference import (
    FitResult,
    LrtResult,
    chi2_sf,
    evidence_grade,
    fit_mle,
    log_likelihood,
    lrt_mean_shape,
    modified_bic,
    nelder_mead,
)
from .partitions import (
    SignedLogValue,
    gen_pochhammer,
    mv_gamma,
    partitions,
    weighted_zonal_series,
    zonal,
)

__version__ = "0.1.0"
