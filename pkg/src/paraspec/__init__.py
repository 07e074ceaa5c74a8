"""Exact-arithmetic toolkit for parabolic spectral data.

Partition combinatorics of quasi-parabolic types, base dimension and genus
identities, successive blow-up resolution of the local spectral equations,
finite-field point counting with zeta reconstruction, and stringy orbifold
evaluators, glued together by a JSON-driven command line.
"""

from .cli import __version__
from .fields import GF, QQ
from .hitchin import (
    IndeterminateH0,
    bnr_line_bundle_degree,
    coefficient_degrees,
    dimension_report,
    h0_line_bundle,
    hitchin_dims,
    integrability_report,
    normalized_genus_closed_form,
    spectral_arithmetic_genus,
)
from .counting import (
    FqSpec,
    GlobalCharacteristic,
    SamplingExhausted,
    ZetaData,
    ZetaFitError,
    class_numbers,
    count_curve,
    count_fiber,
    is_integral,
    sample_characteristic,
    weil_check,
    zeta_fit,
)
from .partitions import (
    InvalidDataError,
    LevelFunction,
    MarkedPoint,
    ParabolicData,
    Partition,
    delta_p,
    dual_partition,
    filtration_dims,
    flag_dim,
    gerbe_compatible,
    level_function,
    min_level_data,
    partitions_of,
    ramification_multiplicity_counts,
)
from .resolution import (
    BlowupStage,
    DegenerateEquation,
    DeltaLedger,
    LocalEquation,
    RamificationProfile,
    ResolutionResult,
    blowup_step,
    local_equation_from_type,
    newton_polygon_profile,
    ramification_polynomial,
    realized_divisor_gcd,
    resolve,
)
from .series import PrecisionExhausted, TruncatedSeries
from .stringy import (
    CyclotomicNumber,
    EPolynomial,
    OrbifoldDescription,
    SectorComponent,
    fermionic_shift,
    stringy_count,
    stringy_count_twisted,
    stringy_e,
    stringy_e_twisted,
    weight_consistency,
)

__all__ = [name for name in dir() if not name.startswith("_")]
