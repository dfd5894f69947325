"""Three-species prey-predator dynamics on the 2-simplex.

A small toolkit around one discrete-time map: exact simplex geometry,
linear- and log-domain stepping, monotone-functional and sector analysis,
iterated time averages, the continuous-time (Euler) limit, and a CLI for
runs, sweeps, and reports.
"""

from .simplex import (
    Region,
    SimplexPoint,
    barycenter,
    classify_region,
    distance,
    from_logs,
    in_vertex_nbhd,
    make_point,
    nearest_vertex,
    vertex_point,
)
from .dynamics import (
    AffineSpeed,
    ConstantSpeed,
    Parameters,
    SpeedFunction,
    Trajectory,
    iterate,
    ratio_step,
    ratios,
    restrict_to_face,
    step,
    step_log,
    zakharevich_step,
)
from .analysis import (
    CesaroState,
    PersistenceReport,
    RegimeReport,
    SectorAudit,
    Sojourn,
    cesaro_coefficients,
    cesaro_push,
    classify_regime,
    detect_convergence,
    estimate_gamma0,
    log_phi,
    lyapunov_phi,
    omega_limit_estimate,
    persistence_report,
    phi_decay_stats,
    psi,
    quad_form,
    sector,
    sector_cycle_audit,
    sojourn_stats,
    tail_mass,
)
from .ode import (
    OdePath,
    OdeRun,
    OrderFit,
    convergence_order,
    euler_path,
    lyapunov_derivative,
    phi_gradient,
    reference_path,
    vector_field,
)
from . import errors

__all__ = [
    "AffineSpeed",
    "CesaroState",
    "ConstantSpeed",
    "OdePath",
    "OdeRun",
    "OrderFit",
    "Parameters",
    "PersistenceReport",
    "Region",
    "RegimeReport",
    "SectorAudit",
    "SimplexPoint",
    "Sojourn",
    "SpeedFunction",
    "Trajectory",
    "barycenter",
    "cesaro_coefficients",
    "cesaro_push",
    "classify_regime",
    "classify_region",
    "convergence_order",
    "detect_convergence",
    "distance",
    "errors",
    "estimate_gamma0",
    "euler_path",
    "from_logs",
    "in_vertex_nbhd",
    "iterate",
    "log_phi",
    "lyapunov_derivative",
    "lyapunov_phi",
    "make_point",
    "nearest_vertex",
    "omega_limit_estimate",
    "persistence_report",
    "phi_decay_stats",
    "phi_gradient",
    "psi",
    "quad_form",
    "ratio_step",
    "ratios",
    "reference_path",
    "restrict_to_face",
    "sector",
    "sector_cycle_audit",
    "sojourn_stats",
    "step",
    "step_log",
    "tail_mass",
    "vector_field",
    "vertex_point",
    "zakharevich_step",
]

__version__ = "0.1.0"
