"""Fisher information of complete measurements for pure-state phase estimation."""

from .errors import QMetricsError
from .fisher import FisherReport, complement, report
from .model import AmplitudeTrack, Hamiltonian, MeasurementBasis, PureState, amplitude_track
from .optimal import build_optimal_basis, max_variance_probe, seminorm_bound

__all__ = [
    "AmplitudeTrack",
    "FisherReport",
    "Hamiltonian",
    "MeasurementBasis",
    "PureState",
    "QMetricsError",
    "amplitude_track",
    "build_optimal_basis",
    "complement",
    "max_variance_probe",
    "report",
    "seminorm_bound",
]

__version__ = "0.1.0"
