from .basin import LEGEND, BasinMap, basin_scan, grid_points
from .benchmark import BenchmarkTable, benchmark_global, check_global_hypotheses
from .cycle import CycleMeasurement, cycle_initial_state, measure_cycle
from .diagnostics import LyapunovReport, gad_tracking_check, index1_prefix, lyapunov_check
from .region import RegionCertificate, cell_centers, certify_region

__all__ = [
    "LEGEND",
    "BasinMap",
    "BenchmarkTable",
    "CycleMeasurement",
    "LyapunovReport",
    "RegionCertificate",
    "basin_scan",
    "benchmark_global",
    "cell_centers",
    "certify_region",
    "check_global_hypotheses",
    "cycle_initial_state",
    "gad_tracking_check",
    "grid_points",
    "index1_prefix",
    "lyapunov_check",
    "measure_cycle",
]
