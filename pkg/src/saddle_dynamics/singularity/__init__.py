from .cubic import CubicCoeffs, classify, discriminant, matrix_A, rotation
from .locate import locate, locate_2d, locate_nd, locate_singular_line, singular_line_attractivity
from .report import SingularityReport, assemble_report

__all__ = [
    "CubicCoeffs",
    "SingularityReport",
    "assemble_report",
    "classify",
    "discriminant",
    "locate",
    "locate_2d",
    "locate_nd",
    "locate_singular_line",
    "matrix_A",
    "rotation",
    "singular_line_attractivity",
]
