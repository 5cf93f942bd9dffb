"""Real square roots of real skew-Hamiltonian matrices by structure-preserving
Schur methods, next to the unstructured real Schur method."""

__version__ = "0.1.0"

from .diagnostics import (SquareRootReport, alpha_stability, compute_root,
                          relative_residual, structure_defects)
from .errors import (ConfigError, ConvergenceError, FileError, InconsistentSystem,
                     NegativeRealEigenvalue, ParseError, ShapeError, ShsqrtError,
                     SingularMatrix, StructureError, SylvesterSingular, TooManyBranches)
from .matcore import FlopCounter
from .schur import RealSchurForm, real_schur, spectrum_of
from .sqrtm import enumerate_real_root_functions, sqrtm_real
from .structured import (StructuredRoot, solve_singular_sylvester,
                         solve_structured_lyapunov, sqrt_hamiltonian,
                         sqrt_skew_hamiltonian)
from .symplectic import (SkewHamiltonianMatrix, SkewHamiltonianSchurForm, pack,
                         pvl_reduce, skew_hamiltonian_schur, validate_skew_hamiltonian)

__all__ = [
    "ConfigError", "ConvergenceError", "FileError", "FlopCounter", "InconsistentSystem",
    "NegativeRealEigenvalue", "ParseError", "RealSchurForm", "ShapeError", "ShsqrtError",
    "SingularMatrix", "SkewHamiltonianMatrix", "SkewHamiltonianSchurForm", "SquareRootReport",
    "StructureError", "StructuredRoot", "SylvesterSingular", "TooManyBranches",
    "alpha_stability", "compute_root", "enumerate_real_root_functions", "pack", "pvl_reduce",
    "real_schur", "relative_residual", "skew_hamiltonian_schur", "solve_singular_sylvester",
    "solve_structured_lyapunov", "spectrum_of", "sqrt_hamiltonian", "sqrt_skew_hamiltonian",
    "sqrtm_real", "structure_defects", "validate_skew_hamiltonian",
]
