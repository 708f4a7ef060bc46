from .partitions import Partition, generate_partitions, dominance_leq, dominance_covers
from .symfunc import Basis, SymPoly, DensePoly, BiSymPoly, convert_basis, expand
from .exactlinalg import SymMatrix, OpCounter, at_most_one_positive_eigenvalue
from .lorentz import Mode, Verdict, FailureKind, LorentzianTester, is_lorentzian, oracle_is_lorentzian
from .closedform import RegionVerdict, region_verdict, degree3_region_table
from .families import DyckPath, IndifferenceGraph, normalized_schur, chromatic_symmetric

__all__ = [
    'Partition', 'generate_partitions', 'dominance_leq', 'dominance_covers',
    'Basis', 'SymPoly', 'DensePoly', 'BiSymPoly', 'convert_basis', 'expand',
    'SymMatrix', 'OpCounter', 'at_most_one_positive_eigenvalue',
    'Mode', 'Verdict', 'FailureKind', 'LorentzianTester', 'is_lorentzian', 'oracle_is_lorentzian',
    'RegionVerdict', 'region_verdict', 'degree3_region_table',
    'DyckPath', 'IndifferenceGraph', 'normalized_schur', 'chromatic_symmetric',
]
__version__ = '1.0.0'
