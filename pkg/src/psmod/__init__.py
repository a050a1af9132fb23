__version__ = '0.1.0'

# Explicit re-export (`as`) so downstream `mypy --strict`
# (--no-implicit-reexport) sees these public names as exported.
from .coeff import Field as Field
from .coeff import FieldElem as FieldElem
from .coeff import field_from_selector as field_from_selector
from .series import INFINITY as INFINITY
from .series import Exponent as Exponent
from .series import SeriesRing as SeriesRing
from .series import SeriesVec as SeriesVec
from .series import inexp as inexp
from .series import jet as jet
from .series import s_series as s_series
from .division import DivisionResult as DivisionResult
from .division import has_standard_representation as has_standard_representation
from .division import weak_normal_form as weak_normal_form
from .stdbasis import Diagram as Diagram
from .stdbasis import StdBasis as StdBasis
from .stdbasis import diagram_of as diagram_of
from .stdbasis import is_member as is_member
from .stdbasis import is_standard_basis as is_standard_basis
from .stdbasis import standard_basis as standard_basis
from .hilbert import HilbertData as HilbertData
from .hilbert import hs_function as hs_function
from .hilbert import hs_polynomial as hs_polynomial
from .hilbert import hs_values as hs_values
from .hilbert import krull_dimension as krull_dimension
from .resolution import BettiTable as BettiTable
from .resolution import FreeResolution as FreeResolution
from .resolution import ModuleMatrix as ModuleMatrix
from .resolution import betti_table as betti_table
from .resolution import build_resolution as build_resolution
from .resolution import check_injective_minors as check_injective_minors
from .resolution import minimal_generators as minimal_generators
from .resolution import minimalize as minimalize
from .resolution import schreyer_resolution as schreyer_resolution
from .resolution import schreyer_syzygies as schreyer_syzygies
from .resolution import syzygies as syzygies
from .ringprops import FlatTruncationReport as FlatTruncationReport
from .ringprops import FlatnessReport as FlatnessReport
from .ringprops import MapSpec as MapSpec
from .ringprops import ModuleReport as ModuleReport
from .ringprops import ModuleTruncationReport as ModuleTruncationReport
from .ringprops import ResolutionJetComparison as ResolutionJetComparison
from .ringprops import RingReport as RingReport
from .ringprops import TruncationReport as TruncationReport
from .ringprops import candidate_mu0 as candidate_mu0
from .ringprops import compare_flat_truncation as compare_flat_truncation
from .ringprops import compare_module_truncation as compare_module_truncation
from .ringprops import compare_resolution_jets as compare_resolution_jets
from .ringprops import compare_truncation as compare_truncation
from .ringprops import empirical_mu0 as empirical_mu0
from .ringprops import flatness_check as flatness_check
from .ringprops import module_report as module_report
from .ringprops import ring_report as ring_report
from .ringprops import truncate_ideal as truncate_ideal
from .parser import format_series as format_series
from .parser import parse_polynomial as parse_polynomial
from .problem import ProblemFile as ProblemFile
