"""Reductions from satisfiable Max Not-2 / Max OXR instances to fractional
lexicographic Groebner basis computation, with brute-force checks."""
from .algebra import DEFAULT_PRIME, LexOrder, Polynomial, PrimeFieldElement, normal_form
from .groebner import GroebnerBasis, buchberger, ideal_member, is_consistent
from .instances import PredicateInstance, generate_satisfiable, parse_instance, serialize_instance
from .kernels import BACKEND
from .pipeline import PipelineReport, run_instance, run_pipeline

__version__ = "0.1.0"
