"""Prime-divisor profiles of d + x^2 and the quadratic class groups they control."""

from __future__ import annotations

import sys

from .arith import Factorization, SpfTable, build_spf, factor, is_prime, is_square, is_squarefree, kronecker, omega
from .classgroup import (
    ClassGroupStructure,
    Splitting,
    class_group_structure,
    class_number_imaginary,
    class_number_real,
    genus_data,
    narrow_class_number,
    order_of_prime_form,
    splitting_type,
)
from .errors import ConfigurationError, DomainError, InvariantViolation, JournalError, OmegaQuadError, ResourceError
from .forms import BinaryQuadraticForm, Form, QuadDiscriminant, compose, discriminant_of, prime_form, reduce_definite
from .profile import FRVariant, OmegaQuery, OmegaReport, Parity, fr_check, m_all_from_zero, m_even, m_even_real, m_odd, omega_profile
from .scan import ResultRecord, ScanJob, resume, resume_scan, scan
from .theorems import TheoremSpec, VerificationReport, builtin_theorems, check_class_implications, lookup, verify
from .units import PellSolution, fundamental_unit
from .witnesses import find_2l2_witness, not_inert_witness, solve_p_x2_2y2

__version__ = "0.1.0"

__all__ = [n for n in dir() if not n.startswith("_") and n != "annotations" and not isinstance(globals()[n], type(sys))]
