"""Exact P-partition generating functions for two-rowed bar extensions."""
from .errors import (ConfigurationError, DomainError, InconsistencyError, InvalidPosetError,
                     PPartError, ResourceError)
from .series import (ClosedForm, ClosedSum, Monomial, TruncSeries, VarRegistry, closed_eval,
                     extract_e_limit, inv, mul, pochhammer, qfact, substitute)
from .poset import (Permutation, Poset, PPartition, TraceVector, aleph, build,
                    count_linear_extensions, e_via_order_poly, fgen_oracle, jordan_holder,
                    k_trace, order_gf_check, pf_formula_maj, pf_oracle)
from .catalog import Family, SkewShape, extend_bar, named, rect, skew
from .operators import Mode, compose_bar, cor35_pf, cor35_tf, phi, psi, thm12_rhs

__version__ = "0.1.0"
