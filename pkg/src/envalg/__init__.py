"""Exact symbolic computation in universal enveloping algebras.

Symmetrization, regular and ordered-monomial normal forms, and a
brute-force linear-algebra oracle for the ordered-monomial basis.
"""

from .freealg import FreePoly, homogeneous_component, render
from .lie import BracketTable, ValidatedLie, bracket, builtin, jacobi_residue, validate
from .oracle import check_pbw_independence, evaluate, quotient_dimension, trinomial_span
from .parsing import parse_expression, parse_poly
from .reduce import (
    equivalent, nonuniqueness_witness, pbw_normal_form, reduce_to_regular, swap_rewrite,
)
from .symmetrize import (
    SymPoly, is_regular, phi, phi_inverse, power_decomposition, regular_equipollent, sym,
)

__version__ = "0.1.0"
