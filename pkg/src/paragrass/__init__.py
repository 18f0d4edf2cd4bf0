"""Para-Grassmann calculus for k-nilpotent q-bosons.

Modules
-------
qnum      q-integers and the shared :class:`QContext`
fock      Fock-space matrices of creation, annihilation and number operators
algebra   para-Grassmann elements, products and conjugation
berezin   Berezin-type integration
coherent  measure weight, coherent matrix elements, Toeplitz operators
trace     traces as coherent-state integrals
thermo    partition functions, energies, occupations
opexpr    operator expression parser
"""
from .qnum import QContext, q_exp_scalar, q_factorial, q_int
from .fock import FockOp
from .algebra import PGElement
from .coherent import coherent_matrix_element, measure_weight, sesquilinear, toeplitz
from .trace import symbolic_trace

__all__ = [
    "QContext",
    "q_int",
    "q_factorial",
    "q_exp_scalar",
    "FockOp",
    "PGElement",
    "measure_weight",
    "coherent_matrix_element",
    "toeplitz",
    "sesquilinear",
    "symbolic_trace",
]

__version__ = "0.1.0"
