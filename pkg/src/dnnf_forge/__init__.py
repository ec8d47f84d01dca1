"""DNNF compilation through auxiliary variables and forgetting."""

from dnnf_forge.cnf import Cnf, DimacsError, parse_dimacs, write_dimacs
from dnnf_forge.compiler import CompileTimeout, Compiler, compile_cnf
from dnnf_forge.nnf import NnfDag, forget, parse_nnf, write_nnf
from dnnf_forge.pipeline import PipelineReport, compare, run
from dnnf_forge.transform import bva, bva_step, extend, extend_general, tseitin

__version__ = "0.1.0"

__all__ = [
    "Cnf", "DimacsError", "parse_dimacs", "write_dimacs",
    "CompileTimeout", "Compiler", "compile_cnf",
    "NnfDag", "forget", "parse_nnf", "write_nnf",
    "PipelineReport", "compare", "run",
    "bva", "bva_step", "extend", "extend_general", "tseitin",
]
