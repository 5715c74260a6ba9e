"""Top-down, bottom-up and left-corner parsing as preorder, postorder and inorder traversal."""

from .clauses import (Program, builtin_program, egnf_transform, format_program, improve,
                      program_equal, read_program)
from .engines import Strategy, parse
from .grammar import Grammar, load_grammar
from .interpreter import run_program
from .oracle import oracle_parse
from .specializer import partially_execute, specialization_identity
from .syntax import print_term, read_term
from .terms import Struct, Subst, Var, VarSource, apply, canonicalize, rename_apart, unify
from .traversal import Order, invert, traverse
from .trees import Branch, Lex, ParseResult, yield_words

__all__ = [
    "Branch", "Grammar", "Lex", "Order", "ParseResult", "Program", "Strategy", "Struct", "Subst",
    "Var", "VarSource", "apply", "builtin_program", "canonicalize", "egnf_transform",
    "format_program", "improve", "invert", "load_grammar", "oracle_parse", "parse",
    "partially_execute", "print_term", "program_equal", "read_program", "read_term",
    "rename_apart", "run_program", "specialization_identity", "traverse", "unify", "yield_words",
]
