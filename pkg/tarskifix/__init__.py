#!/usr/bin/env python3

__doc__ = "Least fixpoints over flat lifted domains, by bounded Kleene iteration"

__version__ = "0.9.0"

##
## The modules:
##
##   flatdomain   BOTTOM, Value, the flat order, finite function tables
##   functional   FunExpr, the expression language for recursive bodies
##   kleene       the iteration engine: approx, fix, trace, run_unbounded
##   cpo_checker  brute-force checks of the fixpoint theorem
##   imp          the IMP language, denotational and natural semantics
##   cli          the command line
##
## The expression trees of functional and imp share some class names
## (If, for one), so only functional's are re-exported here.  Use
## tarskifix.imp for IMP's.
##

__all__ = [
    'approx', # function
    'BOTTOM', # the least element
    'check_all', # function
    'check_continuous', # function
    'check_monotone', # function
    'check_tarski', # function
    'CheckReport', # class
    'DomainMismatch', # exception class
    'eval_step', # function
    'f_fact', # function
    'FiniteFunSpace', # class
    'FiniteFunTable', # class
    'fix', # function
    'FixOutcome', # class
    'fun_leq', # function
    'FunExpr', # class
    'GuardExceeded', # exception class
    'IllFormed', # exception class
    'ImpSyntaxError', # exception class
    'IncompleteGraph', # exception class
    'iterate', # function
    'iterates_are_chain', # function
    'IterTrace', # class
    'least_fixpoint_bruteforce', # function
    'leq', # function
    'main', # function
    'main_with_usage', # function
    'NoFixpoint', # exception class
    'NoLeast', # exception class
    'NotAChain', # exception class
    'NotInDomain', # exception class
    'Options', # class
    'Overflow', # exception class
    'run_unbounded', # function
    'tarski_fix', # function
    'to_table_functional', # function
    'trace', # function
    'UndefinedVariable', # exception class
    'UsageException', # exception class
    'Value', # class
    ]


from .errors import (
    DomainMismatch,
    GuardExceeded,
    IllFormed,
    ImpSyntaxError,
    IncompleteGraph,
    NoFixpoint,
    NoLeast,
    NotAChain,
    NotInDomain,
    Overflow,
    UndefinedVariable,
    )
from .options import Options
from .flatdomain import BOTTOM, FiniteFunTable, Value, fun_leq, leq
from .functional import FunExpr, eval_step, f_fact, to_table_functional
from .kleene import FixOutcome, IterTrace, approx, fix, iterate, run_unbounded, tarski_fix, trace
from .cpo_checker import (
    CheckReport,
    FiniteFunSpace,
    check_all,
    check_continuous,
    check_monotone,
    check_tarski,
    iterates_are_chain,
    least_fixpoint_bruteforce,
    )
from .cli import UsageException, main, main_with_usage
