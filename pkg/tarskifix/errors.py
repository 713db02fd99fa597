#!/usr/bin/env python3

"""
Exceptions raised by tarskifix.

Bottom is a value of the model and never an exception.  Everything
in this module is a fault: something went wrong that is *not*
"this computation doesn't terminate".
"""

__all__ = [
    'DomainMismatch',
    'GuardExceeded',
    'IllFormed',
    'ImpSyntaxError',
    'IncompleteGraph',
    'NoFixpoint',
    'NoLeast',
    'NotAChain',
    'NotInDomain',
    'Overflow',
    'UndefinedVariable',
    ]


class DomainMismatch(ValueError):
    def __init__(self, description, left, right):
        super().__init__(description)
        self.left = tuple(left)
        self.right = tuple(right)


class NotInDomain(KeyError):
    def __init__(self, key, domain):
        super().__init__(key)
        self.key = key
        self.domain = tuple(domain)

    def __str__(self):
        return f"{self.key!r} is not in the domain {list(self.domain)}"


class NotAChain(ValueError):
    def __init__(self, description, index):
        super().__init__(description)
        self.index = index


class IllFormed(ValueError):
    pass


class Overflow(OverflowError):
    def __init__(self, op, operands):
        operands = tuple(operands)
        super().__init__(f"integer overflow computing {operands[0]} {op} {operands[1]}")
        self.op = op
        self.operands = operands


class GuardExceeded(RuntimeError):
    def __init__(self, guard, input):
        super().__init__(f"recursion depth passed the guard of {guard} evaluating input {input}")
        self.guard = guard
        self.input = input


class NoFixpoint(ValueError):
    pass


class NoLeast(ValueError):
    def __init__(self, description, fixpoints):
        super().__init__(description)
        self.fixpoints = tuple(fixpoints)


class UndefinedVariable(NameError):
    def __init__(self, name):
        super().__init__(f"undefined variable {name!r}")
        self.name = name


class ImpSyntaxError(SyntaxError):
    """
    Raised by imp.parse.  lineno and offset are 1-based, as with
    the builtin SyntaxError.
    """
    def __init__(self, message, lineno, offset, text=None, *, path=None):
        super().__init__(message, (path or "<string>", lineno, offset, text))
        self.message = message

    def __str__(self):
        prefix = f"File '{self.filename}', " if self.filename != "<string>" else ""
        return f"{prefix}line {self.lineno}, column {self.offset}: {self.message}"


class IncompleteGraph(ValueError):
    def __init__(self, description, missing):
        super().__init__(description)
        self.missing = tuple(missing)
