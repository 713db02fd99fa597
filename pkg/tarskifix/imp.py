#!/usr/bin/env python3

"""
IMP: a small imperative language, given two semantics.

denot_run is denotational: a while loop means the least fixpoint of
its loop functional

    W(w)(σ) = if b(σ) then w(⟦body⟧σ) else σ

on State → State_⊥, approximated with fuel iterations of W from ⊥.

bigstep is the natural semantics: it builds the (unique) derivation
of "c, σ ⇓ σ'", giving up when the derivation would be taller than
fuel.  It's the oracle the denotational interpreter is checked
against.

Both return BOTTOM for "no result within fuel".  Faults (unbound
variables, overflow) raise; they never turn into BOTTOM.

Concrete syntax:

    com    ::= "skip" | ident ":=" aexp | com ";" com
             | "if" bexp "then" com "else" com "end"
             | "while" bexp "do" com "done"
    aexp   ::= term (("+"|"-") term)*
    term   ::= factor ("*" factor)*
    factor ::= integer | "-" integer | ident | "(" aexp ")"
    bexp   ::= batom ("and" batom)*
    batom  ::= "true" | "false" | "not" batom | "(" bexp ")"
             | aexp ("=" | "<=") aexp

Sequencing is right-associative.  Keywords are reserved.  Here's
the factorial program:

    acc := 1; while not (n = 0) do acc := acc * n; n := n - 1 done
"""

__all__ = [
    'aeval',
    'And',
    'Assign',
    'beval',
    'bigstep',
    'BoolLit',
    'denot_run',
    'derive',
    'Derivation',
    'Eq',
    'If',
    'IntLit',
    'Le',
    'load_program',
    'loop_approximation',
    'loop_functional',
    'Minus',
    'Not',
    'parse',
    'Plus',
    'pretty',
    'Seq',
    'Skip',
    'State',
    'Times',
    'Var',
    'While',
    ]

from collections.abc import Mapping
from dataclasses import dataclass, field
import pathlib
import re
from typing import Tuple

from .errors import ImpSyntaxError, UndefinedVariable
from .flatdomain import BOTTOM, Value
from .functional import INT_MAX, INT_MIN, checked_arithmetic
from .options import _options


KEYWORDS = frozenset("skip if then else end while do done true false not and".split())

_identifier_re = re.compile(r"[A-Za-z][A-Za-z0-9_]*")

def _check_identifier(name):
    if not (isinstance(name, str) and _identifier_re.fullmatch(name)):
        raise ValueError(f"invalid identifier {name!r}")
    if name in KEYWORDS:
        raise ValueError(f"{name!r} is a keyword, not an identifier")

def _check_integer(value):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"expected an integer, got {value!r}")
    if not (INT_MIN <= value <= INT_MAX):
        raise ValueError(f"{value} isn't a 64-bit signed integer")


#
# Abstract syntax
#

@dataclass(frozen=True)
class IntLit:
    value: int

    def __post_init__(self):
        _check_integer(self.value)

@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        _check_identifier(self.name)

@dataclass(frozen=True)
class Plus:
    left: object
    right: object

@dataclass(frozen=True)
class Minus:
    left: object
    right: object

@dataclass(frozen=True)
class Times:
    left: object
    right: object


@dataclass(frozen=True)
class BoolLit:
    value: bool

@dataclass(frozen=True)
class Eq:
    left: object
    right: object

@dataclass(frozen=True)
class Le:
    left: object
    right: object

@dataclass(frozen=True)
class Not:
    b: object

@dataclass(frozen=True)
class And:
    left: object
    right: object


@dataclass(frozen=True)
class Skip:
    pass

@dataclass(frozen=True)
class Assign:
    name: str
    value: object

    def __post_init__(self):
        _check_identifier(self.name)

@dataclass(frozen=True)
class Seq:
    first: object
    second: object

@dataclass(frozen=True)
class If:
    cond: object
    then: object
    else_: object

@dataclass(frozen=True)
class While:
    cond: object
    body: object


class State(Mapping):
    """
    An immutable store mapping identifiers to integers.

    Iteration order is insertion order, so states print the way
    they were built; equality ignores order.  Looking up an unbound
    identifier raises UndefinedVariable.
    """

    __slots__ = ('_d',)

    def __init__(self, mapping=()):
        d = dict(mapping)
        for name, value in d.items():
            _check_identifier(name)
            _check_integer(value)
        self._d = d

    def __getitem__(self, name):
        try:
            return self._d[name]
        except KeyError:
            raise UndefinedVariable(name) from None

    def __contains__(self, name):
        return name in self._d

    def get(self, name, default=None):
        return self._d.get(name, default)

    def __iter__(self):
        return iter(self._d)

    def __len__(self):
        return len(self._d)

    def __eq__(self, other):
        if isinstance(other, State):
            return self._d == other._d
        if isinstance(other, Mapping):
            return self._d == dict(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._d.items()))

    def __repr__(self):
        return f"State({self._d!r})"

    def set(self, name, value):
        "Returns a new State with name bound to value."
        d = dict(self._d)
        d[name] = value
        return State(d)

    def to_json(self):
        return dict(self._d)

    @classmethod
    def from_json(cls, o):
        if not isinstance(o, dict):
            raise ValueError(f"a state must be a JSON object, not {o!r}")
        return cls(o)


#
# Expression semantics
#

def aeval(e, s):
    t = type(e)
    if t is IntLit:
        return e.value
    if t is Var:
        return s[e.name]
    if t is Plus:
        return checked_arithmetic('+', aeval(e.left, s), aeval(e.right, s))
    if t is Minus:
        return checked_arithmetic('-', aeval(e.left, s), aeval(e.right, s))
    if t is Times:
        return checked_arithmetic('*', aeval(e.left, s), aeval(e.right, s))
    raise TypeError(f"not an arithmetic expression: {e!r}")


def beval(b, s):
    t = type(b)
    if t is BoolLit:
        return b.value
    if t is Eq:
        return aeval(b.left, s) == aeval(b.right, s)
    if t is Le:
        return aeval(b.left, s) <= aeval(b.right, s)
    if t is Not:
        return not beval(b.b, s)
    if t is And:
        return beval(b.left, s) and beval(b.right, s)
    raise TypeError(f"not a boolean expression: {b!r}")


#
# Denotational semantics
#

def _loop(c, s, fuel, n, options):
    # W^n(⊥)(s), one iteration of the loop per level
    for count in range(n):
        if not beval(c.cond, s):
            options.detail(f"Loop exited after {count} iteration{'s' if count != 1 else ''}.")
            return Value(s)
        r = _denot(c.body, s, fuel, options)
        if r is BOTTOM:
            return BOTTOM
        s = r.value
    options.detail(f"Loop still running after {n} iterations, giving up.")
    return BOTTOM


def _denot(c, s, fuel, options):
    # walk the spine of a sequence, so long programs don't recurse
    while type(c) is Seq:
        r = _denot(c.first, s, fuel, options)
        if r is BOTTOM:
            return BOTTOM
        s = r.value
        c = c.second
    t = type(c)
    if t is Skip:
        return Value(s)
    if t is Assign:
        return Value(s.set(c.name, aeval(c.value, s)))
    if t is If:
        return _denot(c.then if beval(c.cond, s) else c.else_, s, fuel, options)
    if t is While:
        return _loop(c, s, fuel, fuel, options)
    raise TypeError(f"not a command: {c!r}")


def denot_run(c, s, fuel, *, options=None):
    """
    Runs c from state s.  Every while loop is approximated by fuel
    iterations of its loop functional from ⊥, so a loop gets to run
    its body at most fuel - 1 times.  Returns Value(final state) or
    BOTTOM.
    """
    if fuel < 0:
        raise ValueError(f"fuel must be >= 0, got {fuel}")
    if not isinstance(s, State):
        s = State(s)
    options = _options(options)
    with options.heading("Denotational semantics"):
        result = _denot(c, s, fuel, options)
        if result is BOTTOM:
            options.print(f"No result within fuel {fuel}.")
        else:
            options.print(f"Final state {result.value.to_json()}.")
        return result


def loop_functional(cond, body, fuel):
    """
    The loop functional W of "while cond do body done": maps an
    approximation w (State -> Partial) to W(w).  The body runs with
    the given fuel.
    """
    options = _options(None)
    def functional(w):
        def step(s):
            if not beval(cond, s):
                return Value(s)
            r = _denot(body, s, fuel, options)
            if r is BOTTOM:
                return BOTTOM
            return w(r.value)
        return step
    return functional


def loop_approximation(cond, body, fuel, n):
    "W^n(⊥) for the loop functional of \"while cond do body done\"."
    c = While(cond, body)
    options = _options(None)
    def approximation(s):
        return _loop(c, s, fuel, n, options)
    return approximation


#
# Natural semantics
#

@dataclass(eq=False)
class Derivation:
    """
    A derivation of "com, before ⇓ after".  rule names the last rule
    applied; premises are the sub-derivations.

    While derivations nest one level per iteration, so don't compare
    or print them recursively; use walk() instead.
    """
    rule: str
    com: object = field(repr=False)
    before: State
    after: State
    premises: Tuple['Derivation', ...] = field(repr=False, default=())
    height: int = 1

    def walk(self):
        "Yields every node of the derivation, without recursing."
        stack = [self]
        while stack:
            d = stack.pop()
            yield d
            stack.extend(reversed(d.premises))


def _derive(c, s, fuel):
    if fuel < 1:
        return BOTTOM
    t = type(c)
    if t is Skip:
        return Derivation("skip", c, s, s)
    if t is Assign:
        return Derivation("assign", c, s, s.set(c.name, aeval(c.value, s)))
    if t is Seq:
        # the second premise is usually another Seq.  walk the spine
        # here, one level of fuel per Seq, instead of recursing.
        spine = []
        while type(c) is Seq:
            if fuel < 1:
                return BOTTOM
            d1 = _derive(c.first, s, fuel - 1)
            if d1 is BOTTOM:
                return BOTTOM
            spine.append((c, s, d1))
            s = d1.after
            c = c.second
            fuel -= 1
        rest = _derive(c, s, fuel)
        if rest is BOTTOM:
            return BOTTOM
        for seq, before, d1 in reversed(spine):
            rest = Derivation("seq", seq, before, rest.after, (d1, rest), 1 + max(d1.height, rest.height))
        return rest
    if t is If:
        taken = beval(c.cond, s)
        d = _derive(c.then if taken else c.else_, s, fuel - 1)
        if d is BOTTOM:
            return BOTTOM
        return Derivation("if-true" if taken else "if-false", c, s, d.after, (d,), 1 + d.height)
    if t is While:
        # the while-true rule's second premise is the same loop again,
        # one level down.  unroll it here instead of recursing.
        iterations = []
        while True:
            if fuel < 1:
                return BOTTOM
            if not beval(c.cond, s):
                break
            d = _derive(c.body, s, fuel - 1)
            if d is BOTTOM:
                return BOTTOM
            iterations.append((s, d))
            s = d.after
            fuel -= 1
        rest = Derivation("while-false", c, s, s)
        for before, d in reversed(iterations):
            rest = Derivation("while-true", c, before, rest.after, (d, rest), 1 + max(d.height, rest.height))
        return rest
    raise TypeError(f"not a command: {c!r}")


def derive(c, s, fuel):
    """
    Builds the derivation of c from state s, or returns BOTTOM if
    there's no derivation of height <= fuel.
    """
    if fuel < 0:
        raise ValueError(f"fuel must be >= 0, got {fuel}")
    if not isinstance(s, State):
        s = State(s)
    return _derive(c, s, fuel)


def bigstep(c, s, fuel, *, options=None):
    "The final state of derive(c, s, fuel), as a Partial."
    options = _options(options)
    with options.heading("Natural semantics"):
        d = derive(c, s, fuel)
        if d is BOTTOM:
            options.print(f"No derivation of height {fuel} or less.")
            return BOTTOM
        options.print(f"Derivation of height {d.height}, final state {d.after.to_json()}.")
        return Value(d.after)


#
# Parsing
#

_token_re = re.compile(r"""
      (?P<space>\s+)
    | (?P<int>[0-9]+)
    | (?P<word>[A-Za-z][A-Za-z0-9_]*)
    | (?P<op>:=|<=|[-+*;=()])
    """, re.VERBOSE)


@dataclass(frozen=True)
class _Token:
    kind: str # 'int', 'ident', 'keyword', 'op', or 'eof'
    text: str
    lineno: int
    offset: int

    def describe(self):
        if self.kind == 'eof':
            return "end of input"
        return repr(self.text)


class _Parser:
    def __init__(self, text, path):
        self.text = text
        self.path = path
        self.lines = text.split('\n')
        self.tokens = self.tokenize()
        self.pos = 0

    def error(self, message, token):
        line = self.lines[token.lineno - 1] if token.lineno <= len(self.lines) else None
        return ImpSyntaxError(message, token.lineno, token.offset, line, path=self.path)

    def location(self, index):
        lineno = self.text.count('\n', 0, index) + 1
        offset = index - (self.text.rfind('\n', 0, index) + 1) + 1
        return lineno, offset

    def tokenize(self):
        tokens = []
        text = self.text
        index = 0
        while index < len(text):
            match = _token_re.match(text, index)
            if not match:
                lineno, offset = self.location(index)
                raise self.error(f"unexpected character {text[index]!r}", _Token('op', text[index], lineno, offset))
            kind = match.lastgroup
            if kind != 'space':
                value = match.group()
                if kind == 'word':
                    kind = 'keyword' if value in KEYWORDS else 'ident'
                tokens.append(_Token(kind, value, *self.location(index)))
            index = match.end()
        # end of input is reported just past the last token
        tokens.append(_Token('eof', '', *self.location(len(text.rstrip()))))
        return tokens

    @property
    def token(self):
        return self.tokens[self.pos]

    def advance(self):
        token = self.tokens[self.pos]
        if token.kind != 'eof':
            self.pos += 1
        return token

    def at(self, text):
        token = self.token
        return (token.kind in ('op', 'keyword')) and (token.text == text)

    def accept(self, text):
        if self.at(text):
            self.advance()
            return True
        return False

    def expect(self, text):
        if not self.accept(text):
            raise self.error(f"expected {text!r}, found {self.token.describe()}", self.token)

    def parse(self):
        c = self.com()
        if self.token.kind != 'eof':
            raise self.error(f"expected ';' or end of input, found {self.token.describe()}", self.token)
        return c

    def com(self):
        commands = [self.command()]
        while self.accept(';'):
            commands.append(self.command())
        # sequencing is right-associative
        c = commands.pop()
        while commands:
            c = Seq(commands.pop(), c)
        return c

    def command(self):
        token = self.token
        if self.accept('skip'):
            return Skip()
        if self.accept('if'):
            cond = self.bexp()
            self.expect('then')
            then = self.com()
            self.expect('else')
            else_ = self.com()
            self.expect('end')
            return If(cond, then, else_)
        if self.accept('while'):
            cond = self.bexp()
            self.expect('do')
            body = self.com()
            self.expect('done')
            return While(cond, body)
        if token.kind == 'ident':
            self.advance()
            self.expect(':=')
            return Assign(token.text, self.aexp())
        raise self.error(f"expected a command, found {token.describe()}", token)

    def aexp(self):
        e = self.term()
        while True:
            if self.accept('+'):
                e = Plus(e, self.term())
            elif self.accept('-'):
                e = Minus(e, self.term())
            else:
                return e

    def term(self):
        e = self.factor()
        while self.accept('*'):
            e = Times(e, self.factor())
        return e

    def integer(self, negative):
        token = self.token
        if token.kind != 'int':
            raise self.error(f"expected an integer, found {token.describe()}", token)
        self.advance()
        digits = len(token.text.lstrip('0'))
        if digits > 19:
            raise self.error(f"integer literal of {digits} digits isn't a 64-bit signed integer", token)
        value = -int(token.text) if negative else int(token.text)
        if not (INT_MIN <= value <= INT_MAX):
            raise self.error(f"integer {value} isn't a 64-bit signed integer", token)
        return IntLit(value)

    def factor(self):
        token = self.token
        if token.kind == 'int':
            return self.integer(False)
        if self.accept('-'):
            return self.integer(True)
        if token.kind == 'ident':
            self.advance()
            return Var(token.text)
        if self.accept('('):
            e = self.aexp()
            self.expect(')')
            return e
        raise self.error(f"expected an arithmetic expression, found {token.describe()}", token)

    def bexp(self):
        b = self.batom()
        while self.accept('and'):
            b = And(b, self.batom())
        return b

    def batom(self):
        if self.accept('true'):
            return BoolLit(True)
        if self.accept('false'):
            return BoolLit(False)
        if self.accept('not'):
            return Not(self.batom())
        if self.at('('):
            # either a parenthesized bexp, or a comparison whose left
            # side starts with a parenthesized aexp.  try the former.
            saved = self.pos
            try:
                self.advance()
                b = self.bexp()
                self.expect(')')
                return b
            except ImpSyntaxError:
                self.pos = saved
        left = self.aexp()
        if self.accept('='):
            return Eq(left, self.aexp())
        if self.accept('<='):
            return Le(left, self.aexp())
        raise self.error(f"expected '=' or '<=', found {self.token.describe()}", self.token)


def parse(text, *, path=None):
    """
    Parses IMP concrete syntax into a command.  Raises ImpSyntaxError
    (a SyntaxError) with the line and column of the problem.
    """
    return _Parser(text, str(path) if path else None).parse()


def load_program(path, *, encoding='utf-8'):
    if not isinstance(path, pathlib.Path):
        path = pathlib.Path(path)
    with path.open("rt", encoding=encoding) as f:
        text = f.read()
    return parse(text, path=path)


#
# Pretty-printing
#

_AEXP_PRECEDENCE = {IntLit: 3, Var: 3, Times: 2, Plus: 1, Minus: 1}
_AEXP_OPERATORS = {Plus: '+', Minus: '-', Times: '*'}

def _pretty_aexp(e, minimum=0):
    t = type(e)
    if t is IntLit:
        s = str(e.value)
    elif t is Var:
        s = e.name
    else:
        precedence = _AEXP_PRECEDENCE[t]
        # left-associative: the right operand needs parentheses at equal precedence
        s = f"{_pretty_aexp(e.left, precedence)} {_AEXP_OPERATORS[t]} {_pretty_aexp(e.right, precedence + 1)}"
    if _AEXP_PRECEDENCE[t] < minimum:
        s = f"({s})"
    return s


def _pretty_bexp(b, nested=False):
    t = type(b)
    if t is BoolLit:
        return "true" if b.value else "false"
    if t is Eq:
        return f"{_pretty_aexp(b.left)} = {_pretty_aexp(b.right)}"
    if t is Le:
        return f"{_pretty_aexp(b.left)} <= {_pretty_aexp(b.right)}"
    if t is Not:
        return f"not ({_pretty_bexp(b.b)})"
    if t is And:
        s = f"{_pretty_bexp(b.left)} and {_pretty_bexp(b.right, True)}"
        return f"({s})" if nested else s
    raise TypeError(f"not a boolean expression: {b!r}")


def _flatten(c):
    commands = []
    stack = [c]
    while stack:
        c = stack.pop()
        if type(c) is Seq:
            stack.append(c.second)
            stack.append(c.first)
        else:
            commands.append(c)
    return commands


def pretty(c):
    """
    The canonical concrete syntax of c.  Sequences are printed flat,
    so parse(pretty(c)) re-associates them to the right.
    """
    t = type(c)
    if t is Seq:
        return "; ".join(pretty(_) for _ in _flatten(c))
    if t is Skip:
        return "skip"
    if t is Assign:
        return f"{c.name} := {_pretty_aexp(c.value)}"
    if t is If:
        return f"if {_pretty_bexp(c.cond)} then {pretty(c.then)} else {pretty(c.else_)} end"
    if t is While:
        return f"while {_pretty_bexp(c.cond)} do {pretty(c.body)} done"
    raise TypeError(f"not a command: {c!r}")
