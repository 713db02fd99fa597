#!/usr/bin/env python3

"""
A small expression language for recursive definitions over integers.

A FunExpr is the body of a definition "f(x) = body", where the body
may call f through Rec nodes.  Evaluating the body once, with Rec
answered by some approximation of f, *is* the functional F:

    F(approx)(x) = eval_step(body, approx, x)

Every construct is strict (call-by-value): as soon as an evaluated
subexpression is BOTTOM, the whole result is BOTTOM.  The one
exception is If, which only evaluates the branch its condition
selects.  Built this way, every functional you can write is monotone,
so you never need to prove continuity by hand.

Integers are 64-bit signed.  Arithmetic that leaves that range raises
Overflow; it never yields BOTTOM.  (BOTTOM means "doesn't terminate",
and only that.)

JSON form, one S-expression per node:

    ["lit", 3]    ["input"]    ["rec", arg]
    ["if", cond, then, else]
    [op, left, right]   where op is one of + - * = < <=

f_fact() encodes as

    ["if", ["=", ["input"], ["lit", 0]], ["lit", 1],
        ["*", ["input"], ["rec", ["-", ["input"], ["lit", 1]]]]]
"""

__all__ = [
    'ARITHMETIC_OPERATORS',
    'as_functional',
    'BinOp',
    'bottom_approximation',
    'checked_arithmetic',
    'COMPARISON_OPERATORS',
    'dumps_funexpr',
    'eval_step',
    'f_fact',
    'f_fact2',
    'f_fact_json',
    'from_json',
    'FunExpr',
    'If',
    'Input',
    'INT_MAX',
    'INT_MIN',
    'Lit',
    'loads_funexpr',
    'Rec',
    'TableApproximation',
    'TableFunctional',
    'to_json',
    'to_table_functional',
    ]

from dataclasses import dataclass, field
import functools
import json
import operator

from .errors import IllFormed, Overflow
from .flatdomain import BOTTOM, FiniteFunTable, Value, apply_strict, cond


INT_MIN = -(2 ** 63)
INT_MAX = (2 ** 63) - 1

ARITHMETIC_OPERATORS = {
    '+': operator.add,
    '-': operator.sub,
    '*': operator.mul,
    }

COMPARISON_OPERATORS = {
    '=': operator.eq,
    '<': operator.lt,
    '<=': operator.le,
    }

INT = 'int'
BOOL = 'bool'


def checked_arithmetic(op, a, b):
    "a op b, raising Overflow if the result isn't a 64-bit signed integer."
    result = ARITHMETIC_OPERATORS[op](a, b)
    if not (INT_MIN <= result <= INT_MAX):
        raise Overflow(op, (a, b))
    return result


class FunExpr:
    """
    Base class of expression nodes.

    Every node knows its kind: INT for nodes producing integers,
    BOOL for comparisons (and Ifs choosing between comparisons).
    Kinds are checked when a node is constructed, so an ill-formed
    tree can't be built.
    """
    __slots__ = ()
    kind = INT


def _check_child(node, name, child, kind):
    if not isinstance(child, FunExpr):
        raise IllFormed(f"{type(node).__name__}.{name} must be a FunExpr, not {child!r}")
    if child.kind != kind:
        raise IllFormed(f"{type(node).__name__}.{name} must produce {'an integer' if kind == INT else 'a boolean'}, but {child!r} doesn't")


@dataclass(frozen=True)
class Lit(FunExpr):
    value: int

    def __post_init__(self):
        if isinstance(self.value, bool) or not isinstance(self.value, int):
            raise IllFormed(f"literal must be an integer, not {self.value!r}")
        if not (INT_MIN <= self.value <= INT_MAX):
            raise IllFormed(f"literal {self.value} isn't a 64-bit signed integer")


@dataclass(frozen=True)
class Input(FunExpr):
    "The argument x of the function being defined."


@dataclass(frozen=True)
class BinOp(FunExpr):
    op: str
    left: FunExpr
    right: FunExpr
    kind: str = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.op in COMPARISON_OPERATORS:
            kind = BOOL
        elif self.op in ARITHMETIC_OPERATORS:
            kind = INT
        else:
            raise IllFormed(f"unknown operator {self.op!r}")
        _check_child(self, 'left', self.left, INT)
        _check_child(self, 'right', self.right, INT)
        object.__setattr__(self, 'kind', kind)


@dataclass(frozen=True)
class If(FunExpr):
    cond: FunExpr
    then: FunExpr
    else_: FunExpr
    kind: str = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _check_child(self, 'cond', self.cond, BOOL)
        if not isinstance(self.then, FunExpr):
            raise IllFormed(f"If.then must be a FunExpr, not {self.then!r}")
        _check_child(self, 'else_', self.else_, self.then.kind)
        object.__setattr__(self, 'kind', self.then.kind)


@dataclass(frozen=True)
class Rec(FunExpr):
    "A call to the function being defined."
    arg: FunExpr

    def __post_init__(self):
        _check_child(self, 'arg', self.arg, INT)


def f_fact():
    "The factorial body: if x = 0 then 1 else x * f(x - 1)."
    x = Input()
    return If(
        BinOp('=', x, Lit(0)),
        Lit(1),
        BinOp('*', x, Rec(BinOp('-', x, Lit(1)))),
        )


def f_fact_json():
    "The canonical JSON text of f_fact()."
    return dumps_funexpr(f_fact())


def f_fact2(fact, z):
    """
    Factorial again, this time as an opaque functional written with
    cond and apply_strict instead of a FunExpr.  Agrees with
    eval_step(f_fact(), fact, z) for every fact and z.
    """
    return cond(Value(z == 0),
        Value(1),
        lambda: apply_strict(
            Value(lambda v: Value(checked_arithmetic('*', z, v))),
            fact(checked_arithmetic('-', z, 1))),
        )


#
# Evaluation.
#
# A body is compiled once into a flat instruction list for a small
# stack machine.  Each instruction is (opcode, a, b):
#
#     _INPUT                  push x
#     _LIT, value             push value
#     _ARITH, function, op    pop two, push the checked result
#     _COMPARE, function, op  pop two, push the boolean
#     _JUMP_IF_FALSE, target  pop; jump if false
#     _JUMP, target           jump
#     _REC                    pop the argument, call f on it, push the result
#
# Whoever runs the code decides what _REC means: eval_step answers
# from an approximation, the kleene engine pushes another activation.
# The branch an If doesn't take is jumped over, never evaluated.
#

_INPUT = 0
_LIT = 1
_ARITH = 2
_COMPARE = 3
_JUMP_IF_FALSE = 4
_JUMP = 5
_REC = 6


@functools.lru_cache(maxsize=256)
def _compile(e):
    code = []

    def emit(e):
        t = type(e)
        if t is Lit:
            code.append((_LIT, e.value, None))
        elif t is Input:
            code.append((_INPUT, None, None))
        elif t is BinOp:
            emit(e.left)
            emit(e.right)
            compare = COMPARISON_OPERATORS.get(e.op)
            if compare:
                code.append((_COMPARE, compare, e.op))
            else:
                code.append((_ARITH, ARITHMETIC_OPERATORS[e.op], e.op))
        elif t is If:
            emit(e.cond)
            jump_if_false = len(code)
            code.append(None)
            emit(e.then)
            jump = len(code)
            code.append(None)
            code[jump_if_false] = (_JUMP_IF_FALSE, len(code), None)
            emit(e.else_)
            code[jump] = (_JUMP, len(code), None)
        elif t is Rec:
            emit(e.arg)
            code.append((_REC, None, None))
        else:
            raise IllFormed(f"not a FunExpr: {e!r}") # pragma: no cover

    emit(e)
    return tuple(code)


def _step(code, approx, x, clip):
    stack = []
    push = stack.append
    pop = stack.pop
    pc = 0
    end = len(code)
    while pc < end:
        opcode, a, b = code[pc]
        pc += 1
        if opcode == _INPUT:
            push(x)
        elif opcode == _LIT:
            push(a)
        elif opcode == _ARITH:
            right = pop()
            left = pop()
            result = a(left, right)
            if (clip is not None) and not clip(result):
                return BOTTOM
            if not (INT_MIN <= result <= INT_MAX):
                raise Overflow(b, (left, right))
            push(result)
        elif opcode == _COMPARE:
            right = pop()
            push(a(pop(), right))
        elif opcode == _JUMP_IF_FALSE:
            if not pop():
                pc = a
        elif opcode == _JUMP:
            pc = a
        else:
            p = approx(pop())
            if p is BOTTOM:
                return BOTTOM
            push(p.value)
    return Value(pop())


def _check_body(e):
    if not isinstance(e, FunExpr):
        raise IllFormed(f"not a FunExpr: {e!r}")
    if e.kind != INT:
        raise IllFormed(f"a function body must produce an integer, but {e!r} doesn't")


def eval_step(e, approx, x, *, clip=None):
    """
    One application of the functional: evaluates body e at input x,
    answering each Rec(arg) with approx(arg).

    Returns BOTTOM if any Rec that's actually evaluated gets BOTTOM
    from approx.  The branch an If doesn't take is never evaluated,
    so it can't force BOTTOM.

    If clip is specified, it's a predicate on integers; an arithmetic
    result failing it yields BOTTOM.  (to_table_functional uses this.)
    """
    _check_body(e)
    return _step(_compile(e), approx, x, clip)



def as_functional(e):
    """
    Returns e as an opaque functional: a callable F(approx, x).
    Callables are returned unchanged.
    """
    if isinstance(e, FunExpr):
        _check_body(e)
        def functional(approx, x):
            return eval_step(e, approx, x)
        functional.body = e
        return functional
    if callable(e):
        return e
    raise IllFormed(f"not a FunExpr or a functional: {e!r}")


def bottom_approximation(x):
    "F^0(⊥): BOTTOM everywhere."
    return BOTTOM


class TableApproximation:
    """
    An approximation read from a FiniteFunTable (or any mapping from
    integers to Partials or plain integers).  BOTTOM outside the table.
    """

    def __init__(self, table):
        self.table = table

    def __repr__(self): # pragma: no cover
        return f"TableApproximation({self.table!r})"

    def __call__(self, x):
        if x not in self.table:
            return BOTTOM
        p = self.table[x]
        if (p is BOTTOM) or isinstance(p, Value):
            return p
        return Value(p)


def _clip_predicate(clip):
    if callable(clip):
        return clip
    return clip.__contains__


class TableFunctional:
    """
    The functional of a FunExpr, restricted to tables over a finite
    domain.  Calls outside the domain get BOTTOM, and arithmetic
    results (including the final result) outside the clip are BOTTOM.
    """

    def __init__(self, e, domain, clip):
        _check_body(e)
        domain = tuple(domain)
        if not domain:
            raise ValueError("domain must not be empty")
        if len(set(domain)) != len(domain):
            raise ValueError(f"domain {list(domain)} has duplicates")
        self.e = e
        self.domain = domain
        self.clip = _clip_predicate(clip)

    def __repr__(self): # pragma: no cover
        return f"TableFunctional({self.e!r}, domain={list(self.domain)})"

    def __call__(self, table):
        approx = TableApproximation(table)
        clip = self.clip
        entries = []
        for x in self.domain:
            p = eval_step(self.e, approx, x, clip=clip)
            if (p is not BOTTOM) and not clip(p.value):
                p = BOTTOM
            entries.append(p)
        return FiniteFunTable(self.domain, entries)


def to_table_functional(e, domain, codomain_clip):
    """
    Bridges e to the finite checker.  codomain_clip is a predicate
    on integers (or a container, like range(0, 3)).
    """
    return TableFunctional(e, domain, codomain_clip)


#
# JSON S-expressions
#

def to_json(e):
    t = type(e)
    if t is Lit:
        return ["lit", e.value]
    if t is Input:
        return ["input"]
    if t is BinOp:
        return [e.op, to_json(e.left), to_json(e.right)]
    if t is If:
        return ["if", to_json(e.cond), to_json(e.then), to_json(e.else_)]
    if t is Rec:
        return ["rec", to_json(e.arg)]
    raise IllFormed(f"not a FunExpr: {e!r}")


def from_json(o):
    if not (isinstance(o, list) and o and isinstance(o[0], str)):
        raise IllFormed(f"expected a list starting with a node name, got {o!r}")
    head = o[0]
    arguments = o[1:]

    def expect(count):
        if len(arguments) != count:
            raise IllFormed(f"{head!r} takes {count} argument{'s' if count != 1 else ''}, got {len(arguments)}: {o!r}")

    if head == "lit":
        expect(1)
        return Lit(arguments[0])
    if head == "input":
        expect(0)
        return Input()
    if head == "rec":
        expect(1)
        return Rec(from_json(arguments[0]))
    if head == "if":
        expect(3)
        return If(*(from_json(a) for a in arguments))
    if (head in ARITHMETIC_OPERATORS) or (head in COMPARISON_OPERATORS):
        expect(2)
        return BinOp(head, from_json(arguments[0]), from_json(arguments[1]))
    raise IllFormed(f"unknown node {head!r}")


def dumps_funexpr(e):
    return json.dumps(to_json(e))

def loads_funexpr(text):
    try:
        o = json.loads(text)
    except ValueError as e:
        raise IllFormed(f"invalid JSON: {e}")
    return from_json(o)
