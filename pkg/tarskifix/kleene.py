#!/usr/bin/env python3

"""
The iteration engine.

The least fixpoint of a functional F is the least upper bound of
the chain F^0(⊥) ⊑ F^1(⊥) ⊑ F^2(⊥) ...  At any one input that chain
is BOTTOM for a while, and then (maybe) a Value forever.  So:

  * a Value computed with n iterations is the fixpoint's value,
    full stop;
  * BOTTOM computed with n iterations only means "not within n".
    The function may diverge there, or n may just be too small.

approx(e, n, x) computes F^n(⊥)(x) by recursion with fuel: each
Rec runs one level deeper, and a Rec that would need a level
beyond n is BOTTOM.  iterate(e, n) builds F^n(⊥) the slow, literal
way, one eval_step per level; the two always agree.

The engine never uses host recursion for Rec.  Each recursive call
pushes a fresh evaluator activation on an explicit stack, so fuel
and guards in the tens of thousands are fine.
"""

__all__ = [
    'approx',
    'fix',
    'FixOutcome',
    'iterate',
    'IterTrace',
    'run_unbounded',
    'tarski_fix',
    'trace',
    ]

from dataclasses import dataclass
from typing import Optional, Tuple

from .errors import GuardExceeded, NotAChain, Overflow
from .flatdomain import BOTTOM, Value, is_ascending, partial_from_json, partial_to_json
from .functional import (
    INT_MAX,
    INT_MIN,
    FunExpr,
    _ARITH,
    _COMPARE,
    _INPUT,
    _JUMP,
    _JUMP_IF_FALSE,
    _LIT,
    _check_body,
    _compile,
    as_functional,
    )
from .options import _options


@dataclass(frozen=True)
class FixOutcome:
    """
    The result of fix.  witness is the smallest number of iterations
    that produces result; it's None exactly when result is BOTTOM.
    """
    result: object
    witness: Optional[int]

    def __post_init__(self):
        if (self.result is BOTTOM) != (self.witness is None):
            raise ValueError(f"witness must be present iff result is a Value, got {self.result!r} with witness {self.witness!r}")

    def to_json(self):
        return {"result": partial_to_json(self.result), "witness": self.witness}


@dataclass(frozen=True)
class IterTrace:
    """
    samples[n] is F^n(⊥)(input).  stabilized_at is the first n
    where samples[n] is a Value, or None.
    """
    input: int
    samples: Tuple[object, ...]
    stabilized_at: Optional[int]

    def __post_init__(self):
        object.__setattr__(self, 'samples', tuple(self.samples))
        samples = self.samples
        if not is_ascending(samples):
            raise NotAChain(f"samples {list(samples)} aren't ascending", None)
        first = next((n for n, p in enumerate(samples) if p is not BOTTOM), None)
        if first != self.stabilized_at:
            raise ValueError(f"stabilized_at is {self.stabilized_at!r} but the first Value is at {first!r}")

    def to_json(self):
        return {
            "input": self.input,
            "samples": [partial_to_json(p) for p in self.samples],
            "stabilized_at": self.stabilized_at,
            }

    @classmethod
    def from_json(cls, o):
        return cls(o["input"], [partial_from_json(p) for p in o["samples"]], o["stabilized_at"])


class _Iterate:
    "F^n(⊥), as a callable.  Level 0 is BOTTOM everywhere."

    def __init__(self, functional, n, previous):
        self.functional = functional
        self.n = n
        self.previous = previous

    def __repr__(self): # pragma: no cover
        return f"<F^{self.n}(⊥)>"

    def __call__(self, x):
        if self.previous is None:
            return BOTTOM
        return self.functional(self.previous, x)


def iterate(e, n):
    """
    Returns the approximation F^n(⊥), where F is the functional of e.
    e may be a FunExpr or an opaque functional F(approx, x).

    Calling the result at x costs up to n nested eval_steps, using
    host recursion; this is the reference definition, not the fast path.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    functional = as_functional(e)
    approximation = _Iterate(functional, 0, None)
    for i in range(1, n + 1):
        approximation = _Iterate(functional, i, approximation)
    return approximation


def _run(e, x, limit):
    """
    Evaluates body e at x, pushing a fresh activation for every Rec.
    At most limit activations may be live at once.

    Returns (result, height): result is the Value computed, or None
    if another activation beyond limit was needed; height is the most
    activations that were live at once.  approx(e, n, x) is a Value
    exactly when height <= n.

    Runs e's compiled code (see functional._compile).  An activation
    is (pc, operand stack, x); the suspended ones wait in frames.
    """
    code = _compile(e)
    end = len(code)
    frames = []
    stack = []
    pc = 0
    height = 1
    while True:
        if pc == end:
            result = stack[-1]
            if not frames:
                return Value(result), height
            pc, stack, x = frames.pop()
            stack.append(result)
            continue
        opcode, a, b = code[pc]
        pc += 1
        if opcode == _INPUT:
            stack.append(x)
        elif opcode == _LIT:
            stack.append(a)
        elif opcode == _ARITH:
            right = stack.pop()
            left = stack.pop()
            result = a(left, right)
            if not (INT_MIN <= result <= INT_MAX):
                raise Overflow(b, (left, right))
            stack.append(result)
        elif opcode == _COMPARE:
            right = stack.pop()
            stack.append(a(stack.pop(), right))
        elif opcode == _JUMP_IF_FALSE:
            if not stack.pop():
                pc = a
        elif opcode == _JUMP:
            pc = a
        else:
            if len(frames) + 1 >= limit:
                return None, height
            argument = stack.pop()
            frames.append((pc, stack, x))
            pc = 0
            stack = []
            x = argument
            if len(frames) >= height:
                height = len(frames) + 1


def approx(e, fuel, x):
    """
    F^fuel(⊥)(x), computed by recursion with fuel: each Rec gets one
    less, and a Rec with no fuel left is BOTTOM.
    """
    if fuel < 0:
        raise ValueError(f"fuel must be >= 0, got {fuel}")
    if not isinstance(e, FunExpr):
        functional = as_functional(e)
        def fueled(n, x):
            if not n:
                return BOTTOM
            return functional(lambda y: fueled(n - 1, y), x)
        return fueled(fuel, x)
    _check_body(e)
    if not fuel:
        return BOTTOM
    result, height = _run(e, x, fuel)
    return BOTTOM if result is None else result


def fix(e, max_fuel, x, *, options=None):
    """
    The least fixpoint of e's functional at x, as far as max_fuel
    iterations can tell.

    Returns FixOutcome(Value(v), n) where n is the smallest number of
    iterations that produces v, or FixOutcome(BOTTOM, None) if no
    n <= max_fuel does.  That's the same answer as scanning
    approx(e, n, x) for n = 0, 1, ... max_fuel, computed in one pass.
    """
    if max_fuel < 0:
        raise ValueError(f"max_fuel must be >= 0, got {max_fuel}")
    _check_body(e)
    options = _options(options)
    with options.heading("Kleene iteration"):
        options.print(f"Computing the fixpoint at input {x}, allowing {max_fuel} iterations.")
        if max_fuel:
            result, height = _run(e, x, max_fuel)
        else:
            result = None
        if result is None:
            options.print(f"No result within {max_fuel} iterations.")
            return FixOutcome(BOTTOM, None)
        options.print(f"Stabilized at {result.value} after {height} iterations.")
        return FixOutcome(result, height)


def run_unbounded(e, x, guard):
    """
    The genuine recursive realization

        tarski_fix f x = f (fun y -> tarski_fix f y) x

    where every Rec re-enters the evaluator.  It can't observe
    divergence; it can only be cut off.  guard is the most evaluator
    activations allowed at once (the outermost one counts), and
    going past it raises GuardExceeded.

    Whenever this returns Value(v), fix(e, guard, x) returns v too.
    """
    if guard < 1:
        raise ValueError(f"guard must be >= 1, got {guard}")
    _check_body(e)
    result, height = _run(e, x, guard)
    if result is None:
        raise GuardExceeded(guard, x)
    return result


def trace(e, max_fuel, x, *, options=None):
    """
    The chain F^n(⊥)(x) for n = 0 ... max_fuel.

    Once a flat chain has a Value it keeps it, so a single run tells
    us every sample: BOTTOM below the witness, the Value from there on.
    """
    outcome = fix(e, max_fuel, x, options=options)
    if outcome.result is BOTTOM:
        samples = [BOTTOM] * (max_fuel + 1)
    else:
        n = outcome.witness
        samples = ([BOTTOM] * n) + ([outcome.result] * (max_fuel + 1 - n))
    return IterTrace(x, samples, outcome.witness)


def tarski_fix(functional):
    """
    Returns phi with phi(x) = functional(lambda y: phi(y), x).

    This is the realization for opaque functionals, and it really
    does recurse in Python: inputs where the fixpoint diverges
    end in RecursionError.
    """
    functional = as_functional(functional)
    def phi(x):
        return functional(lambda y: phi(y), x)
    return phi
