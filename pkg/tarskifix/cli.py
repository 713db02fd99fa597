#!/usr/bin/env python3

"""
The tarskifix command line.

    python3 -m tarskifix run factorial.imp --state '{"n": 5}'
    python3 -m tarskifix trace '["lit", 7]' --input 0 --fuel 1
    python3 -m tarskifix fix fact.json --input 5
    python3 -m tarskifix check fact.json --domain 0,1,2 --clip 0..2

Exit status is a function of the outcome:

    0  a Value, or every check passed
    1  a fault: bad usage, bad input, a syntax error, overflow...
    2  BOTTOM: no result within the fuel
    3  at least one check failed
"""

__all__ = [
    'CliConfig',
    'main',
    'main_with_usage',
    'UsageException',
    ]

import builtins
from dataclasses import dataclass
import json
import pathlib
import sys
from typing import Optional, Tuple

from .cpo_checker import FiniteFunSpace, check_all, graph_functional_from_json
from .errors import GuardExceeded
from .flatdomain import BOTTOM
from .functional import from_json as funexpr_from_json, to_table_functional
from .imp import State, denot_run, load_program
from .kleene import fix, run_unbounded, trace
from .options import Options


_DEFAULT_FUEL = 10000
_DEFAULT_GUARD = 100000
_DEFAULT_FORMAT = "human"
_DEFAULT_VERBOSITY = 0

EXIT_VALUE = 0
EXIT_FAULT = 1
EXIT_BOTTOM = 2
EXIT_CHECK_FAILED = 3

subcommands = ("run", "trace", "fix", "check")
formats = ("human", "json")


class UsageException(Exception):
    def __init__(self, s=''):
        super().__init__(s)


@dataclass(frozen=True)
class CliConfig:
    "One parsed command line."
    subcommand: str
    source: str
    fuel: int = _DEFAULT_FUEL
    guard: int = _DEFAULT_GUARD
    input: Optional[int] = None
    state: Optional[str] = None
    format: str = _DEFAULT_FORMAT
    domain: Optional[Tuple[int, ...]] = None
    clip: Optional[Tuple[int, int]] = None
    verbosity: int = _DEFAULT_VERBOSITY
    fuel_specified: bool = False

    def __post_init__(self):
        if self.subcommand not in subcommands:
            raise ValueError(f"unknown command {self.subcommand!r}")
        if self.fuel < 0:
            raise ValueError(f"fuel must be >= 0, got {self.fuel}")
        if self.guard < 1:
            raise ValueError(f"guard must be >= 1, got {self.guard}")
        if self.format not in formats:
            raise ValueError(f"format must be one of {', '.join(formats)}, got {self.format!r}")
        if (self.subcommand in ("trace", "fix")) and (self.input is None):
            raise ValueError(f"{self.subcommand} needs --input")
        if (self.clip is not None) and (self.clip[0] > self.clip[1]):
            raise ValueError(f"clip {self.clip[0]}..{self.clip[1]} is empty")


def _dumps(o):
    return json.dumps(o, separators=(',', ':'))


def _render(p):
    return "bottom" if p is BOTTOM else str(p.value)


def _read_source(source):
    "source is either inline JSON text or the path to a file containing it."
    text = source.strip()
    if text[:1] in ('[', '{'):
        return json.loads(text)
    path = pathlib.Path(source)
    if not path.is_file():
        raise UsageException(f"invalid file specified: {path}")
    with path.open("rt", encoding="utf-8") as f:
        return json.load(f)


def _read_state(state):
    if state is None:
        return State()
    if state.strip()[:1] == '{':
        o = json.loads(state)
    else:
        with open(state, "rt", encoding="utf-8") as f:
            o = json.load(f)
    return State.from_json(o)


def cmd_run(config, options, print):
    path = pathlib.Path(config.source)
    if not path.is_file():
        raise UsageException(f"invalid file specified: {path}")
    c = load_program(path)
    s = _read_state(config.state)
    result = denot_run(c, s, config.fuel, options=options)
    if config.format == "json":
        print(_dumps({"result": None if result is BOTTOM else result.value.to_json(), "fuel": config.fuel}))
    elif result is BOTTOM:
        print(f"no result within fuel {config.fuel}")
    else:
        print(_dumps(result.value.to_json()))
    return EXIT_BOTTOM if result is BOTTOM else EXIT_VALUE


def cmd_trace(config, options, print):
    e = funexpr_from_json(_read_source(config.source))
    t = trace(e, config.fuel, config.input, options=options)
    if config.format == "json":
        print(_dumps(t.to_json()))
    else:
        for n, p in enumerate(t.samples):
            print(f"F^{n}(bottom)({t.input}) = {_render(p)}")
        if t.stabilized_at is None:
            print(f"no result within fuel {config.fuel}")
        else:
            print(f"stabilized at {t.stabilized_at}")
    return EXIT_BOTTOM if t.stabilized_at is None else EXIT_VALUE


def cmd_fix(config, options, print):
    e = funexpr_from_json(_read_source(config.source))
    outcome = fix(e, config.fuel, config.input, options=options)
    try:
        unbounded = run_unbounded(e, config.input, config.guard)
        exceeded = None
    except GuardExceeded as error:
        unbounded = None
        exceeded = error

    if config.format == "json":
        d = outcome.to_json()
        d["unbounded"] = None if unbounded is None else unbounded.value
        d["guard_exceeded"] = exceeded is not None
        print(_dumps(d))
    else:
        if outcome.result is BOTTOM:
            print(f"no result within fuel {config.fuel}")
        else:
            print(f"{outcome.result.value} (witness {outcome.witness})")
        if exceeded is not None:
            print(f"note: unbounded run exceeded the guard of {config.guard}")
        else:
            print(f"unbounded run: {unbounded.value}")
    return EXIT_BOTTOM if outcome.result is BOTTOM else EXIT_VALUE


def cmd_check(config, options, print):
    o = _read_source(config.source)
    if isinstance(o, dict):
        if (config.domain is not None) or (config.clip is not None):
            raise UsageException("--domain and --clip don't apply to a functional graph")
        functional, space = graph_functional_from_json(o)
    else:
        if (config.domain is None) or (config.clip is None):
            raise UsageException("checking a FunExpr needs both --domain and --clip")
        e = funexpr_from_json(o)
        lo, hi = config.clip
        codomain = range(lo, hi + 1)
        space = FiniteFunSpace(config.domain, codomain)
        functional = to_table_functional(e, config.domain, codomain)

    n_max = config.fuel if config.fuel_specified else len(space)
    reports = check_all(functional, space, n_max, options=options)
    passed = all(r.passed for r in reports)

    if config.format == "json":
        print(_dumps({
            "verdict": "pass" if passed else "fail",
            "space_size": len(space),
            "checks": [r.to_json() for r in reports],
            }))
    else:
        for r in reports:
            if r.passed:
                print(f"{r.check}: pass")
            else:
                print(f"{r.check}: FAIL")
                print(f"    {r.detail}")
    return EXIT_VALUE if passed else EXIT_CHECK_FAILED


commands = {
    "run": cmd_run,
    "trace": cmd_trace,
    "fix": cmd_fix,
    "check": cmd_check,
    }


def main(argv, print=builtins.print, eprint=None):
    """
    Runs one command line and returns the exit status.
    Results go to print, diagnostics go to eprint (standard error
    by default).  Raises UsageException for a bad command line.
    """
    if eprint is None: # pragma: no cover
        def eprint(*a, sep=" ", end="\n"):
            builtins.print(*a, sep=sep, end=end, file=sys.stderr)

    if not argv:
        raise UsageException()

    argi = iter(argv)

    positional = []
    extraneous_args = []
    allow_options = True

    uninitialized = object()
    cmdline_kwargs = {}

    def process_option(key, arg, test, cast, long_option=None, short_option=None):
        description = key.replace("_", " ")

        if long_option is None:
            long_option = '--' + key.replace('_', '-')

        if short_option is None:
            short_option = long_option[1:3]

        if arg.startswith(short_option + "=") or arg.startswith(long_option + "="):
            value = arg.partition('=')[2]
        elif arg in (short_option, long_option):
            try:
                value = next(argi)
            except StopIteration:
                raise UsageException(f"no value supplied for {arg}")
        else:
            return False

        existing_value = cmdline_kwargs.get(key, uninitialized)
        if existing_value is not uninitialized:
            raise UsageException(f"{description} specified twice")
        if test and (not test(value)):
            raise UsageException(f"illegal value {value!r} for {description}")

        cmdline_kwargs[key] = cast(value)
        return True

    def test_int(s):
        try:
            int(s)
            return True
        except ValueError:
            return False

    def process_option_int(key, arg, long_option=None, short_option=None):
        return process_option(key, arg,
            test_int, int,
            long_option=long_option, short_option=short_option,
            )

    def test_domain(s):
        fields = s.split(",")
        return all(test_int(_) for _ in fields) and (len(set(int(_) for _ in fields)) == len(fields))

    def cast_domain(s):
        return tuple(int(_) for _ in s.split(","))

    def test_clip(s):
        lo, dots, hi = s.partition("..")
        return bool(dots) and test_int(lo) and test_int(hi)

    def cast_clip(s):
        lo, _, hi = s.partition("..")
        return (int(lo), int(hi))

    for arg in argi:
        if allow_options:
            if process_option_int('fuel', arg):
                continue

            if process_option_int('guard', arg):
                continue

            if process_option_int('input', arg, "--input", "-x"):
                continue

            if process_option('state', arg, None, str):
                continue

            if process_option('format', arg, formats.__contains__, str, "--format", "-F"):
                continue

            if process_option('domain', arg, test_domain, cast_domain):
                continue

            if process_option('clip', arg, test_clip, cast_clip):
                continue

            if arg in ("-v", "--verbose"):
                cmdline_kwargs['verbosity'] = cmdline_kwargs.get('verbosity', 0) + 1
                continue

            if arg == "--":
                allow_options = False
                continue

            if arg.startswith('-') and not test_int(arg):
                raise UsageException(f"unknown option {arg}")

        if len(positional) < 2:
            positional.append(arg)
        else:
            extraneous_args.append(arg)

    if extraneous_args:
        raise UsageException("too many arguments: " + " ".join(extraneous_args))
    if not positional:
        raise UsageException("no command specified.")
    subcommand = positional[0]
    if subcommand not in commands:
        raise UsageException(f"unknown command {subcommand!r}")
    if len(positional) < 2:
        raise UsageException(f"{subcommand}: no source specified.")

    if ('state' in cmdline_kwargs) and (subcommand != "run"):
        raise UsageException("--state only applies to run")
    if ('guard' in cmdline_kwargs) and (subcommand != "fix"):
        raise UsageException("--guard only applies to fix")

    try:
        config = CliConfig(subcommand, positional[1], fuel_specified='fuel' in cmdline_kwargs, **cmdline_kwargs)
    except ValueError as e:
        raise UsageException(str(e))

    options = Options(print=eprint, verbosity=config.verbosity)

    try:
        return commands[subcommand](config, options, print)
    except UsageException:
        raise
    except Exception as e:
        name = e.__class__.__name__
        eprint(f"{name}: {e}")
        return EXIT_FAULT


def main_with_usage(argv=None, print=builtins.print, eprint=None):
    if argv is None:
        argv = sys.argv[1:]
    if eprint is None: # pragma: no cover
        def eprint(*a, sep=" ", end="\n"):
            builtins.print(*a, sep=sep, end=end, file=sys.stderr)
    try:
        return main(argv, print=print, eprint=eprint)
    except UsageException as e:
        s = str(e)
        if s:
            eprint(s)
            eprint()
        eprint(f'''
usage: tarskifix <command> [options] <source>

Computes least fixpoints by bounded Kleene iteration, and runs IMP
programs whose while loops are defined that way.

Commands:

    run <program.imp>

        Runs an IMP program and prints the final state.

    trace <funexpr>

        Prints the iterates F^0(bottom)(x) ... F^fuel(bottom)(x).

    fix <funexpr>

        Prints the fixpoint at x and its witness, then runs the
        unbounded recursive realization under the guard.

    check <graph.json | funexpr>

        Checks monotonicity, continuity, that the iterates form a
        chain, and that they stabilize on the least fixpoint.

A funexpr is a JSON S-expression, either inline or in a file.
A graph is a JSON object {{"domain", "codomain", "graph"}}.

Options:

    -f|--fuel <n>

        Iterations allowed, default is {_DEFAULT_FUEL}.  For check, the
        number of iterates examined, default is the size of the space.

    -g|--guard <n>

        Recursion depth allowed by fix's unbounded run,
        default is {_DEFAULT_GUARD}.

    -x|--input <x>

        The integer input, required by trace and fix.

    -s|--state <json>

        The initial state for run: inline JSON or a path to a
        JSON file.  The default is the empty state.

    -F|--format <format>

        Either 'human' or 'json', default is {_DEFAULT_FORMAT!r}.

    -d|--domain <a,b,c>
    -c|--clip <lo..hi>

        The finite space for checking a funexpr: its domain,
        and the range of integers allowed as results.

    -v|--verbose

        Increments verbosity, default is {_DEFAULT_VERBOSITY}.
        Can be specified more than once.  Diagnostics go to
        standard error.

'''.strip() + "\n")

        return EXIT_FAULT
