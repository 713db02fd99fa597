#!/usr/bin/env python3

"""
Brute-force verification of the least fixpoint theorem on finite
flat function spaces.

A FiniteFunSpace is every table A → B_⊥ for small finite A and B:
(|B|+1)^|A| of them.  A functional here is any callable mapping a
table of the space to a table of the space.  The checks enumerate
the whole space, so they prove (rather than sample) their claims,
for that one space and that one functional:

  * check_monotone:      f ⊑ g implies F(f) ⊑ F(g)
  * check_continuous:    F preserves the lub of every maximal chain
  * iterates_are_chain:  F^0(⊥) ⊑ F^1(⊥) ⊑ ... ⊑ F^n(⊥)
  * check_tarski:        the iterates stabilize, on the least fixpoint

Every check returns a CheckReport.  A failing report always carries
a counterexample you can re-check by hand, and it's always the first
counterexample in enumeration order, so reports are deterministic.
"""

__all__ = [
    'check_all',
    'check_continuous',
    'check_monotone',
    'check_tarski',
    'CheckReport',
    'constant_functional',
    'FiniteFunSpace',
    'flip_functional',
    'graph_functional_from_json',
    'GraphFunctional',
    'identity_functional',
    'iterates_are_chain',
    'least_fixpoint_bruteforce',
    'maximal_chains',
    'random_monotone_functional',
    ]

from dataclasses import dataclass
import itertools
from typing import Optional

from .errors import IncompleteGraph, NoFixpoint, NoLeast, NotAChain
from .flatdomain import BOTTOM, FiniteFunTable, Value, bottom_table, fun_leq, table_lub
from .options import _options


_DEFAULT_MAXIMUM_SPACE_SIZE = 256


class FiniteFunSpace:
    """
    All the tables domain → codomain_⊥, enumerated in a fixed order.

    elements[0] is the everywhere-BOTTOM table.  The enumeration is
    itertools.product over (BOTTOM, codomain...) per domain element,
    so it's duplicate-free and complete.

    Spaces bigger than maximum_size tables are refused; the checks
    are quadratic in the number of tables.
    """

    def __init__(self, domain, codomain, *, maximum_size=_DEFAULT_MAXIMUM_SPACE_SIZE):
        domain = tuple(domain)
        codomain = tuple(codomain)
        if not domain:
            raise ValueError("domain must not be empty")
        if len(set(domain)) != len(domain):
            raise ValueError(f"domain {list(domain)} has duplicates")
        if len(set(codomain)) != len(codomain):
            raise ValueError(f"codomain {list(codomain)} has duplicates")
        size = (len(codomain) + 1) ** len(domain)
        if size > maximum_size:
            raise ValueError(f"space of {size} tables is larger than the maximum of {maximum_size}")

        self.domain = domain
        self.codomain = codomain
        choices = (BOTTOM,) + tuple(Value(b) for b in codomain)
        self.elements = tuple(FiniteFunTable(domain, entries) for entries in itertools.product(choices, repeat=len(domain)))
        self.index = {t: i for i, t in enumerate(self.elements)}
        assert self.elements[0] == bottom_table(domain)

        self._order_pairs = None
        self._up_sets = None

    def __repr__(self): # pragma: no cover
        return f"<FiniteFunSpace domain={list(self.domain)} codomain={list(self.codomain)} size={len(self.elements)}>"

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, table):
        return table in self.index

    @property
    def bottom(self):
        return self.elements[0]

    def order_pairs(self):
        """
        Every (i, j) with elements[i] ⊑ elements[j], in lexicographic
        order.  Computed once per space.
        """
        if self._order_pairs is None:
            elements = self.elements
            self._order_pairs = tuple(
                (i, j)
                for i, f in enumerate(elements)
                for j, g in enumerate(elements)
                if fun_leq(f, g)
                )
        return self._order_pairs

    def up_sets(self):
        "up_sets()[i] lists the indices of every table above elements[i]."
        if self._up_sets is None:
            up_sets = [[] for _ in self.elements]
            for i, j in self.order_pairs():
                up_sets[i].append(j)
            self._up_sets = tuple(tuple(u) for u in up_sets)
        return self._up_sets

    def covers(self, table):
        "The tables directly above table: one BOTTOM entry replaced by a Value."
        for a, e in table.items():
            if e is BOTTOM:
                for b in self.codomain:
                    yield table.replace(a, Value(b))

    def images(self, functional):
        """
        Applies functional to every table, in enumeration order.
        Raises ValueError if an image isn't in the space.
        """
        images = []
        for t in self.elements:
            image = functional(t)
            if image not in self.index:
                raise ValueError(f"functional maps {t!r} to {image!r}, which isn't in the space")
            images.append(image)
        return images


@dataclass(frozen=True)
class CheckReport:
    """
    check is the name of the check, verdict is "pass" or "fail".

    counterexample_kind describes counterexample:
        "pair"     (f, g): f ⊑ g but F(f) ⋢ F(g)
        "chain"    (t0, t1, ...): a maximal chain whose lub F doesn't preserve
        "iterates" (n, u_n, u_n+1): consecutive iterates that aren't ascending
        "table"    (t,): a table the check failed on
        "tables"   (t, u): two tables that should have been equal
    """
    check: str
    verdict: str
    counterexample: Optional[tuple] = None
    counterexample_kind: Optional[str] = None
    detail: str = ""

    def __post_init__(self):
        if self.verdict not in ("pass", "fail"):
            raise ValueError(f"invalid verdict {self.verdict!r}")
        if (self.verdict == "fail") and (self.counterexample is None):
            raise ValueError("a failing report needs a counterexample")

    @property
    def passed(self):
        return self.verdict == "pass"

    def to_json(self):
        def convert(o):
            if isinstance(o, FiniteFunTable):
                return o.to_json()
            if isinstance(o, (list, tuple)):
                return [convert(_) for _ in o]
            return o
        d = {"check": self.check, "verdict": self.verdict}
        if self.counterexample is not None:
            d["counterexample"] = {
                "kind": self.counterexample_kind,
                "value": convert(self.counterexample),
                }
        if self.detail:
            d["detail"] = self.detail
        return d


def _passed(check, detail=""):
    return CheckReport(check, "pass", detail=detail)

def _failed(check, kind, counterexample, detail):
    return CheckReport(check, "fail", tuple(counterexample), kind, detail)

def _report(options, report):
    if report.passed:
        options.print(f"{report.check}: pass.")
    else:
        options.print(f"{report.check}: FAIL, {report.detail}")
    return report


def check_monotone(functional, space, *, options=None):
    options = _options(options)
    with options.heading("Monotonicity"):
        images = space.images(functional)
        elements = space.elements
        for i, j in space.order_pairs():
            if not fun_leq(images[i], images[j]):
                f = elements[i]
                g = elements[j]
                report = _failed("monotone", "pair", (f, g),
                    f"{f!r} ⊑ {g!r} but F maps them to {images[i]!r} and {images[j]!r}")
                return _report(options, report)
        return _report(options, _passed("monotone", f"checked {len(space.order_pairs())} ordered pairs"))


def maximal_chains(space):
    """
    Yields every maximal chain of the space, bottom first, by walking
    covers.  With a non-empty codomain every maximal chain has
    len(space.domain) + 1 tables.
    """
    def walk(chain):
        top = chain[-1]
        extended = False
        for t in space.covers(top):
            extended = True
            yield from walk(chain + [t])
        if not extended:
            yield tuple(chain)
    yield from walk([space.bottom])


def check_continuous(functional, space, *, options=None):
    """
    In a finite poset every chain is finite, so continuity is the
    same thing as monotonicity.  This checks both: monotonicity
    pairwise, and then, for every maximal chain, that F(top) is the
    lub of F's images of the chain.
    """
    options = _options(options)
    with options.heading("Continuity"):
        monotone = check_monotone(functional, space)
        if not monotone.passed:
            report = _failed("continuous", monotone.counterexample_kind, monotone.counterexample,
                f"not monotone: {monotone.detail}")
            return _report(options, report)
        count = 0
        for chain in maximal_chains(space):
            count += 1
            images = [functional(t) for t in chain]
            try:
                lub = table_lub(images)
            except NotAChain as e:
                report = _failed("continuous", "chain", chain, f"images of the chain aren't a chain: {e}")
                return _report(options, report)
            if lub != images[-1]:
                report = _failed("continuous", "chain", chain,
                    f"F(top) is {images[-1]!r} but the lub of the images is {lub!r}")
                return _report(options, report)
        return _report(options, _passed("continuous", f"checked {count} maximal chains"))


def _iterates(functional, space, n_max):
    u = space.bottom
    yield u
    for _ in range(n_max):
        u = functional(u)
        yield u


def iterates_are_chain(functional, space, n_max, *, options=None):
    options = _options(options)
    with options.heading("Iterates"):
        previous = None
        for n, u in enumerate(_iterates(functional, space, n_max)):
            if (previous is not None) and not fun_leq(previous, u):
                report = _failed("iterates_are_chain", "iterates", (n - 1, previous, u),
                    f"F^{n - 1}(⊥) = {previous!r} ⋢ F^{n}(⊥) = {u!r}")
                return _report(options, report)
            previous = u
        return _report(options, _passed("iterates_are_chain", f"F^0(⊥) ... F^{n_max}(⊥) ascend"))


def least_fixpoint_bruteforce(functional, space, *, options=None):
    """
    Finds every table t with F(t) = t, and returns the one below all
    the others.  Raises NoFixpoint if there are none, and NoLeast if
    none of them is below all the rest.  (Neither can happen for a
    monotone F.)
    """
    options = _options(options)
    with options.heading("Least fixpoint"):
        fixpoints = [t for t, image in zip(space.elements, space.images(functional)) if image == t]
        options.print(f"Found {len(fixpoints)} fixpoint{'s' if len(fixpoints) != 1 else ''} among {len(space)} tables.")
        if not fixpoints:
            raise NoFixpoint(f"no fixpoint among the {len(space)} tables of the space")
        for candidate in fixpoints:
            if all(fun_leq(candidate, t) for t in fixpoints):
                options.print(f"Least fixpoint is {candidate!r}.")
                return candidate
        raise NoLeast(f"none of the {len(fixpoints)} fixpoints is below all the others", fixpoints)


def check_tarski(functional, space, n_max, *, options=None):
    """
    Iterates F from ⊥ until F(u) = u, at most n_max times, and
    checks the table it stabilizes on is the brute-force least
    fixpoint.  n_max >= len(space) always suffices for monotone F:
    the iterates strictly ascend until they stop.
    """
    options = _options(options)
    with options.heading("Tarski"):
        u = space.bottom
        stable_at = None
        for n in range(n_max):
            image = functional(u)
            if image == u:
                stable_at = n
                break
            u = image
        if stable_at is None:
            report = _failed("tarski", "table", (u,), f"iterates didn't stabilize within {n_max} applications")
            return _report(options, report)
        options.print(f"Iterates stabilized after {stable_at} applications.")
        try:
            least = least_fixpoint_bruteforce(functional, space, options=options)
        except (NoFixpoint, NoLeast) as e:
            report = _failed("tarski", "table", (u,), f"{type(e).__name__}: {e}")
            return _report(options, report)
        if least != u:
            report = _failed("tarski", "tables", (u, least),
                f"iterates stabilized on {u!r} but the least fixpoint is {least!r}")
            return _report(options, report)
        return _report(options, _passed("tarski", f"stabilized on the least fixpoint after {stable_at} applications"))


def check_all(functional, space, n_max=None, *, options=None):
    "Runs all four checks; n_max defaults to the size of the space."
    if n_max is None:
        n_max = len(space)
    return [
        check_monotone(functional, space, options=options),
        check_continuous(functional, space, options=options),
        iterates_are_chain(functional, space, n_max, options=options),
        check_tarski(functional, space, n_max, options=options),
        ]


#
# Functionals.
#

class GraphFunctional:
    """
    A functional given explicitly as its graph: a dict mapping
    every table of a space to its image.
    """

    def __init__(self, graph, space=None):
        self.graph = dict(graph)
        if space is not None:
            missing = [t for t in space if t not in self.graph]
            if missing:
                raise IncompleteGraph(f"graph is missing {len(missing)} of the {len(space)} tables of the space", missing)

    def __repr__(self): # pragma: no cover
        return f"<GraphFunctional of {len(self.graph)} tables>"

    def __call__(self, table):
        try:
            return self.graph[table]
        except KeyError:
            raise IncompleteGraph(f"graph has no image for {table!r}", [table])


def graph_functional_from_json(o, *, maximum_size=_DEFAULT_MAXIMUM_SPACE_SIZE):
    """
    Loads a functional given as an explicit graph:

        {"domain": [...], "codomain": [...],
         "graph": [[input_table, output_table], ...]}

    with tables in FiniteFunTable JSON form.  Returns (functional, space).
    Raises IncompleteGraph if some table of the space has no image.
    """
    if not isinstance(o, dict):
        raise ValueError("a functional graph must be a JSON object")
    for key in ("domain", "codomain", "graph"):
        if key not in o:
            raise ValueError(f"functional graph is missing the {key!r} field")
    space = FiniteFunSpace(o["domain"], o["codomain"], maximum_size=maximum_size)
    graph = {}
    for pair in o["graph"]:
        if not (isinstance(pair, list) and len(pair) == 2):
            raise ValueError(f"graph entries must be [input, output] pairs, not {pair!r}")
        t, image = (FiniteFunTable.from_json(_) for _ in pair)
        for _ in (t, image):
            if _ not in space:
                raise ValueError(f"{_!r} isn't a table of the space")
        existing = graph.get(t)
        if (existing is not None) and (existing != image):
            raise ValueError(f"graph maps {t!r} to both {existing!r} and {image!r}")
        graph[t] = image
    return GraphFunctional(graph, space), space


def identity_functional(table):
    return table

def constant_functional(g):
    def constant(table):
        return g
    return constant

def flip_functional(space, value=None):
    """
    The standard non-monotone functional: maps ⊥ to the table that's
    value everywhere, and everything else to ⊥.  value defaults to
    the first codomain element.
    """
    if value is None:
        if not space.codomain:
            raise ValueError("flip functional needs a non-empty codomain")
        value = space.codomain[0]
    everywhere = FiniteFunTable(space.domain, (Value(value),) * len(space.domain))
    bottom = space.bottom
    def flip(table):
        return everywhere if table == bottom else bottom
    return flip


def random_monotone_functional(space, rng, *, density=0.3):
    """
    A random monotone functional on space, as a GraphFunctional.

    Built one output coordinate at a time: visit the tables in random
    order, and with probability density try to give the whole up-set
    of the table a random value at that coordinate.  Skip the attempt
    if some table in the up-set already has a different value there.
    Every region with a given value is then an up-set, which is
    exactly monotonicity into a flat domain.
    """
    elements = space.elements
    up_sets = space.up_sets()
    count = len(elements)
    columns = []
    for _ in space.domain:
        assigned = [None] * count
        order = list(range(count))
        rng.shuffle(order)
        for i in order:
            if (not space.codomain) or (rng.random() >= density):
                continue
            b = rng.choice(space.codomain)
            up = up_sets[i]
            if any(assigned[j] not in (None, b) for j in up):
                continue
            for j in up:
                assigned[j] = b
        columns.append(assigned)
    graph = {}
    for i, t in enumerate(elements):
        entries = [BOTTOM if column[i] is None else Value(column[i]) for column in columns]
        graph[t] = FiniteFunTable(space.domain, entries)
    return GraphFunctional(graph, space)
