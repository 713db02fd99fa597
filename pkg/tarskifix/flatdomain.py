#!/usr/bin/env python3

"""
The lifted flat domain V_⊥ and the pointwise order on finite
function tables A → B_⊥.

A Partial is either BOTTOM (no result: the computation doesn't
terminate) or Value(v).  The order is the flat one: BOTTOM is
below everything, and distinct Values are incomparable.

V must support ==.  Stabilization detection and the antisymmetry
checks can't work without it.
"""

__all__ = [
    'apply_strict',
    'BOTTOM',
    'Bottom',
    'bottom_table',
    'chain_lub',
    'cond',
    'FiniteFunTable',
    'fun_leq',
    'is_ascending',
    'is_bottom',
    'leq',
    'partial_from_json',
    'partial_to_json',
    'table_lub',
    'Value',
    ]

from dataclasses import dataclass
from typing import Generic, TypeVar, Union

from .errors import DomainMismatch, NotAChain, NotInDomain


V = TypeVar('V')


class Bottom:
    """
    The least element of a lifted domain.  There's only one;
    Bottom() always returns BOTTOM.
    """
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "BOTTOM"

    def __reduce__(self): # pragma: no cover
        return (Bottom, ())

BOTTOM = Bottom()


@dataclass(frozen=True)
class Value(Generic[V]):
    value: V

    def __repr__(self):
        return f"Value({self.value!r})"


Partial = Union[Bottom, Value]


def is_bottom(p):
    return p is BOTTOM


def leq(a, b):
    "The flat order: true iff a is BOTTOM or a == b."
    return (a is BOTTOM) or (a == b)


def is_ascending(prefix):
    "True iff leq holds between every adjacent pair.  [] is ascending."
    return all(leq(a, b) for a, b in zip(prefix, prefix[1:]))


def chain_lub(seq, horizon):
    """
    The least upper bound of the chain seq(0), seq(1), ... seq(horizon).

    seq is either a callable n -> Partial or a sequence.  Returns the
    first Value seen within the horizon, or BOTTOM.  In a flat domain
    a chain can't change once it has a Value, so a Value answer is
    the true lub; a BOTTOM answer only covers indices up to horizon.

    Raises NotAChain if two indices hold different Values, or a Value
    is followed by BOTTOM.
    """
    if not callable(seq):
        if len(seq) <= horizon:
            raise ValueError(f"horizon {horizon} needs {horizon + 1} elements, got {len(seq)}")
        seq = seq.__getitem__
    found = BOTTOM
    found_at = None
    for n in range(horizon + 1):
        p = seq(n)
        if p is BOTTOM:
            if found is not BOTTOM:
                raise NotAChain(f"index {n} is BOTTOM after {found!r} at index {found_at}", n)
            continue
        if found is BOTTOM:
            found = p
            found_at = n
            continue
        if p != found:
            raise NotAChain(f"index {n} holds {p!r} but index {found_at} holds {found!r}", n)
    return found


#
# The two building blocks for continuous functionals.
# cond is a test on a possibly-undefined boolean, apply_strict is
# call-by-value application: an undefined argument (or an undefined
# function) makes the whole application undefined.
#

def cond(t, v1, v2):
    """
    if t then v1 else v2.  A branch may be a zero-argument callable,
    called only if it's selected; BOTTOM and Value aren't callable.
    """
    if t is BOTTOM:
        return BOTTOM
    v = v1 if t.value else v2
    return v() if callable(v) else v

def apply_strict(f, v):
    if (v is BOTTOM) or (f is BOTTOM):
        return BOTTOM
    return f.value(v.value)


def partial_to_json(p):
    "BOTTOM encodes as None (JSON null)."
    return None if p is BOTTOM else p.value

def partial_from_json(o):
    return BOTTOM if o is None else Value(o)


class FiniteFunTable:
    """
    An element of A → B_⊥ for a small finite A.

    domain is a tuple of distinct A values, in a fixed order; entries
    holds one Partial per domain element, in the same order.  Tables
    are immutable and hashable, so they can be dict keys and set
    members.

    Looking up an element outside the domain raises NotInDomain.
    """

    __slots__ = ('domain', 'entries', '_index', '_hash')

    def __init__(self, domain, entries):
        domain = tuple(domain)
        entries = tuple(entries)
        if len(domain) != len(entries):
            raise ValueError(f"domain has {len(domain)} elements but there are {len(entries)} entries")
        index = {a: i for i, a in enumerate(domain)}
        if len(index) != len(domain):
            raise ValueError(f"domain {list(domain)} has duplicates")
        for e in entries:
            if not ((e is BOTTOM) or isinstance(e, Value)):
                raise TypeError(f"table entries must be BOTTOM or Value, not {e!r}")
        object.__setattr__(self, 'domain', domain)
        object.__setattr__(self, 'entries', entries)
        object.__setattr__(self, '_index', index)
        object.__setattr__(self, '_hash', hash((domain, entries)))

    def __setattr__(self, name, value): # pragma: no cover
        raise AttributeError("FiniteFunTable is immutable")

    @classmethod
    def from_mapping(cls, domain, mapping):
        """
        Builds a table over domain.  Elements missing from mapping
        are BOTTOM; plain values in mapping are wrapped in Value.
        """
        entries = []
        for a in domain:
            e = mapping.get(a, BOTTOM)
            if not ((e is BOTTOM) or isinstance(e, Value)):
                e = Value(e)
            entries.append(e)
        return cls(domain, entries)

    def __getitem__(self, a):
        i = self._index.get(a)
        if i is None:
            raise NotInDomain(a, self.domain)
        return self.entries[i]

    def __call__(self, a):
        return self[a]

    def __contains__(self, a):
        return a in self._index

    def __iter__(self):
        return iter(self.domain)

    def __len__(self):
        return len(self.domain)

    def items(self):
        return zip(self.domain, self.entries)

    def replace(self, a, p):
        "Returns a copy of this table with a mapped to p."
        i = self._index.get(a)
        if i is None:
            raise NotInDomain(a, self.domain)
        entries = list(self.entries)
        entries[i] = p
        return FiniteFunTable(self.domain, entries)

    def is_bottom(self):
        return all(e is BOTTOM for e in self.entries)

    def is_total(self):
        return all(e is not BOTTOM for e in self.entries)

    def __eq__(self, other):
        if not isinstance(other, FiniteFunTable):
            return NotImplemented
        return (self.domain == other.domain) and (self.entries == other.entries)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        contents = ", ".join(f"{a!r}: {partial_to_json(e)!r}" for a, e in self.items())
        return f"FiniteFunTable({{{contents}}})"

    def to_json(self):
        return {
            "domain": list(self.domain),
            "entries": {str(a): partial_to_json(e) for a, e in self.items()},
            }

    @classmethod
    def from_json(cls, o):
        """
        Inverse of to_json.  Entry keys are matched against str(a)
        for every a in the domain; a missing key is an error, not BOTTOM.
        """
        if not isinstance(o, dict):
            raise ValueError(f"a table must be a JSON object, not {o!r}")
        try:
            domain = o["domain"]
            entries = o["entries"]
        except KeyError as e:
            raise ValueError(f"table is missing the {e.args[0]!r} field")
        if not (isinstance(domain, list) and isinstance(entries, dict)):
            raise ValueError("table 'domain' must be a list and 'entries' an object")
        keys = [str(a) for a in domain]
        unknown = set(entries) - set(keys)
        if unknown:
            raise ValueError(f"table has entries for elements outside its domain: {sorted(unknown)}")
        values = []
        for key in keys:
            if key not in entries:
                raise ValueError(f"table has no entry for domain element {key!r}")
            values.append(partial_from_json(entries[key]))
        return cls(domain, values)


def bottom_table(domain):
    "The everywhere-BOTTOM table over domain."
    domain = tuple(domain)
    return FiniteFunTable(domain, (BOTTOM,) * len(domain))


def fun_leq(f, g):
    "The pointwise order: f(x) ⊑ g(x) for every x in the (shared) domain."
    if f.domain != g.domain:
        raise DomainMismatch("tables have different domains", f.domain, g.domain)
    return all(leq(a, b) for a, b in zip(f.entries, g.entries))


def table_lub(tables):
    """
    The pointwise least upper bound of an ascending list of tables.
    Raises NotAChain if some coordinate isn't a chain.
    """
    tables = list(tables)
    if not tables:
        raise ValueError("no tables")
    domain = tables[0].domain
    for t in tables:
        if t.domain != domain:
            raise DomainMismatch("tables have different domains", domain, t.domain)
    horizon = len(tables) - 1
    entries = [chain_lub([t.entries[i] for t in tables], horizon) for i in range(len(domain))]
    return FiniteFunTable(domain, entries)
