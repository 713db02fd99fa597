#!/usr/bin/env python3

"""
Verbosity-gated output.

Nothing in tarskifix prints directly.  Operations that do real work
take an optional "options" keyword argument; with verbosity 1 or more
they describe what they're doing through options.print, grouped
under [headings].
"""

__all__ = [
    'Options',
    ]

import builtins
from contextlib import contextmanager


_DEFAULT_PRINT = None
_DEFAULT_VERBOSITY = 0


class Options:
    """
    Bundles up the verbosity and the print function.

    Headings nest: entering "Tarski check" then "monotone" prints
    "[Tarski check: monotone]" before the first line printed
    inside that heading.
    """

    def __init__(self,
        *,
        print = _DEFAULT_PRINT,
        verbosity = _DEFAULT_VERBOSITY,
        ):
        if not isinstance(verbosity, int):
            raise ValueError(f"invalid verbosity {verbosity}")

        if verbosity:
            if print is None:
                print = builtins.print
        else:
            print = None

        self._print = print
        self.verbosity = verbosity

        self.headers = []
        self.header = None
        self.last_printed_header = None
        self.printed_headings = set()
        self.ever_printed_anything = False

    def __repr__(self): # pragma: no cover
        return f"<Options verbosity={self.verbosity}>"

    @property
    def header(self):
        if self._header is None:
            self._header = ": ".join(self.headers)
        return self._header

    @header.setter
    def header(self, value):
        self._header = value

    def print(self, *a, sep=" ", end="\n"):
        if not self._print:
            return
        header = self.header
        if header and (self.last_printed_header != header):
            self.last_printed_header = header
            continued = ""
            if header not in self.printed_headings:
                self.printed_headings.add(header)
            else:
                continued = " (continued)"
            if self.ever_printed_anything:
                # print a blank line before a new heading
                self._print()
            self._print(f"[{header}{continued}]")
            self.ever_printed_anything = True
        s = " " + sep.join(str(_) for _ in a) + end
        self._print(s, end='')
        if s.strip():
            self.ever_printed_anything = True

    def detail(self, *a, sep=" ", end="\n"):
        "Like print, but only at verbosity 2 and up."
        if self.verbosity >= 2:
            self.print(*a, sep=sep, end=end)

    def enter(self, header):
        if not self._print:
            return
        self.headers.append(header)
        self.header = None

    def exit(self):
        if not self._print:
            return
        self.headers.pop()
        self.header = None

    @contextmanager
    def heading(self, header):
        self.enter(header)
        try:
            yield None
        finally:
            self.exit()


_quiet = Options()

def _options(options):
    "Returns options, or a shared silent Options if options is None."
    return _quiet if options is None else options


def _printer():
    text = []

    def text_clear():
        text.clear()

    def text_print(*a, sep=" ", end="\n"):
        text.append(sep.join(str(o) for o in a))
        text.append(end)

    def text_getvalue():
        output = "".join(text)
        text_clear()
        return output

    return text_clear, text_print, text_getvalue
