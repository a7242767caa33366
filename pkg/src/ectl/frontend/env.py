"""Resolution of language annotations to automata."""
from __future__ import annotations

from .. import automata
from ..automata.library import builtin
from ..checker import DEFAULT_CAP
from ..errors import ValidationError
from ..logic import Lang


class Environment:
    """Named automata plus a cache of derived ones.

    A bracketed name resolves, in order, to a loaded automaton, an action
    letter (the one-letter language ``{name}``), or a builtin from
    :mod:`ectl.automata.library`.
    """

    def __init__(self, alphabet=(), automata_=(), cap=DEFAULT_CAP):
        self.alphabet = frozenset(alphabet)
        self.cap = cap
        self.named = {}
        self._cache = {}
        for aut in automata_:
            self.add(aut)

    def add(self, aut):
        if aut.name in self.named:
            raise ValidationError(f"automaton name {aut.name!r} is defined twice")
        self.named[aut.name] = aut

    def cached(self, key, thunk):
        if key not in self._cache:
            self._cache[key] = thunk()
        return self._cache[key]

    def lookup(self, name, expect=None):
        if name in self.named:
            aut = self.named[name]
        elif name in self.alphabet and expect is None:
            aut = self.cached(("letter", name), lambda: automata.letters_automaton(
                {name}, self.alphabet, name="{" + name + "}"))
        else:
            aut = builtin(name)
            if aut is None:
                raise ValidationError(f"unknown automaton or letter {name!r}")
        if expect is not None and aut.kind != expect:
            raise ValidationError(f"automaton {name!r} is a {aut.kind}, not a {expect}")
        return aut

    def resolve(self, lang: Lang):
        if lang.kind == "sigma":
            return self.cached(("Sigma",), lambda: automata.sigma_automaton(self.alphabet))
        if lang.kind == "sigma_star":
            return self.cached(("Sigma*",), lambda: automata.sigma_star_automaton(self.alphabet))
        if lang.kind == "name":
            return self.lookup(lang.text, lang.expect)
        if lang.kind == "regex":
            return self.cached(("re", lang.text), lambda: automata.regex_to_nfa(lang.text, self.alphabet))
        if lang.kind == "complement":
            return self.cached(("~", lang.text), lambda: self._complement(lang.text))
        if lang.kind == "step":
            inner = self.resolve(lang.inner)
            return self.cached(("step", inner.name), lambda: automata.restrict_to_single_letters(
                inner, self.alphabet))
        raise ValidationError(f"unknown language reference {lang!r}")

    def _complement(self, name):
        aut = self.lookup(name)
        if aut.kind == "pda":
            raise ValidationError(f"cannot complement nondeterministic pushdown automaton {name!r}")
        det = automata.determinize(aut, cap=self.cap)
        return automata.complement(automata.complete(automata.with_letters(det, self.alphabet)))
