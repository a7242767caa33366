"""Formulas of CTL with automaton-annotated until and release.

The surface syntax has the full set of path operators; :func:`desugar`
rewrites everything into the core ``Prop, Const, Not, And, Or`` plus
existential ``Until``/``Release``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .automata import automaton_depth, size as automaton_size
from .errors import UndecidableError


@dataclass(frozen=True)
class Lang:
    """Reference to the language annotating a temporal operator.

    ``kind`` is one of ``name`` (an automaton looked up in the environment,
    optionally asserting its class via ``expect``), ``regex``, ``complement``
    (of a named automaton), ``sigma`` (one step), ``sigma_star`` (no
    constraint) or ``step`` (the one-letter words of ``inner``).
    """

    kind: str
    text: str = ""
    expect: str | None = None
    inner: "Lang | None" = None

    def render(self, default=None) -> str:
        if self == default:
            return ""
        if self.kind == "name":
            return f"[{self.expect}:{self.text}]" if self.expect else f"[{self.text}]"
        if self.kind == "complement":
            return f"[~{self.text}]"
        if self.kind == "regex":
            return f"[re:{self.text}]"
        if self.kind == "sigma":
            return "[Sigma]"
        if self.kind == "sigma_star":
            return "[Sigma*]"
        return f"[step:{self.inner.render()[1:-1]}]"


SIGMA = Lang("sigma")
SIGMA_STAR = Lang("sigma_star")


def step(lang: Lang) -> Lang:
    """The one-letter words of ``lang``."""
    if lang in (SIGMA, SIGMA_STAR):
        return SIGMA
    return Lang("step", inner=lang)


class Formula:
    """Base class; subclasses are frozen dataclasses, so structurally equal
    formulas are equal and hash alike."""

    def children(self) -> tuple:
        return ()

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Prop(Formula):
    name: str


@dataclass(frozen=True)
class Const(Formula):
    value: bool


TT = Const(True)
FF = Const(False)


@dataclass(frozen=True)
class Not(Formula):
    body: Formula

    def children(self):
        return (self.body,)


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Until(Formula):
    path: str
    left: Formula
    lang: Lang
    right: Formula

    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Release(Formula):
    path: str
    left: Formula
    lang: Lang
    right: Formula

    def children(self):
        return (self.left, self.right)


UNARY_OPS = ("EF", "AF", "EG", "AG", "EX", "AX")


@dataclass(frozen=True)
class Unary(Formula):
    """``EF, AF, EG, AG, EX, AX`` with their annotation."""

    op: str
    lang: Lang
    body: Formula

    def __post_init__(self):
        if self.op not in UNARY_OPS:
            raise ValueError(f"unknown temporal operator {self.op!r}")

    def children(self):
        return (self.body,)


def EU(left, lang, right):
    return Until("E", left, lang, right)


def AU(left, lang, right):
    return Until("A", left, lang, right)


def ER(left, lang, right):
    return Release("E", left, lang, right)


def AR(left, lang, right):
    return Release("A", left, lang, right)


def EF(lang, body):
    return Unary("EF", lang, body)


def AF(lang, body):
    return Unary("AF", lang, body)


def EG(lang, body):
    return Unary("EG", lang, body)


def AG(lang, body):
    return Unary("AG", lang, body)


def EX(lang, body):
    return Unary("EX", lang, body)


def AX(lang, body):
    return Unary("AX", lang, body)


TEMPORAL = (Until, Release, Unary)


def default_lang(f) -> Lang:
    return SIGMA if isinstance(f, Unary) and f.op in ("EX", "AX") else SIGMA_STAR


# --------------------------------------------------------------------------
# rendering

_PREC = {Implies: 1, Or: 2, And: 3}


def to_text(f: Formula) -> str:
    """Concrete syntax accepted by the formula parser."""
    return _render(f, 0)


def _render(f, outer):
    if isinstance(f, Prop):
        return f.name
    if isinstance(f, Const):
        return "tt" if f.value else "ff"
    if isinstance(f, Not):
        return "!" + _render(f.body, 4)
    if type(f) in _PREC:
        prec = _PREC[type(f)]
        op = {Implies: "->", Or: "|", And: "&"}[type(f)]
        text = f"{_render(f.left, prec + 1)} {op} {_render(f.right, prec)}"
        return f"({text})" if prec < outer else text
    if isinstance(f, (Until, Release)):
        op = "U" if isinstance(f, Until) else "R"
        lang = f.lang.render(SIGMA_STAR)
        return f"{f.path}({_render(f.left, 0)} {op}{lang} {_render(f.right, 0)})"
    if isinstance(f, Unary):
        return f"{f.op}{f.lang.render(default_lang(f))} {_render(f.body, 4)}"
    raise TypeError(f"not a formula: {f!r}")


# --------------------------------------------------------------------------
# desugaring

def neg(f: Formula) -> Formula:
    if isinstance(f, Not):
        return f.body
    if isinstance(f, Const):
        return Const(not f.value)
    return Not(f)


def desugar(f: Formula) -> Formula:
    """Rewrite into the core: universal operators through their duals,
    F/G through until and release, implication through disjunction.

    ``EX[L] p`` is ``E(tt U[L'] p)`` with ``L'`` the one-letter words of
    ``L``, and ``AX[L] p`` is its dual ``!EX[L] !p``, so ``AX ff`` holds
    exactly at states without an ``L``-step.
    """
    if isinstance(f, (Prop, Const)):
        return f
    if isinstance(f, Not):
        return neg(desugar(f.body))
    if isinstance(f, And):
        return And(desugar(f.left), desugar(f.right))
    if isinstance(f, Or):
        return Or(desugar(f.left), desugar(f.right))
    if isinstance(f, Implies):
        return Or(neg(desugar(f.left)), desugar(f.right))
    if isinstance(f, Until):
        left, right = desugar(f.left), desugar(f.right)
        if f.path == "E":
            return Until("E", left, f.lang, right)
        return neg(Release("E", neg(left), f.lang, neg(right)))
    if isinstance(f, Release):
        left, right = desugar(f.left), desugar(f.right)
        if f.path == "E":
            return Release("E", left, f.lang, right)
        return neg(Until("E", neg(left), f.lang, neg(right)))
    if isinstance(f, Unary):
        path, kind = f.op[0], f.op[1]
        lang = f.lang
        if kind == "X":
            # AX holds vacuously where no step exists: the dual of EX
            body = desugar(f.body)
            if path == "E":
                return Until("E", TT, step(lang), body)
            return neg(Until("E", TT, step(lang), neg(body)))
        if kind == "F":
            return desugar(Until(path, TT, lang, f.body))
        return desugar(Release(path, FF, lang, f.body))
    raise TypeError(f"not a formula: {f!r}")


def is_core(f: Formula) -> bool:
    if isinstance(f, (Implies, Unary)):
        return False
    if isinstance(f, (Until, Release)) and f.path != "E":
        return False
    return all(is_core(c) for c in f.children())


def subformulas(f: Formula) -> set:
    """Unique subformulas of the formula as written.  Derived operators count
    their implicit constant operand (``tt`` for F and X, ``ff`` for G)."""
    out = set()

    def walk(g):
        out.add(g)
        if isinstance(g, Unary):
            out.add(FF if g.op[1] == "G" else TT)
        for c in g.children():
            walk(c)

    walk(f)
    return out


def post_order(f: Formula) -> list:
    """Unique subformulas, children before parents."""
    seen = {}

    def walk(g):
        if g in seen:
            return
        for c in g.children():
            walk(c)
        seen[g] = None

    walk(f)
    return list(seen)


def languages(f: Formula) -> list:
    """Annotations of every temporal operator, defaults included, in order."""
    out = []
    for g in post_order(f):
        if isinstance(g, TEMPORAL) and g.lang not in out:
            out.append(g.lang)
    return out


def formula_size(f: Formula, env) -> int:
    """Unique subformulas plus states and rules of every distinct automaton."""
    automata = {}
    for lang in languages(f):
        aut = env.resolve(lang)
        automata.setdefault(aut.name, aut)
    return len(subformulas(f)) + sum(automaton_size(a) for a in automata.values())


def temporal_depth(f: Formula) -> int:
    below = max((temporal_depth(c) for c in f.children()), default=0)
    return below + 1 if isinstance(f, TEMPORAL) else below


def automata_depth(f: Formula, env) -> int:
    return max((automaton_depth(env.resolve(lang)) for lang in languages(f)), default=0)


# --------------------------------------------------------------------------
# dispatch

@dataclass(frozen=True)
class PlanStep:
    node: Formula
    engine: str          # "until" or "release"
    automaton: str
    kind: str
    transform: str       # "none", "determinize_nfa", "determinize_vpa"


def classify(core: Formula, env) -> list:
    """Decide how each temporal node of a core formula is checked.

    Until nodes take any automaton.  Release nodes need a deterministic
    automaton: NFAs and VPAs are determinized first; a nondeterministic PDA
    on a release is undecidable and raises :class:`UndecidableError`.
    """
    plan = []
    for node in post_order(core):
        if isinstance(node, Until):
            aut = env.resolve(node.lang)
            plan.append(PlanStep(node, "until", aut.name, aut.kind, "none"))
        elif isinstance(node, Release):
            aut = env.resolve(node.lang)
            if aut.kind == "pda":
                raise UndecidableError(
                    f"undecidable combination in {to_text(node)}: release annotated with "
                    f"nondeterministic pushdown automaton {aut.name} (EG over PDA languages "
                    f"is undecidable)", subformula=node)
            transform = {"nfa": "determinize_nfa", "vpa": "determinize_vpa"}.get(aut.kind, "none")
            plan.append(PlanStep(node, "release", aut.name, aut.kind, transform))
        elif isinstance(node, (Unary, Implies)) or (isinstance(node, TEMPORAL) and node.path != "E"):
            raise ValueError("classify expects a desugared formula")
    return plan
