"""Witness terms: typed syntax for structural morphisms between shapes.

A term is built from named generators (associators, braidings, unitors,
distributors, absorbers, injections) instantiated at shapes, and closed under
composition, ``+``, ``*`` and copairing.  Every term has a source and a target
shape, computed by :func:`typecheck` with strict structural equality.

Text form::

    term := term ';' term          composition, diagrammatic order
          | term '+' term          SumM
          | term '*' term          ProdM
          | '[' term ',' term ']'  Copair
          | name '[' shape, ... ']'
          | '(' term ')'

``*`` binds tighter than ``+``, which binds tighter than ``;``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Sequence, Union

from .shapes import (
    CachedHash, ONE, ZERO, One, ParseError, Prod, Shape, Sum, TokenStream, Var, Zero,
    parse_shape_from, render_shape, substitute,
)

__all__ = [
    "Term", "Id", "Gen", "Comp", "SumM", "ProdM", "Copair", "MorType",
    "TypeCheckError", "NonInvertibleError", "GENERATORS", "INVERSE_NAME",
    "NON_INVERTIBLE", "typecheck", "invert", "is_invertible", "seq",
    "naturality_square", "parse_term", "render_term", "generator_names",
    "term_free_vars", "substitute_term", "generators_used",
]


class TypeCheckError(TypeError):
    """A term is ill-typed: mismatched composition, copair or arity."""


class NonInvertibleError(ValueError):
    """Raised when inverting a term built from injections or copairs."""


@dataclass(frozen=True)
class Id(CachedHash):
    shape: Shape

    def __str__(self):
        return render_term(self)


@dataclass(frozen=True)
class Gen(CachedHash):
    name: str
    args: tuple

    def __post_init__(self):
        if self.name not in GENERATORS:
            raise TypeCheckError(f"unknown generator {self.name!r}")
        arity = GENERATORS[self.name].arity
        if len(self.args) != arity:
            raise TypeCheckError(
                f"{self.name} takes {arity} shape argument(s), got {len(self.args)}")
        object.__setattr__(self, "args", tuple(self.args))

    def __str__(self):
        return render_term(self)


@dataclass(frozen=True)
class Comp(CachedHash):
    """``after`` applied after ``before``; written ``before ; after``."""

    after: "Term"
    before: "Term"

    def __str__(self):
        return render_term(self)


@dataclass(frozen=True)
class SumM(CachedHash):
    left: "Term"
    right: "Term"

    def __str__(self):
        return render_term(self)


@dataclass(frozen=True)
class ProdM(CachedHash):
    left: "Term"
    right: "Term"

    def __str__(self):
        return render_term(self)


@dataclass(frozen=True)
class Copair(CachedHash):
    left: "Term"
    right: "Term"

    def __str__(self):
        return render_term(self)


Term = Union[Id, Gen, Comp, SumM, ProdM, Copair]


class MorType(NamedTuple):
    source: Shape
    target: Shape

    def __str__(self):
        return f"{render_shape(self.source)} -> {render_shape(self.target)}"


# -- generator table ---------------------------------------------------------

_X, _Y, _Z = Var("_x"), Var("_y"), Var("_z")


class GenSpec(NamedTuple):
    params: tuple
    source: Shape
    target: Shape

    @property
    def arity(self):
        return len(self.params)

    def instantiate(self, args: Sequence[Shape]) -> MorType:
        mapping = {p.name: a for p, a in zip(self.params, args)}
        return MorType(substitute(self.source, mapping), substitute(self.target, mapping))


def _g(params, source, target):
    return GenSpec(tuple(params), source, target)


GENERATORS: dict[str, GenSpec] = {
    "aP": _g((_X, _Y, _Z), Sum(Sum(_X, _Y), _Z), Sum(_X, Sum(_Y, _Z))),
    "aT": _g((_X, _Y, _Z), Prod(Prod(_X, _Y), _Z), Prod(_X, Prod(_Y, _Z))),
    "bP": _g((_X, _Y), Sum(_X, _Y), Sum(_Y, _X)),
    "bT_over": _g((_X, _Y), Prod(_X, _Y), Prod(_Y, _X)),
    "bT_under": _g((_X, _Y), Prod(_X, _Y), Prod(_Y, _X)),
    "lP": _g((_X,), Sum(ZERO, _X), _X),
    "rP": _g((_X,), Sum(_X, ZERO), _X),
    "lT": _g((_X,), Prod(ONE, _X), _X),
    "rT": _g((_X,), Prod(_X, ONE), _X),
    "dL": _g((_X, _Y, _Z), Prod(_X, Sum(_Y, _Z)), Sum(Prod(_X, _Y), Prod(_X, _Z))),
    "dR": _g((_X, _Y, _Z), Prod(Sum(_X, _Y), _Z), Sum(Prod(_X, _Z), Prod(_Y, _Z))),
    "zL": _g((_X,), Prod(ZERO, _X), ZERO),
    "zR": _g((_X,), Prod(_X, ZERO), ZERO),
    "inl": _g((_X, _Y), _X, Sum(_X, _Y)),
    "inr": _g((_X, _Y), _Y, Sum(_X, _Y)),
}

# generators whose inverse is a separate named generator with the same arguments
_PAIRED = ("aP", "aT", "lP", "rP", "lT", "rT", "dL", "dR", "zL", "zR")
for _name in _PAIRED:
    _spec = GENERATORS[_name]
    GENERATORS[_name + "_inv"] = GenSpec(_spec.params, _spec.target, _spec.source)

INVERSE_NAME = {n: n + "_inv" for n in _PAIRED}
INVERSE_NAME.update({v: k for k, v in list(INVERSE_NAME.items())})

NON_INVERTIBLE = frozenset({"inl", "inr"})


def generator_names() -> list[str]:
    return sorted(GENERATORS)


# -- typing ------------------------------------------------------------------

@lru_cache(maxsize=1 << 16)
def typecheck(t: Term) -> MorType:
    if isinstance(t, Id):
        return MorType(t.shape, t.shape)
    if isinstance(t, Gen):
        return GENERATORS[t.name].instantiate(t.args)
    if isinstance(t, Comp):
        f, g = typecheck(t.before), typecheck(t.after)
        if f.target != g.source:
            raise TypeCheckError(
                "composition mismatch: first term ends at "
                f"{render_shape(f.target)} but second starts at {render_shape(g.source)}")
        return MorType(f.source, g.target)
    if isinstance(t, SumM):
        f, g = typecheck(t.left), typecheck(t.right)
        return MorType(Sum(f.source, g.source), Sum(f.target, g.target))
    if isinstance(t, ProdM):
        f, g = typecheck(t.left), typecheck(t.right)
        return MorType(Prod(f.source, g.source), Prod(f.target, g.target))
    if isinstance(t, Copair):
        f, g = typecheck(t.left), typecheck(t.right)
        if f.target != g.target:
            raise TypeCheckError(
                f"copair target mismatch: {render_shape(f.target)} vs {render_shape(g.target)}")
        return MorType(Sum(f.source, g.source), f.target)
    raise TypeCheckError(f"not a witness term: {t!r}")


def seq(*terms: Term) -> Term:
    """Diagrammatic composite ``t1 ; t2 ; ...`` (left-grouped)."""
    if not terms:
        raise ValueError("seq needs at least one term")
    out = terms[0]
    for t in terms[1:]:
        out = Comp(t, out)
    return out


def is_invertible(t: Term) -> bool:
    if isinstance(t, Id):
        return True
    if isinstance(t, Gen):
        return t.name not in NON_INVERTIBLE
    if isinstance(t, Copair):
        return False
    return is_invertible(_children(t)[0]) and is_invertible(_children(t)[1])


def invert(t: Term) -> Term:
    """Syntactic inverse.  Over- and under-crossings invert to each other."""
    if isinstance(t, Id):
        return t
    if isinstance(t, Comp):
        return Comp(invert(t.before), invert(t.after))
    if isinstance(t, SumM):
        return SumM(invert(t.left), invert(t.right))
    if isinstance(t, ProdM):
        return ProdM(invert(t.left), invert(t.right))
    if isinstance(t, Copair):
        raise NonInvertibleError("Copair is not invertible: injections and copairs are not isomorphisms")
    if t.name in NON_INVERTIBLE:
        raise NonInvertibleError(f"{t.name} is not invertible: injections are not isomorphisms")
    if t.name == "bP":
        return Gen("bP", t.args[::-1])
    if t.name == "bT_over":
        return Gen("bT_under", t.args[::-1])
    if t.name == "bT_under":
        return Gen("bT_over", t.args[::-1])
    return Gen(INVERSE_NAME[t.name], t.args)


def _children(t: Term) -> tuple:
    if isinstance(t, Comp):
        return (t.after, t.before)
    if isinstance(t, (SumM, ProdM, Copair)):
        return (t.left, t.right)
    return ()


def term_free_vars(t: Term) -> frozenset[str]:
    from .shapes import free_vars
    mt = typecheck(t)
    out = free_vars(mt.source) | free_vars(mt.target)
    for child in _children(t):
        out |= term_free_vars(child)
    return out


def substitute_term(t: Term, mapping) -> Term:
    """Substitute shapes for variables everywhere in ``t``."""
    if isinstance(t, Id):
        return Id(substitute(t.shape, mapping))
    if isinstance(t, Gen):
        return Gen(t.name, tuple(substitute(a, mapping) for a in t.args))
    a, b = (substitute_term(c, mapping) for c in _children(t))
    return type(t)(a, b)


def generators_used(t: Term) -> set[str]:
    if isinstance(t, Gen):
        return {t.name}
    out = set()
    for c in _children(t):
        out |= generators_used(c)
    return out


# -- naturality --------------------------------------------------------------

def _functor(schema: Shape, params, args) -> Term:
    if isinstance(schema, Var):
        for p, f in zip(params, args):
            if p == schema:
                return f
        raise TypeCheckError(f"schema variable {schema.name} has no argument")
    if isinstance(schema, (Zero, One)):
        return Id(schema)
    cls = SumM if isinstance(schema, Sum) else ProdM
    return cls(_functor(schema.left, params, args), _functor(schema.right, params, args))


def naturality_square(name: str, args: Sequence[Term]) -> tuple[Term, Term]:
    """The two composites of the naturality square of generator ``name``.

    ``args[i]`` is a term ``X_i -> Y_i`` plugged into the i-th shape slot.
    Returns ``(gen(X) ; T(args), S(args) ; gen(Y))`` where ``S``/``T`` are the
    generator's source/target shape schemas acting on terms.
    """
    if name not in GENERATORS:
        raise TypeCheckError(f"unknown generator {name!r}")
    spec = GENERATORS[name]
    if len(args) != spec.arity:
        raise TypeCheckError(f"{name} takes {spec.arity} argument(s), got {len(args)}")
    types = [typecheck(f) for f in args]
    sources = tuple(mt.source for mt in types)
    targets = tuple(mt.target for mt in types)
    lhs = Comp(_functor(spec.target, spec.params, args), Gen(name, sources))
    rhs = Comp(Gen(name, targets), _functor(spec.source, spec.params, args))
    if typecheck(lhs) != typecheck(rhs):
        raise TypeCheckError(f"naturality square for {name} does not close")
    return lhs, rhs


# -- text form ---------------------------------------------------------------

_PREC = {Comp: 0, SumM: 1, ProdM: 2}
_OPS = {Comp: " ; ", SumM: " + ", ProdM: " * "}


def render_term(t: Term, prec: int = 0) -> str:
    if isinstance(t, Id):
        return f"id[{render_shape(t.shape)}]"
    if isinstance(t, Gen):
        return f"{t.name}[{','.join(render_shape(a) for a in t.args)}]"
    if isinstance(t, Copair):
        return f"[{render_term(t.left)}, {render_term(t.right)}]"
    p = _PREC[type(t)]
    if isinstance(t, Comp):
        left, right = t.before, t.after
    else:
        left, right = t.left, t.right
    text = f"{render_term(left, p)}{_OPS[type(t)]}{render_term(right, p + 1)}"
    return text if p >= prec else f"({text})"


def parse_term(text: str) -> Term:
    ts = TokenStream(text)
    t = _parse_seq(ts)
    ts.done()
    typecheck(t)
    return t


def _parse_seq(ts):
    t = _parse_sum(ts)
    while ts.peek() == ";":
        ts.next()
        t = Comp(_parse_sum(ts), t)
    return t


def _parse_sum(ts):
    t = _parse_prod(ts)
    while ts.peek() == "+":
        ts.next()
        t = SumM(t, _parse_prod(ts))
    return t


def _parse_prod(ts):
    t = _parse_atom(ts)
    while ts.peek() == "*":
        ts.next()
        t = ProdM(t, _parse_atom(ts))
    return t


def _parse_atom(ts):
    tok = ts.next()
    if tok == "(":
        t = _parse_seq(ts)
        ts.expect(")")
        return t
    if tok == "[":
        f = _parse_seq(ts)
        ts.expect(",")
        g = _parse_seq(ts)
        ts.expect("]")
        return Copair(f, g)
    if tok == "id" or tok in GENERATORS:
        ts.expect("[")
        shapes = [parse_shape_from(ts)]
        while ts.peek() == ",":
            ts.next()
            shapes.append(parse_shape_from(ts))
        ts.expect("]")
        if tok == "id":
            if len(shapes) != 1:
                raise ts.error("id takes exactly one shape")
            return Id(shapes[0])
        try:
            return Gen(tok, tuple(shapes))
        except TypeCheckError as exc:
            raise ParseError(str(exc)) from None
    raise ts.error(f"unknown generator or unexpected token {tok!r}", back=1)
