"""Object expressions over the rig signature (+, *, 0, I) and their environments.

Shapes are purely syntactic trees.  Nothing is ever simplified behind the
caller's back: ``0 + A`` and ``A`` are different shapes, and relating them
takes an explicit witness term (see :mod:`rigcoh.witnesses`).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

__all__ = [
    "Shape", "Var", "Zero", "One", "Sum", "Prod", "ZERO", "ONE",
    "Atom", "Env", "ParseError", "UnboundVariableError",
    "free_vars", "shape_eq", "cardinality", "size", "substitute",
    "parse_shape", "render_shape", "load_env", "env_from_json", "env_to_json",
]


class ParseError(ValueError):
    """Raised on malformed shape or term text."""


class UnboundVariableError(KeyError):
    """A shape variable has no binding in the environment."""

    def __init__(self, name: str):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"unbound variable {self.name!r}"


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class CachedHash:
    """Memoised structural hash for frozen dataclass trees."""

    __slots__ = ()

    def __hash__(self):
        try:
            return self.__dict__["_hash"]
        except KeyError:
            h = hash((type(self).__name__,) + tuple(self.__dict__[f] for f in self.__dataclass_fields__))
            object.__setattr__(self, "_hash", h)
            return h


@dataclass(frozen=True)
class Var(CachedHash):
    name: str

    def __post_init__(self):
        if not _IDENT.match(self.name) or self.name == "I":
            raise ValueError(f"invalid variable name {self.name!r}")

    def __str__(self):
        return render_shape(self)


@dataclass(frozen=True)
class Zero(CachedHash):
    def __str__(self):
        return "0"


@dataclass(frozen=True)
class One(CachedHash):
    def __str__(self):
        return "I"


@dataclass(frozen=True)
class Sum(CachedHash):
    left: "Shape"
    right: "Shape"

    def __str__(self):
        return render_shape(self)


@dataclass(frozen=True)
class Prod(CachedHash):
    left: "Shape"
    right: "Shape"

    def __str__(self):
        return render_shape(self)


Shape = Union[Var, Zero, One, Sum, Prod]
ZERO = Zero()
ONE = One()


@dataclass(frozen=True)
class Atom(CachedHash):
    """One fixed basis element of a bound object."""

    label: str
    degree: int = 0


class Env:
    """Immutable binding of variable names to ordered atom sequences."""

    __slots__ = ("_bindings", "_hash")

    def __init__(self, bindings: Mapping[str, Iterable[Atom]] = ()):
        items = {}
        for name, atoms in dict(bindings).items():
            atoms = tuple(atoms)
            labels = [a.label for a in atoms]
            if len(set(labels)) != len(labels):
                raise ValueError(f"duplicate atom labels in binding of {name!r}")
            items[name] = atoms
        self._bindings = items
        self._hash = hash(frozenset(items.items()))

    def __getitem__(self, name: str) -> tuple[Atom, ...]:
        try:
            return self._bindings[name]
        except KeyError:
            raise UnboundVariableError(name) from None

    def __contains__(self, name):
        return name in self._bindings

    def __iter__(self):
        return iter(self._bindings)

    def __len__(self):
        return len(self._bindings)

    def items(self):
        return self._bindings.items()

    def __eq__(self, other):
        return isinstance(other, Env) and self._bindings == other._bindings

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Env({self._bindings!r})"

    def restrict(self, names: Iterable[str]) -> "Env":
        return Env({n: self[n] for n in sorted(names)})

    @classmethod
    def sized(cls, dims: Mapping[str, int], degree: int = 0) -> "Env":
        """Bind each variable to ``dims[name]`` atoms labelled ``<name><i>``."""
        return cls({
            name: [Atom(f"{name.lower()}{i}", degree) for i in range(k)]
            for name, k in dims.items()
        })


def free_vars(s: Shape) -> frozenset[str]:
    if isinstance(s, Var):
        return frozenset((s.name,))
    if isinstance(s, (Sum, Prod)):
        return free_vars(s.left) | free_vars(s.right)
    return frozenset()


def shape_eq(s: Shape, t: Shape) -> bool:
    # dataclass equality is already structural
    return s == t


def size(s: Shape) -> int:
    """Number of constructor nodes in ``s``."""
    if isinstance(s, (Sum, Prod)):
        return 1 + size(s.left) + size(s.right)
    return 1


def cardinality(s: Shape, env: Env) -> int:
    if isinstance(s, Var):
        return len(env[s.name])
    if isinstance(s, Zero):
        return 0
    if isinstance(s, One):
        return 1
    if isinstance(s, Sum):
        return cardinality(s.left, env) + cardinality(s.right, env)
    if isinstance(s, Prod):
        return cardinality(s.left, env) * cardinality(s.right, env)
    raise TypeError(f"not a shape: {s!r}")


def substitute(s: Shape, mapping: Mapping[str, Shape]) -> Shape:
    """Replace variables by shapes, simultaneously."""
    if isinstance(s, Var):
        return mapping.get(s.name, s)
    if isinstance(s, Sum):
        return Sum(substitute(s.left, mapping), substitute(s.right, mapping))
    if isinstance(s, Prod):
        return Prod(substitute(s.left, mapping), substitute(s.right, mapping))
    return s


# -- text form ---------------------------------------------------------------

def render_shape(s: Shape, top: bool = True) -> str:
    """Render with every nested binary node parenthesised.

    The output is accepted by :func:`parse_shape` and round-trips exactly.
    """
    if isinstance(s, Var):
        return s.name
    if isinstance(s, Zero):
        return "0"
    if isinstance(s, One):
        return "I"
    op = "+" if isinstance(s, Sum) else "*"
    text = f"{render_shape(s.left, False)}{op}{render_shape(s.right, False)}"
    return text if top else f"({text})"


_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|(.))")


def tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    for m in _TOKEN.finditer(text):
        if m.group(1) is not None:
            tokens.append((m.group(1), m.start(1)))
        elif m.group(2) is not None and not m.group(2).isspace():
            tokens.append((m.group(2), m.start(2)))
    return tokens


class TokenStream:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][0]
        return None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of input in {self.text!r}")
        self.pos += 1
        return tok

    def expect(self, tok: str):
        got = self.next()
        if got != tok:
            raise self.error(f"expected {tok!r}, got {got!r}", back=1)

    def error(self, msg: str, back: int = 0) -> ParseError:
        i = max(self.pos - back, 0)
        where = self.tokens[i][1] if i < len(self.tokens) else len(self.text)
        return ParseError(f"{msg} at column {where} in {self.text!r}")

    def done(self):
        if self.peek() is not None:
            raise self.error(f"unexpected {self.peek()!r}")


def parse_shape_from(ts: TokenStream) -> Shape:
    # '*' binds tighter than '+'; both group to the left
    left = _parse_factor(ts)
    while ts.peek() == "+":
        ts.next()
        left = Sum(left, _parse_factor(ts))
    return left


def _parse_factor(ts: TokenStream) -> Shape:
    left = _parse_atom(ts)
    while ts.peek() == "*":
        ts.next()
        left = Prod(left, _parse_atom(ts))
    return left


def _parse_atom(ts: TokenStream) -> Shape:
    tok = ts.next()
    if tok == "0":
        return ZERO
    if tok == "I":
        return ONE
    if tok == "(":
        inner = parse_shape_from(ts)
        ts.expect(")")
        return inner
    if _IDENT.match(tok):
        return Var(tok)
    raise ts.error(f"unexpected {tok!r}", back=1)


def parse_shape(text: str) -> Shape:
    """Parse ``0 | I | ident | (s + s) | (s * s)``.

    Outer parentheses may be omitted; unparenthesised chains group left with
    ``*`` binding tighter than ``+``.
    """
    ts = TokenStream(text)
    s = parse_shape_from(ts)
    ts.done()
    return s


# -- environment files -------------------------------------------------------

def env_from_json(data: Mapping) -> Env:
    if not isinstance(data, Mapping):
        raise ValueError("environment must be a JSON object")
    bindings = {}
    for name, atoms in data.items():
        Var(name)
        bindings[name] = [Atom(str(a["label"]), int(a.get("degree", 0))) for a in atoms]
    return Env(bindings)


def env_to_json(env: Env) -> dict:
    return {
        name: [{"label": a.label, "degree": a.degree} for a in atoms]
        for name, atoms in sorted(env.items())
    }


def load_env(path) -> Env:
    with open(path, encoding="utf-8") as fh:
        return env_from_json(json.load(fh))
