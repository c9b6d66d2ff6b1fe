"""Concrete semantics: enumerated bases and exact monomial matrices.

A shape denotes an ordered basis.  A variable denotes its bound atoms, ``0``
the empty basis, ``I`` a single unit point, ``A+B`` the left-tagged basis of
``A`` followed by the right-tagged basis of ``B``, and ``A*B`` the pairs of
basis vectors in lexicographic order, left factor major.  Witness terms
compile to monomial maps between these bases; phases are exponents of a
primitive ``n``-th root of unity ``q``, so all comparisons are exact.

Structural generators send each source basis vector to the evident
rearranged target vector with phase 0.  The only phases come from the
tensor braidings: the over-crossing multiplies ``u*v`` by
``q**(deg u * deg v)`` and the under-crossing by ``q**(-deg u * deg v)``.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

from . import kernels
from .shapes import (
    Atom, Env, One, Prod, Shape, Sum, Var, Zero, cardinality, free_vars,
)
from .witnesses import Comp, Copair, Gen, Id, ProdM, SumM, Term, typecheck

__all__ = [
    "Tag", "BasisVector", "ConcreteMorphism", "BackendConfig", "FINSET", "graded",
    "MUTATIONS", "denote", "compile_term", "mor_eq", "render_path",
    "def1_union", "def2_union", "is_initial_segment", "copair_universal",
    "injections",
]


class Tag(enum.Enum):
    L = "L"
    R = "R"

    def __repr__(self):
        return self.value


UNIT = ()


@dataclass(frozen=True)
class BasisVector:
    path: object
    degree: int = 0

    def __str__(self):
        return render_path(self.path)


def render_path(p) -> str:
    if isinstance(p, Atom):
        return p.label
    if p == UNIT:
        return "*"
    if isinstance(p[0], Tag):
        return f"{p[0].value}({render_path(p[1])})"
    return f"({render_path(p[0])},{render_path(p[1])})"


def _path_degree(p) -> int:
    if isinstance(p, Atom):
        return p.degree
    if p == UNIT:
        return 0
    if isinstance(p[0], Tag):
        return _path_degree(p[1])
    return _path_degree(p[0]) + _path_degree(p[1])


# Deliberately broken semantics, used only to show the audits are not vacuous.
MUTATIONS = frozenset({"flip_sum_tags", "drop_under_phase", "swap_distl_blocks"})


@dataclass(frozen=True)
class BackendConfig:
    kind: str = "graded"
    phase_order: int = 1
    mutations: frozenset = field(default=frozenset())

    def __post_init__(self):
        if self.kind not in ("finset", "graded"):
            raise ValueError(f"unknown backend kind {self.kind!r}")
        if self.phase_order < 1:
            raise ValueError("phase order must be >= 1")
        if self.kind == "finset" and self.phase_order != 1:
            raise ValueError("the finset backend has phase order 1")
        object.__setattr__(self, "mutations", frozenset(self.mutations))
        unknown = self.mutations - MUTATIONS
        if unknown:
            raise ValueError(f"unknown mutations {sorted(unknown)}")

    @property
    def graded(self) -> bool:
        return self.kind == "graded"

    def mutated(self, *names: str) -> "BackendConfig":
        return BackendConfig(self.kind, self.phase_order, self.mutations | set(names))


FINSET = BackendConfig("finset", 1)


def graded(n: int) -> BackendConfig:
    return BackendConfig("graded", n)


# -- concrete morphisms ------------------------------------------------------

@dataclass(frozen=True)
class ConcreteMorphism:
    """A column-monomial matrix: each column has at most one nonzero entry.

    ``rows[c]`` is the row of column ``c`` (``-1`` for a zero column) and the
    entry there is ``q**phases[c]`` with ``q`` a primitive ``phase_order``-th
    root of unity.  Isomorphisms compile to permutations with phases; the
    injections to injective maps; copairs may hit a row twice.
    """

    source_dim: int
    target_dim: int
    rows: tuple
    phases: tuple
    phase_order: int = 1

    def __post_init__(self):
        n = self.phase_order
        rows = tuple(int(r) for r in self.rows)
        if len(rows) != self.source_dim or len(self.phases) != self.source_dim:
            raise ValueError("one row and one phase per source column required")
        if any(r < -1 or r >= self.target_dim for r in rows):
            raise ValueError("row index out of range")
        phases = tuple(0 if r < 0 else int(p) % n for r, p in zip(rows, self.phases))
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "phases", phases)

    @classmethod
    def _trusted(cls, k, m, rows, phases, n) -> "ConcreteMorphism":
        # kernel outputs are already in range and reduced mod n
        self = object.__new__(cls)
        for name, value in (("source_dim", k), ("target_dim", m), ("rows", tuple(rows)),
                            ("phases", tuple(phases)), ("phase_order", n)):
            object.__setattr__(self, name, value)
        return self

    @classmethod
    def identity(cls, dim: int, n: int = 1) -> "ConcreteMorphism":
        return cls._trusted(dim, dim, range(dim), (0,) * dim, n)

    @property
    def entries(self) -> frozenset:
        """``{(row, col, phase_exp)}`` for the nonzero entries."""
        return frozenset((r, c, p) for c, (r, p) in enumerate(zip(self.rows, self.phases)) if r >= 0)

    def is_bijection(self) -> bool:
        return self.source_dim == self.target_dim and sorted(self.rows) == list(range(self.target_dim))

    def is_injective(self) -> bool:
        hit = [r for r in self.rows if r >= 0]
        return len(hit) == self.source_dim and len(set(hit)) == len(hit)

    def is_identity(self) -> bool:
        return self == ConcreteMorphism.identity(self.source_dim, self.phase_order)

    def then(self, other: "ConcreteMorphism") -> "ConcreteMorphism":
        """``other @ self``."""
        _check_compatible(self, other)
        if self.target_dim != other.source_dim:
            raise ValueError(f"cannot compose {self.target_dim}-dim target with {other.source_dim}-dim source")
        rows, ph = kernels.compose(other.rows, other.phases, self.rows, self.phases, self.phase_order)
        return ConcreteMorphism._trusted(self.source_dim, other.target_dim, rows, ph, self.phase_order)

    def __matmul__(self, other: "ConcreteMorphism") -> "ConcreteMorphism":
        return other.then(self)

    def direct_sum(self, other: "ConcreteMorphism") -> "ConcreteMorphism":
        _check_compatible(self, other)
        rows, ph = kernels.direct_sum(self.rows, self.phases, self.target_dim, other.rows, other.phases)
        return ConcreteMorphism._trusted(self.source_dim + other.source_dim,
                                         self.target_dim + other.target_dim, rows, ph, self.phase_order)

    def tensor(self, other: "ConcreteMorphism") -> "ConcreteMorphism":
        _check_compatible(self, other)
        rows, ph = kernels.tensor(self.rows, self.phases, other.rows, other.phases,
                                  other.target_dim, self.phase_order)
        return ConcreteMorphism._trusted(self.source_dim * other.source_dim,
                                         self.target_dim * other.target_dim, rows, ph, self.phase_order)

    def inverse(self) -> "ConcreteMorphism":
        if self.source_dim != self.target_dim:
            raise ValueError("only square monomial maps can be inverted")
        rows, ph = kernels.inverse(self.rows, self.phases, self.phase_order)
        return ConcreteMorphism._trusted(self.target_dim, self.source_dim, rows, ph, self.phase_order)

    def matrix(self) -> list[list]:
        """Dense view: ``None`` for zero, else the phase exponent."""
        out = [[None] * self.source_dim for _ in range(self.target_dim)]
        for c, (r, p) in enumerate(zip(self.rows, self.phases)):
            if r >= 0:
                out[r][c] = p
        return out

    def to_json(self) -> dict:
        return {
            "source_dim": self.source_dim,
            "target_dim": self.target_dim,
            "phase_order": self.phase_order,
            "entries": [[r, c, p] for c, (r, p) in enumerate(zip(self.rows, self.phases)) if r >= 0],
        }

    @classmethod
    def from_json(cls, data) -> "ConcreteMorphism":
        if isinstance(data, str):
            data = json.loads(data)
        k = int(data["source_dim"])
        rows, ph = [-1] * k, [0] * k
        for r, c, p in data["entries"]:
            if rows[c] != -1:
                raise ValueError(f"column {c} has more than one entry")
            rows[c], ph[c] = r, p
        return cls(k, int(data["target_dim"]), rows, ph, int(data["phase_order"]))


def _check_compatible(a: ConcreteMorphism, b: ConcreteMorphism):
    if a.phase_order != b.phase_order:
        raise ValueError(f"phase orders differ: {a.phase_order} vs {b.phase_order}")


def mor_eq(m1: ConcreteMorphism, m2: ConcreteMorphism) -> bool:
    return (m1.source_dim == m2.source_dim and m1.target_dim == m2.target_dim
            and m1.phase_order == m2.phase_order and m1.entries == m2.entries)


# -- bases -------------------------------------------------------------------

@lru_cache(maxsize=1 << 14)
def _paths(s: Shape, env: Env, cfg: BackendConfig) -> tuple:
    if isinstance(s, Var):
        return env[s.name]
    if isinstance(s, Zero):
        return ()
    if isinstance(s, One):
        return (UNIT,)
    if isinstance(s, Sum):
        left = tuple((Tag.L, p) for p in _paths(s.left, env, cfg))
        right = tuple((Tag.R, p) for p in _paths(s.right, env, cfg))
        return right + left if "flip_sum_tags" in cfg.mutations else left + right
    if isinstance(s, Prod):
        right = _paths(s.right, env, cfg)
        return tuple((u, v) for u in _paths(s.left, env, cfg) for v in right)
    raise TypeError(f"not a shape: {s!r}")


@lru_cache(maxsize=1 << 14)
def _index(s: Shape, env: Env, cfg: BackendConfig) -> dict:
    return {p: i for i, p in enumerate(_paths(s, env, cfg))}


def denote(s: Shape, env: Env, cfg: BackendConfig = FINSET) -> list[BasisVector]:
    paths = _paths(s, env, cfg)
    if not cfg.graded:
        return [BasisVector(p, 0) for p in paths]
    return [BasisVector(p, _path_degree(p)) for p in paths]


def _degrees(s: Shape, env: Env, cfg: BackendConfig) -> list[int]:
    if not cfg.graded:
        return [0] * cardinality(s, env)
    return [_path_degree(p) for p in _paths(s, env, cfg)]


# -- compilation -------------------------------------------------------------

def _assoc_plus(p):
    tag, inner = p
    if tag is Tag.R:
        return (Tag.R, (Tag.R, inner))
    if inner[0] is Tag.L:
        return (Tag.L, inner[1])
    return (Tag.R, (Tag.L, inner[1]))


_PATH_MAPS = {
    "aP": _assoc_plus,
    "aT": lambda p: (p[0][0], (p[0][1], p[1])),
    "bP": lambda p: (Tag.R if p[0] is Tag.L else Tag.L, p[1]),
    "lP": lambda p: p[1],
    "rP": lambda p: p[1],
    "lT": lambda p: p[1],
    "rT": lambda p: p[0],
    "dL": lambda p: (p[1][0], (p[0], p[1][1])),
    "dR": lambda p: (p[0][0], (p[0][1], p[1])),
    "zL": None,
    "zR": None,
    "inl": lambda p: (Tag.L, p),
    "inr": lambda p: (Tag.R, p),
}


def _match(name: str, src: Shape, tgt: Shape, env: Env, cfg: BackendConfig):
    step = _PATH_MAPS[name]
    index = _index(tgt, env, cfg)
    rows = [index[step(p)] for p in _paths(src, env, cfg)]
    return rows, [0] * len(rows)


@lru_cache(maxsize=1 << 15)
def _gen_vars(g: Gen) -> tuple:
    out = frozenset()
    for a in g.args:
        out |= free_vars(a)
    return tuple(sorted(out))


def _compile_gen(g: Gen, env: Env, cfg: BackendConfig) -> ConcreteMorphism:
    return _compile_gen_cached(g, tuple(env[v] for v in _gen_vars(g)), cfg)


# generators depend only on the bindings of their own variables
@lru_cache(maxsize=1 << 15)
def _compile_gen_cached(g: Gen, bindings: tuple, cfg: BackendConfig) -> ConcreteMorphism:
    env = Env(dict(zip(_gen_vars(g), bindings)))
    n = cfg.phase_order
    name = g.name
    if name.endswith("_inv"):
        return _compile_gen(Gen(name[:-4], g.args), env, cfg).inverse()
    src, tgt = typecheck(g)
    k, m = cardinality(src, env), cardinality(tgt, env)
    if name in ("bT_over", "bT_under"):
        a, b = g.args
        sign = 1 if name == "bT_over" else -1
        if name == "bT_under" and "drop_under_phase" in cfg.mutations:
            sign = 0
        rows, ph = kernels.braid(_degrees(a, env, cfg), _degrees(b, env, cfg), sign, n)
    elif name in ("zL", "zR"):
        rows, ph = [], []
    else:
        rows, ph = _match(name, src, tgt, env, cfg)
        if name == "dL" and "swap_distl_blocks" in cfg.mutations and m:
            shift = cardinality(g.args[0], env) * cardinality(g.args[2], env)
            rows = [(r + shift) % m for r in rows]
    return ConcreteMorphism(k, m, rows, ph, n)


def compile_term(t: Term, env: Env, cfg: BackendConfig = FINSET) -> ConcreteMorphism:
    """Compile a well-typed witness term to its exact monomial matrix."""
    typecheck(t)
    return _compile(t, env, cfg)


def _compile(t: Term, env: Env, cfg: BackendConfig) -> ConcreteMorphism:
    if isinstance(t, Gen):
        return _compile_gen(t, env, cfg)
    if isinstance(t, Id):
        return ConcreteMorphism.identity(cardinality(t.shape, env), cfg.phase_order)
    if isinstance(t, Comp):
        return _compile(t.before, env, cfg).then(_compile(t.after, env, cfg))
    if isinstance(t, SumM):
        return _compile(t.left, env, cfg).direct_sum(_compile(t.right, env, cfg))
    if isinstance(t, ProdM):
        return _compile(t.left, env, cfg).tensor(_compile(t.right, env, cfg))
    if isinstance(t, Copair):
        return copair_universal(_compile(t.left, env, cfg), _compile(t.right, env, cfg))
    raise TypeError(f"not a witness term: {t!r}")


# -- coproducts --------------------------------------------------------------

def injections(a_dim: int, b_dim: int, n: int = 1) -> tuple[ConcreteMorphism, ConcreteMorphism]:
    """The two canonical embeddings into the ``a_dim + b_dim`` basis."""
    total = a_dim + b_dim
    inl = ConcreteMorphism(a_dim, total, range(a_dim), (0,) * a_dim, n)
    inr = ConcreteMorphism(b_dim, total, range(a_dim, total), (0,) * b_dim, n)
    return inl, inr


def copair_universal(f: ConcreteMorphism, g: ConcreteMorphism) -> ConcreteMorphism:
    """The unique ``h`` on the sum basis with ``h . inl = f`` and ``h . inr = g``."""
    _check_compatible(f, g)
    if f.target_dim != g.target_dim:
        raise ValueError(f"copair target mismatch: {f.target_dim} vs {g.target_dim}")
    return ConcreteMorphism(f.source_dim + g.source_dim, f.target_dim,
                            f.rows + g.rows, f.phases + g.phases, f.phase_order)


# -- the two disjoint unions of finite sets ----------------------------------

def def1_union(a: Iterable, b: Iterable, tags: Sequence = (0, 1)) -> frozenset:
    """Tagged disjoint union ``{(x, t0) : x in a} | {(y, t1) : y in b}``."""
    t0, t1 = tags
    if t0 == t1:
        raise ValueError("the two tags must differ")
    return frozenset((x, t0) for x in a) | frozenset((y, t1) for y in b)


def def2_union(a: Iterable, b: Iterable) -> frozenset:
    """Counting disjoint union: the von Neumann numeral ``|a| + |b|``."""
    return frozenset(range(len(set(a)) + len(set(b))))


def is_initial_segment(a: Iterable) -> bool:
    a = set(a)
    return a == set(range(len(a)))
