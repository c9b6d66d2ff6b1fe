"""Coherence laws as data, and a seeded auditor that checks them exactly.

A law is a pair of witness terms over shape variables with the same source
and target.  Auditing instantiates the variables with random atom lists
(sizes ``0..max_dim``, degrees ``-2..2``), sometimes identifying two
variables, compiles both sides and compares the matrices exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional

from .backends import BackendConfig, ConcreteMorphism, compile_term, mor_eq
from .shapes import ONE, ZERO, Atom, Env, Prod, Sum, Var, env_to_json
from .witnesses import (
    GENERATORS, Gen, Id, ProdM, SumM, Term, TypeCheckError,
    naturality_square, render_term, seq, substitute_term, term_free_vars,
    typecheck,
)

__all__ = [
    "LawSpec", "AuditReport", "Counterexample", "LawError", "builtin_laws",
    "law_by_name", "tensor_symmetry_law", "audit", "audit_all",
]

ALIAS_PROBABILITY = 0.2
DEGREE_RANGE = (-2, 2)


class LawError(TypeCheckError):
    """A law's two sides do not share a type (a registry bug)."""


@dataclass(frozen=True)
class LawSpec:
    name: str
    lhs: Term
    rhs: Term
    params: tuple = ()

    def __post_init__(self):
        try:
            left, right = typecheck(self.lhs), typecheck(self.rhs)
        except TypeCheckError as exc:
            raise LawError(f"law {self.name}: {exc}") from None
        if left != right:
            raise LawError(f"law {self.name}: sides have types {left} and {right}")
        if not self.params:
            names = term_free_vars(self.lhs) | term_free_vars(self.rhs)
            object.__setattr__(self, "params", tuple(sorted(names)))

    def instantiate(self, mapping) -> tuple[Term, Term]:
        lhs, rhs = substitute_term(self.lhs, mapping), substitute_term(self.rhs, mapping)
        left, right = typecheck(lhs), typecheck(rhs)
        if left != right:
            raise LawError(f"law {self.name} breaks at {mapping}: {left} vs {right}")
        return lhs, rhs

    def __str__(self):
        return f"{self.name}: {render_term(self.lhs)} = {render_term(self.rhs)}"


# -- the registry ------------------------------------------------------------

A, B, C, D = (Var(x) for x in "ABCD")


def _g(name, *args):
    return Gen(name, args)


def _assoc_laws():
    for op, a, mor, kind in ((Prod, "aT", ProdM, "*"), (Sum, "aP", SumM, "+")):
        yield LawSpec(
            f"pentagon{kind}",
            seq(mor(_g(a, A, B, C), Id(D)), _g(a, A, op(B, C), D), mor(Id(A), _g(a, B, C, D))),
            seq(_g(a, op(A, B), C, D), _g(a, A, B, op(C, D))),
        )
    yield LawSpec(
        "triangle*",
        seq(_g("aT", A, ONE, B), ProdM(Id(A), _g("lT", B))),
        ProdM(_g("rT", A), Id(B)),
    )
    yield LawSpec(
        "triangle+",
        seq(_g("aP", A, ZERO, B), SumM(Id(A), _g("lP", B))),
        SumM(_g("rP", A), Id(B)),
    )


def _hexagons(kind, op, mor, a, b):
    a_inv = a + "_inv"
    first = LawSpec(
        f"hexagon{kind}-1",
        seq(_g(a, A, B, C), _g(b, A, op(B, C)), _g(a, B, C, A)),
        seq(mor(_g(b, A, B), Id(C)), _g(a, B, A, C), mor(Id(B), _g(b, A, C))),
    )
    second = LawSpec(
        f"hexagon{kind}-2",
        seq(_g(a_inv, A, B, C), _g(b, op(A, B), C), _g(a_inv, C, A, B)),
        seq(mor(Id(A), _g(b, B, C)), _g(a_inv, A, C, B), mor(_g(b, A, C), Id(B))),
    )
    return first, second


def _braid_laws():
    for crossing in ("over", "under"):
        yield from _hexagons(f"*{crossing}", Prod, ProdM, "aT", f"bT_{crossing}")
    yield from _hexagons("+", Sum, SumM, "aP", "bP")
    yield LawSpec("symmetry+", seq(_g("bP", A, B), _g("bP", B, A)), Id(Sum(A, B)))


def _middle_swap(w, x, y, z):
    """``(w+x)+(y+z) -> (w+y)+(x+z)`` from associators and one addition braiding."""
    return seq(
        _g("aP", w, x, Sum(y, z)),
        SumM(Id(w), _g("aP_inv", x, y, z)),
        SumM(Id(w), SumM(_g("bP", x, y), Id(z))),
        SumM(Id(w), _g("aP", y, x, z)),
        _g("aP_inv", w, y, Sum(x, z)),
    )


def _distributivity_laws():
    AB, AC, AD = Prod(A, B), Prod(A, C), Prod(A, D)
    yield LawSpec(
        "dist-braid-L",
        seq(_g("dL", A, B, C), _g("bP", AB, AC)),
        seq(ProdM(Id(A), _g("bP", B, C)), _g("dL", A, C, B)),
    )
    yield LawSpec(
        "dist-braid-R",
        seq(_g("dR", A, B, C), _g("bP", AC, Prod(B, C))),
        seq(ProdM(_g("bP", A, B), Id(C)), _g("dR", B, A, C)),
    )
    yield LawSpec(
        "dist-assoc+L",
        seq(_g("dL", A, Sum(B, C), D), SumM(_g("dL", A, B, C), Id(AD))),
        seq(ProdM(Id(A), _g("aP", B, C, D)), _g("dL", A, B, Sum(C, D)),
            SumM(Id(AB), _g("dL", A, C, D)), _g("aP_inv", AB, AC, AD)),
    )
    yield LawSpec(
        "dist-assoc+R",
        seq(_g("dR", Sum(A, B), C, D), SumM(_g("dR", A, B, D), Id(Prod(C, D)))),
        seq(ProdM(_g("aP", A, B, C), Id(D)), _g("dR", A, Sum(B, C), D),
            SumM(Id(AD), _g("dR", B, C, D)), _g("aP_inv", AD, Prod(B, D), Prod(C, D))),
    )
    yield LawSpec(
        "dist-assoc*",
        seq(_g("aT", A, B, Sum(C, D)), ProdM(Id(A), _g("dL", B, C, D)),
            _g("dL", A, Prod(B, C), Prod(B, D))),
        seq(_g("dL", AB, C, D), SumM(_g("aT", A, B, C), _g("aT", A, B, D))),
    )
    yield LawSpec(
        "dist-LR",
        seq(_g("dR", A, B, Sum(C, D)), SumM(_g("dL", A, C, D), _g("dL", B, C, D))),
        seq(_g("dL", Sum(A, B), C, D), SumM(_g("dR", A, B, C), _g("dR", A, B, D)),
            _middle_swap(AC, Prod(B, C), AD, Prod(B, D))),
    )
    yield LawSpec(
        "dist-unit",
        seq(_g("dL", ONE, B, C), SumM(_g("lT", B), _g("lT", C))),
        _g("lT", Sum(B, C)),
    )


def _absorption_laws():
    AB = Prod(A, B)
    yield LawSpec(
        "absorb-L",
        seq(_g("dL", A, ZERO, B), SumM(_g("zR", A), Id(AB)), _g("lP", AB)),
        ProdM(Id(A), _g("lP", B)),
    )
    yield LawSpec(
        "absorb-R",
        seq(_g("dR", ZERO, A, B), SumM(_g("zL", B), Id(AB)), _g("lP", AB)),
        ProdM(_g("lP", A), Id(B)),
    )
    yield LawSpec("absorb-unit", _g("zL", ONE), _g("rT", ZERO))


# one argument witness per slot: a permutation, an injection, a braiding
def _slot_arg(slot: int) -> Term:
    p, q = Var(f"P{slot}"), Var(f"Q{slot}")
    return (_g("bP", p, q), _g("inl", p, q), _g("bT_over", p, q))[slot % 3]


def _naturality_laws():
    for name in sorted(GENERATORS):
        if name.endswith("_inv"):
            continue
        args = [_slot_arg(i) for i in range(GENERATORS[name].arity)]
        lhs, rhs = naturality_square(name, args)
        yield LawSpec(f"natural-{name}", lhs, rhs)


def builtin_laws() -> list[LawSpec]:
    return [
        *_assoc_laws(), *_braid_laws(), *_distributivity_laws(),
        *_absorption_laws(), *_naturality_laws(),
    ]


def law_by_name(name: str, laws: Optional[Iterable[LawSpec]] = None) -> LawSpec:
    for law in laws if laws is not None else builtin_laws():
        if law.name == name:
            return law
    raise KeyError(f"no law named {name!r}")


def tensor_symmetry_law() -> LawSpec:
    """``over(A,B) ; over(B,A) = id``: true only when the braiding is symmetric."""
    return LawSpec("symmetry*over", seq(_g("bT_over", A, B), _g("bT_over", B, A)), Id(Prod(A, B)))


# -- auditing ----------------------------------------------------------------

@dataclass(frozen=True)
class Counterexample:
    trial: int
    env: Env
    aliases: dict
    lhs: ConcreteMorphism
    rhs: ConcreteMorphism

    def to_json(self) -> dict:
        return {
            "trial": self.trial,
            "env": env_to_json(self.env),
            "aliases": dict(sorted(self.aliases.items())),
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
        }


@dataclass(frozen=True)
class AuditReport:
    law: str
    trials: int
    seed: int
    counterexample: Optional[Counterexample] = None

    @property
    def outcome(self) -> str:
        return "pass" if self.counterexample is None else "counterexample"

    @property
    def passed(self) -> bool:
        return self.counterexample is None

    def to_json(self) -> dict:
        out = {"law": self.law, "trials": self.trials, "seed": self.seed, "outcome": self.outcome}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample.to_json()
        return out


def random_env(rng: random.Random, names, max_dim: int) -> Env:
    lo, hi = DEGREE_RANGE
    return Env({
        name: [Atom(f"{name.lower()}{i}", rng.randint(lo, hi)) for i in range(rng.randint(0, max_dim))]
        for name in names
    })


def _draw_aliases(rng: random.Random, params) -> dict:
    aliases = {}
    for i, name in enumerate(params[1:], start=1):
        if rng.random() < ALIAS_PROBABILITY:
            earlier = [p for p in params[:i] if p not in aliases]
            aliases[name] = rng.choice(earlier)
    return aliases


def audit(law: LawSpec, cfg: BackendConfig, trials: int = 100, seed: int = 0,
          max_dim: int = 3) -> AuditReport:
    """Compare both sides of ``law`` on ``trials`` seeded random environments."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if max_dim < 0:
        raise ValueError("max_dim must be >= 0")
    rng = random.Random(seed)
    instances = {}
    for trial in range(trials):
        aliases = _draw_aliases(rng, law.params)
        env = random_env(rng, [p for p in law.params if p not in aliases], max_dim)
        key = tuple(sorted(aliases.items()))
        if key not in instances:
            instances[key] = law.instantiate({k: Var(v) for k, v in aliases.items()}) if aliases \
                else (law.lhs, law.rhs)
        lhs, rhs = instances[key]
        left, right = compile_term(lhs, env, cfg), compile_term(rhs, env, cfg)
        if not mor_eq(left, right):
            return AuditReport(law.name, trials, seed, Counterexample(trial, env, aliases, left, right))
    return AuditReport(law.name, trials, seed)


def audit_all(cfg: BackendConfig, trials: int = 100, seed: int = 0, max_dim: int = 3,
              laws: Optional[Iterable[LawSpec]] = None) -> list[AuditReport]:
    laws = builtin_laws() if laws is None else list(laws)
    return [audit(law, cfg, trials, seed, max_dim) for law in laws]
