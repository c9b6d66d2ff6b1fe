"""Distributive normal forms with explicit witnesses.

``normalize`` rewrites a shape to a right-nested sum of right-nested products
of variables, with every use of a unit, absorber, associator or distributor
recorded in the returned witness term.  Monomial order is whatever the
expansion produces; nothing is ever sorted, since sorting would need a
commutativity witness.  ``alt_normalize`` expands the other factor first, and
``reorder_witness`` gives the explicit ``+``-braiding that relates the two.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .shapes import ONE, ZERO, One, Prod, Shape, Sum, Var, Zero
from .witnesses import Comp, Gen, Id, ProdM, SumM, Term, typecheck

__all__ = [
    "NormalForm", "StrictifyResult", "normalize", "alt_normalize",
    "reorder_witness", "STRICT_GENERATORS",
]

# every generator a normalizing witness may use
STRICT_GENERATORS = frozenset(
    name + suffix
    for name in ("aT", "aP", "lT", "rT", "lP", "rP", "dL", "dR", "zL", "zR")
    for suffix in ("", "_inv")
)


@dataclass(frozen=True)
class NormalForm:
    """A sum of monomials; each monomial is a sequence of variable names."""

    monomials: tuple

    def shape(self) -> Shape:
        return _sum_shape(self.monomials)

    def render(self) -> str:
        if not self.monomials:
            return "0"
        return " + ".join("*".join(m) if m else "I" for m in self.monomials)

    def __str__(self):
        return self.render()


@dataclass(frozen=True)
class StrictifyResult:
    nf: NormalForm
    witness: Term
    # per monomial, the Sum branches taken in the input shape to produce it
    origins: tuple


def _mono_shape(m) -> Shape:
    if not m:
        return ONE
    if len(m) == 1:
        return Var(m[0])
    return Prod(Var(m[0]), _mono_shape(m[1:]))


def _sum_shape(monos) -> Shape:
    if not monos:
        return ZERO
    if len(monos) == 1:
        return _mono_shape(monos[0])
    return Sum(_mono_shape(monos[0]), _sum_shape(monos[1:]))


# -- smart constructors that drop identities ---------------------------------

def _then(*terms: Term) -> Term:
    out = None
    for t in terms:
        if isinstance(t, Id) and out is not None:
            continue
        if out is None or isinstance(out, Id):
            out = t
        else:
            out = Comp(t, out)
    return out


def _sum(f: Term, g: Term) -> Term:
    if isinstance(f, Id) and isinstance(g, Id):
        return Id(Sum(f.shape, g.shape))
    return SumM(f, g)


def _prod(f: Term, g: Term) -> Term:
    if isinstance(f, Id) and isinstance(g, Id):
        return Id(Prod(f.shape, g.shape))
    return ProdM(f, g)


def _gen(name, *args):
    return Gen(name, args)


# -- witnesses for the flattening steps --------------------------------------

def _concat(left, right) -> Term:
    """``sum(left) + sum(right) -> sum(left ++ right)``."""
    if not left:
        return _gen("lP", _sum_shape(right))
    if not right:
        return _gen("rP", _sum_shape(left))
    if len(left) == 1:
        return Id(_sum_shape(left + right))
    head, rest = left[0], left[1:]
    return _then(
        _gen("aP", _mono_shape(head), _sum_shape(rest), _sum_shape(right)),
        _sum(Id(_mono_shape(head)), _concat(rest, right)),
    )


def _mono_mul(m, n) -> Term:
    """``mono(m) * mono(n) -> mono(m ++ n)``."""
    if not m:
        return _gen("lT", _mono_shape(n))
    if not n:
        return _gen("rT", _mono_shape(m))
    if len(m) == 1:
        return Id(_mono_shape(m + n))
    return _then(
        _gen("aT", Var(m[0]), _mono_shape(m[1:]), _mono_shape(n)),
        _prod(Id(Var(m[0])), _mono_mul(m[1:], n)),
    )


def _mono_times_sum(m, right) -> Term:
    """``mono(m) * sum(right) -> sum(m*n for n in right)`` by left distribution."""
    if not right:
        return _gen("zR", _mono_shape(m))
    if len(right) == 1:
        return _mono_mul(m, right[0])
    n, rest = right[0], right[1:]
    return _then(
        _gen("dL", _mono_shape(m), _mono_shape(n), _sum_shape(rest)),
        _sum(_mono_mul(m, n), _mono_times_sum(m, rest)),
    )


def _sum_times_mono(left, n) -> Term:
    """``sum(left) * mono(n) -> sum(m*n for m in left)`` by right distribution."""
    if not left:
        return _gen("zL", _mono_shape(n))
    if len(left) == 1:
        return _mono_mul(left[0], n)
    m, rest = left[0], left[1:]
    return _then(
        _gen("dR", _mono_shape(m), _sum_shape(rest), _mono_shape(n)),
        _sum(_mono_mul(m, n), _sum_times_mono(rest, n)),
    )


def _expand_left_first(left, right) -> Term:
    """Split the left factor first: monomials come out left-index major."""
    if not left:
        return _gen("zL", _sum_shape(right))
    if len(left) == 1:
        return _mono_times_sum(left[0], right)
    m, rest = left[0], left[1:]
    head = [m + n for n in right]
    tail = [p + n for p in rest for n in right]
    return _then(
        _gen("dR", _mono_shape(m), _sum_shape(rest), _sum_shape(right)),
        _sum(_mono_times_sum(m, right), _expand_left_first(rest, right)),
        _concat(head, tail),
    )


def _expand_right_first(left, right) -> Term:
    """Split the right factor first: monomials come out right-index major."""
    if not right:
        return _gen("zR", _sum_shape(left))
    if len(right) == 1:
        return _sum_times_mono(left, right[0])
    n, rest = right[0], right[1:]
    head = [m + n for m in left]
    tail = [m + p for p in rest for m in left]
    return _then(
        _gen("dL", _sum_shape(left), _mono_shape(n), _sum_shape(rest)),
        _sum(_sum_times_mono(left, n), _expand_right_first(left, rest)),
        _concat(head, tail),
    )


def _strictify(s: Shape, left_first: bool):
    """Return ``(monomials, origins, witness)`` for ``s``."""
    if isinstance(s, Var):
        return [(s.name,)], [None], Id(s)
    if isinstance(s, Zero):
        return [], [], Id(ZERO)
    if isinstance(s, One):
        return [()], [None], Id(ONE)
    ml, ol, wl = _strictify(s.left, left_first)
    mr, orr, wr = _strictify(s.right, left_first)
    if isinstance(s, Sum):
        origins = [("L", o) for o in ol] + [("R", o) for o in orr]
        return ml + mr, origins, _then(_sum(wl, wr), _concat(ml, mr))
    if left_first:
        monos = [m + n for m in ml for n in mr]
        origins = [(a, b) for a in ol for b in orr]
        expand = _expand_left_first(ml, mr)
    else:
        monos = [m + n for n in mr for m in ml]
        origins = [(a, b) for b in orr for a in ol]
        expand = _expand_right_first(ml, mr)
    return monos, origins, _then(_prod(wl, wr), expand)


def _result(s: Shape, left_first: bool) -> StrictifyResult:
    monos, origins, witness = _strictify(s, left_first)
    nf = NormalForm(tuple(monos))
    assert typecheck(witness) == (s, nf.shape())
    return StrictifyResult(nf, witness, tuple(origins))


@lru_cache(maxsize=4096)
def normalize(s: Shape) -> StrictifyResult:
    """Distributive normal form of ``s``, expanding left factors first."""
    return _result(s, True)


@lru_cache(maxsize=4096)
def alt_normalize(s: Shape) -> StrictifyResult:
    """Same normal form up to monomial order, expanding right factors first."""
    return _result(s, False)


# -- relating the two strategies ---------------------------------------------

def _swap_at(monos, i) -> Term:
    """Swap summands ``i`` and ``i+1`` of ``sum(monos)``."""
    if i > 0:
        return _sum(Id(_mono_shape(monos[0])), _swap_at(monos[1:], i - 1))
    a, b = _mono_shape(monos[0]), _mono_shape(monos[1])
    if len(monos) == 2:
        return _gen("bP", a, b)
    rest = _sum_shape(monos[2:])
    return _then(
        _gen("aP_inv", a, b, rest),
        _sum(_gen("bP", a, b), Id(rest)),
        _gen("aP", b, a, rest),
    )


def reorder_witness(s: Shape) -> Term:
    """Witness ``alt_normalize(s).nf -> normalize(s).nf`` built from ``+``-braidings."""
    ours, alt = normalize(s), alt_normalize(s)
    wanted = {o: k for k, o in enumerate(ours.origins)}
    order = [wanted[o] for o in alt.origins]
    monos = list(alt.nf.monomials)
    steps = [Id(alt.nf.shape())]
    # bubble sort by target position; each adjacent swap is one witness step
    for end in range(len(order) - 1, 0, -1):
        for i in range(end):
            if order[i] > order[i + 1]:
                steps.append(_swap_at(monos, i))
                order[i], order[i + 1] = order[i + 1], order[i]
                monos[i], monos[i + 1] = monos[i + 1], monos[i]
    assert tuple(monos) == ours.nf.monomials
    return _then(*steps)
