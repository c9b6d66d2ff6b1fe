"""Random shapes/terms and brute-force oracles shared by the test modules.

The oracles here never call into ``rigcoh.backends`` or ``rigcoh.strictify``;
they enumerate bases from scratch so they can check those modules.
"""

import itertools
import random

from rigcoh.shapes import ONE, ZERO, Atom, Env, One, Prod, Sum, Var, Zero
from rigcoh.witnesses import (
    Comp, Copair, Gen, Id, ProdM, SumM, invert, typecheck,
)

VARS = (Var("A"), Var("B"), Var("C"))


def random_shape(rng: random.Random, depth: int, leaves=VARS + (ZERO, ONE)):
    if depth <= 0 or rng.random() < 0.3:
        return rng.choice(leaves)
    cls = rng.choice((Sum, Prod))
    return cls(random_shape(rng, depth - 1, leaves), random_shape(rng, depth - 1, leaves))


def random_env(rng: random.Random, names, max_dim=3, degrees=(-2, 2)):
    return Env({
        n: [Atom(f"{n.lower()}{i}", rng.randint(*degrees)) for i in range(rng.randint(0, max_dim))]
        for n in names
    })


def _applicable(s):
    """Generators (name, args) whose source is exactly ``s``."""
    out = [("lP_inv", (s,)), ("rP_inv", (s,)), ("lT_inv", (s,)), ("rT_inv", (s,))]
    if isinstance(s, Zero):
        out += [("zL_inv", (v,)) for v in VARS[:1]] + [("zR_inv", (ONE,))]
    if isinstance(s, Sum):
        out.append(("bP", (s.left, s.right)))
        if isinstance(s.left, Sum):
            out.append(("aP", (s.left.left, s.left.right, s.right)))
        if isinstance(s.right, Sum):
            out.append(("aP_inv", (s.left, s.right.left, s.right.right)))
        if isinstance(s.left, Zero):
            out.append(("lP", (s.right,)))
        if isinstance(s.right, Zero):
            out.append(("rP", (s.left,)))
        if isinstance(s.left, Prod) and isinstance(s.right, Prod):
            if s.left.left == s.right.left:
                out.append(("dL_inv", (s.left.left, s.left.right, s.right.right)))
            if s.left.right == s.right.right:
                out.append(("dR_inv", (s.left.left, s.right.left, s.left.right)))
    if isinstance(s, Prod):
        out += [("bT_over", (s.left, s.right)), ("bT_under", (s.left, s.right))]
        if isinstance(s.left, Prod):
            out.append(("aT", (s.left.left, s.left.right, s.right)))
        if isinstance(s.right, Prod):
            out.append(("aT_inv", (s.left, s.right.left, s.right.right)))
        if isinstance(s.left, One):
            out.append(("lT", (s.right,)))
        if isinstance(s.right, One):
            out.append(("rT", (s.left,)))
        if isinstance(s.left, Zero):
            out.append(("zL", (s.right,)))
        if isinstance(s.right, Zero):
            out.append(("zR", (s.left,)))
        if isinstance(s.right, Sum):
            out.append(("dL", (s.left, s.right.left, s.right.right)))
        if isinstance(s.left, Sum):
            out.append(("dR", (s.left.left, s.left.right, s.right)))
    return out


def random_term_from(rng: random.Random, s, depth: int, invertible=True):
    """A random well-typed term whose source is ``s``."""
    if depth <= 0:
        return Id(s)
    roll = rng.random()
    if roll < 0.3:
        first = random_term_from(rng, s, depth - 1, invertible)
        return Comp(random_term_from(rng, typecheck(first).target, depth - 1, invertible), first)
    if roll < 0.5 and isinstance(s, (Sum, Prod)):
        cls = SumM if isinstance(s, Sum) else ProdM
        return cls(random_term_from(rng, s.left, depth - 1, invertible),
                   random_term_from(rng, s.right, depth - 1, invertible))
    if not invertible and roll < 0.6:
        other = rng.choice(VARS + (ZERO,))
        return Gen("inl", (s, other)) if rng.random() < 0.5 else Gen("inr", (other, s))
    if not invertible and roll < 0.7 and isinstance(s, Sum):
        f = random_term_from(rng, s.left, depth - 1, invertible)
        target = typecheck(f).target
        if s.left == s.right:
            # codiagonal-like: both summands land on the same basis
            return Copair(f, f)
        return Copair(Comp(Gen("inl", (target, s.right)), f), Gen("inr", (target, s.right)))
    name, args = rng.choice(_applicable(s))
    return Gen(name, args)


def random_invertible_term(rng: random.Random, depth: int):
    s = random_shape(rng, 2)
    t = random_term_from(rng, s, depth)
    return t


def random_into(rng: random.Random, target, depth: int):
    """A random invertible term ``X -> target``."""
    return invert(random_term_from(rng, target, depth))


# -- independent basis enumeration ------------------------------------------

def enumerate_basis(s, env):
    """Basis of ``s`` as ``(tag path, atom tuple)`` pairs, tagged-union order."""
    if isinstance(s, Var):
        return [(None, (a,)) for a in env[s.name]]
    if isinstance(s, Zero):
        return []
    if isinstance(s, One):
        return [(None, ())]
    left, right = enumerate_basis(s.left, env), enumerate_basis(s.right, env)
    if isinstance(s, Sum):
        return [(("L", o), t) for o, t in left] + [(("R", o), t) for o, t in right]
    return [((o1, o2), t1 + t2) for o1, t1 in left for o2, t2 in right]


def expansion(s, left_first=True):
    """Monomials of ``s`` as ``(tag path, variable names)``, in expansion order."""
    if isinstance(s, Var):
        return [(None, (s.name,))]
    if isinstance(s, Zero):
        return []
    if isinstance(s, One):
        return [(None, ())]
    left, right = expansion(s.left, left_first), expansion(s.right, left_first)
    if isinstance(s, Sum):
        return [(("L", o), v) for o, v in left] + [(("R", o), v) for o, v in right]
    if left_first:
        return [((o1, o2), v1 + v2) for o1, v1 in left for o2, v2 in right]
    return [((o1, o2), v1 + v2) for o2, v2 in right for o1, v1 in left]


def normal_form_oracle(s, env, left_first=True):
    """Expected ``(monomials, rows)`` of the normalizing bijection, by matching."""
    monos = expansion(s, left_first)
    target = []
    for origin, names in monos:
        for atoms in itertools.product(*(env[n] for n in names)):
            target.append((origin, tuple(atoms)))
    index = {key: i for i, key in enumerate(target)}
    rows = tuple(index[key] for key in enumerate_basis(s, env))
    return tuple(v for _, v in monos), rows


def label_basis(s, env):
    """Untagged content of each basis vector: the atom tuple with structure erased."""
    return [t for _, t in enumerate_basis(s, env)]


def dense(m):
    """Dense matrix of phase exponents (``None`` for zero) from a morphism."""
    return m.matrix()


def dense_product(g, f, n, cols):
    """Exact product of dense monomial matrices over exponents mod n."""
    rows, inner = len(g), len(f)
    out = [[None] * cols for _ in range(rows)]
    for r in range(rows):
        for c in range(cols):
            terms = [(g[r][k] + f[k][c]) % n for k in range(inner)
                     if g[r][k] is not None and f[k][c] is not None]
            assert len(terms) <= 1, "monomial product produced a sum"
            out[r][c] = terms[0] if terms else None
    return out


def dense_block_sum(f, g, f_cols, g_cols):
    """Block-diagonal matrix ``[[f, 0], [0, g]]``."""
    out = [row + [None] * g_cols for row in f]
    out += [[None] * f_cols + row for row in g]
    return out


def dense_kronecker(f, g, n, f_cols, g_cols):
    """Kronecker product, left factor major, exponents adding mod n."""
    out = [[None] * (f_cols * g_cols) for _ in range(len(f) * len(g))]
    for i, j, p, q in itertools.product(range(len(f)), range(len(g)), range(f_cols), range(g_cols)):
        if f[i][p] is not None and g[j][q] is not None:
            out[i * len(g) + j][p * g_cols + q] = (f[i][p] + g[j][q]) % n
    return out


def dense_inverse(m, n):
    """Inverse of a square monomial matrix: transpose with negated exponents."""
    size = len(m)
    out = [[None] * size for _ in range(size)]
    for r in range(size):
        for c in range(size):
            if m[r][c] is not None:
                out[c][r] = -m[r][c] % n
    return out
