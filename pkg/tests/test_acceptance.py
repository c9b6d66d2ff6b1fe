"""End-to-end acceptance checks, one test per criterion, all exact.

Run with ``pytest tests/test_acceptance.py -s`` to see the PASS/FAIL lines as
they happen; they are also repeated in the terminal summary.
"""

import itertools
import random
from functools import lru_cache

from rigcoh.backends import (
    ConcreteMorphism, compile_term, copair_universal, def1_union, def2_union,
    graded, injections, is_initial_segment, mor_eq,
)
from rigcoh.coherence import audit_all, builtin_laws
from rigcoh.shapes import ONE, ZERO, Atom, Env, Prod, Sum, Var, substitute
from rigcoh.strictify import alt_normalize, normalize, reorder_witness
from rigcoh.witnesses import Comp, Copair, Gen, ProdM, SumM, invert, substitute_term, typecheck

from termgen import (
    dense_block_sum, dense_inverse, dense_kronecker, dense_product,
    normal_form_oracle, random_env, random_into, random_shape, random_term_from,
)

SEED = 2024
PHASE_ORDERS = (1, 2, 4, 5)
A, B = Var("A"), Var("B")


def _odd_pair_env(rng):
    """Random A, B bindings that contain at least one odd-degree atom each."""
    def binding(name):
        atoms = [Atom(f"{name.lower()}{i}", rng.randint(-2, 2)) for i in range(rng.randint(0, 2))]
        return atoms + [Atom(f"{name.lower()}x", rng.choice([-1, 1]))]
    return Env({"A": binding("A"), "B": binding("B")})


# -- reusable suites (also rerun under mutations) ------------------------------

def laws_suite(mutations=()):
    """Names of (n, law) pairs that fail the full audit."""
    failures = []
    for n in PHASE_ORDERS:
        cfg = graded(n).mutated(*mutations)
        failures += [(n, r.law) for r in audit_all(cfg, trials=100, seed=SEED, max_dim=4)
                     if not r.passed]
    return failures


def separation_suite(mutations=()):
    rng = random.Random(SEED)
    over, under = Gen("bT_over", (A, B)), Gen("bT_under", (A, B))
    bad = 0
    for _ in range(100):
        env = _odd_pair_env(rng)
        cfg = graded(4).mutated(*mutations)
        if mor_eq(compile_term(over, env, cfg), compile_term(under, env, cfg)):
            bad += 1
        env = random_env(rng, "AB", 3)
        cfg = graded(1).mutated(*mutations)
        if not mor_eq(compile_term(over, env, cfg), compile_term(under, env, cfg)):
            bad += 1
    return bad


def inverse_suite(mutations=()):
    rng = random.Random(SEED + 1)
    bad = 0
    for trial in range(100):
        n = PHASE_ORDERS[trial % len(PHASE_ORDERS)]
        cfg = graded(n).mutated(*mutations)
        env = random_env(rng, "AB", 4)
        under = compile_term(Gen("bT_under", (A, B)), env, cfg)
        over = compile_term(Gen("bT_over", (B, A)), env, cfg)
        expect = dense_inverse(over.matrix(), n)
        identity = [[0 if r == c else None for c in range(under.source_dim)]
                    for r in range(under.source_dim)]
        if under.matrix() != expect or dense_product(under.matrix(), over.matrix(), n,
                                                     over.source_dim) != identity:
            bad += 1
    return bad


# -- 1 ------------------------------------------------------------------------

def test_c1_coherence_suite(verdict):
    failures = laws_suite()
    verdict("1 coherence suite", not failures,
            f"{len(builtin_laws())} laws x n in {PHASE_ORDERS}, 100 trials, maxDim 4, seed {SEED}"
            + (f"; failing {failures}" if failures else ""))


# -- 2 ------------------------------------------------------------------------

def test_c2_braiding_separation(verdict):
    bad = separation_suite()
    verdict("2 braiding separation", bad == 0,
            f"100 odd-degree envs differ at n=4, 100 envs agree at n=1; {bad} violations")


# -- 3 ------------------------------------------------------------------------

def test_c3_under_is_inverse_of_opposite_over(verdict):
    bad = inverse_suite()
    verdict("3 inverse-direction law", bad == 0, f"100 random envs; {bad} violations")


# -- 4 ------------------------------------------------------------------------

def _structural_pair(rng):
    """Random structural f: X -> T and g: Y -> T sharing a target."""
    f = random_term_from(rng, random_shape(rng, 2), 3, invertible=rng.random() < 0.5)
    target = typecheck(f).target
    g = random_into(rng, target, 3)
    return f, g


def _copair_checks(f, g, env, n):
    cfg = graded(n)
    mf, mg = compile_term(f, env, cfg), compile_term(g, env, cfg)
    h = copair_universal(mf, mg)
    x, y = typecheck(f).source, typecheck(g).source
    inl, inr = compile_term(Gen("inl", (x, y)), env, cfg), compile_term(Gen("inr", (x, y)), env, cfg)
    if (inl, inr) != injections(mf.source_dim, mg.source_dim, n):
        return False
    if not (inl.is_injective() and inr.is_injective()):
        return False
    # the two defining equations, by dense matrix products
    if dense_product(h.matrix(), inl.matrix(), n, mf.source_dim) != mf.matrix():
        return False
    if dense_product(h.matrix(), inr.matrix(), n, mg.source_dim) != mg.matrix():
        return False
    # extensionality: inl and inr hit every basis vector of X+Y exactly once,
    # so the equations pin down every column of any solution h'
    hit = sorted(list(inl.rows) + list(inr.rows))
    if hit != list(range(h.source_dim)):
        return False
    rebuilt_rows, rebuilt_ph = [None] * h.source_dim, [None] * h.source_dim
    for src, inj in ((mf, inl), (mg, inr)):
        for c, col in enumerate(inj.rows):
            rebuilt_rows[col], rebuilt_ph[col] = src.rows[c], src.phases[c]
    if ConcreteMorphism(h.source_dim, h.target_dim, rebuilt_rows, rebuilt_ph, n) != h:
        return False
    # the copair term compiles to the same map
    return compile_term(Copair(f, g), env, cfg) == h


def test_c4_tagged_union_properties(verdict):
    x, y, z = {"x"}, {"y"}, {"z"}
    not_comm = def1_union(x, z) != def1_union(z, x)
    not_assoc = def1_union(def1_union(x, y), z) != def1_union(x, def1_union(y, z))
    rng = random.Random(SEED + 4)
    good = 0
    for trial in range(100):
        f, g = _structural_pair(rng)
        env = random_env(rng, "ABC", 3)
        good += _copair_checks(f, g, env, PHASE_ORDERS[trial % 4])
    verdict("4 tagged union properties", not_comm and not_assoc and good == 100,
            f"commutativity counterexample {sorted(def1_union(x, z))} vs {sorted(def1_union(z, x))}; "
            f"associativity counterexample found: {not_assoc}; copair checks {good}/100")


# -- 5 ------------------------------------------------------------------------

def _random_set(rng):
    pool = list(range(-3, 12)) + ["p", "q", "r", ("t", 1)]
    return frozenset(rng.sample(pool, rng.randint(0, 6)))


def test_c5_counting_union_properties(verdict):
    rng = random.Random(SEED + 5)
    laws_ok = 0
    for _ in range(200):
        a, b, c = _random_set(rng), _random_set(rng), _random_set(rng)
        laws_ok += (def2_union(a, b) == def2_union(b, a)
                    and def2_union(def2_union(a, b), c) == def2_union(a, def2_union(b, c)))
    subsets = [frozenset(s) for r in range(7) for s in itertools.combinations(range(6), r)]
    # oracle for "is a number": a von Neumann numeral is {0, ..., k-1}
    numerals = {frozenset(range(k)) for k in range(7)}
    fixed_ok = sum((def2_union(a, frozenset()) == a) == (a in numerals) == is_initial_segment(a)
                   for a in subsets)
    verdict("5 counting union properties", laws_ok == 200 and fixed_ok == len(subsets),
            f"comm+assoc {laws_ok}/200; fixed points = numerals on {fixed_ok}/{len(subsets)} subsets")


# -- 6 ------------------------------------------------------------------------

LEAVES = (ZERO, ONE, Var("A"), Var("B"), Var("C"))


@lru_cache(maxsize=None)
def _shapes_with(nodes):
    if nodes == 1:
        return LEAVES
    out = []
    for left in range(1, nodes - 1, 2):
        for a in _shapes_with(left):
            for b in _shapes_with(nodes - 1 - left):
                out += [Sum(a, b), Prod(a, b)]
    return tuple(out)


def _var_order(s, acc):
    if isinstance(s, Var):
        if s.name not in acc:
            acc.append(s.name)
    elif isinstance(s, (Sum, Prod)):
        _var_order(s.left, acc)
        _var_order(s.right, acc)
    return acc


def test_c6_strictifier_oracle(verdict):
    # binary trees have an odd node count, so "up to 8 nodes" is "up to 7"
    shapes = [s for k in (1, 3, 5, 7) for s in _shapes_with(k)]
    cfg, n = graded(4), 4
    checked = bad = renamed = 0
    for s in shapes:
        names = _var_order(s, [])
        canon = dict(zip(names, "ABC"))
        if any(k != v for k, v in canon.items()):
            # renaming-equivariance lets the canonical representative stand in
            back = {v: Var(k) for k, v in canon.items()}
            base = substitute(s, {k: Var(v) for k, v in canon.items()})
            ok = (normalize(s).witness == substitute_term(normalize(base).witness, back)
                  and alt_normalize(s).witness == substitute_term(alt_normalize(base).witness, back)
                  and reorder_witness(s) == substitute_term(reorder_witness(base), back))
            renamed += 1
            bad += not ok
            continue
        ours, alt = normalize(s), alt_normalize(s)
        relate = Comp(reorder_witness(s), alt.witness)
        for dims in itertools.product(range(4), repeat=len(names)):
            # odd degrees make any stray phase visible at n = 4
            env = Env({v: [Atom(f"{v.lower()}{i}", 1) for i in range(d)] for v, d in zip(names, dims)})
            m = compile_term(ours.witness, env, cfg)
            monos, rows = normal_form_oracle(s, env, True)
            ok = (ours.nf.monomials == monos and m.rows == rows and not any(m.phases)
                  and compile_term(relate, env, cfg) == m)
            checked += 1
            bad += not ok
    verdict("6 strictifier oracle equivalence", bad == 0,
            f"{len(shapes)} shapes; {checked} shape/env pairs checked against enumeration at n={n}; "
            f"{renamed} renamed shapes checked for equivariance; {bad} violations")


# -- 7 ------------------------------------------------------------------------

def test_c7_functoriality_and_round_trips(verdict):
    rng = random.Random(SEED + 7)
    functorial = 0
    for trial in range(200):
        n = PHASE_ORDERS[trial % 4]
        cfg = graded(n)
        env = random_env(rng, "ABC", 4 if trial % 5 == 0 else 2)
        f = random_term_from(rng, random_shape(rng, 2), 3, invertible=rng.random() < 0.5)
        g = random_term_from(rng, typecheck(f).target, 3, invertible=rng.random() < 0.5)
        mf, mg = compile_term(f, env, cfg), compile_term(g, env, cfg)
        a, b = mf.source_dim, mg.source_dim
        functorial += (
            compile_term(Comp(g, f), env, cfg).matrix() == dense_product(mg.matrix(), mf.matrix(), n, a)
            and compile_term(SumM(f, g), env, cfg).matrix() == dense_block_sum(mf.matrix(), mg.matrix(), a, b)
            and compile_term(ProdM(f, g), env, cfg).matrix()
            == dense_kronecker(mf.matrix(), mg.matrix(), n, a, b)
        )
    round_trips = 0
    for trial in range(200):
        n = PHASE_ORDERS[trial % 4]
        t = random_term_from(rng, random_shape(rng, 2), rng.randint(0, 5))
        env = random_env(rng, "ABC", 3)
        m, back = compile_term(t, env, graded(n)), compile_term(invert(t), env, graded(n))
        round_trips += back.then(m).is_identity() and m.then(back).is_identity()
    verdict("7 functoriality and inverse round-trips", functorial == 200 and round_trips == 200,
            f"functoriality {functorial}/200; invert round-trips {round_trips}/200")


# -- 8 ------------------------------------------------------------------------

def test_c8_mutations_are_caught(verdict):
    caught = {}
    for mutation in ("flip_sum_tags", "drop_under_phase", "swap_distl_blocks"):
        suites = (("2", separation_suite), ("3", inverse_suite), ("1", laws_suite))
        # cheapest suites first; stop at the first one that notices
        caught[mutation] = next((name for name, suite in suites if suite((mutation,))), None)
    verdict("8 mutation sensitivity", all(caught.values()),
            ", ".join(f"{m} caught by criterion {c}" for m, c in caught.items()))
