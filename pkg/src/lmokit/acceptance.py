"""Runnable acceptance checks.

Each check returns ``(ok, detail)``.  The CLI ``selftest`` and the test
suite both go through ``CHECKS``.
"""

from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction

import sympy

from .associator import associator_equations, default_associator
from .diagrams import EMPTY_SUPPORT, Support, canonical_form, chord_diagram, theta
from .gradedsum import GradedSum
from .kontsevich import (fixture, gamma123, linking_matrix, pure_braid_word, reverse_component,
                         tensor_word, zhat)
from .lmo import _closed_mul, iota_n, iota_n_oracle, omega_n
from .ops import assemble, coproduct, i_filter, stack_product, tensor_square
from .relations import (_pairings, closed_dimension, closed_quotient, enumerate_diagrams,
                        reduce_chords)
from .surgery import (delta_sum, kirby_pair, normalized, sn_operation, tilde_beta, window_unknot)
from .weights import weight_sl2


def y_diagram(m: int = 3):
    """One trivalent vertex with a leg on each of three strands."""
    return assemble(Support.intervals(m), [["a"], ["b"], ["c"]], [["x", "y", "z"]],
                    [("a", "x"), ("b", "y"), ("c", "z")])


# -- 1 -----------------------------------------------------------------------------------

def _shuffles(u: str, v: str):
    if not u or not v:
        yield u + v
        return
    for w in _shuffles(u[1:], v):
        yield u[0] + w
    for w in _shuffles(u, v[1:]):
        yield v[0] + w


def check_associator(cap: int = 4):
    phi = default_associator(cap)
    res = associator_equations(phi, cap)
    resid = {k: sum(1 for w, c in v.items() if c and len(w) <= cap) for k, v in res.items()}
    grad1 = {w: c for w, c in phi.words.items() if len(w) == 1 and c}
    # group-like iff the coefficients respect the shuffle product
    coef = lambda w: phi.words.get(w, Fraction(0))
    words = ["".join(p) for d in range(1, cap) for p in itertools.product("AB", repeat=d)]
    bad = 0
    for u, v in itertools.product(words, repeat=2):
        if len(u) + len(v) <= cap:
            if coef(u) * coef(v) != sum(coef(w) for w in _shuffles(u, v)):
                bad += 1
    ok = not any(resid.values()) and not grad1 and not bad
    return ok, f"residual terms {resid}, Grad1 terms {len(grad1)}, shuffle failures {bad}"


# -- 2 -----------------------------------------------------------------------------------

def check_dimensions(top: int = 3):
    sparse = [closed_dimension(n, "sparse") for n in range(1, top + 1)]
    dense = [closed_dimension(n, "dense") for n in range(1, top + 1)]
    key, _ = canonical_form(theta())
    survives = closed_quotient(1).basis == [key]
    w = weight_sl2(theta())
    ok = sparse == dense and sparse[0] == 1 and survives and w != 0
    return ok, f"dims {sparse} vs {dense}, theta survives {survives}, W(theta) = {w}"


# -- 3 -----------------------------------------------------------------------------------

def _degree_one_matrix(z: GradedSum) -> list[list[Fraction]]:
    l = len(z.support)
    M = [[Fraction(0)] * l for _ in range(l)]
    for d, c in z.grad(1).terms.items():
        where = [k for k, s in enumerate(d.legs) for _ in s]
        i, j = sorted(where)
        M[i][j] = M[j][i] = c
    return M


def check_kontsevich():
    z = zhat(gamma123(), cap=2)
    expect = GradedSum.one(Support.intervals(3), 2) + GradedSum.of(y_diagram(), 1, 2)
    exact = reduce_chords(z - expect).terms == {}
    notes, ok = [f"Grad<=2 of gamma123 exact: {exact}"], exact
    for name, args in (("hopf", (0, 0)), ("trefoil", (1,)), ("trefoil", (-1,)), ("borromean", ())):
        w = fixture(name, *args)
        lk = linking_matrix(w)
        M = _degree_one_matrix(zhat(w, cap=1))
        # isolated chords carry half the framing
        want = [[lk[i][j] if i != j else lk[i][i] / 2 for j in range(len(lk))] for i in range(len(lk))]
        good = M == want
        ok = ok and good
        notes.append(f"{name}{args}: {good}")
    return ok, "; ".join(notes)


# -- 4 -----------------------------------------------------------------------------------

TOKENS = ["g12", "g13", "g23", "g12^-1", "g13^-1", "g23^-1"]


def check_multiplicativity(trials: int = 20, cap: int = 3, seed: int = 7):
    rng = random.Random(seed)
    fails = 0
    for _ in range(trials):
        toks = [rng.choice(TOKENS) for _ in range(rng.randint(2, 3))]
        k = rng.randint(1, len(toks) - 1)
        a, b = pure_braid_word(toks[:k]), pure_braid_word(toks[k:])
        whole = zhat(pure_braid_word(toks), cap)
        if stack_product(zhat(a, cap), zhat(b, cap), cap) != whole:
            fails += 1
    glike = 0
    for w in (gamma123(), pure_braid_word(["g12", "g23^-1"])):
        z = zhat(w, 4)
        cop = {k: v for k, v in coproduct(z).items() if v}
        if cop != {k: v for k, v in tensor_square(z, 4).items() if v}:
            glike += 1
    return not fails and not glike, f"split failures {fails}/{trials}, group-like failures {glike}"


# -- 5 -----------------------------------------------------------------------------------

def strut_circle(n: int) -> GradedSum:
    """A circle with ``n - 1`` parallel chords and a strut through a closed bigon.

    The strut ends sit on opposite sides of the chords; gluing them to the
    two vertices of a double edge turns the strut into a theta graph.
    """
    left = ["e"] + [f"a{i}" for i in range(n - 1)] + ["f"] + [f"b{i}" for i in reversed(range(n - 1))]
    pairs = [(f"a{i}", f"b{i}") for i in range(n - 1)]
    pairs += [("e", "u0"), ("u1", "v1"), ("u2", "v2"), ("v0", "f")]
    d = assemble(Support.circles(1), [left], [["u0", "u1", "u2"], ["v0", "v2", "v1"]], pairs)
    return GradedSum.of(d)


def strut_factor(n: int) -> int:
    return (-2) ** (n - 1) * __import__("math").factorial(n - 1)


def check_iota(top: int = 3):
    notes, ok = [], True
    x1 = GradedSum.of(chord_diagram(Support.circles(1), [["p", "p"]]))
    one = GradedSum.one(EMPTY_SUPPORT, 1)
    r = iota_n(x1, 1) == one.scale(-2)
    notes.append(f"iota1(x1) = -2: {r}")
    ok &= r
    r = not iota_n(x1, 2)
    notes.append(f"(L<4) kills x1 under iota2: {r}")
    ok &= r
    d = next(iter(x1.terms))
    looped = GradedSum.of(type(d)(d.support, d.legs, d.verts, d.mate, 1))
    r = iota_n(looped, 2) == iota_n(x1, 2).scale(-4) and iota_n(looped, 1) == iota_n(x1, 1).scale(-2)
    notes.append(f"O_n factor: {r}")
    ok &= r
    r = len(list(_pairings(list(range(4))))) == 3
    notes.append(f"T2_4 has 3 terms: {r}")
    ok &= r
    th = GradedSum.of(theta())
    for n in range(1, top + 1):
        r = iota_n_oracle(strut_circle(n), n, truncate=False) == th.scale(strut_factor(n))
        notes.append(f"strut through circle n={n}: {r}")
        ok &= r
    agree = total = 0
    for l, n, degs in ((1, 1, (1, 2)), (2, 1, (2, 3)), (1, 2, (2, 3))):
        for deg in degs:
            for k in enumerate_diagrams(Support.circles(l), deg):
                if all(len(s) == 2 * n for s in k.legs):
                    x = GradedSum.of(k)
                    total += 1
                    agree += iota_n(x, n) == iota_n_oracle(x, n)
    notes.append(f"dual route {agree}/{total}")
    ok &= agree == total and total > 0
    return ok, "; ".join(notes)


# -- 6 -----------------------------------------------------------------------------------

def check_omega_invariance():
    one = GradedSum.one(EMPTY_SUPPORT, 1)
    notes, ok = [], True
    a, b = kirby_pair("slide-hopf-s3")
    cases = {
        "U+": fixture("unknot", 1),
        "U+ U-": tensor_word(fixture("unknot", 1), fixture("unknot", -1)),
        "hopf(1,0)": a,
        "hopf(3,0)": b,
        "hopf(1,0) reversed": reverse_component(a, 1),
        "s1 splice of U+": sn_operation(window_unknot(1), 2, 1),
    }
    for name, w in cases.items():
        r = omega_n(w, 1) == one
        notes.append(f"{name}: {r}")
        ok &= r
    return ok, "; ".join(notes)


# -- 7 -----------------------------------------------------------------------------------

def check_theta_surgery():
    tb = tilde_beta("theta")
    # the alternating sum carries (-1)^|L| on the full sublink; here |L| = 3
    signed = normalized(delta_sum(tb)) == normalized(tb.scale(-1))
    om = omega_n(tb, 1)
    exact = om == GradedSum.of(theta(), -1, 1)
    return signed and exact, f"delta(b) = -b: {signed}; Omega1 = -theta: {exact}"


def delta_literal_holds() -> bool:
    tb = tilde_beta("theta")
    return normalized(delta_sum(tb)) == normalized(tb)


# -- 8 -----------------------------------------------------------------------------------

TREFOIL_SEIFERT = [[-1, 1], [0, -1]]


def casson_oracle(sign: int) -> Fraction:
    """``sign * Delta''(1) / 2`` from a Seifert matrix of the trefoil."""
    t = sympy.symbols("t")
    V = sympy.Matrix(TREFOIL_SEIFERT)
    delta = sympy.expand((V - t * V.T).det())
    # symmetrise so that Delta(t) = Delta(1/t) and Delta(1) = 1
    lo = min(sympy.Poly(delta, t).monoms())[0]
    hi = sympy.degree(delta, t)
    delta = sympy.expand(delta / t ** sympy.Rational(lo + hi, 2))
    delta = delta / delta.subs(t, 1)
    return sign * Fraction(str(sympy.diff(delta, t, 2).subs(t, 1))) / 2


def check_casson():
    th = GradedSum.of(theta(), 1, 1)
    tp, tm = fixture("trefoil", 1), fixture("trefoil", -1)
    cases = [(tp, casson_oracle(1)), (tm, casson_oracle(-1)),
             (tensor_word(tp, fixture("trefoil", 1)), 2 * casson_oracle(1))]
    ratios = []
    for w, lam in cases:
        g1 = omega_n(w, 1).grad(1)
        (key, unit), = th.terms.items()
        coef = g1.terms.get(key, Fraction(0)) / unit
        ratios.append(None if g1 != th.scale(coef) else coef / lam)
    c = ratios[0]
    prop = c is not None and c != 0 and all(r == c for r in ratios)
    o = omega_n(tp, 1)
    mult = omega_n(cases[2][0], 1) == _closed_mul(o, o, 1)
    return prop and mult, f"c = {c} (planar theta units), ratios {ratios}, multiplicative {mult}"


# -- 9 -----------------------------------------------------------------------------------

HIGH_FILTER_POOLS = [  # (circles, degree, internal vertices, min legs, max legs)
    (1, 3, 3, 0, None), (1, 3, 4, 0, None), (2, 3, 4, 1, None), (1, 4, 4, 4, 4), (2, 4, 4, 2, 2),
]


def random_high_filter(rng: random.Random) -> GradedSum:
    l, deg, v, lo, hi = rng.choice(HIGH_FILTER_POOLS)
    pool = enumerate_diagrams(Support.circles(l), deg, internal=v, min_legs=lo, max_legs=hi)
    terms = {rng.choice(pool): Fraction(rng.randint(-5, 5) or 1, rng.randint(1, 4))
             for _ in range(rng.randint(1, 4))}
    return GradedSum(Support.circles(l), terms, canonical=True)


def check_i_filter(trials: int = 50, seed: int = 11):
    rng = random.Random(seed)
    killed = 0
    for _ in range(trials):
        x = random_high_filter(rng)
        assert i_filter(x) >= 3
        killed += not iota_n(x, 1)
    bound, seen = True, 0
    for l, n, degs in ((1, 1, (1, 2, 3)), (2, 1, (2, 3)), (1, 2, (2, 3, 4))):
        for deg in degs:
            for k in enumerate_diagrams(Support.circles(l), deg, min_legs=2 * n, max_legs=2 * n):
                y = iota_n_oracle(GradedSum.of(k), n, truncate=False)
                bound &= all(2 * g.degree >= k.n_internal for g in y.terms)
                seen += 1
    return killed == trials and bound, f"killed {killed}/{trials}; degree bound on {seen} keys: {bound}"


# -- 10 ----------------------------------------------------------------------------------

def check_omega_two():
    w = fixture("trefoil", 1)
    o2, o1 = omega_n(w, 2), omega_n(w, 1)
    ok = o2.truncate(1) == o1
    return ok, f"Grad<=1 Omega2 = Omega1: {ok}; Omega2 has {len(o2.terms)} terms"


CHECKS = [
    (1, "associator validity", check_associator),
    (2, "closed diagram dimensions", check_dimensions),
    (3, "Kontsevich exactness", check_kontsevich),
    (4, "multiplicativity and group-likeness", check_multiplicativity),
    (5, "iota identities", check_iota),
    (6, "Omega invariance", check_omega_invariance),
    (7, "theta surgery formula", check_theta_surgery),
    (8, "Casson consistency", check_casson),
    (9, "i-filter laws", check_i_filter),
    (10, "Omega2 versus Omega1", check_omega_two),
]

HEAVY = {10}


def run_all(skip_heavy: bool = False, out=print, timing: bool = True) -> bool:
    good = True
    for num, name, fn in CHECKS:
        if skip_heavy and num in HEAVY:
            out(f"[{num:2d}] SKIP {name}")
            continue
        t = time.perf_counter()
        ok, detail = fn()
        good &= ok
        took = f" ({time.perf_counter() - t:.1f}s)" if timing else ""
        out(f"[{num:2d}] {'PASS' if ok else 'FAIL'} {name}{took}: {detail}")
    return good
