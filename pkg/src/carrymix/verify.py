"""Verification sweeps used by ``carrymix verify``.

Each check returns a :class:`CheckResult`; ``quick=True`` shrinks the grid.
A check only reports ``ok`` when every identity it visited held exactly
(or, for sampled checks, within its stated statistical threshold).
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import bijections as bj
from .carries import (
    binary_P, build_P, carry_moments, ratio_profile, separation_closed, separation_exact,
    separation_limit, stationary, total_carries_mean,
)
from .errors import ConsistencyError
from .exact import RationalMatrix, char_poly, eulerian, is_totally_positive, poly_from_roots
from .montecarlo import (
    chi2_threshold, chi_square, empirical_joint_carries, exhaustive_joint_carries,
    exhaustive_joint_descents, make_rng, markov_joint_law,
)
from .multiplication import (
    build_K, is_generalized_circulant, k_row_by_counting, k_row_power, mult_carry_trace, mult_tv_exact,
)
from .permutations import all_permutations
from .sections import section_poly, trim_to_P
from .shuffling import (
    card_tracking_matrix, exhaustive_shuffle_dist, gsr_sample, qb_probability, riffle_sample,
    track_card_one,
)


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def expect(self, cond: bool, what: str):
        self.cases += 1
        if not cond:
            self.failures.append(what)

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "cases": self.cases,
                "failures": self.failures[:20], "notes": self.notes}


def _guard(result: CheckResult, fn, *args):
    try:
        return fn(*args)
    except ConsistencyError as exc:
        result.failures.append(f"{fn.__name__}{args}: {exc}")
        return None


# golden displays -----------------------------------------------------------

def holte_n3(b: int) -> RationalMatrix:
    b2 = b * b
    rows = [
        [b2 + 3 * b + 2, 4 * b2 - 4, b2 - 3 * b + 2],
        [b2 - 1, 4 * b2 + 2, b2 - 1],
        [b2 - 3 * b + 2, 4 * b2 - 4, b2 + 3 * b + 2],
    ]
    return RationalMatrix(rows).scale(Fraction(1, 6 * b2))


K_7_10 = RationalMatrix([
    [2, 1, 2, 1, 2, 1, 1],
    [2, 1, 2, 1, 1, 2, 1],
    [2, 1, 1, 2, 1, 2, 1],
    [1, 2, 1, 2, 1, 2, 1],
    [1, 2, 1, 2, 1, 1, 2],
    [1, 2, 1, 1, 2, 1, 2],
    [1, 1, 2, 1, 2, 1, 2],
]).scale(Fraction(1, 10))


def card_display(n: int, b: int) -> RationalMatrix:
    if n == 2:
        return RationalMatrix([[b + 1, b - 1], [b - 1, b + 1]]).scale(Fraction(1, 2 * b))
    if n == 3:
        rows = [
            [(b + 1) * (2 * b + 1), 2 * (b * b - 1), (b - 1) * (2 * b - 1)],
            [2 * (b * b - 1), 2 * (b * b + 2), 2 * (b * b - 1)],
            [(b - 1) * (2 * b - 1), 2 * (b * b - 1), (b + 1) * (2 * b + 1)],
        ]
        return RationalMatrix(rows).scale(Fraction(1, 6 * b * b))
    raise ValueError("displays exist only for n = 2, 3")


def spectrum(n: int, b: int) -> list[Fraction]:
    return poly_from_roots(Fraction(1, b**k) for k in range(n))


# checks --------------------------------------------------------------------

def check_golden(quick: bool = False) -> CheckResult:
    res = CheckResult("golden")
    for b in range(2, 11):
        res.expect(_guard(res, build_P, 3, b) == holte_n3(b), f"P(3,{b}) != n=3 display")
    for n in range(1, 9):
        res.expect(_guard(res, build_P, n, 2) == binary_P(n), f"P({n},2) != base-2 closed form")
    res.expect(build_K(7, 10) == K_7_10, "K(7,10) != displayed matrix")
    for n, b in product((2, 3), range(2, 7)):
        res.expect(card_tracking_matrix(n, b) == card_display(n, b), f"card matrix n={n} b={b} != display")
    return res


def check_stationary(quick: bool = False) -> CheckResult:
    res = CheckResult("stationary")
    for n in range(1, 5 if quick else 7):
        pi = stationary(n)
        res.expect(sum(pi) == 1, f"pi_{n} does not sum to 1")
        for b in (2, 3, 5, 10):
            P = _guard(res, build_P, n, b)
            res.expect(P is not None and P.vecmul(pi) == pi, f"pi_{n} not stationary for b={b}")
    return res


def check_eigen(quick: bool = False) -> CheckResult:
    res = CheckResult("eigen")
    for n, b in product(range(1, 5 if quick else 7), (2, 3)):
        res.expect(char_poly(build_P(n, b)) == spectrum(n, b), f"char_poly P({n},{b})")
        res.expect(char_poly(card_tracking_matrix(n, b)) == spectrum(n, b), f"char_poly Q({n},{b})")
    return res


def check_semigroup(quick: bool = False) -> CheckResult:
    res = CheckResult("semigroup")
    bases = (2, 3) if quick else (2, 3, 4)
    for a, b in product(bases, bases):
        for n in range(1, 4 if quick else 6):
            res.expect(build_P(n, a) @ build_P(n, b) == build_P(n, a * b), f"P_{a} P_{b} != P_{a*b}, n={n}")
            res.expect(
                card_tracking_matrix(n, a) @ card_tracking_matrix(n, b) == card_tracking_matrix(n, a * b),
                f"Q_{a} Q_{b} != Q_{a*b}, n={n}",
            )
        for k in range(1, 6 if quick else 10):
            res.expect(build_K(k, a) @ build_K(k, b) == build_K(k, a * b), f"K_{a} K_{b} != K_{a*b}, k={k}")
    return res


def check_tp2(quick: bool = False) -> CheckResult:
    res = CheckResult("tp2")
    nmax = 5 if quick else 8
    for n, b in product(range(1, nmax + 1), range(2, 7 if quick else 11)):
        tp = is_totally_positive(build_P(n, b), 2)
        res.expect(tp.ok, f"P({n},{b}) has negative 2x2 minor {tp.rows}x{tp.cols} = {tp.minor}")
    for n in range(1, nmax + 1):
        tp = is_totally_positive(build_P(n, 2), 4)
        res.expect(tp.ok, f"P({n},2) has negative minor {tp.rows}x{tp.cols} = {tp.minor}")
    return res


def check_theorem_main(n: int, m: int, b: int, mode: str = "exhaustive", samples: int = 10**5,
                       seed: int = 0, quantile: float = 0.999) -> CheckResult:
    res = CheckResult(f"theorem-main({n},{m},{b},{mode})")
    markov = markov_joint_law(n, m, b)
    if mode == "exhaustive":
        carries = exhaustive_joint_carries(n, m, b)
        descents = exhaustive_joint_descents(n, m, b)
        res.expect(carries.table == descents.table, "carry law != descent law")
        res.expect(carries.table == markov.table, "carry law != Markov product")
    else:
        observed = empirical_joint_carries(n, m, b, samples, seed)
        chi = chi_square(observed, markov)
        limit = chi2_threshold(chi.dof, quantile)
        res.notes.append({"statistic": chi.statistic, "dof": chi.dof, "threshold": limit,
                          "pooled_groups": [[",".join(map(str, k)) for k in g] for g in chi.groups]})
        res.expect(chi.statistic <= limit, f"chi-square {chi.statistic:.2f} > {limit:.2f} on {chi.dof} dof")
    return res


def check_theorem_grid(quick: bool = False) -> CheckResult:
    res = CheckResult("theorem-main")
    for args in [(2, 2, 2), (3, 2, 2), (2, 2, 3), (2, 3, 2)]:
        sub = check_theorem_main(*args)
        res.cases += sub.cases
        res.failures += sub.failures
    return res


def _random_array(rnd: random.Random, n: int, m: int, b: int) -> bj.ColumnArray:
    return bj.ColumnArray(tuple(tuple(rnd.randrange(b) for _ in range(m)) for _ in range(n)), b)


def _bijection_case(res: CheckResult, c: bj.ColumnArray):
    bar, star = bj.bar_map(c), bj.star_map(c)
    res.expect(bj.bar_inverse(bar) == c, f"bar round trip {c.rows}")
    res.expect(bj.star_inverse(star) == c, f"star round trip {c.rows}")
    res.expect(bj.descent_positions(bar) == bj.carry_positions(c), f"descents(bar) != carries {c.rows}")
    res.expect(bj.descent_positions(bar) == bj.pi_label(bar).descent_set(), f"pi descents {c.rows}")
    _guard(res, bj.tau_trace, c)


def check_bijections(n: int | None = None, m: int | None = None, b: int | None = None,
                     exhaustive: bool = True, samples: int = 1000, seed: int = 0,
                     quick: bool = False) -> CheckResult:
    res = CheckResult("bijections")
    if n is not None:
        if exhaustive:
            for digits in product(range(b), repeat=n * m):
                _bijection_case(res, bj.ColumnArray(tuple(zip(*[iter(digits)] * m)), b))
        else:
            rnd = random.Random(seed)
            for _ in range(samples):
                _bijection_case(res, _random_array(rnd, n, m, b))
        return res

    grid = [bj.ColumnArray(tuple(zip(*[iter(d)] * 2)), 2) for d in product(range(2), repeat=4)]
    for c in grid:
        _bijection_case(res, c)
    res.expect(len({bj.bar_map(c) for c in grid}) == 16, "bar map not injective on n=m=b=2")
    res.expect(len({bj.star_map(c) for c in grid}) == 16, "star map not injective on n=m=b=2")
    rnd = random.Random(seed)
    for _ in range(100 if quick else 1000):
        _bijection_case(res, _random_array(rnd, rnd.randint(1, 6), rnd.randint(1, 4), rnd.randint(1, 4)))
    for digits in product(range(2), repeat=6):
        a = bj.ColumnArray(tuple(zip(*[iter(digits)] * 2)), 2)
        res.expect(bj.starkey_product_check(a), f"starkey fails on {a.rows}")
    example = bj.ColumnArray(((0, 1, 2), (0, 1, 2), (1, 1, 2), (1, 1, 1), (2, 1, 2), (1, 2, 1)), 3)
    res.expect(bj.column_carry_trace(example) == (3, 3, 2), "worked example carries")
    taus = _guard(res, bj.tau_trace, example)
    res.expect(taus == ((6, 3, 1, 4, 2, 5), (4, 1, 5, 2, 6, 3), (1, 3, 6, 4, 2, 5)), "worked example taus")
    return res


def check_separation(quick: bool = False) -> CheckResult:
    res = CheckResult("separation")
    for n, b in product(range(1, 6 if quick else 9), (2, 3)):
        for r in range(0, 4 if quick else 7):
            res.expect(separation_exact(n, b, r) == separation_closed(n, b, r), f"sep n={n} b={b} r={r}")
            f = ratio_profile(n, b, r)
            res.expect(all(x >= y for x, y in zip(f, f[1:])), f"f_r not monotone n={n} b={b} r={r}")
    for c in (Fraction(1, 4), Fraction(1), Fraction(4)):
        r = round(math.log2(c * 512**2))
        sep = float(separation_closed(512, 2, r))
        res.expect(abs(sep - separation_limit(float(c))) < 0.01, f"sep limit c={c}: {sep}")
    return res


def check_moments(quick: bool = False) -> CheckResult:
    res = CheckResult("moments")
    for n, b in product(range(1, 5 if quick else 9), range(2, 4 if quick else 6)):
        for j in range(1, 4 if quick else 7):
            res.expect(_guard(res, carry_moments, n, b, j) is not None, f"moments n={n} b={b} j={j}")
        res.expect(_guard(res, total_carries_mean, n, b, 6) is not None, f"total mean n={n} b={b}")
    return res


def check_shuffle(quick: bool = False, seed: int = 0, draws: int = 10**5) -> CheckResult:
    res = CheckResult("shuffle")
    for n, b in product(range(1, 5 if quick else 6), (2, 3)):
        dist = exhaustive_shuffle_dist(n, b)
        for p in all_permutations(n):
            res.expect(dist.get(p, 0) == qb_probability(p, b), f"Q_{b}({p}) mismatch")
    n = 4
    draws = draws // 10 if quick else draws
    for name, sampler in (("digits", lambda g: gsr_sample(n, 2, g)), ("riffle", lambda g: riffle_sample(n, g))):
        rng = make_rng(seed)
        counts: dict = {}
        for _ in range(draws):
            p = sampler(rng)
            counts[p] = counts.get(p, 0) + 1
        for p in all_permutations(n):
            q = float(qb_probability(p, 2))
            se = math.sqrt(q * (1 - q) / draws)
            freq = counts.get(p, 0) / draws
            res.expect(abs(freq - q) <= 4 * se, f"{name} sampler: {p} freq {freq:.5f} vs {q:.5f}")
    return res


def check_mult(quick: bool = False) -> CheckResult:
    res = CheckResult("mult")
    kmax = 6 if quick else 12
    for k, b in product(range(1, kmax + 1), range(2, kmax + 1)):
        K = build_K(k, b)
        res.expect(K.is_doubly_stochastic(), f"K({k},{b}) not doubly stochastic")
        res.expect(is_generalized_circulant(K, b % k), f"K({k},{b}) not a generalized circulant")
        for r in range(1, 5):
            res.expect(_guard(res, mult_tv_exact, k, b, r) is not None, f"TV bound k={k} b={b} r={r}")
        r = 1
        while b**r <= (10**4 if quick else 10**6):
            res.expect(k_row_power(k, b, r) == k_row_by_counting(k, b, r), f"counting k={k} b={b} r={r}")
            r += 1
    res.expect(mult_carry_trace(26, 10, [3, 2, 4, 1]) == (7, 5, 10, 3), "k=26 worked trace")
    return res


def check_sections(quick: bool = False) -> CheckResult:
    res = CheckResult("sections")
    for n, b in product(range(1, 4 if quick else 7), range(2, 6)):
        res.expect(_guard(res, trim_to_P, n, b) is not None, f"trim n={n} b={b}")
    rnd = random.Random(0)
    for n, r in product(range(0, 5), range(1, 5)):
        eul = [0] + [eulerian(n, j) for j in range(n)] + [0] if n else [1, 0]
        for h in (eul, [rnd.randint(0, 9) for _ in range(n + 2)]):
            res.expect(_guard(res, section_poly, h, r) is not None, f"section n={n} r={r} h={h}")
    return res


def check_card(quick: bool = False, seed: int = 0, steps: int = 10**5) -> CheckResult:
    res = CheckResult("card")
    for n, b in product(range(1, 5 if quick else 7), range(1, 5)):
        Q = card_tracking_matrix(n, b)
        res.expect(Q.is_doubly_stochastic(), f"Q({n},{b}) not doubly stochastic")
        if b >= 2:
            res.expect(char_poly(Q) == spectrum(n, b), f"char_poly Q({n},{b})")
        u = tuple(Fraction(1, n) for _ in range(n))
        res.expect(Q.vecmul(u) == u, f"uniform not stationary for Q({n},{b})")
    n, b = 4, 2
    steps = steps // 10 if quick else steps
    path = track_card_one(n, b, steps, make_rng(seed))
    Q = card_tracking_matrix(n, b)
    counts = [[0] * n for _ in range(n)]
    for x, y in zip(path, path[1:]):
        counts[x - 1][y - 1] += 1
    for i in range(n):
        tot = sum(counts[i])
        for j in range(n):
            q = float(Q[i, j])
            se = math.sqrt(q * (1 - q) / tot)
            res.expect(abs(counts[i][j] / tot - q) <= 4 * se, f"card tracking ({i+1},{j+1})")
    return res


CHECKS = {
    "golden": check_golden,
    "stationary": check_stationary,
    "eigen": check_eigen,
    "semigroup": check_semigroup,
    "tp2": check_tp2,
    "theorem-main": check_theorem_grid,
    "bijections": check_bijections,
    "separation": check_separation,
    "moments": check_moments,
    "shuffle": check_shuffle,
    "mult": check_mult,
    "sections": check_sections,
    "card": check_card,
}


def run_all(quick: bool = False) -> list[CheckResult]:
    return [fn(quick=quick) for fn in CHECKS.values()]
