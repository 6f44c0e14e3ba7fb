"""The desk-scale verification suite.

Each check returns a CheckResult; the CLI aggregates them into a report
and the acceptance tests assert them individually.  A check run below its
full-scale budget is marked "skip" (it still ran, at reduced scale).
Failures carry both sides of the violated identity as exact strings.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .autoforms import (AutoformContext, T0_twisted, character_l_function,
                        cusp_dimension, cusp_dimension_component,
                        global_coproduct, green_pair_twisted,
                        hecke_T0N_eigenvalue, l_function,
                        monomial_independence_rank,
                        theta_coproduct_coefficients, zeta_xn_series)
from .curve import (CurveData, all_characters, character_orbits,
                    primitive_orbits)
from .dvr_hall import (DvrHallAlgebra, aut_count, aut_count_bruteforce,
                       p_monomial, partitions)
from .elliptic_hall import EllipticHallAlgebra
from .lattice import delta, det, interior_points
from .ratfunc import FORMAL
from .scalars import TruncatedSeries, c_coefficient, nu_integer, series_exp


@dataclass
class CheckResult:
    name: str
    status: str  # pass | fail | skip
    detail: dict = field(default_factory=dict)
    elapsed: float = 0.0


def _result(name, ok, reduced, detail, t0):
    status = "fail" if not ok else ("skip" if reduced else "pass")
    return CheckResult(name, status, detail, round(time.time() - t0, 3))


def make_test_curves():
    return (CurveData(2, a3=1), CurveData(5, a4=1, a6=1))


def check_point_counts_and_zeta(curves=None, nmax=6, order=8) -> CheckResult:
    t0 = time.time()
    curves = curves if curves is not None else make_test_curves()
    reduced = nmax < 6 or order < 8
    detail = {}
    ok = True
    for curve in curves:
        for n in range(1, nmax + 1):
            enum = curve.count_points(n)
            trace = curve.count_via_trace(n)
            detail[f"q={curve.q} N_{n}"] = f"{enum}"
            if enum != trace:
                ok = False
                detail[f"q={curve.q} N_{n} mismatch"] = f"{enum} != {trace}"
        logs = TruncatedSeries(
            {k: Fraction(curve.count_via_trace(k), k) for k in range(1, order + 1)},
            order, Fraction(1))
        if series_exp(logs) != curve.zeta_truncated(1, order):
            ok = False
            detail[f"q={curve.q} zeta"] = "exp(sum N_k t^k/k) != rational expansion"
    return _result("point-counts-and-zeta", ok, reduced, detail, t0)


def check_hall_numbers(max_total=5, qs=(2, 3), aut_max=3) -> CheckResult:
    t0 = time.time()
    reduced = max_total < 5 or tuple(qs) != (2, 3) or aut_max < 3
    ok = True
    detail = {}
    triples = comms = 0
    for q in qs:
        alg = DvrHallAlgebra(q)
        parts_by_size = {s: list(partitions(s)) for s in range(0, max_total + 1)}
        for s1 in range(1, max_total - 1):
            for s2 in range(1, max_total - s1):
                for s3 in range(1, max_total - s1 - s2 + 1):
                    for l1 in parts_by_size[s1]:
                        for l2 in parts_by_size[s2]:
                            for l3 in parts_by_size[s3]:
                                a = alg.basis_element(l1)
                                b = alg.basis_element(l2)
                                c = alg.basis_element(l3)
                                if (a * b) * c != a * (b * c):
                                    ok = False
                                    detail["assoc"] = f"q={q} {l1},{l2},{l3}"
                                triples += 1
        for s1 in range(1, max_total):
            for s2 in range(1, max_total - s1 + 1):
                for l1 in parts_by_size[s1]:
                    for l2 in parts_by_size[s2]:
                        a = alg.basis_element(l1)
                        b = alg.basis_element(l2)
                        if a * b != b * a:
                            ok = False
                            detail["comm"] = f"q={q} {l1},{l2}"
                        comms += 1
        for s in range(1, min(aut_max, max_total) + 1):
            for lam in parts_by_size[s]:
                formula = aut_count(lam, q)
                brute = aut_count_bruteforce(lam, q)
                if formula != brute:
                    ok = False
                    detail["aut"] = f"q={q} {lam}: {formula} != {brute}"
    detail["associativity triples"] = str(triples)
    detail["commutativity pairs"] = str(comms)
    return _result("hall-number-oracle", ok, reduced, detail, t0)


def check_macdonald_bridge(rmax=4, samples=12, seed=0) -> CheckResult:
    t0 = time.time()
    reduced = rmax < 4
    alg = DvrHallAlgebra(2)
    ring = alg.ring
    u = alg.u
    ok = True
    detail = {}
    for r in range(1, rmax + 1):
        for s in range(1, rmax + 1):
            val = alg.green_pair(alg.F_element(r), alg.F_element(s))
            if r != s:
                if not val.is_zero():
                    ok = False
                    detail[f"(F_{r},F_{s})"] = str(val)
            else:
                want = (u ** r) * Fraction(r) * (u ** (-r) - u ** r).inverse()
                if val != want:
                    ok = False
                    detail[f"(F_{r},F_{r})"] = f"{val} != {want}"
        if alg.to_symmetric(alg.F_element(r)) != p_monomial(ring, (r,)):
            ok = False
            detail[f"Psi(F_{r})"] = "not the power sum"
    rng = random.Random(seed)
    small = [lam for s in (1, 2, 3) for lam in partitions(s)]
    for _ in range(samples):
        lam, mu = rng.choice(small), rng.choice(small)
        a, b = alg.basis_element(lam), alg.basis_element(mu)
        if alg.to_symmetric(a * b) != alg.to_symmetric(a) * alg.to_symmetric(b):
            ok = False
            detail["hom"] = f"{lam} * {mu}"
    detail["pair values checked"] = str(rmax * rmax)
    return _result("macdonald-bridge", ok, reduced, detail, t0)


def check_straightening(coord_bound=5, triples=200, twists=(1, 2), seed=1234,
                        sl2_samples=10, flip_relation_sign=False) -> CheckResult:
    t0 = time.time()
    reduced = coord_bound < 5 or triples < 200
    ok = True
    detail = {}
    done_total = 0
    for n in twists:
        alg = EllipticHallAlgebra(n, FORMAL, flip_relation_sign=flip_relation_sign)
        # relations vanish under straightening
        rel = 0
        for xq in range(-coord_bound, coord_bound + 1):
            for xp in range(-coord_bound, coord_bound + 1):
                x = (xq, xp)
                if x == (0, 0) or delta(x) != 1:
                    continue
                for yq in range(-coord_bound, coord_bound + 1):
                    for yp in range(-coord_bound, coord_bound + 1):
                        y = (yq, yp)
                        if y == (0, 0):
                            continue
                        try:
                            if det(x, y) == 0:
                                if not (alg.from_word([x, y])
                                        - alg.from_word([y, x])).is_zero():
                                    ok = False
                                    detail["relation1"] = f"n={n} {x},{y}"
                                continue
                            if interior_points(x, y) != 0:
                                continue
                            lhs = alg.from_word([y, x]) - alg.from_word([x, y])
                            if (lhs - alg.commutator_basic(x, y)).terms:
                                ok = False
                                detail["relation2"] = f"n={n} {x},{y}"
                        except Exception as exc:
                            ok = False
                            detail["relation-error"] = f"n={n} {x},{y}: {exc}"
                            continue
                        rel += 1
        detail[f"n={n} relation pairs"] = str(rel)
        rng = random.Random(seed + n)
        done = 0
        share = max(1, triples // len(tuple(twists)))
        while done < share:
            vs = [(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(3)]
            if (0, 0) in vs:
                continue
            try:
                a, b, c = (alg.generator(v) for v in vs)
                associative = (a * b) * c == a * (b * c)
            except Exception as exc:  # engine diagnostics count as failures
                ok = False
                detail["associativity"] = f"n={n} {vs}: {exc}"
                break
            if not associative:
                ok = False
                detail["associativity"] = f"n={n} {vs}"
                break
            done += 1
        done_total += done
        g = ((0, -1), (1, 0))
        for _ in range(sl2_samples):
            va = (rng.randint(-2, 2), rng.randint(-2, 2))
            vb = (rng.randint(-2, 2), rng.randint(-2, 2))
            if (0, 0) in (va, vb):
                continue
            a, b = alg.generator(va), alg.generator(vb)
            if alg.sl2_act(g, a * b) != alg.sl2_act(g, a) * alg.sl2_act(g, b):
                ok = False
                detail["sl2"] = f"n={n} {va},{vb}"
    detail["associativity triples"] = str(done_total)
    return _result("straightening-soundness", ok, reduced, detail, t0)


def check_functional_relations(window=4, m_bound=3, twists=(1, 2)) -> CheckResult:
    t0 = time.time()
    reduced = window < 4 or m_bound < 3
    ok = True
    detail = {}
    for n in twists:
        alg = EllipticHallAlgebra(n, FORMAL)
        rows = alg.verify_quadratic_relations(window)
        bad = [r for r in rows if not r["ok"]]
        detail[f"n={n} quadratic identities"] = str(len(rows))
        if bad:
            ok = False
            detail[f"n={n} quadratic failures"] = str(bad[:3])
        for m in range(-m_bound, m_bound + 1):
            if not alg.verify_cubic_relation(m):
                ok = False
                detail[f"n={n} cubic m={m}"] = "nonzero residue"
        detail[f"n={n} cubic m range"] = f"[-{m_bound},{m_bound}]"
    return _result("functional-relations", ok, reduced, detail, t0)


def check_twisted_pairing(ctx=None, nmax=3) -> CheckResult:
    t0 = time.time()
    reduced = nmax < 3
    if ctx is None:
        ctx = AutoformContext(make_test_curves()[0], char_levels=tuple(range(1, nmax + 1)))
    ok = True
    detail = {}
    for n in range(1, nmax + 1):
        prim = primitive_orbits(ctx.curve, n)
        for r in prim:
            for s in character_orbits(ctx.curve, n):
                try:
                    val = green_pair_twisted(ctx, r, s, n)
                except AssertionError as exc:
                    ok = False
                    detail[f"n={n}"] = f"{exc}"
                    continue
                if s == r and val.is_zero():
                    ok = False
                    detail[f"n={n} diagonal zero"] = str(r)
        detail[f"n={n} primitive orbits"] = str(len(prim))
    return _result("twisted-scalar-product", ok, reduced, detail, t0)


def check_hecke_action(ctx=None, nmax=2, Nmax=4) -> CheckResult:
    t0 = time.time()
    reduced = nmax < 2 or Nmax < 4
    if ctx is None:
        ctx = AutoformContext(make_test_curves()[0],
                              char_levels=tuple(range(1, Nmax + 1)))
    ok = True
    detail = {}
    checked = 0
    for n in range(1, nmax + 1):
        for rho in primitive_orbits(ctx.curve, n):
            for N in range(n, Nmax + 1, n):
                for sigma in character_orbits(ctx.curve, N):
                    try:
                        hecke_T0N_eigenvalue(ctx, rho, sigma, N)
                    except AssertionError as exc:
                        ok = False
                        detail[f"n={n} N={N}"] = str(exc)
                    checked += 1
    detail["eigenvalue identities"] = str(checked)
    return _result("hecke-action", ok, reduced, detail, t0)


def check_l_functions(ctx=None, order=8, char_order=6) -> CheckResult:
    t0 = time.time()
    reduced = order < 8 or char_order < 6
    curve = make_test_curves()[0] if ctx is None else ctx.curve
    if ctx is None:
        ctx = AutoformContext(curve, char_levels=(1, 2))
    ok = True
    detail = {}
    forms = [(n, rho) for n in (1, 2) for rho in primitive_orbits(curve, n)]
    one = TruncatedSeries({0: ctx.ring.one}, order, ctx.ring.one)
    for i, (n1, r1) in enumerate(forms):
        selfL = l_function(ctx, r1, r1, order)
        zz = zeta_xn_series(ctx, n1, order)
        if selfL != zz:
            ok = False
            detail[f"L(f,f) rank {n1} #{i}"] = f"{selfL} != {zz}"
        for j, (n2, r2) in enumerate(forms):
            if j <= i:
                continue
            cross = l_function(ctx, r1, r2, order)
            if cross != one:
                ok = False
                detail[f"L(f,g) {i},{j}"] = str(cross)
    detail["eigenform pairs"] = str(len(forms) * (len(forms) - 1) // 2)
    for chi in all_characters(curve, 1):
        if chi.is_trivial():
            continue
        series = character_l_function(curve, chi, char_order)
        if any(not series.coefficient(k).is_zero() for k in range(1, char_order + 1)):
            ok = False
            detail[f"character L {chi}"] = "not identically 1"
    return _result("l-functions", ok, reduced, detail, t0)


def check_cusp_census(curve=None, nmax=3) -> CheckResult:
    t0 = time.time()
    reduced = nmax < 3
    curve = curve if curve is not None else make_test_curves()[0]
    ok = True
    detail = {}
    for n in range(1, nmax + 1):
        # primitive_orbits cross-validates orbit size against norm exclusion
        try:
            dim = cusp_dimension(curve, n)
        except AssertionError as exc:
            ok = False
            detail[f"n={n}"] = str(exc)
            continue
        detail[f"dim rank {n}, degree 0"] = str(dim)
        for d in range(1, n):
            if cusp_dimension_component(curve, n, d) != 0:
                ok = False
                detail[f"n={n} d={d}"] = "nonzero off the lattice n | d"
    return _result("cusp-form-census", ok, reduced, detail, t0)


def check_step2_identity(curve=None, Nmax=6) -> CheckResult:
    """Structure constant of the loop algebra = curve-side eigenvalue."""
    t0 = time.time()
    reduced = Nmax < 6
    curve = curve if curve is not None else make_test_curves()[0]
    from .cyclotomic import get_curve_ring
    ring = get_curve_ring(curve.q, 1, curve.trace)
    ok = True
    detail = {}
    for N in range(1, Nmax + 1):
        c_val = c_coefficient(N, ring)
        count = curve.count_via_trace(N)
        want = ring.nu_integer(N) * ring.v ** N * Fraction(count, N)
        detail[f"c_{N}"] = str(c_val)
        if c_val != want:
            ok = False
            detail[f"c_{N} mismatch"] = f"{c_val} != {want}"
    # formal-side identity under the specialization lift
    s, sb = FORMAL.s, FORMAL.sb
    for i in range(1, Nmax + 1):
        lhs = c_coefficient(i, FORMAL)
        count_lift = (s * sb) ** (2 * i) + 1 - s ** (2 * i) - sb ** (2 * i)
        rhs = nu_integer(i, FORMAL) * (s * sb) ** (-i) * count_lift * Fraction(1, i)
        if lhs != rhs:
            ok = False
            detail[f"formal c_{i}"] = "lifted specialization identity fails"
    # engine-side: the commutator coefficient at twist n matches
    for n in (1, 2):
        alg = EllipticHallAlgebra(n, ring)
        for d in (1, 2, 3):
            N = n * d
            if N > Nmax:
                continue
            cm = alg.commutator((0, d), (1, 0))
            want = alg.generator((1, d)).scale(
                ring.nu_integer(N) * ring.v ** N
                * Fraction(curve.count_via_trace(N), N))
            if cm != want:
                ok = False
                detail[f"n={n} d={d}"] = "engine commutator mismatch"
    return _result("step2-cross-identity", ok, reduced, detail, t0)


def check_independence(ctx=None, levels=(1, 2, 3), degree=6) -> CheckResult:
    t0 = time.time()
    reduced = tuple(levels) != (1, 2, 3) or degree < 6
    if ctx is None:
        ctx = AutoformContext(make_test_curves()[0], char_levels=tuple(levels))
    count, rk = monomial_independence_rank(ctx, levels, degree)
    ok = count == rk
    detail = {"monomials": str(count), "rank": str(rk)}
    return _result("twisted-average-independence", ok, reduced, detail, t0)


def check_theta_grouplike(ctx=None, d_max=3) -> CheckResult:
    t0 = time.time()
    reduced = d_max < 3
    if ctx is None:
        ctx = AutoformContext(make_test_curves()[0],
                              char_levels=tuple(range(1, d_max + 1)))
    ok = True
    detail = {}
    rho = primitive_orbits(ctx.curve, 1)[0]
    th = theta_coproduct_coefficients(ctx, rho, d_max)
    for d in range(d_max + 1):
        lhs = global_coproduct(th[d])
        rhs: dict = {}
        for i in range(d + 1):
            for m1, c1 in th[i].terms.items():
                for m2, c2 in th[d - i].terms.items():
                    k = (m1, m2)
                    v = c1 * c2
                    rhs[k] = rhs[k] + v if k in rhs else v
        rhs = {k: v for k, v in rhs.items() if not v.is_zero()}
        if lhs != rhs:
            ok = False
            detail[f"d={d}"] = "coproduct not grouplike"
    detail["orders checked"] = str(d_max)
    return _result("theta-grouplike", ok, reduced, detail, t0)


FULL_SUITE = [
    ("point-counts-and-zeta", check_point_counts_and_zeta),
    ("hall-number-oracle", check_hall_numbers),
    ("macdonald-bridge", check_macdonald_bridge),
    ("straightening-soundness", check_straightening),
    ("functional-relations", check_functional_relations),
    ("twisted-scalar-product", check_twisted_pairing),
    ("hecke-action", check_hecke_action),
    ("l-functions", check_l_functions),
    ("cusp-form-census", check_cusp_census),
    ("step2-cross-identity", check_step2_identity),
    ("theta-grouplike", check_theta_grouplike),
    ("twisted-average-independence", check_independence),
]


def run_verify_all(budget_degree=None, triples=None, seed=1234,
                   flip_relation_sign=False):
    """Run every check; budgets below full scale mark results as skip."""
    coord = 5 if budget_degree is None else min(5, budget_degree)
    nmax_curve = 6 if budget_degree is None else min(6, budget_degree)
    trip = 200 if triples is None else triples
    window = 4 if budget_degree is None else min(4, budget_degree)
    lfun_order = 8 if budget_degree is None else min(8, budget_degree + 2)
    nmax_tw = 3 if budget_degree is None else min(3, max(1, budget_degree // 2))
    nmax_N = 4 if budget_degree is None else min(4, budget_degree)
    ind_levels = (1, 2, 3) if budget_degree is None else tuple(
        range(1, min(3, max(1, budget_degree // 2)) + 1))
    ind_degree = 6 if budget_degree is None else min(6, budget_degree)
    results = [
        check_point_counts_and_zeta(nmax=nmax_curve, order=lfun_order),
        check_hall_numbers(max_total=min(5, 5 if budget_degree is None else budget_degree)),
        check_macdonald_bridge(rmax=4 if budget_degree is None else min(4, budget_degree)),
        check_straightening(coord_bound=coord, triples=trip, seed=seed,
                            flip_relation_sign=flip_relation_sign),
        check_functional_relations(window=window,
                                   m_bound=3 if budget_degree is None else min(3, budget_degree)),
        check_twisted_pairing(nmax=nmax_tw),
        check_hecke_action(nmax=min(2, nmax_N), Nmax=nmax_N),
        check_l_functions(order=lfun_order, char_order=min(6, lfun_order)),
        check_cusp_census(nmax=nmax_tw),
        check_step2_identity(Nmax=nmax_curve),
        check_theta_grouplike(d_max=min(3, nmax_tw)),
        check_independence(levels=ind_levels, degree=ind_degree),
    ]
    return results
