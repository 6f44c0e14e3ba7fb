"""Curve-side automorphic data built on the global torsion Hall algebra.

The torsion Hall algebra of a curve is the restricted tensor product of
the local module Hall algebras at the closed points, with local parameter
u_x = q_x^(-1/2).  This module provides:

* point-supported generators T_{(0,r),x} and their character-twisted
  averages over closed points,
* the Green pairing of twisted averages (brute force against the closed
  form),
* Hecke eigenvalue formulas for the cusp eigenforms labeled by primitive
  character orbits: characteristic polynomial of the Frobenius class,
  elementary and power-sum eigenvalues, and the eigenvalue of the full
  twisted torsion average,
* the grouplike theta series appearing in the cusp eigenform coproduct,
* truncated Rankin-Selberg products and character L-functions,
* the cusp form census and an exact independence certificate for
  monomials in the twisted averages.

Everything is exact: scalars live in Q(zeta_M)[u]/(u^2 - q).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .curve import CharacterOrbit, ClosedPoint, CurveData, primitive_orbits
from .cyclotomic import get_curve_ring
from .dvr_hall import DvrHallAlgebra, aut_count, partitions
from .linalg import rank_mod_p
from .scalars import TruncatedSeries, series_exp


class AutoformContext:
    """Shared exact environment: curve, scalar ring, local Hall algebras."""

    def __init__(self, curve: CurveData, char_levels=(1,), max_point_degree=8):
        self.curve = curve
        self.max_point_degree = max_point_degree
        m = 1
        for lv in char_levels:
            m = lcm(m, curve.picard(lv).exponent)
        self.ring = get_curve_ring(curve.q, m, curve.trace)
        self._local: dict[tuple, DvrHallAlgebra] = {}
        self._points: dict[int, list[ClosedPoint]] = {}

    def closed_points_dividing(self, N: int) -> list[ClosedPoint]:
        if N > self.max_point_degree:
            raise ValueError(f"closed-point degree {N} over context budget "
                             f"{self.max_point_degree}")
        pts = self._points.get(N)
        if pts is None:
            all_pts = self.curve.closed_points(N)
            pts = [x for x in all_pts if N % x.degree == 0]
            self._points[N] = pts
        return pts

    def local_algebra(self, x: ClosedPoint) -> DvrHallAlgebra:
        alg = self._local.get(x.key())
        if alg is None:
            q_x = self.curve.q ** x.degree
            alg = DvrHallAlgebra(q_x, ring=self.ring,
                                 u_loc=self.ring.v ** x.degree)
            self._local[x.key()] = alg
        return alg

    def v_integer(self, r: int):
        return self.ring.nu_integer(r)

    def zero_elem(self) -> "GlobalTorsionElement":
        return GlobalTorsionElement(self, {})

    def one_elem(self) -> "GlobalTorsionElement":
        return GlobalTorsionElement(self, {(): self.ring.one})

    def monomial(self, pairs, coeff=None) -> "GlobalTorsionElement":
        """pairs: iterable of (ClosedPoint, partition)."""
        key = _mono_key(pairs)
        return GlobalTorsionElement(
            self, {key: self.ring.one if coeff is None else coeff})


def _mono_key(pairs):
    items = [((x.key()), tuple(lam)) for x, lam in pairs if lam]
    items.sort()
    return tuple(items)


class GlobalTorsionElement:
    """Linear combination of multi-point torsion monomials.

    A monomial is a sorted tuple of ((degree, index), partition) entries;
    the component at each closed point lives in the local Hall algebra at
    residue cardinality q^degree.
    """

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: AutoformContext, terms: dict):
        self.ctx = ctx
        self.terms = terms

    def is_zero(self):
        return not self.terms

    def scale(self, c):
        if isinstance(c, (int, Fraction)):
            if c == 0:
                return self.ctx.zero_elem()
        elif c.is_zero():
            return self.ctx.zero_elem()
        return GlobalTorsionElement(self.ctx,
                                    {k: v * c for k, v in self.terms.items()})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            if k in out:
                s = out[k] + v
                if s.is_zero():
                    del out[k]
                else:
                    out[k] = s
            else:
                out[k] = v
        return GlobalTorsionElement(self.ctx, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        if isinstance(other, GlobalTorsionElement):
            return _global_multiply(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, GlobalTorsionElement)
                and self.ctx is other.ctx and self.terms == other.terms)

    def degree_components(self) -> dict:
        out: dict = {}
        for mono, c in self.terms.items():
            d = sum(deg * sum(lam) for (deg, _), lam in mono)
            out.setdefault(d, {})[mono] = c
        return {d: GlobalTorsionElement(self.ctx, t) for d, t in out.items()}

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for mono, c in sorted(self.terms.items()):
            if not mono:
                bits.append(f"({c})*1")
                continue
            word = "*".join(f"O[x{list(k)}]^{list(lam)}" for k, lam in mono)
            bits.append(f"({c})*{word}")
        return " + ".join(bits)


def _point_index(ctx: AutoformContext, key) -> ClosedPoint:
    deg, idx = key
    for x in ctx.curve.closed_points(deg):
        if x.key() == key:
            return x
    raise KeyError(key)


def _global_multiply(A: GlobalTorsionElement, B: GlobalTorsionElement):
    ctx = A.ctx
    out: dict = {}
    for m1, c1 in A.terms.items():
        d1 = dict(m1)
        for m2, c2 in B.terms.items():
            c = c1 * c2
            if c.is_zero():
                continue
            d2 = dict(m2)
            # expand point by point
            partials = [((), ctx.ring.one)]
            for key in sorted(set(d1) | set(d2)):
                lam1 = d1.get(key, ())
                lam2 = d2.get(key, ())
                if not lam1 or not lam2:
                    lam = lam1 or lam2
                    partials = [(mono + ((key, lam),), w) for mono, w in partials]
                    continue
                x = _point_index(ctx, key)
                alg = ctx.local_algebra(x)
                loc = alg.multiply(alg.basis_element(lam1),
                                   alg.basis_element(lam2))
                partials = [
                    (mono + ((key, lam),), w * wl)
                    for mono, w in partials
                    for lam, wl in loc.terms.items()]
            for mono, w in partials:
                v = c * w
                if v.is_zero():
                    continue
                k = tuple(sorted(mono))
                if k in out:
                    out[k] = out[k] + v
                else:
                    out[k] = v
    return GlobalTorsionElement(ctx, {k: v for k, v in out.items()
                                      if not v.is_zero()})


def global_coproduct(A: GlobalTorsionElement) -> dict:
    """{(left_monomial, right_monomial): scalar} over the tensor square."""
    ctx = A.ctx
    out: dict = {}
    for mono, c in A.terms.items():
        partials = [((), (), ctx.ring.one)]
        for key, lam in mono:
            x = _point_index(ctx, key)
            alg = ctx.local_algebra(x)
            local = alg.coproduct(alg.basis_element(lam))
            partials = [
                (left + ((key, mu),) if mu else left,
                 right + ((key, nu),) if nu else right,
                 w * wl)
                for left, right, w in partials
                for (mu, nu), wl in local.items()]
        for left, right, w in partials:
            v = c * w
            if v.is_zero():
                continue
            k = (tuple(sorted(left)), tuple(sorted(right)))
            out[k] = out[k] + v if k in out else v
    return {k: v for k, v in out.items() if not v.is_zero()}


def global_green_pair(A: GlobalTorsionElement, B: GlobalTorsionElement):
    """Hermitian pairing: diagonal in the monomial basis, 1/#Aut weights."""
    ctx = A.ctx
    total = ctx.ring.zero
    for mono, c in A.terms.items():
        d = B.terms.get(mono)
        if d is None:
            continue
        w = Fraction(1)
        for (deg, _idx), lam in mono:
            w /= aut_count(lam, ctx.curve.q ** deg)
        total = total + c * d.conjugate() * w
    return total


# ---------------------------------------------------------------------------
# point-supported generators and twisted averages


def T0r_at_point(ctx: AutoformContext, r: int, x: ClosedPoint) -> GlobalTorsionElement:
    """The degree-r torsion generator supported at x (zero unless |x| | r)."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if r % x.degree:
        return ctx.zero_elem()
    alg = ctx.local_algebra(x)
    front = ctx.v_integer(r) * Fraction(x.degree, r)
    out = ctx.zero_elem()
    for lam in partitions(r // x.degree):
        coeff = front * alg.n_u(len(lam) - 1)
        out = out + ctx.monomial([(x, lam)], coeff)
    return out


def T0_twisted(ctx: AutoformContext, orbit: CharacterOrbit, N: int) -> GlobalTorsionElement:
    """Twisted average sum_x rho~(x) T_{(0,N),x} over closed points.

    The orbit is evaluated at its own level; it need not divide N (the sum
    is over points of degree dividing N either way).
    """
    out = ctx.zero_elem()
    for x in ctx.closed_points_dividing(N):
        rho_x = orbit.tilde_eval(x, ctx.ring)
        if rho_x.is_zero():
            continue
        out = out + T0r_at_point(ctx, N, x).scale(rho_x)
    return out


def green_pair_twisted(ctx: AutoformContext, rho: CharacterOrbit,
                       sigma: CharacterOrbit, n: int):
    """Pairing of twisted degree-n averages; brute force vs closed form.

    Returns the scalar; raises AssertionError if the two routes disagree.
    """
    if not rho.is_primitive():
        raise ValueError("first orbit must be primitive")
    brute = global_green_pair(T0_twisted(ctx, rho, n), T0_twisted(ctx, sigma, n))
    ring = ctx.ring
    if rho == sigma:
        count = ring.from_int(ctx.curve.count_via_trace(n))
        closed = (ring.v ** n) * ctx.v_integer(n) * count \
            * ((ring.v ** -1 - ring.v) * n * n).inverse()
    else:
        closed = ring.zero
    assert brute == closed, (brute, closed)
    return closed


# ---------------------------------------------------------------------------
# Hecke eigenvalue formulas


def _minus_point_exponents(orbit: CharacterOrbit, x: ClosedPoint) -> list[int]:
    """zeta_M exponents of rho applied to the inverted classes over x."""
    curve, n = orbit.curve, orbit.level
    pts = curve.points_above(x, n)
    rho = orbit.rep
    return [-rho.value_exponent(P) for P in pts]


def hecke_charpoly(ctx: AutoformContext, orbit: CharacterOrbit,
                   x: ClosedPoint) -> list:
    """Coefficients (low to high) of prod_i (T^{n/d} - rho(O(-x_i''))).

    The roots are the Hecke eigenvalues of the cusp eigenform labeled by
    the orbit, up to the standard q-power normalization.
    """
    if not orbit.is_primitive():
        raise ValueError("orbit must be primitive")
    n = orbit.level
    d = gcd(n, x.degree)
    m_n = orbit.curve.picard(n).exponent
    ring = ctx.ring
    step = n // d
    poly = [ring.one]
    for e in _minus_point_exponents(orbit, x):
        root = ring.zeta(m_n, e)
        # multiply by (T^step - root)
        new = [ring.zero] * (len(poly) + step)
        for k, c in enumerate(poly):
            new[k + step] = new[k + step] + c
            new[k] = new[k] - c * root
        poly = new
    return poly


def power_sum_eigenvalues(ctx: AutoformContext, orbit: CharacterOrbit,
                          x: ClosedPoint, r: int):
    """Power sums of the Hecke eigenvalues, with the q_x^{r(n-1)/2} weight."""
    if r < 1:
        raise ValueError("r must be >= 1")
    val = _power_sum_plain(ctx, orbit, x, r)
    if val is None:
        return ctx.ring.zero
    n = orbit.level
    return ctx.ring.u ** (x.degree * r * (n - 1)) * val


def _power_sum_plain(ctx, orbit, x, r):
    """p_r of the normalized eigenvalues (roots of unity), or None if 0."""
    n = orbit.level
    d = gcd(n, x.degree)
    if (r * d) % n:
        return None
    k = r * d // n
    m_n = orbit.curve.picard(n).exponent
    ring = ctx.ring
    total = ring.zero
    for e in _minus_point_exponents(orbit, x):
        total = total + ring.zeta(m_n, e * k)
    return total * Fraction(n, d)


def hecke_eigenvalue_elementary(ctx: AutoformContext, orbit: CharacterOrbit,
                                x: ClosedPoint, l: int):
    """Eigenvalue of the rank-l elementary Hecke modification at x.

    Cross-checked against Newton's identities applied to the power sums;
    no root extraction is ever performed.
    """
    n = orbit.level
    if not 1 <= l <= n:
        raise ValueError("l out of range")
    d = gcd(n, x.degree)
    ring = ctx.ring
    if (l * d) % n:
        value = ring.zero
    else:
        lp = l * d // n
        m_n = orbit.curve.picard(n).exponent
        exps = _minus_point_exponents(orbit, x)
        e_lp = _elementary_symmetric(ring, m_n, exps, lp)
        sign = (-1) ** (l + lp)
        value = ring.u ** (x.degree * l * (n - l)) * e_lp * sign
    # Newton cross-check on the undressed eigenvalues
    e_prev = [ring.one]
    for j in range(1, l + 1):
        total = ring.zero
        for k in range(1, j + 1):
            p_k = _power_sum_plain(ctx, orbit, x, k)
            if p_k is None:
                continue
            term = e_prev[j - k] * p_k
            total = total + (term if (k - 1) % 2 == 0 else -term)
        e_prev.append(total * Fraction(1, j))
    newton = ring.u ** (x.degree * l * (n - l)) * e_prev[l]
    assert newton == value, (value, newton)
    return value


def _elementary_symmetric(ring, m_n, exps, k):
    poly = [ring.one]
    for e in exps:
        root = ring.zeta(m_n, e)
        new = [ring.zero] * (len(poly) + 1)
        for i, c in enumerate(poly):
            new[i] = new[i] + c
            new[i + 1] = new[i + 1] + c * root
        poly = new
    return poly[k] if k < len(poly) else ring.zero


def hecke_T0N_eigenvalue(ctx: AutoformContext, rho: CharacterOrbit,
                         sigma: CharacterOrbit, N: int):
    """Eigenvalue of the degree-N twisted torsion average on the eigenform.

    Computed both as the literal character sum over Pic^0(X_N) and by the
    closed form (zero unless sigma is the norm of rho); asserted equal.
    """
    if not rho.is_primitive():
        raise ValueError("rho must be primitive")
    n = rho.level
    if N % n or sigma.level != N:
        raise ValueError("need n | N and sigma at level N")
    curve = ctx.curve
    ring = ctx.ring
    norm_rho = rho.rep.norm_to(N)
    # character sum: ([N] n / N^2) q^{N(n-1)/2} #X(F_{q^N})
    #                * sum_i <Fr^i(sigma), Norm(rho)>
    pts = curve.points(N)
    hits = ring.zero
    sig = sigma.rep
    m_N = curve.picard(N).exponent
    for _ in range(N):
        acc = ring.zero
        for P in pts:
            e = sig.value_exponent(P) - norm_rho.value_exponent(P)
            acc = acc + ring.zeta(m_N, e)
        hits = hits + acc * Fraction(1, len(pts))
        sig = sig.frobenius()
    count = curve.count_via_trace(N)
    front = ctx.v_integer(N) * Fraction(n, N * N) * (ring.u ** (N * (n - 1))) * count
    char_sum_value = front * hits
    if sigma == rho.norm_to(N):
        closed = ctx.v_integer(N) * Fraction(1, N) * (ring.u ** (N * (n - 1))) * count
    else:
        closed = ring.zero
    assert char_sum_value == closed, (char_sum_value, closed)
    return closed


# ---------------------------------------------------------------------------
# theta coproduct series


def theta_coproduct_coefficients(ctx: AutoformContext, orbit: CharacterOrbit,
                                 d_max: int) -> list[GlobalTorsionElement]:
    """Coefficients theta_0..theta_{d_max} of the grouplike coproduct series

        sum_d theta_d s^d = exp(n (v^-1 - v) sum_l T^{Norm(rho)}_{(0,nl)} s^l).
    """
    n = orbit.level
    ring = ctx.ring
    kappa = (ring.v ** -1 - ring.v) * n
    inner = {}
    for ell in range(1, d_max + 1):
        normed = orbit.norm_to(n * ell)
        inner[ell] = T0_twisted(ctx, normed, n * ell).scale(kappa)
    series = series_exp(TruncatedSeries(inner, d_max, ctx.one_elem()))
    return [series.coefficient(k) for k in range(d_max + 1)]


# ---------------------------------------------------------------------------
# L-functions


def l_function(ctx: AutoformContext, rho1: CharacterOrbit, rho2: CharacterOrbit,
               order: int) -> TruncatedSeries:
    """Truncated Rankin-Selberg product of the two labeled eigenforms.

    log L(f,g,t) = sum_x sum_k conj(p_k(f at x)) p_k(g at x) t^{k|x|} / k,
    with the power sums taken on the unit-circle normalized eigenvalues.
    """
    if not (rho1.is_primitive() and rho2.is_primitive()):
        raise ValueError("both orbits must be primitive")
    ring = ctx.ring
    log_coeffs: dict[int, object] = {}
    for x in ctx.curve.closed_points(order):
        f = x.degree
        for k in range(1, order // f + 1):
            p1 = _power_sum_plain(ctx, rho1, x, k)
            if p1 is None:
                continue
            p2 = _power_sum_plain(ctx, rho2, x, k)
            if p2 is None:
                continue
            val = p1.conjugate() * p2 * Fraction(1, k)
            deg = k * f
            log_coeffs[deg] = log_coeffs.get(deg, ring.zero) + val
    series = TruncatedSeries(log_coeffs, order, ring.one)
    return series_exp(series)


def zeta_xn_series(ctx: AutoformContext, n: int, order: int) -> TruncatedSeries:
    """zeta_{X_n}(t^n) truncated, coefficients in the scalar ring."""
    ring = ctx.ring
    base = ctx.curve.zeta_series(n, order // n if n else order)
    coeffs = {n * k: ring.from_fraction(v) for k, v in enumerate(base) if n * k <= order}
    return TruncatedSeries(coeffs, order, ring.one)


def character_l_function(level_curve: CurveData, chi, order: int,
                         ring=None) -> TruncatedSeries:
    """Truncated Euler product prod_y (1 - chi(O(y)) t^{|y|}).

    chi must restrict nontrivially to the degree-0 Picard group; the
    product then collapses to 1, which the caller can assert against the
    returned truncation.
    """
    if chi.is_trivial():
        raise ValueError("character must be nontrivial on Pic^0")
    if ring is None:
        ring = get_curve_ring(level_curve.q, level_curve.picard(1).exponent,
                              level_curve.trace)
    m1 = level_curve.picard(1).exponent
    series = TruncatedSeries({0: ring.one}, order, ring.one)
    for y in level_curve.closed_points(order):
        P = level_curve.points_above(y, 1)[0]
        e = chi.value_exponent(P)
        factor = TruncatedSeries({0: ring.one, y.degree: -ring.zeta(m1, e)},
                                 order, ring.one)
        series = series * factor
    return series


# ---------------------------------------------------------------------------
# cusp form census and independence certificate


def cusp_dimension(curve: CurveData, n: int) -> int:
    """Dimension of the space of cusp forms of rank n in degree 0."""
    return len(primitive_orbits(curve, n))


def cusp_dimension_component(curve: CurveData, n: int, d: int) -> int:
    """Degree-d component: zero unless n | d."""
    if d % n:
        return 0
    return cusp_dimension(curve, n)


def find_reduction_prime(ring, start: int = 10 ** 6):
    """A prime p with zeta_M and sqrt(q) images in F_p, plus those images."""
    m, q = ring.m, ring.q

    def is_prime(k):
        if k < 2:
            return False
        i = 2
        while i * i <= k:
            if k % i == 0:
                return False
            i += 1
        return True

    p = start
    while True:
        p += 1
        if not is_prime(p) or (p - 1) % m:
            continue
        if pow(q % p, (p - 1) // 2, p) != 1:
            continue
        # generator-power root of unity of exact order m
        g = 2
        while True:
            if pow(g, (p - 1) // 2, p) != 1 and _order_check(g, p, m):
                break
            g += 1
        zeta_img = pow(g, (p - 1) // m, p)
        u_img = _sqrt_mod(q % p, p)
        return p, zeta_img, u_img


def _order_check(g, p, m):
    z = pow(g, (p - 1) // m, p)
    for ell in range(2, m + 1):
        if m % ell == 0 and pow(z, m // ell, p) == 1:
            return False
    return True


def _sqrt_mod(a, p):
    for x in range(1, p):
        if (x * x) % p == a % p:
            return x
    raise ValueError("no square root mod p")


def monomial_independence_rank(ctx: AutoformContext, levels, max_total_degree: int):
    """Exact rank certificate for monomials in the twisted torsion averages.

    Builds all monomials of total degree <= max_total_degree in the family
    {T^rho~_{(0,d)} : d in levels, rho~ a Frobenius orbit at level d},
    expands them in the torsion monomial basis, and certifies full rank by
    reduction modulo a prime that embeds the scalar ring.  Returns
    (number_of_monomials, rank).
    """
    from .curve import character_orbits
    family = []
    for d in levels:
        for orbit in character_orbits(ctx.curve, d):
            family.append((d, orbit, T0_twisted(ctx, orbit, d)))
    # monomials as multisets over the family
    monos: list[tuple[int, GlobalTorsionElement]] = [(0, ctx.one_elem())]
    for d, _orbit, elem in family:
        extended = list(monos)
        for deg, cur in monos:
            acc = cur
            total = deg
            while total + d <= max_total_degree:
                acc = acc * elem
                total += d
                extended.append((total, acc))
        monos = extended
    monos = [(deg, e) for deg, e in monos if deg > 0]
    p, zeta_img, u_img = find_reduction_prime(ctx.ring)
    columns: dict = {}
    rows = []
    for _deg, elem in monos:
        row = {}
        for mono, c in elem.terms.items():
            col = columns.setdefault(mono, len(columns))
            row[col] = c.reduce_mod(p, zeta_img, u_img)
        rows.append(row)
    r = rank_mod_p(rows, len(columns), p)
    return len(monos), r
