"""Elliptic curves over finite fields, exactly.

Covers point enumeration over the extension tower, the chord-tangent group
law transported from the degree-0 Picard group (the rational origin x0 is
the point at infinity and the neutral element), Frobenius orbits giving the
closed points, Picard group structure with discrete-log tables, character
groups with Frobenius action and relative norm maps, primitivity of
character orbits, twisted averages rho~(x), and zeta functions.

Points of every level are either None (infinity) or (x, y) pairs of
finite-field elements.  Character values live in the cyclotomic scalar
rings of :mod:`ellhall.cyclotomic`.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import gcd, lcm

from .cyclotomic import get_curve_ring
from .finitefield import factor_prime_power, get_field
from .scalars import TruncatedSeries


class BudgetExceeded(RuntimeError):
    pass


class CurveData:
    """A smooth Weierstrass curve y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.

    Coefficients are integers reduced into the prime field; the base field
    F_q must be a prime field or have its coefficients in the prime field.
    """

    def __init__(self, q, a1=0, a2=0, a3=0, a4=0, a6=0, max_field_size=10 ** 6):
        self.q = q
        self.p, self.k = factor_prime_power(q)
        self.a_ints = (a1, a2, a3, a4, a6)
        self.max_field_size = max_field_size
        self._levels: dict[int, _Level] = {}
        self._closed: list[list] = [[]]  # degree-indexed, [0] unused
        self._picard: dict[int, PicardGroup] = {}
        base = self.level(1)
        if self._discriminant(base).is_zero():
            raise ValueError("singular curve: discriminant vanishes")
        self.trace = q + 1 - len(base.points)

    @staticmethod
    def _discriminant(level):
        a1, a2, a3, a4, a6 = level.a
        two = level.field.from_int(2)
        three = level.field.from_int(3)
        four = two * two
        b2 = a1 * a1 + four * a2
        b4 = two * a4 + a1 * a3
        b6 = a3 * a3 + four * a6
        b8 = (a1 * a1 * a6 + four * a2 * a6 - a1 * a3 * a4
              + a2 * a3 * a3 - a4 * a4)
        nine = three * three
        return (-(b2 * b2) * b8 - two ** 3 * b4 ** 3 - nine * three * b6 * b6
                + nine * b2 * b4 * b6)

    # -- levels and enumeration ------------------------------------------

    def level(self, n: int) -> "_Level":
        lv = self._levels.get(n)
        if lv is None:
            if self.q ** n > self.max_field_size:
                raise BudgetExceeded(f"field size q^{n} exceeds budget")
            lv = _Level(self, n)
            self._levels[n] = lv
        return lv

    def points(self, n: int) -> list:
        return self.level(n).points

    def count_points(self, n: int) -> int:
        """#X(F_{q^n}) by enumeration (cheap levels are cached)."""
        return len(self.points(n))

    def count_via_trace(self, n: int) -> int:
        t = [2, self.trace]
        while len(t) <= n:
            t.append(self.trace * t[-1] - self.q * t[-2])
        return self.q ** n + 1 - t[n]

    # -- group law ----------------------------------------------------------

    def neg(self, n: int, P):
        if P is None:
            return None
        lv = self.level(n)
        a1, _, a3, _, _ = lv.a
        x, y = P
        return (x, -y - a1 * x - a3)

    def add(self, n: int, P, Q):
        if P is None:
            return Q
        if Q is None:
            return P
        lv = self.level(n)
        a1, a2, a3, a4, a6 = lv.a
        x1, y1 = P
        x2, y2 = Q
        if x1 == x2:
            if y2 == -y1 - a1 * x1 - a3:
                return None
            two = lv.field.from_int(2)
            three = lv.field.from_int(3)
            den = two * y1 + a1 * x1 + a3
            lam = (three * x1 * x1 + two * a2 * x1 + a4 - a1 * y1) / den
            nu = (-(x1 ** 3) + a4 * x1 + two * a6 - a3 * y1) / den
        else:
            den = x2 - x1
            lam = (y2 - y1) / den
            nu = (y1 * x2 - y2 * x1) / den
        x3 = lam * lam + a1 * lam - a2 - x1 - x2
        y3 = -(lam + a1) * x3 - nu - a3
        return (x3, y3)

    def group_add(self, n: int, P, Q):
        """Validated chord-tangent addition (rejects points off the curve)."""
        for R in (P, Q):
            if not self.on_curve(n, R):
                raise ValueError(f"point {R} is not on the curve")
        return self.add(n, P, Q)

    def mul(self, n: int, k: int, P):
        if k < 0:
            return self.mul(n, -k, self.neg(n, P))
        acc = None
        base = P
        while k:
            if k & 1:
                acc = self.add(n, acc, base)
            base = self.add(n, base, base)
            k >>= 1
        return acc

    def on_curve(self, n: int, P) -> bool:
        if P is None:
            return True
        lv = self.level(n)
        a1, a2, a3, a4, a6 = lv.a
        x, y = P
        return y * y + a1 * x * y + a3 * y == x ** 3 + a2 * x * x + a4 * x + a6

    # -- Frobenius and embeddings -------------------------------------------

    def frobenius(self, n: int, P, times: int = 1):
        """The base q-power Frobenius on level-n points."""
        if P is None:
            return None
        e = pow(self.q, times, self.q ** n - 1) if self.q ** n > 2 else self.q ** times
        x, y = P
        return (x ** e, y ** e)

    def embed_point(self, m: int, n: int, P):
        if n % m:
            raise ValueError("embedding requires m | n")
        if P is None or m == n:
            return P
        emb = self.level(n).field.embedding_from(self.level(m).field)
        return (emb[P[0]], emb[P[1]])

    def restrict_point(self, n: int, m: int, P):
        """Inverse of embed_point on the image of X(F_{q^m})."""
        if P is None or m == n:
            return P
        down = self.level(n)._down_maps.get(m)
        if down is None:
            emb = self.level(n).field.embedding_from(self.level(m).field)
            down = {v: k for k, v in emb.items()}
            self.level(n)._down_maps[m] = down
        return (down[P[0]], down[P[1]])

    # -- closed points ---------------------------------------------------------

    def closed_points(self, max_degree: int) -> list["ClosedPoint"]:
        """All closed points of degree <= max_degree, deterministic order."""
        while len(self._closed) - 1 < max_degree:
            d = len(self._closed)
            pts = sorted(self.points(d), key=_point_sort_key)
            proper = [e for e in range(1, d) if d % e == 0]
            seen = set()
            out = []
            for P in pts:
                if P in seen:
                    continue
                if any(self.frobenius(d, P, e) == P for e in proper):
                    seen.add(P)  # lives at a lower level
                    continue
                orbit = [P]
                cur = self.frobenius(d, P)
                while cur != P:
                    orbit.append(cur)
                    cur = self.frobenius(d, cur)
                assert len(orbit) == d
                seen.update(orbit)
                out.append(ClosedPoint(self, d, min(orbit, key=_point_sort_key),
                                       len(out)))
            self._closed.append(out)
        result = []
        for d in range(1, max_degree + 1):
            result.extend(self._closed[d])
        return result

    def closed_point_count(self, d: int) -> int:
        self.closed_points(d)
        return len(self._closed[d])

    def points_above(self, x: "ClosedPoint", n: int) -> list:
        """Degree-0 classes of the closed points of the level-n curve over x.

        Returned as points of X(F_{q^n}): the group-law sum of one Frobenius
        coset of geometric points above x, one entry per closed point above.
        """
        f = x.degree
        d = gcd(f, n)
        big = lcm(f, n)
        y = self.embed_point(f, big, x.rep)
        out = []
        for i in range(d):
            yi = self.frobenius(big, y, i)
            acc = None
            for j in range(f // d):
                acc = self.add(big, acc, self.frobenius(big, yi, n * j))
            out.append(self.restrict_point(big, n, acc))
        return out

    def norm_points(self, m: int, n: int, P):
        """Relative norm X(F_{q^n}) -> X(F_{q^m}) for m | n."""
        if n % m:
            raise ValueError("norm requires m | n")
        Pn = P
        acc = None
        for i in range(n // m):
            acc = self.add(n, acc, self.frobenius(n, Pn, m * i))
        return self.restrict_point(n, m, acc)

    # -- Picard structure and characters -----------------------------------

    def picard(self, n: int) -> "PicardGroup":
        pic = self._picard.get(n)
        if pic is None:
            pic = PicardGroup(self, n)
            self._picard[n] = pic
        return pic

    def character_ring(self, max_level: int, extra_order: int = 1):
        """Scalar ring containing all character values up to max_level."""
        m = extra_order
        for lv in range(1, max_level + 1):
            m = lcm(m, self.picard(lv).exponent)
        return get_curve_ring(self.q, m, self.trace)

    def zeta_series(self, n: int, order: int) -> list[Fraction]:
        """Coefficients of zeta_{X_n}(t) up to t^order, exactly."""
        t_pow = [2, self.trace]
        while len(t_pow) <= n:
            t_pow.append(self.trace * t_pow[-1] - self.q * t_pow[-2])
        a_n = t_pow[n]
        qn = self.q ** n
        num = [Fraction(1), Fraction(-a_n), Fraction(qn)]

        def geo(j):
            # 1/((1-t)(1-qn t)) = sum_j (qn^{j+1}-1)/(qn-1) t^j
            return Fraction(qn ** (j + 1) - 1, qn - 1)

        return [sum(num[i] * geo(k - i) for i in range(3) if k - i >= 0)
                for k in range(order + 1)]

    def zeta_rational(self, n: int):
        """((1 - a_n t + q^n t^2), (1 - t)(1 - q^n t)) coefficient lists."""
        t_pow = [2, self.trace]
        while len(t_pow) <= n:
            t_pow.append(self.trace * t_pow[-1] - self.q * t_pow[-2])
        qn = self.q ** n
        return [1, -t_pow[n], qn], [1, -(1 + qn), qn]

    def zeta_truncated(self, n: int, order: int) -> TruncatedSeries:
        return TruncatedSeries(
            {k: v for k, v in enumerate(self.zeta_series(n, order))},
            order, Fraction(1))

    def __repr__(self):
        a1, a2, a3, a4, a6 = self.a_ints
        return f"CurveData(q={self.q}, a=[{a1},{a2},{a3},{a4},{a6}])"


def _point_sort_key(P):
    if P is None:
        return ()
    return (P[0].coeffs, P[1].coeffs)


class _Level:
    """Per-extension data: field, embedded coefficients, point list."""

    def __init__(self, curve: CurveData, n: int):
        self.curve = curve
        self.n = n
        self.field = get_field(curve.p, curve.k * n)
        f = self.field
        self.a = tuple(f.from_int(c) for c in curve.a_ints)
        self._down_maps: dict[int, dict] = {}
        self.points = self._enumerate()

    def _enumerate(self):
        f = self.field
        a1, a2, a3, a4, a6 = self.a
        pts = [None]
        if f.p == 2:
            sqrt_map = {}
            artin = {}
            for z in f:
                sqrt_map[z * z] = z
                key = z * z + z
                if key not in artin:
                    artin[key] = z
            for x in f:
                c = a1 * x + a3
                d = x ** 3 + a2 * x * x + a4 * x + a6
                if c.is_zero():
                    pts.append((x, sqrt_map[d]))
                else:
                    c2 = c * c
                    w = artin.get(d / c2)
                    if w is not None:
                        pts.append((x, c * w))
                        pts.append((x, c * w + c))
        else:
            sqrt_map = {}
            for z in f:
                if z * z not in sqrt_map:
                    sqrt_map[z * z] = z
            inv2 = f.from_int(2).inverse()
            for x in f:
                c = a1 * x + a3
                d = x ** 3 + a2 * x * x + a4 * x + a6
                disc = d + c * c * inv2 * inv2
                z = sqrt_map.get(disc)
                if z is None:
                    continue
                if z.is_zero():
                    pts.append((x, -c * inv2))
                else:
                    pts.append((x, -c * inv2 + z))
                    pts.append((x, -c * inv2 - z))
        return pts


class ClosedPoint:
    """Frobenius orbit of a geometric point; degree = orbit size."""

    __slots__ = ("curve", "degree", "rep", "index")

    def __init__(self, curve, degree, rep, index):
        self.curve = curve
        self.degree = degree
        self.rep = rep
        self.index = index

    @property
    def residue_cardinality(self):
        return self.curve.q ** self.degree

    def key(self):
        return (self.degree, self.index)

    def __eq__(self, other):
        return (isinstance(other, ClosedPoint) and self.curve is other.curve
                and self.key() == other.key())

    def __hash__(self):
        return hash((id(self.curve), self.key()))

    def __lt__(self, other):
        return self.key() < other.key()

    def __repr__(self):
        return f"x[{self.degree}.{self.index}]"


class PicardGroup:
    """Structure of Pic^0(X_n) = X(F_{q^n}) with a discrete-log table."""

    def __init__(self, curve: CurveData, n: int):
        self.curve = curve
        self.n = n
        pts = sorted(curve.points(n), key=_point_sort_key)
        N = len(pts)
        orders = {}
        for P in pts:
            k = 1
            acc = P
            while acc is not None:
                acc = curve.add(n, acc, P)
                k += 1
            orders[_key_of(P)] = k if P is not None else 1
        orders[_key_of(None)] = 1
        exponent = 1
        for P in pts:
            exponent = lcm(exponent, orders[_key_of(P)])
        assert N % exponent == 0
        d2 = exponent
        d1 = N // exponent
        self.exponent = exponent
        if d1 == 1:
            g2 = next(P for P in pts if orders[_key_of(P)] == d2)
            self.divisors = (d2,)
            self.generators = (g2,)
        else:
            assert d2 % d1 == 0, "not a rank-2 abelian group shape"
            g2 = next(P for P in pts if orders[_key_of(P)] == d2)
            span_g2 = set()
            acc = None
            for _ in range(d2):
                span_g2.add(_key_of(acc))
                acc = curve.add(n, acc, g2)
            g1 = None
            for P in pts:
                if orders[_key_of(P)] != d1:
                    continue
                ok = True
                acc = P
                for _ in range(d1 - 1):
                    if _key_of(acc) in span_g2:
                        ok = False
                        break
                    acc = curve.add(n, acc, P)
                if ok:
                    g1 = P
                    break
            assert g1 is not None, "no complementary generator found"
            self.divisors = (d1, d2)
            self.generators = (g1, g2)
        # discrete-log table
        self.dlog = {}
        idx = [range(d) for d in self.divisors]
        for exps in product(*idx):
            acc = None
            for g, e in zip(self.generators, exps):
                acc = curve.add(n, acc, curve.mul(n, e, g))
            key = _key_of(acc)
            assert key not in self.dlog, "generators do not span freely"
            self.dlog[key] = exps
        assert len(self.dlog) == N

    def log(self, P):
        return self.dlog[_key_of(P)]

    def __repr__(self):
        return (f"PicardGroup(level={self.n}, "
                + " x ".join(f"Z/{d}" for d in self.divisors) + ")")


def _key_of(P):
    if P is None:
        return None
    return (P[0].coeffs, P[1].coeffs)


class Character:
    """Character of Pic^0(X_n), stored by exponents against the generators."""

    __slots__ = ("curve", "level", "exps")

    def __init__(self, curve, level, exps):
        self.curve = curve
        self.level = level
        self.exps = tuple(e % d for e, d in zip(exps, curve.picard(level).divisors))

    def value_exponent(self, P) -> int:
        """rho(P) = zeta_M^(this), M the group exponent of the level."""
        pic = self.curve.picard(self.level)
        logs = pic.log(P)
        m = pic.exponent
        return sum(e * v * (m // d)
                   for e, v, d in zip(self.exps, logs, pic.divisors)) % m

    def eval(self, P, ring=None):
        pic = self.curve.picard(self.level)
        if ring is None:
            ring = get_curve_ring(self.curve.q, pic.exponent, self.curve.trace)
        return ring.zeta(pic.exponent, self.value_exponent(P))

    def is_trivial(self) -> bool:
        return all(e == 0 for e in self.exps)

    def order(self) -> int:
        pic = self.curve.picard(self.level)
        o = 1
        for e, d in zip(self.exps, pic.divisors):
            o = lcm(o, d // gcd(e, d))
        return o

    def frobenius(self) -> "Character":
        """The dual Frobenius action: rho -> rho o Fr."""
        curve, n = self.curve, self.level
        pic = curve.picard(n)
        m = pic.exponent
        new = []
        for g, d in zip(pic.generators, pic.divisors):
            e = self.value_exponent(curve.frobenius(n, g))
            assert (e * d) % m == 0
            new.append((e * d // m) % d)
        return Character(curve, n, new)

    def norm_to(self, big_level: int) -> "Character":
        """Relative norm of characters, level n -> multiple level N."""
        curve, n = self.curve, self.level
        if big_level % n:
            raise ValueError("norm of characters requires n | N")
        pic_big = curve.picard(big_level)
        m_small = curve.picard(n).exponent
        new = []
        for g, d in zip(pic_big.generators, pic_big.divisors):
            img = curve.norm_points(n, big_level, g)
            e = self.value_exponent(img)
            assert (e * d) % m_small == 0
            new.append((e * d // m_small) % d)
        return Character(curve, big_level, new)

    def __eq__(self, other):
        return (isinstance(other, Character) and self.curve is other.curve
                and self.level == other.level and self.exps == other.exps)

    def __hash__(self):
        return hash((id(self.curve), self.level, self.exps))

    def __repr__(self):
        return f"chi[{self.level}]{list(self.exps)}"


def all_characters(curve, n: int) -> list[Character]:
    pic = curve.picard(n)
    return [Character(curve, n, exps)
            for exps in product(*[range(d) for d in pic.divisors])]


class CharacterOrbit:
    """Frobenius orbit of a character; the twisted average rho~ lives here."""

    __slots__ = ("rep", "size")

    def __init__(self, chi: Character):
        orbit = [chi]
        cur = chi.frobenius()
        while cur != chi:
            orbit.append(cur)
            cur = cur.frobenius()
        self.size = len(orbit)
        self.rep = min(orbit, key=lambda c: c.exps)

    @property
    def curve(self):
        return self.rep.curve

    @property
    def level(self):
        return self.rep.level

    def members(self) -> list[Character]:
        out = [self.rep]
        cur = self.rep.frobenius()
        while cur != self.rep:
            out.append(cur)
            cur = cur.frobenius()
        return out

    def is_primitive(self) -> bool:
        return self.size == self.level

    def norm_to(self, big_level: int) -> "CharacterOrbit":
        return CharacterOrbit(self.rep.norm_to(big_level))

    def tilde_eval(self, x: ClosedPoint, ring=None):
        """The averaged character value rho~(x) on a closed point of X."""
        curve, n = self.curve, self.level
        pts = curve.points_above(x, n)
        if ring is None:
            ring = get_curve_ring(curve.q, curve.picard(n).exponent, curve.trace)
        total = ring.zero
        for P in pts:
            total = total + self.rep.eval(P, ring)
        return total * Fraction(1, len(pts))

    def __eq__(self, other):
        return isinstance(other, CharacterOrbit) and self.rep == other.rep

    def __hash__(self):
        return hash(("orbit", self.rep))

    def __repr__(self):
        return f"orbit[{self.level}]{list(self.rep.exps)}(size {self.size})"


def character_orbits(curve, n: int) -> list[CharacterOrbit]:
    seen = set()
    out = []
    for chi in all_characters(curve, n):
        orb = CharacterOrbit(chi)
        if orb.rep not in seen:
            seen.add(orb.rep)
            out.append(orb)
    out.sort(key=lambda o: o.rep.exps)
    return out


def primitive_orbits(curve, n: int) -> list[CharacterOrbit]:
    """Orbits of maximal size n, cross-validated by norm-image exclusion."""
    orbits = character_orbits(curve, n)
    by_orbit = [o for o in orbits if o.is_primitive()]
    norm_images = set()
    for d in range(1, n):
        if n % d:
            continue
        for chi in all_characters(curve, d):
            norm_images.add(chi.norm_to(n))
    by_exclusion = [o for o in orbits
                    if not any(m in norm_images for m in o.members())]
    assert {o.rep for o in by_orbit} == {o.rep for o in by_exclusion}, \
        "orbit-size and norm-exclusion primitivity criteria disagree"
    return by_orbit
