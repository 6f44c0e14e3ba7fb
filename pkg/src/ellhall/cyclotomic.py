"""Curve-mode coefficient ring: Q(zeta_M)[u] / (u^2 - q).

One ring instance per (q, M, trace).  Elements are coordinate vectors over
the power basis of the cyclotomic field tensored with {1, u}; everything is
kept reduced modulo the M-th cyclotomic polynomial and u^2 = q, so equality
is plain coordinate comparison.  v := 1/u = u/q is the standard square root
of 1/q.

When q is a perfect square the tower degenerates (u is the literal integer
root); elements then carry no u-component.

Rings with the same q embed into each other along M | M' via
zeta_M -> zeta_M'^(M'/M); mixed-M arithmetic lifts both operands to the
lcm ring.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt


def cyclotomic_polynomial(m: int) -> list[int]:
    """Coefficient list (low to high) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("m must be positive")
    poly = [-1] + [0] * (m - 1) + [1]  # x^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly = _polydiv_exact(poly, cyclotomic_polynomial(d))
    return poly


def _polydiv_exact(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    db = len(b) - 1
    out = [0] * (len(a) - db)
    while len(a) - 1 >= db and any(a):
        da = len(a) - 1
        while a[da] == 0:
            da -= 1
        if da < db:
            break
        assert a[da] % b[db] == 0
        c = a[da] // b[db]
        out[da - db] = c
        for k, bc in enumerate(b):
            a[k + da - db] -= c * bc
        a = a[:da]  # leading term killed
    assert not any(a), "inexact cyclotomic division"
    return out


_RING_CACHE: dict = {}


def get_curve_ring(q: int, m: int = 1, trace=None) -> "CurveRing":
    key = (q, m, trace)
    ring = _RING_CACHE.get(key)
    if ring is None:
        ring = CurveRing(q, m, trace)
        _RING_CACHE[key] = ring
    return ring


class CurveRing:
    backend = "curve"

    def __init__(self, q: int, m: int = 1, trace=None):
        if q < 2:
            raise ValueError("q must be a prime power >= 2")
        self.q = q
        self.m = m
        self.trace = trace
        r = isqrt(q)
        self.sqrt_q = r if r * r == q else None
        phi = cyclotomic_polynomial(m)
        self.degree = len(phi) - 1
        # reduction rows for x^k, deg <= k <= 2 deg - 2 (phi is monic)
        self._red = []
        cur = [-c for c in phi[:-1]]
        self._red.append(tuple(cur))
        for _ in range(self.degree - 2):
            cur = [0] + cur
            top = cur[self.degree]
            cur = cur[:self.degree]
            if top:
                row0 = self._red[0]
                cur = [cur[i] + top * row0[i] for i in range(self.degree)]
            self._red.append(tuple(cur))
        zero_vec = (Fraction(0),) * self.degree
        one_vec = (Fraction(1),) + (Fraction(0),) * (self.degree - 1)
        self.zero = CurveScalar(self, zero_vec, zero_vec)
        self.one = CurveScalar(self, one_vec, zero_vec)
        if self.sqrt_q is not None:
            self.u = self.from_fraction(self.sqrt_q)
        else:
            self.u = CurveScalar(self, zero_vec, one_vec)
        self.v = self.u.inverse()
        # conjugation matrix: zeta^k -> zeta^(-k)
        self._conj_rows = [self._reduce_power((m - k) % m) for k in range(self.degree)]
        self._trace_powers = [2, trace] if trace is not None else None

    # -- constructors ---------------------------------------------------

    def from_fraction(self, x) -> "CurveScalar":
        x = Fraction(x)
        vec = (x,) + (Fraction(0),) * (self.degree - 1)
        return CurveScalar(self, vec, (Fraction(0),) * self.degree)

    from_int = from_fraction

    def zeta(self, order: int, power: int = 1) -> "CurveScalar":
        """The root of unity zeta_order^power (order must divide M)."""
        if order <= 0 or self.m % order:
            raise ValueError(f"root of unity order {order} not available at M={self.m}")
        k = (self.m // order) * (power % order)
        vec = self._reduce_power(k % self.m)
        return CurveScalar(self, vec, (Fraction(0),) * self.degree)

    def _reduce_power(self, k: int):
        """Coordinates of zeta^k, 0 <= k < M."""
        d = self.degree
        if k < d:
            return tuple(Fraction(1) if i == k else Fraction(0) for i in range(d))
        vec = [Fraction(0)] * d
        vec[0] = Fraction(1)
        # multiply by x, k times, reducing on overflow (M small; fine)
        for _ in range(k):
            top = vec[d - 1]
            vec = [Fraction(0)] + vec[:-1]
            if top:
                row = self._red[0]
                vec = [vec[i] + top * row[i] for i in range(d)]
        return tuple(vec)

    # -- derived quantities ----------------------------------------------

    def point_count(self, i: int) -> int:
        """#X(F_{q^i}) from the cached trace by the two-term recursion."""
        if self.trace is None:
            raise ValueError("ring has no Frobenius trace attached")
        t = self._trace_powers
        while len(t) <= i:
            t.append(self.trace * t[-1] - self.q * t[-2])
        return self.q ** i + 1 - t[i]

    def nu_integer(self, r: int) -> "CurveScalar":
        if r < 1:
            raise ValueError("r must be >= 1")
        v = self.v
        num = v ** r - v ** (-r)
        return num / (v - v ** (-1))

    def c_coefficient(self, i: int) -> "CurveScalar":
        if i < 1:
            raise ValueError("i must be >= 1")
        n_points = self.point_count(i)
        return self.nu_integer(i) * self.v ** i * Fraction(n_points, i)

    def alpha_coefficient(self, i: int) -> "CurveScalar":
        if i < 1:
            raise ValueError("i must be >= 1")
        n_points = self.point_count(i)
        return self.from_fraction(Fraction(n_points, i) * (1 - Fraction(1, self.q ** i)))

    # -- cyclotomic helpers ------------------------------------------------

    def _cyc_mul(self, a, b):
        d = self.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] += ai * bj
        vec = prod[:d]
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                row = self._red[k - d]
                vec = [vec[i] + c * row[i] for i in range(d)]
        return tuple(vec)

    def _cyc_inv(self, a):
        """Inverse modulo the cyclotomic polynomial (extended Euclid over Q)."""
        d = self.degree
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.m)]
        r0, r1 = phi, list(a) + [Fraction(0)]
        s0, s1 = [Fraction(0)], [Fraction(1)]

        def deg(p):
            for k in range(len(p) - 1, -1, -1):
                if p[k]:
                    return k
            return -1

        while deg(r1) > 0:
            dr0, dr1 = deg(r0), deg(r1)
            if dr0 < dr1:
                r0, r1, s0, s1 = r1, r0, s1, s0
                continue
            c = r0[dr0] / r1[dr1]
            shift = dr0 - dr1
            r0 = [r0[k] - (c * r1[k - shift] if 0 <= k - shift <= dr1 else 0)
                  for k in range(len(r0))]
            s0 = [((s0[k] if k < len(s0) else Fraction(0)) -
                   (c * s1[k - shift] if 0 <= k - shift < len(s1) else 0))
                  for k in range(max(len(s0), len(s1) + shift))]
            r0, r1, s0, s1 = r1, r0, s1, s0
        d1 = deg(r1)
        if d1 < 0:
            raise ZeroDivisionError("element not invertible in cyclotomic field")
        inv_c = 1 / r1[d1]
        inv = [inv_c * c for c in s1]
        inv = (inv + [Fraction(0)] * d)[:d]
        return tuple(inv)

    def _cyc_conj(self, a):
        d = self.degree
        vec = [Fraction(0)] * d
        for k, c in enumerate(a):
            if c:
                row = self._conj_rows[k]
                vec = [vec[i] + c * row[i] for i in range(d)]
        return tuple(vec)

    # -- ring tower ---------------------------------------------------------

    def extended(self, m_new: int) -> "CurveRing":
        if m_new % self.m:
            raise ValueError("new cyclotomic order must be a multiple")
        return get_curve_ring(self.q, m_new, self.trace)

    def lift_to(self, other: "CurveRing", x: "CurveScalar") -> "CurveScalar":
        if other.q != self.q or other.trace != self.trace:
            raise ValueError("incompatible rings")
        if other.m % self.m:
            raise ValueError("target cyclotomic order must be a multiple")
        step = other.m // self.m
        za = [Fraction(0)] * other.degree
        zb = [Fraction(0)] * other.degree
        for k in range(self.degree):
            if x.a[k] or x.b[k]:
                row = other._reduce_power((k * step) % other.m)
                for i in range(other.degree):
                    if row[i]:
                        za[i] += x.a[k] * row[i]
                        zb[i] += x.b[k] * row[i]
        return CurveScalar(other, tuple(za), tuple(zb))

    def __repr__(self):
        t = f", trace={self.trace}" if self.trace is not None else ""
        return f"CurveRing(q={self.q}, M={self.m}{t})"


def _common_ring(x: "CurveScalar", y: "CurveScalar"):
    rx, ry = x.ring, y.ring
    if rx is ry:
        return x, y
    if rx.q != ry.q or rx.trace != ry.trace:
        raise ValueError(f"cannot mix scalars from {rx} and {ry}")
    m = rx.m * ry.m // gcd(rx.m, ry.m)
    ring = get_curve_ring(rx.q, m, rx.trace)
    return rx.lift_to(ring, x), ry.lift_to(ring, y)


class CurveScalar:
    __slots__ = ("ring", "a", "b")

    def __init__(self, ring, a, b):
        self.ring = ring
        self.a = a
        self.b = b

    def is_zero(self):
        return not any(self.a) and not any(self.b)

    def __bool__(self):
        return not self.is_zero()

    def _coerce(self, other):
        if isinstance(other, CurveScalar):
            return _common_ring(self, other)
        if isinstance(other, (int, Fraction)):
            return self, self.ring.from_fraction(other)
        return None

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return CurveScalar(x.ring,
                           tuple(p + q for p, q in zip(x.a, y.a)),
                           tuple(p + q for p, q in zip(x.b, y.b)))

    __radd__ = __add__

    def __neg__(self):
        return CurveScalar(self.ring, tuple(-p for p in self.a), tuple(-p for p in self.b))

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return x + (-y)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        ring = x.ring
        aa = ring._cyc_mul(x.a, y.a)
        bb = ring._cyc_mul(x.b, y.b)
        ab = ring._cyc_mul(x.a, y.b)
        ba = ring._cyc_mul(x.b, y.a)
        q = ring.q
        return CurveScalar(ring,
                           tuple(p + q * r for p, r in zip(aa, bb)),
                           tuple(p + r for p, r in zip(ab, ba)))

    __rmul__ = __mul__

    def inverse(self):
        ring = self.ring
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if not any(self.b):
            return CurveScalar(ring, ring._cyc_inv(self.a), self.b)
        # (a + b u)^-1 = (a - b u) / (a^2 - q b^2)
        norm = ring._cyc_mul(self.a, self.a)
        qb2 = ring._cyc_mul(self.b, self.b)
        norm = tuple(p - ring.q * r for p, r in zip(norm, qb2))
        if not any(norm):
            raise ZeroDivisionError("zero divisor: sqrt(q) lies in Q(zeta_M)")
        ninv = ring._cyc_inv(norm)
        return CurveScalar(ring, ring._cyc_mul(self.a, ninv),
                           tuple(-c for c in ring._cyc_mul(self.b, ninv)))

    def __truediv__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return x * y.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        ring = self.ring
        if k == 0:
            return ring.one
        base = self if k > 0 else self.inverse()
        k = abs(k)
        out = ring.one
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def conjugate(self):
        """Complex conjugation: inverts roots of unity, fixes u."""
        ring = self.ring
        return CurveScalar(ring, ring._cyc_conj(self.a), ring._cyc_conj(self.b))

    def __eq__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        x, y = pair
        return x.a == y.a and x.b == y.b

    def __hash__(self):
        return hash((self.ring.q, self.ring.m, self.a, self.b))

    def rational_part(self) -> Fraction:
        """The value as a Fraction; raises if not rational."""
        if any(self.a[1:]) or any(self.b):
            raise ValueError("scalar is not rational")
        return self.a[0]

    def reduce_mod(self, p: int, zeta_img: int, u_img: int) -> int:
        """Image under Q(zeta_M)[u] -> F_p, zeta -> zeta_img, u -> u_img.

        Exactness certificate helper for rank computations; requires all
        coordinate denominators prime to p and valid images
        (zeta_img of order M, u_img^2 = q mod p).
        """
        acc = 0
        zp = 1
        for k in range(self.ring.degree):
            ca, cb = self.a[k], self.b[k]
            for c, extra in ((ca, 1), (cb, u_img)):
                if c:
                    d = c.denominator % p
                    if d == 0:
                        raise ValueError("denominator divisible by p")
                    acc += c.numerator * pow(d, p - 2, p) * zp * extra
            zp = (zp * zeta_img) % p
        return acc % p

    def __repr__(self):
        def side(vec, suffix):
            terms = []
            for k, c in enumerate(vec):
                if c:
                    z = f"z{self.ring.m}^{k}" if k else ""
                    body = "*".join(t for t in (str(c), z) if t) or "1"
                    terms.append(body + suffix)
            return terms

        terms = side(self.a, "") + side(self.b, "*u")
        return " + ".join(terms) if terms else "0"

    def serialize(self) -> str:
        """Exact string form with explicit q and M."""
        return (f"q={self.ring.q};M={self.ring.m};"
                f"a={[str(c) for c in self.a]};b={[str(c) for c in self.b]}")
