"""The universal spherical loop algebra on the rank-2 lattice.

For a twist level n >= 1 and an exact coefficient backend (formal or
curve-specialized), this is the algebra generated by one generator t_x per
nonzero lattice point, subject to:

  (1) generators on a common line through the origin commute;
  (2) for delta(x) = 1 and the triangle (o, x, x+y) free of interior
      lattice points,
          [t_y, t_x] = eps(x, y) * c_{n delta(y)} * theta_{x+y} / kappa,
      where kappa = n (nu^-1 - nu) and the theta elements on a ray are cut
      out of exp(kappa * sum_i t_{i z0} s^i).

Normal forms live on canonical convex paths (angle weakly decreasing from
the downward ray, equal-slope runs by decreasing length).  Products are
computed by a straightening rewrite: adjacent out-of-order generators are
swapped against their commutator; commutators outside the defining
relations are resolved recursively by splitting a factor z = x + (z - x)
at the lattice point closest to the segment [o, z] on the positively
oriented side, which re-expresses t_z through an interior-free commutator
plus lower theta corrections.  Commutators are memoized per algebra.

An SL_2(Z) action permutes the generators through the linear action on
the lattice.

Elements are immutable values; the memoized commutator/theta/product
tables are confined to their algebra instance, so share algebras
read-mostly or keep one per worker.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import CurveRing
from .lattice import (angle_key, canonical_path, delta, det, epsilon,
                      interior_points, path_class, primitive, sl2_apply)
from .ratfunc import FormalRing
from .scalars import TruncatedSeries, alpha_coefficient, c_coefficient, series_exp


class StraighteningError(RuntimeError):
    """Internal guard tripped: indicates an engine bug, not bad input."""


_IN_PROGRESS = object()

_WORD_GUARD = 2_000_000


class EllipticHallAlgebra:
    def __init__(self, n: int, ring, flip_relation_sign: bool = False):
        if n < 1:
            raise ValueError("twist level n must be >= 1")
        self.n = n
        self.ring = ring
        # flip_relation_sign is a fault-injection hook for mutation tests
        self._sign = -1 if flip_relation_sign else 1
        if isinstance(ring, CurveRing):
            nu = ring.v
        elif isinstance(ring, FormalRing):
            nu = ring.nu
        else:
            raise TypeError("unsupported coefficient backend")
        self.kappa = (nu.inverse() - nu) * n
        self.kappa_inv = self.kappa.inverse()
        self.one = AlgebraElement(self, {(): ring.one})
        self.zero = AlgebraElement(self, {})
        self._c_cache: dict[int, object] = {}
        self._theta_cache: dict[tuple, "AlgebraElement"] = {}
        self._comm_cache: dict[tuple, "AlgebraElement"] = {}
        self._pair_cache: dict[tuple, dict] = {}
        self._split_cache: dict[tuple, tuple] = {}

    # -- scalars --------------------------------------------------------

    def c(self, i: int):
        v = self._c_cache.get(i)
        if v is None:
            v = c_coefficient(i, self.ring)
            self._c_cache[i] = v
        return v

    def alpha(self, i: int):
        return alpha_coefficient(i, self.ring)

    # -- basic elements ---------------------------------------------------

    def generator(self, x) -> "AlgebraElement":
        x = (int(x[0]), int(x[1]))
        if x == (0, 0):
            raise ValueError("no generator at the origin")
        return AlgebraElement(self, {(x,): self.ring.one})

    def element(self, terms: dict) -> "AlgebraElement":
        out = {}
        for path, c in terms.items():
            p = canonical_path(path)
            out[p] = out[p] + c if p in out else c
        return AlgebraElement(self, {p: c for p, c in out.items() if not c.is_zero()})

    def from_word(self, word, coeff=None) -> "AlgebraElement":
        """Straighten a single product of generators."""
        coeff = self.ring.one if coeff is None else coeff
        out = {}
        self._accumulate_word(tuple(tuple(v) for v in word), coeff, out)
        return AlgebraElement(self, {p: c for p, c in out.items() if not c.is_zero()})

    def straighten(self, terms) -> "AlgebraElement":
        """Straighten a list of (coefficient, word) pairs."""
        out = {}
        for coeff, word in terms:
            self._accumulate_word(tuple(tuple(v) for v in word), coeff, out)
        return AlgebraElement(self, {p: c for p, c in out.items() if not c.is_zero()})

    # -- theta series -----------------------------------------------------

    def theta_ray(self, z0, k: int) -> "AlgebraElement":
        """theta_{k z0} for a primitive direction z0 (theta_0 = 1)."""
        z0 = (int(z0[0]), int(z0[1]))
        if delta(z0) != 1:
            raise ValueError("theta direction must be primitive")
        if k < 0:
            raise ValueError("theta index must be >= 0")
        key = (z0, k)
        cached = self._theta_cache.get(key)
        if cached is not None:
            return cached
        if k == 0:
            val = self.one
        else:
            inner = TruncatedSeries(
                {i: self.generator((i * z0[0], i * z0[1])).scale(self.kappa)
                 for i in range(1, k + 1)},
                k, self.one)
            val = series_exp(inner).coefficient(k)
        self._theta_cache[key] = val
        return val

    def theta(self, z) -> "AlgebraElement":
        """theta_z for arbitrary nonzero z (class-z homogeneous)."""
        k = delta(z)
        return self.theta_ray(primitive(z), k)

    # -- commutators ---------------------------------------------------------

    def commutator_basic(self, x, y) -> "AlgebraElement":
        """[t_y, t_x] for primitive x with interior-free triangle (o,x,x+y)."""
        x, y = tuple(x), tuple(y)
        if delta(x) != 1:
            raise ValueError("commutator_basic needs delta(x) = 1")
        if det(x, y) == 0:
            raise ValueError("proportional pair: use relation (1)")
        if interior_points(x, y) != 0:
            raise ValueError("triangle has interior points: not a basic case")
        z = (x[0] + y[0], x[1] + y[1])
        coeff = self.c(self.n * delta(y)) * self.kappa_inv
        if self._sign * epsilon(x, y) < 0:
            coeff = -coeff
        return self.theta(z).scale(coeff)

    def commutator(self, a, b) -> "AlgebraElement":
        """[t_a, t_b] in normal form."""
        a, b = tuple(a), tuple(b)
        if det(a, b) == 0:
            return self.zero
        cached = self._comm_cache.get((a, b))
        if cached is not None:
            if cached is _IN_PROGRESS:
                raise StraighteningError(f"commutator cycle at {(a, b)}")
            return cached
        rev = self._comm_cache.get((b, a))
        if rev is not None and rev is not _IN_PROGRESS:
            res = rev.scale(-1)
            self._comm_cache[(a, b)] = res
            return res
        self._comm_cache[(a, b)] = _IN_PROGRESS
        try:
            res = self._commutator_impl(a, b)
        except BaseException:
            self._comm_cache.pop((a, b), None)
            raise
        self._comm_cache[(a, b)] = res
        return res

    def _commutator_impl(self, a, b):
        if delta(b) == 1 and interior_points(b, a) == 0:
            return self.commutator_basic(b, a)
        if delta(a) == 1 and interior_points(a, b) == 0:
            return self.commutator_basic(a, b).scale(-1)
        # Resolve one factor through an interior-free split z = x + y and
        # Jacobi.  A candidate split is admissible against the other factor
        # o when det(x,o) and det(y,o) do not have opposite signs (so the
        # child triangles split the original area).  Among admissible
        # candidates, prefer those whose Jacobi brackets can only produce
        # pairs with strictly smaller determinant; cycles encountered down
        # a branch are unwound and the next candidate is tried.
        d0 = abs(det(a, b))
        candidates = []
        for z, o, flip in ((a, b, False), (b, a, True)):
            for dist2, x, y in self._splits(z):
                dxo, dyo = det(x, o), det(y, o)
                if dxo * dyo < 0:
                    continue
                worst = max(abs(dxo), abs(dyo),
                            abs(det(y, (x[0] + o[0], x[1] + o[1]))),
                            abs(det(x, (y[0] + o[0], y[1] + o[1]))))
                candidates.append(((0 if worst < d0 else 1, worst, dist2,
                                    delta(z), z, x), (z, o, flip, x, y)))
        candidates.sort(key=lambda t: t[0])
        if not candidates:
            raise StraighteningError(f"no admissible resolution for {(a, b)}")
        last_err = None
        for _, (z, o, flip, x, y) in candidates:
            try:
                res = self._resolve_through(z, o, x, y)
            except StraighteningError as err:
                last_err = err
                continue
            return res.scale(-1) if flip else res
        raise last_err

    def _resolve_through(self, z, o, x, y):
        """[t_z, t_o] via t_z = c^-1 [t_y, t_x] - theta corrections."""
        c_inv = self.c(self.n * delta(y)).inverse()
        e1 = self.commutator(x, o)
        e2 = self.commutator(y, o)
        term1 = self._bracket(self.generator(y), e1)
        term2 = self._bracket(self.generator(x), e2)
        res = (term1 - term2).scale(c_inv)
        corr = self.theta(z) - self.generator(z).scale(self.kappa)
        if corr.terms:
            res = res - self._bracket(corr, self.generator(o)).scale(self.kappa_inv)
        return res

    def _bracket(self, A: "AlgebraElement", B: "AlgebraElement") -> "AlgebraElement":
        return A * B - B * A

    def _splits(self, z):
        """All interior-free decompositions z = x + y with det(x, z) > 0 and
        delta(x) = 1, sorted by distance of x to the segment [o, z].
        """
        cached = self._split_cache.get(z)
        if cached is not None:
            return cached
        zq, zp = z
        norm2 = zq * zq + zp * zp
        out = []
        bq = abs(zq) + 1
        bp = abs(zp) + 1
        for q in range(-bq, bq + 1):
            for p in range(-bp, bp + 1):
                x = (q, p)
                if x == (0, 0):
                    continue
                d = det(x, z)
                if d <= 0:
                    continue
                y = (zq - q, zp - p)
                if y == (0, 0) or delta(x) != 1:
                    continue
                if interior_points(x, y) != 0:
                    continue
                proj = q * zq + p * zp
                if proj <= 0:
                    d2 = Fraction(q * q + p * p)
                elif proj >= norm2:
                    d2 = Fraction((q - zq) ** 2 + (p - zp) ** 2)
                else:
                    d2 = Fraction(d * d, norm2)
                out.append((d2, x, y))
        if not out:
            raise StraighteningError(f"no admissible split found for {z}")
        out.sort(key=lambda t: (t[0], t[1]))
        self._split_cache[z] = out
        return out

    # -- straightening ------------------------------------------------------

    def _accumulate_word(self, word, coeff, out):
        stack = [(word, coeff)]
        guard = 0
        while stack:
            guard += 1
            if guard > _WORD_GUARD:
                raise StraighteningError("word rewrite budget exceeded")
            w, c = stack.pop()
            if c.is_zero():
                continue
            idx = -1
            for i in range(len(w) - 1):
                if angle_key(w[i]) < angle_key(w[i + 1]):
                    idx = i
                    break
            if idx < 0:
                p = canonical_path(w)
                if p in out:
                    out[p] = out[p] + c
                else:
                    out[p] = c
                continue
            a, b = w[idx], w[idx + 1]
            head, tail = w[:idx], w[idx + 2:]
            stack.append((head + (b, a) + tail, c))
            comm = self.commutator(a, b)
            for path, cc in comm.terms.items():
                stack.append((head + path + tail, c * cc))
        return out

    def _reduce_pair(self, p1, p2) -> dict:
        key = (p1, p2)
        cached = self._pair_cache.get(key)
        if cached is None:
            cached = {}
            self._accumulate_word(p1 + p2, self.ring.one, cached)
            cached = {p: c for p, c in cached.items() if not c.is_zero()}
            self._pair_cache[key] = cached
        return cached

    def multiply(self, A: "AlgebraElement", B: "AlgebraElement") -> "AlgebraElement":
        if A.algebra is not B.algebra:
            raise ValueError("elements of different algebras")
        out = {}
        for p1, c1 in A.terms.items():
            for p2, c2 in B.terms.items():
                c = c1 * c2
                if c.is_zero():
                    continue
                for path, cc in self._reduce_pair(p1, p2).items():
                    v = c * cc
                    if path in out:
                        out[path] = out[path] + v
                    else:
                        out[path] = v
        return AlgebraElement(self, {p: c for p, c in out.items() if not c.is_zero()})

    # -- SL_2(Z) action ----------------------------------------------------

    def sl2_act(self, g, A: "AlgebraElement") -> "AlgebraElement":
        (ga, gb), (gc, gd) = g
        if ga * gd - gb * gc != 1:
            raise ValueError("matrix must have determinant 1")
        out = {}
        for path, c in A.terms.items():
            self._accumulate_word(tuple(sl2_apply(g, s) for s in path), c, out)
        return AlgebraElement(self, {p: c for p, c in out.items() if not c.is_zero()})

    # -- relation verification ----------------------------------------------

    def chi_coefficients(self):
        """Coefficients of (z - s^2n w)(z - sb^2n w)(z - (s sb)^-2n w).

        Returns {(i, j): scalar} over z^i w^j, i + j = 3.  Formal backend
        only (the curve tower does not contain the parameters themselves).
        """
        if not isinstance(self.ring, FormalRing):
            raise ValueError("functional relations need the formal backend")
        n = self.n
        A = self.ring.monomial(2 * n, 0)
        B = self.ring.monomial(0, 2 * n)
        C = self.ring.monomial(-2 * n, -2 * n)
        one = self.ring.one
        return {
            (3, 0): one,
            (2, 1): -(A + B + C),
            (1, 2): A * B + A * C + B * C,
            (0, 3): -one,
        }

    def verify_quadratic_relations(self, window: int):
        """Coefficient identities of the quadratic functional relations.

        Checks, for all bidegrees in the window, that
        chi_n(z,w) T1(z) T1(w) = chi_-n(z,w) T1(w) T1(z) and the same with
        the theta series in the z slot; returns a list of report rows.

        The torsion-free series slots carry a global normalization constant
        in the eigenform picture; both identities are homogeneous in those
        slots, so the constant cancels bidegree by bidegree and the bare
        generators t_(1,d) can stand in for the normalized coefficients.
        """
        cc = self.chi_coefficients()
        dd = {(j, i): -c for (i, j), c in cc.items()}  # chi_{-n}(z,w) = -chi_n(w,z)

        def u(d):
            return self.generator((1, d))

        def th(k):
            if k < 0:
                return self.zero
            return self.theta_ray((0, 1), k)

        rows = []
        for alpha in range(-window, window + 1):
            for beta in range(-window, window + 1):
                lhs = self.zero
                rhs = self.zero
                for (i, j), c in cc.items():
                    lhs = lhs + (u(alpha - i) * u(beta - j)).scale(c)
                for (i, j), c in dd.items():
                    rhs = rhs + (u(beta - j) * u(alpha - i)).scale(c)
                ok = (lhs - rhs).is_zero()
                rows.append({"relation": "T1T1", "bidegree": (alpha, beta), "ok": ok})
        for alpha in range(0, window + 1):
            for beta in range(-window, window + 1):
                lhs = self.zero
                rhs = self.zero
                for (i, j), c in cc.items():
                    if alpha - i >= 0:
                        lhs = lhs + (th(alpha - i) * u(beta - j)).scale(c)
                for (i, j), c in dd.items():
                    if alpha - i >= 0:
                        rhs = rhs + (u(beta - j) * th(alpha - i)).scale(c)
                ok = (lhs - rhs).is_zero()
                rows.append({"relation": "T0T1", "bidegree": (alpha, beta), "ok": ok})
        return rows

    def verify_cubic_relation(self, m: int) -> bool:
        """Residue relation in three torsion-free series slots, one m at a time.

        Res_{z,y,w} [(zyw)^m (z+w)(y^2 - zw) T1(z) T1(y) T1(w)] must be the
        zero element.
        """

        def u(d):
            return self.generator((1, d))

        # (zyw)^m (z+w)(y^2 - zw) expands into four monomials z^a y^b w^c
        monos = [
            (m + 1, m + 2, m, 1),
            (m, m + 2, m + 1, 1),
            (m + 2, m, m + 1, -1),
            (m + 1, m, m + 2, -1),
        ]
        total = self.zero
        for (ea, eb, ec, sign) in monos:
            term = u(-1 - ea) * u(-1 - eb) * u(-1 - ec)
            total = total + term.scale(sign)
        return total.is_zero()


class AlgebraElement:
    """Finite linear combination of canonical convex paths."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms: dict):
        self.algebra = algebra
        self.terms = terms

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def scale(self, c) -> "AlgebraElement":
        if isinstance(c, (int, Fraction)):
            if c == 0:
                return self.algebra.zero
            if c == 1:
                return self
        elif c.is_zero():
            return self.algebra.zero
        return AlgebraElement(self.algebra,
                              {p: v * c for p, v in self.terms.items()})

    def __add__(self, other):
        if isinstance(other, AlgebraElement):
            out = dict(self.terms)
            for p, c in other.terms.items():
                if p in out:
                    s = out[p] + c
                    if s.is_zero():
                        del out[p]
                    else:
                        out[p] = s
                else:
                    out[p] = c
            return AlgebraElement(self.algebra, out)
        return NotImplemented

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra.multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    def coefficient(self, path):
        return self.terms.get(canonical_path(path), self.algebra.ring.zero)

    def support(self):
        return sorted(self.terms)

    def homogeneous_components(self) -> dict:
        out = {}
        for p, c in self.terms.items():
            cls = path_class(p)
            out.setdefault(cls, {})[p] = c
        return {cls: AlgebraElement(self.algebra, t) for cls, t in out.items()}

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for p in sorted(self.terms):
            c = self.terms[p]
            word = "*".join(f"t{list(s)}" for s in p) if p else "1"
            bits.append(f"({c})*{word}")
        return " + ".join(bits)
