"""The classical Hall algebra of finite torsion modules over F_q[[t]].

Isomorphism classes are partitions (I_lambda = direct sum of t-power
quotients).  Hall numbers are computed by brute-force enumeration of
t-stable subspaces in row-reduced form, so every structure constant at a
concrete prime power is an honest count.  On top of that sit the
automorphism counts, the Green pairing, the coproduct, the primitive
elements F_r, and the bialgebra bridge to symmetric functions determined
by sending the full elementary module of rank r to u^{r(r-1)} e_r.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product

from .cyclotomic import get_curve_ring
from .finitefield import get_field
from .linalg import invert_matrix

# ---------------------------------------------------------------------------
# partitions


def partitions(n: int, max_part: int | None = None):
    """All partitions of n as decreasing tuples."""
    if n == 0:
        yield ()
        return
    if max_part is None or max_part > n:
        max_part = n
    for first in range(max_part, 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def conjugate(lam) -> tuple:
    if not lam:
        return ()
    return tuple(sum(1 for part in lam if part > i) for i in range(lam[0]))


def aut_count(lam, q: int) -> int:
    """#Aut(I_lambda) over F_q by the standard closed formula."""
    lamc = conjugate(lam)
    exp = sum(c * c for c in lamc)
    mults: dict[int, int] = {}
    for part in lam:
        mults[part] = mults.get(part, 0) + 1
    val = Fraction(q) ** exp
    for m in mults.values():
        for j in range(1, m + 1):
            val *= 1 - Fraction(1, q) ** j
    assert val.denominator == 1
    return int(val)


def aut_count_bruteforce(lam, q: int) -> int:
    """Invertible module endomorphisms counted directly (tiny inputs only).

    Scans every F_q-matrix commuting with the t action; |lambda| <= 3 keeps
    the scan within q^9 candidates.
    """
    m = sum(lam)
    if m == 0:
        return 1
    if q ** (m * m) > 10 ** 6:
        raise ValueError("brute-force automorphism count out of budget")
    F = _gf(q)
    T = _shift_map(lam)
    idx = range(m)
    count = 0
    for entries in product(range(q), repeat=m * m):
        M = [entries[i * m:(i + 1) * m] for i in idx]
        # t sends e_j to e_{T[j]}; as a matrix S[T[j]][j] = 1.
        # (S M)[i][j] picks M rows through S; (M S)[i][j] = M[i][col] summed
        # over basis vectors mapping to j, i.e. columns k with T[k] = j.
        commutes = True
        for i in idx:
            for j in idx:
                sm = 0
                for k in idx:
                    if T[k] == i and M[k][j]:
                        sm = F.add[sm][M[k][j]]
                ms = 0
                for k in idx:
                    if T[j] is not None and k == T[j] and M[i][k]:
                        ms = F.add[ms][M[i][k]]
                if sm != ms:
                    commutes = False
                    break
            if not commutes:
                break
        if commutes and _det_nonzero(M, F):
            count += 1
    return count


def _det_nonzero(M, F) -> bool:
    m = len(M)
    A = [list(r) for r in M]
    for c in range(m):
        piv = None
        for r in range(c, m):
            if A[r][c]:
                piv = r
                break
        if piv is None:
            return False
        A[c], A[piv] = A[piv], A[c]
        inv = F.inv[A[c][c]]
        A[c] = [F.mul[inv][v] for v in A[c]]
        for r in range(m):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [F.sub[a][F.mul[f][b]] for a, b in zip(A[r], A[c])]
    return True


# ---------------------------------------------------------------------------
# small-field tables for the enumerations


class _GFTables:
    def __init__(self, q: int):
        self.q = q
        if q in (2, 3, 5, 7):
            self.add = [[(a + b) % q for b in range(q)] for a in range(q)]
            self.sub = [[(a - b) % q for b in range(q)] for a in range(q)]
            self.mul = [[(a * b) % q for b in range(q)] for a in range(q)]
            self.neg = [(-a) % q for a in range(q)]
            self.inv = [0] + [pow(a, q - 2, q) for a in range(1, q)]
        else:
            from .finitefield import factor_prime_power
            p, k = factor_prime_power(q)
            field = get_field(p, k)
            # index 0 must be the zero and index 1 the one of the field
            rest = sorted((e for e in field
                           if e != field.zero and e != field.one),
                          key=lambda e: e.coeffs)
            elems = [field.zero, field.one] + rest
            index = {e: i for i, e in enumerate(elems)}
            self.add = [[index[a + b] for b in elems] for a in elems]
            self.sub = [[index[a - b] for b in elems] for a in elems]
            self.mul = [[index[a * b] for b in elems] for a in elems]
            self.neg = [index[-a] for a in elems]
            self.inv = [0] + [index[elems[i].inverse()] for i in range(1, q)]


@lru_cache(maxsize=None)
def _gf(q: int) -> _GFTables:
    return _GFTables(q)


def _shift_map(lam):
    """Index map of the t action on the standard basis of I_lambda."""
    T = []
    pos = 0
    for part in lam:
        for j in range(part):
            T.append(pos + j + 1 if j + 1 < part else None)
        pos += part
    return T


# ---------------------------------------------------------------------------
# submodule enumeration


DEFAULT_SUBSPACE_BUDGET = 300_000


def _rref_matrices(m: int, r: int, q: int):
    """All reduced row-echelon matrices of rank r with m columns over F_q."""
    for pivots in combinations(range(m), r):
        free_pos = []
        for i, p in enumerate(pivots):
            for c in range(p + 1, m):
                if c not in pivots:
                    free_pos.append((i, c))
        for vals in product(range(q), repeat=len(free_pos)):
            rows = [[0] * m for _ in range(r)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, c), v in zip(free_pos, vals):
                rows[i][c] = v
            yield pivots, [tuple(row) for row in rows]


def _reduce_vector(vec, pivots, rows, F):
    v = list(vec)
    for i, p in enumerate(pivots):
        if v[p]:
            f = v[p]
            row = rows[i]
            v = [F.sub[a][F.mul[f][b]] for a, b in zip(v, row)]
    return v


def _apply_shift(vec, T, F):
    out = [0] * len(vec)
    for i, c in enumerate(vec):
        if c and T[i] is not None:
            out[T[i]] = F.add[out[T[i]]][c]
    return out


def _rank_int(rows, F):
    work = [list(r) for r in rows if any(r)]
    m = len(work[0]) if work else 0
    r = 0
    for c in range(m):
        piv = None
        for i in range(r, len(work)):
            if work[i][c]:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = F.inv[work[r][c]]
        work[r] = [F.mul[inv][v] for v in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [F.sub[a][F.mul[f][b]] for a, b in zip(work[i], work[r])]
        r += 1
    return r


def _module_type_of_nilpotent(mat, F) -> tuple:
    """Partition of a nilpotent matrix acting on F_q^r (rows as images)."""
    r = len(mat)
    if r == 0:
        return ()
    kers = [0]
    power = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    j = 0
    while kers[-1] < r:
        j += 1
        power = [[_matdot(power, mat, i, c, F) for c in range(r)] for i in range(r)]
        kers.append(r - _rank_int(power, F))
        if j > r:
            raise AssertionError("matrix is not nilpotent")
    cols = [kers[i + 1] - kers[i] for i in range(len(kers) - 1)]
    return conjugate(tuple(sorted((c for c in cols if c), reverse=True)))


def _matdot(A, B, i, c, F):
    total = 0
    for k in range(len(B)):
        if A[i][k] and B[k][c]:
            total = F.add[total][F.mul[A[i][k]][B[k][c]]]
    return total


@lru_cache(maxsize=None)
def submodule_census(lam: tuple, q: int, budget: int = DEFAULT_SUBSPACE_BUDGET):
    """All t-stable subspaces of I_lambda, classified by (quotient, sub) type.

    Returns {(mu, nu): count} with nu the type of the submodule and mu the
    type of the quotient.
    """
    m = sum(lam)
    F = _gf(q)
    T = _shift_map(lam)
    est = _subspace_count_estimate(m, q)
    if est > budget:
        raise ValueError(
            f"subspace enumeration for |lambda|={m}, q={q} needs ~{est} "
            f"candidates, over budget {budget}")
    census: dict[tuple, int] = {}
    for r in range(m + 1):
        for pivots, rows in _rref_matrices(m, r, q):
            stable = True
            for row in rows:
                img = _apply_shift(row, T, F)
                if any(_reduce_vector(img, pivots, rows, F)):
                    stable = False
                    break
            if not stable:
                continue
            # type of the submodule: t restricted to the row space
            tn = []
            for row in rows:
                img = _apply_shift(row, T, F)
                coords = _coordinates(img, pivots, rows, F)
                tn.append(coords)
            nu = _module_type_of_nilpotent(tn, F)
            # type of the quotient: kernels of t^j on M/N
            mu = _quotient_type(lam, pivots, rows, T, F)
            key = (mu, nu)
            census[key] = census.get(key, 0) + 1
    return census


def _coordinates(vec, pivots, rows, F):
    v = list(vec)
    coords = []
    for i, p in enumerate(pivots):
        c = v[p]
        coords.append(c)
        if c:
            row = rows[i]
            v = [F.sub[a][F.mul[c][b]] for a, b in zip(v, row)]
    assert not any(v), "vector not in the subspace"
    return coords


def _quotient_type(lam, pivots, rows, T, F) -> tuple:
    m = sum(lam)
    r = len(rows)
    kers = [0]
    # basis images under t^j, reduced mod the subspace
    cur = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    j = 0
    while kers[-1] < m - r:
        j += 1
        cur = [_apply_shift(v, T, F) for v in cur]
        reduced = [_reduce_vector(v, pivots, rows, F) for v in cur]
        rk = _rank_int(reduced, F) if any(any(v) for v in reduced) else 0
        kers.append(m - rk - r)
        if j > m:
            raise AssertionError("quotient type runaway")
    cols = [kers[i + 1] - kers[i] for i in range(len(kers) - 1)]
    return conjugate(tuple(sorted((c for c in cols if c), reverse=True)))


def _subspace_count_estimate(m: int, q: int) -> int:
    total = 0
    for r in range(m + 1):
        g = 1
        for i in range(r):
            g = g * (q ** (m - i) - 1) // (q ** (i + 1) - 1)
        total += g
    return total


def hall_number(lam, mu, nu, q: int, budget: int = DEFAULT_SUBSPACE_BUDGET) -> int:
    """Number of submodules N of I_lambda with N = I_nu and I_lambda/N = I_mu."""
    lam, mu, nu = tuple(lam), tuple(mu), tuple(nu)
    if sum(mu) + sum(nu) != sum(lam):
        raise ValueError("sizes must satisfy |mu| + |nu| = |lambda|")
    return submodule_census(lam, q, budget).get((mu, nu), 0)


# ---------------------------------------------------------------------------
# the Hall algebra


class DvrHallAlgebra:
    """Hall algebra of torsion F_q[[t]]-modules with exact scalar ring.

    The deformation parameter is u_loc with u_loc^(-2) = q_loc; by default
    scalars live in Q(sqrt(q_loc)) and u_loc = 1/sqrt(q_loc).
    """

    def __init__(self, q_loc: int, ring=None, u_loc=None,
                 budget: int = DEFAULT_SUBSPACE_BUDGET):
        self.q = q_loc
        self.ring = ring if ring is not None else get_curve_ring(q_loc, 1)
        self.u = u_loc if u_loc is not None else self.ring.v
        assert (self.u ** -2) == self.ring.from_int(q_loc), \
            "u_loc must square to 1/q_loc"
        self.budget = budget
        self.one = DvrHallElement(self, {(): self.ring.one})
        self.zero = DvrHallElement(self, {})
        self._iso_cache: dict[int, dict] = {}

    def basis_element(self, lam) -> "DvrHallElement":
        return DvrHallElement(self, {tuple(lam): self.ring.one})

    def element(self, terms: dict) -> "DvrHallElement":
        return DvrHallElement(
            self, {tuple(k): v for k, v in terms.items() if not v.is_zero()})

    def multiply(self, A: "DvrHallElement", B: "DvrHallElement") -> "DvrHallElement":
        if A.algebra.q != self.q or B.algebra.q != self.q:
            raise ValueError("cannot mix Hall algebras at different prime powers")
        out: dict = {}
        for mu, cm in A.terms.items():
            for nu, cn in B.terms.items():
                c = cm * cn
                for lam in partitions(sum(mu) + sum(nu)):
                    g = hall_number(lam, mu, nu, self.q, self.budget)
                    if g:
                        v = c * g
                        out[lam] = out[lam] + v if lam in out else v
        return self.element(out)

    def coproduct(self, A: "DvrHallElement") -> dict:
        """Tensor expansion {(mu, nu): scalar}."""
        out: dict = {}
        for lam, c in A.terms.items():
            a_lam = aut_count(lam, self.q)
            for (mu, nu), g in submodule_census(lam, self.q, self.budget).items():
                w = Fraction(g * aut_count(mu, self.q) * aut_count(nu, self.q), a_lam)
                v = c * w
                key = (mu, nu)
                out[key] = out[key] + v if key in out else v
        return {k: v for k, v in out.items() if not v.is_zero()}

    def counit(self, A: "DvrHallElement"):
        return A.terms.get((), self.ring.zero)

    def green_pair(self, A: "DvrHallElement", B: "DvrHallElement"):
        """Hermitian Hopf pairing: ( [F], [G] ) = delta_{F,G} / #Aut(F)."""
        total = self.ring.zero
        for lam, c in A.terms.items():
            d = B.terms.get(lam)
            if d is not None:
                total = total + c * d.conjugate() * Fraction(1, aut_count(lam, self.q))
        return total

    def pair_tensor(self, pair_a, coproduct_b: dict):
        """((a1 tensor a2), Delta(b)) for the Hopf compatibility check."""
        a1, a2 = pair_a
        total = self.ring.zero
        for (mu, nu), c in coproduct_b.items():
            v1 = a1.terms.get(mu)
            v2 = a2.terms.get(nu)
            if v1 is not None and v2 is not None:
                w = (v1 * Fraction(1, aut_count(mu, self.q))) * \
                    (v2 * Fraction(1, aut_count(nu, self.q)))
                total = total + w * c.conjugate()
        return total

    def n_u(self, length: int) -> int:
        """n_u(l) = prod_{i<=l} (1 - u^{-2i}) = prod (1 - q^i), an integer."""
        val = 1
        for i in range(1, length + 1):
            val *= 1 - self.q ** i
        return val

    def F_element(self, r: int) -> "DvrHallElement":
        """The primitive power-sum preimage F_r."""
        if r < 1:
            raise ValueError("r must be >= 1")
        terms = {}
        for lam in partitions(r):
            terms[lam] = self.ring.from_int(self.n_u(len(lam) - 1))
        return self.element(terms)

    # -- bridge to symmetric functions ----------------------------------

    def _e_images(self, degree: int) -> dict:
        """For each partition lam of degree: expansion of [I_lam] over the
        products E_mu = u^{-sum mu_i(mu_i - 1)} prod [I_(1^mu_i)]."""
        cached = self._iso_cache.get(degree)
        if cached is not None:
            return cached
        parts = list(partitions(degree))
        e_products = {}
        for mu in parts:
            prod_elem = self.one
            for part in mu:
                prod_elem = self.multiply(
                    prod_elem, self.basis_element((1,) * part))
            scale = self.u ** (-sum(p * (p - 1) for p in mu))
            e_products[mu] = prod_elem.scale(scale)
        # matrix rows indexed by mu, columns by lam
        mat = [[e_products[mu].terms.get(lam, self.ring.zero) for lam in parts]
               for mu in parts]
        inv = invert_matrix(mat, self.ring.one)
        expansion = {}
        for j, lam in enumerate(parts):
            expansion[lam] = {parts[i]: inv[j][i] for i in range(len(parts))
                              if not inv[j][i].is_zero()}
        self._iso_cache[degree] = expansion
        return expansion

    def to_symmetric(self, A: "DvrHallElement") -> "SymmetricFunction":
        """The bialgebra isomorphism into symmetric functions (p-basis)."""
        out = SymmetricFunction(self.ring, {})
        for lam, c in A.terms.items():
            exp = self._e_images(sum(lam))[lam]
            for mu, w in exp.items():
                out = out + e_monomial(self.ring, mu).scale(c * w)
        return out

    def from_symmetric(self, f: "SymmetricFunction") -> "DvrHallElement":
        """Inverse isomorphism, p-basis in, Hall basis out."""
        total = self.zero
        for lam, c in f.terms.items():
            elem = self.one
            for part in lam:
                e_exp = _p_in_e(part)
                piece = self.zero
                for mu, w in e_exp.items():
                    prod_elem = self.one
                    for m in mu:
                        prod_elem = self.multiply(
                            prod_elem, self.basis_element((1,) * m))
                    scale = self.u ** (-sum(p * (p - 1) for p in mu))
                    piece = piece + prod_elem.scale(scale * w)
                elem = self.multiply(elem, piece)
            total = total + elem.scale(c)
        return total


class DvrHallElement:
    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = terms

    def is_zero(self):
        return not self.terms

    def scale(self, c):
        if isinstance(c, (int, Fraction)):
            if c == 0:
                return self.algebra.zero
        elif c.is_zero():
            return self.algebra.zero
        return DvrHallElement(self.algebra,
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
        return DvrHallElement(self.algebra, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        if isinstance(other, DvrHallElement):
            return self.algebra.multiply(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, DvrHallElement)
                and self.algebra is other.algebra and self.terms == other.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*I{list(lam)}"
                          for lam, c in sorted(self.terms.items()))


# ---------------------------------------------------------------------------
# symmetric functions in the power-sum basis


class SymmetricFunction:
    """Linear combination of power-sum monomials p_lambda."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {k: v for k, v in terms.items() if not v.is_zero()}

    def is_zero(self):
        return not self.terms

    def scale(self, c):
        return SymmetricFunction(self.ring,
                                 {k: v * c for k, v in self.terms.items()})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return SymmetricFunction(self.ring, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        if isinstance(other, SymmetricFunction):
            out = {}
            for la, ca in self.terms.items():
                for lb, cb in other.terms.items():
                    key = tuple(sorted(la + lb, reverse=True))
                    v = ca * cb
                    out[key] = out[key] + v if key in out else v
            return SymmetricFunction(self.ring, out)
        return self.scale(other)

    def __eq__(self, other):
        return (isinstance(other, SymmetricFunction)
                and self.terms == other.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*p{list(lam)}"
                          for lam, c in sorted(self.terms.items()))


def p_monomial(ring, lam) -> SymmetricFunction:
    return SymmetricFunction(ring, {tuple(lam): ring.one})


def _z_lambda(lam) -> int:
    z = 1
    mults: dict[int, int] = {}
    for part in lam:
        mults[part] = mults.get(part, 0) + 1
    fact = 1
    for part, m in mults.items():
        for j in range(1, m + 1):
            fact *= j
        z *= part ** m
    return z * fact


def e_monomial(ring, mu) -> SymmetricFunction:
    """e_mu = prod e_{mu_i} expanded in the p basis."""
    out = SymmetricFunction(ring, {(): ring.one})
    for part in mu:
        piece = SymmetricFunction(ring, {})
        for lam in partitions(part):
            sign = (-1) ** (part - len(lam))
            piece = piece + p_monomial(ring, lam).scale(
                Fraction(sign, _z_lambda(lam)))
        out = out * piece
    return out


@lru_cache(maxsize=None)
def _p_in_e(r: int) -> dict:
    """p_r as {e-partition: Fraction} via Newton's identity."""
    if r == 1:
        return {(1,): Fraction(1)}
    # p_r = sum_{i=1}^{r-1} (-1)^{i-1} e_i p_{r-i} + (-1)^{r-1} r e_r
    out: dict = {(r,): Fraction((-1) ** (r - 1) * r)}
    for i in range(1, r):
        sign = Fraction((-1) ** (i - 1))
        for mu, c in _p_in_e(r - i).items():
            key = tuple(sorted(mu + (i,), reverse=True))
            out[key] = out.get(key, Fraction(0)) + sign * c
    return {k: v for k, v in out.items() if v}
