"""Exact linear algebra over Z, Z/p^k and F_p.

Everything downstream (categories, module categories, cochain complexes,
spectral pages) reduces to the primitives here: Smith normal form with
transform tracking, kernels and linear solving modulo a relation lattice,
and finitely presented modules with a deterministic canonical-representative
reduction.

Matrices are dense with Python-int entries (object arrays), so there is no
overflow anywhere; modular reductions run through int64 numpy kernels.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Coefficients",
    "ExactMatrix",
    "SmithForm",
    "smith_normal_form",
    "kernel_matrix",
    "solve_matrix",
    "solve_into",
    "preimage",
    "PresentedModule",
    "ModuleMap",
    "kernel",
    "image",
    "cokernel",
    "hom_module",
    "tensor_module",
    "subquotient",
    "direct_sum",
]


def _factor(n):
    fs = {}
    d, m = 2, n
    while d * d <= m:
        while m % d == 0:
            fs[d] = fs.get(d, 0) + 1
            m //= d
        d += 1
    if m > 1:
        fs[m] = fs.get(m, 0) + 1
    return fs


class Coefficients:
    """Ground ring: Z, Z/p^k, or F_p.

    Z/n is only accepted for prime-power n; that is what makes the local
    Smith normal form (smallest-valuation pivoting) valid.
    """

    __slots__ = ("kind", "n", "p", "k")

    def __init__(self, kind, n=0, p=0, k=0):
        self.kind = kind
        self.n = n
        self.p = p
        self.k = k

    @staticmethod
    def integers():
        return Coefficients("Z")

    @staticmethod
    def integers_mod(n):
        fs = _factor(n)
        if n < 2 or len(fs) != 1:
            raise ValueError(f"modulus {n} is not a prime power")
        (p, k), = fs.items()
        return Coefficients("Z/n", n=n, p=p, k=k)

    @staticmethod
    def prime_field(p):
        if p < 2 or _factor(p) != {p: 1}:
            raise ValueError(f"{p} is not prime")
        return Coefficients("F_p", n=p, p=p, k=1)

    @property
    def is_integers(self):
        return self.kind == "Z"

    @property
    def is_field(self):
        return self.kind == "F_p"

    def reduce_scalar(self, x):
        return int(x) if self.is_integers else int(x) % self.n

    def is_unit(self, x):
        if self.is_integers:
            return x in (1, -1)
        return self.reduce_scalar(x) % self.p != 0

    def unit_inverse(self, x):
        if self.is_integers:
            if x not in (1, -1):
                raise ArithmeticError(f"{x} is not a unit in Z")
            return x
        return pow(self.reduce_scalar(x), -1, self.n)

    def valuation(self, x):
        """p-adic valuation of the canonical representative; k for 0."""
        x = self.reduce_scalar(x)
        if x == 0:
            return self.k
        v = 0
        while x % self.p == 0:
            x //= self.p
            v += 1
        return v

    def canonical_factor(self, d):
        """Normal form of a diagonal entry: |d| over Z, p^val over Z/p^k."""
        if self.is_integers:
            return abs(int(d))
        return self.p ** self.valuation(d)

    def __eq__(self, other):
        return isinstance(other, Coefficients) and (self.kind, self.n) == (other.kind, other.n)

    def __hash__(self):
        return hash((self.kind, self.n))

    def __repr__(self):
        if self.is_integers:
            return "Z"
        return f"Z/{self.n}" if self.kind == "Z/n" else f"F_{self.p}"


# ---------------------------------------------------------------------------
# matrices


def vec_reduce(ring, v):
    v = np.asarray(v, dtype=object).reshape(-1)
    if ring.is_integers:
        return np.asarray([int(x) for x in v], dtype=object)
    n = ring.n
    return np.asarray([int(x) % n for x in v], dtype=object)


def mat_vec(ring, a, v):
    a = np.asarray(a, dtype=object)
    if a.shape[1] == 0 or a.shape[0] == 0:
        return np.zeros(a.shape[0], dtype=object)
    return a @ np.asarray(v, dtype=object)


def mat_mul(ring, a, b):
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    if a.shape[0] == 0 or b.shape[1] == 0 or a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=object)
    if not ring.is_integers and ring.n < 2 ** 20 and a.shape[1] * ring.n * ring.n < 2 ** 62:
        prod = np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)
        return (prod % ring.n).astype(object)
    return a @ b


class ExactMatrix:
    """Dense matrix over a Coefficients ring; entries kept canonical."""

    __slots__ = ("ring", "a")

    def __init__(self, ring, a, _canonical=False):
        self.ring = ring
        arr = np.array(a, dtype=object)
        if arr.ndim == 1:
            if arr.size:
                raise ValueError("matrix must be 2-dimensional")
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ValueError("matrix must be 2-dimensional")
        if not _canonical and arr.size:
            if ring.is_integers:
                arr = np.frompyfunc(int, 1, 1)(arr)
            else:
                n = ring.n
                arr = np.frompyfunc(lambda x: int(x) % n, 1, 1)(arr)
        self.a = arr

    @staticmethod
    def zeros(ring, rows, cols):
        return ExactMatrix(ring, np.zeros((rows, cols), dtype=object), _canonical=True)

    @staticmethod
    def identity(ring, nn):
        return ExactMatrix(ring, np.eye(nn, dtype=np.int64).astype(object), _canonical=True)

    @staticmethod
    def from_columns(ring, cols, rows):
        if not cols:
            return ExactMatrix.zeros(ring, rows, 0)
        return ExactMatrix(ring, np.stack([np.asarray(c, dtype=object).reshape(-1) for c in cols], axis=1))

    @property
    def rows(self):
        return self.a.shape[0]

    @property
    def cols(self):
        return self.a.shape[1]

    def col(self, j):
        return np.asarray(self.a[:, j], dtype=object).reshape(-1)

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            return ExactMatrix(self.ring, mat_mul(self.ring, self.a, other.a))
        return vec_reduce(self.ring, mat_vec(self.ring, self.a, other))

    def __add__(self, other):
        return ExactMatrix(self.ring, self.a + other.a)

    def __sub__(self, other):
        return ExactMatrix(self.ring, self.a - other.a)

    def __neg__(self):
        return ExactMatrix(self.ring, -self.a)

    def scale(self, c):
        return ExactMatrix(self.ring, self.a * int(c))

    def __eq__(self, other):
        return (
            isinstance(other, ExactMatrix)
            and self.ring == other.ring
            and self.a.shape == other.a.shape
            and (self.a.size == 0 or bool(np.all(self.a == other.a)))
        )

    def transpose(self):
        return ExactMatrix(self.ring, self.a.T, _canonical=True)

    def hstack(self, other):
        return ExactMatrix(self.ring, np.concatenate([self.a, other.a], axis=1), _canonical=True)

    def is_zero(self):
        return self.a.size == 0 or not np.any(self.a)

    def det(self):
        """Exact determinant via fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        m = self.rows
        if m == 0:
            return self.ring.reduce_scalar(1)
        a = [[int(x) for x in row] for row in self.a]
        sign, prev = 1, 1
        for t in range(m - 1):
            if a[t][t] == 0:
                for i in range(t + 1, m):
                    if a[i][t] != 0:
                        a[t], a[i] = a[i], a[t]
                        sign = -sign
                        break
                else:
                    return self.ring.reduce_scalar(0)
            for i in range(t + 1, m):
                for j in range(t + 1, m):
                    a[i][j] = (a[i][j] * a[t][t] - a[i][t] * a[t][j]) // prev
            prev = a[t][t]
        return self.ring.reduce_scalar(sign * a[m - 1][m - 1])

    def __repr__(self):
        return f"ExactMatrix({self.ring}, {self.a.tolist()})"


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass
class SmithForm:
    """U @ A @ V = D with U, V unimodular, D diagonal, d_i | d_{i+1}."""

    u: ExactMatrix
    d: ExactMatrix
    v: ExactMatrix

    def diagonal(self):
        m = min(self.d.rows, self.d.cols)
        return [int(self.d.a[i, i]) for i in range(m)]


def _snf_mod(a0, ring, track_u=True, track_v=True, carry=None):
    """Local SNF over Z/p^k; pivot rule: smallest valuation, lowest index.

    carry, if given, is an extra block of columns b; the returned carry is
    U @ b, which is what the solver needs without materialising U.
    """

    n, p, k = ring.n, ring.p, ring.k
    a = np.asarray(a0, dtype=np.int64).copy() % n
    m, mm = a.shape
    u = np.eye(m, dtype=np.int64) if track_u else None
    v = np.eye(mm, dtype=np.int64) if track_v else None
    b = None if carry is None else (np.asarray(carry, dtype=np.int64).copy() % n)
    pk = [p ** e for e in range(k + 1)]

    def val_matrix(sub):
        vals = np.zeros(sub.shape, dtype=np.int64)
        for e in range(1, k):
            vals[(sub % pk[e] == 0)] = e
        vals[sub == 0] = k
        return vals

    t = 0
    while t < min(m, mm):
        sub = a[t:, t:]
        if not np.any(sub):
            break
        vals = val_matrix(sub)
        flat = int(np.argmin(vals))
        pi, pj = t + flat // (mm - t), t + flat % (mm - t)
        pv = int(vals.flat[flat])
        if pi != t:
            a[[t, pi]] = a[[pi, t]]
            if track_u:
                u[[t, pi]] = u[[pi, t]]
            if b is not None:
                b[[t, pi]] = b[[pi, t]]
        if pj != t:
            a[:, [t, pj]] = a[:, [pj, t]]
            if track_v:
                v[:, [t, pj]] = v[:, [pj, t]]
        piv = int(a[t, t])
        unit = piv // pk[pv]
        inv = pow(unit, -1, n)
        if inv != 1:
            a[t] = (a[t] * inv) % n
            if track_u:
                u[t] = (u[t] * inv) % n
            if b is not None:
                b[t] = (b[t] * inv) % n
        # every remaining entry has valuation >= pv, so quotients are exact
        colq = (a[t + 1:, t] // pk[pv]) % n
        if np.any(colq):
            a[t + 1:] = (a[t + 1:] - np.outer(colq, a[t])) % n
            if track_u:
                u[t + 1:] = (u[t + 1:] - np.outer(colq, u[t])) % n
            if b is not None:
                b[t + 1:] = (b[t + 1:] - np.outer(colq, b[t])) % n
        rowq = (a[t, t + 1:] // pk[pv]) % n
        if np.any(rowq):
            a[:, t + 1:] = (a[:, t + 1:] - np.outer(a[:, t], rowq)) % n
            if track_v:
                v[:, t + 1:] = (v[:, t + 1:] - np.outer(v[:, t], rowq)) % n
        t += 1

    def obj(x):
        return None if x is None else x.astype(object)

    return obj(a), obj(u), obj(v), obj(b)


def _gcdex(x, y):
    """g, s, t with s*x + t*y = g = gcd(x, y) >= 0."""
    old_r, r = x, y
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _snf_integers(a0, track=True):
    """Integer SNF with gcdex 2x2 transforms, which keeps entries tame."""
    a = [[int(x) for x in row] for row in np.asarray(a0, dtype=object)]
    m = len(a)
    mm = len(a[0]) if m else 0
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(mm)] for i in range(mm)]

    def row_gcd(i, j):
        # combine rows (i, j) so position (i, t) holds the gcd, (j, t) zero;
        # the divisible case must stay a pure subtraction or row i picks up
        # row j and the clearing passes ping-pong forever
        x, y = a[i][t], a[j][t]
        if y == 0:
            return
        if x == 0:
            a[i], a[j] = a[j], a[i]
            u[i], u[j] = u[j], u[i]
            return
        if y % x == 0:
            q = y // x
            a[j] = [p - q * o for p, o in zip(a[j], a[i])]
            u[j] = [p - q * o for p, o in zip(u[j], u[i])]
            return
        g, s, w = _gcdex(x, y)
        xg, yg = x // g, y // g
        ai = [s * p + w * q for p, q in zip(a[i], a[j])]
        aj = [-yg * p + xg * q for p, q in zip(a[i], a[j])]
        a[i], a[j] = ai, aj
        ui = [s * p + w * q for p, q in zip(u[i], u[j])]
        uj = [-yg * p + xg * q for p, q in zip(u[i], u[j])]
        u[i], u[j] = ui, uj

    def col_gcd(i, j):
        x, y = a[t][i], a[t][j]
        if y == 0:
            return
        if x == 0:
            for r in range(m):
                a[r][i], a[r][j] = a[r][j], a[r][i]
            for r in range(mm):
                v[r][i], v[r][j] = v[r][j], v[r][i]
            return
        if y % x == 0:
            q = y // x
            for r in range(m):
                a[r][j] -= q * a[r][i]
            for r in range(mm):
                v[r][j] -= q * v[r][i]
            return
        g, s, w = _gcdex(x, y)
        xg, yg = x // g, y // g
        for r in range(m):
            p, q = a[r][i], a[r][j]
            a[r][i], a[r][j] = s * p + w * q, -yg * p + xg * q
        for r in range(mm):
            p, q = v[r][i], v[r][j]
            v[r][i], v[r][j] = s * p + w * q, -yg * p + xg * q

    t = 0
    while t < min(m, mm):
        pivot = None
        for i in range(t, m):
            for j in range(t, mm):
                if a[i][j] != 0 and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        if pivot[0] != t:
            a[t], a[pivot[0]] = a[pivot[0]], a[t]
            u[t], u[pivot[0]] = u[pivot[0]], u[t]
        if pivot[1] != t:
            for r in range(m):
                a[r][t], a[r][pivot[1]] = a[r][pivot[1]], a[r][t]
            for r in range(mm):
                v[r][t], v[r][pivot[1]] = v[r][pivot[1]], v[r][t]
        while True:
            for i in range(t + 1, m):
                row_gcd(t, i)
            for j in range(t + 1, mm):
                col_gcd(t, j)
            if all(a[i][t] == 0 for i in range(t + 1, m)) and all(
                    a[t][j] == 0 for j in range(t + 1, mm)):
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, mm):
                        if a[i][j] % a[t][t] != 0:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad])]
                u[t] = [x + y for x, y in zip(u[t], u[bad])]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1

    def obj(rows, r, c):
        out = np.empty((r, c), dtype=object)
        for i in range(r):
            for j in range(c):
                out[i, j] = rows[i][j]
        return out

    return obj(a, m, mm), obj(u, m, m), obj(v, mm, mm), None


def smith_normal_form(mat: ExactMatrix) -> SmithForm:
    ring = mat.ring
    if ring.is_integers:
        d, u, v, _ = _snf_integers(mat.a)
    else:
        d, u, v, _ = _snf_mod(mat.a, ring)
    mk = lambda x: ExactMatrix(ring, x, _canonical=not ring.is_integers)
    return SmithForm(u=mk(u), d=mk(d), v=mk(v))


def kernel_matrix(mat: ExactMatrix) -> ExactMatrix:
    """Columns generating {x : A x = 0} over the ring."""
    ring = mat.ring
    if mat.cols == 0:
        return ExactMatrix.zeros(ring, 0, 0)
    if mat.rows == 0:
        return ExactMatrix.identity(ring, mat.cols)
    if ring.is_integers:
        d, _, v, _ = _snf_integers(mat.a)
    else:
        d, _, v, _ = _snf_mod(mat.a, ring, track_u=False)
    gens = []
    r = min(mat.rows, mat.cols)
    for i in range(mat.cols):
        di = int(d[i, i]) if i < r else 0
        if ring.is_integers:
            if di == 0:
                gens.append(np.asarray(v[:, i], dtype=object))
        else:
            vv = ring.valuation(di)
            if vv > 0:
                ann = ring.p ** (ring.k - vv)
                gens.append(vec_reduce(ring, np.asarray(v[:, i], dtype=object) * ann))
    return ExactMatrix.from_columns(ring, gens, mat.cols)


def solve_matrix(mat: ExactMatrix, b):
    """One x with A x = b over the ring, or None."""
    ring = mat.ring
    b = vec_reduce(ring, b)
    if mat.cols == 0:
        return np.zeros(0, dtype=object) if not np.any(b) else None
    if mat.rows == 0:
        return np.zeros(mat.cols, dtype=object)
    if ring.is_integers:
        d, u, v, _ = _snf_integers(mat.a)
        c = mat_vec(ring, u, b)
    else:
        d, _, v, carry = _snf_mod(mat.a, ring, track_u=False, carry=b.reshape(-1, 1))
        c = np.asarray(carry[:, 0], dtype=object)
    y = np.zeros(mat.cols, dtype=object)
    r = min(mat.rows, mat.cols)
    for i in range(mat.rows):
        ci = ring.reduce_scalar(c[i])
        di = int(d[i, i]) if (i < r and i < mat.cols) else 0
        if ring.is_integers:
            if di == 0:
                if ci != 0:
                    return None
            else:
                if ci % di != 0:
                    return None
                y[i] = ci // di
        else:
            vv = ring.valuation(di)
            if vv >= ring.k:
                if ci != 0:
                    return None
            else:
                pw = ring.p ** vv
                if ci % pw != 0:
                    return None
                unit = di // pw
                y[i] = ring.reduce_scalar((ci // pw) * pow(unit, -1, ring.n))
    return vec_reduce(ring, mat_vec(ring, np.asarray(v, dtype=object), y))


# ---------------------------------------------------------------------------
# presented modules


class PresentedModule:
    """Finitely generated module ring^gens / column span of `relations`.

    Canonical representatives, the isomorphism test and element
    enumeration all come from the cached Smith form of the relations.
    """

    __slots__ = ("ring", "ngens", "relations", "_red", "_factors", "_orders")

    def __init__(self, ring, ngens, relations=None, _orders=None):
        self.ring = ring
        self.ngens = ngens
        if relations is None:
            relations = ExactMatrix.zeros(ring, ngens, 0)
        if relations.rows != ngens:
            raise ValueError("relation matrix has wrong height")
        self.relations = relations
        self._red = None
        self._factors = None
        self._orders = _orders

    # -- constructors ----------------------------------------------------
    @staticmethod
    def free(ring, n):
        return PresentedModule(ring, n, _orders=[0] * n)

    @staticmethod
    def zero(ring):
        return PresentedModule(ring, 0, _orders=[])

    @staticmethod
    def cyclic(ring, d):
        dd = ring.canonical_factor(d)
        return PresentedModule.with_orders(ring, [dd])

    @staticmethod
    def with_orders(ring, orders):
        """Direct sum of cyclics ring/(o_i); o_i = 0 means no relation."""
        canon = []
        for o in orders:
            canon.append(ring.canonical_factor(o) if o else 0)
        cols = [i for i, o in enumerate(canon) if o and ring.reduce_scalar(o) != 0]
        rel = ExactMatrix.zeros(ring, len(canon), len(cols))
        for j, i in enumerate(cols):
            rel.a[i, j] = canon[i]
        eff = [0 if (o == 0 or (not ring.is_integers and o == ring.n)) else o for o in canon]
        return PresentedModule(ring, len(canon), rel, _orders=eff)

    # -- reduction machinery ----------------------------------------------
    def _reduction(self):
        """(U, Uinv, moduli): y = U x, y_i taken mod moduli_i, x = Uinv y."""
        if self._red is None:
            ring = self.ring
            sf = smith_normal_form(self.relations)
            u = np.asarray(sf.u.a, dtype=object)
            uinv = _invert_unimodular(ring, sf.u)
            moduli = []
            r = min(self.ngens, self.relations.cols)
            for i in range(self.ngens):
                di = int(sf.d.a[i, i]) if i < r else 0
                m = ring.canonical_factor(di)
                if not ring.is_integers and m == ring.n:
                    m = 0
                moduli.append(m)
            self._red = (u, uinv, moduli)
        return self._red

    def _diag_orders(self):
        return self._orders

    def gen_orders(self):
        """Order of each normal-form coordinate: 0 = infinite (free over Z)."""
        ring = self.ring
        moduli = self._orders if self._orders is not None else self._reduction()[2]
        out = []
        for m in moduli:
            if m:
                out.append(m)
            else:
                out.append(0 if ring.is_integers else ring.n)
        return out

    def reduce(self, vec):
        ring = self.ring
        v = vec_reduce(ring, vec)
        if len(v) != self.ngens:
            raise ValueError("vector length mismatch")
        if self.ngens == 0:
            return v
        if self._orders is not None:
            out = v.copy()
            for i, m in enumerate(self._orders):
                if m:
                    out[i] = int(out[i]) % m
            return out
        u, uinv, moduli = self._reduction()
        y = vec_reduce(ring, mat_vec(ring, u, v))
        for i, m in enumerate(moduli):
            if m:
                y[i] = int(y[i]) % m
        return vec_reduce(ring, mat_vec(ring, uinv, y))

    def is_zero_element(self, vec):
        return not np.any(self.reduce(vec))

    def eq(self, v, w):
        return self.is_zero_element(np.asarray(v, dtype=object) - np.asarray(w, dtype=object))

    # -- invariants --------------------------------------------------------
    def invariant_factors(self):
        """Sorted nonunit Smith diagonal; 0 marks a free summand, n a free cyclic."""
        if self._factors is None:
            ring = self.ring
            facs = []
            for o in self.gen_orders():
                c = o
                if not ring.is_integers and o == ring.n:
                    c = ring.n
                if c != 1:
                    facs.append(c)
            self._factors = sorted(facs, key=lambda x: (x == 0, x))
        return list(self._factors)

    def is_isomorphic_to(self, other):
        return self.ring == other.ring and self.invariant_factors() == other.invariant_factors()

    def size(self):
        total = 1
        for o in self.gen_orders():
            if o == 0:
                return None
            total *= o
        return total

    def is_zero_module(self):
        return self.size() == 1

    def elements(self):
        """All elements as canonical vectors, in a fixed order."""
        orders = self.gen_orders()
        if any(o == 0 for o in orders):
            raise ValueError("infinite module")
        ring = self.ring
        if self._orders is not None:
            for coords in itertools.product(*[range(o) for o in orders]):
                yield np.asarray(coords, dtype=object)
            return
        _, uinv, _ = self._reduction()
        for coords in itertools.product(*[range(o) for o in orders]):
            y = np.asarray(coords, dtype=object)
            yield self.reduce(mat_vec(ring, uinv, y))

    def nonzero_elements(self):
        for e in self.elements():
            if np.any(e):
                yield e

    def zero_vec(self):
        return np.zeros(self.ngens, dtype=object)

    def gen(self, i):
        v = self.zero_vec()
        v[i] = 1
        return v

    def __repr__(self):
        return f"PresentedModule({self.ring}, {self.ngens} gens, factors={self.invariant_factors()})"


def _invert_unimodular(ring, u: ExactMatrix):
    nn = u.rows
    out = np.empty((nn, nn), dtype=object)
    for j in range(nn):
        e = np.zeros(nn, dtype=object)
        e[j] = 1
        x = solve_matrix(u, e)
        if x is None:
            raise ArithmeticError("matrix is not invertible over the ring")
        out[:, j] = x
    return out


@dataclass
class ModuleMap:
    """Map of presented modules given by a matrix on generators."""

    source: PresentedModule
    target: PresentedModule
    matrix: ExactMatrix

    def __post_init__(self):
        if self.matrix.rows != self.target.ngens or self.matrix.cols != self.source.ngens:
            raise ValueError("matrix shape does not match modules")

    @staticmethod
    def from_rows(source, target, rows):
        return ModuleMap(source, target, ExactMatrix(source.ring, rows))

    @staticmethod
    def identity(mod):
        return ModuleMap(mod, mod, ExactMatrix.identity(mod.ring, mod.ngens))

    @staticmethod
    def zero(source, target):
        return ModuleMap(source, target, ExactMatrix.zeros(source.ring, target.ngens, source.ngens))

    def is_well_defined(self):
        for j in range(self.source.relations.cols):
            if not self.target.is_zero_element(self.matrix @ self.source.relations.col(j)):
                return False
        return True

    def __call__(self, vec):
        return self.target.reduce(self.matrix @ np.asarray(vec, dtype=object))

    def compose(self, first):
        """self after first."""
        if first.target.ngens != self.source.ngens:
            raise ValueError("composition mismatch")
        return ModuleMap(first.source, self.target, self.matrix @ first.matrix)

    def add(self, other):
        return ModuleMap(self.source, self.target, self.matrix + other.matrix)

    def negate(self):
        return ModuleMap(self.source, self.target, -self.matrix)

    def is_zero_map(self):
        for j in range(self.source.ngens):
            if not self.target.is_zero_element(self.matrix.col(j)):
                return False
        return True

    def eq(self, other):
        return self.add(other.negate()).is_zero_map()


def solve_into(target: PresentedModule, mat: ExactMatrix, b):
    """One x with mat @ x = b modulo target relations, or None."""
    x = solve_matrix(mat.hstack(target.relations), b)
    if x is None:
        return None
    return vec_reduce(target.ring, x[: mat.cols])


def preimage(f: ModuleMap, vec):
    return solve_into(f.target, f.matrix, f.target.reduce(vec))


def kernel(f: ModuleMap):
    """Kernel as (module, inclusion into f.source)."""
    ring = f.source.ring
    kk = kernel_matrix(f.matrix.hstack(f.target.relations))
    gens = []
    for j in range(kk.cols):
        g = f.source.reduce(kk.col(j)[: f.source.ngens])
        if np.any(g):
            gens.append(g)
    incl_mat = ExactMatrix.from_columns(ring, gens, f.source.ngens)
    k2 = kernel_matrix(incl_mat.hstack(f.source.relations))
    rel_cols = [k2.col(j)[: incl_mat.cols] for j in range(k2.cols)]
    kmod = PresentedModule(ring, incl_mat.cols,
                           ExactMatrix.from_columns(ring, rel_cols, incl_mat.cols))
    return kmod, ModuleMap(kmod, f.source, incl_mat)


def image(f: ModuleMap):
    """Image as (module, inclusion into f.target)."""
    ring = f.source.ring
    gens = [f.target.reduce(f.matrix.col(j)) for j in range(f.source.ngens)]
    gens = [g for g in gens if np.any(g)]
    incl = ExactMatrix.from_columns(ring, gens, f.target.ngens)
    kk = kernel_matrix(incl.hstack(f.target.relations))
    rel_cols = [kk.col(j)[: incl.cols] for j in range(kk.cols)]
    imod = PresentedModule(ring, incl.cols, ExactMatrix.from_columns(ring, rel_cols, incl.cols))
    return imod, ModuleMap(imod, f.target, incl)


def cokernel(f: ModuleMap):
    """Cokernel as (module, projection from f.target)."""
    ring = f.target.ring
    q = PresentedModule(ring, f.target.ngens, f.target.relations.hstack(f.matrix))
    return q, ModuleMap(f.target, q, ExactMatrix.identity(ring, f.target.ngens))


def subquotient(ambient: PresentedModule, cycles: ModuleMap, boundaries: ModuleMap):
    """im(cycles)/im(boundaries) with project/lift; boundaries must sit inside cycles."""
    ring = ambient.ring
    zc, zb = cycles.matrix, boundaries.matrix
    for j in range(zb.cols):
        if solve_into(ambient, zc, ambient.reduce(zb.col(j))) is None:
            raise ValueError("boundaries are not contained in cycles")
    kk = kernel_matrix(zc.hstack(zb).hstack(ambient.relations))
    rel_cols = [kk.col(j)[: zc.cols] for j in range(kk.cols)]
    sq = PresentedModule(ring, zc.cols, ExactMatrix.from_columns(ring, rel_cols, zc.cols))

    def project(vec):
        x = solve_into(ambient, zc, ambient.reduce(vec))
        if x is None:
            raise ValueError("element not in the cycle submodule")
        return sq.reduce(x)

    def lift(svec):
        return ambient.reduce(zc @ np.asarray(svec, dtype=object))

    return sq, project, lift


def hom_module(m: PresentedModule, n: PresentedModule):
    """Hom(M, N) as (module, to_map, from_map).

    Coordinates are matrices H (target gens x source gens) flattened
    row-major; to_map realises a coordinate vector as a ModuleMap and
    from_map inverts it.
    """

    ring = m.ring
    if ring != n.ring:
        raise ValueError("hom of modules over different rings")
    gm, gn = m.ngens, n.ngens
    nun = gm * gn
    nrel_n = n.relations.cols
    rel_m = m.relations
    rows = []
    n_aux = rel_m.cols * nrel_n
    for rj in range(rel_m.cols):
        r = rel_m.col(rj)
        for i in range(gn):
            row = np.zeros(nun + n_aux, dtype=object)
            for j in range(gm):
                row[i * gm + j] = r[j]
            for t in range(nrel_n):
                row[nun + rj * nrel_n + t] = n.relations.a[i, t]
            rows.append(row)
    if rows:
        kk = kernel_matrix(ExactMatrix(ring, np.stack(rows)))
        sol_cols = [kk.col(j)[:nun] for j in range(kk.cols)]
    else:
        sol_cols = [np.eye(nun, dtype=np.int64).astype(object)[:, j] for j in range(nun)]
    zc = ExactMatrix.from_columns(ring, sol_cols, nun)
    zero_gens = []
    for j in range(gm):
        for t in range(nrel_n):
            h = np.zeros(nun, dtype=object)
            for i in range(gn):
                h[i * gm + j] = n.relations.a[i, t]
            zero_gens.append(h)
    zb = ExactMatrix.from_columns(ring, zero_gens, nun)
    ambient = PresentedModule.free(ring, nun)
    hom, project, lift = subquotient(
        ambient,
        ModuleMap(PresentedModule.free(ring, zc.cols), ambient, zc),
        ModuleMap(PresentedModule.free(ring, zb.cols), ambient, zb),
    )

    def to_map(hvec):
        if nun:
            mat = np.asarray(lift(hvec), dtype=object).reshape(gn, gm)
        else:
            mat = np.zeros((gn, gm), dtype=object)
        return ModuleMap(m, n, ExactMatrix(ring, mat))

    def from_map(mm: ModuleMap):
        return project(np.asarray(mm.matrix.a, dtype=object).reshape(-1))

    return hom, to_map, from_map


def tensor_module(m: PresentedModule, n: PresentedModule):
    """M (x) N; pure-tensor coordinate (i, j) -> i * n.ngens + j."""
    ring = m.ring
    if ring != n.ring:
        raise ValueError("tensor of modules over different rings")
    gm, gn = m.ngens, n.ngens
    cols = []
    for rj in range(m.relations.cols):
        r = m.relations.col(rj)
        for j in range(gn):
            c = np.zeros(gm * gn, dtype=object)
            for i in range(gm):
                c[i * gn + j] = r[i]
            cols.append(c)
    for rj in range(n.relations.cols):
        r = n.relations.col(rj)
        for i in range(gm):
            c = np.zeros(gm * gn, dtype=object)
            for j in range(gn):
                c[i * gn + j] = r[j]
            cols.append(c)
    return PresentedModule(ring, gm * gn, ExactMatrix.from_columns(ring, cols, gm * gn))


def direct_sum(mods):
    """(sum, injections, projections)."""
    mods = list(mods)
    if not mods:
        raise ValueError("empty direct sum: use PresentedModule.zero")
    ring = mods[0].ring
    offs = [0]
    for m in mods:
        offs.append(offs[-1] + m.ngens)
    total = offs[-1]
    cols = []
    for idx, m in enumerate(mods):
        for rj in range(m.relations.cols):
            c = np.zeros(total, dtype=object)
            c[offs[idx]: offs[idx + 1]] = m.relations.col(rj)
            cols.append(c)
    s = PresentedModule(ring, total, ExactMatrix.from_columns(ring, cols, total))
    injs, projs = [], []
    for idx, m in enumerate(mods):
        imat = ExactMatrix.zeros(ring, total, m.ngens)
        pmat = ExactMatrix.zeros(ring, m.ngens, total)
        for j in range(m.ngens):
            imat.a[offs[idx] + j, j] = 1
            pmat.a[j, offs[idx] + j] = 1
        injs.append(ModuleMap(m, s, imat))
        projs.append(ModuleMap(s, m, pmat))
    return s, injs, projs
