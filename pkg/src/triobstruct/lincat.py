"""Finite linear categories presented by structure constants.

A category here is a finite object list with hom presented modules and a
composition tensor on generators; automorphisms, bimodules with left/right
action tensors, twisted bimodules and bounded additive envelopes are built
on top.  The suspension-graded view realises degree-n morphisms X -> Y as
elements of hom(X, sigma^n Y) without ever materialising the graded category.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .exactalg import (
    Coefficients,
    ExactMatrix,
    ModuleMap,
    PresentedModule,
    direct_sum,
    solve_matrix,
    vec_reduce,
)

__all__ = [
    "LinearCategory",
    "Mor",
    "CategoryAutomorphism",
    "identity_automorphism",
    "SuspendedGradedView",
    "GradedMor",
    "Bimodule",
    "BimoduleMap",
    "hom_bimodule",
    "twist_bimodule",
    "validate_category",
    "full_subcategory",
    "additive_envelope",
]


@dataclass
class Mor:
    """Morphism src -> dst as a coordinate vector on hom generators."""

    src: str
    dst: str
    vec: np.ndarray

    def is_zero(self, cat):
        return cat.hom(self.src, self.dst).is_zero_element(self.vec)


class LinearCategory:
    """Objects, hom modules, composition structure constants, identities.

    comp[(X, Y, Z)][j, i] is the coordinate vector of gen_j(hom(Y,Z)) o
    gen_i(hom(X,Y)) in hom(X, Z).
    """

    def __init__(self, ring, objects, homs, comp, identities):
        self.ring = ring
        self.objects = list(objects)
        self._homs = homs
        self._comp = comp
        self.identities = identities

    def hom(self, x, y) -> PresentedModule:
        return self._homs[(x, y)]

    def comp_tensor(self, x, y, z):
        return self._comp[(x, y, z)]

    def identity(self, x) -> Mor:
        return Mor(x, x, np.asarray(self.identities[x], dtype=object))

    def zero_mor(self, x, y) -> Mor:
        return Mor(x, y, self.hom(x, y).zero_vec())

    def compose(self, g: Mor, f: Mor) -> Mor:
        """g after f."""
        if f.dst != g.src:
            raise ValueError(f"cannot compose {g.src}->{g.dst} after {f.src}->{f.dst}")
        t = self._comp[(f.src, f.dst, g.dst)]
        target = self.hom(f.src, g.dst)
        out = target.zero_vec()
        for j in range(t.shape[0]):
            gj = int(g.vec[j])
            if gj == 0:
                continue
            for i in range(t.shape[1]):
                fi = int(f.vec[i])
                if fi == 0:
                    continue
                out = out + t[j, i] * (gj * fi)
        return Mor(f.src, g.dst, target.reduce(out))

    def mor(self, x, y, coords) -> Mor:
        return Mor(x, y, self.hom(x, y).reduce(np.asarray(coords, dtype=object)))

    def hom_elements(self, x, y, nonzero=False):
        h = self.hom(x, y)
        it = h.nonzero_elements() if nonzero else h.elements()
        for v in it:
            yield Mor(x, y, v)

    def gen_mor(self, x, y, i) -> Mor:
        return Mor(x, y, self.hom(x, y).gen(i))


@dataclass
class ValidationReport:
    valid: bool
    failures: list

    def __bool__(self):
        return self.valid


def validate_category(cat: LinearCategory) -> ValidationReport:
    """Check unit laws, associativity and relation compatibility on generators."""
    failures = []
    for x in cat.objects:
        idx = cat.identity(x)
        for y in cat.objects:
            for i in range(cat.hom(x, y).ngens):
                f = cat.gen_mor(x, y, i)
                if not cat.hom(x, y).eq(cat.compose(f, idx).vec, f.vec):
                    failures.append(("unit-right", x, y, i))
                if not cat.hom(x, y).eq(cat.compose(cat.identity(y), f).vec, f.vec):
                    failures.append(("unit-left", x, y, i))
    for w, x, y, z in itertools.product(cat.objects, repeat=4):
        hwx, hxy, hyz = cat.hom(w, x), cat.hom(x, y), cat.hom(y, z)
        for i, j, k in itertools.product(range(hwx.ngens), range(hxy.ngens), range(hyz.ngens)):
            f, g, h = cat.gen_mor(w, x, i), cat.gen_mor(x, y, j), cat.gen_mor(y, z, k)
            lhs = cat.compose(cat.compose(h, g), f)
            rhs = cat.compose(h, cat.compose(g, f))
            if not cat.hom(w, z).eq(lhs.vec, rhs.vec):
                failures.append(("associativity", (w, x, y, z), (i, j, k)))
    # structure constants must kill relations on either side
    for x, y, z in itertools.product(cat.objects, repeat=3):
        hxy, hyz = cat.hom(x, y), cat.hom(y, z)
        for rj in range(hxy.relations.cols):
            r = hxy.relations.col(rj)
            for k in range(hyz.ngens):
                out = cat.compose(cat.gen_mor(y, z, k), Mor(x, y, r))
                if np.any(out.vec):
                    failures.append(("relation-right", (x, y, z), rj, k))
        for rj in range(hyz.relations.cols):
            r = hyz.relations.col(rj)
            for i in range(hxy.ngens):
                out = cat.compose(Mor(y, z, r), cat.gen_mor(x, y, i))
                if np.any(out.vec):
                    failures.append(("relation-left", (x, y, z), rj, i))
    return ValidationReport(not failures, failures)


def full_subcategory(cat: LinearCategory, objects) -> LinearCategory:
    objects = list(objects)
    for x in objects:
        if x not in cat.objects:
            raise KeyError(f"unknown object {x!r}")
    homs = {(x, y): cat.hom(x, y) for x in objects for y in objects}
    comp = {(x, y, z): cat.comp_tensor(x, y, z)
            for x in objects for y in objects for z in objects}
    idents = {x: cat.identities[x] for x in objects}
    return LinearCategory(cat.ring, objects, homs, comp, idents)


# ---------------------------------------------------------------------------
# additive envelopes


def _env_name(tup):
    return "0" if not tup else "+".join(tup)


def additive_envelope(cat: LinearCategory, max_rank: int) -> LinearCategory:
    """Objects are formal sums (sorted tuples) of base objects, length <= max_rank.

    Homs are block matrices of base homs; a zero object (the empty sum) is
    always adjoined.
    """

    if max_rank < 1:
        raise ValueError("max_rank must be >= 1")
    sums = [()]
    for r in range(1, max_rank + 1):
        sums.extend(itertools.combinations_with_replacement(sorted(cat.objects), r))
    names = {s: _env_name(s) for s in sums}
    objects = [names[s] for s in sums]
    by_name = {names[s]: s for s in sums}
    ring = cat.ring

    homs = {}
    blocks = {}  # (src_tuple, dst_tuple) -> offsets of each (i, j) block
    for s in sums:
        for d in sums:
            mods = []
            offs = {}
            pos = 0
            for i, di in enumerate(d):
                for j, sj in enumerate(s):
                    h = cat.hom(sj, di)
                    offs[(i, j)] = (pos, h.ngens)
                    mods.append(h)
                    pos += h.ngens
            if mods:
                total, _, _ = direct_sum(mods)
            else:
                total = PresentedModule.zero(ring)
            homs[(names[s], names[d])] = total
            blocks[(names[s], names[d])] = offs

    comp = {}
    for a in sums:
        for b in sums:
            for c in sums:
                hab = homs[(names[a], names[b])]
                hbc = homs[(names[b], names[c])]
                hac = homs[(names[a], names[c])]
                tensor = np.empty((hbc.ngens, hab.ngens), dtype=object)
                oab = blocks[(names[a], names[b])]
                obc = blocks[(names[b], names[c])]
                oac = blocks[(names[a], names[c])]
                for jg in range(hbc.ngens):
                    for ig in range(hab.ngens):
                        out = hac.zero_vec()
                        # locate the blocks the two generators live in
                        bj = next(((i, j, off, cat.hom(b[j], c[i]).ngens)
                                   for (i, j), (off, w) in obc.items()
                                   if off <= jg < off + w), None)
                        bi = next(((i, j, off, cat.hom(a[j], b[i]).ngens)
                                   for (i, j), (off, w) in oab.items()
                                   if off <= ig < off + w), None)
                        if bj is not None and bi is not None:
                            ci, cj, coff, _ = bj
                            di_, dj, doff, _ = bi
                            if cj == di_:  # inner indices match: B-summand agrees
                                base = cat.comp_tensor(a[dj], b[di_], c[ci])
                                vecb = base[jg - coff, ig - doff]
                                tof, _ = oac[(ci, dj)]
                                for gidx in range(len(vecb)):
                                    out[tof + gidx] = out[tof + gidx] + vecb[gidx]
                        tensor[jg, ig] = hac.reduce(out)
                comp[(names[a], names[b], names[c])] = tensor

    idents = {}
    for s in sums:
        h = homs[(names[s], names[s])]
        v = h.zero_vec()
        offs = blocks[(names[s], names[s])]
        for i, si in enumerate(s):
            off, w = offs[(i, i)]
            ident = cat.identities[si]
            for g in range(w):
                v[off + g] = ident[g]
        idents[names[s]] = h.reduce(v)

    env = LinearCategory(ring, objects, homs, comp, idents)
    env.block_offsets = blocks
    env.summands = by_name
    env.base = cat
    return env


def envelope_matrix_mor(env: LinearCategory, src: str, dst: str, entries) -> Mor:
    """Morphism from a matrix of base-category morphisms (rows = dst summands)."""
    s, d = env.summands[src], env.summands[dst]
    offs = env.block_offsets[(src, dst)]
    h = env.hom(src, dst)
    v = h.zero_vec()
    for i in range(len(d)):
        for j in range(len(s)):
            m = entries[i][j]
            off, w = offs[(i, j)]
            vec = np.asarray(m.vec if isinstance(m, Mor) else m, dtype=object)
            for g in range(w):
                v[off + g] = v[off + g] + vec[g]
    return Mor(src, dst, h.reduce(v))


# ---------------------------------------------------------------------------
# automorphisms and the graded view


@dataclass
class CategoryAutomorphism:
    cat: LinearCategory
    object_map: dict
    hom_maps: dict  # (X, Y) -> ExactMatrix : hom(X,Y) -> hom(sX, sY)

    def obj(self, x, power=1):
        y = x
        if power >= 0:
            for _ in range(power):
                y = self.object_map[y]
        else:
            inv = {v: k for k, v in self.object_map.items()}
            for _ in range(-power):
                y = inv[y]
        return y

    def apply(self, f: Mor, power=1) -> Mor:
        cat = self.cat
        vec = np.asarray(f.vec, dtype=object)
        x, y = f.src, f.dst
        if power >= 0:
            for _ in range(power):
                vec = self.hom_maps[(x, y)] @ vec
                x, y = self.obj(x), self.obj(y)
        else:
            for _ in range(-power):
                px, py = self.obj(x, -1), self.obj(y, -1)
                sol = _solve_hom_map(cat, self.hom_maps[(px, py)], cat.hom(x, y), vec)
                vec, x, y = sol, px, py
        return Mor(x, y, cat.hom(x, y).reduce(vec))

    def validate(self):
        cat = self.cat
        failures = []
        for x in cat.objects:
            got = self.apply(cat.identity(x))
            want = cat.identity(self.obj(x))
            if not cat.hom(self.obj(x), self.obj(x)).eq(got.vec, want.vec):
                failures.append(("identity", x))
        for x, y, z in itertools.product(cat.objects, repeat=3):
            for i in range(cat.hom(x, y).ngens):
                for j in range(cat.hom(y, z).ngens):
                    f, g = cat.gen_mor(x, y, i), cat.gen_mor(y, z, j)
                    lhs = self.apply(cat.compose(g, f))
                    rhs = cat.compose(self.apply(g), self.apply(f))
                    if not cat.hom(lhs.src, lhs.dst).eq(lhs.vec, rhs.vec):
                        failures.append(("functoriality", (x, y, z), (i, j)))
        for (x, y), mat in self.hom_maps.items():
            target = cat.hom(self.obj(x), self.obj(y))
            mm = ModuleMap(cat.hom(x, y), target, mat)
            if not mm.is_well_defined():
                failures.append(("hom-map", x, y))
            for i in range(target.ngens):
                if _solve_hom_map(cat, mat, target, target.gen(i)) is None:
                    failures.append(("not-invertible", x, y))
                    break
        return ValidationReport(not failures, failures)


def _solve_hom_map(cat, mat, target, vec):
    from .exactalg import solve_into

    return solve_into(target, mat, target.reduce(vec))


def identity_automorphism(cat: LinearCategory) -> CategoryAutomorphism:
    return CategoryAutomorphism(
        cat,
        {x: x for x in cat.objects},
        {(x, y): ExactMatrix.identity(cat.ring, cat.hom(x, y).ngens)
         for x in cat.objects for y in cat.objects},
    )


@dataclass
class GradedMor:
    """Degree-n morphism src -> dst of the graded view: a vector in hom(src, sigma^n dst)."""

    src: str
    dst: str
    deg: int
    vec: np.ndarray


class SuspendedGradedView:
    """Degrees realised on demand: hom^n(X, Y) = base.hom(X, sigma^n Y).

    Composition follows (f (x) g) -> (sigma^q f) g; the graded extension of
    sigma acts as (-1)^n sigma in degree n, and iota_X: X ~ sigma X is the
    identity-carried degree -1 isomorphism.
    """

    def __init__(self, base: LinearCategory, sigma: CategoryAutomorphism):
        self.base = base
        self.sigma = sigma

    def hom_module(self, x, y, deg):
        return self.base.hom(x, self.sigma.obj(y, deg))

    def mor(self, x, y, deg, coords) -> GradedMor:
        h = self.hom_module(x, y, deg)
        return GradedMor(x, y, deg, h.reduce(np.asarray(coords, dtype=object)))

    def compose(self, f: GradedMor, g: GradedMor) -> GradedMor:
        """f after g; f: Y -> Z degree p, g: X -> Y degree q."""
        if g.dst != f.src:
            raise ValueError("graded composition mismatch")
        p, q = f.deg, g.deg
        fv = Mor(f.src, self.sigma.obj(f.dst, p), f.vec)
        shifted = self.sigma.apply(fv, q)  # sigma^q f : sigma^q Y -> sigma^{p+q} Z
        gv = Mor(g.src, self.sigma.obj(g.dst, q), g.vec)
        out = self.base.compose(shifted, gv)
        return GradedMor(g.src, f.dst, p + q, out.vec)

    def iota(self, x) -> GradedMor:
        # identity-carried X ~ sigma X of degree -1
        return GradedMor(x, self.sigma.obj(x), -1, self.base.identity(x).vec)

    def graded_sigma(self, f: GradedMor) -> GradedMor:
        sign = -1 if f.deg % 2 else 1
        base_m = Mor(f.src, self.sigma.obj(f.dst, f.deg), f.vec)
        sh = self.sigma.apply(base_m)
        return GradedMor(self.sigma.obj(f.src), self.sigma.obj(f.dst), f.deg,
                         vec_reduce(self.base.ring, sh.vec * sign))

    def iota_conjugation(self, x, y) -> ModuleMap:
        """f -> iota_y^{-1} (sigma f) iota_x as an endomap of hom^0(x, y)."""
        h = self.base.hom(x, y)
        cols = []
        iy = self.iota(y)
        iy_inv = GradedMor(self.sigma.obj(y), y, 1, self.base.identity(self.sigma.obj(y)).vec)
        ix = self.iota(x)
        for i in range(h.ngens):
            f = GradedMor(x, y, 0, h.gen(i))
            out = self.compose(iy_inv, self.compose(self.graded_sigma(f), ix))
            assert out.deg == 0 and out.src == x and out.dst == y
            cols.append(out.vec)
        return ModuleMap(h, h, ExactMatrix.from_columns(self.base.ring, cols, h.ngens))


# ---------------------------------------------------------------------------
# bimodules


class Bimodule:
    """Family M(X, Y) with left action by hom(Y, Y') and right action by hom(X', X).

    left[(x, y, y2)][j, i] = gen_j(hom(y,y2)) . gen_i(M(x,y))   in M(x, y2)
    right[(x2, x, y)][i, j] = gen_i(M(x,y)) . gen_j(hom(x2,x))  in M(x2, y)
    """

    def __init__(self, cat, values, left, right, tau=None, sigma=None):
        self.cat = cat
        self.values = values
        self.left = left
        self.right = right
        self.tau = tau
        self.sigma = sigma

    def value(self, x, y) -> PresentedModule:
        return self.values[(x, y)]

    def act_left(self, g: Mor, x_obj, vec):
        """g . m for m in M(x_obj, g.src)."""
        t = self.left[(x_obj, g.src, g.dst)]
        target = self.value(x_obj, g.dst)
        out = target.zero_vec()
        for j in range(t.shape[0]):
            gj = int(g.vec[j])
            if gj == 0:
                continue
            for i in range(t.shape[1]):
                mi = int(vec[i])
                if mi == 0:
                    continue
                out = out + t[j, i] * (gj * mi)
        return target.reduce(out)

    def act_right(self, y_obj, vec, f: Mor):
        """m . f for m in M(f.dst, y_obj)."""
        t = self.right[(f.src, f.dst, y_obj)]
        target = self.value(f.src, y_obj)
        out = target.zero_vec()
        for i in range(t.shape[0]):
            mi = int(vec[i])
            if mi == 0:
                continue
            for j in range(t.shape[1]):
                fj = int(f.vec[j])
                if fj == 0:
                    continue
                out = out + t[i, j] * (mi * fj)
        return target.reduce(out)

    def apply_tau(self, x, y, vec, power=1):
        sig = self.sigma
        out = np.asarray(vec, dtype=object)
        cx, cy = x, y
        if power >= 0:
            for _ in range(power):
                out = self.tau[(cx, cy)] @ out
                cx, cy = sig.obj(cx), sig.obj(cy)
        else:
            for _ in range(-power):
                px, py = sig.obj(cx, -1), sig.obj(cy, -1)
                target = self.value(cx, cy)
                from .exactalg import solve_into

                out = solve_into(target, self.tau[(px, py)], target.reduce(out))
                cx, cy = px, py
        return self.value(cx, cy).reduce(out)

    def validate(self):
        cat = self.cat
        failures = []
        for (x, y), m in self.values.items():
            idy = cat.identity(y)
            idx = cat.identity(x)
            for i in range(m.ngens):
                if not m.eq(self.act_left(idy, x, m.gen(i)), m.gen(i)):
                    failures.append(("unit-left", x, y, i))
                if not m.eq(self.act_right(y, m.gen(i), idx), m.gen(i)):
                    failures.append(("unit-right", x, y, i))
        for x, y, y2, y3 in itertools.product(cat.objects, repeat=4):
            m = self.value(x, y)
            for i in range(m.ngens):
                for j in range(cat.hom(y, y2).ngens):
                    for kidx in range(cat.hom(y2, y3).ngens):
                        g1 = cat.gen_mor(y, y2, j)
                        g2 = cat.gen_mor(y2, y3, kidx)
                        a = self.act_left(g2, x, self.act_left(g1, x, m.gen(i)))
                        b = self.act_left(cat.compose(g2, g1), x, m.gen(i))
                        if not self.value(x, y3).eq(a, b):
                            failures.append(("left-assoc", (x, y, y2, y3), (i, j, kidx)))
        for x2, x, y, y2 in itertools.product(cat.objects, repeat=4):
            m = self.value(x, y)
            for i in range(m.ngens):
                for j in range(cat.hom(x2, x).ngens):
                    for kidx in range(cat.hom(y, y2).ngens):
                        f = cat.gen_mor(x2, x, j)
                        g = cat.gen_mor(y, y2, kidx)
                        a = self.act_right(y2, self.act_left(g, x, m.gen(i)), f)
                        b = self.act_left(g, x2, self.act_right(y, m.gen(i), f))
                        if not self.value(x2, y2).eq(a, b):
                            failures.append(("mixed-assoc", (x2, x, y, y2), (i, j, kidx)))
        if self.tau is not None:
            sig = self.sigma
            for (x, y), m in self.values.items():
                for g in _gen_mors(self.cat, y):
                    for f in _gen_mors_into(self.cat, x):
                        for i in range(m.ngens):
                            lhs = self.apply_tau(f.src, g.dst,
                                                 self.act_right(g.dst, self.act_left(g, x, m.gen(i)), f))
                            rhs = self.act_right(sig.obj(g.dst),
                                                 self.act_left(sig.apply(g), sig.obj(x),
                                                               self.apply_tau(x, y, m.gen(i))),
                                                 sig.apply(f))
                            tgt = self.value(sig.obj(f.src), sig.obj(g.dst))
                            if not tgt.eq(lhs, rhs):
                                failures.append(("tau-equivariance", x, y, i))
        return ValidationReport(not failures, failures)


def _gen_mors(cat, src):
    for y2 in cat.objects:
        for j in range(cat.hom(src, y2).ngens):
            yield cat.gen_mor(src, y2, j)


def _gen_mors_into(cat, dst):
    for x2 in cat.objects:
        for j in range(cat.hom(x2, dst).ngens):
            yield cat.gen_mor(x2, dst, j)


def hom_bimodule(cat: LinearCategory, sigma: CategoryAutomorphism | None = None) -> Bimodule:
    """The bimodule hom(-, -), with tau induced by sigma when given."""
    values = {(x, y): cat.hom(x, y) for x in cat.objects for y in cat.objects}
    left, right = {}, {}
    for x, y, y2 in itertools.product(cat.objects, repeat=3):
        t = cat.comp_tensor(x, y, y2)
        left[(x, y, y2)] = t
    for x2, x, y in itertools.product(cat.objects, repeat=3):
        # m . f = m o f with m in hom(x, y), f in hom(x2, x)
        t = cat.comp_tensor(x2, x, y)  # [m-gen, f-gen] -> hom(x2, y)
        right[(x2, x, y)] = t
    tau = None
    if sigma is not None:
        tau = {(x, y): sigma.hom_maps[(x, y)] for x in cat.objects for y in cat.objects}
    return Bimodule(cat, values, left, right, tau=tau, sigma=sigma)


def zero_bimodule(cat: LinearCategory) -> Bimodule:
    z = PresentedModule.zero(cat.ring)
    values = {(x, y): z for x in cat.objects for y in cat.objects}
    empty3 = np.empty((0, 0), dtype=object)
    left = {(x, y, y2): np.empty((cat.hom(y, y2).ngens, 0), dtype=object)
            for x, y, y2 in itertools.product(cat.objects, repeat=3)}
    right = {(x2, x, y): np.empty((0, cat.hom(x2, x).ngens), dtype=object)
             for x2, x, y in itertools.product(cat.objects, repeat=3)}
    return Bimodule(cat, values, left, right)


def twist_bimodule(m: Bimodule, t: int) -> Bimodule:
    """Degree-t slice of the tau-graded bimodule: values M(X, sigma^t Y).

    The left action twists through sigma^t: g . x = (sigma^t g) . x; the
    right action is untwisted.  tau is carried along so further twists and
    the cone construction stay available.
    """

    if m.tau is None or m.sigma is None:
        raise ValueError("twist requires a tau-equipped bimodule with sigma")
    cat, sig = m.cat, m.sigma
    values = {(x, y): m.value(x, sig.obj(y, t)) for x in cat.objects for y in cat.objects}
    left, right = {}, {}
    for x, y, y2 in itertools.product(cat.objects, repeat=3):
        sy, sy2 = sig.obj(y, t), sig.obj(y2, t)
        base = m.left[(x, sy, sy2)]
        hom = cat.hom(y, y2)
        tgt = m.value(x, sy2)
        out = np.empty((hom.ngens, base.shape[1]), dtype=object)
        for j in range(hom.ngens):
            sg = sig.apply(cat.gen_mor(y, y2, j), t)  # sigma^t g
            for i in range(base.shape[1]):
                acc = tgt.zero_vec()
                for jj in range(base.shape[0]):
                    c = int(sg.vec[jj])
                    if c:
                        acc = acc + base[jj, i] * c
                out[j, i] = tgt.reduce(acc)
        left[(x, y, y2)] = out
    for x2, x, y in itertools.product(cat.objects, repeat=3):
        right[(x2, x, y)] = m.right[(x2, x, sig.obj(y, t))]
    tau = {(x, y): m.tau[(x, sig.obj(y, t))] for x in cat.objects for y in cat.objects}
    return Bimodule(cat, values, left, right, tau=tau, sigma=sig)


@dataclass
class BimoduleMap:
    """Degree-0 map of bimodules: a ModuleMap per object pair."""

    source: Bimodule
    target: Bimodule
    components: dict  # (x, y) -> ModuleMap

    def validate(self):
        cat = self.source.cat
        failures = []
        for (x, y), comp in self.components.items():
            for g in _gen_mors(cat, y):
                for i in range(self.source.value(x, y).ngens):
                    lhs = comp_apply(self, x, g.dst, self.source.act_left(g, x, self.source.value(x, y).gen(i)))
                    rhs = self.target.act_left(g, x, comp(self.source.value(x, y).gen(i)))
                    if not self.target.value(x, g.dst).eq(lhs, rhs):
                        failures.append(("left-equivariance", x, y))
            for f in _gen_mors_into(cat, x):
                for i in range(self.source.value(x, y).ngens):
                    lhs = comp_apply(self, f.src, y, self.source.act_right(y, self.source.value(x, y).gen(i), f))
                    rhs = self.target.act_right(y, comp(self.source.value(x, y).gen(i)), f)
                    if not self.target.value(f.src, y).eq(lhs, rhs):
                        failures.append(("right-equivariance", x, y))
        return ValidationReport(not failures, failures)


def comp_apply(bmap: BimoduleMap, x, y, vec):
    return bmap.components[(x, y)](vec)
