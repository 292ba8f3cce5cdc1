"""Fixture catalog: the worked small categories everything is tested against.

z4             free modules over Z/4, suspension the identity
dual_numbers   free modules over F_2[e]/(e^2), suspension the identity
semisimple     free modules over F_p, suspension the identity

Each fixture bundles the one-object skeleton of the free-module category,
its bounded-rank additive envelope, the finitely-presented module skeleton
with hom tables, the triangle oracle, and (for z4) the imported stable
homology constants of the base ring.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exactalg import Coefficients, ExactMatrix, PresentedModule
from .lincat import (
    CategoryAutomorphism,
    LinearCategory,
    additive_envelope,
    identity_automorphism,
)

__all__ = [
    "one_object_category",
    "ring_category_z4",
    "ring_category_dual_numbers",
    "ring_category_semisimple",
    "Fixture",
    "get_fixture",
    "fixture_names",
]


def one_object_category(ring, ngens, mult_table, identity_coords, relations=None,
                        obj="R") -> LinearCategory:
    """One-object category whose hom module is the underlying ring/algebra.

    mult_table[j][i] = coordinates of gen_j * gen_i.
    """

    if relations is None:
        h = PresentedModule.free(ring, ngens)
    else:
        h = PresentedModule(ring, ngens, ExactMatrix(ring, relations))
    comp = np.empty((ngens, ngens), dtype=object)
    for j in range(ngens):
        for i in range(ngens):
            comp[j, i] = h.reduce(np.asarray(mult_table[j][i], dtype=object))
    return LinearCategory(ring, [obj], {(obj, obj): h}, {(obj, obj, obj): comp},
                          {obj: h.reduce(np.asarray(identity_coords, dtype=object))})


def ring_category_z4() -> LinearCategory:
    ring = Coefficients.integers_mod(4)
    return one_object_category(ring, 1, [[[1]]], [1])


def ring_category_dual_numbers() -> LinearCategory:
    # basis (1, e) with e^2 = 0 over F_2
    ring = Coefficients.prime_field(2)
    mult = [
        [[1, 0], [0, 1]],  # 1*1, 1*e
        [[0, 1], [0, 0]],  # e*1, e*e
    ]
    return one_object_category(ring, 2, mult, [1, 0])


def ring_category_semisimple(p=2) -> LinearCategory:
    ring = Coefficients.prime_field(p)
    return one_object_category(ring, 1, [[[1]]], [1])


def two_object_swap_category(p=2) -> tuple[LinearCategory, CategoryAutomorphism]:
    """Two isomorphic objects with one-dimensional homs and the swap automorphism."""
    ring = Coefficients.prime_field(p)
    objs = ["A", "B"]
    homs = {(x, y): PresentedModule.free(ring, 1) for x in objs for y in objs}
    comp = {}
    for x in objs:
        for y in objs:
            for z in objs:
                t = np.empty((1, 1), dtype=object)
                t[0, 0] = np.asarray([1], dtype=object)
                comp[(x, y, z)] = t
    idents = {x: np.asarray([1], dtype=object) for x in objs}
    cat = LinearCategory(ring, objs, homs, comp, idents)
    swap = CategoryAutomorphism(
        cat,
        {"A": "B", "B": "A"},
        {(x, y): ExactMatrix.identity(ring, 1) for x in objs for y in objs},
    )
    return cat, swap


# ---------------------------------------------------------------------------
# full fixtures (populated lazily; module-category parts live in modcat)


@dataclass
class Fixture:
    name: str
    ring: Coefficients
    category: LinearCategory          # one-object skeleton of free(R)
    envelope: LinearCategory          # bounded-rank additive envelope
    sigma: CategoryAutomorphism       # on the envelope
    sigma_skel: CategoryAutomorphism  # on the one-object skeleton
    radical_gen: np.ndarray | None    # generator of the radical of End(R), or None
    stable_homology: list | None = None  # imported H_i constants of the base ring
    extras: dict = field(default_factory=dict)

    def module_skeleton(self):
        from .modcat import module_skeleton_of_fixture

        if "module_skeleton" not in self.extras:
            self.extras["module_skeleton"] = module_skeleton_of_fixture(self)
        return self.extras["module_skeleton"]


def _build(name):
    if name == "z4":
        cat = ring_category_z4()
        env = additive_envelope(cat, 2)
        ring = cat.ring
        return Fixture(
            name="z4",
            ring=ring,
            category=cat,
            envelope=env,
            sigma=identity_automorphism(env),
            sigma_skel=identity_automorphism(cat),
            radical_gen=np.asarray([2], dtype=object),
            stable_homology=[
                PresentedModule.cyclic(ring, 4),
                PresentedModule.zero(ring),
                PresentedModule.cyclic(ring, 4),
                PresentedModule.cyclic(ring, 2),
            ],
        )
    if name == "dual_numbers_f2":
        cat = ring_category_dual_numbers()
        env = additive_envelope(cat, 2)
        return Fixture(
            name="dual_numbers_f2",
            ring=cat.ring,
            category=cat,
            envelope=env,
            sigma=identity_automorphism(env),
            sigma_skel=identity_automorphism(cat),
            radical_gen=np.asarray([0, 1], dtype=object),
        )
    if name.startswith("semisimple"):
        p = int(name.split("_f")[1]) if "_f" in name else 2
        cat = ring_category_semisimple(p)
        env = additive_envelope(cat, 2)
        return Fixture(
            name=name,
            ring=cat.ring,
            category=cat,
            envelope=env,
            sigma=identity_automorphism(env),
            sigma_skel=identity_automorphism(cat),
            radical_gen=None,
        )
    raise KeyError(f"unknown fixture {name!r}")


_CACHE = {}


def get_fixture(name) -> Fixture:
    if name == "semisimple":
        name = "semisimple_f2"
    if name not in _CACHE:
        _CACHE[name] = _build(name)
    return _CACHE[name]


def fixture_names():
    return ["z4", "dual_numbers_f2", "semisimple_f2", "semisimple_f3"]
