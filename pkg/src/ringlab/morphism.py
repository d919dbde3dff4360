"""Unital ring homomorphisms between finite rings, stored as explicit maps."""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .errors import NotAHomomorphism
from .rings import _CHUNK, Subring, _arr

EXHAUSTIVE_CAP = 4096


class RingMorphism:
    """A map ``source -> target`` given by the image of every source index.

    With ``validate=True`` the homomorphism laws are checked on all pairs when
    the source has at most ``EXHAUSTIVE_CAP`` elements; callers that proved
    well-definedness another way (generator relations) pass ``validate=False``.
    """

    def __init__(self, source, target, mapping, validate=True):
        self.source = source
        self.target = target
        self.map = _arr(mapping).copy()
        self.map.setflags(write=False)
        if self.map.shape != (source.size,):
            raise NotAHomomorphism("map must assign an image to every source element")
        if self.map.min() < 0 or self.map.max() >= target.size:
            raise NotAHomomorphism("image index out of range")
        if validate:
            check_homomorphism(source, target, self.map)

    @cached_property
    def image(self):
        return np.unique(self.map)

    @property
    def injective(self):
        return self.image.size == self.source.size

    @property
    def surjective(self):
        return self.image.size == self.target.size

    def __call__(self, x):
        return int(self.map[int(x)]) if np.ndim(x) == 0 else self.map[_arr(x)]

    def image_subring(self):
        return Subring(self.target, self.image, validate=False)

    def kernel(self):
        from .ideals import Ideal

        return Ideal(self.source, tuple(int(i) for i in np.flatnonzero(self.map == 0)))

    def then(self, g):
        """The composite ``g . self``."""
        if g.source is not self.target:
            raise ValueError("morphisms are not composable")
        return RingMorphism(self.source, g.target, g.map[self.map], validate=False)

    def __repr__(self):
        return f"<RingMorphism {self.source.name} -> {self.target.name}>"


def compose(g, f):
    """``g . f``."""
    return f.then(g)


def check_homomorphism(source, target, fmap, cap=EXHAUSTIVE_CAP):
    """Exhaustively verify the unital ring-homomorphism laws; raise with a witness.

    Returns False (and checks only 0 and 1) when the source exceeds ``cap``.
    """
    if fmap[0] != 0:
        raise NotAHomomorphism("f(0) != 0", witness=(0,))
    if fmap[source.one] != target.one:
        raise NotAHomomorphism("f(1) != 1", witness=(source.one,))
    if source.size > cap:
        return False
    allv = source.all
    step = max(1, _CHUNK // source.size)
    for start in range(0, source.size, step):
        a = allv[start : start + step, None]
        for op_s, op_t, label in ((source.add, target.add, "+"), (source.mul, target.mul, "*")):
            lhs = fmap[_arr(op_s(a, allv[None, :]))]
            rhs = _arr(op_t(fmap[a], fmap[allv][None, :]))
            bad = np.argwhere(lhs != rhs)
            if bad.size:
                i, j = bad[0]
                x, y = int(a[i, 0]), int(allv[j])
                raise NotAHomomorphism(
                    f"f({source.format(x)} {label} {source.format(y)}) is not "
                    f"f({source.format(x)}) {label} f({source.format(y)})",
                    witness=(x, y),
                )
    return True


def inclusion(sub):
    """Inclusion morphism of a Subring into its ambient."""
    return RingMorphism(sub, sub.ambient, sub.members, validate=False)


def identity(ring):
    return RingMorphism(ring, ring, ring.all, validate=False)
