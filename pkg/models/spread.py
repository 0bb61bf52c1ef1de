"""
Desarguesian spreads through field reduction

A point of PG(n', q^(k+1)) is a 1-dimensional GF(q^(k+1))-subspace; read over
GF(q) it becomes a (k+1)-dimensional subspace, i.e. a k-subspace of
PG((n'+1)(k+1)-1, q). The images of all points partition the big space.
"""

import logging
from dataclasses import dataclass
from functools import cached_property

from models.galois_field import extension, gf
from models.projective_space import ProjSpace, Subspace, enumerate_subspaces
from utils.constants import FIELD_ORDER_LIMIT
from utils.exceptions import ArgumentOutOfRange, FieldTooLarge, SpaceMismatch

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SpreadElementMap:
    """Field reduction map PG(n', q^(k+1)) -> k-subspaces of PG((n'+1)(k+1)-1, q)"""
    n_small: int
    k: int
    q: int

    @cached_property
    def base(self):
        return gf(self.q)

    @cached_property
    def ext(self):
        return extension(self.base, self.k + 1)

    @cached_property
    def small(self):
        return ProjSpace(self.n_small, self.ext)

    @cached_property
    def big(self):
        return ProjSpace((self.n_small + 1) * (self.k + 1) - 1, self.base)

    @cached_property
    def _basis(self):
        # 1, x, ..., x^k as indices of the extension
        return [self.q ** i for i in range(self.k + 1)]

    def image(self, point):
        """Spread element of a point of the small space"""
        if point.space != self.small:
            raise SpaceMismatch(f"point of {point.space!r} given to a map on {self.small!r}")
        if point.rank != 1:
            raise ArgumentOutOfRange("field reduction maps points only")
        ext = self.ext
        rows = []
        for lam in self._basis:
            row = []
            for x in point.coords:
                row.extend(ext.to_coeffs(ext.mul_int(lam, x)))
            rows.append(row)
        return Subspace.from_rows(self.big, rows)

    def __call__(self, point):
        return self.image(point)

    def images(self, points):
        return [self.image(P) for P in points]

    def points(self):
        """Points of the small space in enumeration order"""
        return list(enumerate_subspaces(self.small, 0))

    def spread(self):
        return [self.image(P) for P in self.points()]

    def is_spread(self):
        """True if the images of all points partition the big point set"""
        seen = set()
        for element in self.spread():
            pts = element.point_list
            if seen.intersection(pts):
                return False
            seen.update(pts)
        return len(seen) == self.big.point_count


def field_reduction(n_small, k, q):
    """Build the Desarguesian spread map of PG(n_small, q^(k+1))

    Args:
        n_small (int): Dimension n' of the small space
        k (int): Spread element dimension
        q (int): Order of the base field

    Returns:
        SpreadElementMap: The field reduction map
    """
    if n_small < 1 or k < 1:
        raise ArgumentOutOfRange(f"field reduction needs n' >= 1 and k >= 1, got {n_small}, {k}")
    if q ** (k + 1) > FIELD_ORDER_LIMIT:
        raise FieldTooLarge(f"GF({q}^{k + 1}) exceeds {FIELD_ORDER_LIMIT}")
    mapping = SpreadElementMap(n_small, k, q)
    logger.debug("Field reduction %r -> %r", mapping.small, mapping.big)
    return mapping
