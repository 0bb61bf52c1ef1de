"""
Projective space data model: canonical subspaces, enumeration, span/meet/duality

A subspace is stored as its reduced row echelon basis. Enumeration order
is fixed: pivot patterns in combination order, then free entries read
row-major as a base-q counter. Certificates refer to subspaces by their
index in this order.
"""

import bisect
import logging
import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import NamedTuple

import numpy as np

from models.galois_field import FieldSpec
from utils.exceptions import ArgumentOutOfRange, DimensionOutOfRange, SpaceMismatch
from utils.kernels import matrix_rank, rref_inplace

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProjSpace:
    N: int
    field: FieldSpec

    def __post_init__(self):
        if self.N < 1:
            raise DimensionOutOfRange(f"projective dimension must be at least 1, got {self.N}")

    def __repr__(self):
        return f"PG({self.N},{self.q})"

    @property
    def n(self):
        """Vector dimension N+1"""
        return self.N + 1

    @property
    def q(self):
        return self.field.order

    @property
    def point_count(self):
        return (self.q ** self.n - 1) // (self.q - 1)

    def empty(self):
        return Subspace(self, ())

    def whole(self):
        return Subspace(self, tuple(tuple(int(i == j) for j in range(self.n)) for i in range(self.n)))

    def unit_point(self, i):
        """The frame point e_i (0-based)"""
        return Subspace(self, (tuple(int(i == j) for j in range(self.n)),))

    def point(self, coords):
        """Normalized point from a coordinate vector; works without matrix tables"""
        coords = [int(c) for c in coords]
        if len(coords) != self.n:
            raise SpaceMismatch(f"{len(coords)} coordinates given for {self!r}")
        lead = next((c for c in coords if c), 0)
        if lead == 0:
            raise ArgumentOutOfRange("the zero vector is not a point")
        scale = self.field.inv_int(lead)
        return Subspace(self, (tuple(self.field.mul_int(scale, c) for c in coords),))

    def subspace(self, rows):
        return Subspace.from_rows(self, rows)


@dataclass(frozen=True)
class Subspace:
    """Projective subspace given by a canonical RREF basis (zero rows = empty)"""
    space: ProjSpace
    rows: tuple

    def __repr__(self):
        return f"Subspace(dim={self.dim}, rows={[list(r) for r in self.rows]})"

    @classmethod
    def from_rows(cls, space, rows):
        rows = [list(r) for r in rows]
        if not rows:
            return space.empty()
        if any(len(r) != space.n for r in rows):
            raise SpaceMismatch(f"rows of length {space.n} expected in {space!r}")
        mat = np.array(rows, dtype=np.int64)
        if mat.min() < 0 or mat.max() >= space.q:
            raise ArgumentOutOfRange(f"entries must be field indices below {space.q}")
        rank = rref_inplace(mat, *space.field.tables)
        return cls(space, tuple(map(tuple, mat[:rank].tolist())))

    @property
    def rank(self):
        return len(self.rows)

    @property
    def dim(self):
        return len(self.rows) - 1

    @cached_property
    def matrix(self):
        if not self.rows:
            return np.zeros((0, self.space.n), np.int64)
        return np.array(self.rows, dtype=np.int64)

    @cached_property
    def pivots(self):
        return tuple(next(j for j, x in enumerate(row) if x) for row in self.rows)

    @property
    def coords(self):
        """Coordinates of a point"""
        if self.rank != 1:
            raise DimensionOutOfRange("coords are defined for points only")
        return self.rows[0]

    def contains(self, other):
        """True if other is contained in this subspace"""
        _same_space(self, other)
        if other.rank == 0:
            return True
        if other.rank > self.rank:
            return False
        stacked = np.vstack([self.matrix, other.matrix])
        return matrix_rank(stacked, *self.space.field.tables) == self.rank

    def is_disjoint(self, other):
        _same_space(self, other)
        if self.rank == 0 or other.rank == 0:
            return True
        stacked = np.vstack([self.matrix, other.matrix])
        return matrix_rank(stacked, *self.space.field.tables) == self.rank + other.rank

    @cached_property
    def point_list(self):
        return list(subspaces_within(self, 0))

    def points(self):
        return list(self.point_list)

    def wire(self):
        return [list(r) for r in self.rows]


def _same_space(*parts):
    spaces = {p.space for p in parts}
    if len(spaces) > 1:
        raise SpaceMismatch("subspaces live in different projective spaces")


def span(parts, space=None):
    """Smallest subspace containing every part; span of nothing is empty"""
    parts = list(parts)
    if not parts:
        if space is None:
            raise ArgumentOutOfRange("span of no parts needs an explicit space")
        return space.empty()
    _same_space(*parts)
    if space is not None and parts[0].space != space:
        raise SpaceMismatch("parts do not live in the requested space")
    rows = [r for part in parts for r in part.rows]
    return Subspace.from_rows(parts[0].space, rows)


def dual(a):
    """Orthogonal complement under the standard bilinear form"""
    space = a.space
    if a.rank == 0:
        return space.whole()
    field = space.field
    pivots = a.pivots
    rows = []
    for f in range(space.n):
        if f in pivots:
            continue
        vec = [0] * space.n
        vec[f] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = field.neg_int(a.rows[i][f])
        rows.append(vec)
    return Subspace.from_rows(space, rows)


def meet(a, b):
    """Intersection, computed as dual(span(dual(a), dual(b)))"""
    _same_space(a, b)
    return dual(span([dual(a), dual(b)]))


def gaussian_binomial(n, k, q):
    """Number of k-dimensional subspaces of an n-dimensional vector space over GF(q)

    Args:
        n (int): Vector dimension
        k (int): Subspace dimension
        q (int): Field order

    Returns:
        int: Exact Gaussian binomial [n choose k]_q
    """
    if not 0 <= k <= n:
        raise ArgumentOutOfRange(f"need 0 <= k <= n, got n={n}, k={k}")
    num, den = 1, 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    return num // den


# Enumeration

class ScanUnit(NamedTuple):
    """Offsets [start, stop) of one pivot pattern; base is the pattern's global start"""
    pattern: tuple
    start: int
    stop: int
    base: int


def _free_count(pattern, n):
    r = len(pattern)
    return sum(n - p - 1 for p in pattern) - r * (r - 1) // 2


@lru_cache(maxsize=None)
def pattern_table(n, r, q):
    """Pivot patterns of r x n RREF matrices with their sizes and global starts"""
    patterns = list(combinations(range(n), r))
    sizes = [q ** _free_count(pat, n) for pat in patterns]
    starts = [0] * len(patterns)
    total = 0
    for i, size in enumerate(sizes):
        starts[i] = total
        total += size
    lookup = {pat: i for i, pat in enumerate(patterns)}
    return patterns, sizes, starts, lookup


def _check_dim(space, d, lowest=-1):
    if not lowest <= d <= space.N:
        raise DimensionOutOfRange(f"dimension {d} outside [{lowest}, {space.N}] in {space!r}")


def decode_rows(pattern, offset, n, q):
    """RREF rows for a pivot pattern and free-entry offset (pure Python)"""
    pivot_set = set(pattern)
    rows = [[0] * n for _ in pattern]
    for i in range(len(pattern) - 1, -1, -1):
        p = pattern[i]
        for j in range(n - 1, p, -1):
            if j not in pivot_set:
                rows[i][j] = offset % q
                offset //= q
        rows[i][p] = 1
    return tuple(tuple(r) for r in rows)


def enumeration_units(space, d, chunk_size=None):
    """Disjoint work units covering the d-subspace enumeration in order"""
    _check_dim(space, d, lowest=0)
    patterns, sizes, starts, _ = pattern_table(space.n, d + 1, space.q)
    units = []
    for pattern, size, start in zip(patterns, sizes, starts):
        step = size if not chunk_size else chunk_size
        for lo in range(0, size, step):
            units.append(ScanUnit(pattern, lo, min(lo + step, size), start))
    return units


def enumerate_subspaces(space, d, part=0, parts=1):
    """Yield every d-subspace exactly once in enumeration order

    Args:
        space (ProjSpace): Ambient space
        d (int): Projective dimension, -1 <= d <= N
        part (int): Which sub-stream to yield when splitting
        parts (int): Number of disjoint sub-streams (whole pivot patterns dealt round-robin)

    Returns:
        generator: Subspace objects
    """
    _check_dim(space, d)
    if d == -1:
        if part == 0:
            yield space.empty()
        return
    patterns, sizes, _, _ = pattern_table(space.n, d + 1, space.q)
    for i in range(part, len(patterns), parts):
        for offset in range(sizes[i]):
            yield Subspace(space, decode_rows(patterns[i], offset, space.n, space.q))


def subspace_count(space, d):
    _check_dim(space, d)
    return gaussian_binomial(space.n, d + 1, space.q)


def subspace_index(sub):
    """Global enumeration index of a subspace"""
    space = sub.space
    if sub.rank == 0:
        return 0
    _, _, starts, lookup = pattern_table(space.n, sub.rank, space.q)
    pattern = sub.pivots
    pivot_set = set(pattern)
    offset = 0
    for i, row in enumerate(sub.rows):
        for j in range(pattern[i] + 1, space.n):
            if j not in pivot_set:
                offset = offset * space.q + row[j]
    return starts[lookup[pattern]] + offset


def subspace_at(space, d, index):
    """Inverse of subspace_index"""
    _check_dim(space, d)
    if d == -1:
        return space.empty()
    patterns, sizes, starts, _ = pattern_table(space.n, d + 1, space.q)
    i = bisect.bisect_right(starts, index) - 1
    if i < 0 or index - starts[i] >= sizes[i]:
        raise ArgumentOutOfRange(f"index {index} outside the {d}-subspaces of {space!r}")
    return Subspace(space, decode_rows(patterns[i], index - starts[i], space.n, space.q))


def gf_matmul(field, a, b):
    """Matrix product over a field with tables"""
    tables = field.tables
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    out = np.zeros((a.shape[0], b.shape[1]), np.int64)
    for l in range(a.shape[1]):
        out = tables.add[out, tables.mul[a[:, l][:, None], b[l][None, :]]]
    return out


def _rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_subspace(space, d, seed=None):
    """Uniform random d-subspace: a uniform full-rank matrix, canonicalized

    Args:
        space (ProjSpace): Ambient space
        d (int): Projective dimension
        seed (int or random.Random): Seed or generator to draw from

    Returns:
        Subspace: Canonical d-subspace
    """
    _check_dim(space, d)
    rng = _rng(seed)
    if d == -1:
        return space.empty()
    while True:
        rows = [[rng.randrange(space.q) for _ in range(space.n)] for _ in range(d + 1)]
        sub = Subspace.from_rows(space, rows)
        if sub.rank == d + 1:
            return sub


def _lift(base, small_rows):
    free_cols = [c for c in range(base.space.n) if c not in base.pivots]
    lifted = []
    for row in small_rows:
        vec = [0] * base.space.n
        for j, c in enumerate(free_cols):
            vec[c] = row[j]
        lifted.append(vec)
    return Subspace.from_rows(base.space, list(base.rows) + lifted)


def subspaces_through(base, d):
    """Yield every d-subspace containing base, each once"""
    space = base.space
    if not base.dim <= d <= space.N:
        raise DimensionOutOfRange(f"no {d}-subspaces through a {base.dim}-subspace of {space!r}")
    t = d + 1 - base.rank
    nq = space.n - base.rank
    if t == 0:
        yield base
        return
    patterns, sizes, _, _ = pattern_table(nq, t, space.q)
    for pattern, size in zip(patterns, sizes):
        for offset in range(size):
            yield _lift(base, decode_rows(pattern, offset, nq, space.q))


def random_subspace_through(base, d, seed=None):
    """Uniform random d-subspace containing base"""
    space = base.space
    if not base.dim <= d <= space.N:
        raise DimensionOutOfRange(f"no {d}-subspaces through a {base.dim}-subspace of {space!r}")
    rng = _rng(seed)
    t = d + 1 - base.rank
    nq = space.n - base.rank
    while True:
        small = [[rng.randrange(space.q) for _ in range(nq)] for _ in range(t)]
        if t == 0:
            return base
        mat = np.array(small, dtype=np.int64)
        if matrix_rank(mat, *space.field.tables) == t:
            return _lift(base, small)


def subspaces_within(ambient, d):
    """Yield every d-subspace contained in ambient, each once"""
    if not -1 <= d <= ambient.dim:
        raise DimensionOutOfRange(f"no {d}-subspaces inside a {ambient.dim}-subspace")
    space = ambient.space
    if d == -1:
        yield space.empty()
        return
    patterns, sizes, _, _ = pattern_table(ambient.rank, d + 1, space.q)
    for pattern, size in zip(patterns, sizes):
        for offset in range(size):
            coeffs = decode_rows(pattern, offset, ambient.rank, space.q)
            rows = gf_matmul(space.field, coeffs, ambient.matrix)
            yield Subspace.from_rows(space, rows)


def chart(sigma):
    """Coordinate chart of a hyperplane: PG(N-1,q) through its pivot columns

    Returns:
        tuple: (ProjSpace of dimension N-1, function mapping subspaces of sigma into it)
    """
    space = sigma.space
    if sigma.dim != space.N - 1:
        raise DimensionOutOfRange("a chart needs a hyperplane")
    target = ProjSpace(space.N - 1, space.field)
    cols = list(sigma.pivots)

    def to_chart(sub):
        if not sigma.contains(sub):
            raise SpaceMismatch("subspace does not lie in the charted hyperplane")
        return Subspace.from_rows(target, [[row[c] for c in cols] for row in sub.rows])

    return target, to_chart
