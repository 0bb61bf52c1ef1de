"""
Linear code data model: generator and parity-check matrices over GF(q)
"""

import logging
from dataclasses import dataclass

import numpy as np

from models.galois_field import field_from_dict
from models.projective_space import ProjSpace, Subspace, dual, gf_matmul
from utils.constants import SCHEMA_VERSION
from utils.exceptions import ArgumentOutOfRange, ArtifactError, NotSpanning
from utils.kernels import matrix_rank

logger = logging.getLogger(__name__)


def _rank(field, rows):
    if not len(rows):
        return 0
    return matrix_rank(np.array(rows, dtype=np.int64), *field.tables)


def null_space(field, rows, n):
    """Basis of the right kernel of a matrix with n columns"""
    if n < 2:
        raise ArgumentOutOfRange("null spaces need at least two columns")
    space = ProjSpace(n - 1, field)
    return dual(Subspace.from_rows(space, rows) if len(rows) else space.empty()).rows


def transpose(rows):
    return tuple(zip(*rows))


@dataclass
class LinearCode:
    """[n, k]_q code; whichever matrix is missing is filled in from the other"""
    field: object
    generator: tuple = ()
    parity: tuple = ()

    def __post_init__(self):
        self.generator = tuple(tuple(int(x) for x in row) for row in self.generator)
        self.parity = tuple(tuple(int(x) for x in row) for row in self.parity)
        if not self.generator and not self.parity:
            raise ArgumentOutOfRange("a code needs a generator or a parity-check matrix")
        widths = {len(row) for row in self.generator + self.parity}
        if len(widths) != 1:
            raise ArgumentOutOfRange(f"rows of different lengths {sorted(widths)}")
        n = widths.pop()
        if self.generator and _rank(self.field, self.generator) != len(self.generator):
            raise NotSpanning("generator rows are linearly dependent")
        if self.parity and _rank(self.field, self.parity) != len(self.parity):
            raise NotSpanning("parity-check rows are linearly dependent")
        if not self.parity:
            self.parity = null_space(self.field, self.generator, n)
        elif not self.generator:
            self.generator = null_space(self.field, self.parity, n)
        else:
            product = gf_matmul(self.field, self.generator, transpose(self.parity))
            if product.any():
                raise ArgumentOutOfRange("generator and parity-check matrix are not orthogonal")
            if len(self.generator) + len(self.parity) != n:
                raise ArgumentOutOfRange("generator and parity-check ranks do not add up to the length")

    def __repr__(self):
        return f"[{self.n},{self.k}]_{self.q} code"

    @property
    def q(self):
        return self.field.order

    @property
    def n(self):
        rows = self.generator or self.parity
        return len(rows[0])

    @property
    def k(self):
        return len(self.generator)

    @property
    def r(self):
        return self.n - self.k

    def generator_array(self):
        return np.array(self.generator, dtype=np.int64).reshape(self.k, self.n)

    def parity_array(self):
        return np.array(self.parity, dtype=np.int64).reshape(self.r, self.n)

    def is_degenerate(self):
        """True if some coordinate is zero in every codeword"""
        return bool((~self.generator_array().any(axis=0)).any())

    def to_dict(self):
        return {
            "format": SCHEMA_VERSION,
            "field": self.field.to_dict(),
            "generator": [list(row) for row in self.generator],
            "parity": [list(row) for row in self.parity],
        }

    @classmethod
    def from_dict(cls, data):
        if data.get("format") != SCHEMA_VERSION:
            raise ArtifactError(f"unsupported code format {data.get('format')!r}")
        try:
            return cls(field_from_dict(data["field"]), data.get("generator", ()), data.get("parity", ()))
        except KeyError as e:
            raise ArtifactError(f"code file misses {e}") from e
