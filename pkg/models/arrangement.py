"""
Arrangement and certificate data models
"""

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from models.projective_space import ProjSpace, Subspace, meet, span, subspace_index
from utils.constants import HIGPIG, NOT_HIGPIG, STRONG_SCAN, TRANSVERSAL_SCAN
from utils.exceptions import ArrangementError, ArtifactError

logger = logging.getLogger(__name__)


@dataclass
class Arrangement:
    """Ordered family of pairwise distinct k-subspaces of one projective space"""
    space: ProjSpace
    k: int
    elements: tuple
    labels: tuple = ()
    provenance: dict = field(default_factory=dict)
    certificate: Optional["Certificate"] = None

    def __post_init__(self):
        self.elements = tuple(self.elements)
        self.labels = tuple(self.labels)
        if not 0 <= self.k <= self.space.N - 1:
            raise ArrangementError(f"k={self.k} outside [0, {self.space.N - 1}]")
        for i, element in enumerate(self.elements):
            if element.space != self.space:
                raise ArrangementError(f"element {i} lives outside {self.space!r}")
            if element.dim != self.k:
                raise ArrangementError(f"element {i} has dimension {element.dim}, expected {self.k}")
        if len(set(self.elements)) != len(self.elements):
            raise ArrangementError("elements must be pairwise distinct")
        if self.labels and len(self.labels) != len(self.elements):
            raise ArrangementError("one label per element expected")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def N(self):
        return self.space.N

    @property
    def q(self):
        return self.space.q

    def element_array(self):
        """Element bases stacked as an (m, k+1, N+1) index array"""
        if not self.elements:
            return np.zeros((0, self.k + 1, self.space.n), np.int64)
        return np.ascontiguousarray(np.stack([e.matrix for e in self.elements]))

    def intersection_dims(self):
        m = len(self.elements)
        dims = [[self.k] * m for _ in range(m)]
        for i in range(m):
            for j in range(i + 1, m):
                dims[i][j] = dims[j][i] = meet(self.elements[i], self.elements[j]).dim
        return dims

    def point_set(self):
        points = set()
        for element in self.elements:
            points.update(element.point_list)
        return points

    def describe(self):
        return f"{len(self)} {self.k}-subspaces of {self.space!r}"


@dataclass
class Certificate:
    """Outcome of a verification run; a negative verdict carries its witness"""
    verdict: str
    method: str
    witness: Optional[Subspace] = None
    witness_kind: Optional[str] = None
    witness_index: Optional[int] = None
    covered_points: int = 0
    intersection_dims: list = field(default_factory=list)
    scanned: int = 0
    elapsed_ms: float = 0.0
    strategy: str = "full"
    advisory: Optional[dict] = None

    @property
    def is_higgledy_piggledy(self):
        return self.verdict == HIGPIG

    def reverify(self, arr):
        """Re-check the verdict's witness with independent span/meet calls

        A HigPig verdict has no witness; confirming it takes a full strong scan,
        which the artifact loader runs.

        Returns:
            bool: True if the stored witness exhibits the failure (HigPig: True when no witness is stored)
        """
        if self.verdict == HIGPIG:
            return self.witness is None
        w = self.witness
        if w is None:
            return False
        if self.witness_kind == "deficient":
            if w.dim != arr.N - arr.k:
                return False
            meets = [meet(w, e) for e in arr.elements]
            return span(meets, space=arr.space).dim < w.dim
        if self.witness_kind == "transversal":
            if len(arr) > arr.q:
                return False
            return all(meet(w, e).rank > 0 for e in arr.elements)
        return False

    def to_dict(self):
        data = {
            "verdict": self.verdict,
            "method": self.method,
            "witness": self.witness.wire() if self.witness is not None else None,
            "witness_kind": self.witness_kind,
            "witness_index": self.witness_index,
            "covered_points": self.covered_points,
            "intersection_dims": self.intersection_dims,
            "scanned": self.scanned,
            "elapsed_ms": self.elapsed_ms,
            "strategy": self.strategy,
        }
        if self.advisory is not None:
            data["advisory"] = self.advisory
        return data

    @classmethod
    def from_dict(cls, data, space):
        try:
            verdict = data["verdict"]
            method = data["method"]
            if verdict not in (HIGPIG, NOT_HIGPIG) or method not in (STRONG_SCAN, TRANSVERSAL_SCAN):
                raise ArtifactError(f"unknown verdict/method {verdict}/{method}")
            witness = data.get("witness")
            witness = Subspace.from_rows(space, witness) if witness else None
            if witness is not None and data.get("witness_index") is not None:
                if subspace_index(witness) != data["witness_index"]:
                    raise ArtifactError("witness index does not match the witness")
            return cls(
                verdict=verdict,
                method=method,
                witness=witness,
                witness_kind=data.get("witness_kind"),
                witness_index=data.get("witness_index"),
                covered_points=int(data.get("covered_points", 0)),
                intersection_dims=data.get("intersection_dims", []),
                scanned=int(data.get("scanned", 0)),
                elapsed_ms=float(data.get("elapsed_ms", 0.0)),
                strategy=data.get("strategy", "full"),
                advisory=data.get("advisory"),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ArtifactError(f"malformed certificate: {e}") from e
