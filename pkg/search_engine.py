"""
Seeded, budgeted randomized search over arrangement templates

Trial t draws its elements from random.Random(derive_seed(seed, t)), so a
trial is a pure function of (template, t). Trials are evaluated in batches and
consumed in order; the lowest successful trial index wins for any worker count.
"""

import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from higgledy_core import is_higgledy_piggledy, lower_bound
from models.arrangement import Arrangement, Certificate
from models.galois_field import field_from_dict, gf
from models.projective_space import (
    ProjSpace,
    Subspace,
    meet,
    random_subspace,
    random_subspace_through,
    subspace_at,
    subspace_count,
)
from models.spread import field_reduction
from settings import budget as budget_value
from settings import get_config, resolve_workers
from utils.constants import DEFAULT_SEED, METHODS, SCHEMA_VERSION
from utils.exceptions import ArtifactError, ArgumentOutOfRange
from utils.helpers import derive_seed, elapsed_ms

logger = logging.getLogger(__name__)

# Rejection attempts per drawn element before a trial is given up
DRAW_ATTEMPTS = 1000


# Constraints

@dataclass(frozen=True)
class FixedElements:
    elements: tuple

    def to_dict(self):
        return {"type": "FixedElements", "elements": [e.wire() for e in self.elements]}


@dataclass(frozen=True)
class PairShares:
    """The next two drawn elements meet in exactly a dim-subspace"""
    dim: int

    def to_dict(self):
        return {"type": "PairShares", "dim": self.dim}


@dataclass(frozen=True)
class AllFromSpread:
    """Remaining elements are images of points under field reduction"""
    n_small: int
    k: int
    q: int

    @property
    def mapping(self):
        return field_reduction(self.n_small, self.k, self.q)

    def to_dict(self):
        return {"type": "AllFromSpread", "n_small": self.n_small, "k": self.k, "q": self.q}


@dataclass(frozen=True)
class PairwiseDisjoint:
    """Elements are pairwise disjoint, except pairs placed by PairShares"""

    def to_dict(self):
        return {"type": "PairwiseDisjoint"}


def constraint_from_dict(data, space):
    try:
        kind = data["type"]
        if kind == "FixedElements":
            return FixedElements(tuple(Subspace.from_rows(space, rows) for rows in data["elements"]))
        if kind == "PairShares":
            return PairShares(int(data["dim"]))
        if kind == "AllFromSpread":
            return AllFromSpread(int(data["n_small"]), int(data["k"]), int(data["q"]))
        if kind == "PairwiseDisjoint":
            return PairwiseDisjoint()
    except (KeyError, TypeError, ValueError) as e:
        raise ArtifactError(f"malformed constraint {data!r}: {e}") from e
    raise ArtifactError(f"unknown constraint type {data.get('type')!r}")


# Templates

@dataclass
class SearchTemplate:
    space: ProjSpace
    k: int
    cardinality: int
    constraints: tuple = ()
    method: str = "transversal"
    budget: Optional[int] = None
    seed: int = DEFAULT_SEED
    name: str = "search"

    def __post_init__(self):
        self.constraints = tuple(self.constraints)
        if self.budget is None:
            self.budget = budget_value("search_trials")
        self.validate()

    @property
    def q(self):
        return self.space.q

    def of_type(self, kind):
        return [c for c in self.constraints if isinstance(c, kind)]

    def validate(self):
        if self.budget < 1:
            raise ArgumentOutOfRange("search budget must be at least 1")
        if self.method not in METHODS:
            raise ArgumentOutOfRange(f"unknown verification method {self.method!r}")
        if not 0 <= self.k <= self.space.N - 1:
            raise ArgumentOutOfRange(f"k={self.k} outside [0, {self.space.N - 1}]")
        arity = sum(len(c.elements) for c in self.of_type(FixedElements)) + 2 * len(self.of_type(PairShares))
        if self.cardinality < max(arity, 1):
            raise ArgumentOutOfRange(f"cardinality {self.cardinality} below the constraint arity {arity}")
        for c in self.of_type(PairShares):
            if not -1 <= c.dim < self.k:
                raise ArgumentOutOfRange(f"PairShares({c.dim}) impossible for {self.k}-subspaces")
        for c in self.of_type(FixedElements):
            if any(e.space != self.space or e.dim != self.k for e in c.elements):
                raise ArgumentOutOfRange("fixed elements must be k-subspaces of the template space")
        for c in self.of_type(AllFromSpread):
            mapping = c.mapping
            if mapping.big != self.space or c.k != self.k:
                raise ArgumentOutOfRange(f"spread of {mapping.big!r} with {c.k}-elements does not fit the template")

    def to_dict(self):
        return {
            "format": SCHEMA_VERSION,
            "name": self.name,
            "field": self.space.field.to_dict(),
            "N": self.space.N,
            "k": self.k,
            "cardinality": self.cardinality,
            "constraints": [c.to_dict() for c in self.constraints],
            "method": self.method,
            "budget": self.budget,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data):
        if data.get("format") != SCHEMA_VERSION:
            raise ArtifactError(f"unsupported template format {data.get('format')!r}")
        try:
            space = ProjSpace(int(data["N"]), field_from_dict(data["field"]))
            return cls(
                space=space,
                k=int(data["k"]),
                cardinality=int(data["cardinality"]),
                constraints=tuple(constraint_from_dict(c, space) for c in data.get("constraints", [])),
                method=data.get("method", "transversal"),
                budget=data.get("budget"),
                seed=int(data.get("seed", DEFAULT_SEED)),
                name=data.get("name", "search"),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ArtifactError(f"malformed template: {e}") from e


@dataclass
class SearchOutcome:
    template: SearchTemplate
    found: bool
    trials: int
    arrangement: Optional[Arrangement] = None
    certificate: Optional[Certificate] = None
    trial: Optional[int] = None
    trial_seed: Optional[int] = None
    elapsed_ms: float = 0.0

    def to_dict(self):
        return {
            "found": self.found,
            "trials": self.trials,
            "trial": self.trial,
            "trial_seed": self.trial_seed,
            "seed": self.template.seed,
            "elapsed_ms": self.elapsed_ms,
            "certificate": self.certificate.to_dict() if self.certificate else None,
        }


# Drawing

def _meets_any(candidate, elements):
    return any(not candidate.is_disjoint(element) for element in elements)


def _draw_pair(space, k, dim, rng):
    for _ in range(DRAW_ATTEMPTS):
        common = random_subspace(space, dim, rng)
        first = random_subspace_through(common, k, rng)
        second = random_subspace_through(common, k, rng)
        if first != second and meet(first, second) == common:
            return [first, second]
    return None


def draw(template, trial_seed):
    """Elements of one trial in the fixed order FixedElements, PairShares, spread, fill

    Returns:
        list: The drawn elements, or None if rejection sampling gave up
    """
    rng = random.Random(trial_seed)
    space, k = template.space, template.k
    disjoint = bool(template.of_type(PairwiseDisjoint))
    elements = []
    for c in template.of_type(FixedElements):
        elements.extend(c.elements)
    for c in template.of_type(PairShares):
        pair = _draw_pair(space, k, c.dim, rng)
        if pair is None:
            return None
        if disjoint and any(_meets_any(e, elements) for e in pair):
            return None
        elements.extend(pair)

    spreads = template.of_type(AllFromSpread)
    if spreads:
        mapping = spreads[0].mapping
        count = subspace_count(mapping.small, 0)
        drawn = set()
        while len(elements) < template.cardinality:
            if len(drawn) >= count:
                return None
            index = rng.randrange(count)
            if index in drawn:
                continue
            drawn.add(index)
            image = mapping.image(subspace_at(mapping.small, 0, index))
            if image in elements or (disjoint and _meets_any(image, elements)):
                continue
            elements.append(image)
        return elements

    while len(elements) < template.cardinality:
        for _ in range(DRAW_ATTEMPTS):
            candidate = random_subspace(space, k, rng)
            if candidate in elements:
                continue
            if disjoint and _meets_any(candidate, elements):
                continue
            elements.append(candidate)
            break
        else:
            return None
    return elements


def check_constraints(arr, template):
    """Check every template constraint on an arrangement after the fact

    Returns:
        tuple: (ok, message)
    """
    if arr.space != template.space or arr.k != template.k:
        return False, "arrangement lives in another space"
    if len(arr) != template.cardinality:
        return False, f"{len(arr)} elements, expected {template.cardinality}"
    elements = list(arr.elements)
    position = 0
    for c in template.of_type(FixedElements):
        if tuple(elements[position:position + len(c.elements)]) != c.elements:
            return False, "fixed elements are not in place"
        position += len(c.elements)
    paired = set()
    for c in template.of_type(PairShares):
        first, second = elements[position], elements[position + 1]
        if meet(first, second).dim != c.dim:
            return False, f"elements {position},{position + 1} do not share a {c.dim}-subspace"
        paired.add((position, position + 1))
        position += 2
    for c in template.of_type(AllFromSpread):
        spread = set(c.mapping.spread())
        if not all(e in spread for e in elements[position:]):
            return False, "an element is not a spread element"
    if template.of_type(PairwiseDisjoint):
        for i in range(len(elements)):
            for j in range(i + 1, len(elements)):
                if (i, j) not in paired and not elements[i].is_disjoint(elements[j]):
                    return False, f"elements {i},{j} meet"
    return True, "ok"


# Trials

def _arrangement(template, elements, trial, trial_seed):
    return Arrangement(
        template.space,
        template.k,
        elements,
        provenance={
            "construction": template.name,
            "q": template.q,
            "seed": template.seed,
            "trial": trial,
            "trial_seed": trial_seed,
            "choices": [],
        },
    )


def _run_trial(task):
    template, trial = task
    trial_seed = derive_seed(template.seed, trial)
    elements = draw(template, trial_seed)
    if elements is None:
        return trial, trial_seed, None
    arr = _arrangement(template, elements, trial, trial_seed)
    certificate = is_higgledy_piggledy(arr, method=template.method, workers=1)
    if not certificate.is_higgledy_piggledy:
        return trial, trial_seed, None
    arr.certificate = certificate
    return trial, trial_seed, arr


def _batches(template, batch):
    for start in range(0, template.budget, batch):
        yield [(template, t) for t in range(start, min(start + batch, template.budget))]


def run(template, workers=None):
    """Run trials until the first certified arrangement or the end of the budget

    Args:
        template (SearchTemplate): What to draw and how to certify it
        workers (int): Worker processes; the outcome does not depend on it

    Returns:
        SearchOutcome: Winner with its trial index and seed, or the exhaustion report
    """
    start = time.perf_counter()
    workers = resolve_workers(workers)
    search = get_config()["search"]
    log_every = max(1, search["log_every"])
    bound = lower_bound(template.space.N, template.k, template.q)
    if template.cardinality < bound:
        logger.warning("Cardinality %d is below the lower bound %d; the search cannot succeed",
                       template.cardinality, bound)
    logger.info("Search %s: %d %d-subspaces of %r, budget %d, seed %d",
                template.name, template.cardinality, template.k, template.space, template.budget, template.seed)

    done = 0
    if workers <= 1:
        results = (_run_trial((template, t)) for t in range(template.budget))
        for trial, trial_seed, arr in results:
            done += 1
            if arr is not None:
                return _success(template, trial, trial_seed, arr, start)
            if done % log_every == 0:
                logger.info("Search %s: %d trials without success", template.name, done)
    else:
        batch = max(1, search["batch_size"]) * workers
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for tasks in _batches(template, batch):
                for trial, trial_seed, arr in pool.map(_run_trial, tasks):
                    done += 1
                    if arr is not None:
                        return _success(template, trial, trial_seed, arr, start)
                    if done % log_every == 0:
                        logger.info("Search %s: %d trials without success", template.name, done)

    logger.warning("Search %s exhausted its budget of %d trials", template.name, template.budget)
    return SearchOutcome(template, found=False, trials=done, elapsed_ms=elapsed_ms(start))


def _success(template, trial, trial_seed, arr, start):
    logger.info("Search %s succeeded at trial %d (seed %d)", template.name, trial, trial_seed)
    return SearchOutcome(
        template,
        found=True,
        trials=trial + 1,
        arrangement=arr,
        certificate=arr.certificate,
        trial=trial,
        trial_seed=trial_seed,
        elapsed_ms=elapsed_ms(start),
    )


def replay(template, trial):
    """Rebuild and re-certify the arrangement of one trial"""
    if not 0 <= trial < template.budget:
        raise ArgumentOutOfRange(f"trial {trial} outside the budget {template.budget}")
    trial_seed = derive_seed(template.seed, trial)
    elements = draw(template, trial_seed)
    if elements is None:
        return None
    arr = _arrangement(template, elements, trial, trial_seed)
    arr.certificate = is_higgledy_piggledy(arr, method=template.method, workers=1)
    return arr


# Shipped templates

def six_planes_template(q, seed=DEFAULT_SEED, budget=None):
    """Two planes through a common line plus four random planes of PG(4,q)"""
    return SearchTemplate(ProjSpace(4, gf(q)), 2, 6, (PairShares(1),), method="strong",
                          budget=budget, seed=seed, name="pg4_six_planes")


def six_lines_template(q, seed=DEFAULT_SEED, budget=None):
    """Two lines through a point plus four lines, all other pairs disjoint"""
    return SearchTemplate(ProjSpace(4, gf(q)), 1, 6, (PairShares(0), PairwiseDisjoint()), method="strong",
                          budget=budget, seed=seed, name="pg4_six_lines")


def spread_template(n_small, k, q, cardinality, seed=DEFAULT_SEED, budget=None, name="spread_search"):
    """Random spread elements of PG((n'+1)(k+1)-1, q), certified with the screened method"""
    mapping = field_reduction(n_small, k, q)
    return SearchTemplate(mapping.big, k, cardinality, (AllFromSpread(n_small, k, q),), method="transversal",
                          budget=budget, seed=seed, name=name)
