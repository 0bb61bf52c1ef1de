"""
Staged six-line configuration of PG(4,q), q >= 3

Frame coordinates are pinned: the line m = <e0,e1> is shared by the three
solids <e0,e1,e2,e3>, <e0,e1,e2,e4> and <e0,e1,e3,e4> (conf.sigma), with
M1 = e0, M2 = e1, P12 = e2, P13 = e3 and P23 = e4. Every remaining
"choose ... such that" step takes the first valid candidate in enumeration
order; a choice that turns out degenerate moves on to the next one.
"""

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Optional

from higgledy_core import find_transversal, transversal_enumeration
from models.arrangement import Arrangement
from models.galois_field import gf
from models.projective_space import ProjSpace, meet, span, subspaces_through, subspaces_within
from settings import budget
from utils.exceptions import ArgumentOutOfRange, DegenerateConfiguration, SearchBudgetExhausted

logger = logging.getLogger(__name__)


@dataclass
class Bundle:
    """The q coplanar, concurrent lines a3(A) for A on a line through P12"""
    line: object
    lines: list
    centre: object
    plane: object


@dataclass
class SixLineConfiguration:
    space: ProjSpace
    m: object
    sigma: tuple
    pi12: object
    pi13: object
    pi23: object
    M1: object
    M2: object
    P12: object
    P13: object
    P23: object
    l12: object
    l22: object
    s: object
    l11: object = None
    l21: object = None
    beta: object = None
    S: object = None
    bundles: list = field(default_factory=list)
    conic: list = field(default_factory=list)
    t: object = None
    M0: object = None
    a0: object = None
    r: object = None
    M3: object = None
    l31: object = None
    Q: object = None
    l32: object = None
    choices: dict = field(default_factory=dict)

    @property
    def q(self):
        return self.space.q

    def five_lines(self):
        return [self.l11, self.l12, self.l21, self.l22, self.l31]

    def lines(self):
        return self.five_lines() + [self.l32]


def base_configuration(q):
    """Frame part of the configuration, before any line is chosen"""
    space = ProjSpace(4, gf(q))
    e = [space.unit_point(i) for i in range(5)]
    sigma = (span([e[0], e[1], e[2], e[3]]), span([e[0], e[1], e[2], e[4]]), span([e[0], e[1], e[3], e[4]]))
    return SixLineConfiguration(
        space=space,
        m=span([e[0], e[1]]),
        sigma=sigma,
        pi12=meet(sigma[0], sigma[1]),
        pi13=meet(sigma[0], sigma[2]),
        pi23=meet(sigma[1], sigma[2]),
        M1=e[0], M2=e[1], P12=e[2], P13=e[3], P23=e[4],
        l12=span([e[2], e[3]]),
        l22=span([e[2], e[4]]),
        s=span([e[3], e[4]]),
    )


def first_line_candidates(conf, i):
    """Lines of solid i through its point of m, skew to its fixed line and off both of its planes"""
    M = conf.M1 if i == 1 else conf.M2
    solid = conf.sigma[i - 1]
    l2 = conf.l12 if i == 1 else conf.l22
    pi_i3 = conf.pi13 if i == 1 else conf.pi23
    return [line for line in subspaces_through(M, 1)
            if solid.contains(line) and line.is_disjoint(l2)
            and not conf.pi12.contains(line) and not pi_i3.contains(line)]


def _expect(condition, message):
    if not condition:
        raise DegenerateConfiguration(message)


def _transversal_line(A, first, second):
    """Unique line through A meeting two skew lines"""
    line = meet(span([A, first]), span([A, second]))
    _expect(line.dim == 1, f"no unique line through {A.coords} meeting both lines")
    return line


def bundle(conf, a):
    """Bundle of a line through P12 in the plane shared by the first two solids"""
    sigma3 = conf.sigma[2]
    lines = []
    for A in a.point_list:
        if A == conf.P12:
            continue
        a1 = _transversal_line(A, conf.l11, conf.l12)
        a2 = _transversal_line(A, conf.l21, conf.l22)
        alpha = span([a1, a2])
        _expect(alpha.dim == 2, "a1 and a2 do not span a plane")
        a3 = meet(alpha, sigma3)
        _expect(a3.dim == 1, "plane meets the third solid outside a line")
        lines.append(a3)
    _expect(len(set(lines)) == len(lines) >= 2, "bundle lines coincide")
    centre = meet(lines[0], lines[1])
    plane = span(lines)
    _expect(centre.dim == 0 and plane.dim == 2, "bundle is not a planar pencil")
    _expect(all(line.contains(centre) for line in lines), "bundle lines are not concurrent")
    _expect(plane.contains(conf.s), "bundle plane misses s")
    return Bundle(a, lines, centre, plane)


def _collinear_triple(points):
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            line = span([points[i], points[j]])
            if any(line.contains(P) for k, P in enumerate(points) if k not in (i, j)):
                return True
    return False


def gather_conic(conf):
    """Bundle centres over every admissible line through P12, plus M1 and M2"""
    conf.bundles = []
    for X in conf.m.point_list:
        if X in (conf.M1, conf.M2):
            continue
        conf.bundles.append(bundle(conf, span([conf.P12, X])))
    conic = [b.centre for b in conf.bundles] + [conf.M1, conf.M2]
    _expect(len(set(conic)) == conf.q + 1, f"{len(set(conic))} conic points instead of {conf.q + 1}")
    _expect(all(conf.beta.contains(P) for P in conic), "conic leaves beta")
    _expect(not _collinear_triple(conic), "three conic points are collinear")
    _expect(conf.S in conic, "S is not on the conic")
    conf.conic = conic
    return conic


def lines_through_in(point, plane):
    """Lines of a plane through one of its points, in point order"""
    seen = []
    for X in plane.point_list:
        if X == point:
            continue
        line = span([point, X])
        if line not in seen:
            seen.append(line)
    return seen


def tangent_at(conf):
    conic = set(conf.conic)
    tangents = [line for line in lines_through_in(conf.S, conf.beta)
                if sum(P in conic for P in line.point_list) == 1]
    _expect(len(tangents) == 1, f"{len(tangents)} tangents at S")
    return tangents[0]


def _stage_beta(conf):
    solid = span([conf.l11, conf.l21])
    _expect(solid.dim == 3, "l11 and l21 meet")
    conf.beta = meet(solid, conf.sigma[2])
    _expect(conf.beta.dim == 2, "beta is not a plane")
    conf.S = meet(conf.s, conf.beta)
    _expect(conf.S.dim == 0, "s does not meet beta in a point")


def _stage_fifth_line(conf):
    conf.t = tangent_at(conf)
    conf.M0 = meet(conf.t, conf.m)
    _expect(conf.M0.dim == 0 and conf.M0 not in (conf.M1, conf.M2), "tangent meets m in M1 or M2")
    conf.a0 = span([conf.M0, conf.P12])
    b0 = bundle(conf, conf.a0)
    _expect(b0.centre == conf.S, "tangent bundle is not centred at S")
    others = [line for line in lines_through_in(conf.S, b0.plane) if line not in b0.lines]
    _expect(len(others) == 1, "no unique extra line through S in the tangent bundle plane")
    conf.r = others[0]

    m_points = [P for P in conf.m.point_list if P not in (conf.M0, conf.M1, conf.M2)]
    _expect(bool(m_points), "m has no fourth point")
    conf.M3 = m_points[0]
    avoid = (conf.pi13, conf.pi23, conf.beta)
    picks = [X for X in conf.r.point_list if not any(sub.contains(X) for sub in avoid)]
    _expect(bool(picks), "r lies in pi13, pi23 and beta")
    conf.l31 = span([conf.M3, picks[0]])
    conf.Q = meet(span([conf.m, conf.l31]), conf.s)
    _expect(conf.Q.dim == 0, "<m, l31> does not meet s in a point")
    conf.choices["M3"] = conf.m.point_list.index(conf.M3)
    conf.choices["l31_point"] = conf.r.point_list.index(picks[0])


def five_line_configuration(q, max_choices=None):
    """Configuration with l11, l12, l21, l22 and l31 fixed

    Args:
        q (int): Field order, at least 3
        max_choices (int): (l11, l21) pairs to try; default from the budgets

    Returns:
        SixLineConfiguration: Everything but l32
    """
    if q < 3:
        raise ArgumentOutOfRange("the staged six-line configuration needs q >= 3")
    max_choices = max_choices or budget("six_lines_choices")
    template = base_configuration(q)
    first = first_line_candidates(template, 1)
    second = first_line_candidates(template, 2)
    for attempt, (i, j) in enumerate(product(range(len(first)), range(len(second)))):
        if attempt >= max_choices:
            break
        conf = base_configuration(q)
        conf.l11, conf.l21 = first[i], second[j]
        conf.choices = {"l11": i, "l21": j}
        try:
            _stage_beta(conf)
            gather_conic(conf)
            _stage_fifth_line(conf)
        except DegenerateConfiguration as e:
            logger.warning("Six-line choice (l11=%d, l21=%d) at q=%d is degenerate: %s", i, j, q, e)
            continue
        logger.info("Five-line configuration at q=%d from choice (l11=%d, l21=%d)", q, i, j)
        return conf
    raise SearchBudgetExhausted(f"no generic (l11, l21) choice among {max_choices} at q={q}", max_choices)


def choose_sixth_line(conf, workers=None):
    """First line of the third solid skew to m that leaves the six lines without a transversal plane"""
    five = conf.five_lines()
    for index, line in enumerate(subspaces_within(conf.sigma[2], 1)):
        if not line.is_disjoint(conf.m) or line in five:
            continue
        arr = Arrangement(conf.space, 1, five + [line])
        if find_transversal(arr, workers=workers) is None:
            conf.l32 = line
            conf.choices["l32"] = index
            logger.info("Sixth line at q=%d is line %d of the third solid", conf.q, index)
            return line
    raise SearchBudgetExhausted(f"no sixth line in the third solid at q={conf.q}")


def build_six_lines(q, workers=None):
    conf = five_line_configuration(q)
    choose_sixth_line(conf, workers)
    return conf


def external_line(conf):
    """First line of beta through M3 missing the conic"""
    conic = set(conf.conic)
    for line in lines_through_in(conf.M3, conf.beta):
        if not conic.intersection(line.point_list):
            return line
    raise DegenerateConfiguration("M3 lies on no external line")


def delta_avoidance_profile(conf):
    """Points of the plane <e, Q> hit by planes meeting the five fixed lines

    Returns:
        dict: covered point count, the bound (q+1)+(q-3)+1, delta and a line of delta
            avoiding every covered point (None if there is none)
    """
    e = external_line(conf)
    delta = span([e, conf.Q])
    five = Arrangement(conf.space, 1, conf.five_lines())
    covered = set()
    planes = 0
    for alpha in transversal_enumeration(five, 2):
        planes += 1
        covered.update(meet(alpha, delta).point_list)
    avoiding: Optional[object] = None
    for line in subspaces_within(delta, 1):
        if not covered.intersection(line.point_list):
            avoiding = line
            break
    q = conf.q
    return {
        "external_line": e,
        "delta": delta,
        "planes": planes,
        "covered": len(covered),
        "bound": (q + 1) + (q - 3) + 1,
        "avoiding_line": avoiding,
    }
