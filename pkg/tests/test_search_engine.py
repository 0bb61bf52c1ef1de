import pytest

from models.arrangement import Arrangement
from models.galois_field import gf
from models.projective_space import ProjSpace, meet
from search_engine import (
    AllFromSpread,
    FixedElements,
    PairShares,
    PairwiseDisjoint,
    SearchTemplate,
    check_constraints,
    draw,
    replay,
    run,
    six_planes_template,
    spread_template,
)
from utils.exceptions import ArgumentOutOfRange, ArtifactError
from utils.helpers import derive_seed


@pytest.fixture
def four_spread_lines():
    return spread_template(1, 1, 2, 4, seed=7, budget=20, name="four_spread_lines")


def test_derive_seed_is_stable():
    assert derive_seed(1, 0) == derive_seed(1, 0)
    assert derive_seed(1, 0) != derive_seed(1, 1)
    assert derive_seed(1, 0) != derive_seed(2, 0)
    assert 0 <= derive_seed(20240601, 5) < 2 ** 63


def test_spread_search_succeeds(four_spread_lines):
    outcome = run(four_spread_lines, workers=1)
    assert outcome.found
    assert outcome.trial == 0
    assert outcome.trials == 1
    assert outcome.certificate.is_higgledy_piggledy
    assert outcome.arrangement.provenance["trial_seed"] == derive_seed(7, 0)
    assert check_constraints(outcome.arrangement, four_spread_lines) == (True, "ok")


def test_replay_reproduces_the_winner(four_spread_lines):
    outcome = run(four_spread_lines, workers=1)
    again = replay(four_spread_lines, outcome.trial)
    assert again.elements == outcome.arrangement.elements
    assert again.certificate.verdict == outcome.certificate.verdict


def test_worker_count_does_not_change_outcome(four_spread_lines):
    one = run(four_spread_lines, workers=1)
    two = run(four_spread_lines, workers=2)
    assert one.trial == two.trial
    assert one.arrangement.elements == two.arrangement.elements


def test_replay_range(four_spread_lines):
    with pytest.raises(ArgumentOutOfRange):
        replay(four_spread_lines, 20)


def test_exhaustion_below_lower_bound():
    template = SearchTemplate(ProjSpace(3, gf(2)), 1, 2, (PairwiseDisjoint(),), method="strong",
                              budget=5, name="too_small")
    outcome = run(template, workers=1)
    assert not outcome.found
    assert outcome.trials == 5
    assert outcome.arrangement is None
    assert outcome.to_dict()["certificate"] is None


def test_draw_is_deterministic():
    template = six_planes_template(2, budget=10)
    assert draw(template, 123) == draw(template, 123)


def test_pair_shares_draw():
    template = six_planes_template(2, budget=10)
    elements = next(e for e in (draw(template, s) for s in range(20)) if e is not None)
    assert len(elements) == 6
    assert meet(elements[0], elements[1]).dim == 1
    ok, _ = check_constraints(Arrangement(template.space, 2, elements), template)
    assert ok


def test_check_constraints_failures(four_lines_q2):
    fixed = FixedElements(four_lines_q2.elements[:2])
    template = SearchTemplate(four_lines_q2.space, 1, 4, (fixed,), budget=1)
    assert check_constraints(four_lines_q2, template)[0]
    swapped = Arrangement(four_lines_q2.space, 1, four_lines_q2.elements[::-1])
    assert not check_constraints(swapped, template)[0]
    wrong_size = SearchTemplate(four_lines_q2.space, 1, 5, budget=1)
    assert not check_constraints(four_lines_q2, wrong_size)[0]


def test_template_validation():
    space = ProjSpace(4, gf(2))
    with pytest.raises(ArgumentOutOfRange):
        SearchTemplate(space, 2, 1, (PairShares(1),), budget=1)
    with pytest.raises(ArgumentOutOfRange):
        SearchTemplate(space, 2, 6, (PairShares(2),), budget=1)
    with pytest.raises(ArgumentOutOfRange):
        SearchTemplate(space, 2, 6, method="fast", budget=1)
    with pytest.raises(ArgumentOutOfRange):
        SearchTemplate(space, 2, 6, budget=0)
    with pytest.raises(ArgumentOutOfRange):
        SearchTemplate(space, 1, 6, (AllFromSpread(1, 1, 2),), budget=1)


def test_template_dict_round_trip():
    template = spread_template(1, 2, 3, 7, seed=11, budget=50, name="seven_planes_spread")
    again = SearchTemplate.from_dict(template.to_dict())
    assert again == template


def test_template_dict_errors():
    data = six_planes_template(2, budget=1).to_dict()
    with pytest.raises(ArtifactError):
        SearchTemplate.from_dict(dict(data, format="hpforge/0"))
    with pytest.raises(ArtifactError):
        SearchTemplate.from_dict(dict(data, constraints=[{"type": "Sideways"}]))
    broken = dict(data)
    del broken["k"]
    with pytest.raises(ArtifactError):
        SearchTemplate.from_dict(broken)
