import json
import math

import numpy as np
import pytest

from cribbing_mac_regions.discrete_region import search as search_module
from cribbing_mac_regions.discrete_region import (
    JOINT_LABELS,
    AuxFactorization,
    ChannelForm,
    DiscreteChannelSpec,
    check_remark1,
    check_remark1_joint,
    compose_joint,
    default_aux_sizes,
    dump_channel_spec,
    parse_channel_spec,
    random_channel,
    random_factor_arrays,
    random_factorization,
    search_region,
    state_penalties,
    theorem1_bounds,
    theorem2_bounds,
    willems_bounds,
    willems_support,
)
from cribbing_mac_regions.errors import CapacityError, FormError, SpecDocumentError
from cribbing_mac_regions.info_core import JointPmf
from cribbing_mac_regions.region_geometry import contains

WEIGHTS = (0.0, 0.25, 0.5, 0.75, 1.0)


def _binary_entropy(p: float) -> float:
    return -p * math.log2(p) - (1.0 - p) * math.log2(1.0 - p)


def _copy_inputs(spec: DiscreteChannelSpec) -> AuxFactorization:
    """Trivial U, uniform inputs, Vi = Xi."""
    def encoder(x: int, s: int) -> np.ndarray:
        factor = np.zeros((1, s, x, x))
        for si in range(s):
            for xi in range(x):
                factor[0, si, xi, xi] = 1.0 / x
        return factor

    return AuxFactorization.for_spec(spec, np.ones(1), encoder(spec.x1, spec.s1), encoder(spec.x2, spec.s2))


def test_noiseless_pair_bounds(noiseless_pair):
    triple = theorem1_bounds(noiseless_pair, _copy_inputs(noiseless_pair))
    assert triple.r1_bound == pytest.approx(1.0, abs=1e-12)
    assert triple.r2_bound == pytest.approx(1.0, abs=1e-12)
    assert triple.sum_bound == pytest.approx(2.0, abs=1e-12)


def test_output_equal_to_first_input(make_channel):
    spec = make_channel(lambda a, b: a, 2, 2, 2)
    triple = theorem1_bounds(spec, _copy_inputs(spec))
    assert (triple.r1_bound, triple.r2_bound, triple.sum_bound) == pytest.approx((1.0, 1.0, 1.0), abs=1e-12)


def _binary_state_channel() -> DiscreteChannelSpec:
    """Y = X1 xor S1 with a fair private state S1 and no other state."""
    transition = np.zeros((2, 1, 2, 1, 2))
    for x in range(2):
        for s in range(2):
            transition[x, 0, s, 0, x ^ s] = 1.0
    return DiscreteChannelSpec(
        form=ChannelForm.T1,
        x1=2,
        x2=1,
        s0=1,
        s1=2,
        s2=1,
        y=2,
        state_pmf=JointPmf((2, 1), [0.5, 0.5]),
        transition=transition,
    )


@pytest.mark.parametrize("binned, expected", [(False, 1.0), (True, 0.0)])
def test_binning_against_the_state(binned, expected):
    spec = _binary_state_channel()
    p_x1v1 = np.zeros((1, 2, 2, 2))
    for s in range(2):
        for x in range(2):
            p_x1v1[0, s, x, x ^ s if binned else x] = 0.5
    aux = AuxFactorization.for_spec(spec, np.ones(1), p_x1v1, np.ones((1, 1, 1, 1)))
    assert theorem1_bounds(spec, aux).r1_bound == pytest.approx(expected, abs=1e-12)


def test_composed_joint_keeps_the_state_law():
    rng = np.random.default_rng(1)
    spec = random_channel(rng, ChannelForm.T1, s1=3)
    p = compose_joint(spec, random_factorization(spec, rng))
    assert p.labels == JOINT_LABELS
    assert float(p.probs.sum()) == pytest.approx(1.0, abs=1e-12)
    states = p.marginal(p.index("S0", "S1", "S2"))
    np.testing.assert_allclose(states, spec.state_array, atol=1e-12)


def test_state_penalties_are_nonnegative():
    rng = np.random.default_rng(2)
    spec = random_channel(rng, ChannelForm.T2)
    penalties = state_penalties(compose_joint(spec, random_factorization(spec, rng)))
    assert len(penalties) == 4
    assert all(v >= 0.0 for v in penalties.values())


def test_bounds_refuse_the_wrong_form():
    rng = np.random.default_rng(3)
    t1 = random_channel(rng, ChannelForm.T1)
    t2 = random_channel(rng, ChannelForm.T2)
    with pytest.raises(FormError):
        theorem2_bounds(t1, random_factorization(t1, rng))
    with pytest.raises(FormError):
        theorem1_bounds(t2, random_factorization(t2, rng))
    with pytest.raises(FormError):
        check_remark1(t2, random_factorization(t2, rng))
    assert theorem2_bounds(t2, random_factorization(t2, rng)).sum_bound >= 0.0


def test_identity_holds_on_random_joints():
    rng = np.random.default_rng(0)
    for _ in range(100):
        spec = random_channel(rng, ChannelForm.T1)
        report = check_remark1(spec, random_factorization(spec, rng))
        assert report.passed, report.failures()


def test_identity_fails_when_the_markov_chain_breaks():
    # X1 constant, V1 = S2, S1 and S2 independent fair bits
    probs = np.zeros((1, 2, 2, 1, 2, 1, 1, 1, 1))
    for s1 in range(2):
        for s2 in range(2):
            probs[0, s1, s2, 0, s2, 0, 0, 0, 0] = 0.25
    report = check_remark1_joint(JointPmf(probs.shape, probs, JOINT_LABELS))
    first = report.records[0]
    assert first.lhs == pytest.approx(0.0, abs=1e-12)
    assert first.rhs == pytest.approx(1.0, abs=1e-12)
    assert not first.passed
    assert report.records[1].passed


def test_channel_validation():
    with pytest.raises(ValueError):
        DiscreteChannelSpec(
            form=ChannelForm.T1, x1=2, x2=2, s0=2, s1=1, s2=1, y=2,
            state_pmf=JointPmf((1, 1), [1.0]), transition=np.full(16, 0.5),
        )
    correlated = JointPmf((1, 2, 2), [0.5, 0.0, 0.0, 0.5])
    with pytest.raises(ValueError):
        DiscreteChannelSpec(
            form=ChannelForm.T2, x1=1, x2=1, s0=1, s1=2, s2=2, y=2,
            state_pmf=correlated, transition=np.full(8, 0.5),
        )
    with pytest.raises(ValueError):
        DiscreteChannelSpec.without_states(np.full((2, 2, 2), 0.6), 2, 2, 2)


def test_factorization_shapes_are_checked(noiseless_pair):
    with pytest.raises(ValueError):
        AuxFactorization.for_spec(noiseless_pair, np.ones((1, 1)), np.ones((1, 1, 2, 1)), np.ones((1, 1, 2, 1)))
    aux = AuxFactorization.for_spec(noiseless_pair, np.ones(1), np.full((1, 1, 2, 1), 0.5), np.full((1, 1, 3, 1), 1 / 3))
    with pytest.raises(ValueError):
        compose_joint(noiseless_pair, aux)


def test_default_aux_sizes(noiseless_pair):
    assert default_aux_sizes(noiseless_pair) == (4, 2, 2)
    t2 = random_channel(np.random.default_rng(0), ChannelForm.T2, s0=3)
    assert default_aux_sizes(t2) == (4, 12, 12)


def test_search_finds_the_noiseless_pentagon(noiseless_pair):
    region = search_region(noiseless_pair, budget=300, seed=0)
    assert region.r1_max == pytest.approx(1.0, abs=1e-3)
    assert region.r2_max == pytest.approx(1.0, abs=1e-3)
    assert region.sum_max == pytest.approx(2.0, abs=1e-3)


def test_silent_output_gives_the_origin(make_channel):
    spec = make_channel(lambda a, b: 0, 2, 2, 1)
    region = search_region(spec, budget=50, seed=0)
    assert region.frontier == ((0.0, 0.0),)


def test_search_is_deterministic_and_monotone_in_budget(noisy_xor_channel):
    small = search_region(noisy_xor_channel, budget=150, seed=3)
    assert search_region(noisy_xor_channel, budget=150, seed=3) == small
    large = search_region(noisy_xor_channel, budget=600, seed=3)
    assert contains(large, small, slack=1e-12)


def test_search_reports_progress(noiseless_pair):
    lines = list[str]()
    search_region(noiseless_pair, budget=40, seed=0, print_func=lines.append)
    assert lines
    assert lines[-1].startswith("[100%]")


def test_search_argument_checks(noiseless_pair):
    with pytest.raises(ValueError):
        search_region(noiseless_pair, budget=0, seed=0)
    with pytest.raises(ValueError):
        search_region(noiseless_pair, budget=10, seed=0, aux_sizes=(1, 0, 1))
    with pytest.raises(CapacityError):
        search_region(noiseless_pair, budget=10, seed=0, aux_sizes=(100, 100, 100))


def test_stateless_cribbing_pentagon(xor_channel):
    half = np.full((1, 2), 0.5)
    triple = willems_bounds(xor_channel, np.ones(1), half, half)
    assert (triple.r1_bound, triple.r2_bound, triple.sum_bound) == pytest.approx((1.0, 1.0, 1.0), abs=1e-12)


@pytest.mark.parametrize(
    "fixture, capacity",
    [
        ("xor_channel", 1.0),
        ("or_channel", 1.0),
        ("noisy_xor_channel", 1.0 - _binary_entropy(0.1)),
    ],
)
def test_search_matches_stateless_oracle(request, fixture, capacity):
    spec = request.getfixturevalue(fixture)
    region = search_region(spec, budget=6000, seed=0)
    for weight in WEIGHTS:
        oracle = willems_support(spec, weight)
        assert oracle == pytest.approx(capacity * max(weight, 1.0 - weight), abs=1e-9)
        assert region.support(weight) == pytest.approx(oracle, abs=2e-2)


def test_stateless_oracle_needs_trivial_states():
    spec = random_channel(np.random.default_rng(0), ChannelForm.T1)
    with pytest.raises(ValueError):
        willems_support(spec, 0.5)
    with pytest.raises(ValueError):
        willems_support(DiscreteChannelSpec.without_states(np.full((2, 2, 2), 0.5), 2, 2, 2), 1.5)


def test_revealing_an_input_never_shrinks_the_bounds(noisy_xor_channel):
    base = noisy_xor_channel.channel_array.reshape(2, 2, 2)
    refined = np.zeros((2, 2, 4))
    for a in range(2):
        for b in range(2):
            refined[a, b, 2 * a: 2 * a + 2] = base[a, b]
    refined_spec = DiscreteChannelSpec.without_states(refined, 2, 2, 4)
    rng = np.random.default_rng(8)
    for _ in range(10):
        aux = random_factorization(noisy_xor_channel, rng)
        before = theorem1_bounds(noisy_xor_channel, aux)
        after = theorem1_bounds(refined_spec, aux)
        assert after.r1_bound == pytest.approx(before.r1_bound, abs=1e-12)
        assert after.r2_bound == pytest.approx(before.r2_bound, abs=1e-12)
        assert after.sum_bound >= before.sum_bound - 1e-12


def _noiseless_document() -> dict:
    transition = []
    for a in range(2):
        for b in range(2):
            row = [0.0] * 4
            row[2 * a + b] = 1.0
            transition.extend(row)
    return {
        "form": "t1",
        "alphabets": {"x1": 2, "x2": 2, "s1": 1, "s2": 1, "y": 4},
        "state_pmf": [1.0],
        "transition": transition,
    }


def test_parse_channel_document(noiseless_pair):
    spec = parse_channel_spec(json.dumps(_noiseless_document()))
    assert spec.form is ChannelForm.T1
    assert spec.s0 == 1
    np.testing.assert_array_equal(spec.transition, noiseless_pair.transition)
    again = parse_channel_spec(dump_channel_spec(spec))
    np.testing.assert_array_equal(again.transition, spec.transition)


def _broken(path: tuple, value) -> str:
    doc = _noiseless_document()
    target = doc
    for key in path[:-1]:
        target = target[key]
    if value is None:
        del target[path[-1]]
    else:
        target[path[-1]] = value
    return json.dumps(doc)


@pytest.mark.parametrize(
    "text, pointer",
    [
        (_broken(("alphabets",), None), "/alphabets"),
        (_broken(("alphabets", "y"), 0), "/alphabets/y"),
        (_broken(("alphabets", "s0"), 2), "/alphabets/s0"),
        (_broken(("form",), "t3"), "/form"),
        (_broken(("state_pmf",), [0.5]), "/state_pmf"),
        (_broken(("transition", 6), 1.0), "/transition/4"),
        (_broken(("transition", 3), -1.0), "/transition/3"),
        (_broken(("transition",), [1.0]), "/transition"),
        ("{not json", ""),
    ],
)
def test_malformed_documents_point_at_the_problem(text, pointer):
    with pytest.raises(SpecDocumentError) as info:
        parse_channel_spec(text)
    assert info.value.pointer == pointer


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_common_state_bounds_reduce_without_states(seed):
    rng = np.random.default_rng(seed)
    transition = rng.dirichlet(np.ones(3), size=4).reshape(2, 2, 3)
    t1 = DiscreteChannelSpec.without_states(transition, 2, 2, 3)
    t2 = DiscreteChannelSpec(
        form=ChannelForm.T2,
        x1=2,
        x2=2,
        s0=1,
        s1=1,
        s2=1,
        y=3,
        state_pmf=JointPmf((1, 1, 1), np.ones(1)),
        transition=transition,
    )
    for _ in range(5):
        aux = random_factorization(t1, rng)
        reduced = theorem1_bounds(t1, aux)
        common = theorem2_bounds(t2, aux)
        assert (common.r1_bound, common.r2_bound, common.sum_bound) == pytest.approx(
            (reduced.r1_bound, reduced.r2_bound, reduced.sum_bound), abs=1e-12
        )


@pytest.mark.parametrize("channel", ["noisy_xor", "random_binary"])
def test_search_reaches_random_restarts(request, monkeypatch, channel):
    if channel == "noisy_xor":
        spec = request.getfixturevalue("noisy_xor_channel")
    else:
        spec = random_channel(np.random.default_rng(4), ChannelForm.T1)
    draws = list[int]()

    def counting(*args, **kwargs):
        draws.append(1)
        return random_factor_arrays(*args, **kwargs)

    monkeypatch.setattr(search_module, "random_factor_arrays", counting)
    search_region(spec, budget=5000, seed=0, aux_sizes=(2, 2, 2))
    assert len(draws) >= 4


def test_restarts_only_add_to_the_structured_region(noisy_xor_channel):
    structured = 1 + len(search_module.REFINE_DIRECTIONS) * search_module.REFINE_EVALUATIONS
    early = search_region(noisy_xor_channel, budget=structured, seed=0)
    later = search_region(noisy_xor_channel, budget=structured + 1500, seed=0)
    assert contains(later, early, slack=1e-12)
