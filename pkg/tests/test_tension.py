import math
from dataclasses import replace

import pytest
from hypothesis import given, strategies as st

from jamstring.errors import DomainError, NoHalvingError
from jamstring.experiments import calibrate_to_anchor
from jamstring.tension import (
    AttenuationModel,
    ChainConfig,
    Mechanism,
    crossover_joint,
    halving_joint,
    joint_tension,
    retention_after,
    tip_torque_profile,
)
from jamstring.torque_models import BeadParams, Material, bead_holding_torque

retention = st.floats(0.5, 1.0, exclude_min=True)


def brute_halving(k):
    n = 1
    while k**n > 0.5:
        n += 1
    return n


def brute_crossover(a, b):
    for i, (x, y) in enumerate(zip(a, b), start=1):
        if x >= y:
            return i
    return None


@pytest.mark.parametrize("index", [1, 2, 7, 40])
def test_lossless(index):
    assert joint_tension(50.0, AttenuationModel(1.0), index) == 50.0


def test_second_joint():
    assert joint_tension(50.0, AttenuationModel(0.94), 2) == pytest.approx(47.0, rel=1e-15)


def test_eleventh_joint():
    assert joint_tension(100.0, AttenuationModel(0.94), 11) == pytest.approx(53.861511409489935, rel=1e-14)


def test_joint_index_zero():
    with pytest.raises(DomainError):
        joint_tension(50.0, AttenuationModel(0.94), 0)


@pytest.mark.parametrize("k", [0.0, -0.1, 1.01])
def test_attenuation_range(k):
    with pytest.raises(DomainError):
        AttenuationModel(k)


@given(st.floats(0, 1e3), retention, st.integers(1, 40), st.integers(1, 40))
def test_composition(t, k, i, j):
    m = AttenuationModel(k)
    direct = joint_tension(t, m, i + j - 1)
    stepped = joint_tension(joint_tension(t, m, i), m, j)
    assert stepped == pytest.approx(direct, rel=1e-12, abs=1e-300)


def bead_mech(k=1.0, mu=0.4):
    return Mechanism("bead", BeadParams(0.006, 70.0, Material(mu)), AttenuationModel(k))


def test_flat_profile_when_lossless():
    chain = ChainConfig(8, 0.006)
    prof = tip_torque_profile(bead_mech(1.0), chain)
    expected = bead_holding_torque(bead_mech().params, 50.0)
    assert all(t == expected for t in prof.torques)


def test_profile_ratio(trio):
    prof = tip_torque_profile(trio["comb"], ChainConfig(4, 0.03))
    assert prof.torque(4) / prof.torque(1) == pytest.approx(0.94**3, rel=1e-12)


def test_calibrated_comb_joint4(trio):
    assert tip_torque_profile(trio["comb"], ChainConfig(4, 0.03)).torque(4) == pytest.approx(0.20, rel=1e-9)


@given(st.floats(0.5, 0.999), st.integers(2, 60))
def test_profile_strictly_decreasing(k, n):
    prof = tip_torque_profile(bead_mech(k), ChainConfig(n, 0.006))
    assert all(a > b for a, b in zip(prof.torques, prof.torques[1:]))


def test_profile_entries_are_contiguous():
    prof = tip_torque_profile(bead_mech(0.9), ChainConfig(5, 0.006))
    assert [i for i, _ in prof.entries] == [1, 2, 3, 4, 5]


@pytest.mark.parametrize("k, expected", [(0.5, 1), (0.94, 12), (0.99, 69)])
def test_halving_joint(k, expected):
    assert brute_halving(k) == expected
    assert halving_joint(AttenuationModel(k)) == expected


@given(st.floats(0.01, 0.9999))
def test_halving_matches_scan(k):
    assert halving_joint(AttenuationModel(k)) == brute_halving(k)


def test_halving_lossless():
    with pytest.raises(NoHalvingError):
        halving_joint(AttenuationModel(1.0))


def test_ten_joint_retention():
    assert retention_after(AttenuationModel(0.94), 10) == pytest.approx(0.5386151140948993, rel=1e-14)


def test_crossover_identical():
    m = bead_mech(0.9)
    assert crossover_joint(m, m, ChainConfig(5, 0.006)) == 1


def test_crossover_calibrated(trio):
    flat = replace(trio["radial"], attenuation=AttenuationModel(1.0))
    flat = calibrate_to_anchor(flat, 0.39)
    assert crossover_joint(flat, trio["comb"], ChainConfig(20, 0.0091)) == 1


def test_crossover_overtake(trio):
    # comb holding 0.50 N*m at the root, decaying 6 %/joint, against a flat 0.39 N*m radial string
    comb = calibrate_to_anchor(trio["comb"], 0.50, joint_index=1)
    flat = calibrate_to_anchor(replace(trio["radial"], attenuation=AttenuationModel(1.0)), 0.39, joint_index=1)
    chain = ChainConfig(20, 0.0091)
    a = tip_torque_profile(flat, chain).torques
    b = tip_torque_profile(comb, chain).torques
    assert brute_crossover(a, b) == 6
    assert crossover_joint(flat, comb, chain) == 6


def test_crossover_none():
    strong, weak = bead_mech(1.0, mu=0.5), bead_mech(1.0, mu=0.4)
    assert crossover_joint(weak, strong, ChainConfig(10, 0.006)) is None


@given(
    mu_a=st.floats(0.05, 1.0),
    mu_b=st.floats(0.05, 1.0),
    k_a=retention,
    k_b=retention,
    n=st.integers(1, 100),
)
def test_crossover_matches_scan(mu_a, mu_b, k_a, k_b, n):
    a, b = bead_mech(k_a, mu_a), bead_mech(k_b, mu_b)
    chain = ChainConfig(n, 0.006)
    expected = brute_crossover(tip_torque_profile(a, chain).torques, tip_torque_profile(b, chain).torques)
    assert crossover_joint(a, b, chain) == expected


def test_decay_classification(trio):
    chain = ChainConfig(4, 0.01)
    ratio = {f: tip_torque_profile(m, chain).torque(4) / tip_torque_profile(m, chain).torque(1) for f, m in trio.items()}
    assert ratio["comb"] < 0.85 < min(ratio["bead"], ratio["radial"])


@pytest.mark.parametrize("kwargs", [dict(joint_count=0), dict(inter_axial_distance=0.0), dict(root_tension=-1.0)])
def test_chain_invariants(kwargs):
    base = dict(joint_count=4, inter_axial_distance=0.006)
    base.update(kwargs)
    with pytest.raises(DomainError):
        ChainConfig(**base)
