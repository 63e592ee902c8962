import io
import random
from dataclasses import replace

import pytest
from hypothesis import given, strategies as st

from jamstring.errors import DomainError, GridTooLargeError
from jamstring.explorer import (
    DesignRecord,
    Requirement,
    SweepSpec,
    pareto_front,
    read_sweep_csv,
    recommend,
    run_sweep,
    write_sweep_csv,
)
from jamstring.tension import ChainConfig, tip_torque_profile

TORQUE_WIDTH = [("tip_torque_Nm", "max"), ("width_m", "min")]


def brute_front(records, objectives):
    feas = [r for r in records if r.feasible]
    sign = [1 if d == "max" else -1 for _, d in objectives]

    def vec(r):
        return [s * r.value(n) for s, (n, _) in zip(sign, objectives)]

    def dominates(a, b):
        va, vb = vec(a), vec(b)
        return all(x >= y for x, y in zip(va, vb)) and any(x > y for x, y in zip(va, vb))

    return [r for r in feas if not any(dominates(o, r) for o in feas if o is not r)]


def random_records(n, seed, n_obj_values=None):
    rng = random.Random(seed)
    pick = (lambda: rng.randint(0, n_obj_values)) if n_obj_values else rng.random
    return [
        DesignRecord("radial", {"radius": float(i)}, True, tip_torque_Nm=pick(), width_m=pick(), part_weight_proxy=pick())
        for i in range(n)
    ]


def test_one_point_grid(trio):
    chain = ChainConfig(4, 0.0091)
    recs = run_sweep(SweepSpec(trio["radial"], chain))
    prof = tip_torque_profile(trio["radial"], chain)
    assert len(recs) == 1
    assert recs[0].tip_torque_Nm == prof.tip_torque
    assert recs[0].root_torque_Nm == prof.torques[0]


def test_bead_radius_doubling(trio):
    spec = SweepSpec(trio["bead"], ChainConfig(4, 0.006), {"radius": (0.005, 0.010, 2)})
    small, large = run_sweep(spec)
    assert large.tip_torque_Nm == pytest.approx(2 * small.tip_torque_Nm, rel=1e-14)


def test_radial_layer_ratio(trio):
    spec = SweepSpec(trio["radial"], ChainConfig(4, 0.0091), {"count": (1, 3, 2)})
    one, three = run_sweep(spec)
    assert three.tip_torque_Nm / one.tip_torque_Nm == pytest.approx(0.01665 / 0.0075, rel=1e-12)
    assert three.tip_torque_Nm / one.tip_torque_Nm == pytest.approx(2.22, abs=1e-2)


def test_infeasible_points_kept(trio):
    spec = SweepSpec(trio["radial"], ChainConfig(4, 0.0091), {"count": (1, 5, 5)})
    recs = run_sweep(spec)
    assert len(recs) == 5
    # pitch 1.95 mm: four layers leave 1.65 mm, a fifth would go negative
    assert [r.feasible for r in recs] == [True, True, True, True, False]
    assert "innermost" in recs[-1].reason


def test_grid_order_is_lexicographic(trio):
    spec = SweepSpec(trio["comb"], ChainConfig(3, 0.03), {"mu": (0.1, 0.3, 3), "count": (1, 3, 3)})
    recs = run_sweep(spec)
    assert [(r.params["count"], r.params["mu"]) for r in recs][:4] == [(1, 0.1), (1, 0.2), (1, 0.3), (2, 0.1)]


def test_parallel_matches_serial(trio):
    spec = SweepSpec(trio["radial"], ChainConfig(5, 0.0091), {"count": (1, 4, 4), "mu": (0.1, 0.5, 5), "k": (0.9, 1.0, 3)})
    assert run_sweep(spec, workers=3) == run_sweep(spec)


def test_grid_cap(trio):
    spec = SweepSpec(trio["bead"], ChainConfig(4, 0.006), {"radius": (0.001, 0.01, 100), "mu": (0.1, 1, 100)}, cap=1000)
    with pytest.raises(GridTooLargeError, match="10000"):
        run_sweep(spec)


def test_bad_sweep_parameter(trio):
    with pytest.raises(DomainError):
        SweepSpec(trio["bead"], ChainConfig(4, 0.006), {"count": (1, 3, 3)})


def test_fractional_count(trio):
    spec = SweepSpec(trio["comb"], ChainConfig(4, 0.03), {"count": (1, 2, 3)})
    with pytest.raises(DomainError):
        run_sweep(spec)


def test_sweep_csv_deterministic(trio):
    spec = SweepSpec(trio["radial"], ChainConfig(5, 0.0091), {"count": (1, 4, 4), "radius": (0.005, 0.008, 4)})
    outs = []
    for _ in range(2):
        buf = io.StringIO()
        write_sweep_csv(buf, run_sweep(spec))
        outs.append(buf.getvalue())
    assert outs[0] == outs[1]
    assert read_sweep_csv(io.StringIO(outs[0])) == run_sweep(spec)


def test_scaling_covariance(trio):
    base = SweepSpec(trio["radial"], ChainConfig(6, 0.0091, root_tension=25.0), {"count": (1, 3, 3), "radius": (0.006, 0.009, 4)})
    scaled = replace(base, chain=replace(base.chain, root_tension=50.0))
    a, b = run_sweep(base), run_sweep(scaled)
    for ra, rb in zip(a, b):
        assert rb.tip_torque_Nm == 2 * ra.tip_torque_Nm
        assert rb.root_torque_Nm == 2 * ra.root_torque_Nm
    front_a = [r.params for r in pareto_front(a, TORQUE_WIDTH)]
    front_b = [r.params for r in pareto_front(b, TORQUE_WIDTH)]
    assert front_a == front_b


def test_pareto_single():
    r = random_records(1, 0)
    assert pareto_front(r, TORQUE_WIDTH) == r


def test_pareto_dominated_pair():
    good = DesignRecord("bead", {"radius": 1.0}, True, tip_torque_Nm=1.0, width_m=0.01)
    bad = DesignRecord("bead", {"radius": 2.0}, True, tip_torque_Nm=0.5, width_m=0.02)
    assert pareto_front([bad, good], TORQUE_WIDTH) == [good]


def test_pareto_random_200():
    recs = random_records(200, seed=7)
    assert pareto_front(recs, TORQUE_WIDTH) == brute_front(recs, TORQUE_WIDTH)


@given(
    n=st.integers(1, 500),
    seed=st.integers(0, 2**32 - 1),
    levels=st.sampled_from([None, 3, 20]),
    objectives=st.sampled_from(
        [
            TORQUE_WIDTH,
            [("tip_torque_Nm", "max")],
            [("tip_torque_Nm", "max"), ("width_m", "min"), ("part_weight_proxy", "min")],
            [("width_m", "max"), ("part_weight_proxy", "max")],
        ]
    ),
)
def test_pareto_matches_brute_force(n, seed, levels, objectives):
    recs = random_records(n, seed, levels)
    assert pareto_front(recs, objectives) == brute_front(recs, objectives)


def test_pareto_skips_infeasible():
    recs = random_records(5, 1) + [DesignRecord("radial", {"radius": 9.0}, False, "bad")]
    assert all(r.feasible for r in pareto_front(recs, TORQUE_WIDTH))


def test_pareto_unknown_field():
    with pytest.raises(KeyError):
        pareto_front(random_records(3, 0), [("nope", "max")])


def presets_of(presets):
    return {f: (c.mechanism, c.inter_axial_distance) for f, c in presets.items()}


def test_recommend_four_joints(presets):
    rec = recommend(Requirement(0.1, 0.02, 4, 50.0), presets_of(presets))
    assert [c.family for c in rec.ranked] == ["radial", "comb", "bead"]
    assert rec.infeasible == {}


def test_recommend_impossible(presets):
    rec = recommend(Requirement(10.0, 0.02, 4, 50.0), presets_of(presets))
    assert rec.ranked == []
    assert set(rec.infeasible) == {"bead", "comb", "radial"}
    assert all(any("min_tip_torque" in b for b in v) for v in rec.infeasible.values())


def test_recommend_width_binding(presets):
    rec = recommend(Requirement(0.01, 0.013, 4, 50.0), presets_of(presets))
    assert [c.family for c in rec.ranked] == ["comb", "bead"]
    assert rec.infeasible["radial"][0].startswith("max_width")


def test_recommend_long_chain_demotes_comb(presets):
    comb_tip = 0.20 * 0.94**26
    bead_tip = 0.13 * 0.985**26
    assert comb_tip == pytest.approx(0.040, abs=5e-4)
    assert bead_tip == pytest.approx(0.088, abs=5e-4)
    rec = recommend(Requirement(0.01, 0.02, 30, 50.0), presets_of(presets))
    order = [c.family for c in rec.ranked]
    assert order.index("bead") < order.index("comb")
    tips = {c.family: c.profile.tip_torque for c in rec.ranked}
    assert tips["comb"] == pytest.approx(comb_tip, rel=1e-9)
    assert tips["bead"] == pytest.approx(bead_tip, rel=1e-9)


@given(
    tip=st.floats(0.001, 0.6),
    width=st.floats(0.005, 0.03),
    joints=st.integers(1, 60),
    tension=st.floats(1.0, 200.0),
)
def test_recommend_never_violates(presets, tip, width, joints, tension):
    req = Requirement(tip, width, joints, tension)
    rec = recommend(req, presets_of(presets))
    for c in rec.ranked:
        prof = tip_torque_profile(c.mechanism, ChainConfig(joints, 0.01, root_tension=tension))
        assert prof.tip_torque >= tip
        assert c.mechanism.params.width <= width
    assert len(rec.ranked) + len(rec.infeasible) == 3
