import math

import pytest

import dissectree as dt


def test_constants_of_triangulations():
    k = dt.p_angulation(3).constants()
    assert k["c"] == pytest.approx(2 * math.sqrt(2) / 3, abs=1e-12)
    assert k["c_geo"] == pytest.approx(1 / 3, abs=1e-12)


def test_distribution_from_dict_matches_builtin():
    mu = dt.distribution({"kind": "uniform_dissection"})
    assert mu.constants()["c"] == pytest.approx(dt.uniform_dissection().constants()["c"])
    assert mu.mean == pytest.approx(1.0, abs=1e-12)


def test_unknown_kind_is_rejected():
    with pytest.raises(Exception):
        dt.distribution({"kind": "no_such_law"})


def test_dissection_counts():
    assert [len(dt.enumerate_dissections(n)) for n in range(3, 9)] == [1, 3, 11, 45, 197, 903]
    assert dt.enumerate_dissections(6, "direct") == dt.enumerate_dissections(6)


def test_duality_round_trip():
    for t in dt.enumerate_no_unary_trees(5):
        assert dt.to_tree(dt.from_tree(t)) == t


def test_square_with_diagonal():
    d = dt.Dissection.from_chords(4, [(0, 2)])
    assert d.diameter() == 2
    assert d.radius() == 1
    assert sorted(d.face_degrees()) == [3, 3]


def test_sampled_dissection_is_reproducible_and_satisfies_distance_bound():
    mu = dt.uniform_dissection()
    a, tree, _ = dt.sample_dissection(mu, 60, seed=4, trial=1)
    b, _, _ = dt.sample_dissection(mu, 60, seed=4, trial=1)
    assert str(a) == str(b)
    assert a.n == 60
    assert dt.max_distance_slack(tree) <= 1


def test_sampler_cap():
    with pytest.raises(dt.SamplerCapExhausted):
        dt.sample_tree(dt.p_angulation(4), leaves=4, attempt_cap=1000)


def test_geod_step():
    assert dt.geod_step("L", 0, 2) == (0, "L")


def test_chain_stationary_law():
    pi = dt.stationary(dt.p_angulation(3))
    assert sum(pi) == pytest.approx(1.0)
    s, occ_d, occ_u = dt.simulate_chain(dt.p_angulation(3), 20000, seed=1)
    assert occ_d + occ_u == 20000
    assert s / 20000 == pytest.approx(1 / 3, abs=0.02)


def test_loop_of_single_cherry():
    cherry = dt.PlaneTree.parse("2 0 0")
    assert dt.loop_diameter(cherry) == 1
    assert dt.loopbar_diameter(cherry) == 1


def test_crt_moments():
    assert dt.diam_moment(1.0) == pytest.approx(2 * math.sqrt(2 * math.pi) / 3, abs=1e-9)
    assert dt.radius_moment(1.0) == pytest.approx(math.sqrt(math.pi / 2), abs=1e-12)
    assert dt.height_u_moment(2.0) == pytest.approx(0.5, abs=1e-14)
    assert dt.predict(dt.p_angulation(3), "distance_slack") is None


def test_experiment():
    rows, report, samples = dt.run_experiment({
        "distribution": {"kind": "uniform_dissection"},
        "sizes": [20, 40],
        "samples": 10,
        "statistics": ["diameter", "radius"],
        "seed": 3,
        "threads": 2,
    })
    assert len(rows) == 4
    assert len(samples) == 40
    assert all(float(r["ratio"]) > 0 for r in rows)
    assert report["rows"]
