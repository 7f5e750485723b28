"""End-to-end smoke of the python module: every operation family gets one touch."""

import math

import pytest

import bubbletile as bt


def test_presets_and_saturation():
    presets = bt.design_presets()
    assert [d.name for d in presets] == [
        "d10-vf40", "d11-vf40", "d12-vf40",
        "d10-vf60", "d11-vf60", "d12-vf60",
    ]
    ref = bt.design_preset("d11-vf60")
    model = bt.reference_model()
    assert bt.saturation_force(ref, model) == pytest.approx(30.0, abs=1e-9)
    # Saturation compresses the bubble by the fixed transducer-span fraction.
    v1 = bt.initial_volume_mm3(ref)
    vsat = bt.saturation_volume_mm3(ref)
    assert (v1 - vsat) / v1 * 100.0 == pytest.approx(13.043478, abs=1e-5)
    with pytest.raises(bt.Error):
        bt.design_preset("d13-vf80")


def test_adc_round_trip():
    ref = bt.design_preset("d11-vf60")
    assert bt.quantize(82.5, ref) == 512
    assert bt.dequantize(1023, ref) == pytest.approx(115.0)


def test_curve_inversion():
    curve = bt.paper_reference_curve()
    for q in (0.1, 0.37, 0.5, 0.9):
        assert bt.invert(curve, bt.evaluate(curve, q)) == pytest.approx(q, abs=1e-8)
    assert bt.force_from_normalized(curve, 1.0) == pytest.approx(30.0, abs=1e-9)


def test_calibration_pipeline():
    ref = bt.design_preset("d11-vf60")
    model = bt.reference_model()
    runs = [
        bt.simulate_indentation(ref, model, 0.05, 0.0, bt.derive_seed(7, i))
        for i in range(2)
    ]
    agg = bt.aggregate_runs(runs)
    assert agg.n_runs == 2
    fitted = bt.fit_cubic(
        [bt.CalibrationPoint(p, f) for p, f in zip(agg.mean_pressure, agg.force_grid)]
    )
    assert fitted.r_squared > 0.999999
    truth = bt.paper_reference_curve()
    assert fitted.c1 * fitted.scale == pytest.approx(truth.c1 * truth.scale, rel=1e-4)


def test_kinematics():
    layout = bt.default_layout(bt.design_preset("d11-vf60"))
    p = bt.contact_point(0.0, layout)
    assert p.y_mm == pytest.approx(-layout.dome_radius_mm)
    assert p.z_mm == pytest.approx(-layout.segment_radius_mm)
    markers = bt.MarkerPair()
    markers.m1.y_mm, markers.m1.z_mm = 10.0, -120.0
    markers.m2.y_mm, markers.m2.z_mm = 10.0, -20.0
    assert bt.segment_angle(markers) == pytest.approx(0.0)


def test_cop_embedding():
    mapping = bt.GridMapping()
    frame = bt.embed_tiles([0.0, 0.8, 0.0, 0.0], [0.0, 38.1, 0.0, 0.0], mapping, 0.5)
    est = bt.cop(frame)
    assert est is not None
    assert est.x_cop == pytest.approx(2.0)
    assert est.pos_y_mm == pytest.approx(38.1)
    idle = bt.GridFrame()
    idle.rows, idle.cols = mapping.rows, mapping.cols
    idle.values = [0.0] * (mapping.rows * mapping.cols)
    assert bt.cop(idle) is None


def test_grf_from_samples():
    ref = bt.design_preset("d11-vf60")
    model = bt.reference_model()
    curve = bt.paper_reference_curve()
    samples = [bt.sample(f, ref, model, 0.0, 0) for f in (6.0, 0.0, 0.0, 0.0)]
    trace = bt.grf(samples, 4, curve, ref)
    assert len(trace.points) == 1
    assert trace.points[0].total_force_n == pytest.approx(6.0, abs=0.1)


def test_roll_scenario():
    scenario = bt.RollScenario()
    scenario.seed = 1
    result = bt.simulate_roll(scenario)
    assert len(result.plate_frames) == len(result.truth) == len(result.markers)
    assert len(result.tile_samples) == 4 * len(result.plate_frames)
    closure = max(
        abs(sum(t.tile_force_n) + t.guard_force_n - t.total_force_n)
        for t in result.truth
    )
    assert closure < 1e-9


def test_hop_scenario():
    scenario = bt.HopScenario()
    scenario.seed = 1
    result = bt.simulate_hop(scenario)
    t = [f.timestamp_s for f in result.truth]
    f = [f.total_force_n for f in result.truth]
    assert bt.count_contact_episodes(t, f, 1.0, 0.03) == scenario.n_hops
    assert bt.validate_schedule(scenario.bus, 4) is None
    with pytest.raises(bt.Error):
        fast = bt.BusSchedule()
        fast.aggregate_rate_hz = 700.0
        fast.parallel_conversion = False
        bt.validate_schedule(fast, 4)
