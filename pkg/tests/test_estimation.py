import warnings

import numpy as np
import pytest
import scipy.linalg

from ccpt import estimation as e
from ccpt import transform as t
from ccpt.numtheory import totient
from ccpt.signalgen import gen_tiled_ccps, gen_y2


def test_range_scan_validates_start():
    with pytest.raises(ValueError):
        e.range_scan(np.ones(10), 2)
    with pytest.raises(ValueError):
        e.range_scan(np.ones(10), 11)


def test_range_scan_shape_and_divisors():
    x = gen_y2(0)
    res = e.range_scan(x, 90)
    assert len(res.records) == 11
    for rec in res.records:
        assert all(rec.length % p == 0 for p in rec.profile.periods)
        assert all(p in rec.profile.periods for p in rec.detected)


def test_range_scan_tiled_input_dominates_at_multiples():
    x = gen_tiled_ccps(5, 1, 100)
    res = e.range_scan(x, 70)
    for rec in res.records:
        if rec.length % 5 == 0:
            d = rec.profile.as_dict()
            assert max(d, key=d.get) == 5


def test_range_scan_degenerate_equals_full_length_profile():
    x = gen_y2(4)
    res = e.range_scan(x, 100)
    assert len(res.records) == 1
    m = t.build_ccpt_matrix(100)
    full = t.divisor_strengths(m.forward(x), m)
    assert np.allclose(res.records[0].profile.strengths, full.strengths, rtol=1e-12)
    assert res.records[0].detected == full.significant()


def test_range_scan_reports_subspace_overlap():
    res = e.range_scan(gen_y2(0), 95)
    # p=1 is a divisor of every length, so it is recomputed at every step
    assert res.subspace_visits[1] == 6
    assert res.duplicated_projections >= 5
    assert res.subspace_visits[100] == 1


def test_range_scan_jobs_match_serial():
    x = gen_y2(1)
    serial = e.range_scan(x, 88)
    threaded = e.range_scan(x, 88, jobs=4)
    for a, b in zip(serial.records, threaded.records):
        assert a.length == b.length
        assert np.allclose(a.profile.strengths, b.profile.strengths)


def test_default_p_max():
    assert e.default_p_max(100) == 80
    assert e.default_p_max(10) == 8
    assert e.default_p_max(2) == 1


def test_build_dictionary_examples():
    model = e.build_dictionary(100, 80)
    assert model.n_hat == 1966
    assert model.matrix.shape == (100, 1966)

    small = e.build_dictionary(5, 5)
    assert np.allclose(small.matrix[:, 0], 1.0)
    widths = [small.spans[p].stop - small.spans[p].start for p in range(1, 6)]
    assert widths == [1, 1, 2, 2, 4]

    assert np.all(model.penalties[model.spans[7]] == 49.0)
    assert np.all(model.column_periods[model.spans[7]] == 7)


def test_build_dictionary_columns_truncate():
    model = e.build_dictionary(10, 7)
    span = model.spans[7]
    col = model.matrix[:, span.start]
    from ccpt.ccps import ccps

    assert np.allclose(col, ccps(7, 1).tiled(10), atol=1e-12)


def test_build_dictionary_warns_when_underdetermined():
    with pytest.warns(UserWarning):
        e.build_dictionary(100, 10)


def test_build_dictionary_rejects_bad_args():
    with pytest.raises(ValueError):
        e.build_dictionary(10, 0)
    with pytest.raises(ValueError):
        e.build_dictionary(10, 8, basis="wavelet")


def test_dictionary_solve_zero_signal():
    model = e.build_dictionary(20, 12)
    sol = e.dictionary_solve(model, np.zeros(20))
    assert np.abs(sol.coefficients).max() == 0.0
    assert sol.residual == 0.0
    prof = e.dictionary_strength_profile(sol, model)
    assert prof.strengths.sum() == 0.0
    assert prof.significant() == ()


def test_dictionary_solve_length_mismatch():
    model = e.build_dictionary(20, 12)
    with pytest.raises(ValueError):
        e.dictionary_solve(model, np.zeros(19))


def test_dictionary_recovers_tiled_sequence():
    x = gen_tiled_ccps(5, 1, 20)
    model = e.build_dictionary(20, 10)
    sol = e.dictionary_solve(model, x)
    prof = e.dictionary_strength_profile(sol, model)
    assert sol.residual < 1e-8
    assert prof.as_dict()[5] / prof.total > 0.9


def test_penalty_biases_toward_small_periods():
    # strength at an exactly-representable period beats any single multiple
    x = gen_tiled_ccps(5, 1, 20)
    model = e.build_dictionary(20, 10)
    prof = e.dictionary_strength_profile(e.dictionary_solve(model, x), model)
    d = prof.as_dict()
    assert d[5] > d[10]

    x7 = gen_tiled_ccps(7, 1, 21)
    model7 = e.build_dictionary(21, 14)
    prof7 = e.dictionary_strength_profile(e.dictionary_solve(model7, x7), model7)
    d7 = prof7.as_dict()
    assert d7[7] > d7[14]
    assert max(d7, key=d7.get) == 7


def test_staged_solve_matches_literal_expression():
    rng = np.random.default_rng(11)
    for _ in range(5):
        n = int(rng.integers(10, 41))
        p_max = n - 1
        model = e.build_dictionary(n, p_max)
        while model.n_hat < n:
            p_max += 2
            model = e.build_dictionary(n, p_max)
        x = rng.standard_normal(n)
        sol = e.dictionary_solve(model, x)
        a, pen = model.matrix, model.penalties
        dinv2 = np.diag(pen**-2.0)
        literal = dinv2 @ a.T @ np.linalg.inv(a @ dinv2 @ a.T) @ x
        assert np.abs(sol.coefficients - literal).max() < 1e-8
        assert np.linalg.norm(a @ sol.coefficients - x) / np.linalg.norm(x) < 1e-8


def test_solution_is_penalty_norm_optimal():
    rng = np.random.default_rng(3)
    model = e.build_dictionary(24, 14)
    x = rng.standard_normal(24)
    sol = e.dictionary_solve(model, x)
    base = np.linalg.norm(model.penalties * sol.coefficients)
    nullspace = scipy.linalg.null_space(model.matrix)
    assert nullspace.shape[1] > 0
    for _ in range(20):
        z = nullspace @ rng.standard_normal(nullspace.shape[1])
        feasible = sol.coefficients + z
        assert np.linalg.norm(model.matrix @ feasible - x) < 1e-8 * max(1, np.linalg.norm(x))
        assert base <= np.linalg.norm(model.penalties * feasible) + 1e-8


def test_complex_signal_solved_per_part():
    rng = np.random.default_rng(8)
    model = e.build_dictionary(30, 20)
    x = rng.standard_normal(30) + 1j * rng.standard_normal(30)
    sol = e.dictionary_solve(model, x)
    assert sol.residual < 1e-8
    re = e.dictionary_solve(model, x.real).coefficients
    im = e.dictionary_solve(model, x.imag).coefficients
    assert np.abs(sol.coefficients - (re + 1j * im)).max() < 1e-10


def test_other_bases_recover_hidden_periods():
    y2 = gen_y2(0)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        for basis in ("farey", "rpt"):
            model = e.build_dictionary(100, 80, basis=basis)
            sol = e.dictionary_solve(model, y2)
            prof = e.dictionary_strength_profile(sol, model)
            assert sol.residual < 1e-8
            assert set(prof.significant(0.05)) == {1, 5, 7}, basis


def test_farey_blocks_are_exact_period_exponentials():
    model = e.build_dictionary(12, 6, basis="farey")
    for p in range(1, 7):
        span = model.spans[p]
        assert span.stop - span.start == totient(p)
    col = model.matrix[:, model.spans[4].start]
    assert np.allclose(col, np.exp(2j * np.pi * np.arange(12) / 4))


def test_custom_penalty_function():
    x = gen_tiled_ccps(5, 1, 20)
    flat = e.build_dictionary(20, 10, penalty=lambda p: 1.0)
    assert np.all(flat.penalties == 1.0)
    sol = e.dictionary_solve(flat, x)
    assert sol.residual < 1e-8
