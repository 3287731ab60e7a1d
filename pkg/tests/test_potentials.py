"""Tests for the built-in potential families and CSV round-trips."""

import numpy as np
import pytest

from akns.errors import DecayError
from akns.numerics import Grid
from akns.potentials import (
    GaussPair,
    GaussPhasePair,
    Sampled,
    SechChirp,
    read_potential_csv,
    sample_potential,
    write_potential_csv,
)


def test_sech_chirp_at_origin():
    q, r = SechChirp().evaluate(np.array([0.0]))
    assert q[0] == -1.65j
    assert r[0] == -np.conj(q[0])


def test_sech_chirp_matches_naive_formula():
    # overflow-safe sech/logcosh vs the direct expressions where those
    # are still representable
    x = np.linspace(-30.0, 30.0, 401)
    q, r = SechChirp(A=1.65, gamma=0.1).evaluate(x)
    naive = -1.65j / np.cosh(x) * np.exp(-0.1 * 1.65j * np.log(np.cosh(x)))
    assert np.abs(q - naive).max() < 1e-15
    assert np.abs(r + np.conj(q)).max() == 0.0


def test_sech_chirp_survives_huge_arguments():
    q, _ = SechChirp().evaluate(np.array([-750.0, 750.0]))
    assert np.all(np.isfinite(q))
    assert np.all(np.abs(q) < 1e-300)


def test_sech_chirp_modulus_is_even():
    x = np.linspace(0.25, 20.0, 80)
    qp, _ = SechChirp().evaluate(x)
    qm, _ = SechChirp().evaluate(-x)
    assert np.abs(np.abs(qp) - np.abs(qm)).max() < 1e-14


def test_sech_chirp_rejects_nonpositive_amplitude():
    with pytest.raises(ValueError):
        SechChirp(A=0.0)


def test_gauss_pair_spot_values():
    q, r = GaussPair().evaluate(np.array([0.0, np.pi]))
    assert q[0] == 1.0
    assert r[0] == -2.0
    assert abs(q[1] - np.exp(-np.pi**2)) < 1e-18
    assert abs(r[1] - 2.0 * np.exp(-np.pi**2)) < 1e-18


def test_gauss_phase_pair_spot_values():
    q, r = GaussPhasePair().evaluate(np.array([0.0, 0.5]))
    assert abs(q[0] - np.pi) < 1e-15
    assert abs(r[0] + np.pi * np.exp(-1j)) < 1e-15
    assert abs(q[1] - np.pi * np.exp(-0.25 + 1j)) < 1e-15


def test_decay_guard_rejects_short_interval():
    grid = Grid.build(-3.0, 3.0, 10)
    with pytest.raises(DecayError):
        sample_potential(GaussPair(), grid)


def test_decay_guard_accepts_wide_interval():
    grid = Grid.build(-7.0, 7.0, 10)
    pair = sample_potential(GaussPair(), grid)
    edge = np.abs(pair.q.values[[0, 1, -2, -1]]).max()
    assert edge <= 1e-14


def test_csv_roundtrip_is_exact(tmp_path):
    grid = Grid.build(-7.0, 7.0, 10)
    pair = sample_potential(GaussPhasePair(), grid)
    path = tmp_path / "pot.csv"
    write_potential_csv(pair, path)
    x, q, r = read_potential_csv(path)
    assert np.array_equal(x, grid.nodes)
    assert np.array_equal(q, pair.q.values)
    assert np.array_equal(r, pair.r.values)


def test_sampled_resamples_onto_grid(tmp_path):
    fine = Grid.build(-7.0, 7.0, 50)
    path = tmp_path / "pot.csv"
    write_potential_csv(sample_potential(GaussPair(), fine), path)

    coarse = Grid.build(-6.5, 6.5, 10)
    pair = sample_potential(Sampled(str(path)), coarse)
    q_true, r_true = GaussPair().evaluate(coarse.nodes)
    assert np.abs(pair.q.values - q_true).max() < 1e-6
    assert np.abs(pair.r.values - r_true).max() < 1e-6


def test_sampled_requires_coverage(tmp_path):
    fine = Grid.build(-7.0, 7.0, 50)
    path = tmp_path / "pot.csv"
    write_potential_csv(sample_potential(GaussPair(), fine), path)
    wide = Grid.build(-8.0, 8.0, 10)
    with pytest.raises(ValueError):
        sample_potential(Sampled(str(path)), wide)


def test_reader_rejects_unsorted_x(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text(
        "x,re_q,im_q,re_r,im_r\n0.0,1,0,1,0\n0.0,1,0,1,0\n"
    )
    with pytest.raises(ValueError):
        read_potential_csv(path)
