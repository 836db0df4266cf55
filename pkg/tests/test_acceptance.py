"""Acceptance gate: the eleven headline properties at their stated scales.

Each criterion is one test, so `pytest -v` prints one pass/fail line per
criterion.  Everything uses exact arithmetic except where a tolerance is
part of the criterion itself (spectra at 1e-9, frame-inequality slack).
"""

import json
import subprocess
import sys

import numpy as np

from lfwp import _mat
from lfwp._rand import random_stepfn, rng_from_seed
from lfwp.cyclotomic import CycNum
from lfwp.frames import (
    FramePacketSystem,
    char_sum_delta,
    check_factorization,
    e_matrix,
    frame_bounds,
    frame_energy_sums,
    frame_inequality_test,
    h_matrix,
    haar_frame_filter_set,
    p_matrix,
    random_frame_filter_set,
    standard_generators,
)
from lfwp.localfield import preset, u_index
from lfwp.packets import (
    FilterBank,
    PacketSystem,
    check_unitary,
    haar_filterbank,
    packet_fourier_product,
    split,
)
from lfwp.stepspace import (
    StepFn,
    char_on_D,
    character_gram,
    coset_rep,
    dilate_translate,
    fourier,
    gram,
    indicator,
    inner_product,
    inverse_fourier,
    reps_of_D_mod,
    translate,
)

CONFIGS = ("q2", "q3", "q4", "q5")
ALL = ("q2", "q3", "q4", "q5", "q9")


def assert_identity(G, p):
    one, zero = CycNum.one(p), CycNum.zero(p)
    for i, row in enumerate(G):
        for j, v in enumerate(row):
            assert v == (one if i == j else zero), (i, j, v.to_text())


def haar_system(params):
    return PacketSystem(haar_filterbank(params), indicator(params, 0))


def test_c01_character_completeness():
    # Gram of {chi_n}_{n<q^J} on D is exactly the identity, q^J <= 81
    counts = {"q2": 64, "q3": 81, "q4": 64, "q5": 25}
    for name in CONFIGS:
        params = preset(name)
        G = character_gram(params, counts[name])
        assert_identity(G, params.p)
        # independent route for a leading sub-block
        sub = gram([char_on_D(params, n) for n in range(params.q)])
        for i in range(params.q):
            for j in range(params.q):
                assert sub[i][j] == G[i][j]


def test_c02_plancherel():
    windows = {"q2": (1, 2), "q3": (1, 1), "q4": (1, 1), "q5": (1, 1)}
    for name in CONFIGS:
        params = preset(name)
        J, k = windows[name]
        rng = rng_from_seed(2202)
        for _ in range(1000):
            f = random_stepfn(rng, params, J, k)
            g = random_stepfn(rng, params, J, k)
            fh = fourier(f)
            assert inner_product(f, g) == inner_product(fh, fourier(g))
            assert inverse_fourier(fh) == f


def test_c03_u_identity():
    for name in CONFIGS:
        params = preset(name)
        q = params.q
        for r in range(q * q):
            ur = u_index(params, r)
            for k in (1, 2, 3):
                shifted = ur.shift(-k)
                for s in range(q**k):
                    assert u_index(params, r * q**k + s) == shifted + u_index(params, s)


def test_c04_splitting_lemma():
    for name in ALL:
        assert check_unitary(haar_filterbank(preset(name))) == (True, None)
    for name in CONFIGS:
        params = preset(name)
        q = params.q
        psi = split(indicator(params, 0), haar_filterbank(params))
        family = [translate(ps, k) if k else ps
                  for ps in psi for k in range(q * q)]
        assert_identity(gram(family), params.p)
    # fault injection: duplicated rows break unitarity and orthogonality
    for name in ("q2", "q3"):
        params = preset(name)
        bank = haar_filterbank(params)
        bad = FilterBank(params, 1, (bank.h[0],) * params.q)
        ok, xi = check_unitary(bad)
        assert not ok and xi is not None
        psi = split(indicator(params, 0), bad)
        G = gram([translate(ps, k) if k else ps
                  for ps in psi for k in range(params.q)])
        off = [v for i, row in enumerate(G) for j, v in enumerate(row)
               if i != j and not v.is_zero]
        assert off


def test_c05_packet_basis_of_window_space():
    for name in ("q2", "q3", "q4"):
        params = preset(name)
        q, p = params.q, params.p
        sysm = haar_system(params)
        phi = indicator(params, 0)
        one = CycNum.one(p)
        for j in (1, 2, 3):
            low = [sysm.packet(n) for n in range(q**j)]
            for wn in low:
                assert wn.window.J == 0 and wn.window.k <= j
            assert_identity(gram(low), p)
            # every q^{j/2} phi(t^{-j} x - u(m)) reconstructs exactly
            etas = [dilate_translate(phi, j, m) for m in range(q**j)]
            C = gram(etas, low)
            for m, row in enumerate(C):
                acc = CycNum.zero(p)
                for v in row:
                    acc = acc + v.abs_sq()
                # residual norm is 1 - this sum, so equality certifies
                # membership in the packet span
                assert acc == one
            for m in (0, 1, q**j - 1):
                recon = StepFn.zero(params)
                for n, v in enumerate(C[m]):
                    if not v.is_zero:
                        recon = recon + low[n].scale(v)
                assert recon == etas[m]
            # the next digit band is exactly orthogonal
            high = [sysm.packet(n) for n in range(q**j, q ** (j + 1))]
            for row in gram(low, high):
                for v in row:
                    assert v.is_zero


def test_c06_recursion_matches_product():
    for name in CONFIGS:
        params = preset(name)
        sysm = haar_system(params)
        for n in range(params.q ** 3):
            F = fourier(sysm.packet(n))
            win = F.window
            for m in range(params.q ** win.length):
                xi = coset_rep(params, win, m)
                assert F.values[m] == packet_fourier_product(sysm, n, xi)


def test_c07_walsh_identity():
    for name, bound in (("q2", 32), ("q3", 27)):
        params = preset(name)
        sysm = haar_system(params)
        for n in range(bound):
            assert sysm.packet(n) == char_on_D(params, n)


def test_c08_splitting_matrix():
    from fractions import Fraction

    for name in ALL:
        params = preset(name)
        for r in range(params.q):
            for s in range(params.q):
                assert char_sum_delta(params, r, s) == Fraction(int(r == s))
    for name in ("q2", "q3", "q4"):
        params = preset(name)
        for N in (1, 2, 3):
            for xi in reps_of_D_mod(params, 2):
                E = e_matrix(params, N, xi)
                assert _mat.is_identity(_mat.mat_mul(E, _mat.conj_transpose(E)))


def test_c09_polyphase_factorization():
    count = 0
    for name in ("q2", "q3"):
        params = preset(name)
        for N in (1, 2):
            for i in range(25):
                ffs = random_frame_filter_set(params, N, rng_from_seed(9000 + count))
                assert check_factorization(ffs) == (True, None)
                for xi in reps_of_D_mod(params, 2):
                    H = np.array(_mat.to_complex_matrix(h_matrix(ffs, xi)))
                    P = np.array(_mat.to_complex_matrix(
                        p_matrix(ffs, xi.shift(-1))))
                    eh = np.linalg.eigvalsh(H.conj().T @ H)
                    ep = np.linalg.eigvalsh(P.conj().T @ P)
                    assert np.allclose(eh, ep, atol=1e-9, rtol=0)
                count += 1
    assert count == 100


def test_c10_frame_inequality():
    total = 0
    for name, N in (("q2", 2), ("q3", 1)):
        params = preset(name)
        ffs = random_frame_filter_set(params, N, rng_from_seed(77))
        lam, big, _ = frame_bounds(ffs)
        assert 0 < lam <= big
        gens = standard_generators(params, N)
        for j in (1, 2):
            rep = frame_inequality_test(ffs, gens, j, trials=25, seed=100 + j)
            assert rep["violations"] == []
            assert rep["worst_ratio"] <= 1 + 1e-9
            total += rep["trials"]
    assert total == 100
    # unitary filters: lambda = Lambda = 1 and the sandwich is an equality
    for name in ("q2", "q3"):
        params = preset(name)
        ffs = haar_frame_filter_set(params, 1)
        lam, big, _ = frame_bounds(ffs)
        assert abs(lam - 1) < 1e-10 and abs(big - 1) < 1e-10
        sysm = FramePacketSystem(ffs, standard_generators(params, 1))
        rng = rng_from_seed(55)
        for j in (1, 2):
            for _ in range(3):
                g = random_stepfn(rng, params, 1, 1)
                A, mid = frame_energy_sums(sysm, g, j)
                assert A == mid


def test_c11_cli_contract(tmp_path):
    def run(*args):
        return subprocess.run([sys.executable, "-m", "lfwp.cli", *args],
                              capture_output=True, text=True)

    d1, d2 = tmp_path / "a", tmp_path / "b"
    r1 = run("--field", "q3", "--out", str(d1), "packets", "--n-max", "5")
    r2 = run("--field", "q3", "--out", str(d2), "packets", "--n-max", "5")
    assert r1.returncode == 0 and r2.returncode == 0
    assert r1.stdout == r2.stdout
    for name in json.loads(r1.stdout)["files"] + ["report.json"]:
        assert (d1 / name).read_bytes() == (d2 / name).read_bytes()

    ffs = haar_frame_filter_set(preset("q2"), 1)
    fpath = tmp_path / "ffs.json"
    fpath.write_text(json.dumps(ffs.to_json_dict()))
    b1 = run("frame-bounds", "--frame", str(fpath))
    b2 = run("frame-bounds", "--frame", str(fpath))
    assert b1.returncode == 0 and b1.stdout == b2.stdout

    bank = haar_filterbank(preset("q2"))
    bad = FilterBank(preset("q2"), 1, (bank.h[0],) * 2)
    bpath = tmp_path / "bad.json"
    bpath.write_text(json.dumps(bad.to_json_dict()))
    rbad = run("check", "--bank", str(bpath))
    assert rbad.returncode == 1
    witness = json.loads(rbad.stdout)["witness"]
    assert set(witness) == {"xi", "defect"}
    assert isinstance(witness["defect"], list)
