"""Acceptance suite: one test per criterion, one printed line per criterion.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the PASS/FLAG lines.
Criterion 4 is a set of soft qualitative checks: violations are flagged and
reported, not failed, because the uniform period and age threshold they
depend on are free parameters of the setup.
"""

import math
import time

import numpy as np
import pytest

from semcom.cli import main as cli_main
from semcom.engine import SimConfig, run
from semcom.oracle import oracle_summary
from semcom.rng import SplitMix64, derive_seed
from semcom.semantics import (
    kl_divergence,
    renyi_entropy,
    time_avg_mse,
    total_variation,
    weighted_entropy,
)

ALL_POLICIES = ("uniform", "age", "change", "e2e")
SOURCES = {"slow": (0.95, 0.9), "rapid": (0.8, 0.3)}
CHANNELS = (0.4, 0.9)
SLOTS = 1_000_000
SEED = 42

ABS_TOL = 0.005
REL_TOL = 0.01


def scenario(policy, p, q, ps, slots=SLOTS, seed=SEED):
    return SimConfig.two_state(p, q, ps, policy, slots=slots, seed=seed)


def _rel_dev(sim, exact):
    if exact != 0.0:
        return abs(sim - exact) / abs(exact)
    return 0.0 if sim == 0.0 else math.inf


def test_criterion_1_oracle_equivalence_16_scenarios():
    t0 = time.time()
    worst = {"recon": 0.0, "uninf": 0.0, "cost": 0.0, "tx": 0.0}
    for p, q in SOURCES.values():
        for ps in CHANNELS:
            for policy in ALL_POLICIES:
                config = scenario(policy, p, q, ps)
                sim = run(config)
                exact = oracle_summary(config)
                dr = abs(sim.recon_error - exact.recon_error)
                du = abs(sim.uninformative_frac - exact.uninformative_frac)
                dc = _rel_dev(sim.actuation_cost, exact.actuation_cost)
                dt = _rel_dev(sim.tx_rate, exact.tx_rate)
                assert dr <= ABS_TOL, (policy, p, q, ps, "recon_error", dr)
                assert du <= ABS_TOL, (policy, p, q, ps, "uninformative_frac", du)
                assert dc <= REL_TOL, (policy, p, q, ps, "actuation_cost", dc)
                assert dt <= REL_TOL, (policy, p, q, ps, "tx_rate", dt)
                worst["recon"] = max(worst["recon"], dr)
                worst["uninf"] = max(worst["uninf"], du)
                worst["cost"] = max(worst["cost"], dc)
                worst["tx"] = max(worst["tx"], dt)
    elapsed = time.time() - t0
    assert elapsed < 30.0, f"16-scenario comparison took {elapsed:.1f}s"
    print(
        f"[PASS] criterion 1: 16/16 scenarios within tolerance "
        f"(worst abs dev recon={worst['recon']:.4f}, uninf={worst['uninf']:.4f}; "
        f"worst rel dev cost={worst['cost']:.4f}, tx={worst['tx']:.4f}; {elapsed:.1f}s)"
    )


def test_criterion_2_e2e_zero_redundancy():
    checked = 0
    for p, q in SOURCES.values():
        for ps in CHANNELS + (0.0, 1.0):
            config = scenario("e2e", p, q, ps, slots=200_000)
            assert run(config).uninformative_frac == 0.0
            assert oracle_summary(config).uninformative_frac == 0.0
            checked += 1
    for seed in (1, 7, 123456789):
        config = scenario("e2e", 0.8, 0.3, 0.4, slots=100_000, seed=seed)
        assert run(config).uninformative_frac == 0.0
        checked += 1
    print(f"[PASS] criterion 2: uninformative_frac exactly 0 on {checked} E2E runs and oracles")


def test_criterion_3_change_aware_uninformative_bounds():
    bounds = {"slow": 0.10, "rapid": 0.05}
    report = []
    for label, (p, q) in SOURCES.items():
        config = scenario("change", p, q, 0.9)
        sim = run(config).uninformative_frac
        exact = oracle_summary(config).uninformative_frac
        assert sim < bounds[label], (label, sim)
        assert exact < bounds[label], (label, exact)
        report.append(f"{label}: sim={sim:.4f}, exact={exact:.4f} < {bounds[label]}")
    print(f"[PASS] criterion 3: change-aware uninformative fractions ({'; '.join(report)})")


def test_criterion_4_qualitative_orderings_soft():
    """Soft checks at the documented defaults (period=3, threshold=3).

    Evaluated on the exact oracle values; violations are printed as FLAG
    lines, not failures.  Note that with fresh-sample retransmissions the
    change-aware and end-to-end policies have identical reconstruction law
    on a two-state source, so (c) can at best be an exact tie.
    """
    ex = {
        (label, ps, policy): oracle_summary(scenario(policy, p, q, ps))
        for label, (p, q) in SOURCES.items()
        for ps in CHANNELS
        for policy in ALL_POLICIES
    }
    checks = [
        (
            "(a) slow, ps=0.4: age recon < change recon",
            ex[("slow", 0.4, "age")].recon_error < ex[("slow", 0.4, "change")].recon_error,
            f"age={ex[('slow', 0.4, 'age')].recon_error:.4f} vs change={ex[('slow', 0.4, 'change')].recon_error:.4f}",
        ),
        (
            "(b) slow, ps=0.4: change cost < uniform cost",
            ex[("slow", 0.4, "change")].actuation_cost < ex[("slow", 0.4, "uniform")].actuation_cost,
            f"change={ex[('slow', 0.4, 'change')].actuation_cost:.4f} vs uniform={ex[('slow', 0.4, 'uniform')].actuation_cost:.4f}",
        ),
        (
            "(c) slow, both channels: e2e recon < change recon",
            all(
                ex[("slow", ps, "e2e")].recon_error < ex[("slow", ps, "change")].recon_error
                for ps in CHANNELS
            ),
            "exact tie: e2e and change-aware share the reconstruction law",
        ),
        (
            "(d) rapid: e2e has the minimum actuation cost",
            all(
                ex[("rapid", ps, "e2e")].actuation_cost
                <= min(ex[("rapid", ps, pol)].actuation_cost for pol in ALL_POLICIES) + 1e-12
                for ps in CHANNELS
            ),
            f"e2e={ex[('rapid', 0.4, 'e2e')].actuation_cost:.4f} at ps=0.4",
        ),
    ]
    flags = 0
    for name, ok, detail in checks:
        if ok:
            print(f"[PASS] criterion 4 {name} ({detail})")
        else:
            flags += 1
            print(f"[FLAG] criterion 4 {name} violated at defaults ({detail})")
    print(f"[PASS] criterion 4: soft ordering checks evaluated, {flags} flagged")


def test_criterion_5_degenerate_cases():
    # perfect channel + e2e: zero error exactly
    assert run(scenario("e2e", 0.95, 0.9, 1.0, slots=200_000)).recon_error == 0.0

    # frozen source + perfect channel: zero error metrics for every policy
    for policy in ALL_POLICIES:
        summary = run(scenario(policy, 1.0, 1.0, 1.0, slots=50_000))
        assert summary.recon_error == 0.0
        assert summary.actuation_cost == 0.0

    # dead channel: the engine converges to the oracle's no-communication rate
    for label, (p, q) in SOURCES.items():
        for policy in ALL_POLICIES:
            config = scenario(policy, p, q, 0.0)
            sim = run(config)
            exact = oracle_summary(config)
            assert abs(sim.recon_error - exact.recon_error) <= ABS_TOL, (label, policy)
    # without prediction the estimate freezes at the start state, so the
    # rate is the stationary mass away from it
    assert oracle_summary(scenario("e2e", 0.95, 0.9, 0.0)).recon_error == pytest.approx(
        1 / 3, abs=1e-12
    )
    assert oracle_summary(scenario("uniform", 0.8, 0.3, 0.0)).recon_error == pytest.approx(
        2 / 9, abs=1e-12
    )
    print("[PASS] criterion 5: degenerate cases (ps=1, frozen source, ps=0) all hold")


def test_criterion_6_semantics_properties():
    rnd = np.random.default_rng(606)
    for _ in range(200):
        n = rnd.integers(2, 9)
        p = rnd.random(n) + 0.05
        p /= p.sum()
        p[-1] = 1.0 - p[:-1].sum()
        q = rnd.random(n) + 0.05
        q /= q.sum()
        q[-1] = 1.0 - q[:-1].sum()
        r = rnd.random(n) + 0.05
        r /= r.sum()
        r[-1] = 1.0 - r[:-1].sum()

        shannon = -(p * np.log2(p)).sum()
        assert abs(weighted_entropy(p, np.ones(n)) - shannon) < 1e-12
        assert abs(renyi_entropy(p, 1 + 1e-6) - shannon) < 1e-4
        assert abs(renyi_entropy(p, 1 - 1e-6) - shannon) < 1e-4
        kl = kl_divergence(p, q)
        assert kl >= 0.0
        assert kl_divergence(p, p) == 0.0
        if total_variation(p, q) > 1e-9:
            assert kl > 0.0
        assert total_variation(p, q) == pytest.approx(total_variation(q, p), abs=1e-15)
        assert total_variation(p, r) <= total_variation(p, q) + total_variation(q, r) + 1e-12

        x = rnd.integers(0, 2, size=64)
        xh = rnd.integers(0, 2, size=64)
        assert time_avg_mse(x, xh) == pytest.approx(np.mean(x != xh), abs=1e-15)
    print("[PASS] criterion 6: semantics library properties on 200 random draws")


def test_criterion_7_determinism(tmp_path, capsys):
    argv = ["run", "--policy", "age", "--p", "0.8", "--q", "0.3", "--ps", "0.9",
            "--slots", "100000", "--seed", "31415"]
    out_a = tmp_path / "a.csv"
    out_b = tmp_path / "b.csv"
    assert cli_main(argv + ["--out", str(out_a)]) == 0
    assert cli_main(argv + ["--out", str(out_b)]) == 0
    assert out_a.read_bytes() == out_b.read_bytes()

    # published SplitMix64 reference sequence for initial state 0
    rng = SplitMix64(0)
    assert [rng.next_uint64() for _ in range(3)] == [
        0xE220A8397B1DCDAF,
        0x6E789E6AA1B965F4,
        0x06C45D188009454F,
    ]
    assert derive_seed(0, 0) == 0xE220A8397B1DCDAF
    print("[PASS] criterion 7: byte-identical CSV and SplitMix64 test vectors")
