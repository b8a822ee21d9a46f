#!/usr/bin/env python3
"""Smoke test for the bestarm_py extension module.

Builds nothing itself: expects `cargo build -p bestarm-py [--release]` to
have produced the cdylib, which this script locates under target/ and
imports directly. Run from anywhere:

    cargo build -p bestarm-py --release
    python3 python/smoke_test.py
"""
import importlib.util
import math
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        ROOT / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("libbestarm_py.so", "bestarm_py.so", "libbestarm_py.dylib")
    ]
    for path in candidates:
        if path.exists():
            spec = importlib.util.spec_from_file_location("bestarm_py", path)
            module = importlib.util.module_from_spec(spec)
            spec.loader.exec_module(module)
            return module
    sys.exit(
        "bestarm_py cdylib not found; run `cargo build -p bestarm-py --release` first"
    )


def approx(a, b, tol=1e-9):
    assert abs(a - b) <= tol * (1 + abs(b)), f"{a} != {b}"


def main():
    ab = load_module()

    # model construction and complexity constants
    easy = ab.Model.gaussian(0.5, 0.25, 0.0, 0.25)
    assert easy.family == "gaussian"
    assert easy.best_arm == 1
    approx(easy.gap, 0.5)
    report = ab.complexity_report(easy)
    approx(report["kappa_b"], 8.0)
    approx(report["kappa_c_lower"], 8.0)
    approx(report["optimal_alpha"], 0.5)
    assert report["theta_star"] is None

    bern = ab.Model.from_json('{"family":"bernoulli","mu":[0.6,0.4]}')
    report = ab.complexity_report(bern)
    assert report["c_lower_star"] < report["c_star"]
    assert report["theta_star"] is not None
    assert ab.optimal_budget_split(bern, 100) == 50

    # invalid models are rejected with ValueError
    try:
        ab.Model.bernoulli(0.5, 0.5)
    except ValueError:
        pass
    else:
        raise AssertionError("zero-gap model accepted")

    # exploration rates and the deviation bound
    approx(ab.beta("robbins", 0.5, 1), 2 * math.log(2))
    approx(ab.beta("fixed_log", 0.1, 123), math.log(10))
    approx(ab.lil_bound(10.0, 1.5), 0.0006830045981967698, tol=1e-12)
    approx(ab.kl_stopping_statistic(1.0, 0.0), math.log(2))

    # theoretical curve exp(-t / kappa_B)
    curve = dict(ab.theoretical_curve(easy, [8, 16]))
    approx(curve[8], math.exp(-1))
    approx(curve[16], math.exp(-2))

    # a small deterministic simulation
    strategy = '{"strategy":"uniform_elimination","rate":{"kind":"robbins","delta":0.1}}'
    a = ab.simulate(easy, strategy, 500, 42)
    b = ab.simulate(easy, strategy, 500, 42)
    assert a == b, "identical config+seed must reproduce exactly"
    assert a["replications"] == 500
    assert a["error_prob"] <= 0.1
    assert a["censored_frac"] == 0.0
    assert a["tau_p50"] <= a["tau_p90"] <= a["tau_p99"]
    assert a["mean_tau"] >= 2.0

    print("smoke test passed")


if __name__ == "__main__":
    main()
