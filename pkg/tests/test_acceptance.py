"""Acceptance criteria, one test per criterion.

Each criterion records a ``PASS``/``FAIL`` line that is printed in the
terminal summary (see ``conftest.py``); running this file directly prints
the same lines.
"""

import os
import time

import numpy as np
import pytest

from spinqsde import algebra
from spinqsde.cli import main
from spinqsde.ito import ccr_residual_parts, oracle_equivalence
from spinqsde.model import (PhysicalParams, master_mean_oracle, realize,
                            simulate_mean, trajectory_arrays)
from spinqsde.pauli import lindblad_coefficient_check
from spinqsde.realizability import (check_ccr_preservation, check_physical_realizability,
                                    extract_parameters, random_params, theorem3_harness)

RESULTS = {}
FIX = os.path.join(os.path.dirname(__file__), "fixtures")


def record(n, ok, detail):
    RESULTS[n] = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    return ok


def criterion_1():
    t = time.perf_counter()
    res = algebra.selftest_identities(seed=1, trials=500)
    bad = algebra.contraction_check()
    dt = time.perf_counter() - t
    worst = max(res.values())
    ok = worst < 1e-11 and bad == 0 and dt < 5
    return record(1, ok, f"identities max residual {worst:.2e} over 500 trials, "
                         f"{bad} contraction failures, {dt:.2f} s")


def criterion_2():
    rng = np.random.default_rng(2)
    t = time.perf_counter()
    worst = 0.0
    for _ in range(200):
        p = random_params(rng)
        worst = max(worst, max(lindblad_coefficient_check(p.alpha, p.lam).values()))
    dt = time.perf_counter() - t
    return record(2, worst < 1e-12 and dt < 5,
                  f"Pauli bridge max residual {worst:.2e} over 200 pairs, {dt:.2f} s")


def criterion_3():
    rng = np.random.default_rng(3)
    worst, verdicts = 0.0, 0
    for _ in range(500):
        p = random_params(rng)
        q = realize(p)
        e = extract_parameters(q)
        worst = max(worst, np.max(np.abs(e.alpha - p.alpha)), np.max(np.abs(e.lam - p.lam)))
        verdicts += check_physical_realizability(q).verdict
    return record(3, worst <= 1e-10 and verdicts == 500,
                  f"round trip max error {worst:.2e}, verdict true on {verdicts}/500")


def criterion_4():
    h = theorem3_harness(seed=4, trials=500)
    rng = np.random.default_rng(40)
    gap = 0.0
    for _ in range(500):
        for q in (realize(random_params(rng)),
                  realize(random_params(rng)).replace(F=rng.standard_normal((3, 3)))):
            gap = max(gap, abs(check_physical_realizability(q).residuals["T1-iv"]
                               - check_ccr_preservation(q).residuals["drift-balance"]))
    ok = h.ok and gap <= 1e-14
    return record(4, ok, f"{len(h.failures)} counterexamples over {h.trials} trials, "
                         f"max |T1-iv - drift-balance| {gap:.1e}")


def criterion_5():
    t = time.perf_counter()
    r = oracle_equivalence(seed=5, trials=200)
    dt = time.perf_counter() - t
    ok = (r.ok and r.realizable_checked >= 200 and r.arbitrary_checked >= 200 and dt < 30)
    return record(5, ok, f"{len(r.disagreements)} disagreements, "
                         f"{len(r.realizable_failures)} realizable failures over "
                         f"{r.realizable_checked}+{r.arbitrary_checked} systems, {dt:.1f} s")


def criterion_6():
    rng = np.random.default_rng(6)
    dev = 0.0
    for _ in range(20):
        p = random_params(rng)
        r0 = rng.standard_normal(3)
        r0 *= rng.uniform(0, 1) / np.linalg.norm(r0)
        _, a = trajectory_arrays(simulate_mean(realize(p), r0, 1.0, 1e-3))
        _, b = trajectory_arrays(master_mean_oracle(p, r0, 1.0, 1e-3))
        dev = max(dev, float(np.max(np.abs(a - b))))
    deph = realize(PhysicalParams([0, 0, 0], [0, 0, 1j]))
    end = simulate_mean(deph, [1, 0, 0], 1.0, 1e-3)[-1].r
    end_err = float(np.max(np.abs(end - [np.exp(-2), 0, 0])))
    closed = realize(PhysicalParams([0.7, -1.1, 0.4], [0, 0, 0]))
    _, r = trajectory_arrays(simulate_mean(closed, [0.6, 0, 0.8], 1.0, 1e-3))
    drift = float(np.max(np.abs(np.linalg.norm(r, axis=1) - 1)))
    ok = dev <= 1e-6 and end_err <= 1e-6 and drift <= 1e-6
    return record(6, ok, f"max deviation {dev:.1e} over 20 systems, dephasing endpoint "
                         f"error {end_err:.1e}, closed-system norm drift {drift:.1e}")


def _injections():
    q = realize(PhysicalParams([0.3, -0.5, 0.8], [0.4 + 0.2j, -0.3j, 0.6]))
    S = np.array([[1.0, 0.5, 0.0], [0.5, 0.0, 0.2], [0.0, 0.2, -1.0]])
    # name: (system, realizability condition, commutation condition, oracle part)
    return {
        "G1 symmetric part": (q.replace(G1=q.G1 + 0.1 * S), "T1-ii", "antisym-G1", "dW1"),
        "F0 shifted": (q.replace(F0=q.F0 + [0.1, 0, 0]), "T1-i", "F0-coupling",
                       "dt-identity"),
        "F+F^T broken": (q.replace(F=q.F + 0.1 * S), "T1-iv", "drift-balance", "dt-linear"),
        "H mismatched": (q.replace(H1=q.H1 + [0.1, 0, 0]), "T1-iii", None, None),
    }


def _caught(q, t1, t2, part, tol=1e-9):
    pr = check_physical_realizability(q, tol)
    ccr = check_ccr_preservation(q, tol)
    parts = ccr_residual_parts(q)
    by_t2 = t2 in ccr.failing
    by_oracle = part is not None and parts[part] > tol
    return t1 in pr.failing, by_t2, by_oracle


def criterion_7():
    missed = []
    for name, (q, t1, t2, part) in _injections().items():
        a, b, c = _caught(q, t1, t2, part)
        if not (a and b and c):
            missed.append(name)
    detail = "all injections caught" if not missed else (
        "not caught by both the commutation checker and the Ito oracle: "
        + ", ".join(missed) + " (H does not enter dx, so no commutation condition can see it)")
    return record(7, not missed, detail)


def _cli(*argv):
    import contextlib
    import io
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code


def criterion_8(tmp):
    expected = {
        "realizable_decay_params.json": 0, "realizable_dephasing_qsde.json": 0,
        "nonrealizable_g1_identity.json": 1, "nonrealizable_f0_shift.json": 1,
        "malformed_F_2x2.json": 2, "malformed_both_sections.json": 2,
        "malformed_truncated.json": 2,
    }
    wrong = [n for n, c in expected.items() if _cli("check", os.path.join(FIX, n)) != c]
    stable = []
    for name in ("params_mixed.json", "realizable_decay_params.json"):
        src = os.path.join(FIX, name)
        q, p = os.path.join(tmp, "q.json"), os.path.join(tmp, "p.json")
        codes = (_cli("realize", src, "--out", q), _cli("check", q),
                 _cli("extract", q, "--out", p))
        with open(src, "rb") as a, open(p, "rb") as b:
            stable.append(codes == (0, 0, 0) and a.read() == b.read())
    ok = not wrong and all(stable)
    return record(8, ok, f"{len(expected) - len(wrong)}/{len(expected)} fixtures give the "
                         f"expected exit code, {sum(stable)}/{len(stable)} pipelines byte-stable")


def test_criterion_1_identities():
    assert criterion_1(), RESULTS[1]


def test_criterion_2_pauli_bridge():
    assert criterion_2(), RESULTS[2]


def test_criterion_3_round_trip():
    assert criterion_3(), RESULTS[3]


def test_criterion_4_realizable_preserves_ccr():
    assert criterion_4(), RESULTS[4]


def test_criterion_5_oracle_equivalence():
    assert criterion_5(), RESULTS[5]


def test_criterion_6_dynamics():
    assert criterion_6(), RESULTS[6]


@pytest.mark.xfail(strict=True, reason=(
    "an H-only mismatch is invisible to the commutation conditions and the Ito oracle; "
    "it is caught only by the realizability conditions T1-i, T1-ii, T1-iii"))
def test_criterion_7_negative_detection():
    assert criterion_7(), RESULTS[7]


@pytest.mark.parametrize("name", list(_injections()))
def test_injection_detection_detail(name):
    q, t1, t2, part = _injections()[name]
    by_t1, by_t2, by_oracle = _caught(q, t1, t2, part)
    assert by_t1
    if t2 is None:
        # commutation checker and oracle both see a valid system
        assert check_ccr_preservation(q).verdict
        assert max(ccr_residual_parts(q).values()) < 1e-12
        assert check_physical_realizability(q).failing == ["T1-i", "T1-iii"]
    else:
        assert by_t2 and by_oracle


def test_criterion_8_cli_contract(tmp_path):
    assert criterion_8(str(tmp_path)), RESULTS[8]


if __name__ == "__main__":
    import tempfile
    with tempfile.TemporaryDirectory() as d:
        for f in (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                  criterion_6, criterion_7, lambda: criterion_8(d)):
            f()
    for n in sorted(RESULTS):
        print(RESULTS[n])
