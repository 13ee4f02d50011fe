"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line; ``conftest.py`` prints them in the
terminal summary.  Running this file directly prints the same lines.
"""

import functools
import math
import time

import numpy as np
import pytest

import oracles
from conservedinfo.distributions import (
    Event,
    FiniteDistribution,
    bernoulli,
    event_probability,
    new_distribution,
    product,
    product_event,
    uniform,
)
from conservedinfo.extreal import NATS
from conservedinfo.finetune import (
    ParamFamily,
    fine_tuned_flags,
    fine_tuning_report,
    target_event,
)
from conservedinfo.markov import WalkConfig, cycle_graph, trajectory
from conservedinfo.measures import (
    active_information,
    binary_cai,
    coarsened_cai,
    conserved_active_information,
    entropy,
    kl_divergence,
    pinsker_bound,
    self_information,
    total_information,
    total_variation,
    uniform_baseline_identity,
    uniform_baseline_tv_bound,
)
from conservedinfo.regimes import Regime, regime_report

RESULTS: dict[str, str] = {}


def criterion(key, title, budget=None):
    """Record PASS/FAIL for ``title``; fail when the body exceeds ``budget`` seconds."""

    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            start = time.perf_counter()
            try:
                fn(*args, **kwargs)
                elapsed = time.perf_counter() - start
                if budget is not None:
                    assert elapsed < budget, f"took {elapsed:.2f} s, budget {budget} s"
            except BaseException as exc:
                RESULTS[key] = f"FAIL  {key}: {title}  ({type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''})"
                raise
            RESULTS[key] = f"PASS  {key}: {title}  [{elapsed:.2f} s]"

        return run

    return wrap


def close(got, want, tol):
    if math.isnan(want):
        return math.isnan(got)
    if math.isinf(want):
        return got == want
    return abs(got - want) <= tol


def sign0(x, tol=1e-12):
    return 0 if abs(x) <= tol else (1 if x > 0 else -1)


# 200 x 200 grid with p < 1/2 on which both boundaries q = p and q = 1 - p occur
# exactly: p = i/401, q = 2j/401.
GRID_I = range(1, 201)
GRID_J = range(1, 201)


@criterion("C1", "Bernoulli landmarks H(Ber(1/2)) = 2, entropy = 1")
def test_c1_bernoulli_landmarks():
    B = bernoulli(0.5)
    assert abs(total_information(B) - 2.0) <= 1e-12
    assert abs(entropy(B) - 1.0) <= 1e-12


@criterion("C2", "saddle regimes on the 99x99 grid", budget=1.0)
def test_c2_saddle():
    for a in range(1, 100):
        for b in range(1, 100):
            p, q = a / 100, b / 100
            v = conserved_active_information(bernoulli(p), bernoulli(q))
            if b in (a, 100 - a):
                assert abs(v) < 1e-10, (p, q, v)
            elif b == 50:
                assert v < 0, (p, q, v)
            elif a == 50:
                assert v > 0, (p, q, v)


@criterion("C3", "sign(coarsened I_cons) = -sign((q-p)(p+q-1)) as stated", budget=1.0)
def test_c3_sign_law_as_stated():
    # Stated with a leading minus.  The closed form log[p(1-p)/(q(1-q))]
    # has the sign of +(q-p)(p+q-1); this check is expected to fail.
    bad = []
    for i in GRID_I:
        for j in GRID_J:
            p, q = i / 401, 2 * j / 401
            prod = (q - p) * (p + q - 1)
            v = binary_cai(p, q)
            if sign0(v) != -sign0(prod):
                bad.append((p, q))
    assert not bad, f"{len(bad)} of 40000 grid points violate the stated law, e.g. {bad[0]}"


@criterion("C3'", "sign(coarsened I_cons) = +sign((q-p)(p+q-1)), zero iff product zero", budget=1.0)
def test_c3_sign_law_corrected():
    for i in GRID_I:
        for j in GRID_J:
            p, q = i / 401, 2 * j / 401
            prod = (q - p) * (p + q - 1)
            v = binary_cai(p, q)
            assert sign0(v) == sign0(prod), (p, q, v, prod)
            exact = (2 * j - i) * (i + 2 * j - 401) == 0
            assert (sign0(v) == 0) == exact


# Regime table rows: (regime, sign of I+, sign of I_cons); boundaries are the edges
# of the mild row, where I+ >= 0 and I_cons <= 0 with I_cons = 0.
TABLE = {
    Regime.HARMFUL_TO_TARGET: (-1, 1),
    Regime.MILD_KNOWLEDGE: (1, -1),
    Regime.STRONG_KNOWLEDGE: (1, 1),
    Regime.BOUNDARY_EQUAL: (0, 0),
    Regime.BOUNDARY_MIRROR: (1, 0),
}


@criterion("C4", "regime tags and signs on the 200x200 grid", budget=1.0)
def test_c4_table():
    for i in GRID_I:
        for j in GRID_J:
            p, q = i / 401, 2 * j / 401
            r = regime_report(p, q, warn=False)
            # expected tag from exact integer comparisons
            if 2 * j == i:
                want = Regime.BOUNDARY_EQUAL
            elif 2 * j == 401 - i:
                want = Regime.BOUNDARY_MIRROR
            elif 2 * j < i:
                want = Regime.HARMFUL_TO_TARGET
            elif 2 * j < 401 - i:
                want = Regime.MILD_KNOWLEDGE
            else:
                want = Regime.STRONG_KNOWLEDGE
            assert r.regime is want, (p, q, r.regime)
            assert (sign0(r.active_info), sign0(r.cai_coarsened)) == TABLE[want], (p, q)


def random_pairs(n_pairs=10_000, seed=11):
    rng = np.random.default_rng(seed)
    for _ in range(n_pairs):
        n = int(rng.integers(2, 65))
        w = rng.dirichlet(np.ones(n))
        w = np.maximum(w, 1e-300)
        yield FiniteDistribution.normalized(range(n), w)


@criterion("C5", "N KL(U || P2) = I_cons(U, P2) on 1e4 random P2", budget=5.0)
def test_c5_uniform_baseline_identity():
    for P2 in random_pairs():
        lhs, rhs = uniform_baseline_identity(P2)
        assert math.isclose(lhs, rhs, rel_tol=1e-9, abs_tol=1e-12), (lhs, rhs)


@criterion("C6", "Pinsker and uniform-baseline TV bounds on the same 1e4 pairs", budget=5.0)
def test_c6_tv_bounds():
    for P2 in random_pairs():
        U = uniform(P2.size)
        tv = total_variation(U, P2)
        assert tv <= pinsker_bound(U, P2)
        assert tv <= math.sqrt(kl_divergence(U, P2, NATS) / 2)
        assert tv <= uniform_baseline_tv_bound(P2)


@criterion("C7", "active information tensorizes over 1e3 random products", budget=5.0)
def test_c7_tensorization():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        k = int(rng.integers(1, 6))
        sizes = rng.integers(2, 5, size=k)
        firsts, seconds, events = [], [], []
        for n in sizes:
            firsts.append(FiniteDistribution.normalized(range(n), rng.dirichlet(np.ones(n)) + 1e-3))
            seconds.append(FiniteDistribution.normalized(range(n), rng.dirichlet(np.ones(n)) + 1e-3))
            m = int(rng.integers(1, n + 1))
            events.append(Event(tuple(sorted(rng.choice(n, size=m, replace=False).tolist()))))
        whole = active_information(product(firsts), product(seconds), product_event(firsts, events))
        parts = math.fsum(active_information(a, b, e) for a, b, e in zip(firsts, seconds, events))
        assert abs(whole - parts) <= 1e-9, (whole, parts)


@criterion("C8", "divergent tails at eps = 0.4999")
def test_c8_tails():
    eps = 0.4999
    P1, P2 = bernoulli(0.5 + eps), bernoulli(0.5)
    assert conserved_active_information(P1, P2) < -10
    assert abs(kl_divergence(P1, P2) - 1.0) < 0.01


@criterion("C9", "5-cycle walk converges to q = 0.2, limit is MildKnowledge with I_cons < 0", budget=1.0)
def test_c9_markov():
    P1 = new_distribution(range(5), [0.01, 0.01, 0.96, 0.01, 0.01])
    pts = trajectory(P1, cycle_graph(5), Event((0,)), WalkConfig(steps=500, laziness=0.0))
    last = pts[-1]
    assert last.t == 500
    assert abs(last.q_t - 0.2) < 1e-6
    assert last.regime_t is Regime.MILD_KNOWLEDGE
    assert last.cai_coarsened_t < 0


@criterion("C10", "fine-tuning oracle and delta-flag identity", budget=10.0)
def test_c10_finetune():
    means = np.round(np.arange(0, 1001) * 0.01, 10)
    fam = ParamFamily("truncated_normal", (0.0, 10.0), 0.01, tuple((float(m), 1.0) for m in means))
    T = target_event(fam, (4.9, 5.1))
    r = fine_tuning_report(fam, T, 0.01)
    analytic = oracles.normal_cdf(0.1) - oracles.normal_cdf(-0.1)
    assert abs(r.p_max - analytic) < 1e-3
    assert abs(r.p_max - 0.0797) < 1e-4
    assert abs(r.xi_star[0] - 5.0) <= 0.01 + 1e-12
    rng = np.random.default_rng(10)
    for _ in range(1000):
        p_max = float(rng.uniform(0, 1))
        delta = float(rng.uniform(0, 1))
        by_p, by_info = fine_tuned_flags(p_max, delta)
        assert by_p == by_info == (p_max < delta)


@criterion("C11", "brute-force oracle over 0.05-grid distributions, N <= 4", budget=60.0)
def test_c11_brute_force():
    tol = 1e-10
    rng = np.random.default_rng(11)
    for n in range(1, 5):
        dists = [
            (tuple(c / 20 for c in comp), new_distribution(range(n), [c / 20 for c in comp]))
            for comp in oracles.compositions(20, n)
        ]
        events = [Event(s) for s in oracles.subsets(n)]
        full = [e for e in events if 0 < len(e) < n]

        for p, P in dists:
            assert close(entropy(P), oracles.entropy(p), tol)
            assert close(total_information(P), oracles.total_info(p), tol)
            for e in events:
                assert close(event_probability(P, e), oracles.event_prob(p, e.indices), tol)
                assert close(self_information(P, e), oracles.self_info(p, e.indices), tol)
            if all(x > 0 for x in p):
                u = [1 / n] * n
                lhs, rhs = uniform_baseline_identity(P)
                assert close(lhs, n * oracles.kl(u, p), tol)
                assert close(rhs, oracles.cai(u, p), tol)

        if n <= 3:
            pairs = [(a, b) for a in dists for b in dists]
        else:
            # 1771 distributions: pair each with itself and 25 random partners
            pairs = []
            for a in dists:
                pairs.append((a, a))
                for k in rng.choice(len(dists), size=25, replace=False):
                    pairs.append((a, dists[k]))

        for (p1, P1), (p2, P2) in pairs:
            assert close(conserved_active_information(P1, P2), oracles.cai(p1, p2), tol)
            assert close(kl_divergence(P1, P2), oracles.kl(p1, p2), tol)
            assert close(kl_divergence(P2, P1), oracles.kl(p2, p1), tol)
            assert close(total_variation(P1, P2), oracles.tv_brute(p1, p2), tol)
            assert close(pinsker_bound(P1, P2), math.sqrt(oracles.kl(p2, p1, math.e) / 2), tol)
            for e in full if n <= 3 else [full[int(rng.integers(len(full)))]]:
                idx = e.indices
                assert close(active_information(P1, P2, e), oracles.active_info(p1, p2, idx), tol)
                rest = [i for i in range(n) if i not in idx]
                c1 = [oracles.event_prob(p1, idx), oracles.event_prob(p1, rest)]
                c2 = [oracles.event_prob(p2, idx), oracles.event_prob(p2, rest)]
                assert close(coarsened_cai(P1, P2, e), oracles.cai(c1, c2), tol)


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
