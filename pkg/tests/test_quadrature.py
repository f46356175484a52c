import math

import numpy as np
import pytest

from lhi import quadrature as qd
from lhi.errors import AccuracyError, ConvergenceError, DomainError, ExistenceError
from lhi.transforms import laplace_transform, lt_k_at_one, rhs_trig

# mpmath quadrature at 30 digits
ILHI_K_03_02_1_1 = 0.57712757305835350842
Y_04_02_08 = -0.20042144701902324888
K2_06_025_04 = 0.64469626676421712347
IP_05_1_08 = 0.53599009618534503332
Y_SINGULAR = -7.5719063438163009251


def rel(a, b):
    return abs(a - b) / abs(b)


class TestRule:
    def test_weights_sum(self):
        assert qd.KRONROD_WEIGHTS.sum() == pytest.approx(2.0, rel=1e-15)
        assert qd.GAUSS_WEIGHTS.sum() == pytest.approx(2.0, rel=1e-15)

    @pytest.mark.parametrize("deg", range(0, 32))
    def test_kronrod_exact(self, deg):
        exact = 0.0 if deg % 2 else 2.0 / (deg + 1)
        assert abs(qd.NODES ** deg @ qd.KRONROD_WEIGHTS - exact) < 1e-14

    @pytest.mark.parametrize("deg", range(0, 20))
    def test_gauss_exact(self, deg):
        exact = 0.0 if deg % 2 else 2.0 / (deg + 1)
        assert abs(qd.NODES ** deg @ qd.GAUSS_WEIGHTS - exact) < 1e-14

    def test_gauss_nodes_are_legendre_zeros(self):
        nodes = qd.NODES[qd.GAUSS_WEIGHTS > 0]
        assert np.allclose(np.sort(nodes), np.polynomial.legendre.leggauss(10)[0], atol=1e-15)


class TestIlhi:
    def test_small_T(self):
        r = qd.ilhi("I", 0, 0, 1e-10, 1)
        assert r.value == pytest.approx(1e-10, rel=1e-9)
        assert r.truncation_T is None

    def test_long_interval(self):
        r = qd.ilhi("J", 0, 0, 40, 1)
        assert abs(r.value - 1 / math.sqrt(2)) < 1e-8

    def test_frozen(self):
        r = qd.ilhi("K", 0.3, 0.2, 1, 1)
        assert abs(r.value - ILHI_K_03_02_1_1) <= max(1e-12, 1e-10 * abs(r.value))
        assert r.error_estimate <= max(1e-12, 1e-10 * abs(r.value))

    def test_endpoint_singularity(self):
        # integrand ~ t^-0.9 near 0; Y_1/2(t) = -sqrt(2/(pi t)) cos t, and the
        # reference integrates in u = t^(1/10), where it is smooth
        r = qd.ilhi("Y", -0.4, 0.5, 2.0, 0.5)
        assert rel(r.value, Y_SINGULAR) < 1e-10

    @pytest.mark.parametrize("kind,nu,mu", [("I", 0.0, 0.3), ("K", 0.5, 0.2), ("I", 1.5, 2.25),
                                            ("K", 0.0, 0.0)])
    def test_monotone_in_T(self, kind, nu, mu):
        values = [qd.ilhi(kind, nu, mu, T, 1.5).value for T in (0.5, 1, 2, 4, 8)]
        assert all(b >= a for a, b in zip(values, values[1:]))

    def test_any_real_s(self):
        r = qd.ilhi("I", 0.5, 0.5, 3.0, -2.0)
        assert r.value > 0 and math.isfinite(r.value)

    def test_errors(self):
        with pytest.raises(ConvergenceError):
            qd.ilhi("K", 0.0, 1.0, 1.0, 1.0)
        with pytest.raises(DomainError):
            qd.ilhi("J", 0.0, 0.0, 0.0, 1.0)
        with pytest.raises(DomainError):
            qd.ilhi("J", 0.0, 0.0, math.inf, 1.0)


class TestLtOracle:
    def test_j0(self):
        r = qd.lt_oracle("J", 0, 0, 1, 1e-10)
        assert rel(r.value, 0.70710678118654752440) < 1e-10
        assert r.truncation_T is not None

    def test_k0_at_one(self):
        assert rel(qd.lt_oracle("K", 0, 0, 1, 1e-10).value, 1.0) < 1e-10

    def test_y_frozen(self):
        assert rel(qd.lt_oracle("Y", 0.4, 0.2, 0.8, 1e-10).value, Y_04_02_08) < 1e-10

    def test_y_slow_decay(self):
        r = qd.lt_oracle("Y", 0.4, 0.2, 0.05, 1e-8)
        assert rel(r.value, laplace_transform("Y", 0.4, 0.2, 0.05)) < 1e-8
        assert r.evaluations <= qd.DEFAULT_BUDGET

    @pytest.mark.parametrize("kind,nu,mu,s", [
        ("J", 0.7, 0.5, 0.5), ("Y", 1.5, 1.0, 2.0), ("I", 0.0, 2.25, 1.2),
        ("K", 0.7, -0.3, -0.5), ("K", 3.2, 2.25, 2.0), ("Kh", 0.3, 0.2, 0.3),
        ("J", -0.4, -0.3, 1.0), ("I", 3.2, 1.0, 5.0), ("Y", 0.0, 0.5, 0.5),
        ("K", 1.5, 0.5, 1.0), ("J", 3.2, 2.25, 2.0), ("I", 0.7, 0.0, 2.0)])
    def test_limit_property(self, kind, nu, mu, s):
        tol = 1e-10
        lt = qd.lt_oracle(kind, nu, mu, s, tol)
        finite = qd.ilhi(kind, nu, mu, lt.truncation_T, s)
        assert abs(finite.value - lt.value) <= 2 * tol * max(1.0, abs(lt.value))
        assert rel(lt.value, laplace_transform(kind, nu, mu, s)) < 1e-8

    def test_honesty(self):
        rng = np.random.default_rng(7)
        ratios = []
        for _ in range(50):
            kind = rng.choice(["J", "Y", "I", "K"])
            nu = rng.uniform(-0.3, 3.0)
            mu = rng.uniform(-0.5, 0.5) if kind in "YK" else rng.uniform(-0.2, 3.0)
            s = {"J": rng.uniform(0.2, 3), "Y": rng.uniform(0.2, 3),
                 "I": rng.uniform(1.1, 4), "K": rng.uniform(-0.8, 3)}[kind]
            r = qd.lt_oracle(kind, nu, mu, s, 1e-8)
            ref = qd.lt_oracle(kind, nu, mu, s, 1e-10)
            ratios.append(abs(r.value - ref.value) / r.error_estimate)
        ratios = np.array(ratios)
        assert np.mean(ratios <= 1.0) >= 0.95
        assert ratios.max() <= 10.0

    def test_errors(self):
        with pytest.raises(ExistenceError):
            qd.lt_oracle("I", 0, 0, 1.0)
        with pytest.raises(ExistenceError):
            qd.lt_oracle("J", 0, 0, -0.1)
        with pytest.raises(DomainError):
            qd.lt_oracle("J", 0, 0, 1.0, tol=1e-14)

    def test_budget(self, monkeypatch):
        monkeypatch.setenv("LHI_EVAL_BUDGET", "500")
        with pytest.raises(AccuracyError):
            qd.lt_oracle("Y", 0.4, 0.2, 0.05, 1e-8)
        monkeypatch.setenv("LHI_EVAL_BUDGET", "many")
        with pytest.raises(DomainError):
            qd.eval_budget()

    def test_tail_bound_is_a_bound(self):
        from scipy import integrate, special as sc
        for kind, f, s in [("J", sc.jv, 0.5), ("Y", sc.yv, 0.2), ("I", sc.iv, 1.5),
                           ("K", sc.kv, -0.5)]:
            for T in (8.0, 20.0):
                tail, _ = integrate.quad(lambda t: abs(math.exp(-s * t) * t ** 0.7 * f(0.3, t)),
                                         T, 600.0, limit=2000)
                assert qd.tail_bound(kind, 0.7, 0.3, s, T) >= tail


class TestGenericLhs:
    def test_j_trivial(self):
        assert rel(qd.generic_lhs("T1_J", 0, 0, math.pi / 4, 1e-10).value, 1.0) < 1e-10

    def test_k2_frozen(self):
        assert rel(qd.generic_lhs("T1_K2", 0.6, 0.25, 0.4, 1e-10).value, K2_06_025_04) < 1e-10

    def test_ip_frozen(self):
        assert rel(qd.generic_lhs("T2_Ip", 0.5, 1.0, 0.8, 1e-10).value, IP_05_1_08) < 1e-10

    @pytest.mark.parametrize("xi", [-0.2, -0.7, -1.5])
    def test_k2_negative_xi(self, xi):
        r = qd.generic_lhs("T1_K2", 0.6, 0.25, xi, 1e-10)
        assert rel(r.value, rhs_trig("T1_K2", 0.6, 0.25, xi)) < 1e-9

    def test_s_forms(self):
        r = qd.generic_lhs("S_K_at_1", 0.5, 0.25, 1.0)
        assert rel(r.value, lt_k_at_one(0.5, 0.25)) < 1e-9

    def test_errors(self):
        with pytest.raises(DomainError):
            qd.generic_lhs("T1_J", 0.3, 0.2, 2.0)
        with pytest.raises(DomainError):
            qd.generic_lhs("T1_I", 0.3, 0.2, -1.0)
        with pytest.raises(ConvergenceError):
            qd.generic_lhs("T1_K", 0.3, 1.5, 0.7)
