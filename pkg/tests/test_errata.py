import cmath
import math

import pytest

from lhi import errata as er
from lhi.errors import DegenerateParameters
from lhi.transforms import IdentityId, lt_closed

# mpmath quadrature of the left-hand integrals
ORACLE_E = 0.75192142423166255145  # I case, (0.5, 0.5), xi = 0.8
ORACLE_A = 0.89532994011472151065  # K case, (0.3, 0.45), xi = 0.7


def case(entry):
    found = er.find_cases(entry)
    assert len(found) == 1, entry
    return found[0]


class TestCatalogue:
    def test_complete(self):
        cases = er.builtin_cases()
        assert len(cases) >= 9
        labels = {c.label for c in cases}
        assert labels == {f"({x})" for x in "abcdefghi"}
        keys = {c.key for c in cases}
        for key in ["GR2015 6.628(5)", "GR2015 6.628(6)", "GR2015 6.628(2)",
                    "Watson44 13.21(4)", "Erdelyi54 4.16(28)", "Erdelyi54 4.16(9)",
                    "Agrest71 (5.5)", "Agrest71 (5.6)", "Agrest71 (5.8)", "Agrest71 (5.9)",
                    "Roberts66 12.2.4", "Roberts66 13.2.2", "Erdelyi54 4.14(9)",
                    "Erdelyi54 4.14(28)"]:
            assert key in keys

    def test_both_labels_for_414(self):
        assert case("4.14(48)") is not None
        assert case("4.14(48)").entry_id == case("4.14(28)").entry_id

    def test_roberts_are_aliases(self):
        r1, r2 = case("12.2.4"), case("13.2.2")
        assert r1.alias_of == "Erdelyi54 4.16(28)"
        assert r2.alias_of == "Erdelyi54 4.16(9)"
        e1 = case("4.16(28)")
        assert r1.quotient(0.7, 0.45) == e1.quotient(0.7, 0.45)

    def test_inverse_transforms_noted(self):
        assert "5.13(9)" in case("4.16(28)").notes
        assert "5.13(3)" in case("4.16(9)").notes

    def test_gr6_redundancy_note(self):
        assert "6.622(3)" in case("6.628(6)").notes

    def test_modes(self):
        assert case("6.628(2)").mode is er.Mode.RatioOnly
        assert case("13.21(4)").mode is er.Mode.RatioOnly
        assert case("4.14(9)").mode is er.Mode.RatioOnly
        for e in ["6.628(5)", "6.628(6)", "4.16(28)", "4.16(9)", "(5.5)", "(5.6)", "(5.8)", "(5.9)"]:
            assert case(e).mode is er.Mode.FullAudit


class TestFactors:
    @pytest.mark.parametrize("nu,mu", [(0.3, 0.45), (1.6, 0.2), (0.7, 1.3), (2.0, 1.0)])
    def test_agrest_55_ratio(self, nu, mu):
        assert abs(case("(5.5)").quotient(nu, mu) - (-2 / math.pi)) < 1e-12

    def test_gr5_wrong_factor(self):
        c = case("6.628(5)")
        assert c.wrong_factor(0.3, 0.45) == pytest.approx(
            math.sin(0.45 * math.pi) / math.sin(0.75 * math.pi), rel=1e-15)
        assert c.corrected_factor(0.3, 0.45) == pytest.approx(cmath.exp(-0.3j * math.pi))

    def test_gr_factors_as_printed(self):
        n, m = 0.3, 0.45  # source symbols: n = Bessel order, m = power
        assert case("6.628(2)").wrong_factor(n, m) == pytest.approx(
            -math.sin(m * math.pi) / math.sin((m + n) * math.pi))
        assert case("6.628(6)").wrong_factor(n, m) == pytest.approx(
            math.cos(n * math.pi) / math.sin((m + n) * math.pi))
        assert case("6.628(6)").corrected_factor(n, m) == pytest.approx(
            cmath.exp(-(m - 0.5) * math.pi * 1j))

    @pytest.mark.parametrize("entry", ["6.628(5)", "6.628(6)", "6.628(2)"])
    @pytest.mark.parametrize("nu,mu", [(0.3, 0.2), (0.7, 0.45), (1.6, 1.3)])
    def test_gr_entries_right_in_barnes_convention(self, entry, nu, mu):
        # the printed factor is correct when Q is read in Barnes' normalization
        c = case(entry)
        degree, order = (mu - 0.5, nu + 0.5) if entry == "6.628(6)" else (nu, mu)
        assert abs(c.quotient(nu, mu) - er.hobson_over_barnes(degree, order)) < 1e-10

    def test_degenerate(self):
        with pytest.raises(DegenerateParameters):
            case("6.628(5)").quotient(0.5, 0.5)  # sin((nu + mu) pi) = 0
        with pytest.raises(DegenerateParameters):
            case("4.16(28)").quotient(1.0, 1.0)

    def test_watson_interchange(self):
        c = case("13.21(4)")
        assert abs(c.quotient(0.3, 0.45) - cmath.exp(0.45j * math.pi)) < 1e-15


class TestAudit:
    def test_e_confirmed(self):
        r = er.audit(case("(5.5)"), 0.5, 0.5, 0.8)
        assert r.verdict is er.Verdict.Confirmed
        assert r.corrected_rel_err <= 1e-6
        assert abs(r.oracle - ORACLE_E) < 1e-9
        assert abs(r.wrong_value / r.corrected_value - (-2 / math.pi)) < 1e-12

    def test_e_integer_order(self):
        assert er.audit(case("(5.5)"), 0.5, 1.0, 0.8).verdict is er.Verdict.Confirmed

    def test_a_confirmed(self):
        r = er.audit(case("6.628(5)"), 0.3, 0.45, 0.7)
        assert r.verdict is er.Verdict.Confirmed
        assert abs(r.oracle - ORACLE_A) < 1e-9
        assert r.barnes_residual < 1e-10

    def test_erdelyi_encoding_consistent(self):
        for entry in ("4.16(28)", "4.16(9)"):
            c = case(entry)
            for nu, mu, p in er.audit_points(c):
                r = er.audit(c, nu, mu, p)
                expected = r.corrected_value * c.quotient(nu, mu)
                assert abs(r.wrong_value - expected) <= 1e-10 * abs(expected)

    def test_agrest_56_domain(self):
        c = case("(5.6)")
        for s in (-0.5, -0.8):
            r = er.audit(c, 0.7, 0.45, s)
            assert r.verdict is er.Verdict.Confirmed
            assert r.wrong_rel_err >= 1e-2
            assert r.corrected_rel_err <= 1e-6
        # the Q-form is right where the source says it is valid
        for s in (1.5, 2.0, 4.0):
            assert abs(er.agrest_q_form(0.7, 0.45, s) - lt_closed("K", 0.7, 0.45, s)) < 1e-10
        # and its principal continuation also happens to agree on (0, 1)
        assert abs(er.agrest_q_form(0.7, 0.45, 0.5) - lt_closed("K", 0.7, 0.45, 0.5)) < 1e-10

    def test_agrest_q_form_continuation_matches_mpmath(self):
        import mpmath as mp
        nu, mu, s = 0.7, 0.45, -0.5
        z = s / mp.sqrt(mp.mpc(s * s - 1))
        ref = ((s * s - 1 + 0j) ** (-(nu + 1) / 2) * mp.gamma(nu + mu + 1)
               * mp.exp(1j * mu * mp.pi) * mp.legenq(nu, -mu, z, type=3))
        assert abs(er.agrest_q_form(nu, mu, s) - complex(ref)) < 1e-12 * abs(complex(ref))

    def test_ratio_only_has_controls(self):
        for c in er.builtin_cases():
            if c.mode is er.Mode.RatioOnly:
                assert c.controls
                r = er.audit(c, *c.default_params)
                assert all(x.passed for x in r.controls)

    def test_gr2_control_is_identity_2(self):
        assert IdentityId.T1_Y in case("6.628(2)").controls

    def test_default_run(self):
        records = er.audit_all()
        assert len(records) >= 9
        assert all(r.verdict is er.Verdict.Confirmed for r in records)

    def test_full_grid(self):
        for r in er.audit_all(full=True):
            assert r.verdict is er.Verdict.Confirmed, (r.case.key, r.params, r.detail)
            if r.case.mode is er.Mode.FullAudit:
                assert r.corrected_rel_err <= 1e-6
                assert r.wrong_rel_err >= 1e-2

    def test_row(self):
        row = er.audit(case("(5.8)"), 0.7, 0.45, 0.5).as_row()
        assert row["verdict"] == "Confirmed"
        assert row["identity"] == "S_JJ"
        assert len(row["wrong_value"]) == 2
