"""Command-line interface: records, exit codes, determinism."""

import json

import numpy as np

from darboux.cli import EXIT_DOMAIN, EXIT_MODE, EXIT_OK, main


def run_cli(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def records(out):
    return [json.loads(line) for line in out.splitlines() if line.strip()]


class TestEval:
    def test_lame_sn_channel(self, capsys):
        k = 0.6
        code, out = run_cli(
            ["eval", "--k", "0.6", "--xi", "0", "--eta", "-1", "--mu", "-1",
             "--nu", "1", "--h", str(1 + k * k), "--u-range", "0.1", "1.5", "8"],
            capsys,
        )
        assert code == EXIT_OK
        recs = records(out)
        assert len(recs) == 8
        from darboux.elliptic import jacobi_sn_cn_dn

        for r in recs:
            u = complex(r["u"])
            ref = jacobi_sn_cn_dn(u, k)[0]
            assert abs(complex(r["re"], r["im"]) - ref) < 1e-8
            assert r["variant"] == "corrected"

    def test_value_at_zero(self, capsys):
        code, out = run_cli(
            ["eval", "--k", "0.6", "--nu", "1", "--h", "0.5", "--points", "0"],
            capsys,
        )
        assert code == EXIT_OK
        r = records(out)[0]
        assert r["re"] == 0 and r["im"] == 0

    def test_out_of_domain_exit_2_no_partial_output(self, capsys):
        code, out = run_cli(
            ["eval", "--k", "0.6", "--xi", "0.2", "--eta", "0.1", "--mu", "0.4",
             "--nu", "0.9", "--h", "1.2", "--points", "0.3", "1.7507+1.3j"],
            capsys,
        )
        assert code == EXIT_DOMAIN
        recs = records(out)
        assert len(recs) == 1 and "error" in recs[0]


class TestEigen:
    def test_polynomial_nu3(self, capsys):
        code, out = run_cli(
            ["eigen", "--k", "0.6", "--nu", "3", "--mode", "polynomial"], capsys
        )
        assert code == EXIT_OK
        recs = records(out)
        assert len(recs) == 1
        assert abs(complex(recs[0]["h"]) - 4 * 1.36) < 1e-10
        assert recs[0]["q"] == 0

    def test_polynomial_lame_channel(self, capsys):
        code, out = run_cli(
            ["eigen", "--k", "0.6", "--eta", "-1", "--mu", "-1", "--nu", "1",
             "--mode", "polynomial"],
            capsys,
        )
        assert code == EXIT_OK
        assert abs(complex(records(out)[0]["h"]) - 1.36) < 1e-10

    def test_mode_mismatch_exit_3(self, capsys):
        code, _ = run_cli(
            ["eigen", "--k", "0.6", "--xi", "1", "--eta", "1", "--mode", "polynomial"],
            capsys,
        )
        assert code == EXIT_MODE

    def test_function_mode(self, capsys):
        code, out = run_cli(
            ["eigen", "--k", "0.6", "--nu", "1", "--mode", "function",
             "--region", "3.0", "4.0"],
            capsys,
        )
        assert code == EXIT_OK
        recs = records(out)
        assert len(recs) == 1 and recs[0]["mode"] == "function"

    def test_rational_parameters(self, capsys):
        code, out = run_cli(
            ["eigen", "--k", "0.6", "--nu", "6/2", "--mode", "polynomial"], capsys
        )
        assert code == EXIT_OK
        assert records(out)[0]["q"] == 0


class TestCatalog:
    def test_list_192_in_8_groups(self, capsys):
        code, out = run_cli(["catalog", "list", "--k", "0.6"], capsys)
        assert code == EXIT_OK
        recs = records(out)
        assert len(recs) == 192
        from collections import Counter

        groups = Counter((r["singular_point"], r["branch"]) for r in recs)
        assert len(groups) == 8 and set(groups.values()) == {24}

    def test_verify_at_eigenvalue(self, capsys):
        code, out = run_cli(
            ["catalog", "verify", "--k", "0.6", "--nu", "3", "--h", str(4 * 1.36),
             "--seed", "0"],
            capsys,
        )
        assert code == EXIT_OK
        recs = records(out)
        assert len(recs) == 24
        assert all(r["residual"] <= 1e-6 for r in recs)


class TestTransform:
    def test_C0(self, capsys):
        code, out = run_cli(
            ["transform", "--row", "C0", "--k", "0.6", "--xi", "0.2", "--eta",
             "0.3", "--mu", "0.4", "--nu", "0.5", "--h", "1.1"],
            capsys,
        )
        assert code == EXIT_OK
        r = records(out)[0]
        assert abs(complex(r["h"]) - 1.1 / 0.36) < 1e-12
        assert abs(complex(r["kappa"]) - 1 / 0.6) < 1e-12
        assert r["sigma"] == "0213"
        assert complex(r["eta"]) == 0.4 and complex(r["mu"]) == 0.3

    def test_identity_row(self, capsys):
        code, out = run_cli(
            ["transform", "--row", "I0", "--k", "0.6", "--xi", "0.2", "--h", "1.1"],
            capsys,
        )
        r = records(out)[0]
        assert complex(r["h"]) == 1.1 and complex(r["kappa"]) == 0.6

    def test_B0_accessory(self, capsys):
        code, out = run_cli(
            ["transform", "--row", "B0", "--k", "0.6", "--xi", "0.2", "--eta",
             "0.3", "--mu", "0.4", "--nu", "0.5", "--h", "1.1"],
            capsys,
        )
        r = records(out)[0]
        S = sum(g * (g + 1) for g in (0.2, 0.3, 0.4, 0.5))
        assert abs(complex(r["h"]) - (-1.1 + S)) < 1e-12
        assert abs(complex(r["kappa"]) - 0.8) < 1e-12


class TestIdentitiesLambdaWeierstrass:
    def test_identities_run(self, capsys):
        code, out = run_cli(
            ["identities", "--landen", "--duplication", "--samples", "3"], capsys
        )
        assert code == EXIT_OK
        recs = records(out)
        assert len(recs) == 6
        assert all(r["dl_relative_err"] < 1e-8 for r in recs)

    def test_lambda_i(self, capsys):
        code, out = run_cli(["lambda", "1j"], capsys)
        assert code == EXIT_OK
        r = records(out)[0]
        assert abs(r["lambda_re"] - 0.5) < 1e-10 and abs(r["lambda_im"]) < 1e-12

    def test_weierstrass_evalues(self, capsys):
        code, out = run_cli(
            ["weierstrass", "evalues", "--k", str(np.sqrt(0.5))], capsys
        )
        r = records(out)[0]
        assert abs(complex(r["e1"]) - 0.5) < 1e-12
        assert abs(complex(r["e2"])) < 1e-12
        assert abs(complex(r["e3"]) + 0.5) < 1e-12


class TestDeterminismAndFormats:
    def test_byte_identical_reruns(self, capsys):
        argv = ["catalog", "list", "--k", "0.6", "--seed", "7"]
        _, out1 = run_cli(argv, capsys)
        _, out2 = run_cli(argv, capsys)
        assert out1 == out2

    def test_csv_projection(self, capsys):
        code, out = run_cli(
            ["lambda", "1j", "2j", "--format", "csv"], capsys
        )
        assert code == EXIT_OK
        lines = out.splitlines()
        assert lines[0].split(",")[:2] == ["tau", "lambda_re"]
        assert len(lines) == 3

    def test_variant_stamped(self, capsys):
        _, out = run_cli(
            ["eigen", "--k", "0.6", "--nu", "3", "--mode", "polynomial",
             "--variant", "paper"],
            capsys,
        )
        r = records(out)[0]
        assert r["variant"] == "paper"
        assert abs(complex(r["h"]) - (4 * 1.36 - 1.36)) < 1e-10

    def test_config_validation(self, capsys):
        code, _ = run_cli(
            ["eigen", "--k", "0.6", "--nu", "3", "--mode", "polynomial",
             "--trunc", "4"],
            capsys,
        )
        assert code == EXIT_DOMAIN


class TestVerifyCommand:
    def test_full_battery_passes(self, capsys):
        code, out = run_cli(["verify"], capsys)
        assert code == EXIT_OK
        recs = records(out)
        verdict = [r for r in recs if r.get("check") == "lvariant"]
        assert verdict and verdict[0]["verdict"] == "corrected"
        # only repaired/failed table rows are listed; none may be "failed"
        assert all(r.get("status") != "failed" for r in recs)
