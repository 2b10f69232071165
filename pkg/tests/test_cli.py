import csv
import io
import json

import pytest

from klehmer.cli import RunConfig, classification_report, emit_bfile, main


def run_cli(capsys, *args):
    rc = main(list(args))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


class TestClassify:
    def test_561_golden(self, capsys):
        rc, out, _ = run_cli(capsys, "classify", "561")
        assert rc == 0
        assert out == (
            '{\n  "n": "561",\n  "factorization": [\n    [\n      "3",\n'
            '      1\n    ],\n    [\n      "11",\n      1\n    ],\n    [\n'
            '      "17",\n      1\n    ]\n  ],\n  "phi": "320",\n'
            '  "lambda": "80",\n  "rad_phi": "10",\n  "lehmer_index": 2,\n'
            '  "is_carmichael": true,\n  "pseudoprime_base": "103",\n'
            '  "base_degenerate": false\n}\n'
        )
        payload = json.loads(out)
        assert payload["lehmer_index"] == 2 and payload["is_carmichael"] is True

    def test_not_in_linf_renders_none(self, capsys):
        rc, out, _ = run_cli(capsys, "classify", "9")
        assert json.loads(out)["lehmer_index"] == "none"

    def test_degenerate_base_flagged(self, capsys):
        rc, out, _ = run_cli(capsys, "classify", "15")
        payload = json.loads(out)
        assert payload["pseudoprime_base"] == "1"
        assert payload["base_degenerate"] is True

    def test_prime_omits_base(self, capsys):
        rc, out, _ = run_cli(capsys, "classify", "97")
        payload = json.loads(out)
        assert "pseudoprime_base" not in payload
        assert payload["lehmer_index"] == 1

    def test_128_bit_input(self, capsys):
        rc, out, _ = run_cli(capsys, "classify", "330019822807208371201")
        payload = json.loads(out)
        assert payload["is_carmichael"] is True
        assert payload["lehmer_index"] == 10

    def test_zero_is_usage_error(self, capsys):
        rc, out, err = run_cli(capsys, "classify", "0")
        assert rc == 1 and out == "" and "error" in err

    def test_csv_format(self, capsys):
        rc, out, _ = run_cli(capsys, "classify", "561", "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert rows[0]["phi"] == "320" and rows[0]["is_carmichael"] == "true"


class TestCount:
    def test_golden_csv(self, capsys):
        rc, out, _ = run_cli(capsys, "count", "--limit", "100", "--k", "2",
                             "--format", "csv")
        assert rc == 0
        assert out == "k,X,count\n2,10,5\n2,100,26\n"

    def test_json_multi_k(self, capsys):
        rc, out, _ = run_cli(capsys, "count", "--limit", "1000", "--k", "2,inf")
        payload = json.loads(out)
        rows = {(r["k"], r["X"]): r["count"] for r in payload["rows"]}
        assert rows[(2, 1000)] == 170
        assert rows[("inf", 1000)] == 188

    def test_scientific_limit(self, capsys):
        rc, out, _ = run_cli(capsys, "count", "--limit", "1e2", "--k", "2",
                             "--format", "csv")
        assert rc == 0 and out.endswith("2,100,26\n")

    def test_limit_above_ceiling_is_exit_2(self, capsys):
        rc, out, err = run_cli(capsys, "count", "--limit", "1e8", "--k", "2")
        assert rc == 2 and "exceeds" in err

    def test_bad_limit_is_usage_error(self, capsys):
        rc, _, _ = run_cli(capsys, "count", "--limit", "banana", "--k", "2")
        assert rc == 1
        rc, _, _ = run_cli(capsys, "count", "--limit", "5000", "--k", "2")
        assert rc == 1

    def test_identical_across_workers(self, capsys):
        rc1, out1, _ = run_cli(capsys, "count", "--limit", "1e5", "--k",
                               "2,3,4,5,inf", "--format", "csv")
        rc2, out2, _ = run_cli(capsys, "count", "--limit", "1e5", "--k",
                               "2,3,4,5,inf", "--format", "csv",
                               "--workers", "2", "--segment-size", "7777")
        assert rc1 == rc2 == 0
        assert out1 == out2

    def test_prime_cache_flag(self, capsys, tmp_path):
        path = str(tmp_path / "cache.bin")
        rc1, out1, _ = run_cli(capsys, "count", "--limit", "1e4", "--k", "2",
                               "--prime-cache", path, "--format", "csv")
        assert rc1 == 0 and (tmp_path / "cache.bin").exists()
        rc2, out2, _ = run_cli(capsys, "count", "--limit", "1e4", "--k", "2",
                               "--prime-cache", path, "--format", "csv")
        assert out1 == out2


class TestList:
    def test_bfile_golden(self, capsys):
        rc, out, _ = run_cli(capsys, "list", "--set", "l2-composites",
                             "--limit", "3000", "--format", "bfile")
        assert rc == 0
        assert out == "1 561\n2 1105\n3 1729\n4 2465\n"

    def test_empty_bfile(self, capsys):
        rc, out, _ = run_cli(capsys, "list", "--set", "l2-composites",
                             "--limit", "500", "--format", "bfile")
        assert rc == 0 and out == ""

    def test_json_values_are_strings(self, capsys):
        rc, out, _ = run_cli(capsys, "list", "--set", "carmichael",
                             "--limit", "3000")
        payload = json.loads(out)
        assert payload["values"] == ["561", "1105", "1729", "2465", "2821"]
        assert payload["count"] == 5

    def test_lk_parameterized_set(self, capsys):
        rc, out, _ = run_cli(capsys, "list", "--set", "lk-composites:3",
                             "--limit", "100", "--format", "csv")
        assert out == "n\n15\n85\n91\n"

    def test_unknown_set(self, capsys):
        rc, _, err = run_cli(capsys, "list", "--set", "mersenne", "--limit", "10")
        assert rc == 1 and "unknown set" in err


class TestAlpha:
    def test_search_json(self, capsys):
        rc, out, _ = run_cli(capsys, "alpha", "--k", "1", "--limit", "1e4")
        payload = json.loads(out)
        assert payload == {"k": 1, "found": True, "n": "561", "omega": 3,
                           "in_next": True, "bound": "10000"}

    def test_not_found(self, capsys):
        rc, out, _ = run_cli(capsys, "alpha", "--k", "9", "--limit", "1000")
        payload = json.loads(out)
        assert payload == {"k": 9, "found": False, "bound": "1000"}
        assert rc == 0

    def test_verify_golden(self, capsys):
        rc, out, _ = run_cli(capsys, "alpha-verify", "--k", "3", "--n", "838201")
        assert rc == 0
        assert out == (
            '{\n  "k": 3,\n  "found": true,\n  "n": "838201",\n'
            '  "omega": 4,\n  "in_next": true,\n  "bound": "0"\n}\n'
        )

    def test_verify_128_bit(self, capsys):
        rc, out, _ = run_cli(capsys, "alpha-verify", "--k", "9",
                             "--n", "330019822807208371201")
        payload = json.loads(out)
        assert payload["omega"] == 10 and payload["in_next"] is True

    def test_verify_failure_is_exit_3(self, capsys):
        rc, out, err = run_cli(capsys, "alpha-verify", "--k", "2", "--n", "561")
        assert rc == 3 and "L_2" in err
        rc, _, err = run_cli(capsys, "alpha-verify", "--k", "1", "--n", "15")
        assert rc == 3

    def test_csv_output(self, capsys):
        rc, out, _ = run_cli(capsys, "alpha", "--k", "2", "--limit", "1e4",
                             "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert rows[0]["n"] == "2821" and rows[0]["found"] == "true"


class TestChernick:
    def test_single(self, capsys):
        rc, out, _ = run_cli(capsys, "chernick", "--k", "3", "--m", "1")
        payload = json.loads(out)
        assert payload["value"] == "1729"
        assert payload["observed_index"] == 2
        assert payload["guaranteed_index_k"] is False

    def test_scan_csv(self, capsys):
        rc, out, _ = run_cli(capsys, "chernick", "--k", "3", "--m-max", "6",
                             "--format", "csv")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 6
        assert rows[0]["value"] == "1729"
        assert rows[5]["value"] == "294409"
        assert rows[5]["guaranteed_index_k"] == "true"

    def test_overflow_is_exit_2(self, capsys):
        rc, _, err = run_cli(capsys, "chernick", "--k", "40", "--m", "1000000")
        assert rc == 2 and "2**127" in err

    def test_k_too_small_is_usage_error(self, capsys):
        rc, _, _ = run_cli(capsys, "chernick", "--k", "2", "--m", "1")
        assert rc == 1


class TestSemiprime:
    def test_golden_csv(self, capsys):
        rc, out, _ = run_cli(capsys, "semiprime", "7", "13", "--k", "3",
                             "--format", "csv")
        assert out == "p,q,a,b,d,alpha,beta,k,criterion,direct\n7,13,1,2,3,1,1,3,true,true\n"

    def test_json_without_k(self, capsys):
        rc, out, _ = run_cli(capsys, "semiprime", "5", "13")
        payload = json.loads(out)
        assert payload == {"p": "5", "q": "13", "a": 2, "b": 2, "d": "1",
                           "alpha": "1", "beta": "3"}

    def test_composite_input_is_usage_error(self, capsys):
        rc, _, err = run_cli(capsys, "semiprime", "9", "13")
        assert rc == 1


class TestPseudoBase:
    def test_561(self, capsys):
        rc, out, _ = run_cli(capsys, "pseudo-base", "561")
        payload = json.loads(out)
        assert payload == {"n": "561", "base": "103", "degenerate": False,
                           "fermat_to_base": True}

    def test_degenerate(self, capsys):
        rc, out, _ = run_cli(capsys, "pseudo-base", "15")
        payload = json.loads(out)
        assert payload["degenerate"] is True and payload["base"] == "1"

    def test_prime_rejected(self, capsys):
        rc, _, _ = run_cli(capsys, "pseudo-base", "97")
        assert rc == 1


class TestUsage:
    def test_unknown_flag(self, capsys):
        rc, _, err = run_cli(capsys, "count", "--limit", "100", "--wibble")
        assert rc == 1 and "usage" in err

    def test_unknown_command(self, capsys):
        rc, _, _ = run_cli(capsys, "transmogrify")
        assert rc == 1

    def test_no_command(self, capsys):
        rc, _, _ = run_cli(capsys)
        assert rc == 1

    def test_help_exits_zero(self, capsys):
        rc, out, _ = run_cli(capsys, "--help")
        assert rc == 0 and "classify" in out

    def test_bfile_not_available_for_classify(self, capsys):
        rc, _, _ = run_cli(capsys, "classify", "15", "--format", "bfile")
        assert rc == 1

    def test_bad_workers_is_usage_error(self, capsys):
        rc, _, _ = run_cli(capsys, "count", "--limit", "100", "--k", "2",
                           "--workers", "0")
        assert rc == 1


class TestEmitBfile:
    def test_a173703_prefix(self):
        text = emit_bfile([561, 1105, 1729, 2465, 6601])
        assert text == "1 561\n2 1105\n3 1729\n4 2465\n5 6601\n"

    def test_a207080_prefix(self):
        text = emit_bfile([561, 2821, 838201], offset=1)
        assert text == "1 561\n2 2821\n3 838201\n"

    def test_empty(self):
        assert emit_bfile([]) == ""

    def test_offset(self):
        assert emit_bfile([5, 7], offset=10) == "10 5\n11 7\n"

    def test_requires_ascending(self):
        with pytest.raises(ValueError):
            emit_bfile([5, 5])
        with pytest.raises(ValueError):
            emit_bfile([7, 5])


class TestRunConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            RunConfig(limit=10, ks=(), fmt="yaml", segment_size=None,
                      workers=1, allow_large=False, prime_cache=None)
        with pytest.raises(ValueError):
            RunConfig(limit=10, ks=(), fmt="json", segment_size=None,
                      workers=0, allow_large=False, prime_cache=None)
        cfg = RunConfig(limit=10, ks=(2,), fmt="json", segment_size=None,
                        workers=1, allow_large=True, prime_cache=None)
        assert cfg.max_limit == 10**8


class TestReportConsistency:
    def test_fields_mutually_consistent(self):
        from klehmer.arith import euler_phi, radical, factorize, carmichael_lambda

        for n in (2, 9, 15, 91, 561, 1105, 8481, 41041):
            rep = classification_report(n)
            f = dict(rep.factorization)
            import math as _math

            assert _math.prod(p**e for p, e in f.items()) == n
            assert rep.phi == euler_phi(factorize(n))
            assert rep.lam == carmichael_lambda(factorize(n))
            assert rep.rad_phi == radical(factorize(rep.phi))
