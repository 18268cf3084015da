import json

import pytest
from hypothesis import given, strategies as st

from adelics.cli import EXIT_INVALID, EXIT_OK, EXIT_PARSE, full_report, run
from adelics.errors import ParseError
from adelics.exprgrammar import format_expr, parse_expr
from adelics.localization import PrimeSet

SIGMA23 = PrimeSet.finite([2, 3])


class TestGrammar:
    def test_all_atoms(self):
        e = parse_expr("R x Qp(2) x Zp(5) x Z/7 x ZS x Sol x Pruf(5) x Qd x QSol", SIGMA23)
        assert len(e.factors) == 9

    def test_exponent_and_whitespace(self):
        assert parse_expr("R^2xZS", SIGMA23) == parse_expr("  R ^ 2 x ZS ", SIGMA23)

    def test_token_prefix_disambiguation(self):
        # QSol must not lex as Q + Sol; Zp( vs ZS; Qd vs Qp(
        e = parse_expr("QSol x Qd x ZS x Zp(5)", SIGMA23)
        kinds = {a.kind for a, _ in e.factors}
        assert kinds == {"Qd", "QSol", "ZS", "Zp"}

    def test_empty_is_trivial(self):
        assert parse_expr("", SIGMA23).is_trivial

    def test_parse_error_offset_and_expected(self):
        with pytest.raises(ParseError) as ei:
            parse_expr("R x ?", SIGMA23)
        assert ei.value.offset == 4
        assert "R" in ei.value.expected

    def test_missing_paren(self):
        with pytest.raises(ParseError) as ei:
            parse_expr("Qp(5", SIGMA23)
        assert ")" in ei.value.expected

    def test_trailing_garbage(self):
        with pytest.raises(ParseError):
            parse_expr("R R", SIGMA23)

    ATOMS = ["R", "Qp(2)", "Qp(7)", "Zp(5)", "Z/7", "ZS", "Sol", "Pruf(5)", "Qd", "QSol"]

    @given(st.lists(st.tuples(st.sampled_from(ATOMS), st.integers(1, 4)), max_size=5))
    def test_format_parse_roundtrip(self, pairs):
        text = " x ".join(a if e == 1 else f"{a}^{e}" for a, e in pairs)
        parsed = parse_expr(text, SIGMA23)
        assert parse_expr(format_expr(parsed), SIGMA23) == parsed


class TestJsonReport:
    def test_schema_keys(self):
        report = full_report(parse_expr("R x Qp(2) x ZS", SIGMA23))
        assert set(report) == {"sigma", "valid", "flags", "first", "second", "third"}
        assert set(report["first"]) == {"n", "np", "n_part", "witness"}
        assert set(report["second"]) == {"n", "np", "k", "compact_part"}
        assert set(report["third"]) == {"n", "np", "k", "discrete_part"}
        assert report["first"]["np"] == {"2": 1}

    def test_invalid_report(self):
        report = full_report(parse_expr("Zp(2)", SIGMA23))
        assert report["valid"] is False and report["violations"]
        assert "flags" not in report

    def test_unavailable_forms_are_null(self):
        report = full_report(parse_expr("Qp(5) x Zp(7)", SIGMA23))
        assert report["second"] is None  # Qp(5) is not compactly generated
        assert report["third"] is None   # Zp(7) has small submodules

    def test_json_serializable(self):
        report = full_report(parse_expr("R^2 x Sol x Z/7", SIGMA23))
        json.dumps(report)

    REPORT_SCHEMA = {
        "type": "object",
        "required": ["sigma", "valid", "flags", "first", "second", "third"],
        "additionalProperties": False,
        "properties": {
            "sigma": {"type": "string"},
            "valid": {"const": True},
            "flags": {
                "type": "object",
                "required": ["compact", "discrete", "connected",
                             "totally_disconnected", "elliptic",
                             "compactly_generated", "nss", "divisible",
                             "lie_type"],
                "additionalProperties": False,
                "properties": {"lie_type": {"enum": ["unknown", "no"]}},
                "patternProperties": {"^(?!lie_type)": {"type": "boolean"}},
            },
            "first": {
                "type": "object",
                "required": ["n", "np", "n_part", "witness"],
                "properties": {
                    "n": {"type": "integer", "minimum": 0},
                    "np": {"type": "object",
                           "patternProperties": {"^[0-9]+$": {"type": "integer"}}},
                    "n_part": {"type": "string"},
                    "witness": {"type": "string"},
                },
            },
            "second": {"type": ["object", "null"]},
            "third": {"type": ["object", "null"]},
        },
    }

    def test_schema_validates(self):
        import jsonschema

        for text in ("R x Qp(2) x ZS", "Zp(5) x Sol", "Qp(5)", ""):
            report = full_report(parse_expr(text, SIGMA23))
            jsonschema.validate(report, self.REPORT_SCHEMA)


class TestCliExitCodes:
    def test_classify_ok(self, capsys):
        code = run(["classify", "R x ZS", "--sigma", "primes:2,3", "--json"])
        assert code == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["valid"] is True
        assert payload["flags"]["compactly_generated"] is True

    def test_classify_parse_error(self, capsys):
        assert run(["classify", "R x x", "--sigma", "primes:2"]) == EXIT_PARSE
        assert "parse error" in capsys.readouterr().err

    def test_classify_invalid(self, capsys):
        assert run(["classify", "Zp(2)", "--sigma", "primes:2"]) == EXIT_INVALID

    def test_decompose_forms(self, capsys):
        assert run(["decompose", "R x ZS x Zp(5)", "--which", "2",
                    "--sigma", "primes:2,3", "--json"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["second"]["k"] == 1

    def test_decompose_unavailable(self, capsys):
        assert run(["decompose", "Qp(5)", "--which", "2",
                    "--sigma", "primes:2"]) == EXIT_INVALID

    def test_decompose_q(self, capsys):
        assert run(["decompose", "R x Qd", "--which", "q",
                    "--sigma", "primes:all", "--json"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["discrete_rank"] == 1

    def test_dual_output(self, capsys):
        run(["dual", "Zp(5) x ZS", "--sigma", "primes:2,3"])
        out = capsys.readouterr().out.strip()
        assert out == "Sol x Pruf(5)"

    def test_adele_eval(self, capsys):
        code = run(["adele", "eval", "1/2 + 1/2", "--sigma", "primes:2,3", "--json"])
        assert code == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["integral"] is True and payload["s"] == 1

    def test_adele_literal(self, capsys):
        code = run(["adele", "eval", "(1/2 | 2: 3/4, 3: 1/3)",
                    "--sigma", "primes:2,3", "--json"])
        assert code == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["s"] == 12

    def test_adele_parse_error(self):
        assert run(["adele", "eval", "1/2 +", "--sigma", "primes:2"]) == EXIT_PARSE

    def test_pair_frozen_example(self, capsys):
        code = run(["pair", "--atom", "Qp:2", "--chi", "3/8", "--x", "1"])
        assert code == EXIT_OK
        assert capsys.readouterr().out.strip() == "3/8 turn"

    def test_profinite_digits(self, capsys):
        assert run(["profinite", "5", "--level", "3"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "fact[1,2,0]"

    def test_profinite_mod(self, capsys):
        assert run(["profinite", "23", "--level", "5", "--mod", "24"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "23"

    def test_profinite_component(self, capsys):
        assert run(["profinite", "24", "--level", "10",
                    "--component", "2", "--prec", "6"]) == EXIT_OK
        out = capsys.readouterr().out.strip()
        assert out.startswith("2^3*")

    def test_profinite_bad_mod(self, capsys):
        assert run(["profinite", "5", "--level", "3", "--mod", "5"]) == EXIT_INVALID
