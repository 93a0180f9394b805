"""Command-line tests for torsioncert.main."""

import pytest

from torsioncert.main import EXIT_ERROR, EXIT_FAILED, EXIT_OK, MANIFEST_NAME, build_parser, main


@pytest.fixture
def run(output_dir, tmp_path):
    """Invoke main with isolated output and cache directories."""

    def _run(*argv):
        base = ["--output-dir", str(output_dir), "--cache-dir", str(tmp_path / "cache")]
        return main(base + ["--jobs", "1", *argv])

    return _run


class TestParser:
    def test_subcommand_required(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args([])

    def test_int_list(self):
        args = build_parser().parse_args(["exclude", "--d", "3", "--primes", "41,43"])
        assert args.primes == (41, 43)

    def test_bad_int_list(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["exclude", "--d", "3", "--primes", "41,x"])


def test_gate(run, capsys):
    assert run("gate", "--d", "26") == EXIT_OK
    assert "d=26 gate=true" in capsys.readouterr().out
    run("gate", "--d", "25")
    assert "d=25 gate=false" in capsys.readouterr().out


def test_md_table_subset(run, tmp_path):
    output = tmp_path / "table.txt"
    assert run("md-table", "--d-min", "3", "--d-max", "5", "--output", str(output)) == EXIT_OK
    assert "d=3 M=29 PASS" in output.read_text()


def test_md_table_outside_range(run):
    assert run("md-table", "--d-min", "2", "--d-max", "5") == EXIT_ERROR


def test_pointcount(run, capsys):
    assert run("pointcount", "--d-min", "3", "--d-max", "6", "--p-max", "120") == EXIT_OK
    out = capsys.readouterr().out
    assert "d=6 exceptions=" in out


class TestExclude:
    def test_writes_certificates_and_manifest(self, run, output_dir, capsys):
        assert run("--no-cache", "exclude", "--d", "3", "--primes", "11,13") == EXIT_OK
        assert (output_dir / MANIFEST_NAME).exists()
        assert sorted(p.name for p in output_dir.glob("*.cert")) == [
            "d3_p00011.cert",
            "d3_p00013.cert",
        ]
        assert "error=0" in capsys.readouterr().out

    def test_expectation_not_met(self, run, tmp_path):
        expected = tmp_path / "expected.txt"
        expected.write_text("3 13 excluded\n")
        code = run("--no-cache", "exclude", "--d", "3", "--primes", "13",
                   "--expectations", str(expected))
        assert code == EXIT_FAILED

    def test_degree_out_of_range(self, run):
        assert run("exclude", "--d", "8", "--primes", "101") == EXIT_ERROR


class TestReplay:
    def test_replay_written_certificate(self, run, output_dir, capsys):
        run("--no-cache", "exclude", "--d", "3", "--primes", "13")
        capsys.readouterr()
        assert run("replay", str(output_dir / "d3_p00013.cert")) == EXIT_OK
        assert "d3_p00013.cert: match" in capsys.readouterr().out

    def test_missing_certificate(self, run, tmp_path):
        assert run("replay", str(tmp_path / "absent.cert")) == EXIT_ERROR
