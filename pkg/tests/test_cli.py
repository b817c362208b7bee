"""Command-line surface: reproducibility, manifests, witnesses, exit codes."""

import json
from pathlib import Path

import pytest

from prefforge import parse_pabulib, parse_preflib, sample
from prefforge.cli import main, witness_from_json, witness_to_json
from prefforge.regimes import REGIMES


def run(*argv) -> int:
    return main([str(a) for a in argv])


class TestSample:
    def test_byte_identical_reruns(self, tmp_path):
        out1, out2 = tmp_path / "a.soc", tmp_path / "b.soc"
        args = ["sample", "--culture", "mallows", "--m", 10, "--n", 100,
                "--norm-phi", 0.5, "--seed", 7]
        assert run(*args, "--out", out1) == 0
        assert run(*args, "--out", out2) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_manifest_regenerates_file(self, tmp_path):
        out = tmp_path / "urn.soc"
        assert run("sample", "--culture", "urn", "--m", 4, "--n", 12,
                   "--alpha", 0.3, "--seed", 5, "--out", out) == 0
        manifest = json.loads(Path(str(out) + ".manifest.json").read_text())
        again = sample(
            manifest["culture"], manifest["m"], manifest["n"], manifest["seed"],
            alpha=manifest["alpha"],
        )
        assert parse_preflib(out.read_bytes()).to_ordinal() == again.election

    def test_witness_sidecar_and_validate(self, tmp_path):
        out = tmp_path / "walsh.soc"
        assert run("sample", "--culture", "walsh", "--m", 5, "--n", 30,
                   "--seed", 3, "--out", out) == 0
        witness_path = Path(str(out) + ".witness.json")
        assert witness_path.exists()
        assert run("validate", out, "--property", "sp",
                   "--witness", witness_path) == 0

    def test_validate_fails_on_wrong_witness(self, tmp_path):
        out = tmp_path / "ic.soc"
        assert run("sample", "--culture", "ic", "--m", 5, "--n", 40,
                   "--seed", 1, "--out", out) == 0
        witness = tmp_path / "w.json"
        witness.write_text('{"variant": "single_peaked", "order": [0,1,2,3,4]}')
        # an IC election is essentially never single-peaked on a fixed axis
        assert run("validate", out, "--property", "sp", "--witness", witness) == 1

    def test_approval_formats(self, tmp_path):
        pb = tmp_path / "r.pb"
        toi = tmp_path / "r.toi"
        base = ["sample", "--culture", "resampling", "--m", 6, "--n", 15,
                "--p", 0.25, "--phi", 0.5, "--seed", 2]
        assert run(*base, "--out", pb) == 0
        assert run(*base, "--out", toi, "--format", "toi") == 0
        a = parse_pabulib(pb.read_bytes()).election
        b = parse_preflib(toi.read_bytes()).to_approval()
        assert a == b

    def test_unknown_culture_exits_2(self, tmp_path, capsys):
        with pytest.raises(SystemExit) as exc:
            run("sample", "--culture", "zzz", "--m", 3, "--n", 3,
                "--out", tmp_path / "x.soc")
        assert exc.value.code == 2

    def test_bad_parameter_exits_2(self, tmp_path):
        code = run("sample", "--culture", "mallows", "--m", 4, "--n", 5,
                   "--phi", 1.7, "--seed", 0, "--out", tmp_path / "x.soc")
        assert code == 2

    def test_missing_sizes_exit_2(self, tmp_path):
        assert run("sample", "--culture", "ic", "--out", tmp_path / "x.soc") == 2

    def test_io_failure_exits_1(self, tmp_path):
        out = tmp_path / "missing-dir" / "x.soc"
        assert run("sample", "--culture", "ic", "--m", 3, "--n", 3,
                   "--seed", 0, "--out", out) == 1

    def test_count_generates_deterministic_batch(self, tmp_path):
        out = tmp_path / "batch.soc"
        assert run("sample", "--culture", "ic", "--m", 4, "--n", 10,
                   "--seed", 100, "--out", out, "--count", 3) == 0
        files = sorted(p.name for p in tmp_path.glob("batch-*.soc"))
        assert files == ["batch-000.soc", "batch-001.soc", "batch-002.soc"]
        manifests = [
            json.loads(line)
            for line in Path(str(out) + ".manifest.json").read_text().splitlines()
        ]
        assert [m["seed"] for m in manifests] == [100, 101, 102]
        # each file regenerates from its own seed
        one = parse_preflib((tmp_path / "batch-001.soc").read_bytes()).to_ordinal()
        assert one == sample("ic", 4, 10, 101).election

    def test_regime_sizes_in_range(self, tmp_path):
        out = tmp_path / "lab.soc"
        assert run("sample", "--culture", "ic", "--regime", "multiwinner_lab",
                   "--seed", 11, "--out", out) == 0
        e = parse_preflib(out.read_bytes()).to_ordinal()
        regime = REGIMES["multiwinner_lab"]
        assert regime.candidates[0] <= e.num_candidates <= regime.candidates[1]
        assert regime.voters[0] <= e.num_voters <= regime.voters[1]

    def test_sampled_file_passes_uniformity_check(self, tmp_path):
        out = tmp_path / "big-ic.soc"
        assert run("sample", "--culture", "ic", "--m", 3, "--n", 60_000,
                   "--seed", 8, "--out", out) == 0
        e = parse_preflib(out.read_bytes()).to_ordinal()
        counts: dict = {}
        for vote in e:
            counts[vote] = counts.get(vote, 0) + 1
        tv = 0.5 * sum(abs(c / 60_000 - 1 / 6) for c in counts.values())
        assert len(counts) == 6 and tv <= 0.02

    def test_seed_env_var(self, tmp_path, monkeypatch):
        monkeypatch.setenv("PREFFORGE_SEED", "99")
        out1 = tmp_path / "e1.soc"
        assert run("sample", "--culture", "ic", "--m", 3, "--n", 5, "--out", out1) == 0
        out2 = tmp_path / "e2.soc"
        assert run("sample", "--culture", "ic", "--m", 3, "--n", 5, "--seed", 99,
                   "--out", out2) == 0
        assert out1.read_bytes() == out2.read_bytes()


class TestMapAndMicroscope:
    def test_microscope_of_identity_is_one_row(self, tmp_path):
        out = tmp_path / "id.soc"
        assert run("sample", "--culture", "id", "--m", 4, "--n", 20,
                   "--seed", 0, "--out", out) == 0
        assert run("microscope", out, "--out", tmp_path / "mic") == 0
        rows = (tmp_path / "mic.csv").read_text().splitlines()
        assert rows[0] == "label,x,y,radius"
        assert len(rows) == 2

    def test_map_outputs(self, tmp_path):
        files = []
        for i, culture in enumerate(("ic", "walsh", "conitzer")):
            out = tmp_path / f"{culture}.soc"
            assert run("sample", "--culture", culture, "--m", 4, "--n", 8,
                       "--seed", i, "--out", out) == 0
            files.append(out)
        assert run("map", *files, "--out", tmp_path / "map",
                   "--distance", "exact", "--seed", 1) == 0
        payload = json.loads((tmp_path / "map.json").read_text())
        labels = [p["label"] for p in payload["points"]]
        assert labels == ["ic", "walsh", "conitzer", "ID", "AN", "UN"]

    def test_map_size_mismatch_exits_2(self, tmp_path):
        a, b = tmp_path / "a.soc", tmp_path / "b.soc"
        run("sample", "--culture", "ic", "--m", 3, "--n", 5, "--seed", 0, "--out", a)
        run("sample", "--culture", "ic", "--m", 3, "--n", 6, "--seed", 0, "--out", b)
        assert run("map", a, b, "--out", tmp_path / "m") == 2

    def test_unreadable_input_exits_1(self, tmp_path):
        assert run("map", tmp_path / "nope.soc", "--out", tmp_path / "m") == 1
        assert run("microscope", tmp_path / "nope.soc", "--out", tmp_path / "m") == 1


class TestConvert:
    def test_soc_to_soc_is_stable(self, tmp_path):
        src = tmp_path / "src.soc"
        run("sample", "--culture", "ic", "--m", 4, "--n", 10, "--seed", 4,
            "--out", src)
        mid = tmp_path / "mid.soc"
        assert run("convert", src, mid) == 0
        back = tmp_path / "back.soc"
        assert run("convert", mid, back) == 0
        assert mid.read_bytes() == back.read_bytes()
        assert parse_preflib(mid.read_bytes()).to_ordinal() == parse_preflib(
            src.read_bytes()
        ).to_ordinal()

    def test_pb_toi_round_trip(self, tmp_path):
        src = tmp_path / "src.pb"
        run("sample", "--culture", "p-ic", "--m", 5, "--n", 12, "--p", 0.3,
            "--seed", 6, "--out", src)
        toi = tmp_path / "x.toi"
        assert run("convert", src, toi) == 0
        pb = tmp_path / "y.pb"
        assert run("convert", toi, pb) == 0
        assert parse_pabulib(pb.read_bytes()).election == parse_pabulib(
            src.read_bytes()
        ).election

    def test_ordinal_to_pb_rejected(self, tmp_path):
        src = tmp_path / "src.soc"
        run("sample", "--culture", "ic", "--m", 3, "--n", 4, "--seed", 0, "--out", src)
        assert run("convert", src, tmp_path / "x.pb") == 2


class TestWitnessJson:
    def test_round_trip_axis(self):
        result = sample("spoc", 5, 10, seed=3)
        text = witness_to_json(result.witness)
        assert witness_from_json(text) == result.witness

    def test_round_trip_tree(self):
        result = sample("group-separable", 6, 10, seed=3, tree="caterpillar")
        text = witness_to_json(result.witness)
        assert witness_from_json(text) == result.witness
