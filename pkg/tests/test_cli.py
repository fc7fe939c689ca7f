import json

import pytest

from synth import write_aligned_files

from sscorpus.cli import main
from sscorpus.ingest import read_corpus


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def make_dataset(tmp_path, n_refs=2, n_lines=4, name="dev"):
    lines = [f"the old source sentence number {i}." for i in range(n_lines)]
    refs = [[f"short version {r} of sentence {i}." for i in range(n_lines)] for r in range(n_refs)]
    (tmp_path / f"{name}.src").write_text("".join(l + "\n" for l in lines), encoding="utf-8")
    for r in range(n_refs):
        (tmp_path / f"{name}.ref.{r}").write_text(
            "".join(l + "\n" for l in refs[r]), encoding="utf-8"
        )
    return lines, refs


class TestBuild:
    def test_build_writes_corpus_and_summary(self, tmp_path, capsys):
        target, translations = write_aligned_files(tmp_path, 80)
        out = tmp_path / "corpus"
        code, stdout, _ = run(
            capsys, "build", "--target", str(target), "--translations", str(translations),
            "--out", str(out),
        )
        assert code == 0
        assert "input pairs" in stdout and "kept" in stdout
        assert (tmp_path / "corpus.complex").exists()
        assert (tmp_path / "corpus.simple").exists()
        meta = json.loads((tmp_path / "corpus.meta.json").read_text(encoding="utf-8"))
        assert meta["config"]["h_bleu"] == 15.0
        assert meta["drop_tally"]["n_input"] == 80
        corpus = read_corpus(out)
        assert meta["drop_tally"]["n_kept"] == len(corpus.pairs) > 0

    def test_impossible_threshold_keeps_nothing(self, tmp_path, capsys):
        target, translations = write_aligned_files(tmp_path, 30)
        code, stdout, _ = run(
            capsys, "build", "--target", str(target), "--translations", str(translations),
            "--out", str(tmp_path / "none"), "--h-fres", "1000",
        )
        assert code == 0
        assert json.loads((tmp_path / "none.meta.json").read_text())["stats"]["total_pairs"] == 0

    def test_missing_input_file_exits_1(self, tmp_path, capsys):
        code, _, stderr = run(
            capsys, "build", "--target", str(tmp_path / "absent.txt"),
            "--translations", str(tmp_path / "also-absent.txt"), "--out", str(tmp_path / "x"),
        )
        assert code == 1
        assert "error:" in stderr

    def test_misaligned_inputs_exit_1(self, tmp_path, capsys):
        target = tmp_path / "t.txt"
        translations = tmp_path / "x.txt"
        target.write_text("a\nb\nc\n", encoding="utf-8")
        translations.write_text("1\n2\n", encoding="utf-8")
        code, _, stderr = run(
            capsys, "build", "--target", str(target), "--translations", str(translations),
            "--out", str(tmp_path / "x"),
        )
        assert code == 1
        assert "3 lines" in stderr and "2 lines" in stderr

    def test_usage_error_exits_2(self, tmp_path, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["build", "--target"])
        assert excinfo.value.code == 2

    def test_translations_and_translator_cmd_are_exclusive(self, tmp_path, capsys):
        target, translations = write_aligned_files(tmp_path, 5)
        code, _, stderr = run(
            capsys, "build", "--target", str(target), "--translations", str(translations),
            "--translator-cmd", "cat", "--out", str(tmp_path / "x"),
        )
        assert code == 1
        assert "exactly one" in stderr

    def test_identity_translator_drops_everything(self, tmp_path, capsys):
        target, _ = write_aligned_files(tmp_path, 25)
        code, _, _ = run(
            capsys, "build", "--target", str(target), "--bridge", str(target),
            "--translator-cmd", "cat", "--out", str(tmp_path / "idty"),
        )
        assert code == 0
        meta = json.loads((tmp_path / "idty.meta.json").read_text())
        assert meta["stats"]["total_pairs"] == 0
        assert meta["drop_tally"]["dropped_identity"] == 25

    def test_lang_flows_into_meta(self, tmp_path, capsys):
        target, translations = write_aligned_files(tmp_path, 10)
        code, _, _ = run(
            capsys, "build", "--target", str(target), "--translations", str(translations),
            "--out", str(tmp_path / "fr"), "--lang", "fr",
            "--no-bleu-selector", "--no-fres-selector",
        )
        assert code == 0
        meta = json.loads((tmp_path / "fr.meta.json").read_text())
        assert meta["lang"] == "fr"

    def test_tsv_format(self, tmp_path, capsys):
        target, translations = write_aligned_files(tmp_path, 40)
        code, _, _ = run(
            capsys, "build", "--target", str(target), "--translations", str(translations),
            "--out", str(tmp_path / "c"), "--format", "tsv",
        )
        assert code == 0
        header = (tmp_path / "c.tsv").read_text(encoding="utf-8").splitlines()[0]
        assert header == "complex\tsimple\tbleu\tfres_complex\tfres_simple\tfres_gap"


class TestEval:
    def test_hypotheses_equal_to_single_reference_scores_100(self, tmp_path, capsys):
        make_dataset(tmp_path, n_refs=1)
        hyp_path = tmp_path / "hyp.txt"
        hyp_path.write_bytes((tmp_path / "dev.ref.0").read_bytes())
        code, stdout, _ = run(
            capsys, "eval", "--dataset", str(tmp_path), "--hypotheses", str(hyp_path),
        )
        assert code == 0
        report = json.loads(stdout)
        assert report["bleu"] == pytest.approx(100.0, abs=1e-6)
        assert report["n_items"] == 4

    def test_row_source_shortcut(self, tmp_path, capsys):
        make_dataset(tmp_path, n_refs=2)
        code, stdout, _ = run(capsys, "eval", "--dataset", str(tmp_path), "--row", "source")
        assert code == 0
        report = json.loads(stdout)
        assert set(report) == {
            "sari", "f_keep", "f_add", "f_delete", "fkgl", "fres", "bleu", "n_items",
        }

    def test_misaligned_hypotheses_exit_1(self, tmp_path, capsys):
        make_dataset(tmp_path)
        hyp_path = tmp_path / "hyp.txt"
        hyp_path.write_text("just one line.\n", encoding="utf-8")
        code, _, stderr = run(
            capsys, "eval", "--dataset", str(tmp_path), "--hypotheses", str(hyp_path),
        )
        assert code == 1
        assert "1 hypotheses for 4 sources" in stderr

    def test_requires_exactly_one_input_mode(self, tmp_path, capsys):
        make_dataset(tmp_path)
        code, _, stderr = run(capsys, "eval", "--dataset", str(tmp_path))
        assert code == 1
        assert "exactly one" in stderr


class TestStats:
    def test_stats_match_hand_counts(self, tmp_path, capsys):
        (tmp_path / "c.complex").write_text("a b\na c\n", encoding="utf-8")
        (tmp_path / "c.simple").write_text("x\ny z\n", encoding="utf-8")
        code, stdout, _ = run(capsys, "stats", "--corpus", str(tmp_path / "c"))
        assert code == 0
        stats = json.loads(stdout)
        assert stats == {
            "vocab_complex": 3,
            "vocab_simple": 3,
            "avg_len_complex": 2.0,
            "avg_len_simple": 1.5,
            "total_pairs": 2,
        }


class TestAblate:
    def test_writes_four_variants_with_subset_laws(self, tmp_path, capsys):
        target, translations = write_aligned_files(tmp_path, 120)
        code, stdout, _ = run(
            capsys, "ablate", "--target", str(target), "--translations", str(translations),
            "--out", str(tmp_path / "ab"),
        )
        assert code == 0
        kept = json.loads(stdout)["kept"]
        assert set(kept) == {"pseudo", "no_bleu", "no_fres", "full"}
        assert kept["full"] <= kept["no_bleu"] <= kept["pseudo"] == 120
        assert kept["full"] <= kept["no_fres"] <= kept["pseudo"]
        for name in kept:
            meta = json.loads((tmp_path / f"ab.{name}.meta.json").read_text())
            assert meta["stats"]["total_pairs"] == kept[name]


class TestSubset:
    def test_subset_is_deterministic(self, tmp_path, capsys):
        target, translations = write_aligned_files(tmp_path, 60)
        run(
            capsys, "build", "--target", str(target), "--translations", str(translations),
            "--out", str(tmp_path / "full"), "--no-bleu-selector", "--no-fres-selector",
        )
        for out in ("s1", "s2"):
            code, _, _ = run(
                capsys, "subset", "--corpus", str(tmp_path / "full"), "-n", "15",
                "--seed", "7", "--out", str(tmp_path / out),
            )
            assert code == 0
        assert (tmp_path / "s1.complex").read_bytes() == (tmp_path / "s2.complex").read_bytes()
        assert (tmp_path / "s1.simple").read_bytes() == (tmp_path / "s2.simple").read_bytes()

    def test_oversample_exits_1(self, tmp_path, capsys):
        target, translations = write_aligned_files(tmp_path, 10)
        run(
            capsys, "build", "--target", str(target), "--translations", str(translations),
            "--out", str(tmp_path / "full"), "--no-bleu-selector", "--no-fres-selector",
        )
        code, _, stderr = run(
            capsys, "subset", "--corpus", str(tmp_path / "full"), "-n", "99",
            "--seed", "1", "--out", str(tmp_path / "s"),
        )
        assert code == 1
        assert "cannot sample" in stderr
