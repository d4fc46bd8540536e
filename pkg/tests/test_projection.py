import numpy as np
import pytest

from lexalign.embeddings import SeedDictionary
from lexalign.projection import (
    pca_export,
    project_aligned_pairs,
    read_projection_csv,
    write_projection_csv,
)
from lexalign.synthetic import SynthSpec, generate


class TestProjection:
    def test_noiseless_pairs_coincide(self):
        src, tgt, q, gold = generate(SynthSpec(n_words=40, dim=8, data_seed=1))
        rows = project_aligned_pairs(q, src, tgt, gold)
        half = len(rows) // 2
        for k in range(half):
            assert abs(rows[k][2] - rows[half + k][2]) < 1e-6
            assert abs(rows[k][3] - rows[half + k][3]) < 1e-6

    def test_row_count_is_twice_pair_count(self):
        src, tgt, q, gold = generate(SynthSpec(n_words=25, dim=6, data_seed=2))
        pairs = SeedDictionary(gold.pairs[:10])
        rows = project_aligned_pairs(q, src, tgt, pairs)
        assert len(rows) == 20

    def test_columns_centered(self):
        src, tgt, q, gold = generate(
            SynthSpec(n_words=30, dim=7, noise_sigma=0.1, data_seed=3)
        )
        rows = project_aligned_pairs(q, src, tgt, gold)
        coords = np.array([[r[2], r[3]] for r in rows])
        np.testing.assert_allclose(coords.mean(axis=0), 0.0, atol=1e-9)

    def test_language_tags_preserved(self):
        src, tgt, q, gold = generate(SynthSpec(n_words=10, dim=5, data_seed=4))
        rows = project_aligned_pairs(q, src, tgt, gold)
        assert {r[1] for r in rows[:10]} == {"src"}
        assert {r[1] for r in rows[10:]} == {"tgt"}

    def test_fewer_than_three_pairs_rejected(self):
        src, tgt, q, gold = generate(SynthSpec(n_words=10, dim=5, data_seed=5))
        with pytest.raises(ValueError, match="3"):
            project_aligned_pairs(q, src, tgt, SeedDictionary(gold.pairs[:2]))

    def test_unresolvable_pairs_skipped(self):
        src, tgt, q, gold = generate(SynthSpec(n_words=10, dim=5, data_seed=6))
        pairs = SeedDictionary(gold.pairs[:4] + [("ghost", "w1'")])
        rows = project_aligned_pairs(q, src, tgt, pairs)
        assert len(rows) == 8

    def test_csv_round_trip(self, tmp_path):
        src, tgt, q, gold = generate(SynthSpec(n_words=12, dim=5, data_seed=7))
        rows = project_aligned_pairs(q, src, tgt, gold)
        path = tmp_path / "coords.csv"
        write_projection_csv(rows, path)
        assert path.read_text(encoding="utf-8").splitlines()[0] == "word,lang,pc1,pc2"
        assert read_projection_csv(path) == rows

    def test_csv_quotes_awkward_tokens(self, tmp_path):
        rows = [("a,b", "L1", 0.5, -0.5), ("c", "L2", 1.0, 2.0), ("d", "L1", 0.0, 0.0)]
        path = tmp_path / "coords.csv"
        write_projection_csv(rows, path)
        assert read_projection_csv(path) == rows

    def test_pca_export_writes_and_returns(self, tmp_path):
        src, tgt, q, gold = generate(SynthSpec(n_words=15, dim=5, data_seed=8))
        path = tmp_path / "coords.csv"
        rows = pca_export(q, src, tgt, gold, path)
        assert len(rows) == 30
        assert read_projection_csv(path) == rows
