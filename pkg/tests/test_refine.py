import numpy as np
import pytest

from lexalign.embeddings import InducedDictionary
from lexalign.evaluation import evaluate
from lexalign.linalg import orthogonality_error
from lexalign.procrustes import ProcrustesConfig
from lexalign.refine import RefineConfig, select_anchor_pairs, train_refined
from lexalign.synthetic import SynthSpec, generate


def plane_rotation(dim, i, j, degrees):
    rot = np.eye(dim)
    theta = np.radians(degrees)
    rot[i, i] = rot[j, j] = np.cos(theta)
    rot[i, j] = -np.sin(theta)
    rot[j, i] = np.sin(theta)
    return rot


def small_config(dict_top_pairs=800, s=60, iters=5):
    return RefineConfig(
        s_anchor_pairs=s,
        procrustes=ProcrustesConfig(
            n_iterations=iters, dict_top_pairs=dict_top_pairs, csls_k=5
        ),
    )


class TestSelectAnchorPairs:
    def setup_method(self):
        self.src, self.tgt, _, _ = generate(SynthSpec(n_words=30, dim=5, data_seed=1))

    def test_keeps_most_frequent_sources(self):
        entries = [(f"w{i}", f"w{i}'", 0.5) for i in (7, 2, 19, 4, 11)]
        d = InducedDictionary(entries)
        picked = select_anchor_pairs(d, self.src, self.tgt, 3)
        assert [s for s, _ in picked.pairs] == ["w2", "w4", "w7"]

    def test_oversized_request_takes_all_with_warning(self):
        d = InducedDictionary([("w1", "w1'", 0.9), ("w2", "w2'", 0.8)])
        with pytest.warns(UserWarning, match="available"):
            picked = select_anchor_pairs(d, self.src, self.tgt, 10)
        assert len(picked.pairs) == 2

    def test_rank_tie_broken_by_score(self):
        # same source word twice (non-mutual dictionary): higher score first
        d = InducedDictionary(
            [("w3", "w5'", 0.2), ("w3", "w3'", 0.9), ("w1", "w1'", 0.5)]
        )
        picked = select_anchor_pairs(d, self.src, self.tgt, 2)
        assert picked.pairs == [("w1", "w1'"), ("w3", "w3'")]

    def test_zero_request_rejected(self):
        with pytest.raises(ValueError):
            select_anchor_pairs(InducedDictionary([]), self.src, self.tgt, 0)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            RefineConfig(s_anchor_pairs=0)
        with pytest.raises(ValueError):
            RefineConfig(
                s_anchor_pairs=100,
                procrustes=ProcrustesConfig(dict_top_pairs=50),
            )


class TestTrainRefined:
    def test_true_rotation_is_fixed_point(self):
        src, tgt, q, gold = generate(SynthSpec(n_words=400, dim=12, data_seed=2))
        w, induced, _ = train_refined(src, tgt, q, small_config())
        np.testing.assert_allclose(w, q, atol=1e-6)
        report = evaluate(w, src, tgt, gold, ns=(1,), csls_k=5)
        assert report.p_at[1] == 100.0

    def test_perturbed_rotation_improves(self):
        src, tgt, q, gold = generate(SynthSpec(n_words=400, dim=12, data_seed=3))
        w_perturbed = plane_rotation(12, 0, 1, 5.0) @ q
        before = evaluate(w_perturbed, src, tgt, gold, ns=(1,), csls_k=5).p_at[1]
        w, _, _ = train_refined(src, tgt, w_perturbed, small_config())
        after = evaluate(w, src, tgt, gold, ns=(1,), csls_k=5).p_at[1]
        assert after >= before
        assert after == 100.0

    def test_final_mapping_orthogonal(self):
        src, tgt, q, _ = generate(
            SynthSpec(n_words=300, dim=10, noise_sigma=0.02, data_seed=4)
        )
        w, _, _ = train_refined(
            src, tgt, plane_rotation(10, 2, 5, 8.0) @ q, small_config()
        )
        assert orthogonality_error(w) <= 1e-6

    def test_deterministic(self):
        src, tgt, q, _ = generate(SynthSpec(n_words=200, dim=8, data_seed=5))
        w_start = plane_rotation(8, 1, 3, 4.0) @ q
        a = train_refined(src, tgt, w_start, small_config())
        b = train_refined(src, tgt, w_start, small_config())
        np.testing.assert_array_equal(a[0], b[0])
        assert a[1].entries == b[1].entries

    def test_far_from_orthogonal_rejected(self):
        src, tgt, _, _ = generate(SynthSpec(n_words=100, dim=6, data_seed=6))
        with pytest.raises(ValueError, match="orthogonal"):
            train_refined(src, tgt, 2.0 * np.eye(6), small_config(dict_top_pairs=200, s=20))
