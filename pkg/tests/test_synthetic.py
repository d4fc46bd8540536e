import numpy as np
import pytest

from lexalign.csls import best_targets, build_index
from lexalign.linalg import orthogonality_error
from lexalign.synthetic import SynthSpec, generate


class TestGenerate:
    def test_noiseless_pairs_coincide(self):
        src, tgt, q, gold = generate(SynthSpec(n_words=50, dim=8))
        mapped = src.vectors @ q.T
        cos = np.sum(mapped * tgt.vectors, axis=1)
        np.testing.assert_allclose(cos, 1.0, atol=1e-9)

    def test_deterministic_under_seeds(self):
        spec = SynthSpec(n_words=30, dim=5, noise_sigma=0.1, rotation_seed=4, data_seed=9)
        a = generate(spec)
        b = generate(spec)
        np.testing.assert_array_equal(a[0].vectors, b[0].vectors)
        np.testing.assert_array_equal(a[1].vectors, b[1].vectors)
        np.testing.assert_array_equal(a[2], b[2])
        assert a[3].pairs == b[3].pairs

    def test_seeds_change_output(self):
        a = generate(SynthSpec(n_words=30, dim=5, data_seed=1))
        b = generate(SynthSpec(n_words=30, dim=5, data_seed=2))
        assert not np.array_equal(a[0].vectors, b[0].vectors)

    def test_true_mapping_orthogonal(self):
        _, _, q, _ = generate(SynthSpec(n_words=10, dim=20))
        assert orthogonality_error(q) <= 1e-9

    def test_rows_unit_normalized(self):
        src, tgt, _, _ = generate(
            SynthSpec(n_words=40, dim=6, noise_sigma=0.3, hubness_factor=5.0)
        )
        np.testing.assert_allclose(np.linalg.norm(src.vectors, axis=1), 1.0, atol=1e-9)
        np.testing.assert_allclose(np.linalg.norm(tgt.vectors, axis=1), 1.0, atol=1e-9)

    def test_gold_pairs_follow_prime_convention(self):
        src, tgt, _, gold = generate(SynthSpec(n_words=5, dim=3))
        assert gold.pairs == [(w, w + "'") for w in src.words]
        assert all(t in tgt.index for _, t in gold.pairs)

    def test_clustered_generation_balanced(self):
        spec = SynthSpec(n_words=60, dim=6, n_clusters=6, cluster_spread=0.1)
        src, _, _, _ = generate(spec)
        assert len(src) == 60

    def test_invalid_spec_rejected(self):
        with pytest.raises(ValueError):
            SynthSpec(n_words=1, dim=5)
        with pytest.raises(ValueError):
            SynthSpec(n_words=5, dim=1)
        with pytest.raises(ValueError):
            SynthSpec(n_words=5, dim=5, noise_sigma=-0.1)


class TestHubnessInstance:
    def test_hub_emerges_under_identity_mapping(self):
        # with a stretched first axis both clouds concentrate near a pole;
        # comparing them unaligned makes one target the cosine favorite
        spec = SynthSpec(n_words=100, dim=5, hubness_factor=10.0, data_seed=3)
        src, tgt, _, _ = generate(spec)
        index = build_index(src.vectors, tgt.vectors, k=10)
        cosines = src.vectors @ tgt.vectors.T
        cos_counts = np.bincount(cosines.argmax(axis=1), minlength=len(tgt))
        hub = int(cos_counts.argmax())
        assert cos_counts[hub] >= 5
        best_j, _ = best_targets(index)
        csls_counts = np.bincount(best_j, minlength=len(tgt))
        assert csls_counts[hub] < cos_counts[hub]
