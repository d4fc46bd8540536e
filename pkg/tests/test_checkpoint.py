import numpy as np
import pytest

from lexalign.checkpoint import (
    load_mapping,
    read_loss_curves,
    save_mapping,
    write_loss_curves,
)


class TestMappingCheckpoint:
    def test_round_trip_exact(self, tmp_path):
        rng = np.random.default_rng(1)
        w = rng.normal(size=(20, 20))
        path = tmp_path / "m.ckpt"
        save_mapping(path, w, epoch=3, score=0.123456789)
        back, meta = load_mapping(path)
        np.testing.assert_array_equal(back, w)
        assert meta == {"dim": 20, "epoch": 3, "score": 0.123456789}

    def test_nan_score_round_trips(self, tmp_path):
        path = tmp_path / "m.ckpt"
        save_mapping(path, np.eye(3))
        _, meta = load_mapping(path)
        assert np.isnan(meta["score"])

    def test_identical_saves_are_bit_identical(self, tmp_path):
        w = np.random.default_rng(2).normal(size=(8, 8))
        a, b = tmp_path / "a.ckpt", tmp_path / "b.ckpt"
        save_mapping(a, w, epoch=1, score=0.5)
        save_mapping(b, w, epoch=1, score=0.5)
        assert a.read_bytes() == b.read_bytes()

    def test_non_square_rejected(self, tmp_path):
        with pytest.raises(ValueError, match="square"):
            save_mapping(tmp_path / "m.ckpt", np.zeros((2, 3)))

    def test_truncated_payload_rejected(self, tmp_path):
        path = tmp_path / "m.ckpt"
        save_mapping(path, np.eye(4))
        raw = path.read_bytes()
        path.write_bytes(raw[:-8])
        with pytest.raises(ValueError, match="bytes"):
            load_mapping(path)

    def test_foreign_file_rejected(self, tmp_path):
        path = tmp_path / "m.ckpt"
        path.write_bytes(b"something else entirely\n")
        with pytest.raises(ValueError, match="checkpoint"):
            load_mapping(path)


class TestLossCurves:
    def test_round_trip(self, tmp_path):
        points = [(0, 1.386, 1.386, 0.0), (100, 1.2, 1.5, 0.013)]
        path = tmp_path / "curves.csv"
        write_loss_curves(path, points)
        assert read_loss_curves(path) == points

    def test_header_written(self, tmp_path):
        path = tmp_path / "curves.csv"
        write_loss_curves(path, [])
        assert path.read_text(encoding="utf-8") == "step,loss_d,loss_w,orth_error\n"
