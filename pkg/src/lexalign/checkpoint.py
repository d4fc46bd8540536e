"""Mapping checkpoints and training-curve files.

A checkpoint is one UTF-8 header line followed by the mapping's float64
entries, row-major little-endian. The format has no timestamps, so identical
runs produce bit-identical files.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

_MAGIC = "lexalign-mapping-v1"


def save_mapping(
    path: str | Path, w: np.ndarray, epoch: int = 0, score: float = float("nan")
) -> None:
    w = np.ascontiguousarray(w, dtype=np.float64)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise ValueError("mapping must be a square matrix")
    header = f"{_MAGIC} dim={w.shape[0]} epoch={epoch} score={repr(float(score))}\n"
    with open(path, "wb") as fh:
        fh.write(header.encode("utf-8"))
        fh.write(w.astype("<f8").tobytes())


def load_mapping(path: str | Path) -> tuple[np.ndarray, dict]:
    """Returns (mapping, metadata with dim/epoch/score)."""
    path = Path(path)
    with open(path, "rb") as fh:
        header = fh.readline().decode("utf-8").strip()
        fields = header.split()
        if not fields or fields[0] != _MAGIC:
            raise ValueError(f"{path}: not a mapping checkpoint")
        meta = dict(kv.split("=", 1) for kv in fields[1:])
        dim = int(meta["dim"])
        raw = fh.read()
    expected = dim * dim * 8
    if len(raw) != expected:
        raise ValueError(f"{path}: expected {expected} payload bytes, got {len(raw)}")
    w = np.frombuffer(raw, dtype="<f8").reshape(dim, dim).astype(np.float64)
    return w, {"dim": dim, "epoch": int(meta["epoch"]), "score": float(meta["score"])}


def write_loss_curves(
    path: str | Path, points: list[tuple[int, float, float, float]]
) -> None:
    """CSV of (step, loss_d, loss_w, orth_error) training-curve samples."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("step,loss_d,loss_w,orth_error\n")
        for step, loss_d, loss_w, orth in points:
            fh.write(f"{step},{repr(float(loss_d))},{repr(float(loss_w))},{repr(float(orth))}\n")


def read_loss_curves(path: str | Path) -> list[tuple[int, float, float, float]]:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != "step,loss_d,loss_w,orth_error":
            raise ValueError(f"{path}: unexpected header {header!r}")
        points = []
        for line in fh:
            if not line.strip():
                continue
            step, loss_d, loss_w, orth = line.split(",")
            points.append((int(step), float(loss_d), float(loss_w), float(orth)))
    return points
