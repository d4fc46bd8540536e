"""Self-supervised alignment by adversarial training.

A two-hidden-layer MLP discriminator learns to tell mapped source vectors
from target vectors; the linear generator ``w`` is trained to fool it. Both
are updated by plain SGD with losses

    loss_d = -mean log p(mapped source) - mean log (1 - p(target))
    loss_w = -mean log (1 - p(mapped source)) - mean log p(target)

where p is the discriminator's source probability (optionally with smoothed
labels). Every generator step is followed by one orthogonal retraction, which
keeps ``w`` close to the orthogonal manifold throughout training. The second
term of loss_w does not depend on w; it is evaluated for the curve logs but
contributes no gradient.

Forward/backward passes are hand-rolled numpy; no autodiff framework.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import csls
from .embeddings import EmbeddingSet
from .linalg import (
    orthogonal_retraction,
    orthogonality_error,
    random_orthogonal,
    retraction_sweep,
)


class TrainingDiverged(RuntimeError):
    """A loss or gradient became non-finite; carries the last finite state."""

    def __init__(self, message: str, last_state: dict | None = None):
        super().__init__(message)
        self.last_state = last_state or {}


@dataclass
class AdversarialConfig:
    epochs: int = 5
    steps_per_epoch: int = 100_000
    batch_size: int = 32
    beta: float = 0.001
    learning_rate: float = 0.1
    lr_decay: float = 0.98
    lr_shrink: float = 0.5
    sample_top_n: int = 0  # 0 = full vocabulary
    label_smoothing: float = 0.1
    rng_seed: int = 0
    hidden_size: int = 2048
    input_dropout: float = 0.1
    leaky_slope: float = 0.2
    init: str = "identity"  # or "random_orthogonal"
    log_every: int = 100
    csls_k: int = 10
    validation_top_n: int = 500

    def __post_init__(self) -> None:
        if self.epochs < 0 or self.steps_per_epoch < 1 or self.batch_size < 1:
            raise ValueError("invalid training schedule")
        if not 0.0 < self.beta < 1.0:
            raise ValueError("beta must lie in (0, 1)")
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if not 0.0 <= self.label_smoothing < 0.5:
            raise ValueError("label_smoothing must lie in [0, 0.5)")
        if self.init not in ("identity", "random_orthogonal"):
            raise ValueError(f"unknown init {self.init!r}")


class Discriminator:
    """MLP scoring how source-like an embedding vector is.

    Layers: input(dim) -> hidden -> hidden -> 1, leaky-ReLU activations,
    logistic output. Dropout is applied to the input layer only and only in
    train mode.
    """

    def __init__(
        self,
        dim: int,
        hidden_size: int = 2048,
        input_dropout: float = 0.1,
        leaky_slope: float = 0.2,
        rng: np.random.Generator | None = None,
    ):
        if not 0.0 <= input_dropout < 1.0:
            raise ValueError("input_dropout must lie in [0, 1)")
        rng = rng if rng is not None else np.random.default_rng(0)
        self.dim = dim
        self.hidden_size = hidden_size
        self.input_dropout = input_dropout
        self.leaky_slope = leaky_slope
        self.w1 = rng.standard_normal((hidden_size, dim)) * np.sqrt(2.0 / dim)
        self.b1 = np.zeros(hidden_size)
        self.w2 = rng.standard_normal((hidden_size, hidden_size)) * np.sqrt(
            2.0 / hidden_size
        )
        self.b2 = np.zeros(hidden_size)
        self.w3 = rng.standard_normal(hidden_size) * np.sqrt(1.0 / hidden_size)
        self.b3 = 0.0

    PARAM_NAMES = ("w1", "b1", "w2", "b2", "w3", "b3")

    def param_count(self) -> int:
        h, d = self.hidden_size, self.dim
        return d * h + h + h * h + h + h + 1

    def _leaky(self, a: np.ndarray) -> np.ndarray:
        return np.where(a > 0, a, self.leaky_slope * a)

    def _leaky_grad(self, a: np.ndarray) -> np.ndarray:
        return np.where(a > 0, 1.0, self.leaky_slope)

    def logits(
        self,
        z: np.ndarray,
        train_mode: bool = False,
        rng: np.random.Generator | None = None,
    ) -> tuple[np.ndarray, dict]:
        """Pre-sigmoid scores for a batch of rows, plus the backward cache."""
        z = np.atleast_2d(np.asarray(z, dtype=np.float64))
        if z.shape[1] != self.dim:
            raise ValueError(f"expected dim {self.dim}, got {z.shape[1]}")
        if not np.all(np.isfinite(z)):
            raise ValueError("non-finite input")
        mask = None
        z0 = z
        if train_mode and self.input_dropout > 0.0:
            if rng is None:
                raise ValueError("train-mode dropout requires an rng")
            keep = 1.0 - self.input_dropout
            mask = (rng.random(z.shape) < keep) / keep
            z0 = z * mask
        a1 = z0 @ self.w1.T + self.b1
        h1 = self._leaky(a1)
        a2 = h1 @ self.w2.T + self.b2
        h2 = self._leaky(a2)
        logit = h2 @ self.w3 + self.b3
        cache = {"z0": z0, "mask": mask, "a1": a1, "h1": h1, "a2": a2, "h2": h2}
        return logit, cache

    def forward(
        self,
        z: np.ndarray,
        train_mode: bool = False,
        rng: np.random.Generator | None = None,
    ) -> np.ndarray:
        """Source probabilities, strictly inside (0, 1) for finite inputs."""
        logit, _ = self.logits(z, train_mode, rng)
        p = _sigmoid(logit)
        return np.clip(p, np.nextafter(0.0, 1.0), np.nextafter(1.0, 0.0))

    def backward(
        self, cache: dict, dlogit: np.ndarray
    ) -> tuple[dict[str, np.ndarray | float], np.ndarray]:
        """Backpropagate d(loss)/d(logit); returns parameter grads and d/d(input)."""
        h2, h1, z0 = cache["h2"], cache["h1"], cache["z0"]
        dw3 = dlogit @ h2
        db3 = float(dlogit.sum())
        dh2 = np.outer(dlogit, self.w3)
        da2 = dh2 * self._leaky_grad(cache["a2"])
        dw2 = da2.T @ h1
        db2 = da2.sum(axis=0)
        dh1 = da2 @ self.w2
        da1 = dh1 * self._leaky_grad(cache["a1"])
        dw1 = da1.T @ z0
        db1 = da1.sum(axis=0)
        dz = da1 @ self.w1
        if cache["mask"] is not None:
            dz = dz * cache["mask"]
        grads = {"w1": dw1, "b1": db1, "w2": dw2, "b2": db2, "w3": dw3, "b3": db3}
        return grads, dz

    def apply_gradients(self, grads: dict, learning_rate: float) -> None:
        for name in self.PARAM_NAMES:
            g = grads[name]
            if not np.all(np.isfinite(g)):
                raise TrainingDiverged(f"non-finite gradient for {name}")
            if name == "b3":
                self.b3 -= learning_rate * g
            else:
                param = getattr(self, name)
                param -= learning_rate * g


def _sigmoid(x: np.ndarray) -> np.ndarray:
    out = np.empty_like(x, dtype=np.float64)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    e = np.exp(x[~pos])
    out[~pos] = e / (1.0 + e)
    return out


def _bce(logits: np.ndarray, target: float) -> float:
    """Mean binary cross-entropy of logistic(logits) against a scalar target.

    Evaluated via softplus for stability: -log sigma(x) = softplus(-x).
    """
    sp_pos = np.logaddexp(0.0, logits)  # -log(1 - sigma)
    sp_neg = np.logaddexp(0.0, -logits)  # -log sigma
    return float(np.mean(target * sp_neg + (1.0 - target) * sp_pos))


def discriminator_loss(
    disc: Discriminator,
    w: np.ndarray,
    src_batch: np.ndarray,
    tgt_batch: np.ndarray,
    label_smoothing: float = 0.0,
    train_mode: bool = False,
    rng: np.random.Generator | None = None,
) -> float:
    """Cross-entropy for labeling mapped source rows 1 and target rows 0."""
    if len(src_batch) == 0 or len(tgt_batch) == 0:
        raise ValueError("batches must be non-empty")
    s = label_smoothing
    logit_src, _ = disc.logits(src_batch @ w.T, train_mode, rng)
    logit_tgt, _ = disc.logits(tgt_batch, train_mode, rng)
    return _bce(logit_src, 1.0 - s) + _bce(logit_tgt, s)


def generator_loss(
    disc: Discriminator,
    w: np.ndarray,
    src_batch: np.ndarray,
    tgt_batch: np.ndarray,
    label_smoothing: float = 0.0,
    train_mode: bool = False,
    rng: np.random.Generator | None = None,
) -> float:
    """The discriminator loss with flipped labels; only the mapped-source
    term depends on w."""
    if len(src_batch) == 0 or len(tgt_batch) == 0:
        raise ValueError("batches must be non-empty")
    s = label_smoothing
    logit_src, _ = disc.logits(src_batch @ w.T, train_mode, rng)
    logit_tgt, _ = disc.logits(tgt_batch, train_mode, rng)
    return _bce(logit_src, s) + _bce(logit_tgt, 1.0 - s)


def discriminator_gradients(
    disc: Discriminator,
    w: np.ndarray,
    src_batch: np.ndarray,
    tgt_batch: np.ndarray,
    label_smoothing: float = 0.0,
    train_mode: bool = False,
    rng: np.random.Generator | None = None,
) -> tuple[float, dict[str, np.ndarray | float]]:
    """Loss value and analytic gradients of the discriminator loss."""
    s = label_smoothing
    logit_src, cache_src = disc.logits(src_batch @ w.T, train_mode, rng)
    logit_tgt, cache_tgt = disc.logits(tgt_batch, train_mode, rng)
    loss = _bce(logit_src, 1.0 - s) + _bce(logit_tgt, s)
    dlogit_src = (_sigmoid(logit_src) - (1.0 - s)) / len(logit_src)
    dlogit_tgt = (_sigmoid(logit_tgt) - s) / len(logit_tgt)
    grads_src, _ = disc.backward(cache_src, dlogit_src)
    grads_tgt, _ = disc.backward(cache_tgt, dlogit_tgt)
    grads = {k: grads_src[k] + grads_tgt[k] for k in disc.PARAM_NAMES}
    return loss, grads


def generator_gradient(
    disc: Discriminator,
    w: np.ndarray,
    src_batch: np.ndarray,
    tgt_batch: np.ndarray,
    label_smoothing: float = 0.0,
    train_mode: bool = False,
    rng: np.random.Generator | None = None,
) -> tuple[float, np.ndarray]:
    """Loss value and the analytic gradient of the generator loss wrt w."""
    s = label_smoothing
    logit_src, cache = disc.logits(src_batch @ w.T, train_mode, rng)
    logit_tgt, _ = disc.logits(tgt_batch, train_mode, rng)
    loss = _bce(logit_src, s) + _bce(logit_tgt, 1.0 - s)
    dlogit = (_sigmoid(logit_src) - s) / len(logit_src)
    _, dz = disc.backward(cache, dlogit)
    dw = dz.T @ src_batch  # z_i = w @ x_i, so dL/dw = sum_i dz_i x_i^T
    return loss, dw


def sgd_step_discriminator(
    disc: Discriminator,
    w: np.ndarray,
    src_batch: np.ndarray,
    tgt_batch: np.ndarray,
    learning_rate: float,
    label_smoothing: float = 0.0,
    train_mode: bool = True,
    rng: np.random.Generator | None = None,
) -> float:
    """One SGD update of the discriminator parameters; returns the loss."""
    loss, grads = discriminator_gradients(
        disc, w, src_batch, tgt_batch, label_smoothing, train_mode, rng
    )
    if not np.isfinite(loss):
        raise TrainingDiverged("discriminator loss is non-finite")
    disc.apply_gradients(grads, learning_rate)
    return loss


def sgd_step_generator(
    disc: Discriminator,
    w: np.ndarray,
    src_batch: np.ndarray,
    tgt_batch: np.ndarray,
    learning_rate: float,
    beta: float,
    label_smoothing: float = 0.0,
    train_mode: bool = True,
    rng: np.random.Generator | None = None,
) -> tuple[np.ndarray, float]:
    """One SGD update of the mapping followed by an orthogonal retraction."""
    loss, dw = generator_gradient(
        disc, w, src_batch, tgt_batch, label_smoothing, train_mode, rng
    )
    if not np.isfinite(loss) or not np.all(np.isfinite(dw)):
        raise TrainingDiverged("generator loss or gradient is non-finite")
    w = w - learning_rate * dw
    return orthogonal_retraction(w, beta), loss


def validation_score(
    w: np.ndarray,
    src: EmbeddingSet,
    tgt: EmbeddingSet,
    csls_k: int = 10,
    top_n: int = 500,
) -> float:
    """Mean score of the induced translations of the most frequent source words.

    Unsupervised model-selection criterion: recomputable deterministically
    from (w, embeddings).
    """
    index = csls.build_index(csls.normalize_rows(src.vectors @ w.T), tgt.vectors, csls_k)
    rows = np.arange(min(top_n, len(src)))
    _, best_s = csls.best_targets(index, rows)
    return float(best_s.mean())


@dataclass
class EpochRecord:
    epoch: int
    mean_csls: float
    learning_rate: float
    orth_error: float

    def format(self) -> str:
        return (
            f"epoch {self.epoch}: mean_csls={self.mean_csls:.6f} "
            f"lr={self.learning_rate:.6g} orth_error={self.orth_error:.3e}"
        )


@dataclass
class AdversarialResult:
    w: np.ndarray  # best-validation mapping, retracted onto the manifold
    best_epoch: int
    best_score: float
    history: list[EpochRecord]  # entry 0 describes the initialization
    curves: list[tuple[int, float, float, float]]  # (step, loss_d, loss_w, orth)
    max_orth_error: float


def train_adversarial(
    src: EmbeddingSet, tgt: EmbeddingSet, config: AdversarialConfig | None = None
) -> AdversarialResult:
    """Run the alternating discriminator/generator schedule.

    Per epoch: ``steps_per_epoch`` iterations of one discriminator update then
    one generator update, on batches drawn uniformly from the
    ``sample_top_n`` most frequent words of each language. Validation runs
    after every epoch and the best-scoring mapping is returned (after a final
    retraction sweep). Bit-reproducible for a fixed ``rng_seed``.
    """
    config = config or AdversarialConfig()
    if src.dim != tgt.dim:
        raise ValueError("source and target dimensions differ")
    if min(len(src), len(tgt)) < config.batch_size:
        raise ValueError("vocabulary smaller than the batch size")
    for name, emb in (("source", src), ("target", tgt)):
        norms = np.linalg.norm(emb.vectors, axis=1)
        if not np.allclose(norms, 1.0, atol=1e-6):
            raise ValueError(f"{name} set must be normalized before training")

    rng = np.random.default_rng(config.rng_seed)
    disc = Discriminator(
        src.dim, config.hidden_size, config.input_dropout, config.leaky_slope, rng
    )
    if config.init == "identity":
        w = np.eye(src.dim)
    else:
        w = random_orthogonal(src.dim, rng)

    top_n = config.sample_top_n
    src_pool = src.vectors if top_n <= 0 else src.vectors[:top_n]
    tgt_pool = tgt.vectors if top_n <= 0 else tgt.vectors[:top_n]

    lr = config.learning_rate
    score = validation_score(w, src, tgt, config.csls_k, config.validation_top_n)
    history = [EpochRecord(0, score, lr, orthogonality_error(w))]
    best_w, best_score, best_epoch = w.copy(), score, 0
    curves: list[tuple[int, float, float, float]] = []
    max_orth = orthogonality_error(w)
    global_step = 0
    last_finite = {"epoch": 0, "step": 0, "loss_d": None, "loss_w": None}

    for epoch in range(1, config.epochs + 1):
        for _ in range(config.steps_per_epoch):
            si = rng.integers(0, len(src_pool), size=config.batch_size)
            ti = rng.integers(0, len(tgt_pool), size=config.batch_size)
            try:
                loss_d = sgd_step_discriminator(
                    disc, w, src_pool[si], tgt_pool[ti], lr,
                    config.label_smoothing, rng=rng,
                )
                si = rng.integers(0, len(src_pool), size=config.batch_size)
                ti = rng.integers(0, len(tgt_pool), size=config.batch_size)
                w, loss_w = sgd_step_generator(
                    disc, w, src_pool[si], tgt_pool[ti], lr, config.beta,
                    config.label_smoothing, rng=rng,
                )
            except TrainingDiverged as exc:
                raise TrainingDiverged(
                    f"diverged at epoch {epoch} step {global_step}: {exc}",
                    last_state=last_finite,
                ) from exc
            orth = orthogonality_error(w)
            max_orth = max(max_orth, orth)
            if global_step % config.log_every == 0:
                curves.append((global_step, loss_d, loss_w, orth))
            last_finite = {
                "epoch": epoch, "step": global_step,
                "loss_d": loss_d, "loss_w": loss_w,
            }
            global_step += 1
        score = validation_score(w, src, tgt, config.csls_k, config.validation_top_n)
        history.append(EpochRecord(epoch, score, lr, orthogonality_error(w)))
        if score > best_score:
            best_w, best_score, best_epoch = w.copy(), score, epoch
        else:
            lr *= config.lr_shrink
        lr *= config.lr_decay

    best_w = retraction_sweep(best_w, config.beta, tol=1e-6)
    return AdversarialResult(
        best_w, best_epoch, best_score, history, curves, max_orth
    )
