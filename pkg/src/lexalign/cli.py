"""Command-line front end.

Subcommands:
    align   run an alignment pipeline (semi-sup | self-sup | self-sup-re)
    induce  harvest a dictionary from a saved mapping
    eval    score a saved mapping against a gold test dictionary
    synth   generate a synthetic language pair with known ground truth
    pca     export (and plot) the 2-D projection of aligned pairs

Exit codes: 0 success, 1 validation error, 2 runtime failure.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import fields
from pathlib import Path

import numpy as np

from . import adversarial, checkpoint, csls, evaluation, plots, projection
from .config import ConfigError, RunConfig, parse_config, validate_run_config
from .embeddings import (
    DictionaryFormatError,
    EmbeddingFormatError,
    EmbeddingSet,
    load_dictionary,
    load_embeddings,
    normalize,
    save_dictionary,
    save_embeddings,
    save_seed_dictionary,
)
from .procrustes import ProcrustesConfig, train_procrustes
from .refine import RefineConfig, train_refined
from .synthetic import SynthSpec, generate

METHOD_TAGS = {"semi-sup": "Semi-sup", "self-sup": "Self-sup", "self-sup-re": "Self-sup-re"}

_VALIDATION_ERRORS = (
    ConfigError,
    EmbeddingFormatError,
    DictionaryFormatError,
    FileNotFoundError,
    ValueError,
)


def _parse_bool(raw: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in ("true", "yes", "1", "on"):
        return True
    if lowered in ("false", "no", "0", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {raw!r}")


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", default=None, help="key = value config file")
    defaults = RunConfig()
    for f in fields(RunConfig):
        typ = type(getattr(defaults, f.name))
        flag = "--" + f.name.replace("_", "-")
        if typ is bool:
            parser.add_argument(flag, dest=f.name, type=_parse_bool,
                                default=None, metavar="BOOL")
        else:
            parser.add_argument(flag, dest=f.name, type=typ, default=None)


def _load_normalized(path: str, max_vocab: int) -> EmbeddingSet:
    return normalize(load_embeddings(path, max_vocab))


def _adversarial_config(cfg: RunConfig) -> adversarial.AdversarialConfig:
    return adversarial.AdversarialConfig(
        epochs=cfg.epochs,
        steps_per_epoch=cfg.steps_per_epoch,
        batch_size=cfg.batch_size,
        beta=cfg.beta,
        learning_rate=cfg.learning_rate,
        lr_decay=cfg.lr_decay,
        lr_shrink=cfg.lr_shrink,
        sample_top_n=cfg.sample_top_n,
        label_smoothing=cfg.label_smoothing,
        rng_seed=cfg.rng_seed,
        hidden_size=cfg.hidden_size,
        input_dropout=cfg.input_dropout,
        leaky_slope=cfg.leaky_slope,
        init=cfg.init,
        log_every=cfg.log_every,
        csls_k=cfg.csls_k,
        validation_top_n=cfg.validation_top_n,
    )


def _procrustes_config(cfg: RunConfig) -> ProcrustesConfig:
    return ProcrustesConfig(
        n_iterations=cfg.n_iterations,
        dict_top_pairs=cfg.dict_top_pairs,
        csls_k=cfg.csls_k,
        mutual_only=cfg.mutual_only,
    )


def run_pipeline(cfg: RunConfig) -> int:
    """Dispatch on method and write all artifacts under the output dir."""
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    src = _load_normalized(cfg.src_embeddings, cfg.max_vocab)
    tgt = _load_normalized(cfg.tgt_embeddings, cfg.max_vocab)
    direction = cfg.direction or f"{src.lang}-{tgt.lang}"
    log_lines: list[str] = []
    best_epoch, best_score = 0, float("nan")

    if cfg.method == "semi-sup":
        seed = load_dictionary(cfg.seed_dict, src, tgt)
        log_lines.append(
            f"seed dictionary: {len(seed.pairs)} pairs kept, {seed.n_dropped} dropped"
        )
        w, _, records = train_procrustes(src, tgt, seed, _procrustes_config(cfg))
        log_lines.extend(r.format() for r in records)
    else:
        if cfg.adversarial_checkpoint:
            w_adv, meta = checkpoint.load_mapping(cfg.adversarial_checkpoint)
            best_epoch, best_score = meta["epoch"], meta["score"]
            log_lines.append(f"adversarial mapping loaded from {cfg.adversarial_checkpoint}")
        else:
            result = adversarial.train_adversarial(src, tgt, _adversarial_config(cfg))
            w_adv, best_epoch, best_score = result.w, result.best_epoch, result.best_score
            log_lines.extend(r.format() for r in result.history)
            log_lines.append(f"max orthogonality error during training: {result.max_orth_error:.4e}")
            checkpoint.write_loss_curves(out / "loss_curves.csv", result.curves)
            if cfg.figures:
                plots.plot_loss_curves(result.curves, out / "loss_curves.png")
        checkpoint.save_mapping(
            out / "mapping_adversarial.ckpt", w_adv, epoch=best_epoch, score=best_score
        )
        if cfg.method == "self-sup":
            w = w_adv
        else:
            refine_cfg = RefineConfig(
                s_anchor_pairs=cfg.s_anchor_pairs, procrustes=_procrustes_config(cfg)
            )
            w, _, records = train_refined(src, tgt, w_adv, refine_cfg)
            log_lines.extend(r.format() for r in records)

    checkpoint.save_mapping(out / "mapping.ckpt", w, epoch=best_epoch, score=best_score)

    index = csls.build_index(
        csls.normalize_rows(src.vectors @ w.T), tgt.vectors, cfg.csls_k
    )
    exported = csls.induce_dictionary(
        index, src.words, tgt.words,
        top_pairs=cfg.dict_top_pairs, mutual_only=False, direction=direction,
    )
    save_dictionary(exported, out / "induced.tsv")
    log_lines.append(f"exported dictionary: {len(exported.entries)} pairs")

    if cfg.test_dict:
        test = load_dictionary(cfg.test_dict, src, tgt)
        report = evaluation.evaluate(
            w, src, tgt, test, csls_k=cfg.csls_k,
            method_tag=METHOD_TAGS[cfg.method], direction=direction,
        )
        evaluation.write_reports([report], out / "eval_report.json")
        table = evaluation.render_report([report])
        sys.stdout.write(table)
        log_lines.append("evaluation: " + ", ".join(
            f"P@{n}={v:.1f}" for n, v in sorted(report.p_at.items())
        ))
        if cfg.figures:
            plots.plot_precision([report], out / "eval_report.png")

    (out / "train_log.txt").write_text("\n".join(log_lines) + "\n", encoding="utf-8")
    return 0


def _cmd_align(args: argparse.Namespace) -> int:
    overrides = {
        f.name: getattr(args, f.name)
        for f in fields(RunConfig)
        if getattr(args, f.name, None) is not None
    }
    cfg = parse_config(args.config, overrides)
    validate_run_config(cfg)
    return run_pipeline(cfg)


def _cmd_induce(args: argparse.Namespace) -> int:
    w, _ = checkpoint.load_mapping(args.checkpoint)
    src = _load_normalized(args.src_embeddings, args.max_vocab)
    tgt = _load_normalized(args.tgt_embeddings, args.max_vocab)
    index = csls.build_index(
        csls.normalize_rows(src.vectors @ w.T), tgt.vectors, args.csls_k
    )
    induced = csls.induce_dictionary(
        index, src.words, tgt.words,
        top_pairs=args.top_pairs, mutual_only=args.mutual_only,
        direction=f"{src.lang}-{tgt.lang}",
    )
    save_dictionary(induced, args.out)
    print(f"wrote {len(induced.entries)} pairs to {args.out}")
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    w, _ = checkpoint.load_mapping(args.checkpoint)
    src = _load_normalized(args.src_embeddings, args.max_vocab)
    tgt = _load_normalized(args.tgt_embeddings, args.max_vocab)
    test = load_dictionary(args.test_dict, src, tgt)
    report = evaluation.evaluate(
        w, src, tgt, test, csls_k=args.csls_k,
        method_tag=args.method_tag, direction=args.direction or "",
    )
    sys.stdout.write(evaluation.render_report([report]))
    if args.out:
        evaluation.write_reports([report], args.out)
        if args.figures:
            plots.plot_precision([report], Path(args.out).with_suffix(".png"))
    return 0


def _cmd_synth(args: argparse.Namespace) -> int:
    spec = SynthSpec(
        n_words=args.n_words,
        dim=args.dim,
        noise_sigma=args.noise_sigma,
        rotation_seed=args.rotation_seed,
        data_seed=args.data_seed,
        hubness_factor=args.hubness_factor,
        n_clusters=args.n_clusters,
        cluster_spread=args.cluster_spread,
    )
    src, tgt, rotation, gold = generate(spec)
    out = Path(args.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    save_embeddings(src, out / "src.vec")
    save_embeddings(tgt, out / "tgt.vec")
    save_seed_dictionary(gold, out / "gold.tsv")
    checkpoint.save_mapping(out / "mapping_true.ckpt", rotation)
    print(f"wrote synthetic pair ({spec.n_words} words, dim {spec.dim}) to {out}")
    return 0


def _cmd_pca(args: argparse.Namespace) -> int:
    w, _ = checkpoint.load_mapping(args.checkpoint)
    src = _load_normalized(args.src_embeddings, args.max_vocab)
    tgt = _load_normalized(args.tgt_embeddings, args.max_vocab)
    pairs = load_dictionary(args.pairs, src, tgt)
    rows = projection.pca_export(w, src, tgt, pairs, args.out)
    if args.figures:
        plots.plot_projection(rows, Path(args.out).with_suffix(".png"))
    print(f"wrote {len(rows)} projected points to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lexalign",
        description="Align two monolingual embedding spaces and induce a bilingual dictionary",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_align = sub.add_parser("align", help="run an alignment pipeline")
    _add_config_flags(p_align)
    p_align.set_defaults(func=_cmd_align)

    p_induce = sub.add_parser("induce", help="induce a dictionary from a checkpoint")
    p_induce.add_argument("--checkpoint", required=True)
    p_induce.add_argument("--src-embeddings", required=True)
    p_induce.add_argument("--tgt-embeddings", required=True)
    p_induce.add_argument("--max-vocab", type=int, default=200_000)
    p_induce.add_argument("--csls-k", type=int, default=10)
    p_induce.add_argument("--top-pairs", type=int, default=50_000)
    p_induce.add_argument("--mutual-only", type=_parse_bool, default=False, metavar="BOOL")
    p_induce.add_argument("--out", required=True)
    p_induce.set_defaults(func=_cmd_induce)

    p_eval = sub.add_parser("eval", help="evaluate a checkpoint on a test dictionary")
    p_eval.add_argument("--checkpoint", required=True)
    p_eval.add_argument("--src-embeddings", required=True)
    p_eval.add_argument("--tgt-embeddings", required=True)
    p_eval.add_argument("--test-dict", required=True)
    p_eval.add_argument("--max-vocab", type=int, default=200_000)
    p_eval.add_argument("--csls-k", type=int, default=10)
    p_eval.add_argument("--method-tag", default="")
    p_eval.add_argument("--direction", default="")
    p_eval.add_argument("--out", default="")
    p_eval.add_argument("--figures", type=_parse_bool, default=True, metavar="BOOL")
    p_eval.set_defaults(func=_cmd_eval)

    p_synth = sub.add_parser("synth", help="generate a synthetic language pair")
    p_synth.add_argument("--n-words", type=int, default=1000)
    p_synth.add_argument("--dim", type=int, default=50)
    p_synth.add_argument("--noise-sigma", type=float, default=0.0)
    p_synth.add_argument("--rotation-seed", type=int, default=0)
    p_synth.add_argument("--data-seed", type=int, default=0)
    p_synth.add_argument("--hubness-factor", type=float, default=0.0)
    p_synth.add_argument("--n-clusters", type=int, default=0)
    p_synth.add_argument("--cluster-spread", type=float, default=0.25)
    p_synth.add_argument("--output-dir", required=True)
    p_synth.set_defaults(func=_cmd_synth)

    p_pca = sub.add_parser("pca", help="export the 2-D projection of aligned pairs")
    p_pca.add_argument("--checkpoint", required=True)
    p_pca.add_argument("--src-embeddings", required=True)
    p_pca.add_argument("--tgt-embeddings", required=True)
    p_pca.add_argument("--pairs", required=True, help="dictionary file of pairs to project")
    p_pca.add_argument("--max-vocab", type=int, default=200_000)
    p_pca.add_argument("--out", required=True, help="output CSV path")
    p_pca.add_argument("--figures", type=_parse_bool, default=True, metavar="BOOL")
    p_pca.set_defaults(func=_cmd_pca)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _VALIDATION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # runtime failure
        print(f"runtime error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
