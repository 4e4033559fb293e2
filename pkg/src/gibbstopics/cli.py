"""Command-line front end.

Training:
    gibbstopics -model LDA -corpus test/corpus.txt [-ntopics 20] [-alpha 0.1]
        [-beta 0.01] [-niters 2000] [-twords 20] [-name model] [-sstep 0] [-seed N]
    gibbstopics -model DMM -corpus test/corpus.txt -beta 0.1 -name testDMM

Inference on an unseen corpus:
    gibbstopics -model LDAinf -paras test/testLDA.paras -corpus test/unseen.txt
        [-niters 100] [-twords 20] [-name modelinf] [-sstep 0] [-seed N]

Clustering evaluation:
    gibbstopics -model Eval -label test/corpus.LABEL -dir test -prob theta

-seed is an extension for reproducible runs; when omitted, the seed comes from
OS entropy (and is recorded in the .paras file).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from gibbstopics.core import DEFAULTS, Hyperparams, ToolError, make_rng
from gibbstopics.corpus import load_corpus, load_labels
from gibbstopics.dmm import train_dmm
from gibbstopics.evaluation import evaluate_files
from gibbstopics.inference import infer, load_pretrained
from gibbstopics.lda import train_lda

MODES = ("LDA", "DMM", "LDAinf", "DMMinf", "Eval")


@dataclass
class CliCommand:
    mode: str
    hp: Hyperparams | None = None   # train modes
    corpus: str | None = None       # train and inf modes
    paras: str | None = None        # inf modes
    niters: int | None = None       # inf modes
    twords: int | None = None
    name: str | None = None
    sstep: int | None = None
    seed: int | None = None
    label: str | None = None        # Eval mode
    dir: str | None = None
    prob: str | None = None


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="gibbstopics",
        allow_abbrev=False,
        description="Topic modeling (LDA, DMM) via collapsed Gibbs sampling, "
                    "topic inference on unseen corpora, and clustering evaluation.",
        epilog="-seed is a reproducibility extension; defaults: -ntopics 20 "
               "-alpha 0.1 -beta 0.01 -niters 2000 -twords 20 -name model -sstep 0.",
    )
    p.add_argument("-model", required=True, choices=MODES, help="mode to run")
    p.add_argument("-corpus", help="input corpus file, one document per line")
    p.add_argument("-ntopics", type=int, help="number of topics (default 20)")
    p.add_argument("-alpha", type=float, help="document-topic prior (default 0.1)")
    p.add_argument("-beta", type=float, help="topic-word prior (default 0.01; 0.1 suits short texts)")
    p.add_argument("-niters", type=int, help="Gibbs sampling iterations (default 2000)")
    p.add_argument("-twords", type=int, help="top topical words to report (default 20)")
    p.add_argument("-name", help="experiment name used for output files (default 'model')")
    p.add_argument("-sstep", type=int, help="iterations between saved sampling outputs (default 0: final only)")
    p.add_argument("-paras", help="paras file of a pre-trained model (inference modes)")
    p.add_argument("-label", help="gold label file, one label per line (Eval mode)")
    p.add_argument("-dir", help="directory holding document-topic distribution files (Eval mode)")
    p.add_argument("-prob", help="distribution file name or name suffix (Eval mode)")
    p.add_argument("-seed", type=int, help="random seed (extension, for reproducible runs)")
    return p


def parse_args(argv) -> CliCommand:
    parser = _build_parser()
    args = parser.parse_args(argv)
    mode = args.model

    def require(flag):
        if getattr(args, flag) is None:
            parser.error(f"-{flag} is required with -model {mode}")

    def forbid(flag):
        if getattr(args, flag) is not None:
            parser.error(f"-{flag} is not accepted with -model {mode}")

    if mode == "Eval":
        for flag in ("label", "dir", "prob"):
            require(flag)
        for flag in ("corpus", "paras", "ntopics", "alpha", "beta", "niters",
                     "twords", "name", "sstep", "seed"):
            forbid(flag)
        return CliCommand(mode=mode, label=args.label, dir=args.dir, prob=args.prob)

    if mode in ("LDAinf", "DMMinf"):
        require("paras")
        require("corpus")
        # K, alpha and beta come from the paras file; only the sampling run
        # itself is configurable here.
        for flag in ("ntopics", "alpha", "beta"):
            forbid(flag)
        forbid("label"), forbid("dir"), forbid("prob")
        cmd = CliCommand(
            mode=mode,
            corpus=args.corpus,
            paras=args.paras,
            niters=args.niters if args.niters is not None else DEFAULTS["niters"],
            twords=args.twords if args.twords is not None else DEFAULTS["twords"],
            name=args.name if args.name is not None else DEFAULTS["name"],
            sstep=args.sstep if args.sstep is not None else DEFAULTS["sstep"],
            seed=args.seed,
        )
        if cmd.niters < 1:
            parser.error(f"-niters must be >= 1, got {cmd.niters}")
        if cmd.twords < 0:
            parser.error(f"-twords must be >= 0, got {cmd.twords}")
        if cmd.sstep < 0:
            parser.error(f"-sstep must be >= 0, got {cmd.sstep}")
        return cmd

    require("corpus")
    forbid("paras"), forbid("label"), forbid("dir"), forbid("prob")
    hp = Hyperparams(
        model=mode,
        ntopics=args.ntopics if args.ntopics is not None else DEFAULTS["ntopics"],
        alpha=args.alpha if args.alpha is not None else DEFAULTS["alpha"],
        beta=args.beta if args.beta is not None else DEFAULTS["beta"],
        niters=args.niters if args.niters is not None else DEFAULTS["niters"],
        twords=args.twords if args.twords is not None else DEFAULTS["twords"],
        name=args.name if args.name is not None else DEFAULTS["name"],
        sstep=args.sstep if args.sstep is not None else DEFAULTS["sstep"],
        seed=args.seed,
    )
    try:
        hp.validate()
    except ToolError as exc:
        parser.error(str(exc))
    return CliCommand(mode=mode, hp=hp, corpus=args.corpus)


def dispatch(cmd: CliCommand) -> int:
    try:
        if cmd.mode in ("LDA", "DMM"):
            corpus = load_corpus(cmd.corpus)
            rng, seed = make_rng(cmd.hp.seed)
            cmd.hp.seed = seed
            trainer = train_lda if cmd.mode == "LDA" else train_dmm
            trainer(corpus, cmd.hp, rng)
        elif cmd.mode in ("LDAinf", "DMMinf"):
            model = load_pretrained(cmd.paras)
            expected = "LDA" if cmd.mode == "LDAinf" else "DMM"
            if model.hp.model != expected:
                raise ToolError(
                    f"paras file {cmd.paras} is from a {model.hp.model} model, "
                    f"but -model {cmd.mode} was requested"
                )
            rng, seed = make_rng(cmd.seed)
            infer(model, cmd.corpus, cmd.niters, cmd.twords, cmd.name, cmd.sstep, rng, seed)
        else:
            labels = load_labels(cmd.label, _count_lines(cmd.label))
            summary = evaluate_files(cmd.dir, cmd.prob, labels)
            for r in summary.results:
                print(f"{r.file}\tpurity={r.purity:.5f}\tnmi={r.nmi:.5f}")
            if len(summary.results) > 1:
                print(f"mean\tpurity={summary.purity_mean:.5f}\tnmi={summary.nmi_mean:.5f}")
                print(f"stddev\tpurity={summary.purity_std:.5f}\tnmi={summary.nmi_std:.5f}")
        return 0
    except ToolError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _count_lines(path) -> int:
    try:
        with open(path, encoding="utf-8") as f:
            return len(f.read().splitlines())
    except OSError as exc:
        raise ToolError(f"cannot read label file {path}: {exc}") from exc


def main(argv=None) -> int:
    return dispatch(parse_args(argv))


def entry_point():
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
