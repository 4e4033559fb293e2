"""Topic modeling via collapsed Gibbs sampling: LDA and the one-topic-per-document
Dirichlet Multinomial Mixture, plus topic inference on unseen corpora and a
document-clustering evaluation (Purity, NMI)."""

from gibbstopics.core import (
    CountState,
    Hyperparams,
    ToolError,
    estimate_phi,
    estimate_theta_lda,
    make_rng,
    sample_categorical,
    top_words,
)
from gibbstopics.corpus import Corpus, LabelSet, Vocabulary, load_corpus, load_labels
from gibbstopics.dmm import dmm_conditional, dmm_sweep, estimate_theta_dmm, init_dmm, train_dmm
from gibbstopics.evaluation import argmax_cluster, evaluate_files, nmi, purity
from gibbstopics.inference import PretrainedModel, infer, load_pretrained
from gibbstopics.lda import init_lda, lda_conditional, lda_sweep, train_lda

__all__ = [
    "Corpus",
    "CountState",
    "Hyperparams",
    "LabelSet",
    "PretrainedModel",
    "ToolError",
    "Vocabulary",
    "argmax_cluster",
    "dmm_conditional",
    "dmm_sweep",
    "estimate_phi",
    "estimate_theta_dmm",
    "estimate_theta_lda",
    "evaluate_files",
    "infer",
    "init_dmm",
    "init_lda",
    "lda_conditional",
    "lda_sweep",
    "load_corpus",
    "load_labels",
    "load_pretrained",
    "make_rng",
    "nmi",
    "purity",
    "sample_categorical",
    "top_words",
    "train_dmm",
    "train_lda",
]
