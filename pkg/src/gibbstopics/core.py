"""Shared model state: hyperparameters, Gibbs count tables, seeded sampling and
the theta/phi estimators used by both samplers."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

MODEL_KINDS = ("LDA", "DMM", "LDAinf", "DMMinf")

DEFAULTS = {
    "ntopics": 20,
    "alpha": 0.1,
    "beta": 0.01,
    "niters": 2000,
    "twords": 20,
    "name": "model",
    "sstep": 0,
}


class ToolError(Exception):
    """Fatal, user-facing error: bad input, corrupt state or failed IO."""


@dataclass
class Hyperparams:
    model: str = "LDA"
    ntopics: int = DEFAULTS["ntopics"]
    alpha: float = DEFAULTS["alpha"]
    beta: float = DEFAULTS["beta"]
    niters: int = DEFAULTS["niters"]
    twords: int = DEFAULTS["twords"]
    name: str = DEFAULTS["name"]
    sstep: int = DEFAULTS["sstep"]
    seed: int | None = None

    def validate(self):
        if self.model not in MODEL_KINDS:
            raise ToolError(f"unknown model kind {self.model!r}")
        if self.ntopics < 1:
            raise ToolError(f"ntopics must be >= 1, got {self.ntopics}")
        if not self.alpha > 0:
            raise ToolError(f"alpha must be > 0, got {self.alpha}")
        if not self.beta > 0:
            raise ToolError(f"beta must be > 0, got {self.beta}")
        if self.niters < 1:
            raise ToolError(f"niters must be >= 1, got {self.niters}")
        if self.twords < 0:
            raise ToolError(f"twords must be >= 0, got {self.twords}")
        if self.sstep < 0:
            raise ToolError(f"sstep must be >= 0, got {self.sstep}")
        return self


@dataclass
class CountState:
    """Gibbs count tables and current assignments.

    ndk: D x K tokens of document d assigned to topic k
    nkw: K x V tokens of word w assigned to topic k
    nk:  length-K topic token totals
    z:   per-document token assignments (LDA) or one topic per document (DMM)
    mk:  length-K document counts per topic (DMM only)
    """

    ndk: np.ndarray
    nkw: np.ndarray
    nk: np.ndarray
    z: list
    mk: np.ndarray | None = None


def make_rng(seed: int | None = None) -> tuple[np.random.Generator, int]:
    """Build a PCG64 generator; when seed is None, draw one from OS entropy
    and return it so the run can be reproduced."""
    if seed is None:
        seed = int(np.random.SeedSequence().entropy)
    return np.random.Generator(np.random.PCG64(seed)), seed


def sample_categorical(weights, rng: np.random.Generator) -> int:
    """Draw an index proportionally to the given nonnegative weights.

    Consumes exactly one uniform variate, so a fixed seed gives an identical
    draw sequence across runs.
    """
    w = np.asarray(weights, dtype=np.float64)
    if w.size == 0:
        raise ToolError("sample_categorical: empty weight vector")
    if not np.all(np.isfinite(w)) or np.any(w < 0):
        raise ToolError("sample_categorical: non-finite or negative weights (sampler state corrupt)")
    total = w.sum()
    if total <= 0:
        raise ToolError("sample_categorical: all weights zero (sampler state corrupt)")
    u = rng.random() * total
    idx = int(np.searchsorted(np.cumsum(w), u, side="right"))
    return min(idx, w.size - 1)


def estimate_theta_lda(state: CountState, hp: Hyperparams) -> np.ndarray:
    """theta[d,k] = (n_dk + alpha) / (N_d + K*alpha), row-stochastic D x K."""
    nd = state.ndk.sum(axis=1, keepdims=True)
    return (state.ndk + hp.alpha) / (nd + hp.ntopics * hp.alpha)


def estimate_phi(state: CountState, hp: Hyperparams) -> np.ndarray:
    """phi[k,w] = (n_kw + beta) / (n_k + V*beta), row-stochastic K x V."""
    n_vocab = state.nkw.shape[1]
    return (state.nkw + hp.beta) / (state.nk[:, None] + n_vocab * hp.beta)


def top_words(phi_row, vocab, t: int) -> list[tuple[str, float]]:
    """The min(t, V) most probable words of one topic, descending by
    probability, ties broken by ascending word id."""
    row = np.asarray(phi_row, dtype=np.float64)
    n_vocab = row.size
    if t <= 0:
        return []
    order = np.lexsort((np.arange(n_vocab), -row))[: min(t, n_vocab)]
    return [(vocab.words[i], float(row[i])) for i in order]


def recount_lda(docs, z, ntopics: int, n_vocab: int) -> CountState:
    """Rebuild all LDA count tables from scratch from the assignments."""
    n_docs = len(docs)
    ndk = np.zeros((n_docs, ntopics), dtype=np.int64)
    nkw = np.zeros((ntopics, n_vocab), dtype=np.int64)
    nk = np.zeros(ntopics, dtype=np.int64)
    for d, (doc, zd) in enumerate(zip(docs, z)):
        ndk[d] = np.bincount(zd, minlength=ntopics)
        np.add.at(nkw, (zd, doc), 1)
    nk = nkw.sum(axis=1)
    return CountState(ndk=ndk, nkw=nkw, nk=nk, z=[np.array(zd) for zd in z])


def recount_dmm(docs, z, ntopics: int, n_vocab: int) -> CountState:
    """Rebuild all DMM count tables from scratch from the per-document topics."""
    n_docs = len(docs)
    z = np.asarray(z, dtype=np.int64)
    ndk = np.zeros((n_docs, ntopics), dtype=np.int64)
    nkw = np.zeros((ntopics, n_vocab), dtype=np.int64)
    mk = np.bincount(z, minlength=ntopics).astype(np.int64)
    for d, doc in enumerate(docs):
        ndk[d, z[d]] = len(doc)
        np.add.at(nkw[z[d]], doc, 1)
    nk = nkw.sum(axis=1)
    return CountState(ndk=ndk, nkw=nkw, nk=nk, z=z, mk=mk)


def check_state(state: CountState, docs, kind: str):
    """Assert the count-conservation invariants by recounting from z.

    Raises ToolError on any mismatch; used in validation mode and tests.
    """
    ntopics = state.nk.size
    n_vocab = state.nkw.shape[1]
    if kind in ("DMM", "DMMinf"):
        ref = recount_dmm(docs, state.z, ntopics, n_vocab)
        if state.mk is None or not np.array_equal(ref.mk, state.mk):
            raise ToolError("count invariant violated: mk does not match assignments")
        if int(state.mk.sum()) != len(docs):
            raise ToolError("count invariant violated: sum(mk) != D")
    else:
        ref = recount_lda(docs, state.z, ntopics, n_vocab)
    if not np.array_equal(ref.ndk, state.ndk):
        raise ToolError("count invariant violated: ndk does not match assignments")
    if not np.array_equal(ref.nkw, state.nkw):
        raise ToolError("count invariant violated: nkw does not match assignments")
    if not np.array_equal(ref.nk, state.nk):
        raise ToolError("count invariant violated: nk does not match assignments")
    total = sum(len(doc) for doc in docs)
    if int(state.nk.sum()) != total:
        raise ToolError("count invariant violated: sum(nk) != total tokens")
