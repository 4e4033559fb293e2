"""Collapsed Gibbs sampler for LDA: per-token topic reassignment.

Full conditional for token (d, i) carrying word w, with that token's counts
already removed from the tables:

    p(z = k) ~ (n_dk + alpha) * (n_kw + beta) / (n_k + V*beta)
"""

from __future__ import annotations

import numpy as np

from gibbstopics import persistence
from gibbstopics.core import (
    CountState,
    Hyperparams,
    ToolError,
    check_state,
    estimate_phi,
    estimate_theta_lda,
    sample_categorical,
)


def init_lda(corpus, hp: Hyperparams, rng: np.random.Generator) -> CountState:
    """Assign every token a uniformly random topic and build the count tables."""
    ntopics = hp.ntopics
    n_docs = len(corpus.docs)
    n_vocab = corpus.vocab.size
    ndk = np.zeros((n_docs, ntopics), dtype=np.int64)
    nkw = np.zeros((ntopics, n_vocab), dtype=np.int64)
    z = []
    for d, doc in enumerate(corpus.docs):
        zd = rng.integers(0, ntopics, size=len(doc))
        ndk[d] = np.bincount(zd, minlength=ntopics)
        np.add.at(nkw, (zd, doc), 1)
        z.append(zd)
    nk = nkw.sum(axis=1)
    return CountState(ndk=ndk, nkw=nkw, nk=nk, z=z)


def lda_conditional(state: CountState, hp: Hyperparams, d: int, word: int, n_vocab: int) -> np.ndarray:
    """Unnormalized topic weights for one token, whose current assignment must
    already be decremented from all tables."""
    weights = (state.ndk[d] + hp.alpha) * (state.nkw[:, word] + hp.beta) / (state.nk + n_vocab * hp.beta)
    if not np.all(np.isfinite(weights)) or np.any(weights <= 0):
        raise ToolError("lda_conditional: nonpositive weight, count bookkeeping corrupt")
    return weights


def lda_sweep(corpus, state: CountState, hp: Hyperparams, rng: np.random.Generator):
    """One full pass: every token visited in (document, position) order,
    decremented, resampled from its conditional and re-incremented."""
    nkw = state.nkw
    nk = state.nk
    n_vocab = nkw.shape[1]
    for d, doc in enumerate(corpus.docs):
        zd = state.z[d]
        ndk_d = state.ndk[d]
        for i in range(len(doc)):
            w = doc[i]
            k_old = zd[i]
            ndk_d[k_old] -= 1
            nkw[k_old, w] -= 1
            nk[k_old] -= 1
            weights = lda_conditional(state, hp, d, w, n_vocab)
            k_new = sample_categorical(weights, rng)
            zd[i] = k_new
            ndk_d[k_new] += 1
            nkw[k_new, w] += 1
            nk[k_new] += 1
    return state


def train_lda(corpus, hp: Hyperparams, rng: np.random.Generator,
              validate: bool = False, quiet: bool = False) -> CountState:
    """Run init plus niters sweeps, persisting the five artifacts at each save
    point (every sstep iterations when sstep > 0) and always at the end."""
    hp.validate()
    base = persistence.output_base(corpus.source_path, hp.name)
    state = init_lda(corpus, hp, rng)
    for it in range(1, hp.niters + 1):
        lda_sweep(corpus, state, hp, rng)
        if validate:
            check_state(state, corpus.docs, "LDA")
        if hp.sstep > 0 and it % hp.sstep == 0 and it < hp.niters:
            _save(base, corpus, state, hp, iteration=it)
            if not quiet:
                print(f"LDA iteration {it}/{hp.niters}: saved {base}.* ({it})")
    _save(base, corpus, state, hp)
    if not quiet:
        print(f"LDA done: {hp.niters} iterations, outputs at {base}.*")
    return state


def _save(base, corpus, state, hp, iteration=None):
    theta = estimate_theta_lda(state, hp)
    phi = estimate_phi(state, hp)
    persistence.save_outputs(base, theta, phi, corpus.vocab, state.z, hp,
                             corpus.source_path, iteration=iteration)
