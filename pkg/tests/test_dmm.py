import numpy as np
import pytest

from gibbstopics.core import CountState, Hyperparams, ToolError, check_state, make_rng
from gibbstopics.dmm import (
    dmm_conditional,
    dmm_sweep,
    estimate_theta_dmm,
    init_dmm,
    train_dmm,
)

from conftest import make_corpus


def linear_conditional(state, hp, uwords, ucounts, n_vocab, n_docs):
    """Direct linear-space evaluation of the document conditional (oracle)."""
    out = np.zeros(hp.ntopics)
    for k in range(hp.ntopics):
        v = (state.mk[k] + hp.alpha) / (n_docs - 1 + hp.ntopics * hp.alpha)
        for w, c in zip(uwords, ucounts):
            for j in range(c):
                v *= state.nkw[k, w] + hp.beta + j
        for i in range(int(sum(ucounts))):
            v /= state.nk[k] + n_vocab * hp.beta + i
        out[k] = v
    return out


def removed_state(mk, nkw):
    nkw = np.asarray(nkw, dtype=np.int64)
    return CountState(
        ndk=np.zeros((1, len(mk)), dtype=np.int64),
        nkw=nkw,
        nk=nkw.sum(axis=1),
        z=np.zeros(1, dtype=np.int64),
        mk=np.asarray(mk, dtype=np.int64),
    )


def test_init_single_topic():
    corpus = make_corpus([[0], [1, 2], [0, 1]], 3)
    state = init_dmm(corpus, Hyperparams(model="DMM", ntopics=1), make_rng(1)[0])
    assert state.mk.tolist() == [3]


def test_init_conservation():
    corpus = make_corpus([[0, 1], [2], [1, 1, 2]], 3)
    state = init_dmm(corpus, Hyperparams(model="DMM", ntopics=4), make_rng(2)[0])
    assert state.mk.sum() == 3
    check_state(state, corpus.docs, "DMM")


def test_init_deterministic():
    corpus = make_corpus([[0, 1], [2], [1]], 3)
    a = init_dmm(corpus, Hyperparams(model="DMM", ntopics=3), make_rng(9)[0])
    b = init_dmm(corpus, Hyperparams(model="DMM", ntopics=3), make_rng(9)[0])
    assert np.array_equal(a.z, b.z)


def test_conditional_symmetry_with_zero_counts():
    hp = Hyperparams(model="DMM", ntopics=3, alpha=0.4, beta=0.2)
    state = removed_state([0, 0, 0], np.zeros((3, 4)))
    logw = dmm_conditional(state, hp, np.array([1]), np.array([1]), 4, 5)
    w = np.exp(logw - logw.max())
    assert np.allclose(w / w.sum(), [1 / 3] * 3, atol=1e-12)


def test_conditional_worked_example():
    # K=2, D=3, V=3, alpha=beta=0.1, document = two copies of word 0;
    # removed counts: mk=[1,1], nkw[:,0]=[2,0], nk=[4,1]
    hp = Hyperparams(model="DMM", ntopics=2, alpha=0.1, beta=0.1)
    state = removed_state([1, 1], [[2, 1, 1], [0, 1, 0]])
    logw = dmm_conditional(state, hp, np.array([0]), np.array([2]), 3, 3)
    w = np.exp(logw)
    assert np.allclose(w, [0.14282580, 0.01839465], atol=1e-6)
    assert np.allclose(w / w.sum(), [0.88590, 0.11410], atol=1e-4)


def test_conditional_single_topic():
    hp = Hyperparams(model="DMM", ntopics=1, alpha=0.1, beta=0.1)
    state = removed_state([2], [[3, 1]])
    logw = dmm_conditional(state, hp, np.array([0]), np.array([1]), 2, 3)
    w = np.exp(logw - logw.max())
    assert np.allclose(w / w.sum(), [1.0])


def test_log_space_matches_linear_space(rng):
    # short documents (N_d <= 20) stay inside linear-space range
    hp = Hyperparams(model="DMM", ntopics=4, alpha=0.3, beta=0.05)
    for _ in range(50):
        nkw = rng.integers(0, 6, size=(4, 7)).astype(np.int64)
        state = removed_state(rng.integers(0, 5, size=4), nkw)
        uwords, ucounts = np.unique(rng.integers(0, 7, size=rng.integers(1, 12)),
                                    return_counts=True)
        logw = dmm_conditional(state, hp, uwords, ucounts, 7, 9)
        expected = linear_conditional(state, hp, uwords, ucounts, 7, 9)
        assert np.allclose(np.exp(logw), expected, rtol=1e-9)


def test_conditional_detects_corrupt_counts():
    hp = Hyperparams(model="DMM", ntopics=2, alpha=0.1, beta=0.1)
    state = removed_state([1, -2], [[0, 0], [0, 0]])
    with pytest.raises(ToolError):
        dmm_conditional(state, hp, np.array([0]), np.array([1]), 2, 3)


def test_sweep_single_topic_is_identity():
    corpus = make_corpus([[0, 1], [2]], 3)
    hp = Hyperparams(model="DMM", ntopics=1)
    rng, _ = make_rng(3)
    state = init_dmm(corpus, hp, rng)
    before = state.z.copy()
    dmm_sweep(corpus, state, hp, rng)
    assert np.array_equal(before, state.z)


def test_sweep_preserves_invariants():
    corpus = make_corpus([[0, 1, 1], [2, 0], [1], [2, 2, 0, 1]], 3)
    hp = Hyperparams(model="DMM", ntopics=3, beta=0.1)
    rng, _ = make_rng(4)
    state = init_dmm(corpus, hp, rng)
    for _ in range(10):
        dmm_sweep(corpus, state, hp, rng)
        check_state(state, corpus.docs, "DMM")
        assert state.mk.sum() == corpus.n_docs


def test_theta_single_topic():
    corpus = make_corpus([[0], [1, 2]], 3)
    hp = Hyperparams(model="DMM", ntopics=1)
    state = init_dmm(corpus, hp, make_rng(5)[0])
    theta = estimate_theta_dmm(state, corpus, hp)
    assert np.allclose(theta, 1.0)


def test_theta_rows_sum_to_one():
    corpus = make_corpus([[0, 1, 1], [2, 0], [1, 2, 2, 0]], 3)
    hp = Hyperparams(model="DMM", ntopics=4, beta=0.1)
    rng, _ = make_rng(6)
    state = init_dmm(corpus, hp, rng)
    dmm_sweep(corpus, state, hp, rng)
    theta = estimate_theta_dmm(state, corpus, hp)
    assert np.allclose(theta.sum(axis=1), 1.0, atol=1e-9)


def test_theta_matches_conditional_worked_example():
    # full state whose leave-one-out removal of doc 0 reproduces the
    # dmm_conditional worked example, so theta[0] = [0.88590, 0.11410]
    corpus = make_corpus([[0, 0], [0, 0, 1, 2], [1]], 3)
    hp = Hyperparams(model="DMM", ntopics=2, alpha=0.1, beta=0.1)
    z = np.array([0, 0, 1], dtype=np.int64)
    from gibbstopics.core import recount_dmm
    state = recount_dmm(corpus.docs, z, 2, 3)
    theta = estimate_theta_dmm(state, corpus, hp)
    assert np.allclose(theta[0], [0.88590, 0.11410], atol=1e-4)
    # state restored after the leave-one-out pass
    check_state(state, corpus.docs, "DMM")


def test_train_writes_outputs_and_assignment_format(tmp_path):
    path = tmp_path / "c.txt"
    path.write_text("a b\nc a\nb b c\n")
    from gibbstopics.corpus import load_corpus
    corpus = load_corpus(path)
    hp = Hyperparams(model="DMM", ntopics=2, beta=0.1, niters=1, name="run")
    train_dmm(corpus, hp, make_rng(5)[0], quiet=True)
    assert len(list(tmp_path.glob("run.*"))) == 5
    lines = (tmp_path / "run.topicAssignments").read_text().splitlines()
    assert len(lines) == 3
    assert all(line.strip().isdigit() for line in lines)


def test_train_deterministic_given_seed(tmp_path):
    from gibbstopics.corpus import load_corpus
    path = tmp_path / "c.txt"
    path.write_text("a b a\nc b\nb c a\n")
    corpus = load_corpus(path)
    contents = []
    for _ in range(2):
        hp = Hyperparams(model="DMM", ntopics=2, beta=0.1, niters=15, name="run", seed=13)
        train_dmm(corpus, hp, make_rng(13)[0], quiet=True)
        contents.append([(tmp_path / f"run.{s}").read_bytes()
                         for s in ("theta", "phi", "topWords", "topicAssignments", "paras")])
    assert contents[0] == contents[1]
