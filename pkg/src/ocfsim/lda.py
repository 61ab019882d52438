"""Streaming variational inference for LDA.

Each agent owns one model. A batch of documents updates the topic parameter
matrix lambda with step size rho_t = (tau0 + t)^(-kappa); the E step iterates
the phi/gamma fixed point per document until the mean absolute gamma change
drops below gamma_tol. Topics are the row-normalized lambda.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .documents import CoalitionDocument


@dataclass
class LdaConfig:
    topics: int
    alpha: float
    eta: float
    tau0: float
    kappa: float
    d_estimate: int
    gamma_tol: float = 1e-3
    max_e_iters: int = 100
    gamma_init: str = "ones"

    def __post_init__(self):
        if self.topics < 1:
            raise ValueError("need at least one topic")
        if self.alpha <= 0 or self.eta <= 0:
            raise ValueError("alpha and eta must be positive")
        if self.tau0 < 0:
            raise ValueError("tau0 must be nonnegative")
        if not 0.5 < self.kappa <= 1.0:
            raise ValueError("kappa must lie in (0.5, 1] for convergence")
        if self.d_estimate < 1:
            raise ValueError("d_estimate must be a positive integer")
        if self.gamma_tol <= 0:
            raise ValueError("gamma_tol must be positive")
        if self.max_e_iters < 1:
            raise ValueError("max_e_iters must be >= 1")
        if self.gamma_init not in ("ones", "random"):
            raise ValueError("gamma_init must be 'ones' or 'random'")


@dataclass
class LdaState:
    lam: np.ndarray
    batch_counter: int = 1


@dataclass
class TopicMatrix:
    beta: np.ndarray


@dataclass
class EStepResult:
    gamma: np.ndarray
    phi: np.ndarray
    n_iters: int = 0
    converged: bool = True


def init_state(config: LdaConfig, vocab_size: int, rng: np.random.Generator) -> LdaState:
    """Fresh state with lambda ~ Gamma(100, 0.01) entries (mean 1)."""
    if vocab_size < 2:
        raise ValueError("vocabulary must have at least two words")
    lam = rng.gamma(100.0, 0.01, size=(config.topics, vocab_size))
    return LdaState(lam=lam, batch_counter=1)


def topics(state: LdaState) -> TopicMatrix:
    return TopicMatrix(beta=state.lam / state.lam.sum(axis=1, keepdims=True))


def rho(config: LdaConfig, t: int) -> float:
    return (config.tau0 + t) ** (-config.kappa)


def _batch_arrays(batch: list[CoalitionDocument]):
    offsets = np.zeros(len(batch) + 1, dtype=np.int64)
    for i, doc in enumerate(batch):
        offsets[i + 1] = offsets[i] + len(doc.word_ids)
    ids = np.concatenate([doc.word_ids for doc in batch])
    cts = np.concatenate([doc.counts for doc in batch]).astype(np.float64)
    return offsets, ids, cts


def _gamma0(config: LdaConfig, n_docs: int, rng) -> np.ndarray:
    if config.gamma_init == "ones":
        return np.ones((n_docs, config.topics))
    if rng is None:
        raise ValueError("gamma_init='random' needs an rng")
    return rng.gamma(100.0, 0.01, size=(n_docs, config.topics))


def _run_estep(state: LdaState, config: LdaConfig, batch, rng):
    if not batch:
        raise ValueError("batch must be non-empty")
    vocab_size = state.lam.shape[1]
    for doc in batch:
        if len(doc.word_ids) and int(doc.word_ids.max()) >= vocab_size:
            raise ValueError("document word id outside the model vocabulary")
    offsets, ids, cts = _batch_arrays(batch)
    gamma0 = _gamma0(config, len(batch), rng)
    return kernels.lda_estep_batch(
        state.lam,
        config.alpha,
        config.gamma_tol,
        config.max_e_iters,
        offsets,
        ids,
        cts,
        gamma0,
    )


def e_step(
    state: LdaState,
    config: LdaConfig,
    batch: list[CoalitionDocument],
    rng: np.random.Generator | None = None,
) -> list[EStepResult]:
    """Per-document variational parameters for a batch.

    phi covers the full vocabulary (rows are words, normalized over topics)
    and is evaluated at the E[log theta] of the final iteration, so the rows
    of the document's own words match the values that produced gamma.
    """
    gamma, _, eltheta, niters = _run_estep(state, config, batch, rng)
    elog_beta = kernels.digamma(state.lam) - kernels.digamma(state.lam.sum(axis=1))[:, None]
    results = []
    for d in range(len(batch)):
        raw = np.exp(eltheta[d][None, :] + elog_beta.T)
        phi = raw / (raw.sum(axis=1, keepdims=True) + 1e-100)
        results.append(
            EStepResult(
                gamma=gamma[d],
                phi=phi,
                n_iters=int(niters[d]),
                converged=bool(niters[d] < config.max_e_iters),
            )
        )
    return results


def update(
    state: LdaState,
    config: LdaConfig,
    batch: list[CoalitionDocument],
    rng: np.random.Generator | None = None,
) -> LdaState:
    """One online step: E step on the batch, then blend lambda toward the
    batch estimate eta + (D/S) * sum_d n_dw phi_dwk with weight rho_t."""
    _, sstats, _, _ = _run_estep(state, config, batch, rng)
    step = rho(config, state.batch_counter)
    lam_tilde = config.eta + (config.d_estimate / len(batch)) * sstats
    lam = (1.0 - step) * state.lam + step * lam_tilde
    return LdaState(lam=lam, batch_counter=state.batch_counter + 1)
