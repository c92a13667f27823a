"""Truncated-Fock pure-loss and quantum-limited amplifier channels and the
entropy-gain / adjoint-relation checks built on them.

Truncation policy: channels act on the span of Fock levels 0..n_max.  The
loss channel is exactly trace-preserving there (it only moves photons down);
the amplifier leaks probability above the cutoff and is trace-non-increasing.
Identity claims inherited from the infinite-dimensional channels are asserted
only on a guard-banded subspace ``n <= n_max - n_guard``, and each report
carries an analytic estimate of the truncation tail so a failure can be
attributed to truncation rather than to a construction error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .entropy import entropy, rel_entropy
from .qcore import Channel, transfer_matrix
from .reports import CheckReport

__all__ = [
    "FockTruncation",
    "GaussianChannelSpec",
    "loss_channel",
    "amp_channel",
    "vacuum_state",
    "fock_state",
    "geometric_state",
    "mean_photon",
    "loss_identity_tail",
    "recommended_guard",
    "check_almost_unital",
    "check_adjoint_relation",
    "check_bosonic_entropy_gain",
    "check_loss_semigroup",
    "DEFAULT_GUARD",
    "DEFAULT_TRUNC_TOL",
]

DEFAULT_GUARD = 15
DEFAULT_TRUNC_TOL = 1e-6


@dataclass(frozen=True)
class FockTruncation:
    """Highest occupied Fock level retained; matrix dimension is n_max + 1."""

    n_max: int = 40

    def __post_init__(self):
        if self.n_max < 1:
            raise ValueError("n_max must be at least 1")

    @property
    def dim(self) -> int:
        return self.n_max + 1


@dataclass(frozen=True)
class GaussianChannelSpec:
    """Loss (transmissivity eta), amplifier (gain), or their composition."""

    kind: str
    truncation: FockTruncation = FockTruncation()
    eta: float | None = None
    gain: float | None = None

    def __post_init__(self):
        if self.kind not in ("loss", "amp", "compose"):
            raise ValueError(f"unknown channel kind {self.kind!r}")
        if self.kind in ("loss", "compose"):
            if self.eta is None or not 0.0 <= self.eta <= 1.0:
                raise ValueError(f"loss transmissivity must lie in [0, 1], got {self.eta!r}")
        if self.kind in ("amp", "compose"):
            if self.gain is None or self.gain < 1.0:
                raise ValueError(f"amplifier gain must be >= 1, got {self.gain!r}")

    def parameter(self) -> float:
        if self.kind == "loss":
            return float(self.eta)
        if self.kind == "amp":
            return float(self.gain)
        return float(self.eta * self.gain)

    def almost_unital_constant(self) -> float:
        """c with N(I) = c^{-1} I in infinite dimension."""
        if self.kind == "loss":
            return float(self.eta)
        if self.kind == "amp":
            return float(self.gain)
        return float(self.eta * self.gain)


def loss_channel(eta: float, trunc: FockTruncation = FockTruncation()) -> Channel:
    """Beamsplitter with vacuum environment: <n-k|K_k|n> = sqrt(C(n,k) eta^(n-k) (1-eta)^k)."""
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"transmissivity must lie in [0, 1], got {eta!r}")
    d = trunc.dim
    ks = []
    for k in range(d):
        mat = np.zeros((d, d))
        for n in range(k, d):
            mat[n - k, n] = math.sqrt(math.comb(n, k) * eta ** (n - k) * (1.0 - eta) ** k)
        if np.any(mat):
            ks.append(mat)
    return Channel(tuple(ks))


def amp_channel(gain: float, trunc: FockTruncation = FockTruncation()) -> Channel:
    """Two-mode squeezer with vacuum environment, truncated at n_max:

    <n+k|A_k|n> = sqrt(C(n+k, k) (1 - 1/G)^k (1/G)^(n+1)).
    """
    if gain < 1.0:
        raise ValueError(f"gain must be >= 1, got {gain!r}")
    d = trunc.dim
    inv = 1.0 / gain
    ks = []
    for k in range(d):
        mat = np.zeros((d, d))
        for n in range(0, d - k):
            mat[n + k, n] = math.sqrt(math.comb(n + k, k) * (1.0 - inv) ** k * inv ** (n + 1))
        if np.any(mat):
            ks.append(mat)
    return Channel(tuple(ks))


def _spec_channels(spec: GaussianChannelSpec):
    """Forward channel stages (applied left to right) and the reversal stages."""
    trunc = spec.truncation
    if spec.kind == "loss":
        return [loss_channel(spec.eta, trunc)], [amp_channel(1.0 / spec.eta, trunc)]
    if spec.kind == "amp":
        return [amp_channel(spec.gain, trunc)], [loss_channel(1.0 / spec.gain, trunc)]
    forward = [loss_channel(spec.eta, trunc), amp_channel(spec.gain, trunc)]
    reverse = [loss_channel(1.0 / spec.gain, trunc), amp_channel(1.0 / spec.eta, trunc)]
    return forward, reverse


def _apply_stages(stages, mat: np.ndarray) -> np.ndarray:
    for ch in stages:
        mat = ch.apply(mat)
    return mat


def vacuum_state(trunc: FockTruncation = FockTruncation()) -> np.ndarray:
    return fock_state(0, trunc)


def fock_state(n: int, trunc: FockTruncation = FockTruncation()) -> np.ndarray:
    if not 0 <= n <= trunc.n_max:
        raise ValueError(f"Fock level {n} outside truncation 0..{trunc.n_max}")
    mat = np.zeros((trunc.dim, trunc.dim))
    mat[n, n] = 1.0
    return mat


def geometric_state(mean: float, trunc: FockTruncation = FockTruncation(), support_max: int | None = None) -> np.ndarray:
    """Thermal-like diagonal state with geometric populations, renormalized
    after truncating to ``support_max`` (default: the full truncated space)."""
    if mean <= 0:
        raise ValueError("mean must be positive")
    top = trunc.n_max if support_max is None else int(support_max)
    r = mean / (1.0 + mean)
    pops = np.array([r**n for n in range(top + 1)])
    pops /= pops.sum()
    mat = np.zeros((trunc.dim, trunc.dim))
    mat[: top + 1, : top + 1] = np.diag(pops)
    return mat


def mean_photon(mat: np.ndarray) -> float:
    d = mat.shape[0]
    return float(np.real(np.sum(np.arange(d) * np.diag(mat))))


def loss_identity_tail(eta: float, level: int, n_max: int) -> float:
    """Analytic truncation deficit of <m|B_eta(I)|m> at m = level:

    eta^m * sum_{k > n_max - m} C(m+k, k) (1-eta)^k, the negative-binomial
    tail lost to the cutoff.  This is exactly how far the truncated channel
    must deviate from the infinite-dimensional identity B_eta(I) = I/eta.
    """
    if eta >= 1.0:
        return 0.0
    m = int(level)
    x = 1.0 - eta
    k = n_max - m + 1
    term = math.comb(m + k, k) * x**k
    total = 0.0
    while True:
        total += term
        k += 1
        term *= x * (m + k) / k
        if term < total * 1e-16 or k > 100 * (n_max + 1):
            break
    return eta**m * total


def recommended_guard(spec: GaussianChannelSpec, trunc_tol: float = DEFAULT_TRUNC_TOL) -> int:
    """Smallest guard band making the almost-unital identity testable at trunc_tol.

    The amplifier identity is exact under truncation, so only the loss part
    contributes; for pure amplifiers the default guard is returned.
    """
    if spec.kind == "amp":
        return DEFAULT_GUARD
    n_max = spec.truncation.n_max
    for guard in range(0, n_max):
        if loss_identity_tail(spec.eta, n_max - guard, n_max) <= trunc_tol:
            return guard
    return n_max - 1


def check_almost_unital(
    spec: GaussianChannelSpec,
    n_guard: int | None = DEFAULT_GUARD,
    trunc_tol: float = DEFAULT_TRUNC_TOL,
    seed=None,
) -> CheckReport:
    """Deviation of N(I) from c^{-1} I on the guard-banded subspace.

    ``n_guard=None`` selects the recommended (parameter-dependent) guard.  The
    report's aux payload carries the analytic truncation tail at the band
    edge; when that tail alone exceeds ``trunc_tol`` the guard band is too
    small for this parameter and the report is flagged truncation-dominated.
    """
    if n_guard is None:
        n_guard = recommended_guard(spec, trunc_tol)
    n_max = spec.truncation.n_max
    keep = n_max - n_guard + 1
    if keep < 1:
        raise ValueError("guard band leaves no levels to check")
    forward, _ = _spec_channels(spec)
    out = _apply_stages(forward, np.eye(spec.truncation.dim))
    target = np.eye(spec.truncation.dim) / spec.almost_unital_constant()
    deviation = float(np.abs((out - target)[:keep, :keep]).max())
    if spec.kind == "amp":
        tail = 0.0
    else:
        tail = loss_identity_tail(spec.eta, keep - 1, n_max)
        if spec.kind == "compose":
            tail /= spec.gain
    return CheckReport(
        name=f"bosonic-almost-unital-{spec.kind}",
        lhs=0.0,
        rhs=deviation,
        tol=trunc_tol,
        seed=seed,
        dims=(spec.truncation.dim,),
        aux={
            "parameter": spec.parameter(),
            "guard": n_guard,
            "analytic_tail": tail,
            "truncation_dominated": tail > trunc_tol,
        },
    )


def _transfer_choi(t: np.ndarray, dim: int) -> np.ndarray:
    """Reshuffle a row-major transfer matrix into the input-first Choi 4-tensor."""
    return t.reshape(dim, dim, dim, dim).transpose(2, 0, 3, 1)


def check_adjoint_relation(
    spec: GaussianChannelSpec,
    n_guard: int = DEFAULT_GUARD,
    trunc_tol: float = DEFAULT_TRUNC_TOL,
    seed=None,
) -> CheckReport:
    """Adjoint duality between loss and amplification:

    B_eta^dag = eta^{-1} A_{1/eta},  A_G^dag = G^{-1} B_{1/G}, and
    (A_G o B_eta)^dag = (eta G)^{-1} A_{1/eta} o B_{1/G}.

    Both sides are compared as Choi matrices restricted to the guard-banded
    subspace.  With the Kraus conventions used here the single-channel
    relations hold to machine precision on the whole truncated space.
    """
    d = spec.truncation.dim
    forward, reverse = _spec_channels(spec)
    t_forward = transfer_matrix(forward[0])
    for ch in forward[1:]:
        t_forward = transfer_matrix(ch) @ t_forward
    t_adjoint = t_forward.conj().T
    # reversal stages compose in the adjoint order
    t_reverse = transfer_matrix(reverse[0])
    for ch in reverse[1:]:
        t_reverse = transfer_matrix(ch) @ t_reverse
    scale = 1.0 / spec.almost_unital_constant()
    keep = spec.truncation.n_max - n_guard + 1
    choi_lhs = _transfer_choi(t_adjoint, d)[:keep, :keep, :keep, :keep]
    choi_rhs = scale * _transfer_choi(t_reverse, d)[:keep, :keep, :keep, :keep]
    deviation = float(np.abs(choi_lhs - choi_rhs).max())
    return CheckReport(
        name=f"bosonic-adjoint-{spec.kind}",
        lhs=0.0,
        rhs=deviation,
        tol=trunc_tol,
        seed=seed,
        dims=(d,),
        aux={"parameter": spec.parameter(), "guard": n_guard, "scale": scale},
    )


def check_bosonic_entropy_gain(
    spec: GaussianChannelSpec,
    rho: np.ndarray,
    n_guard: int = DEFAULT_GUARD,
    trunc_tol: float = DEFAULT_TRUNC_TOL,
    tol: float | None = None,
    seed=None,
    state_name: str = "state",
) -> CheckReport:
    """Entropy-gain inequality with the log-parameter shift, e.g. for loss:

    H(B_eta(rho)) - H(rho) >= D(rho || (A_{1/eta} o B_eta)(rho)) + log2(eta),

    and the gain/composition analogues with log2(G) and log2(eta G).  Inputs
    must be low-energy: supported inside the guard band with mean photon
    number at most n_max / 4.
    """
    n_max = spec.truncation.n_max
    keep = n_max - n_guard + 1
    rho = np.asarray(rho, dtype=complex)
    leakage = float(np.real(np.trace(rho[keep:, keep:])))
    if leakage > 1e-12:
        raise ValueError(
            f"input state leaks {leakage:.3e} probability above the guard band (n >= {keep})"
        )
    mean = mean_photon(rho)
    if mean > n_max / 4:
        raise ValueError(f"mean photon number {mean:.2f} exceeds n_max/4 = {n_max / 4}")
    if tol is None:
        tol = trunc_tol + 1e-6
    forward, reverse = _spec_channels(spec)
    out = _apply_stages(forward, rho)
    reversed_out = _apply_stages(reverse, out)
    lhs = entropy(out) - entropy(rho)
    d = rel_entropy(rho, reversed_out)
    rhs = d.value + math.log2(spec.almost_unital_constant())
    return CheckReport(
        name=f"bosonic-entropy-gain-{spec.kind}",
        lhs=lhs,
        rhs=rhs,
        tol=tol,
        seed=seed,
        dims=(spec.truncation.dim,),
        aux={
            "parameter": spec.parameter(),
            "state": state_name,
            "mean_photon": mean,
            "guard_leakage": leakage,
            "output_trace_deficit": 1.0 - float(np.real(np.trace(out))),
            "support_violation": d.support_violation,
        },
    )


def check_loss_semigroup(
    eta1: float,
    eta2: float,
    trunc: FockTruncation = FockTruncation(),
    trunc_tol: float = DEFAULT_TRUNC_TOL,
    seed=None,
) -> CheckReport:
    """B_eta1 o B_eta2 = B_(eta1 eta2): exact under truncation since loss only
    moves photons down the ladder."""
    t_comp = transfer_matrix(loss_channel(eta1, trunc)) @ transfer_matrix(loss_channel(eta2, trunc))
    t_direct = transfer_matrix(loss_channel(eta1 * eta2, trunc))
    deviation = float(np.abs(t_comp - t_direct).max())
    return CheckReport(
        name="bosonic-loss-semigroup",
        lhs=0.0,
        rhs=deviation,
        tol=trunc_tol,
        seed=seed,
        dims=(trunc.dim,),
        aux={"eta1": eta1, "eta2": eta2},
    )
