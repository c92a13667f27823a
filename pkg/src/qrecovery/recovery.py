"""Recovery maps: Petz, rotated Petz, the integrated recovery channel with
projector completion, the explicit conditional-mutual-information recovery
map, the adjoint-based recovery channel, and the Uhlmann isometry maximizer.

Construction notes
------------------
A Petz map for reference ``sigma`` and channel ``N`` with Kraus ``{K_i}`` has
Kraus operators ``sigma^{1/2} K_i^dag N(sigma)^{-1/2}`` (generalized inverses
throughout).  Rotating by the modular unitaries ``omega^{it} . omega^{-it}``
multiplies these by complex matrix powers, and the integrated channel sums
quadrature-weighted rotated maps plus a completion term
``Tr{(I - Pi) . } tau`` on the kernel of ``N(sigma)``, which restores exact
trace preservation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matfun import complex_power, eig_hermitian, rank_cutoff
from .qcore import (
    Channel,
    DensityOperator,
    DimensionMismatchError,
    KrausMap,
    Purification,
)

__all__ = [
    "NotCompletelyPositiveError",
    "RotatedPetzSpec",
    "QuadratureSpec",
    "UhlmannResult",
    "p_weight",
    "quadrature",
    "petz_map",
    "rotated_petz",
    "integrated_recovery",
    "cmi_recovery",
    "adjoint_recovery",
    "uhlmann_isometry",
]


class NotCompletelyPositiveError(ValueError):
    """Raised when a requested recovery map would not be completely positive.

    Carries a witness input on which the completion weight is negative.
    """

    def __init__(self, message: str, witness: np.ndarray):
        super().__init__(message)
        self.witness = witness


def p_weight(t, printed: bool = False):
    """The rotation-parameter probability density.

    The default is the normalized density ``(pi/2) / (cosh(pi t) + 1)``, which
    integrates to one.  ``printed=True`` exposes the unnormalized variant
    ``(pi/2) / (cosh(t) + 1)`` (integral pi) for inspection; nothing else in
    the package uses it.
    """
    t = np.asarray(t, dtype=float)
    arg = t if printed else np.pi * t
    with np.errstate(over="ignore"):
        out = (np.pi / 2.0) / (np.cosh(arg) + 1.0)
    if out.ndim == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class QuadratureSpec:
    """Composite Gauss-Legendre rule for integrals against ``p_weight``.

    ``nodes`` total nodes (odd) are spread over ``panels`` equal subintervals
    of ``[-halfwidth, halfwidth]``; any remainder nodes go to the leading
    panels.  The returned weights absorb the density and are renormalized to
    sum exactly to one, which keeps integrated recovery maps exactly
    trace-preserving.
    """

    nodes: int = 101
    halfwidth: float = 10.0
    scheme: str = "composite-gauss-legendre"
    panels: int = 10

    def __post_init__(self):
        if self.nodes < 3 or self.nodes % 2 == 0:
            raise ValueError(f"nodes must be odd and >= 3, got {self.nodes}")
        if self.halfwidth <= 0:
            raise ValueError("halfwidth must be positive")
        if self.scheme not in ("composite-gauss-legendre", "midpoint"):
            raise ValueError(f"unknown quadrature scheme {self.scheme!r}")
        if not 1 <= self.panels <= self.nodes:
            raise ValueError("panels must be between 1 and the node count")


def quadrature(spec: QuadratureSpec = QuadratureSpec(), normalized: bool = True):
    """Nodes and density-weighted weights for the rotation integral.

    Returns ``(t, w)`` with ``w_j ~ gl_w_j * p_weight(t_j)``; with
    ``normalized=True`` (the default) the weights are rescaled to sum to one.
    """
    edges = np.linspace(-spec.halfwidth, spec.halfwidth, spec.panels + 1)
    per, rem = divmod(spec.nodes, spec.panels)
    ts, ws = [], []
    for i in range(spec.panels):
        k = per + (1 if i < rem else 0)
        if k == 0:
            continue
        if spec.scheme == "midpoint":
            x = np.linspace(-1, 1, 2 * k + 1)[1::2]
            w = np.full(k, 2.0 / k)
        else:
            x, w = np.polynomial.legendre.leggauss(k)
        a, b = edges[i], edges[i + 1]
        ts.append(0.5 * (b - a) * x + 0.5 * (a + b))
        ws.append(0.5 * (b - a) * w)
    t = np.concatenate(ts)
    w = np.concatenate(ws) * p_weight(t)
    if w.min() < 0:
        raise AssertionError("quadrature produced a negative weight")
    if normalized:
        w = w / w.sum()
    return t, w


def _sigma_pair(sigma, channel: KrausMap):
    sig = sigma.matrix if isinstance(sigma, DensityOperator) else np.asarray(sigma, dtype=complex)
    if sig.shape != (channel.in_dim, channel.in_dim):
        raise DimensionMismatchError(
            f"sigma dimension {sig.shape} does not match channel input {channel.in_dim}"
        )
    return sig, channel.apply(sig)


def petz_map(sigma, channel: KrausMap) -> Channel:
    """The Petz recovery map for (sigma, N); CP and trace-non-increasing.

    Perfectly recovers sigma: ``(P o N)(sigma) = sigma``.
    """
    sig, n_sig = _sigma_pair(sigma, channel)
    left = complex_power(sig, 0.5)
    right = complex_power(n_sig, -0.5)
    return Channel(tuple(left @ k.conj().T @ right for k in channel.kraus))


@dataclass(frozen=True)
class RotatedPetzSpec:
    """Reference operator, channel, and rotation parameter for a swiveled Petz map."""

    sigma: object
    channel: KrausMap
    t: float

    def __post_init__(self):
        _sigma_pair(self.sigma, self.channel)  # dimension check


def rotated_petz(spec: RotatedPetzSpec) -> Channel:
    """Swiveled Petz map: modular rotation by t on both ends of the Petz map.

    At ``t=0`` this is exactly :func:`petz_map`; for every t it still recovers
    sigma perfectly.
    """
    sig, n_sig = _sigma_pair(spec.sigma, spec.channel)
    t = float(spec.t)
    left = complex_power(sig, 0.5 - 1j * t)
    right = complex_power(n_sig, -0.5 + 1j * t)
    return Channel(tuple(left @ k.conj().T @ right for k in spec.channel.kraus))


def _completion_kraus(kernel_vectors: np.ndarray, tau: np.ndarray, weight: float = 1.0):
    """Kraus operators of Q -> weight * Tr{(I - Pi) Q} tau on the given kernel basis."""
    ks = []
    if kernel_vectors.size == 0 or weight == 0.0:
        return ks
    spec = eig_hermitian(tau)
    lam = np.clip(spec.eigenvalues, 0.0, None)
    for j in range(kernel_vectors.shape[1]):
        bra = kernel_vectors[:, j].conj()
        for k in range(lam.shape[0]):
            if lam[k] <= 0.0:
                continue
            ks.append(np.sqrt(weight * lam[k]) * np.outer(spec.eigenvectors[:, k], bra))
    return ks


def integrated_recovery(
    sigma,
    channel: KrausMap,
    completion_state=None,
    quad: QuadratureSpec = QuadratureSpec(),
) -> Channel:
    """Quadrature average of swiveled Petz maps R^{t/2} plus projector completion.

    The completion term ``Tr{(I - Pi_{N(sigma)}) Q} tau`` routes any input mass
    outside the support of N(sigma) to ``completion_state`` (default maximally
    mixed on the channel input space), making the result an exactly
    trace-preserving channel that still recovers sigma perfectly.
    """
    sig, n_sig = _sigma_pair(sigma, channel)
    if completion_state is None:
        tau = np.eye(channel.in_dim) / channel.in_dim
    else:
        tau = (
            completion_state.matrix
            if isinstance(completion_state, DensityOperator)
            else np.asarray(completion_state, dtype=complex)
        )
    if tau.shape != (channel.in_dim, channel.in_dim):
        raise DimensionMismatchError("completion state must live on the channel input space")

    nodes, weights = quadrature(quad)
    spec_sig = eig_hermitian(sig)
    spec_out = eig_hermitian(n_sig)
    lam_s = np.clip(spec_sig.eigenvalues, 0.0, None)
    lam_o = np.clip(spec_out.eigenvalues, 0.0, None)
    mask_s = lam_s > rank_cutoff(spec_sig.eigenvalues)
    mask_o = lam_o > rank_cutoff(spec_out.eigenvalues)
    u_s, u_o = spec_sig.eigenvectors, spec_out.eigenvectors

    def _power(u, lam, mask, z):
        vals = np.zeros(lam.shape[0], dtype=complex)
        vals[mask] = np.exp(z * np.log(lam[mask]))
        return (u * vals) @ u.conj().T

    ks = []
    adj = [k.conj().T for k in channel.kraus]
    for t, w in zip(nodes, weights):
        left = _power(u_s, lam_s, mask_s, (1.0 - 1j * t) / 2.0)
        right = _power(u_o, lam_o, mask_o, (-1.0 + 1j * t) / 2.0)
        root_w = np.sqrt(w)
        for a in adj:
            ks.append(root_w * (left @ a @ right))
    kernel = u_o[:, ~mask_o]
    ks.extend(_completion_kraus(kernel, tau))
    return Channel(tuple(ks))


def cmi_recovery(rho_ac: DensityOperator, t: float, recover_label: str | None = None) -> Channel:
    """Explicit recovery map rebuilding factor A of a bipartite reference state.

    For a state on factors (A, C) this returns the map
    ``omega_C -> rho_AC^{(1-it)/2} [I_A (x) rho_C^{-(1-it)/2} omega_C
    rho_C^{-(1+it)/2}] rho_AC^{(1+it)/2}``, whose output carries the (A, C)
    ordering of the reference state.  It coincides with
    ``rotated_petz(sigma=rho_AC, N=Tr_A, t/2)``.
    """
    if len(rho_ac.systems) != 2:
        raise ValueError("cmi_recovery expects a bipartite reference state")
    a_label = rho_ac.labels[0] if recover_label is None else recover_label
    if a_label not in rho_ac.labels:
        raise ValueError(f"unknown label {a_label!r} in {rho_ac.labels!r}")
    if a_label != rho_ac.labels[0]:
        raise ValueError("the recovered factor must be the first factor of the reference state")
    d_a = rho_ac.system_dim(a_label)
    c_label = rho_ac.labels[1]
    d_c = rho_ac.system_dim(c_label)
    rho_c = np.asarray(
        _trace_first(rho_ac.matrix, d_a, d_c), dtype=complex
    )
    left = complex_power(rho_ac.matrix, (1.0 - 1j * t) / 2.0)
    right_c = complex_power(rho_c, (-1.0 + 1j * t) / 2.0)
    ks = []
    eye_a = np.eye(d_a)
    for i in range(d_a):
        ket = eye_a[:, i : i + 1]
        ks.append(left @ np.kron(ket, right_c))
    return Channel(tuple(ks))


def _trace_first(matrix: np.ndarray, d_first: int, d_rest: int) -> np.ndarray:
    t = matrix.reshape(d_first, d_rest, d_first, d_rest)
    return np.trace(t, axis1=0, axis2=2)


def adjoint_recovery(channel: KrausMap, completion_state=None) -> Channel:
    """Recovery channel R(Y) = N^dag(Y) + Tr{(id - N^dag)(Y)} tau.

    Trace-preserving for any trace-preserving N; completely positive exactly
    when N is subunital.  A superunital N makes the completion weight negative
    on part of the output space, and the constructor rejects it with a witness
    input exhibiting the failure.
    """
    if completion_state is None:
        tau = np.eye(channel.in_dim) / channel.in_dim
    else:
        tau = (
            completion_state.matrix
            if isinstance(completion_state, DensityOperator)
            else np.asarray(completion_state, dtype=complex)
        )
    if tau.shape != (channel.in_dim, channel.in_dim):
        raise DimensionMismatchError("completion state must live on the channel input space")
    gap = np.eye(channel.out_dim) - channel.on_identity()
    spec = eig_hermitian(gap)
    if spec.eigenvalues[0] < -1e-10:
        witness = np.outer(spec.eigenvectors[:, 0], spec.eigenvectors[:, 0].conj())
        raise NotCompletelyPositiveError(
            "channel is superunital (max eig of N(I) is "
            f"{1.0 - spec.eigenvalues[0]:.12g}); the adjoint-based recovery is not CP",
            witness,
        )
    lam = np.clip(spec.eigenvalues, 0.0, None)
    ks = [k.conj().T for k in channel.kraus]
    spec_tau = eig_hermitian(tau)
    lam_tau = np.clip(spec_tau.eigenvalues, 0.0, None)
    # Tr{(I - N(I)) Y} tau as Kraus operators sqrt(mu_l lam_k) |k><d_l|;
    # gap directions below 1e-12 are numerical zeros of N(I) = I.
    for l in range(lam.shape[0]):
        if lam[l] <= 1e-12:
            continue
        bra = spec.eigenvectors[:, l].conj()
        for k in range(lam_tau.shape[0]):
            if lam_tau[k] <= 1e-15:
                continue
            ks.append(np.sqrt(lam[l] * lam_tau[k]) * np.outer(spec_tau.eigenvectors[:, k], bra))
    return Channel(tuple(ks))


@dataclass(frozen=True)
class UhlmannResult:
    isometry: np.ndarray
    achieved: float  # |<phi_sigma| (U x I) |phi_rho>|^2


def uhlmann_isometry(phi_rho: Purification, phi_sigma: Purification) -> UhlmannResult:
    """Isometry on the reference factor maximizing the purification overlap.

    Both purifications must share the non-reference factors (same labels,
    dimensions, and order), and the target reference must be at least as large
    as the source reference.  The maximizer comes from the polar decomposition
    of the reference-overlap matrix; the achieved overlap equals the fidelity
    of the reduced states on the shared factors.
    """
    shared_rho = tuple(s for s in phi_rho.systems if s[0] != phi_rho.reference_label)
    shared_sigma = tuple(s for s in phi_sigma.systems if s[0] != phi_sigma.reference_label)
    if shared_rho != shared_sigma:
        raise DimensionMismatchError(
            f"purifications do not share the non-reference systems: {shared_rho} vs {shared_sigma}"
        )
    m_rho = phi_rho.amplitude_matrix()
    m_sigma = phi_sigma.amplitude_matrix()
    r_rho, r_sigma = m_rho.shape[0], m_sigma.shape[0]
    if r_sigma < r_rho:
        raise DimensionMismatchError(
            f"target reference dim {r_sigma} is smaller than source {r_rho}; "
            "repurify with a padded reference"
        )
    # <phi_sigma| (U x I) |phi_rho> = Tr{U C} with C = M_rho M_sigma^dag
    c = m_rho @ m_sigma.conj().T
    v, s, wh = np.linalg.svd(c)
    w = wh.conj().T
    embed = np.zeros((r_sigma, r_rho))
    np.fill_diagonal(embed, 1.0)
    u = w @ embed @ v.conj().T
    return UhlmannResult(isometry=u, achieved=float(s.sum() ** 2))
