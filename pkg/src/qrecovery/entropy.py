"""Entropy, information, and distance functionals, all in bits.

Every quantity here returns binary-logarithm units.  Internally the spectral
sums are accumulated in natural log and converted once through
``NAT_TO_BITS``, so there is exactly one unit-conversion point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .matfun import eig_hermitian, rank_cutoff
from .qcore import DensityOperator, Ensemble, partial_trace

__all__ = [
    "NAT_TO_BITS",
    "SUPPORT_TOL",
    "RelEntropyResult",
    "entropy",
    "rel_entropy",
    "cond_entropy",
    "mutual_info",
    "cmi",
    "holevo_chi",
    "fidelity",
    "root_fidelity",
    "trace_norm",
    "trace_distance",
    "binary_entropy",
]

NAT_TO_BITS = 1.0 / math.log(2.0)
SUPPORT_TOL = 1e-9


def _mat(x) -> np.ndarray:
    if isinstance(x, DensityOperator):
        return x.matrix
    return np.asarray(x, dtype=complex)


@dataclass(frozen=True)
class RelEntropyResult:
    """Relative entropy value in bits plus the support diagnostics.

    ``value`` is ``math.inf`` exactly when the mass of P outside the support
    of Q (``support_violation``) exceeds the support tolerance.
    """

    value: float
    support_violation: float
    support_tol: float = SUPPORT_TOL

    @property
    def is_infinite(self) -> bool:
        return math.isinf(self.value)

    def __float__(self) -> float:
        return self.value


def entropy(rho) -> float:
    """von Neumann entropy -Tr{rho log2 rho} of a PSD matrix."""
    lam = np.linalg.eigvalsh(_mat(rho))
    lam = lam[lam > rank_cutoff(lam)]
    return float(-np.sum(lam * np.log(lam)) * NAT_TO_BITS) if lam.size else 0.0


def rel_entropy(p, q, support_tol: float = SUPPORT_TOL) -> RelEntropyResult:
    """Quantum relative entropy D(P||Q) = Tr{P [log2 P - log2 Q]}.

    Finite values are computed on the support of Q; the result carries the
    mass of P on ker(Q) and is flagged infinite when that mass exceeds
    ``support_tol``.
    """
    p, q = _mat(p), _mat(q)
    if p.shape != q.shape:
        raise ValueError(f"operand shapes differ: {p.shape} vs {q.shape}")
    if float(np.abs(p).max(initial=0.0)) == 0.0:
        raise ValueError("rel_entropy requires P != 0")
    spec_q = eig_hermitian(q)
    mask_q = spec_q.eigenvalues > rank_cutoff(spec_q.eigenvalues)
    # mass of P on the kernel of Q
    kern = spec_q.eigenvectors[:, ~mask_q]
    violation = float(np.real(np.einsum("ij,jk,ki->", kern.conj().T, p, kern))) if kern.size else 0.0
    violation = max(violation, 0.0)
    if violation > support_tol:
        return RelEntropyResult(math.inf, violation, support_tol)

    spec_p = eig_hermitian(p)
    lam_p = spec_p.eigenvalues
    mask_p = lam_p > rank_cutoff(lam_p)
    term_p = float(np.sum(lam_p[mask_p] * np.log(lam_p[mask_p]))) if mask_p.any() else 0.0

    vecs_q = spec_q.eigenvectors[:, mask_q]
    weights = np.real(np.einsum("ji,jk,ki->i", vecs_q.conj(), p, vecs_q))
    term_q = float(np.sum(weights * np.log(spec_q.eigenvalues[mask_q])))
    return RelEntropyResult((term_p - term_q) * NAT_TO_BITS, violation, support_tol)


def cond_entropy(rho: DensityOperator, cond) -> float:
    """Conditional entropy H(rest | cond) = H(full) - H(cond)."""
    if isinstance(cond, str):
        cond = (cond,)
    cond = tuple(cond)
    rest = tuple(l for l in rho.labels if l not in cond)
    if not rest:
        raise ValueError("conditioning on every factor leaves nothing")
    sigma = partial_trace(rho, rest)
    return entropy(rho) - entropy(sigma)


def mutual_info(rho: DensityOperator, a=None, b=None) -> float:
    """Mutual information I(A;B) = H(A) + H(B) - H(AB) for a bipartition.

    For a two-factor state the partition is inferred; otherwise pass the two
    label groups explicitly.
    """
    if a is None or b is None:
        if len(rho.systems) != 2:
            raise ValueError("label groups are required for more than two factors")
        a, b = (rho.labels[0],), (rho.labels[1],)
    if isinstance(a, str):
        a = (a,)
    if isinstance(b, str):
        b = (b,)
    labels = set(rho.labels)
    if set(a) | set(b) != labels or set(a) & set(b):
        raise ValueError(f"groups {a!r}, {b!r} do not bipartition {rho.labels!r}")
    return entropy(partial_trace(rho, b)) + entropy(partial_trace(rho, a)) - entropy(rho)


def cmi(rho: DensityOperator, a, b, c) -> float:
    """Conditional mutual information I(A;B|C) = H(AC) + H(BC) - H(ABC) - H(C)."""
    groups = [(l,) if isinstance(l, str) else tuple(l) for l in (a, b, c)]
    a, b, c = groups
    if set(a + b + c) != set(rho.labels) or len(a + b + c) != len(rho.labels):
        raise ValueError(f"groups {groups!r} do not tripartition {rho.labels!r}")
    h_ac = entropy(partial_trace(rho, b))
    h_bc = entropy(partial_trace(rho, a))
    h_c = entropy(partial_trace(rho, a + b))
    return h_ac + h_bc - entropy(rho) - h_c


def holevo_chi(ens: Ensemble) -> float:
    """Holevo information: entropy of the average minus average entropy."""
    avg = entropy(ens.average())
    members = float(np.sum(ens.probs * np.array([entropy(s) for s in ens.states])))
    return avg - members


def _psd_sqrt(x: np.ndarray) -> np.ndarray:
    spec = eig_hermitian(x)
    lam = np.clip(spec.eigenvalues, 0.0, None)
    u = spec.eigenvectors
    return (u * np.sqrt(lam)) @ u.conj().T


def root_fidelity(p, q) -> float:
    """sqrt(F)(P, Q) = ||sqrt(P) sqrt(Q)||_1 for PSD operators."""
    sp, sq = _psd_sqrt(_mat(p)), _psd_sqrt(_mat(q))
    return float(np.linalg.svd(sp @ sq, compute_uv=False).sum())


def fidelity(p, q) -> float:
    """Uhlmann fidelity F(P, Q) = ||sqrt(P) sqrt(Q)||_1^2."""
    return root_fidelity(p, q) ** 2


def trace_norm(x) -> float:
    return float(np.linalg.svd(_mat(x), compute_uv=False).sum())


def trace_distance(rho, sigma) -> float:
    """||rho - sigma||_1 (no 1/2 factor; callers add it where a formula needs it)."""
    return trace_norm(_mat(rho) - _mat(sigma))


def binary_entropy(x: float) -> float:
    """h2(x) in bits, defined on [0, 1] with h2(0) = h2(1) = 0."""
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"binary_entropy needs x in [0, 1], got {x!r}")
    if x in (0.0, 1.0):
        return 0.0
    return float(-(x * math.log(x) + (1 - x) * math.log(1 - x)) * NAT_TO_BITS)
