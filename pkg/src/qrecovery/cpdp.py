"""System-environment configurations, approximate data processing, and
approximate complete positivity of reduced dynamics (both directions).

A configuration is one tripartite state over a reference R, a system Q, and an
environment E.  The forward pipeline builds the recovery map Q -> QE from the
(Q, E) marginal, conjugates by the interaction isometry, and discards the
output environment, producing a CPTP candidate for the reduced dynamics whose
recovery fidelity is controlled by I(R;E|Q).  The converse direction bounds
the data-processing violation of any candidate via the
Alicki-Fannes-Winter inequality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .entropy import binary_entropy, fidelity, mutual_info, cmi, trace_distance
from .qcore import (
    Channel,
    DensityOperator,
    DimensionMismatchError,
    KrausMap,
    lift,
    partial_trace,
    partial_trace_channel,
)
from .recovery import QuadratureSpec, integrated_recovery
from .reports import CheckReport

__all__ = [
    "TripartiteConfiguration",
    "Interaction",
    "identity_embedding",
    "dp_slack",
    "cmi_bound",
    "reduced_dynamics",
    "converse_bound",
    "afw_bound",
]


@dataclass(frozen=True)
class TripartiteConfiguration:
    """One tripartite state over labels (reference, system, environment)."""

    state: DensityOperator
    reference: str = "R"
    system: str = "Q"
    environment: str = "E"

    def __post_init__(self):
        expected = (self.reference, self.system, self.environment)
        if self.state.labels != expected:
            raise ValueError(
                f"state factors {self.state.labels!r} must be ordered {expected!r}"
            )

    @property
    def dims(self):
        return self.state.dims

    def marginal(self, labels) -> DensityOperator:
        drop = tuple(l for l in self.state.labels if l not in labels)
        return partial_trace(self.state, drop)


@dataclass(frozen=True)
class Interaction:
    """Isometry V: QE -> Q'E' with explicit output dimensions."""

    matrix: np.ndarray
    in_dims: tuple  # (dim_Q, dim_E)
    out_dims: tuple  # (dim_Q', dim_E')

    def __post_init__(self):
        mat = np.array(self.matrix, dtype=complex)
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "in_dims", tuple(int(d) for d in self.in_dims))
        object.__setattr__(self, "out_dims", tuple(int(d) for d in self.out_dims))
        d_in = self.in_dims[0] * self.in_dims[1]
        d_out = self.out_dims[0] * self.out_dims[1]
        if mat.shape != (d_out, d_in):
            raise DimensionMismatchError(
                f"isometry shape {mat.shape} does not match dims {self.in_dims}->{self.out_dims}"
            )
        defect = float(np.abs(mat.conj().T @ mat - np.eye(d_in)).max())
        if defect > 1e-10:
            raise ValueError(f"V is not an isometry: max |V^dag V - I| = {defect:.3e}")


def identity_embedding(dim_q: int, dim_e: int) -> Interaction:
    """The special evolution Q' = QE with a trivial output environment."""
    d = dim_q * dim_e
    return Interaction(np.eye(d), (dim_q, dim_e), (d, 1))


def _evolved(config: TripartiteConfiguration, v: Interaction) -> DensityOperator:
    """sigma_RQ'E' = (I_R (x) V) rho_RQE (I_R (x) V)^dag."""
    r, q, e = config.reference, config.system, config.environment
    if v.in_dims != (config.state.system_dim(q), config.state.system_dim(e)):
        raise DimensionMismatchError("interaction input dims do not match the configuration")
    lifted, out_systems = lift(
        Channel((v.matrix,)),
        config.state.systems,
        (q, e),
        out_systems=((q + "'", v.out_dims[0]), (e + "'", v.out_dims[1])),
    )
    return DensityOperator(out_systems, lifted.apply(config.state.matrix))


def dp_slack(config: TripartiteConfiguration, v: Interaction) -> float:
    """I(R;Q')_sigma - I(R;Q)_rho; may take either sign for correlated environments."""
    r, q = config.reference, config.system
    sigma = _evolved(config, v)
    i_out = mutual_info(partial_trace(sigma, config.environment + "'"), r, q + "'")
    i_in = mutual_info(config.marginal((r, q)), r, q)
    return i_out - i_in


def cmi_bound(config: TripartiteConfiguration) -> float:
    """I(R;E|Q), the data-processing slack of the embedding evolution Q' = QE."""
    return cmi(config.state, config.reference, config.environment, config.system)


def _recovery_q_to_qe(config: TripartiteConfiguration, quad: QuadratureSpec) -> Channel:
    """Integrated recovery map Q -> QE built from the (Q, E) marginal."""
    q, e = config.system, config.environment
    rho_qe = config.marginal((q, e))
    trace_e = partial_trace_channel(rho_qe.systems, e)
    return integrated_recovery(rho_qe.matrix, trace_e, quad=quad)


def reduced_dynamics(
    config: TripartiteConfiguration,
    v: Interaction,
    quad: QuadratureSpec = QuadratureSpec(),
    tol: float = 1e-6,
    seed=None,
):
    """CPTP candidate for the reduced dynamics plus its fidelity certificate.

    Builds E(.) = Tr_{E'}{ V R_{Q->QE}(.) V^dag } with R the integrated
    recovery of the (Q, E) marginal, and checks

        I(R;E|Q)_rho >= -log F(sigma_RQ', E(rho_RQ)).

    Returns ``(channel, report)``.
    """
    r, q, e = config.reference, config.system, config.environment
    d_q, d_e = config.state.system_dim(q), config.state.system_dim(e)
    rec = _recovery_q_to_qe(config, quad)
    qe_systems = ((q, d_q), (e, d_e))
    v_out_systems = ((q + "'", v.out_dims[0]), (e + "'", v.out_dims[1]))
    v_ch = Channel((v.matrix,))
    lifted_v, _ = lift(v_ch, qe_systems, (q, e), out_systems=v_out_systems)
    trace_eprime = partial_trace_channel(v_out_systems, e + "'")
    from .qcore import compose

    channel = compose(trace_eprime, compose(lifted_v, rec))

    sigma = _evolved(config, v)
    sigma_rqp = partial_trace(sigma, e + "'")
    rho_rq = config.marginal((r, q))
    lifted_full, _ = lift(
        channel, rho_rq.systems, q, out_systems=((q + "'", v.out_dims[0]),)
    )
    candidate = lifted_full.apply(rho_rq.matrix)
    fid = fidelity(sigma_rqp.matrix, candidate)
    lhs = cmi_bound(config)
    rhs = -math.log2(max(fid, 1e-300))
    report = CheckReport(
        name="cpdp-forward",
        lhs=lhs,
        rhs=rhs,
        tol=tol,
        seed=seed,
        dims=config.dims,
        aux={"fidelity": fid, "channel_kraus": len(channel.kraus)},
    )
    return channel, report


def afw_bound(eps: float, dim_r: int) -> float:
    """Alicki-Fannes-Winter continuity term 2 eps log2|R| + (1+eps) h2(eps/(1+eps))."""
    if eps <= 0.0:
        return 0.0
    return 2.0 * eps * math.log2(dim_r) + (1.0 + eps) * binary_entropy(eps / (1.0 + eps))


def converse_bound(
    config: TripartiteConfiguration,
    v: Interaction,
    channel,
    eps: float,
    quad: QuadratureSpec = QuadratureSpec(),
    tol: float = 1e-8,
    seed=None,
) -> CheckReport:
    """Approximate data processing from approximately CPTP reduced dynamics.

    Given a CPTP candidate E with (1/2)||sigma_RQ' - E(rho_RQ)||_1 <= eps,
    verifies I(R;Q')_sigma <= I(R;Q)_rho + AFW(eps_measured), and bounds
    I(R;E|Q)_rho by AFW of the embedding evolution's own measured distance
    (the per-V distance does not control the conditional mutual information;
    the embedding Q' = QE is the evolution the converse argument uses).

    The report is marked vacuous when the measured distance exceeds ``eps``.
    """
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"eps must lie in [0, 1], got {eps!r}")
    r, q = config.reference, config.system
    d_r = config.state.system_dim(r)
    sigma = _evolved(config, v)
    sigma_rqp = partial_trace(sigma, config.environment + "'")
    rho_rq = config.marginal((r, q))
    if isinstance(channel, KrausMap):
        lifted, _ = lift(channel, rho_rq.systems, q, out_systems=((q + "'", channel.out_dim),))
        candidate = lifted.apply(rho_rq.matrix)
    else:
        raise TypeError("converse_bound requires a Kraus-form channel")
    eps_measured = 0.5 * trace_distance(sigma_rqp.matrix, candidate)
    vacuous = eps_measured > eps + 1e-12

    i_out = mutual_info(sigma_rqp, r, q + "'")
    i_in = mutual_info(rho_rq, r, q)
    lhs_dp = i_in + afw_bound(eps_measured, d_r)

    # embedding evolution: its recovery candidate controls I(R;E|Q)
    rec = _recovery_q_to_qe(config, quad)
    lifted_rec, _ = lift(
        rec,
        rho_rq.systems,
        q,
        out_systems=((q, config.state.system_dim(q)), (config.environment, config.state.system_dim(config.environment))),
    )
    eps_embed = 0.5 * trace_distance(config.state.matrix, lifted_rec.apply(rho_rq.matrix))
    cmi_val = cmi_bound(config)
    cmi_budget = afw_bound(eps_embed, d_r)

    return CheckReport(
        name="cpdp-converse",
        lhs=min(lhs_dp - i_out, cmi_budget - cmi_val),
        rhs=0.0,
        tol=tol,
        seed=seed,
        dims=config.dims,
        aux={
            "eps_given": eps,
            "eps_measured": eps_measured,
            "vacuous": vacuous,
            "dp_lhs_mutual_info": i_out,
            "dp_budget": lhs_dp,
            "cmi": cmi_val,
            "eps_embedding": eps_embed,
            "cmi_budget": cmi_budget,
        },
    )
