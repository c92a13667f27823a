import numpy as np
import numpy.testing as npt
import pytest

from qrecovery.entropy import trace_distance
from qrecovery.qcore import (
    Channel,
    ClassicalQuantumState,
    DensityOperator,
    Ensemble,
    Instrument,
    KrausMap,
    LabelError,
    adjoint,
    apply,
    choi,
    compose,
    instrument_channel,
    is_cptp,
    is_subunital,
    is_trace_preserving,
    is_unital,
    lift,
    partial_trace,
    partial_trace_channel,
    permute,
    purify,
    random_channel,
    random_density,
    random_instrument,
    random_unitary,
    stream,
    tensor,
    transfer_matrix,
)
from qrecovery import serialize

BELL = np.zeros((4, 4), dtype=complex)
BELL[np.ix_([0, 3], [0, 3])] = 0.5


def qubit(label="A"):
    return DensityOperator(((label, 2),), np.eye(2) / 2)


def test_tensor_maximally_mixed():
    out = tensor(qubit("A"), qubit("B"))
    npt.assert_allclose(out.matrix, np.eye(4) / 4, atol=1e-14)
    assert out.systems == (("A", 2), ("B", 2))


def test_tensor_rejects_duplicate_labels():
    with pytest.raises(LabelError):
        tensor(qubit("A"), qubit("A"))


def test_tensor_then_partial_trace_is_inverse():
    rho = random_density(3, 2, stream(7, 0))
    anc = DensityOperator((("B", 2),), np.diag([1.0, 0.0]))
    joint = tensor(rho, anc)
    npt.assert_allclose(partial_trace(joint, "B").matrix, rho.matrix, atol=1e-12)


def test_tensor_pure_states_rank_one():
    v = np.array([1.0, 0.0])
    pure = DensityOperator((("A", 2),), np.outer(v, v))
    out = tensor(pure, DensityOperator((("B", 2),), np.outer(v, v)))
    assert np.linalg.matrix_rank(out.matrix) == 1


def test_partial_trace_maximally_entangled():
    rho = DensityOperator((("A", 2), ("B", 2)), BELL)
    npt.assert_allclose(partial_trace(rho, "B").matrix, np.eye(2) / 2, atol=1e-14)


def test_partial_trace_everything_gives_scalar_one():
    rho = DensityOperator((("A", 2), ("B", 2)), random_density(4, 3, stream(7, 1)).matrix)
    out = partial_trace(partial_trace(rho, "B"), "A")
    assert out.systems == ()
    npt.assert_allclose(out.matrix, [[1.0]], atol=1e-12)


def test_partial_trace_unknown_label():
    with pytest.raises(LabelError):
        partial_trace(qubit(), "Z")


def test_permute_round_trip():
    rho = DensityOperator((("A", 2), ("B", 3)), random_density(6, 4, stream(7, 2)).matrix)
    back = permute(permute(rho, ("B", "A")), ("A", "B"))
    npt.assert_allclose(back.matrix, rho.matrix, atol=1e-14)
    swapped = permute(rho, ("B", "A"))
    npt.assert_allclose(
        partial_trace(swapped, "A").matrix, partial_trace(rho, "A").matrix, atol=1e-14
    )


class TestPurify:
    def test_pure_state_gets_trivial_reference(self):
        v = np.array([1.0, 1.0]) / np.sqrt(2)
        rho = DensityOperator((("A", 2),), np.outer(v, v))
        phi = purify(rho)
        assert phi.reference_dim == 1
        npt.assert_allclose(phi.reduced().matrix, rho.matrix, atol=1e-12)

    def test_maximally_mixed_qubit(self):
        phi = purify(qubit())
        assert phi.reference_dim == 2
        red = phi.reduced()
        npt.assert_allclose(red.matrix, np.eye(2) / 2, atol=1e-12)

    def test_rank3_state_reference_dim(self):
        rho = random_density(4, 3, stream(8, 0))
        phi = purify(rho)
        assert phi.reference_dim == 3
        assert trace_distance(phi.reduced().matrix, rho.matrix) < 1e-9

    def test_round_trip_trace_distance(self):
        for seed in range(5):
            rho = random_density(3, 3, stream(8, 1, seed))
            phi = purify(rho)
            assert trace_distance(phi.reduced().matrix, rho.matrix) <= 1e-9

    def test_padded_reference(self):
        rho = random_density(3, 2, stream(8, 2))
        phi = purify(rho, reference_dim=3)
        assert phi.reference_dim == 3
        npt.assert_allclose(phi.reduced().matrix, rho.matrix, atol=1e-12)


def test_apply_identity_channel():
    rho = random_density(3, 3, stream(9, 0))
    ident = Channel((np.eye(3),))
    npt.assert_allclose(apply(ident, rho.matrix), rho.matrix, atol=1e-14)


def test_apply_full_dephasing_on_plus():
    # hand computation: (|+><+| + Z|+><+|Z) / 2 = I/2
    z = np.diag([1.0, -1.0])
    dephasing = Channel((np.eye(2) / np.sqrt(2), z / np.sqrt(2)))
    plus = np.full((2, 2), 0.5)
    npt.assert_allclose(apply(dephasing, plus), np.eye(2) / 2, atol=1e-14)


def test_cptp_channel_preserves_trace():
    for seed in range(5):
        ch = random_channel(3, 2, 4, stream(9, 1, seed))
        rho = random_density(3, 3, stream(9, 2, seed))
        assert abs(np.trace(apply(ch, rho.matrix)).real - 1.0) < 1e-10


class TestAdjoint:
    def test_unitary_channel(self):
        u = random_unitary(3, stream(10, 0))
        adj = adjoint(Channel((u,)))
        npt.assert_allclose(adj.kraus[0], u.conj().T, atol=1e-14)

    def test_trace_preserving_iff_adjoint_unital(self):
        ch = random_channel(3, 3, 2, stream(10, 1))
        npt.assert_allclose(adjoint(ch).apply(np.eye(3)), np.eye(3), atol=1e-10)

    def test_hilbert_schmidt_pairing(self):
        # oracle: <Y, N(X)> = <N^dag(Y), X> on random pairs
        ch = random_channel(3, 2, 3, stream(10, 2))
        adj = adjoint(ch)
        rng = stream(10, 3)
        for _ in range(20):
            x = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
            y = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
            lhs = np.trace(y.conj().T @ ch.apply(x))
            rhs = np.trace(adj.apply(y).conj().T @ x)
            assert abs(lhs - rhs) < 1e-10

    def test_double_adjoint_is_identity_on_choi(self):
        ch = random_channel(2, 3, 2, stream(10, 4))
        npt.assert_allclose(choi(adjoint(adjoint(ch))), choi(ch), atol=1e-10)


def test_flags_dephasing():
    z = np.diag([1.0, -1.0])
    dephasing = Channel((np.eye(2) / np.sqrt(2), z / np.sqrt(2)))
    assert is_unital(dephasing) and is_cptp(dephasing) and dephasing.trace_preserving


def test_flags_scaled_isometry():
    half = Channel((np.eye(2) / 2,))
    assert not half.trace_preserving
    assert is_subunital(half)
    assert not is_trace_preserving(half)


def test_trace_increasing_kraus_rejected():
    with pytest.raises(ValueError, match="trace-increasing"):
        Channel((np.eye(2) * 1.5,))


def test_transfer_matrix_matches_apply():
    ch = random_channel(3, 2, 2, stream(11, 0))
    t = transfer_matrix(ch)
    x = stream(11, 1).standard_normal((3, 3)) + 1j * stream(11, 2).standard_normal((3, 3))
    npt.assert_allclose((t @ x.reshape(-1)).reshape(2, 2), ch.apply(x), atol=1e-12)


def test_compose_matches_sequential_application():
    a = random_channel(2, 3, 2, stream(11, 3))
    b = random_channel(3, 2, 2, stream(11, 4))
    rho = random_density(2, 2, stream(11, 5))
    npt.assert_allclose(
        compose(b, a).apply(rho.matrix), b.apply(a.apply(rho.matrix)), atol=1e-12
    )


def test_lift_matches_manual_kron():
    ch = random_channel(2, 2, 2, stream(12, 0))
    systems = (("A", 3), ("B", 2), ("C", 2))
    lifted, out_systems = lift(ch, systems, "B")
    assert out_systems == systems
    manual = tuple(np.kron(np.kron(np.eye(3), k), np.eye(2)) for k in ch.kraus)
    for got, want in zip(lifted.kraus, manual):
        npt.assert_allclose(got, want, atol=1e-14)


def test_lift_requires_contiguous_block():
    ch = random_channel(4, 4, 1, stream(12, 1))
    with pytest.raises(LabelError):
        lift(ch, (("A", 2), ("B", 2), ("C", 2)), ("A", "C"))


def test_partial_trace_channel_agrees_with_partial_trace():
    systems = (("A", 2), ("B", 3))
    ch = partial_trace_channel(systems, "B")
    rho = DensityOperator(systems, random_density(6, 6, stream(12, 2)).matrix)
    npt.assert_allclose(ch.apply(rho.matrix), partial_trace(rho, "B").matrix, atol=1e-12)


class TestRandomInstances:
    def test_random_density_valid_full_rank(self):
        rho = random_density(4, 4, stream(13, 0))
        assert np.linalg.matrix_rank(rho.matrix, tol=1e-10) == 4

    def test_random_channel_cptp(self):
        assert is_cptp(random_channel(2, 2, 4, stream(13, 1)))

    def test_random_instrument_efficient(self):
        instr = random_instrument(3, 2, True, stream(13, 2))
        assert instr.efficient
        assert all(len(ks) == 1 for _, ks in instr.outcomes)
        assert is_trace_preserving(instr.sum_channel(), tol=1e-10)

    def test_random_instrument_inefficient(self):
        instr = random_instrument(3, 2, False, stream(13, 3))
        assert not instr.efficient
        assert is_trace_preserving(instr.sum_channel(), tol=1e-10)

    @pytest.mark.parametrize("seed", range(100))
    def test_generated_channels_cptp_and_efficient_instruments_subunital(self, seed):
        ch = random_channel(2, 2, 3, stream(14, seed))
        assert is_cptp(ch)
        instr = random_instrument(2, 3, True, stream(15, seed))
        assert is_subunital(instrument_channel(instr))


class TestInstrumentChannel:
    def test_single_outcome_appends_classical_register(self):
        ch = random_channel(2, 2, 2, stream(16, 0))
        instr = Instrument((("0", ch.kraus),))
        rho = random_density(2, 2, stream(16, 1))
        out = instrument_channel(instr).apply(rho.matrix)
        npt.assert_allclose(out, np.kron(ch.apply(rho.matrix), [[1.0]]), atol=1e-12)

    def test_projective_measurement_on_plus(self):
        # hand computation: equal-weight |0><0| and |1><1| blocks
        instr = Instrument((("0", (np.diag([1.0, 0.0]),)), ("1", (np.diag([0.0, 1.0]),))))
        plus = np.full((2, 2), 0.5)
        out = instrument_channel(instr).apply(plus)
        expected = np.zeros((4, 4))
        expected[0, 0] = 0.5  # |0>_A' |0>_X
        expected[3, 3] = 0.5  # |1>_A' |1>_X
        npt.assert_allclose(out, expected, atol=1e-14)

    def test_block_weights_are_outcome_probabilities(self):
        instr = random_instrument(3, 3, False, stream(16, 2))
        rho = random_density(3, 2, stream(16, 3))
        out = instrument_channel(instr).apply(rho.matrix)
        probs = instr.outcome_probabilities(rho.matrix)
        blocks = out.reshape(3, 3, 3, 3)
        for x in range(3):
            assert abs(np.trace(blocks[:, x, :, x]).real - probs[x]) < 1e-10


def test_ensemble_validation_and_average():
    states = (random_density(2, 1, stream(17, 0)), random_density(2, 2, stream(17, 1)))
    ens = Ensemble(np.array([0.25, 0.75]), states)
    npt.assert_allclose(
        ens.average().matrix, 0.25 * states[0].matrix + 0.75 * states[1].matrix, atol=1e-14
    )
    with pytest.raises(ValueError):
        Ensemble(np.array([0.5, 0.6]), states)


def test_cq_state_assembly():
    blocks = ((0.3, qubit()), (0.7, DensityOperator((("A", 2),), np.diag([1.0, 0.0]))))
    cq = ClassicalQuantumState("X", blocks)
    rho = cq.to_density(classical_first=True)
    assert rho.systems == (("X", 2), ("A", 2))
    npt.assert_allclose(partial_trace(rho, "A").matrix, np.diag([0.3, 0.7]), atol=1e-12)


def test_stream_is_deterministic_and_path_dependent():
    a = stream(42, 1, 2).standard_normal(4)
    b = stream(42, 1, 2).standard_normal(4)
    c = stream(42, 1, 3).standard_normal(4)
    npt.assert_array_equal(a, b)
    assert not np.allclose(a, c)


def test_serialize_round_trip_state_and_channel():
    rho = DensityOperator((("A", 2), ("B", 2)), random_density(4, 3, stream(18, 0)).matrix)
    back = serialize.loads(serialize.dumps(rho))
    assert back.systems == rho.systems
    npt.assert_allclose(back.matrix, rho.matrix, atol=0)

    ch = random_channel(2, 3, 2, stream(18, 1))
    back_ch = serialize.loads(serialize.dumps(ch))
    assert isinstance(back_ch, Channel)
    npt.assert_allclose(choi(back_ch), choi(ch), atol=0)


def test_serialize_is_deterministic():
    rho = random_density(3, 3, stream(18, 2))
    assert serialize.dumps(rho) == serialize.dumps(rho)


def test_kraus_map_allows_trace_increasing():
    m = KrausMap((np.eye(2) * 2.0,))
    npt.assert_allclose(m.apply(np.eye(2)), 4 * np.eye(2), atol=1e-14)
