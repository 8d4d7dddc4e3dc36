import math

import numpy as np
import pytest

from catbox.quantum import (
    DensityMatrix,
    DomainError,
    ZeroVectorError,
    born_probabilities,
    density_of,
    dephase,
    measure,
    mixed_dead_alive,
    mutually_unbiased,
    observable_H,
    observable_rotated,
    observable_S,
    prepare_cat,
    pure_state,
    trace_distance,
)
from catbox.rng import RngStream

ATOL = 1e-12

H = observable_H()
S = observable_S()
DEAD = density_of(pure_state(1, 0))
ALIVE = density_of(pure_state(0, 1))
CAT = density_of(prepare_cat(0.0))
MIXED = mixed_dead_alive()


def random_density(rng: np.random.Generator) -> DensityMatrix:
    # uniform direction, radius in [0, 1]: rho = (I + r.sigma)/2
    v = rng.normal(size=3)
    v *= rng.uniform() / np.linalg.norm(v)
    x, y, z = v
    return DensityMatrix([[0.5 * (1 + z), 0.5 * (x - 1j * y)],
                          [0.5 * (x + 1j * y), 0.5 * (1 - z)]])


def random_observable(rng: np.random.Generator):
    choice = rng.integers(3)
    if choice == 0:
        return observable_H()
    if choice == 1:
        return observable_S()
    return observable_rotated(rng.uniform(-2 * math.pi, 2 * math.pi))


# --- pure states -----------------------------------------------------------

def test_pure_state_basis_vector():
    st = pure_state(1, 0)
    assert st.amp_dead == 1.0 and st.amp_alive == 0.0


def test_pure_state_normalizes():
    st = pure_state(1, 1)
    assert st.amp_dead == pytest.approx(1 / math.sqrt(2), abs=ATOL)
    assert st.amp_alive == st.amp_dead
    st2 = pure_state(3j, 4)
    assert abs(st2.amp_dead) ** 2 + abs(st2.amp_alive) ** 2 == pytest.approx(1, abs=ATOL)


def test_pure_state_zero_vector():
    with pytest.raises(ZeroVectorError):
        pure_state(0, 0)


def test_pure_state_rejects_non_finite():
    with pytest.raises(DomainError):
        pure_state(float("nan"), 1)
    with pytest.raises(DomainError):
        pure_state(complex(0, float("inf")), 1)


def test_prepare_cat_phases():
    # phase 0 is the +1 eigenstate of the plus/minus observable
    assert trace_distance(CAT, S.projector(0)) <= ATOL
    # phase pi is the -1 eigenstate
    assert trace_distance(density_of(prepare_cat(math.pi)), S.projector(1)) <= ATOL
    # equal moduli regardless of phase
    probs = born_probabilities(density_of(prepare_cat(math.pi / 2)), H)
    assert probs["dead"] == pytest.approx(0.5, abs=ATOL)
    assert probs["alive"] == pytest.approx(0.5, abs=ATOL)


def test_prepare_cat_rejects_non_finite_phase():
    with pytest.raises(DomainError):
        prepare_cat(float("inf"))


def test_phase_invariance_of_dead_alive_statistics():
    rng = np.random.default_rng(11)
    for phi in rng.uniform(-10, 10, size=50):
        probs = born_probabilities(density_of(prepare_cat(phi)), H)
        assert probs["dead"] == pytest.approx(0.5, abs=ATOL)


# --- observables -----------------------------------------------------------

def test_observable_definitions():
    assert H.eigenvalue_labels == ("dead", "alive")
    assert H.eigenstates[0].amp_dead == 1.0
    assert S.eigenvalue_labels == ("+1", "-1")
    assert S.eigenstates[0].amp_dead == pytest.approx(1 / math.sqrt(2), abs=ATOL)
    assert S.eigenstates[0].amp_alive == S.eigenstates[0].amp_dead


def test_cross_overlaps_are_half():
    for hi in H.eigenstates:
        for sj in S.eigenstates:
            ov = (hi.amp_dead.conjugate() * sj.amp_dead
                  + hi.amp_alive.conjugate() * sj.amp_alive)
            assert abs(ov) ** 2 == pytest.approx(0.5, abs=ATOL)


def test_rotated_reproduces_canonical_bases():
    r0 = observable_rotated(0.0)
    rhalf = observable_rotated(math.pi / 2)
    for k in range(2):
        assert trace_distance(r0.projector(k), H.projector(k)) <= ATOL
        assert trace_distance(rhalf.projector(k), S.projector(k)) <= ATOL


def test_rotated_on_dead_gives_even_odds():
    probs = born_probabilities(DEAD, observable_rotated(math.pi / 2))
    assert probs["+1"] == pytest.approx(0.5, abs=ATOL)
    assert probs["-1"] == pytest.approx(0.5, abs=ATOL)


def test_observable_validation():
    with pytest.raises(DomainError):
        # not orthogonal
        type(H)("bad", (pure_state(1, 0), pure_state(1, 1)), ("a", "b"))
    with pytest.raises(DomainError):
        type(H)("bad", (pure_state(1, 0), pure_state(0, 1)), ("a", "a"))


# --- density matrices ------------------------------------------------------

def test_density_of_projectors():
    assert np.allclose(DEAD.matrix, [[1, 0], [0, 0]], atol=ATOL)
    assert np.allclose(CAT.matrix, [[0.5, 0.5], [0.5, 0.5]], atol=ATOL)
    assert np.allclose(density_of(prepare_cat(math.pi)).matrix,
                       [[0.5, -0.5], [-0.5, 0.5]], atol=ATOL)


def test_density_of_is_idempotent_projector():
    rng = np.random.default_rng(3)
    for _ in range(100):
        amps = rng.normal(size=4)
        rho = density_of(pure_state(complex(amps[0], amps[1]),
                                    complex(amps[2], amps[3])))
        assert np.allclose(rho.matrix @ rho.matrix, rho.matrix, atol=ATOL)
        assert np.trace(rho.matrix).real == pytest.approx(1, abs=ATOL)


def test_mixed_dead_alive_values():
    assert np.allclose(MIXED.matrix, [[0.5, 0], [0, 0.5]])
    assert born_probabilities(MIXED, H) == {"dead": 0.5, "alive": 0.5}
    # oracle: Tr(rho P+/-) = 0.5 by explicit matrix arithmetic
    assert born_probabilities(MIXED, S) == {"+1": 0.5, "-1": 0.5}


def test_density_matrix_validation():
    with pytest.raises(DomainError):
        DensityMatrix([[0.5, 0.5], [0.4, 0.5]])  # not Hermitian
    with pytest.raises(DomainError):
        DensityMatrix([[0.7, 0], [0, 0.7]])  # trace != 1
    with pytest.raises(DomainError):
        DensityMatrix([[1.2, 0], [0, -0.2]])  # negative eigenvalue
    with pytest.raises(DomainError):
        DensityMatrix(np.eye(3) / 3)  # wrong shape


def test_density_matrix_equality():
    assert MIXED == mixed_dead_alive()
    assert MIXED != CAT


# --- Born rule and measurement --------------------------------------------

def test_born_certainty_and_even_odds():
    assert born_probabilities(CAT, S) == {"+1": 1.0, "-1": 0.0}
    assert born_probabilities(CAT, H) == {"dead": 0.5, "alive": 0.5}


def test_born_distributions_are_valid_and_certain_on_eigenstates():
    rng = np.random.default_rng(7)
    for _ in range(300):
        state, obs = random_density(rng), random_observable(rng)
        probs = born_probabilities(state, obs)
        values = list(probs.values())
        assert all(p >= 0 for p in values)
        assert sum(values) == pytest.approx(1, abs=ATOL)
        # certainty on the observable's own eigenstates
        for k in range(2):
            eig = born_probabilities(obs.projector(k), obs)
            assert eig[obs.eigenvalue_labels[k]] == pytest.approx(1, abs=ATOL)


def test_measure_eigenstate_is_deterministic():
    for seed in range(50):
        rec, _ = measure(DEAD, H, RngStream(seed))
        assert rec.outcome_label == "dead"
        assert rec.post_state == DEAD
        rec, _ = measure(CAT, S, RngStream(seed))
        assert rec.outcome_label == "+1"


def test_measure_seeded_outcome_matches_reference_draw():
    # reference SplitMix64 first draw for seed 42 is 0.7415... >= 0.5,
    # so the dead/alive measurement of the cat collapses to alive
    rec, _ = measure(CAT, H, RngStream(42))
    assert rec.rng_draw == 0.7415648787718233
    assert rec.outcome_label == "alive"
    assert rec.post_state == ALIVE


def test_measure_record_is_consistent():
    rng = np.random.default_rng(13)
    for k in range(200):
        state, obs = random_density(rng), random_observable(rng)
        rec, after = measure(state, obs, RngStream(k))
        assert rec.pre_state == state
        assert rec.observable_name == obs.name
        probs = born_probabilities(state, obs)
        assert rec.probability_of_outcome == pytest.approx(
            probs[rec.outcome_label], abs=ATOL)
        assert 0.0 <= rec.rng_draw < 1.0
        assert after.state != RngStream(k).state


def test_repeat_measurement_is_idempotent():
    rng = np.random.default_rng(17)
    for k in range(500):
        state, obs = random_density(rng), random_observable(rng)
        first, stream = measure(state, obs, RngStream(k))
        second, _ = measure(first.post_state, obs, stream)
        assert second.outcome_label == first.outcome_label
        assert trace_distance(second.post_state, first.post_state) <= ATOL


def test_measurement_sequences_are_seed_deterministic():
    def run(seed):
        records = []
        stream = RngStream(seed)
        state = CAT
        for obs in (H, S, H, S, H):
            rec, stream = measure(state, obs, stream)
            state = rec.post_state
            records.append(rec)
        return records

    assert run(99) == run(99)
    assert [r.rng_draw for r in run(99)] != [r.rng_draw for r in run(100)]


# --- dephasing -------------------------------------------------------------

def test_dephase_identity_and_full():
    assert dephase(CAT, 0.0) == CAT
    assert trace_distance(dephase(CAT, 1.0), MIXED) <= ATOL


def test_dephase_half_strength():
    rho = dephase(CAT, 0.5)
    assert np.allclose(rho.matrix, [[0.5, 0.25], [0.25, 0.5]], atol=ATOL)
    lo, hi = rho.eigenvalues()
    assert lo == pytest.approx(0.25, abs=ATOL)
    assert hi == pytest.approx(0.75, abs=ATOL)


def test_dephase_out_of_range():
    for bad in (-0.1, 1.1, float("nan")):
        with pytest.raises(DomainError):
            dephase(CAT, bad)


def test_dephase_preserves_validity_and_commutes_at_full_strength():
    rng = np.random.default_rng(23)
    for _ in range(100):
        state = random_density(rng)
        s = rng.uniform()
        out = dephase(state, s)
        assert np.trace(out.matrix).real == pytest.approx(1, abs=ATOL)
        assert out.eigenvalues()[0] >= -ATOL
        assert np.allclose(np.diag(out.matrix), np.diag(state.matrix))
        full = dephase(state, 1.0)
        for k in range(2):
            p = H.projector(k).matrix
            assert np.allclose(full.matrix @ p, p @ full.matrix, atol=ATOL)


# --- trace distance --------------------------------------------------------

def test_trace_distance_reference_points():
    assert trace_distance(CAT, CAT) == 0.0
    assert trace_distance(DEAD, ALIVE) == pytest.approx(1, abs=ATOL)
    # oracle: eigenvalues of the difference 0.5*[[0,1],[1,0]] are +/- 0.5
    assert trace_distance(CAT, MIXED) == pytest.approx(0.5, abs=ATOL)


def test_trace_distance_is_a_metric():
    rng = np.random.default_rng(29)
    for _ in range(200):
        a, b, c = (random_density(rng) for _ in range(3))
        dab, dba = trace_distance(a, b), trace_distance(b, a)
        assert dab == pytest.approx(dba, abs=ATOL)
        assert 0 <= dab <= 1 + ATOL
        assert trace_distance(a, c) <= dab + trace_distance(b, c) + ATOL
        assert trace_distance(a, a) <= ATOL


def test_trace_distance_against_numpy_eigenvalues():
    rng = np.random.default_rng(31)
    for _ in range(100):
        a, b = random_density(rng), random_density(rng)
        expected = 0.5 * np.abs(np.linalg.eigvalsh(a.matrix - b.matrix)).sum()
        assert trace_distance(a, b) == pytest.approx(expected, abs=1e-10)


# --- mutual unbiasedness ----------------------------------------------------

def test_mutually_unbiased_pairs():
    assert mutually_unbiased(H, S, 1e-9)
    assert not mutually_unbiased(H, H, 1e-9)
    # oracle: |<dead|e0(pi/3)>|^2 = cos^2(pi/6) = 0.75
    assert not mutually_unbiased(H, observable_rotated(math.pi / 3), 1e-9)
    assert mutually_unbiased(S, observable_rotated(0.0), 1e-9)
