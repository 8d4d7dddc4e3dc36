"""Exact two-level quantum mechanics for the boxed-cat simulator.

States live in the {dead, alive} basis. Pure states are normalized
amplitude pairs; everything downstream (measurement, dephasing, distances)
operates on 2x2 density matrices so that superpositions and ignorance
mixtures flow through the same code path. The dead/alive observable and
the plus/minus observable are the two canonical, mutually unbiased
measurements of the simulated experiment.

All operations are pure functions on immutable values; randomness enters
only through an explicitly threaded :class:`~catbox.rng.RngStream`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .rng import RngStream

ATOL = 1e-12
# Born weight above which an outcome counts as certain (the state is taken
# to be in the corresponding eigenstate and the draw cannot override it).
EIGENSTATE_TOL = 1e-9


class DomainError(ValueError):
    """An argument is outside an operation's stated domain."""


class ZeroVectorError(ValueError):
    """Amplitudes too close to the zero vector to normalize."""


@dataclass(frozen=True)
class PureState:
    """Normalized two-component state; build via :func:`pure_state`."""

    amp_dead: complex
    amp_alive: complex

    def vector(self) -> np.ndarray:
        return np.array([self.amp_dead, self.amp_alive], dtype=complex)


def _require_finite(name: str, *values: complex) -> None:
    for z in values:
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise DomainError(f"{name} must be finite, got {z!r}")


def pure_state(amp_dead: complex, amp_alive: complex) -> PureState:
    """Normalize the amplitude pair into a :class:`PureState`.

    Raises ZeroVectorError when the squared norm is at most 1e-12.
    """
    a, b = complex(amp_dead), complex(amp_alive)
    _require_finite("amplitude", a, b)
    norm_sq = (a.real * a.real + a.imag * a.imag
               + b.real * b.real + b.imag * b.imag)
    if norm_sq <= 1e-12:
        raise ZeroVectorError("amplitudes are numerically the zero vector")
    norm = math.sqrt(norm_sq)
    return PureState(a / norm, b / norm)


def prepare_cat(phase: float) -> PureState:
    """The equal superposition (|dead> + e^{i*phase}|alive>)/sqrt(2)."""
    if not math.isfinite(phase):
        raise DomainError(f"phase must be finite, got {phase!r}")
    return pure_state(1.0, cmath.exp(1j * phase))


def _eig2(p: float, q: complex, s: float) -> tuple[float, float]:
    # Eigenvalues of the Hermitian matrix [[p, q], [conj(q), s]].
    mean = 0.5 * (p + s)
    disc = math.hypot(0.5 * (p - s), abs(q))
    return mean - disc, mean + disc


class DensityMatrix:
    """2x2 Hermitian, unit-trace, positive-semidefinite operator."""

    __slots__ = ("matrix", "_e")

    def __init__(self, matrix, *, check: bool = True):
        mat = np.array(matrix, dtype=complex)
        if mat.shape != (2, 2):
            raise DomainError(f"expected a 2x2 matrix, got shape {mat.shape}")
        mat.setflags(write=False)
        self.matrix = mat
        self._e = (complex(mat[0, 0]), complex(mat[0, 1]),
                   complex(mat[1, 0]), complex(mat[1, 1]))
        if check:
            self._validate()

    def _validate(self) -> None:
        m00, m01, m10, m11 = self._e
        _require_finite("density matrix entry", m00, m01, m10, m11)
        if abs(m01 - m10.conjugate()) > ATOL or abs(m00.imag) > ATOL \
                or abs(m11.imag) > ATOL:
            raise DomainError("density matrix is not Hermitian")
        if abs(m00.real + m11.real - 1.0) > ATOL:
            raise DomainError("density matrix trace differs from 1")
        lo, _ = self.eigenvalues()
        if lo < -ATOL:
            raise DomainError(f"density matrix has negative eigenvalue {lo}")

    def eigenvalues(self) -> tuple[float, float]:
        """Both (real) eigenvalues, ascending, in closed form."""
        m00, m01, m10, m11 = self._e
        return _eig2(m00.real, 0.5 * (m01 + m10.conjugate()), m11.real)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DensityMatrix):
            return NotImplemented
        return self._e == other._e

    __hash__ = None

    def __repr__(self) -> str:
        m00, m01, m10, m11 = self._e
        return f"DensityMatrix([[{m00}, {m01}], [{m10}, {m11}]])"


def density_of(state: PureState) -> DensityMatrix:
    """Rank-1 projector |psi><psi| of a pure state."""
    a, b = state.amp_dead, state.amp_alive
    ac, bc = a.conjugate(), b.conjugate()
    return DensityMatrix([[a * ac, a * bc], [b * ac, b * bc]])


def mixed_dead_alive() -> DensityMatrix:
    """The ignorance mixture: dead or alive with probability one half."""
    return DensityMatrix([[0.5, 0.0], [0.0, 0.5]], check=False)


@dataclass(frozen=True)
class Observable:
    """Two-outcome observable given by an orthonormal eigenbasis.

    Outcome order is canonical: eigenstates[k] belongs to
    eigenvalue_labels[k], and measurement draws compare against the
    cumulative probability in this order.
    """

    name: str
    eigenstates: tuple[PureState, PureState]
    eigenvalue_labels: tuple[str, str]

    def __post_init__(self) -> None:
        e0, e1 = self.eigenstates
        for e in (e0, e1):
            nrm = abs(e.amp_dead) ** 2 + abs(e.amp_alive) ** 2
            if abs(nrm - 1.0) > ATOL:
                raise DomainError(f"eigenstate of {self.name!r} not normalized")
        overlap = (e0.amp_dead.conjugate() * e1.amp_dead
                   + e0.amp_alive.conjugate() * e1.amp_alive)
        if abs(overlap) > ATOL:
            raise DomainError(f"eigenstates of {self.name!r} not orthogonal")
        if self.eigenvalue_labels[0] == self.eigenvalue_labels[1]:
            raise DomainError("eigenvalue labels must be distinct")
        object.__setattr__(
            self, "_projectors", (density_of(e0), density_of(e1)))

    def projector(self, index: int) -> DensityMatrix:
        return self._projectors[index]


def observable_H() -> Observable:
    """Dead-or-alive: eigenstates |dead>, |alive>."""
    return Observable("H", (pure_state(1.0, 0.0), pure_state(0.0, 1.0)),
                      ("dead", "alive"))


def observable_S() -> Observable:
    """Plus-or-minus: eigenstates (|dead> +/- |alive>)/sqrt(2), labels +1/-1."""
    return Observable("S", (pure_state(1.0, 1.0), pure_state(1.0, -1.0)),
                      ("+1", "-1"))


def observable_rotated(theta: float) -> Observable:
    """Observable whose eigenbasis is rotated by theta from dead/alive.

    theta=0 reproduces the dead/alive basis, theta=pi/2 the plus/minus
    basis; intermediate angles are used as Bell measurement settings.
    """
    if not math.isfinite(theta):
        raise DomainError(f"theta must be finite, got {theta!r}")
    c, s = math.cos(0.5 * theta), math.sin(0.5 * theta)
    return Observable(f"R({theta!r})",
                      (pure_state(c, s), pure_state(-s, c)), ("+1", "-1"))


def _expectation(state: DensityMatrix, eig: PureState) -> float:
    # <e|rho|e> for one eigenstate; real up to fp noise for Hermitian rho.
    m00, m01, m10, m11 = state._e
    a, b = eig.amp_dead, eig.amp_alive
    val = (a.conjugate() * (m00 * a + m01 * b)
           + b.conjugate() * (m10 * a + m11 * b))
    return val.real


def born_probabilities(state: DensityMatrix, obs: Observable) -> dict[str, float]:
    """Outcome probabilities Tr(rho P_k), in the observable's canonical order.

    Raw weights are clamped at zero and normalized by their sum, so the
    returned distribution sums to exactly 1 and equal weights come out
    exactly equal.
    """
    p0 = max(0.0, _expectation(state, obs.eigenstates[0]))
    p1 = max(0.0, _expectation(state, obs.eigenstates[1]))
    total = p0 + p1
    if total <= 0.0:
        raise DomainError("state has no weight on either outcome")
    return {obs.eigenvalue_labels[0]: p0 / total,
            obs.eigenvalue_labels[1]: p1 / total}


def outcome_index(p_first: float, u: float) -> int:
    """Decide the realized outcome from the first-outcome probability.

    A state sitting in an eigenstate (weight within EIGENSTATE_TOL of 0
    or 1) yields that outcome with certainty regardless of the draw;
    otherwise the draw u is compared against the cumulative probability
    in canonical order (first outcome wins when u < p_first).
    """
    if p_first >= 1.0 - EIGENSTATE_TOL:
        return 0
    if p_first <= EIGENSTATE_TOL:
        return 1
    return 0 if u < p_first else 1


@dataclass(frozen=True)
class MeasurementRecord:
    observable_name: str
    outcome_label: str
    probability_of_outcome: float
    pre_state: DensityMatrix
    post_state: DensityMatrix
    rng_draw: float


def measure(state: DensityMatrix, obs: Observable,
            rng: RngStream) -> tuple[MeasurementRecord, RngStream]:
    """Projective measurement with collapse.

    Consumes exactly one draw from the stream (also in the certain case),
    picks the outcome per :func:`outcome_index`, and collapses the state
    to the projector of the realized eigenstate.
    """
    u, rng_after = rng.next()
    probs = born_probabilities(state, obs)
    labels = obs.eigenvalue_labels
    k = outcome_index(probs[labels[0]], u)
    record = MeasurementRecord(
        observable_name=obs.name,
        outcome_label=labels[k],
        probability_of_outcome=probs[labels[k]],
        pre_state=state,
        post_state=obs.projector(k),
        rng_draw=u,
    )
    return record, rng_after


def dephase(state: DensityMatrix, strength: float) -> DensityMatrix:
    """Phase damping in the dead/alive basis.

    Diagonal entries are kept; off-diagonal entries shrink by the factor
    (1 - strength). Strength 1 turns the superposition into the ignorance
    mixture.
    """
    if not (0.0 <= strength <= 1.0):
        raise DomainError(f"dephasing strength must lie in [0, 1], got {strength!r}")
    m00, m01, m10, m11 = state._e
    keep = 1.0 - strength
    # channel output of a valid state is valid
    return DensityMatrix([[m00, m01 * keep], [m10 * keep, m11]], check=False)


def trace_distance(a: DensityMatrix, b: DensityMatrix) -> float:
    """Half the sum of absolute eigenvalues of (a - b)."""
    a00, a01, a10, a11 = a._e
    b00, b01, b10, b11 = b._e
    q = 0.5 * ((a01 - b01) + (a10 - b10).conjugate())
    lo, hi = _eig2(a00.real - b00.real, q, a11.real - b11.real)
    return 0.5 * (abs(lo) + abs(hi))


def mutually_unbiased(a: Observable, b: Observable, tol: float) -> bool:
    """True iff every cross-basis overlap probability equals one half."""
    for ea in a.eigenstates:
        for eb in b.eigenstates:
            ov = (ea.amp_dead.conjugate() * eb.amp_dead
                  + ea.amp_alive.conjugate() * eb.amp_alive)
            if abs(abs(ov) ** 2 - 0.5) > tol:
                return False
    return True


# --- JSON mappings (complex numbers serialize as {"re": x, "im": y}) ---

def complex_to_json(z: complex) -> dict[str, float]:
    return {"re": float(z.real), "im": float(z.imag)}


def matrix_to_json(dm: DensityMatrix) -> list[list[dict[str, float]]]:
    m00, m01, m10, m11 = dm._e
    return [[complex_to_json(m00), complex_to_json(m01)],
            [complex_to_json(m10), complex_to_json(m11)]]


def record_to_json(rec: MeasurementRecord) -> dict:
    return {
        "observable_name": rec.observable_name,
        "outcome_label": rec.outcome_label,
        "probability_of_outcome": rec.probability_of_outcome,
        "pre_state": matrix_to_json(rec.pre_state),
        "post_state": matrix_to_json(rec.post_state),
        "rng_draw": rec.rng_draw,
    }
