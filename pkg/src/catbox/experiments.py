"""Seeded statistical experiments on the two-level core.

Covers the trial harness (empirical Born frequencies), the pure-vs-mixed
distinguisher built on the plus/minus measurement, and the CHSH machinery:
singlet state, two-sided correlations, the analytic CHSH combination, a
sampled estimate, and the brute-forced local-hidden-variable bound.

Everything is deterministic given (preparation, observable, seed); trials
re-prepare the state each time, so outcome sampling reduces to repeated
draws against one fixed Born distribution.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .quantum import (
    DensityMatrix,
    DomainError,
    Observable,
    born_probabilities,
    density_of,
    dephase,
    mixed_dead_alive,
    observable_H,
    observable_rotated,
    observable_S,
    outcome_index,
    prepare_cat,
)
from .rng import RngStream

PREP_KINDS = ("pure", "mixed", "dephased")


@dataclass(frozen=True)
class PrepSpec:
    """Preparation recipe: pure(phase), mixed, or dephased(strength)."""

    kind: str
    phase: float = 0.0
    strength: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in PREP_KINDS:
            raise DomainError(f"unknown preparation {self.kind!r}")
        if not (math.isfinite(self.phase) and math.isfinite(self.strength)):
            raise DomainError("preparation parameters must be finite")
        if self.kind == "dephased" and not (0.0 <= self.strength <= 1.0):
            raise DomainError("dephasing strength must lie in [0, 1]")

    def state(self) -> DensityMatrix:
        if self.kind == "pure":
            return density_of(prepare_cat(self.phase))
        if self.kind == "mixed":
            return mixed_dead_alive()
        return dephase(density_of(prepare_cat(0.0)), self.strength)


def parse_prep(text: str) -> PrepSpec:
    """Parse the CLI form: pure | pure:PHASE | mixed | dephased:STRENGTH."""
    head, _, arg = text.strip().lower().partition(":")
    try:
        if head == "pure":
            return PrepSpec("pure", phase=float(arg) if arg else 0.0)
        if head == "mixed":
            if arg:
                raise DomainError("mixed takes no parameter")
            return PrepSpec("mixed")
        if head == "dephased":
            return PrepSpec("dephased", strength=float(arg) if arg else 0.0)
    except ValueError as exc:
        raise DomainError(f"bad preparation parameter in {text!r}") from exc
    raise DomainError(f"unknown preparation {text!r}")


def parse_obs(text: str) -> Observable:
    """Parse the CLI form: h | s | rotated:THETA."""
    head, _, arg = text.strip().lower().partition(":")
    try:
        if head == "h":
            return observable_H()
        if head == "s":
            return observable_S()
        if head == "rotated":
            return observable_rotated(float(arg) if arg else 0.0)
    except ValueError as exc:
        raise DomainError(f"bad observable parameter in {text!r}") from exc
    raise DomainError(f"unknown observable {text!r}")


@dataclass(frozen=True)
class FrequencyTable:
    """Empirical outcome counts and relative frequencies of one run."""

    observable_name: str
    counts: dict[str, int]
    total: int
    frequencies: dict[str, float]

    def to_json(self) -> dict:
        return {
            "observable_name": self.observable_name,
            "counts": dict(self.counts),
            "total": self.total,
            "frequencies": dict(self.frequencies),
        }


def run_trials(prep: PrepSpec, obs: Observable, n: int, seed: int) -> FrequencyTable:
    """n independent prepare-and-measure rounds, one RNG draw per round.

    Every round re-prepares the same state, so the Born distribution is
    computed once and each draw is resolved against it exactly as
    :func:`catbox.quantum.measure` would.
    """
    if n < 1:
        raise DomainError(f"trial count must be >= 1, got {n}")
    probs = born_probabilities(prep.state(), obs)
    p_first = probs[obs.eigenvalue_labels[0]]
    counts = [0, 0]
    rng = RngStream(seed)
    for _ in range(n):
        u, rng = rng.next()
        counts[outcome_index(p_first, u)] += 1
    labels = obs.eigenvalue_labels
    return FrequencyTable(
        observable_name=obs.name,
        counts={labels[0]: counts[0], labels[1]: counts[1]},
        total=n,
        frequencies={labels[0]: counts[0] / n, labels[1]: counts[1] / n},
    )


@dataclass(frozen=True)
class Verdict:
    """Outcome of the pure-vs-mixed distinguisher."""

    decision: str
    trials: int
    minus_count: int
    error_bound: float

    def to_json(self) -> dict:
        return {
            "decision": self.decision,
            "trials": self.trials,
            "minus_count": self.minus_count,
            "error_bound": self.error_bound,
        }


def distinguish(prep: PrepSpec, n: int, seed: int) -> Verdict:
    """Tell the superposition from the mixture by measuring plus/minus.

    The superposition gives +1 with certainty, so a single -1 outcome
    proves the mixture; seeing none in n rounds declares Pure, wrong for
    a true mixture with probability 2^(-n).
    """
    if n < 1:
        raise DomainError(f"trial count must be >= 1, got {n}")
    if not (prep.kind == "mixed" or (prep.kind == "pure" and prep.phase == 0.0)):
        raise DomainError("distinguish expects pure(0) or mixed preparation")
    table = run_trials(prep, observable_S(), n, seed)
    minus = table.counts["-1"]
    return Verdict(
        decision="Pure" if minus == 0 else "Mixed",
        trials=n,
        minus_count=minus,
        error_bound=2.0 ** (-n),
    )


class TwoQubitState:
    """4x4 density matrix over the product basis (dd, da, ad, aa)."""

    __slots__ = ("matrix",)

    def __init__(self, matrix, *, check: bool = True):
        mat = np.array(matrix, dtype=complex)
        if mat.shape != (4, 4):
            raise DomainError(f"expected a 4x4 matrix, got shape {mat.shape}")
        mat.setflags(write=False)
        self.matrix = mat
        if check:
            if not np.allclose(mat, mat.conj().T, atol=1e-12):
                raise DomainError("two-qubit state is not Hermitian")
            if abs(np.trace(mat).real - 1.0) > 1e-12:
                raise DomainError("two-qubit state trace differs from 1")
            if np.linalg.eigvalsh(mat).min() < -1e-12:
                raise DomainError("two-qubit state has a negative eigenvalue")


def singlet() -> TwoQubitState:
    """Projector of (|da> - |ad>)/sqrt(2): anticorrelated at equal settings."""
    r = 1.0 / math.sqrt(2.0)
    psi = np.array([0.0, r, -r, 0.0], dtype=complex)
    return TwoQubitState(np.outer(psi, psi.conj()), check=False)


def _axis_operator(theta: float) -> np.ndarray:
    # +/-1-valued operator P+(theta) - P-(theta) of the rotated observable.
    obs = observable_rotated(theta)
    return obs.projector(0).matrix - obs.projector(1).matrix


def correlation(state: TwoQubitState, theta_a: float, theta_b: float) -> float:
    """E = Tr(rho (A x B)) with rotated +/-1 observables on each side."""
    op = np.kron(_axis_operator(theta_a), _axis_operator(theta_b))
    return float(np.trace(state.matrix @ op).real)


def joint_probabilities(state: TwoQubitState, obs_a: Observable,
                        obs_b: Observable) -> dict[tuple[str, str], float]:
    """Born distribution of the joint measurement, in canonical pair order
    (first x first, first x second, second x first, second x second)."""
    raw = []
    keys = []
    for i, j in itertools.product(range(2), range(2)):
        proj = np.kron(obs_a.projector(i).matrix, obs_b.projector(j).matrix)
        raw.append(max(0.0, float(np.trace(state.matrix @ proj).real)))
        keys.append((obs_a.eigenvalue_labels[i], obs_b.eigenvalue_labels[j]))
    total = sum(raw)
    if total <= 0.0:
        raise DomainError("state has no weight on any joint outcome")
    return {k: p / total for k, p in zip(keys, raw)}


@dataclass(frozen=True)
class ChshSettings:
    """Measurement angles of the four-setting Bell experiment."""

    a: float
    a_prime: float
    b: float
    b_prime: float

    def __post_init__(self) -> None:
        for v in (self.a, self.a_prime, self.b, self.b_prime):
            if not math.isfinite(v):
                raise DomainError("CHSH settings must be finite")

    def pairs(self) -> tuple[tuple[float, float], ...]:
        # combination order matches the signs in the CHSH sum
        return ((self.a, self.b), (self.a, self.b_prime),
                (self.a_prime, self.b), (self.a_prime, self.b_prime))


TSIRELSON_SETTINGS = ChshSettings(0.0, math.pi / 2, math.pi / 4, 3 * math.pi / 4)

_CHSH_SIGNS = (1.0, -1.0, 1.0, 1.0)
_PAIR_NAMES = ("a_b", "a_bprime", "aprime_b", "aprime_bprime")


def chsh_value(state: TwoQubitState, settings: ChshSettings) -> float:
    """Analytic S = E(a,b) - E(a,b') + E(a',b) + E(a',b')."""
    terms = [correlation(state, ta, tb) for ta, tb in settings.pairs()]
    return float(sum(s * t for s, t in zip(_CHSH_SIGNS, terms)))


@dataclass(frozen=True)
class ChshSample:
    """Sampled CHSH estimate with its binomial standard error."""

    estimate: float
    std_error: float
    n_per_setting: int
    counts: dict[str, dict[str, int]]

    def to_json(self) -> dict:
        return {
            "estimate": self.estimate,
            "std_error": self.std_error,
            "n_per_setting": self.n_per_setting,
            "counts": {k: dict(v) for k, v in self.counts.items()},
        }


def chsh_sampled(settings: ChshSettings, n_per_setting: int, seed: int) -> ChshSample:
    """Simulate n joint measurements per setting pair on fresh singlets.

    Each trial consumes one draw, resolved against the cumulative joint
    Born probabilities in canonical pair order. The standard error
    propagates the binomial variance (1 - E^2)/n of each of the four
    independent correlation estimates.
    """
    if n_per_setting < 1:
        raise DomainError(f"trials per setting must be >= 1, got {n_per_setting}")
    state = singlet()
    rng = RngStream(seed)
    estimate = 0.0
    variance = 0.0
    counts: dict[str, dict[str, int]] = {}
    for name, sign, (ta, tb) in zip(_PAIR_NAMES, _CHSH_SIGNS, settings.pairs()):
        probs = joint_probabilities(
            state, observable_rotated(ta), observable_rotated(tb))
        cum = []
        acc = 0.0
        for p in probs.values():
            acc += p
            cum.append(acc)
        n_pair = [0, 0, 0, 0]
        for _ in range(n_per_setting):
            u, rng = rng.next()
            k = 0
            while k < 3 and u >= cum[k]:
                k += 1
            n_pair[k] += 1
        same = n_pair[0] + n_pair[3]
        e_hat = (2.0 * same - n_per_setting) / n_per_setting
        estimate += sign * e_hat
        variance += (1.0 - e_hat * e_hat) / n_per_setting
        counts[name] = {"++": n_pair[0], "+-": n_pair[1],
                        "-+": n_pair[2], "--": n_pair[3]}
    return ChshSample(
        estimate=estimate,
        std_error=math.sqrt(variance),
        n_per_setting=n_per_setting,
        counts=counts,
    )


def lhv_chsh_values() -> tuple[int, ...]:
    """CHSH combination of every deterministic local strategy."""
    vals = []
    for a, ap, b, bp in itertools.product((1, -1), repeat=4):
        vals.append(a * b - a * bp + ap * b + ap * bp)
    return tuple(vals)


def lhv_chsh_max() -> int:
    """Largest |S| reachable with pre-determined local values: exactly 2."""
    return max(abs(v) for v in lhv_chsh_values())
