"""Deterministic simulator of the boxed-cat experiment.

Layers: a two-level quantum core (states, Born rule, collapse,
dephasing), seeded statistical experiments including a CHSH harness,
the interactive box state machine, and an HTTP service plus CLI on top.
"""

from .experiments import (
    ChshSample,
    ChshSettings,
    FrequencyTable,
    PrepSpec,
    TSIRELSON_SETTINGS,
    TwoQubitState,
    Verdict,
    chsh_sampled,
    chsh_value,
    correlation,
    distinguish,
    joint_probabilities,
    lhv_chsh_max,
    lhv_chsh_values,
    parse_obs,
    parse_prep,
    run_trials,
    singlet,
)
from .fsm import (
    BoxState,
    EVENTS,
    LogEntry,
    PanelView,
    new_box,
    render,
    step,
    transcript,
    transcript_to_jsonl,
)
from .quantum import (
    ATOL,
    DensityMatrix,
    DomainError,
    MeasurementRecord,
    Observable,
    PureState,
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
from .rng import RngStream, rng_next

__all__ = [
    "ATOL",
    "BoxState",
    "ChshSample",
    "ChshSettings",
    "DensityMatrix",
    "DomainError",
    "EVENTS",
    "FrequencyTable",
    "LogEntry",
    "MeasurementRecord",
    "Observable",
    "PanelView",
    "PrepSpec",
    "PureState",
    "RngStream",
    "TSIRELSON_SETTINGS",
    "TwoQubitState",
    "Verdict",
    "ZeroVectorError",
    "born_probabilities",
    "chsh_sampled",
    "chsh_value",
    "correlation",
    "density_of",
    "dephase",
    "distinguish",
    "joint_probabilities",
    "lhv_chsh_max",
    "lhv_chsh_values",
    "measure",
    "mixed_dead_alive",
    "mutually_unbiased",
    "new_box",
    "observable_H",
    "observable_rotated",
    "observable_S",
    "parse_obs",
    "parse_prep",
    "prepare_cat",
    "pure_state",
    "render",
    "rng_next",
    "run_trials",
    "singlet",
    "step",
    "trace_distance",
    "transcript",
    "transcript_to_jsonl",
]
