"""The simulated box as a deterministic finite-state machine.

Events mirror the physical front panel: a prepare button, the H/S
selector with its white/green led, a measure button, and the lid sensor.
Transitions are pure (BoxState in, BoxState out) and never raise for
panel-level misuse: an impossible request is logged and shown on the
display, exactly like a real panel ignoring a bad button press.

Opening the lid is the one compound transition: with a cat inside it
forces the selector to dead/alive and measures immediately, appending a
forced-selection entry and a measurement entry.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Mapping

from . import messages as msg
from .quantum import (
    DensityMatrix,
    DomainError,
    MeasurementRecord,
    Observable,
    density_of,
    measure,
    observable_H,
    observable_S,
    prepare_cat,
    record_to_json,
    trace_distance,
)
from .rng import RngStream

EVENTS = ("prepare", "select_h", "select_s", "measure", "lid_open", "lid_close")

_H = observable_H()
_S = observable_S()
_CAT_PLUS = density_of(prepare_cat(0.0))

# outcome label <-> post-measurement eigenstate is a bijection
_OUTCOME_MSG = {
    "dead": msg.MSG_OUTCOME_DEAD,
    "alive": msg.MSG_OUTCOME_ALIVE,
    "+1": msg.MSG_OUTCOME_PLUS,
    "-1": msg.MSG_OUTCOME_MINUS,
}
_STATE_MSG = {
    "dead": msg.MSG_STATE_DEAD,
    "alive": msg.MSG_STATE_ALIVE,
    "+1": msg.MSG_STATE_PLUS,
    "-1": msg.MSG_STATE_MINUS,
}
_CANONICAL_STATES = (
    (_H.projector(0), msg.MSG_STATE_DEAD),
    (_H.projector(1), msg.MSG_STATE_ALIVE),
    (_S.projector(0), msg.MSG_STATE_PLUS),
    (_S.projector(1), msg.MSG_STATE_MINUS),
)


@dataclass(frozen=True)
class LogEntry:
    seq: int
    event: str
    result_kind: str  # "ok" | "rejected" | "measurement"
    display_after: str
    reject_reason: str | None = None
    record: MeasurementRecord | None = None


@dataclass(frozen=True)
class BoxState:
    cat: DensityMatrix | None
    selected: str | None  # "H" | "S"
    led: str  # "white" | "green" | "off"
    lid: str  # "open" | "closed"
    display_id: str
    display_text: str
    rng: RngStream
    log: tuple[LogEntry, ...]
    catalog: Mapping[str, str]


@dataclass(frozen=True)
class PanelView:
    """Pure projection of the panel front; rendering changes nothing."""

    display_id: str
    display_text: str
    led: str
    lid: str
    buttons: dict[str, bool]


def new_box(seed: int, catalog: Mapping[str, str] | None = None) -> BoxState:
    cat_log = dict(catalog) if catalog is not None else dict(msg.DEFAULT_CATALOG)
    return BoxState(
        cat=None,
        selected=None,
        led="off",
        lid="closed",
        display_id=msg.MSG_IDLE,
        display_text=cat_log.get(msg.MSG_IDLE, msg.MSG_IDLE),
        rng=RngStream(seed),
        log=(),
        catalog=cat_log,
    )


def _text(box: BoxState, message_id: str) -> str:
    return box.catalog.get(message_id, message_id)


def _ok(box: BoxState, event: str, display_id: str, **changes) -> BoxState:
    entry = LogEntry(seq=len(box.log), event=event, result_kind="ok",
                     display_after=display_id)
    return replace(box, log=box.log + (entry,), display_id=display_id,
                   display_text=_text(box, display_id), **changes)


def _rejected(box: BoxState, event: str, reason: str) -> BoxState:
    entry = LogEntry(seq=len(box.log), event=event, result_kind="rejected",
                     display_after=reason, reject_reason=reason)
    return replace(box, log=box.log + (entry,), display_id=reason,
                   display_text=_text(box, reason))


def _measured(box: BoxState, event: str, obs: Observable, **changes) -> BoxState:
    record, rng = measure(box.cat, obs, box.rng)
    state_id = _STATE_MSG[record.outcome_label]
    entry = LogEntry(seq=len(box.log), event=event, result_kind="measurement",
                     display_after=state_id, record=record)
    # the panel shows the outcome first, then rests on the new state
    text = (_text(box, _OUTCOME_MSG[record.outcome_label])
            + "\n" + _text(box, state_id))
    return replace(box, cat=record.post_state, rng=rng,
                   log=box.log + (entry,), display_id=state_id,
                   display_text=text, **changes)


def _state_message_id(cat: DensityMatrix) -> str:
    for projector, state_id in _CANONICAL_STATES:
        if trace_distance(cat, projector) <= 1e-9:
            return state_id
    return msg.MSG_STATE_UNKNOWN


def step(box: BoxState, event: str) -> BoxState:
    """Apply one panel event, returning the successor state.

    Guard failures are in-band: the box logs a rejected entry and shows
    the reason on the display, leaving cat/selector/led/lid untouched.
    """
    if event == "prepare":
        if box.lid == "open":
            return _rejected(box, event, msg.REJECT_LID_OPEN)
        return _ok(box, event, msg.MSG_PLUS, cat=_CAT_PLUS)

    if event in ("select_h", "select_s"):
        if box.lid == "open":
            return _rejected(box, event, msg.REJECT_LID_OPEN)
        if event == "select_h":
            return _ok(box, event, msg.MSG_SELECTED_H, selected="H", led="white")
        return _ok(box, event, msg.MSG_SELECTED_S, selected="S", led="green")

    if event == "measure":
        if box.cat is None:
            return _rejected(box, event, msg.REJECT_NO_CAT)
        if box.selected is None:
            return _rejected(box, event, msg.REJECT_NO_SELECTION)
        return _measured(box, event, _H if box.selected == "H" else _S)

    if event == "lid_open":
        if box.cat is None:
            return _ok(box, event, msg.MSG_LID_OPEN, lid="open")
        # the sensor forces dead/alive and triggers the measurement
        forced = _ok(box, event, msg.MSG_SELECTED_H,
                     lid="open", selected="H", led="white")
        return _measured(forced, event, _H)

    if event == "lid_close":
        if box.cat is None:
            return _ok(box, event, msg.MSG_IDLE, lid="closed")
        return _ok(box, event, _state_message_id(box.cat), lid="closed")

    raise DomainError(f"unknown event {event!r}")


def render(box: BoxState) -> PanelView:
    closed = box.lid == "closed"
    return PanelView(
        display_id=box.display_id,
        display_text=box.display_text,
        led=box.led,
        lid=box.lid,
        buttons={
            "prepare": closed,
            "select": closed,
            "measure": box.cat is not None and box.selected is not None,
            "lid": True,
        },
    )


def transcript(box: BoxState) -> tuple[LogEntry, ...]:
    return box.log


# --- transcript serialization: one JSON object per line ---

def log_entry_to_dict(entry: LogEntry) -> dict:
    if entry.result_kind == "ok":
        result: dict = {"kind": "ok"}
    elif entry.result_kind == "rejected":
        result = {"kind": "rejected", "reason": entry.reject_reason}
    else:
        result = {"kind": "measurement", "record": record_to_json(entry.record)}
    return {
        "seq": entry.seq,
        "event": entry.event,
        "result": result,
        "display_after": entry.display_after,
    }


def transcript_to_jsonl(entries: tuple[LogEntry, ...]) -> str:
    if not entries:
        return ""
    return "\n".join(json.dumps(log_entry_to_dict(e)) for e in entries) + "\n"
