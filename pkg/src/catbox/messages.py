"""Display message catalog for the box panel.

Messages are keyed by stable ids; transcripts record ids only, so
translations never change replayed transcripts. English defaults below
can be overridden by a UTF-8 key=value file (one entry per line, `#`
comments allowed), selected with --catalog or the CATBOX_CATALOG env var.
"""

from __future__ import annotations

import os

MSG_IDLE = "MSG_IDLE"
MSG_PLUS = "MSG_PLUS"
MSG_SELECTED_H = "MSG_SELECTED_H"
MSG_SELECTED_S = "MSG_SELECTED_S"
MSG_OUTCOME_DEAD = "MSG_OUTCOME_DEAD"
MSG_OUTCOME_ALIVE = "MSG_OUTCOME_ALIVE"
MSG_OUTCOME_PLUS = "MSG_OUTCOME_PLUS"
MSG_OUTCOME_MINUS = "MSG_OUTCOME_MINUS"
MSG_STATE_DEAD = "MSG_STATE_DEAD"
MSG_STATE_ALIVE = "MSG_STATE_ALIVE"
MSG_STATE_PLUS = "MSG_STATE_PLUS"
MSG_STATE_MINUS = "MSG_STATE_MINUS"
MSG_STATE_UNKNOWN = "MSG_STATE_UNKNOWN"
MSG_LID_OPEN = "MSG_LID_OPEN"
REJECT_LID_OPEN = "REJECT_LID_OPEN"
REJECT_NO_CAT = "REJECT_NO_CAT"
REJECT_NO_SELECTION = "REJECT_NO_SELECTION"

DEFAULT_CATALOG: dict[str, str] = {
    MSG_IDLE: "Ready. Press PREPARE to load the cat.",
    MSG_PLUS: "The cat is in the plus state: (|dead> + |alive>)/sqrt(2).",
    MSG_SELECTED_H: "Measurement selected: dead/alive (white led).",
    MSG_SELECTED_S: "Measurement selected: plus/minus (green led).",
    MSG_OUTCOME_DEAD: "Outcome: dead.",
    MSG_OUTCOME_ALIVE: "Outcome: alive.",
    MSG_OUTCOME_PLUS: "Outcome: +1.",
    MSG_OUTCOME_MINUS: "Outcome: -1.",
    MSG_STATE_DEAD: "Current state: |dead>.",
    MSG_STATE_ALIVE: "Current state: |alive>.",
    MSG_STATE_PLUS: "Current state: (|dead> + |alive>)/sqrt(2).",
    MSG_STATE_MINUS: "Current state: (|dead> - |alive>)/sqrt(2).",
    MSG_STATE_UNKNOWN: "Current state: see transcript.",
    MSG_LID_OPEN: "The box is open.",
    REJECT_LID_OPEN: "Rejected: close the lid first.",
    REJECT_NO_CAT: "Rejected: no cat prepared. Press PREPARE.",
    REJECT_NO_SELECTION: "Rejected: select a measurement first.",
}


def load_catalog(path: str) -> dict[str, str]:
    """Defaults merged with the key=value overrides found at path."""
    catalog = dict(DEFAULT_CATALOG)
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"{path}:{lineno}: expected KEY=value")
            catalog[key.strip()] = value.strip()
    return catalog


def resolve_catalog(path: str | None = None) -> dict[str, str]:
    """Catalog from an explicit path, else CATBOX_CATALOG, else defaults."""
    path = path or os.environ.get("CATBOX_CATALOG")
    if path:
        return load_catalog(path)
    return dict(DEFAULT_CATALOG)
