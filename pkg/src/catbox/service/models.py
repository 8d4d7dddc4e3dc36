"""Pydantic request/response models of the HTTP surface.

Field names are lower_snake_case throughout; complex numbers appear only
inside transcript log entries, serialized as {"re": x, "im": y}.
"""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, Field

EventName = Literal["prepare", "select_h", "select_s",
                    "measure", "lid_open", "lid_close"]


class CreateBoxRequest(BaseModel):
    seed: int | None = None


class CreateBoxResponse(BaseModel):
    box_id: str
    seed: int


class ButtonsModel(BaseModel):
    prepare: bool
    select: bool
    measure: bool
    lid: bool


class PanelModel(BaseModel):
    display_id: str
    display_text: str
    led: Literal["white", "green", "off"]
    lid: Literal["open", "closed"]
    buttons: ButtonsModel


class EventRequest(BaseModel):
    event: EventName


class EventResponse(BaseModel):
    panel: PanelModel
    new_log_entries: list[dict[str, Any]]


class PrepModel(BaseModel):
    kind: Literal["pure", "mixed", "dephased"]
    phase: float = 0.0
    strength: float = 0.0


class ObsModel(BaseModel):
    kind: Literal["h", "s", "rotated"]
    theta: float = 0.0


class TrialsRequest(BaseModel):
    prep: PrepModel
    obs: ObsModel
    n: int = Field(ge=1)
    seed: int = 0


class FrequencyTableResponse(BaseModel):
    observable_name: str
    counts: dict[str, int]
    total: int
    frequencies: dict[str, float]


class DistinguishRequest(BaseModel):
    prep: PrepModel
    n: int = Field(ge=1)
    seed: int = 0


class VerdictResponse(BaseModel):
    decision: Literal["Pure", "Mixed"]
    trials: int
    minus_count: int
    error_bound: float


class SettingsModel(BaseModel):
    a: float
    a_prime: float
    b: float
    b_prime: float


class SampledChshModel(BaseModel):
    estimate: float
    std_error: float
    n_per_setting: int
    counts: dict[str, dict[str, int]]


class BellRequest(BaseModel):
    settings: SettingsModel
    n_per_setting: int | None = Field(default=None, ge=1)
    seed: int = 0


class BellResponse(BaseModel):
    settings: SettingsModel
    analytic_value: float
    lhv_bound: float
    sampled: SampledChshModel | None = None


class ErrorResponse(BaseModel):
    code: Literal["NOT_FOUND", "BAD_REQUEST", "CONFLICT"]
    message: str
