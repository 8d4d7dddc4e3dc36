"""FastAPI service hosting box instances and the experiment endpoints.

Boxes live in an in-memory registry. Every box mutation goes through a
per-box non-blocking lock: of two simultaneous writers one gets the
transition and the other gets 409, mirroring a physical panel that
cannot take two presses at once. Experiment endpoints are stateless.
"""

from __future__ import annotations

import json
import os
import secrets
import threading
import time
import uuid
from typing import Mapping

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse

from ..experiments import (
    ChshSettings,
    PrepSpec,
    chsh_sampled,
    chsh_value,
    distinguish,
    lhv_chsh_max,
    run_trials,
    singlet,
)
from ..fsm import (
    BoxState,
    LogEntry,
    log_entry_to_dict,
    new_box,
    render,
    step,
    transcript_to_jsonl,
)
from ..quantum import (
    DomainError,
    observable_H,
    observable_rotated,
    observable_S,
)
from . import models

_STATUS = {"NOT_FOUND": 404, "BAD_REQUEST": 400, "CONFLICT": 409}


class ApiError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message
        self.status = _STATUS[code]


class _BoxSlot:
    __slots__ = ("box", "lock", "seed", "created_at")

    def __init__(self, box: BoxState, seed: int):
        self.box = box
        self.lock = threading.Lock()
        self.seed = seed
        self.created_at = time.time()


class BoxRegistry:
    """In-memory box store with single-writer-per-box event application."""

    def __init__(self, fixed_seed: int | None = None,
                 catalog: Mapping[str, str] | None = None,
                 transcript_dir: str | None = None):
        self._slots: dict[str, _BoxSlot] = {}
        self._table_lock = threading.Lock()
        self._fixed_seed = fixed_seed
        self._catalog = catalog
        self._transcript_dir = transcript_dir
        if transcript_dir:
            os.makedirs(transcript_dir, exist_ok=True)

    def create(self, seed: int | None) -> tuple[str, int]:
        if seed is None:
            seed = self._fixed_seed
        if seed is None:
            seed = secrets.randbits(64)
        box_id = uuid.uuid4().hex
        with self._table_lock:
            self._slots[box_id] = _BoxSlot(new_box(seed, self._catalog), seed)
        return box_id, seed

    def _slot(self, box_id: str) -> _BoxSlot:
        slot = self._slots.get(box_id)
        if slot is None:
            raise ApiError("NOT_FOUND", f"no box with id {box_id!r}")
        return slot

    def get(self, box_id: str) -> BoxState:
        return self._slot(box_id).box

    def apply_event(self, box_id: str, event: str) -> tuple[BoxState, tuple[LogEntry, ...]]:
        slot = self._slot(box_id)
        if not slot.lock.acquire(blocking=False):
            raise ApiError("CONFLICT", "box is busy with another event")
        try:
            before = slot.box
            after = step(before, event)
            slot.box = after
            new_entries = after.log[len(before.log):]
        finally:
            slot.lock.release()
        self._persist(box_id, new_entries)
        return after, new_entries

    def delete(self, box_id: str) -> None:
        with self._table_lock:
            if box_id not in self._slots:
                raise ApiError("NOT_FOUND", f"no box with id {box_id!r}")
            del self._slots[box_id]

    def _persist(self, box_id: str, entries: tuple[LogEntry, ...]) -> None:
        if not self._transcript_dir or not entries:
            return
        path = os.path.join(self._transcript_dir, f"{box_id}.jsonl")
        with open(path, "a", encoding="utf-8") as fh:
            for entry in entries:
                fh.write(json.dumps(log_entry_to_dict(entry)) + "\n")


def _panel_model(box: BoxState) -> models.PanelModel:
    view = render(box)
    return models.PanelModel(
        display_id=view.display_id,
        display_text=view.display_text,
        led=view.led,
        lid=view.lid,
        buttons=models.ButtonsModel(**view.buttons),
    )


def _build_prep(model: models.PrepModel) -> PrepSpec:
    return PrepSpec(kind=model.kind, phase=model.phase, strength=model.strength)


def _build_obs(model: models.ObsModel):
    if model.kind == "h":
        return observable_H()
    if model.kind == "s":
        return observable_S()
    return observable_rotated(model.theta)


def create_app(fixed_seed: int | None = None,
               catalog: Mapping[str, str] | None = None,
               transcript_dir: str | None = None) -> FastAPI:
    """Build the service; seed is fixed for demos or random per box."""
    app = FastAPI(title="catbox", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
        allow_headers=["*"],
    )
    registry = BoxRegistry(fixed_seed=fixed_seed, catalog=catalog,
                           transcript_dir=transcript_dir)
    app.state.registry = registry

    @app.exception_handler(ApiError)
    async def _api_error(_: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status,
                            content={"code": exc.code, "message": exc.message})

    @app.exception_handler(RequestValidationError)
    async def _validation_error(_: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400,
                            content={"code": "BAD_REQUEST", "message": str(exc)})

    @app.exception_handler(DomainError)
    async def _domain_error(_: Request, exc: DomainError):
        return JSONResponse(status_code=400,
                            content={"code": "BAD_REQUEST", "message": str(exc)})

    @app.post("/boxes", status_code=201, response_model=models.CreateBoxResponse)
    def create_box(body: models.CreateBoxRequest | None = None):
        box_id, seed = registry.create(body.seed if body else None)
        return models.CreateBoxResponse(box_id=box_id, seed=seed)

    @app.get("/boxes/{box_id}", response_model=models.PanelModel)
    def get_box(box_id: str):
        return _panel_model(registry.get(box_id))

    @app.post("/boxes/{box_id}/events", response_model=models.EventResponse)
    def post_event(box_id: str, body: models.EventRequest):
        box, entries = registry.apply_event(box_id, body.event)
        return models.EventResponse(
            panel=_panel_model(box),
            new_log_entries=[log_entry_to_dict(e) for e in entries],
        )

    @app.get("/boxes/{box_id}/transcript")
    def get_transcript(box_id: str):
        body = transcript_to_jsonl(registry.get(box_id).log)
        return PlainTextResponse(body, media_type="application/x-ndjson")

    @app.delete("/boxes/{box_id}", status_code=204)
    def delete_box(box_id: str):
        registry.delete(box_id)
        return Response(status_code=204)

    @app.post("/experiments/trials", response_model=models.FrequencyTableResponse)
    def experiments_trials(body: models.TrialsRequest):
        table = run_trials(_build_prep(body.prep), _build_obs(body.obs),
                           body.n, body.seed)
        return models.FrequencyTableResponse(**table.to_json())

    @app.post("/experiments/distinguish", response_model=models.VerdictResponse)
    def experiments_distinguish(body: models.DistinguishRequest):
        verdict = distinguish(_build_prep(body.prep), body.n, body.seed)
        return models.VerdictResponse(**verdict.to_json())

    @app.post("/experiments/bell", response_model=models.BellResponse)
    def experiments_bell(body: models.BellRequest):
        settings = ChshSettings(a=body.settings.a, a_prime=body.settings.a_prime,
                                b=body.settings.b, b_prime=body.settings.b_prime)
        sampled = None
        if body.n_per_setting is not None:
            sample = chsh_sampled(settings, body.n_per_setting, body.seed)
            sampled = models.SampledChshModel(**sample.to_json())
        return models.BellResponse(
            settings=body.settings,
            analytic_value=chsh_value(singlet(), settings),
            lhv_bound=float(lhv_chsh_max()),
            sampled=sampled,
        )

    return app
