"""Live exploration sessions and the HTTP/WebSocket service.

A session owns one dataset plus the full pipeline state (assignment, view,
slab, camera). Commands are applied strictly in arrival order under a
per-session lock; a failed command leaves the state untouched. Every state
change bumps a version number that websocket subscribers watch.
"""

import asyncio
import itertools
import math
import threading
from dataclasses import dataclass, field
from typing import Optional

from .assignment import AssignmentError, DimensionAssignment, validate
from .dataset import Dataset, DatasetError, load_csv
from .projection import ProjectionError, pca_report, project
from .scene import (DEFAULT_SIGMA_RANGE, CameraConfig, build_frame,
                    serialize_frame)
from .slab import SlabConfig, SlabMode
from .view import RotationPlane, ViewState, rotate, translate

DEFAULT_PUSH_RATE = 60.0  # websocket pushes per second, at most


class SessionError(ValueError):
    """A command or lookup the service must reject."""

    def __init__(self, message, violations=None, status=400):
        super().__init__(message)
        self.violations = violations or []
        self.status = status


@dataclass
class Session:
    session_id: str
    dataset_id: str
    dataset: Dataset
    assignment: DimensionAssignment | None = None
    filter_matrix: object = None
    projected: object = None
    view: ViewState = field(default_factory=ViewState)
    slab: SlabConfig = field(default_factory=SlabConfig)
    camera: CameraConfig = field(default_factory=CameraConfig)
    sigma_range: float = DEFAULT_SIGMA_RANGE
    frame_seq: int = 0
    state_version: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock)

    def summary(self) -> dict:
        return {
            "session_id": self.session_id,
            "dataset_id": self.dataset_id,
            "n_dims": self.dataset.n_dims,
            "n_total": self.dataset.n_points,
            "dimension_names": list(self.dataset.names),
            "has_assignment": self.assignment is not None,
            "assignment": (None if self.assignment is None
                           else self.assignment.to_spec(self.dataset.names)),
            "view": self.view.to_dict(),
            "slab": {"threshold": self.slab.threshold,
                     "mode": self.slab.mode.value},
            "camera": {"d": self.camera.distance,
                       "near_epsilon": self.camera.near_epsilon},
            "sigma_range": self.sigma_range,
            "state_version": self.state_version,
            "frame_seq": self.frame_seq,
        }


def _require(command: dict, key: str):
    if key not in command:
        raise SessionError(f"command {command.get('type')!r} needs {key!r}")
    return command[key]


def _as_float(value, what: str) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise SessionError(f"{what} must be a number") from None
    if not math.isfinite(value):
        raise SessionError(f"{what} must be finite")
    return value


class SessionManager:
    """In-memory datasets and sessions; safe for concurrent sessions."""

    def __init__(self):
        self._datasets: dict[str, Dataset] = {}
        self._sessions: dict[str, Session] = {}
        self._dataset_ids = itertools.count(1)
        self._session_ids = itertools.count(1)
        self._registry_lock = threading.Lock()

    def add_dataset(self, ds: Dataset) -> str:
        with self._registry_lock:
            dataset_id = f"d{next(self._dataset_ids)}"
            self._datasets[dataset_id] = ds
        return dataset_id

    def get_dataset(self, dataset_id: str) -> Dataset:
        try:
            return self._datasets[dataset_id]
        except KeyError:
            raise SessionError(f"unknown dataset {dataset_id!r}",
                               status=404) from None

    def create_session(self, dataset_id: str) -> Session:
        ds = self.get_dataset(dataset_id)
        with self._registry_lock:
            session_id = f"s{next(self._session_ids)}"
            session = Session(session_id=session_id, dataset_id=dataset_id,
                              dataset=ds)
            self._sessions[session_id] = session
        return session

    def get_session(self, session_id: str) -> Session:
        try:
            return self._sessions[session_id]
        except KeyError:
            raise SessionError(f"unknown session {session_id!r}",
                               status=404) from None

    def dispatch(self, session_id: str, command: dict):
        """Apply one command. Returns ("state", summary), ("frame", bytes),
        or ("report", dict). Failed commands change nothing."""
        session = self.get_session(session_id)
        if not isinstance(command, dict) or "type" not in command:
            raise SessionError("command must be an object with a 'type' key")
        with session.lock:
            return self._apply(session, command)

    # Handlers compute a complete candidate state before mutating the
    # session, so an exception anywhere leaves it untouched.
    def _apply(self, session: Session, command: dict):
        kind = command["type"]
        if kind == "load_dataset":
            dataset_id = _require(command, "dataset_id")
            ds = self.get_dataset(dataset_id)
            session.dataset_id = dataset_id
            session.dataset = ds
            session.assignment = None
            session.filter_matrix = None
            session.projected = None
            session.view = ViewState()
            session.slab = SlabConfig()
            session.camera = CameraConfig()
            session.state_version += 1
            return "state", session.summary()

        if kind == "set_assignment":
            spec = _require(command, "assignment")
            try:
                asgn = DimensionAssignment.from_spec(spec, session.dataset.names)
            except AssignmentError as exc:
                raise SessionError(str(exc)) from None
            violations = validate(asgn, session.dataset.n_dims)
            if violations:
                raise SessionError(
                    "invalid assignment",
                    violations=[{"message": v.message, "dims": list(v.dims)}
                                for v in violations])
            try:
                fm, projected = project(session.dataset, asgn)
            except ProjectionError as exc:
                raise SessionError(str(exc)) from None
            session.assignment = asgn
            session.filter_matrix = fm
            session.projected = projected
            session.state_version += 1
            return "state", session.summary()

        if kind == "rotate":
            plane_name = _require(command, "plane")
            try:
                plane = RotationPlane[str(plane_name).upper()]
            except KeyError:
                raise SessionError(
                    f"unknown rotation plane {plane_name!r}") from None
            angle = _as_float(_require(command, "angle"), "angle")
            new_view = rotate(session.view, plane, angle)
            session.view = new_view
            session.state_version += 1
            return "state", session.summary()

        if kind == "translate":
            delta = _require(command, "delta")
            try:
                delta = [_as_float(x, "delta component") for x in delta]
            except TypeError:
                raise SessionError("delta must be a list of 4 numbers") from None
            if len(delta) != 4:
                raise SessionError("delta must have exactly 4 components")
            session.view = translate(session.view, delta)
            session.state_version += 1
            return "state", session.summary()

        if kind == "set_slab":
            threshold = _as_float(_require(command, "threshold"), "threshold")
            mode = session.slab.mode
            if "mode" in command:
                try:
                    mode = SlabMode(command["mode"])
                except ValueError:
                    raise SessionError(
                        f"unknown slab mode {command['mode']!r}") from None
            try:
                slab = SlabConfig(threshold=threshold, mode=mode)
            except ValueError as exc:
                raise SessionError(str(exc)) from None
            session.slab = slab
            session.state_version += 1
            return "state", session.summary()

        if kind == "set_camera":
            distance = _as_float(_require(command, "d"), "camera distance")
            near = session.camera.near_epsilon
            if "near_epsilon" in command:
                near = _as_float(command["near_epsilon"], "near epsilon")
            try:
                camera = CameraConfig(distance=distance, near_epsilon=near)
            except ValueError as exc:
                raise SessionError(str(exc)) from None
            session.camera = camera
            session.state_version += 1
            return "state", session.summary()

        if kind == "request_frame":
            return "frame", self._build_frame(session)

        if kind == "get_pca_report":
            if session.assignment is None:
                raise SessionError("assignment required")
            scope = command.get("scope", "anonymous")
            try:
                report = pca_report(session.dataset, session.assignment, scope)
            except ProjectionError as exc:
                raise SessionError(str(exc)) from None
            return "report", report.to_dict()

        raise SessionError(f"unknown command type {kind!r}")

    def _build_frame(self, session: Session) -> bytes:
        if session.assignment is None or session.projected is None:
            raise SessionError("assignment required")
        session.frame_seq += 1
        frame = build_frame(session.projected, session.view, session.slab,
                            session.camera, labels=session.dataset.labels,
                            seq=session.frame_seq,
                            sigma_range=session.sigma_range)
        return serialize_frame(frame)


def create_app(manager: Optional[SessionManager] = None,
               push_rate: float = DEFAULT_PUSH_RATE,
               frontend_dir=None):
    """Assemble the FastAPI app around a session manager."""
    from fastapi import FastAPI, Request, WebSocket
    from fastapi.middleware.cors import CORSMiddleware
    from fastapi.responses import JSONResponse, Response
    from starlette.websockets import WebSocketDisconnect

    manager = manager or SessionManager()
    app = FastAPI(title="ndswarm", version="0.1.0")
    app.state.manager = manager
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])

    def _error(exc: SessionError):
        payload = {"error": str(exc)}
        if exc.violations:
            payload["violations"] = exc.violations
        return JSONResponse(payload, status_code=exc.status)

    @app.post("/datasets")
    async def upload_dataset(request: Request):
        body = await request.body()
        params = request.query_params
        delimiter = params.get("delimiter", ",")
        label_column = params.get("label_column")
        missing_policy = params.get("missing_policy", "drop-point")
        try:
            if params.get("path"):
                ds = load_csv(params["path"], delimiter=delimiter,
                              label_column=label_column,
                              missing_policy=missing_policy)
            else:
                if not body:
                    raise DatasetError("empty upload: send CSV bytes or ?path=")
                import os
                import tempfile
                fd, tmp_path = tempfile.mkstemp(suffix=".csv")
                try:
                    with os.fdopen(fd, "w", encoding="utf-8") as tmp:
                        tmp.write(body.decode("utf-8"))
                    ds = load_csv(tmp_path, delimiter=delimiter,
                                  label_column=label_column,
                                  missing_policy=missing_policy)
                finally:
                    os.unlink(tmp_path)
        except (DatasetError, UnicodeDecodeError) as exc:
            return JSONResponse({"error": str(exc)}, status_code=400)
        dataset_id = manager.add_dataset(ds)
        return {"dataset_id": dataset_id, "n_dims": ds.n_dims,
                "n_points": ds.n_points, "names": list(ds.names),
                "has_labels": ds.labels is not None}

    @app.post("/sessions")
    async def create_session(payload: dict):
        try:
            session = manager.create_session(payload.get("dataset_id", ""))
        except SessionError as exc:
            return _error(exc)
        return session.summary()

    @app.get("/sessions/{session_id}")
    async def get_session(session_id: str):
        try:
            return manager.get_session(session_id).summary()
        except SessionError as exc:
            return _error(exc)

    @app.post("/sessions/{session_id}/command")
    async def post_command(session_id: str, command: dict):
        try:
            kind, result = manager.dispatch(session_id, command)
        except SessionError as exc:
            return _error(exc)
        if kind == "frame":
            return Response(content=result, media_type="application/json")
        return {"result": kind, **({"report": result} if kind == "report"
                                   else result)}

    @app.get("/sessions/{session_id}/frame")
    async def get_frame(session_id: str):
        try:
            kind, result = manager.dispatch(session_id,
                                            {"type": "request_frame"})
        except SessionError as exc:
            return _error(exc)
        return Response(content=result, media_type="application/json")

    @app.get("/sessions/{session_id}/pca-report")
    async def get_report(session_id: str, scope: str = "anonymous"):
        try:
            kind, result = manager.dispatch(
                session_id, {"type": "get_pca_report", "scope": scope})
        except SessionError as exc:
            return _error(exc)
        return result

    @app.websocket("/sessions/{session_id}/stream")
    async def stream(websocket: WebSocket, session_id: str):
        try:
            session = manager.get_session(session_id)
        except SessionError:
            await websocket.close(code=1008)
            return
        await websocket.accept()
        interval = 1.0 / push_rate
        sent_version = None
        try:
            while True:
                if session.assignment is not None \
                        and session.state_version != sent_version:
                    sent_version = session.state_version
                    _, frame = manager.dispatch(session_id,
                                                {"type": "request_frame"})
                    await websocket.send_text(frame.decode("utf-8"))
                await asyncio.sleep(interval)
        except WebSocketDisconnect:
            pass

    if frontend_dir is not None:
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=frontend_dir, html=True),
                  name="frontend")

    return app
