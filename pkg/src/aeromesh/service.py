"""Local HTTP scene service consumed by the orbit-studio UI.

Endpoints:
    GET  /health  ->  {"status": "ok", "revision": N}
    GET  /scene   ->  the current SceneDocument (JSON)
    POST /scene   ->  replace the scenario (wire model, radians/SI) and
                      receive the recomputed document

POSTs are serialized through a single lock (single-flight recompute);
GETs read an immutable snapshot.  The document revision increases by
one per accepted POST.  Binds localhost by default: this is a design
exploration tool, not a production daemon.
"""

from __future__ import annotations

import json
import threading
from dataclasses import replace
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .errors import ScenarioError
from .scenario_io import ScenarioFile, scenario_file_from_wire
from .scene import build_scene_document, scene_json_bytes

_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".mjs": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".json": "application/json",
    ".svg": "image/svg+xml",
    ".map": "application/json",
}


class SceneState:
    """Current scenario + rendered document bytes, swapped atomically."""

    def __init__(self, sf: ScenarioFile):
        self._write_lock = threading.Lock()
        self._snapshot: tuple[int, bytes] = (0, scene_json_bytes(build_scene_document(sf, 0)))
        self._scenario_file = sf

    @property
    def snapshot(self) -> tuple[int, bytes]:
        return self._snapshot

    def replace_scenario(self, body: dict) -> bytes:
        """Validate, recompute, and publish a new document (serialized)."""
        with self._write_lock:
            incoming = scenario_file_from_wire(body)
            # The corridor/routing blocks are not editable through the
            # wire; carry the originals forward.
            sf = replace(
                incoming,
                corridor=self._scenario_file.corridor,
                routing=self._scenario_file.routing,
            )
            revision = self._snapshot[0] + 1
            payload = scene_json_bytes(build_scene_document(sf, revision))
            self._scenario_file = sf
            self._snapshot = (revision, payload)
            return payload


def _make_handler(state: SceneState, ui_dir: str | None):
    ui_root = Path(ui_dir).resolve() if ui_dir else None

    class Handler(BaseHTTPRequestHandler):
        server_version = "aeromesh-scene"

        def log_message(self, fmt, *args):  # quiet by default
            pass

        def _send(self, status: int, payload: bytes, content_type: str = "application/json"):
            self.send_response(status)
            self.send_header("Content-Type", content_type)
            self.send_header("Content-Length", str(len(payload)))
            # The UI is typically served from another local origin.
            self.send_header("Access-Control-Allow-Origin", "*")
            self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
            self.send_header("Access-Control-Allow-Headers", "Content-Type")
            self.end_headers()
            self.wfile.write(payload)

        def _send_json(self, status: int, obj: dict):
            self._send(status, (json.dumps(obj, sort_keys=True) + "\n").encode("utf-8"))

        def do_OPTIONS(self):
            self._send(204, b"")

        def do_GET(self):
            if self.path == "/health":
                self._send_json(200, {"status": "ok", "revision": state.snapshot[0]})
                return
            if self.path == "/scene":
                self._send(200, state.snapshot[1])
                return
            if ui_root is not None:
                self._serve_static()
                return
            self._send_json(404, {"error": "not found"})

        def _serve_static(self):
            rel = self.path.lstrip("/") or "index.html"
            target = (ui_root / rel).resolve()
            if not str(target).startswith(str(ui_root)) or not target.is_file():
                self._send_json(404, {"error": "not found"})
                return
            ctype = _CONTENT_TYPES.get(target.suffix, "application/octet-stream")
            self._send(200, target.read_bytes(), ctype)

        def do_POST(self):
            if self.path != "/scene":
                self._send_json(404, {"error": "not found"})
                return
            try:
                length = int(self.headers.get("Content-Length", "0"))
                body = json.loads(self.rfile.read(length) or b"{}")
            except (ValueError, json.JSONDecodeError):
                self._send_json(400, {"error": "invalid JSON body", "field": ""})
                return
            try:
                payload = state.replace_scenario(body)
            except ScenarioError as e:
                self._send_json(400, {"error": str(e), "field": e.field or ""})
                return
            self._send(200, payload)

    return Handler


def make_server(
    sf: ScenarioFile, host: str = "127.0.0.1", port: int = 0, ui_dir: str | None = None
) -> ThreadingHTTPServer:
    """Bound but not yet serving; caller drives serve_forever()."""
    state = SceneState(sf)
    server = ThreadingHTTPServer((host, port), _make_handler(state, ui_dir))
    server.scene_state = state  # type: ignore[attr-defined]
    return server


def serve_scene(
    sf: ScenarioFile, host: str = "127.0.0.1", port: int = 8780, ui_dir: str | None = None
) -> None:
    server = make_server(sf, host, port, ui_dir)
    print(f"scene service on http://{host}:{server.server_address[1]}/scene")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
