"""Wire-faithful re-creation of the logger's HTTP file service and a
conforming ground-station client.

The server reproduces the device behaviour literally: requests are routed
by ``indexOf("air") > 5`` on the accumulated request text (so a plain
``GET /air.csv`` request reaches the ground handler — "air" sits at index
5), the response header block is exactly four CRLF lines plus a blank
line, bodies go out in 1760-byte chunks, and serving ground.csv deletes
both log files afterwards.  The client therefore requests
``/download/air.csv`` so the air file routes correctly, and always syncs
air before ground.
"""

from __future__ import annotations

import enum
import socket
import threading
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path

from .firmware import AIR_LOG, GROUND_LOG, SdCardImage

CHUNK_SIZE = 1760
REQUEST_LIMIT = 8192  # bytes; the device has no bound, this one stops runaway buffering
AIR_REQUEST_PATH = "/download/air.csv"
GROUND_REQUEST_PATH = "/ground.csv"


class RouteTarget(enum.Enum):
    AIR = "air"
    GROUND = "ground"


class TransportError(ConnectionError):
    """Could not reach or keep a connection to the file server."""


class ProtocolError(RuntimeError):
    """The server answered, but not with a usable 200 response."""


def route(request_text: str) -> RouteTarget:
    """Route a request exactly as the device does.

    AIR if and only if the first occurrence of "air" in the text sits at
    an index strictly greater than 5; everything else (including a missing
    "air") is GROUND.
    """
    return RouteTarget.AIR if request_text.find("air") > 5 else RouteTarget.GROUND


@dataclass(frozen=True)
class HttpFileResponse:
    status_line: str
    headers: tuple[tuple[str, str], ...]
    body: bytes

    def wire_writes(self) -> list[bytes]:
        """The exact write sequence: one per header line, blank line, then chunks."""
        writes = [(self.status_line + "\r\n").encode("ascii")]
        writes += [f"{k}: {v}\r\n".encode("ascii") for k, v in self.headers]
        writes.append(b"\r\n")
        for offset in range(0, len(self.body), CHUNK_SIZE):
            writes.append(self.body[offset:offset + CHUNK_SIZE])
        return writes

    def to_bytes(self) -> bytes:
        return b"".join(self.wire_writes())


def serve_file(name: str, sd: SdCardImage) -> HttpFileResponse | None:
    """Build the response for a log file and apply the device side effects.

    Returns None when the file is absent (the connection is then dropped
    with nothing written).  Serving ground.csv removes BOTH log files from
    the card; serving air.csv leaves everything in place.
    """
    data = sd.read(name)
    if data is None:
        return None
    response = HttpFileResponse(
        status_line="HTTP/1.1 200 OK",
        headers=(
            ("Content-Type", "text/csv"),
            ("Content-Disposition", f'attachment; filename="{name}"'),
            ("Connection", "close"),
        ),
        body=data,
    )
    if name == GROUND_LOG:
        sd.remove(AIR_LOG)
        sd.remove(GROUND_LOG)
    return response


def handle_connection(conn, sd: SdCardImage, on_ground_served=None) -> RouteTarget | None:
    """Serve one connection on any socket-like transport.

    The transport needs recv/sendall/close.  Requests are read up to the
    first LF (or the 8 KiB bound); writes happen exactly one sendall per
    header line and per 1760-byte body chunk, so a counting transport can
    observe the chunking.
    """
    try:
        buffer = b""
        while b"\n" not in buffer and len(buffer) < REQUEST_LIMIT:
            chunk = conn.recv(1024)
            if not chunk:
                break
            buffer += chunk
        if b"\n" not in buffer:
            return None
        first_line = buffer.split(b"\n", 1)[0].decode("latin-1")
        target = route(first_line)
        name = AIR_LOG if target is RouteTarget.AIR else GROUND_LOG
        response = serve_file(name, sd)
        if response is None:
            return target
        for piece in response.wire_writes():
            conn.sendall(piece)
        if name == GROUND_LOG and on_ground_served is not None:
            on_ground_served()
        return target
    finally:
        conn.close()


class LogServer:
    """Sequential accept-serve loop over TCP; one connection at a time."""

    def __init__(self, sd: SdCardImage, host: str = "127.0.0.1", port: int = 0,
                 on_ground_served=None):
        self.sd = sd
        self.on_ground_served = on_ground_served
        self._sock = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        self._sock.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        self._sock.bind((host, port))
        self._sock.listen(1)
        self._sock.settimeout(0.2)
        self.host, self.port = self._sock.getsockname()[:2]

    def serve_forever(self, stop: threading.Event | None = None) -> None:
        while stop is None or not stop.is_set():
            try:
                conn, _ = self._sock.accept()
            except socket.timeout:
                continue
            except OSError:
                break
            handle_connection(conn, self.sd, self.on_ground_served)

    def close(self) -> None:
        self._sock.close()

    def __enter__(self) -> "LogServer":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def fetch(host: str, port: int, which: RouteTarget, timeout: float = 10.0) -> bytes:
    """Fetch one log file; returns the body bytes.

    Raises TransportError when the server is unreachable and ProtocolError
    when the response lacks a 200 status + header block (which is what a
    deleted file looks like on the wire).
    """
    path = AIR_REQUEST_PATH if which is RouteTarget.AIR else GROUND_REQUEST_PATH
    request = f"GET {path} HTTP/1.1\r\n\r\n".encode("ascii")
    try:
        conn = socket.create_connection((host, port), timeout=timeout)
    except OSError as exc:
        raise TransportError(f"cannot connect to {host}:{port}: {exc}") from exc
    try:
        conn.sendall(request)
        conn.shutdown(socket.SHUT_WR)
        data = b""
        while True:
            try:
                chunk = conn.recv(4096)
            except socket.timeout as exc:
                raise TransportError("timed out waiting for the response") from exc
            if not chunk:
                break
            data += chunk
    finally:
        conn.close()
    if b"\r\n\r\n" not in data:
        raise ProtocolError("connection closed without a response header block")
    head, body = data.split(b"\r\n\r\n", 1)
    status = head.split(b"\r\n", 1)[0]
    if status != b"HTTP/1.1 200 OK":
        raise ProtocolError(f"unexpected status line {status!r}")
    return body


@dataclass(frozen=True)
class SyncResult:
    air: bytes
    ground: bytes
    fetched_at: datetime


def sync(host: str, port: int, out_dir=None, timeout: float = 10.0) -> SyncResult:
    """Fetch air.csv strictly before ground.csv, then persist both.

    Any failure aborts the sync with nothing written.
    """
    air = fetch(host, port, RouteTarget.AIR, timeout)
    ground = fetch(host, port, RouteTarget.GROUND, timeout)
    result = SyncResult(air=air, ground=ground, fetched_at=datetime.now())
    if out_dir is not None:
        directory = Path(out_dir)
        directory.mkdir(parents=True, exist_ok=True)
        (directory / AIR_LOG).write_bytes(air)
        (directory / GROUND_LOG).write_bytes(ground)
    return result
