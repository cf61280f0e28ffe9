"""Software rasterizer: DrawList -> channel-first RGB uint8 tensor.

Board coordinates are scaled uniformly to fit the square canvas and
centered; leftover bands keep the background color. Fills are scanline
based, lines use integer Bresenham stepping, circles the midpoint walk.
No anti-aliasing, no text, no platform rendering: output is a pure
function of (DrawList, size).
"""

from __future__ import annotations

import struct
import zlib

import numpy as np

from .drawing import Circle, DrawList, Line, PALETTE, PolyFill, RectFill

MIN_SIZE = 16


class CanvasTooSmall(ValueError):
    pass


def rasterize(drawlist: DrawList, pixel_size: int = 128) -> np.ndarray:
    """Render to a (3, S, S) uint8 array."""
    if pixel_size < MIN_SIZE:
        raise CanvasTooSmall(f"pixel_size must be >= {MIN_SIZE}")
    s = pixel_size
    frame = np.empty((s, s, 3), dtype=np.uint8)
    frame[:, :] = PALETTE[0]

    bw = max(drawlist.width, 1e-9)
    bh = max(drawlist.height, 1e-9)
    scale = min(s / bw, s / bh)
    ox = (s - bw * scale) / 2.0
    oy = (s - bh * scale) / 2.0

    def px(x: float) -> float:
        return ox + x * scale

    def py(y: float) -> float:
        return oy + y * scale

    for cmd in drawlist.commands:
        color = PALETTE[cmd.color]
        if isinstance(cmd, RectFill):
            x0 = int(round(px(cmd.x)))
            y0 = int(round(py(cmd.y)))
            x1 = int(round(px(cmd.x + cmd.w)))
            y1 = int(round(py(cmd.y + cmd.h)))
            x0, x1 = max(x0, 0), min(max(x1, x0 + 1), s)
            y0, y1 = max(y0, 0), min(max(y1, y0 + 1), s)
            if x0 < s and y0 < s:
                frame[y0:y1, x0:x1] = color
        elif isinstance(cmd, Line):
            _line(frame, px(cmd.x0), py(cmd.y0), px(cmd.x1), py(cmd.y1), color, cmd.width)
        elif isinstance(cmd, Circle):
            _circle(frame, px(cmd.cx), py(cmd.cy), cmd.r * scale, color, cmd.fill)
        elif isinstance(cmd, PolyFill):
            pts = [(px(x), py(y)) for x, y in cmd.points]
            _poly_fill(frame, pts, color)
    return np.ascontiguousarray(frame.transpose(2, 0, 1))


def _plot(frame: np.ndarray, x: int, y: int, color, width: int) -> None:
    s = frame.shape[0]
    if width <= 1:
        if 0 <= x < s and 0 <= y < s:
            frame[y, x] = color
        return
    r = width // 2
    x0, x1 = max(x - r, 0), min(x + r + 1, s)
    y0, y1 = max(y - r, 0), min(y + r + 1, s)
    if x0 < x1 and y0 < y1:
        frame[y0:y1, x0:x1] = color


def _line(frame, fx0, fy0, fx1, fy1, color, width) -> None:
    x0, y0, x1, y1 = (int(round(v)) for v in (fx0, fy0, fx1, fy1))
    dx, dy = abs(x1 - x0), abs(y1 - y0)
    sx = 1 if x0 < x1 else -1
    sy = 1 if y0 < y1 else -1
    err = dx - dy
    while True:
        _plot(frame, x0, y0, color, width)
        if x0 == x1 and y0 == y1:
            break
        e2 = 2 * err
        if e2 > -dy:
            err -= dy
            x0 += sx
        if e2 < dx:
            err += dx
            y0 += sy


def _circle(frame, fcx, fcy, fr, color, fill) -> None:
    cx, cy, r = int(round(fcx)), int(round(fcy)), int(round(fr))
    if r <= 0:
        _plot(frame, cx, cy, color, 1)
        return
    x, y, err = r, 0, 1 - r
    s = frame.shape[0]

    def span(xa: int, xb: int, yy: int) -> None:
        if 0 <= yy < s:
            xa, xb = max(xa, 0), min(xb + 1, s)
            if xa < xb:
                frame[yy, xa:xb] = color

    while x >= y:
        if fill:
            span(cx - x, cx + x, cy + y)
            span(cx - x, cx + x, cy - y)
            span(cx - y, cx + y, cy + x)
            span(cx - y, cx + y, cy - x)
        else:
            for ptx, pty in (
                (cx + x, cy + y), (cx - x, cy + y), (cx + x, cy - y), (cx - x, cy - y),
                (cx + y, cy + x), (cx - y, cy + x), (cx + y, cy - x), (cx - y, cy - x),
            ):
                _plot(frame, ptx, pty, color, 1)
        y += 1
        if err < 0:
            err += 2 * y + 1
        else:
            x -= 1
            err += 2 * (y - x) + 1


def _poly_fill(frame, pts, color) -> None:
    if len(pts) < 3:
        return
    s = frame.shape[0]
    ys = [p[1] for p in pts]
    y0 = max(int(round(min(ys))), 0)
    y1 = min(int(round(max(ys))), s - 1)
    n = len(pts)
    for yy in range(y0, y1 + 1):
        yc = yy + 0.5
        xs: list[float] = []
        for i in range(n):
            ax, ay = pts[i]
            bx, by = pts[(i + 1) % n]
            if (ay <= yc < by) or (by <= yc < ay):
                t = (yc - ay) / (by - ay)
                xs.append(ax + t * (bx - ax))
        xs.sort()
        for i in range(0, len(xs) - 1, 2):
            xa = max(int(round(xs[i])), 0)
            xb = min(int(round(xs[i + 1])), s)
            if xa < xb:
                frame[yy, xa:xb] = color


def write_png(path: str, tensor: np.ndarray) -> None:
    """Minimal PNG writer for (3, S, S) uint8 tensors (debug export)."""
    _, height, width = tensor.shape
    img = np.ascontiguousarray(tensor.transpose(1, 2, 0))
    raw = b"".join(
        b"\x00" + img[row].tobytes() for row in range(height)
    )

    def chunk(tag: bytes, payload: bytes) -> bytes:
        return (
            struct.pack(">I", len(payload))
            + tag
            + payload
            + struct.pack(">I", zlib.crc32(tag + payload))
        )

    header = struct.pack(">IIBBBBB", width, height, 8, 2, 0, 0, 0)
    with open(path, "wb") as fh:
        fh.write(b"\x89PNG\r\n\x1a\n")
        fh.write(chunk(b"IHDR", header))
        fh.write(chunk(b"IDAT", zlib.compress(raw, 6)))
        fh.write(chunk(b"IEND", b""))
