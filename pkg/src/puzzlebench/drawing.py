"""Resolution-independent draw lists.

Commands are expressed in board coordinates (floats allowed); the rasterizer
scales them onto a square pixel canvas. Colors are indices into PALETTE, a
fixed 16-entry RGB table, so pixel output is identical everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field

# Fixed palette. Index 0 is the canvas background/padding color.
PALETTE: tuple[tuple[int, int, int], ...] = (
    (40, 40, 48),     # 0 background
    (224, 224, 224),  # 1 light gray (tile faces)
    (16, 16, 16),     # 2 near black (outlines, digits)
    (200, 60, 50),    # 3 red
    (70, 160, 70),    # 4 green
    (65, 105, 210),   # 5 blue
    (230, 200, 60),   # 6 yellow
    (160, 80, 180),   # 7 purple
    (235, 140, 50),   # 8 orange
    (80, 200, 200),   # 9 cyan
    (230, 120, 160),  # 10 pink
    (120, 120, 120),  # 11 mid gray (empty cells, frame)
    (255, 255, 255),  # 12 white (highlights, wires)
    (90, 60, 30),     # 13 brown (board backdrop)
    (50, 90, 50),     # 14 dark green (selection tint)
    (250, 250, 160),  # 15 pale yellow (lit cells, cursor ring)
)

# Game color c (1-based) for Flood/Same Game boards.
GAME_COLORS = (3, 4, 5, 6, 7, 8, 9, 10, 1)


def game_color(c: int) -> int:
    return GAME_COLORS[(c - 1) % len(GAME_COLORS)]


@dataclass(frozen=True)
class RectFill:
    x: float
    y: float
    w: float
    h: float
    color: int


@dataclass(frozen=True)
class Line:
    x0: float
    y0: float
    x1: float
    y1: float
    color: int
    width: int = 1


@dataclass(frozen=True)
class Circle:
    cx: float
    cy: float
    r: float
    color: int
    fill: bool = True


@dataclass(frozen=True)
class PolyFill:
    points: tuple[tuple[float, float], ...]
    color: int


Command = RectFill | Line | Circle | PolyFill


@dataclass
class DrawList:
    """Board-space command list; width/height set the logical canvas."""

    width: float
    height: float
    commands: list[Command] = field(default_factory=list)

    def rect(self, x, y, w, h, color):
        self.commands.append(RectFill(x, y, w, h, color))

    def line(self, x0, y0, x1, y1, color, width=1):
        self.commands.append(Line(x0, y0, x1, y1, color, width))

    def circle(self, cx, cy, r, color, fill=True):
        self.commands.append(Circle(cx, cy, r, color, fill))

    def poly(self, points, color):
        self.commands.append(PolyFill(tuple(tuple(p) for p in points), color))

    def digits(self, value: int, x: float, y: float, size: float, color: int):
        """Draw a non-negative integer with 7-segment style bars, centered
        in the size x size box whose top-left corner is (x, y)."""
        text = str(value)
        dw = size * 0.38
        gap = size * 0.08
        total = len(text) * dw + (len(text) - 1) * gap
        ox = x + (size - total) / 2.0
        oy = y + size * 0.22
        dh = size * 0.56
        for i, ch in enumerate(text):
            self._digit(int(ch), ox + i * (dw + gap), oy, dw, dh, color)

    # Segment layout: 0 top, 1 top-left, 2 top-right, 3 middle,
    # 4 bottom-left, 5 bottom-right, 6 bottom.
    _SEGMENTS = {
        0: (0, 1, 2, 4, 5, 6),
        1: (2, 5),
        2: (0, 2, 3, 4, 6),
        3: (0, 2, 3, 5, 6),
        4: (1, 2, 3, 5),
        5: (0, 1, 3, 5, 6),
        6: (0, 1, 3, 4, 5, 6),
        7: (0, 2, 5),
        8: (0, 1, 2, 3, 4, 5, 6),
        9: (0, 1, 2, 3, 5, 6),
    }

    def _digit(self, d: int, x: float, y: float, w: float, h: float, color: int):
        t = max(w * 0.18, 0.01)
        half = h / 2.0
        boxes = {
            0: (x, y, w, t),
            1: (x, y, t, half),
            2: (x + w - t, y, t, half),
            3: (x, y + half - t / 2, w, t),
            4: (x, y + half, t, half),
            5: (x + w - t, y + half, t, half),
            6: (x, y + h - t, w, t),
        }
        for seg in self._SEGMENTS[d]:
            self.rect(*boxes[seg], color)
