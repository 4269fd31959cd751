"""
HCL palettes for the constraint bars, converted through CIELUV (D65)
to sRGB with out-of-gamut channels clipped
"""
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from colormath.color_conversions import convert_color
from colormath.color_objects import LCHuvColor, sRGBColor

from src.app.errors import RenderError

PALETTE_NAMES = {
    1: "rainbow",
    2: "heat",
    3: "terrain",
    4: "sequential",
    5: "diverging",
}


@dataclass(frozen=True)
class Color:
    r: float
    g: float
    b: float
    opacity: float = 1.0

    def __post_init__(self):
        for channel in (self.r, self.g, self.b, self.opacity):
            if not 0.0 <= channel <= 1.0:
                raise RenderError(f"color channel {channel} outside [0, 1]", "INVALID_COLOR")

    @property
    def hex(self) -> str:
        return "#{:02x}{:02x}{:02x}".format(*(int(round(c * 255)) for c in (self.r, self.g, self.b)))

    def rgb(self) -> Tuple[float, float, float]:
        return (self.r, self.g, self.b)


BLACK = Color(0.0, 0.0, 0.0)
GREY = Color(0.55, 0.55, 0.55)
LIGHT_GREY = Color(0.85, 0.85, 0.85)


def hcl_color(hue: float, chroma: float, luminance: float, opacity: float = 1.0) -> Color:
    srgb = convert_color(LCHuvColor(luminance, chroma, hue % 360.0), sRGBColor)
    r, g, b = (min(1.0, max(0.0, float(c))) for c in srgb.get_value_tuple())
    return Color(r, g, b, opacity)


def _ramp(start: float, end: float, count: int) -> np.ndarray:
    if count == 1:
        return np.array([start], dtype=float)
    return np.linspace(start, end, count)


def _hcl_triples(color_type: int, count: int) -> List[Tuple[float, float, float]]:
    if color_type == 1:
        hues = 360.0 * np.arange(count) / count
        return [(h, 50.0, 70.0) for h in hues]
    if color_type == 2:
        return list(zip(_ramp(0, 90, count), _ramp(100, 30, count), _ramp(50, 90, count)))
    if color_type == 3:
        return list(zip(_ramp(130, 0, count), _ramp(80, 0, count), _ramp(60, 95, count)))
    if color_type == 4:
        return [(260.0, c, l) for c, l in zip(_ramp(80, 0, count), _ramp(30, 90, count))]

    # diverging: hue 260 on one side, 0 on the other, neutral in the middle
    positions = _ramp(-1.0, 1.0, count) if count > 1 else np.array([-1.0])
    triples = []
    for t in positions:
        weight = abs(float(t))
        triples.append((260.0 if t < 0 else 0.0, 80.0 * weight, 90.0 - 60.0 * weight))
    return triples


def palette(color_type: int, count: int, alpha: float = 1.0) -> List[Color]:
    """
    count colors from one of the five HCL families

    Args:
        color_type: 1 rainbow, 2 heat, 3 terrain, 4 sequential, 5 diverging
        count: number of colors, >= 1
        alpha: opacity given to every color
    """
    if color_type not in PALETTE_NAMES:
        raise RenderError(f"color type must be between 1 and 5, got {color_type}", "INVALID_COLOR_TYPE", "color_type")
    if count < 1:
        raise RenderError(f"palette size must be at least 1, got {count}", "INVALID_OPTIONS")
    if not 0.0 <= alpha <= 1.0:
        raise RenderError(f"alpha must lie in [0, 1], got {alpha}", "INVALID_OPTIONS", "alpha")
    return [hcl_color(h, c, l, alpha) for h, c, l in _hcl_triples(color_type, count)]
