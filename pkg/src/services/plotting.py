"""
SVG rendering of Newton polygons and extremal diagrams.

Every polynomial gets one panel with the exponent on the horizontal axis
and the height on the vertical one. With a witness the panel also shows
the lifted witness points, the extremal chain E(f_j) and the common
envelope ℰ. Exact values are rounded only when handed to matplotlib.

Artists carry SVG ids (``newton-<j>``, ``lifted-<j>``, ``E-chain-<j>``,
``envelope-<j>``) so the output can be inspected structurally.
"""

import io
import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
from matplotlib.figure import Figure  # noqa: E402

from src.tropical.newton import newton_polygon  # noqa: E402
from src.tropical.nullstellensatz import ExtremalDiagram, IntersectionPolygon  # noqa: E402
from src.tropical.polynomial import TropPoly, format_poly  # noqa: E402
from src.utils.config import settings  # noqa: E402

logger = logging.getLogger(__name__)

matplotlib.rcParams["svg.hashsalt"] = "tropical-diagrams"


def _coords(points: Sequence[Tuple[Fraction, Fraction]], decimals: int) -> Tuple[List[float], List[float]]:
    """(height, exponent) points as exponent/height float lists."""
    xs = [round(float(p[1]), decimals) for p in points]
    ys = [round(float(p[0]), decimals) for p in points]
    return xs, ys


def render_svg(
    system: Sequence[TropPoly],
    diagrams: Optional[Sequence[ExtremalDiagram]] = None,
    envelope: Optional[IntersectionPolygon] = None,
    decimals: Optional[int] = None,
) -> str:
    """
    Draw the system as an SVG document.

    Args:
        system: Univariate polynomials
        diagrams: Extremal diagrams for a witness, one per polynomial
        envelope: The envelope ℰ of the diagrams

    Returns:
        The SVG text
    """
    decimals = settings.SVG_DECIMALS if decimals is None else decimals
    figure = Figure(figsize=(6, 3.2 * len(system)))
    axes_list = figure.subplots(len(system), 1, squeeze=False)[:, 0]

    for j, (f, axes) in enumerate(zip(system, axes_list), start=1):
        plotted = [(coeff, Fraction(k)) for (k,), coeff in f.items()]
        xs, ys = _coords(plotted, decimals)
        axes.scatter(xs, ys, s=12, color="grey", zorder=2).set_gid(f"terms-{j}")

        polygon = newton_polygon(f)
        hull = [(h, Fraction(k)) for k, h in polygon.vertices]
        xs, ys = _coords(hull, decimals)
        (line,) = axes.plot(xs, ys, color="black", linewidth=1.2, zorder=3)
        line.set_gid(f"newton-{j}")

        if diagrams is not None:
            d = diagrams[j - 1]
            xs, ys = _coords(d.lifted, decimals)
            axes.scatter(xs, ys, s=6, color="tab:blue", zorder=1).set_gid(f"lifted-{j}")
            xs, ys = _coords(d.chain, decimals)
            (chain,) = axes.plot(xs, ys, color="tab:red", linewidth=1.5, marker="o", markersize=3, zorder=4)
            chain.set_gid(f"E-chain-{j}")
            if envelope is not None:
                xs, ys = _coords(envelope.vertices, decimals)
                (top,) = axes.plot(xs, ys, color="tab:green", linestyle="--", linewidth=1, zorder=5)
                top.set_gid(f"envelope-{j}")

        axes.set_title(f"f_{j} = {format_poly(f)}", fontsize=9)
        axes.set_xlabel("exponent")
        axes.set_ylabel("height")

    figure.tight_layout()
    buffer = io.StringIO()
    figure.savefig(buffer, format="svg", metadata={"Date": None})
    logger.debug(f"Rendered {len(system)} panels", extra={"with_witness": diagrams is not None})
    return buffer.getvalue()
