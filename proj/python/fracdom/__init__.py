"""Escape-time fractal rendering, similarity transforms and dominant-term analysis."""

import json as _json

from ._core import (
    DomainError,
    FracdomError,
    IoError,
    NotExpandable,
    ParseError,
    analyze_tg,
    disassemble,
    evaluate,
    format,
    palettes,
    predict,
    render,
    render_png,
    series,
    theta_bound,
    transform,
    verify_rotation,
    verify_scaling,
    verify_translation,
)


def scene(expr, center=(-0.5, 0.0), scale=4.0 / 512, width=512, height=512,
          log_k=0.6931471805599453, max_iter=500, palette="gray256"):
    """Scene document as a dict, in the layout render_png and the CLI read."""
    return {"expr": expr, "center": list(center), "scale": scale, "width": width,
            "height": height, "log_k": log_k, "max_iter": max_iter, "palette": palette}


def render_scene_png(doc):
    return render_png(_json.dumps(doc))


__all__ = [name for name in dir() if not name.startswith("_")]
