"""Bundled presentation fixtures (loadable offline from a fresh checkout)."""
from __future__ import annotations

from importlib import resources

from .fpgroup import Presentation
from .presfile import parse_presentation, render_presentation

FIXTURE_NAMES = ("p6", "p4", "tetrahedral", "figure8")


def fixture_text(name: str) -> str:
    if name not in FIXTURE_NAMES:
        raise KeyError(f"no bundled fixture {name!r}; have {FIXTURE_NAMES}")
    return (resources.files("orbiforge") / "data" / f"{name}.txt").read_text()


def load_fixture(name: str) -> Presentation:
    return parse_presentation(fixture_text(name))


def model_presentation_text(name: str) -> str:
    """Presentation-file text for any of the seventeen wallpaper models."""
    from .wallpaper import model

    return render_presentation(model(name).presentation)
