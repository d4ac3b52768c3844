"""Bundled example scenes, installed as package data."""

from importlib import resources
from pathlib import Path

SCENE_NAMES = ("typeA", "typeB", "typeC")


def scene_path(name: str) -> Path:
    """Filesystem path of a bundled scene file."""
    if name not in SCENE_NAMES:
        raise KeyError(f"no bundled scene {name!r}; choose from {SCENE_NAMES}")
    return Path(str(resources.files(__package__) / f"{name}.json"))
