"""Access to the bundled relay fixtures (corpus, lexicon, ontology, config)."""

from __future__ import annotations

from importlib import resources
from pathlib import Path


def data_path(*parts: str) -> Path:
    """Path to a bundled data file or directory."""
    return Path(str(resources.files("ontoterm").joinpath("data", *parts)))
