"""Bundled protocol models with their expected verdicts."""

# standard library
import importlib.resources
import tomllib

from dataclasses import dataclass

# typing
from typing import Optional

# application configuration
from youwol.sspa.configuration import OracleBounds

# application model
from youwol.sspa.parser import Model, parse_spec

MANIFEST = "manifest.toml"
MODELS_DIR = "models"


@dataclass(frozen=True)
class CorpusEntry:
    """A corpus model, the verdict expected for each gated query, and the bounds of its oracle cross-check.

    Reconstructions are encodings written from a protocol narrative rather than from a published rule set.
    Exhaustive entries are small enough for the ground oracle to explore completely, so its answer is compared with
    every verdict, Secure ones included.
    """

    name: str
    file: str
    expected: dict[str, str]
    description: str = ""
    bounds: Optional[OracleBounds] = None
    tree_labels: tuple[str, ...] = ()
    reconstruction: bool = False
    exhaustive: bool = False

    def __post_init__(self) -> None:
        unknown = set(self.expected.values()) - {"Secure", "Attack", "Unknown"}
        if unknown:
            raise ValueError(f"Corpus entry '{self.name}' expects unknown verdicts {sorted(unknown)}")

    def text(self) -> str:
        return (importlib.resources.files(__package__) / MODELS_DIR / self.file).read_text(encoding="utf-8")

    def model(self) -> Model:
        return parse_spec(self.text())

    @property
    def queries(self) -> tuple[str, ...]:
        return tuple(self.expected)


def _entry(raw: dict) -> CorpusEntry:
    bounds = OracleBounds(**raw["oracle"]) if "oracle" in raw else None
    return CorpusEntry(
        name=raw["name"],
        file=raw["file"],
        expected=dict(raw["expected"]),
        description=raw.get("description", ""),
        bounds=bounds,
        tree_labels=tuple(raw.get("tree_labels", ())),
        reconstruction=raw.get("reconstruction", False),
        exhaustive=raw.get("exhaustive", False),
    )


def corpus_manifest() -> list[CorpusEntry]:
    """Read the bundled manifest.

    Returns:
        list[CorpusEntry]: the entries, in manifest order
    """
    text = (importlib.resources.files(__package__) / MANIFEST).read_text(encoding="utf-8")
    return [_entry(raw) for raw in tomllib.loads(text)["model"]]


def corpus_entry(name: str) -> CorpusEntry:
    """The entry of a model by name.

    Raises:
        KeyError: if the manifest has no such model
    """
    for entry in corpus_manifest():
        if entry.name == name:
            return entry
    raise KeyError(f"No corpus model named '{name}'")


__all__ = ["CorpusEntry", "corpus_entry", "corpus_manifest"]
