"""Dataset container, the embedded reference dataset, and file I/O.

Data files are plain UTF-8 text: one observation per line, blank lines
and ``#`` comments ignored, decimal point only.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

__all__ = ["DataError", "DataSource", "Dataset", "ELECTRON_MOBILITY",
           "embedded_dataset", "load_dataset", "write_dataset"]


class DataError(ValueError):
    """A dataset could not be read or fails validation."""


class DataSource(enum.Enum):
    EMBEDDED = "embedded"
    FILE = "file"


@dataclass(frozen=True)
class Dataset:
    """A named collection of positive observations."""

    name: str
    values: tuple[float, ...]
    source: DataSource

    def __post_init__(self) -> None:
        if len(self.values) == 0:
            raise DataError(f"dataset {self.name!r} is empty")
        for v in self.values:
            if not (v > 0.0):
                raise DataError(
                    f"dataset {self.name!r} contains a nonpositive value: {v}"
                )


# Minority electron mobility for P-type Ga(1-x)Al(x)As at mole fraction
# 0.25 (Bennett 2000, NIST Semiconductor Electronics Division); 21
# observations.
ELECTRON_MOBILITY: tuple[float, ...] = (
    3.051, 2.779, 2.604, 2.371, 2.214, 2.045, 1.715, 1.525, 1.296, 1.154,
    1.016, 0.7948, 0.7007, 0.6292, 0.6175, 0.6449, 0.8881, 1.115, 1.397,
    1.506, 1.528,
)


def embedded_dataset() -> Dataset:
    """The built-in 21-point electron-mobility dataset."""
    return Dataset(name="electron-mobility-0.25", values=ELECTRON_MOBILITY,
                   source=DataSource.EMBEDDED)


def load_dataset(path: str | Path) -> Dataset:
    """Read observations from ``path``; raises DataError on any problem."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read dataset file {path}: {exc}") from exc
    values: list[float] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise DataError(
                f"{path}:{lineno}: not a number: {line!r}"
            ) from None
    if not values:
        raise DataError(f"dataset file {path} contains no observations")
    return Dataset(name=path.name, values=tuple(values), source=DataSource.FILE)


def write_dataset(path: str | Path, values: Sequence[float],
                  name: str = "") -> None:
    """Write observations one per line at full precision (repr)."""
    path = Path(path)
    lines = []
    if name:
        lines.append(f"# {name}")
    lines.extend(repr(float(v)) for v in values)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
