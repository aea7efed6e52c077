"""Text formats: 12-significant-digit floats and tab-separated input files.

Distribution files are UTF-8, one ``label<TAB>probability`` per line; blank
lines and lines starting with ``#`` are ignored.  Codeword-length files use
the same layout with a positive integer in the second column.
"""

from __future__ import annotations

import math
import os

from .config import DEFAULT_TOLS, Tolerances
from .dist import FiniteDist, make_dist
from .errors import DistFileError

__all__ = ["fmt_g12", "parse_dist_text", "read_dist_file", "parse_lengths_text", "read_lengths_file"]


def fmt_g12(v: float) -> str:
    """Render a float at 12 significant digits; infinities as 'inf'/'-inf'."""
    v = float(v)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.12g}"


def _rows(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise DistFileError(
                f"expected 'label<TAB>value', got {raw!r}", line=lineno
            )
        yield lineno, parts[0], parts[1]


def parse_dist_text(text: str, tols: Tolerances = DEFAULT_TOLS) -> FiniteDist:
    labels, mass = [], []
    for lineno, label, value in _rows(text):
        try:
            mass.append(float(value))
        except ValueError:
            raise DistFileError(f"bad probability {value!r}", line=lineno) from None
        labels.append(label)
    if not labels:
        raise DistFileError("no distribution entries found", line=1)
    return make_dist(labels, mass, tols=tols)


def read_dist_file(path: str | os.PathLike, tols: Tolerances = DEFAULT_TOLS) -> FiniteDist:
    with open(path, encoding="utf-8") as fh:
        return parse_dist_text(fh.read(), tols=tols)


def parse_lengths_text(text: str) -> dict[str, int]:
    lengths: dict[str, int] = {}
    for lineno, label, value in _rows(text):
        try:
            n = int(value)
        except ValueError:
            raise DistFileError(f"bad length {value!r}", line=lineno) from None
        if n < 1:
            raise DistFileError(f"length must be >= 1, got {n}", line=lineno)
        if label in lengths:
            raise DistFileError(f"duplicate label {label!r}", line=lineno)
        lengths[label] = n
    if not lengths:
        raise DistFileError("no length entries found", line=1)
    return lengths


def read_lengths_file(path: str | os.PathLike) -> dict[str, int]:
    with open(path, encoding="utf-8") as fh:
        return parse_lengths_text(fh.read())
