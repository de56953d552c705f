"""Plain-text algebra files.

A file is a header of ``key: value`` lines followed by the table::

    # comments and blank lines are ignored
    kind: ternar            # or: binary
    n: 2
    name: cyclic-sum-2      # optional
    identity: 0             # optional, binary only; cross-checked on load
    meta.construction: cyclic-sum
    table:
    0 1
    1 0
    1 0
    0 1

The table is the flat row-major array (``n**3`` entries for ``ternar``,
``n**2`` for ``binary``), written ``n`` entries per line.  Metadata keys
are written in sorted order, so saving is deterministic and
save -> load -> save reproduces the file exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .tables import AlgebraError, BinaryTable, Endomap, TernaryTable

__all__ = ["AlgebraFile", "AlgebraFileError", "load", "save", "format_ints", "parse_ints"]

KINDS = ("ternar", "binary")


class AlgebraFileError(AlgebraError):
    pass


def format_ints(xs) -> str:
    return " ".join(str(int(x)) for x in xs)


def parse_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.replace(",", " ").split())
    except ValueError as exc:
        raise AlgebraFileError(f"expected integers, got {text!r}") from exc


@dataclass(frozen=True)
class AlgebraFile:
    kind: str
    n: int
    table: tuple[int, ...]
    name: str | None = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise AlgebraFileError(f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.n < 1:
            raise AlgebraFileError("n must be positive")
        expected = self.n ** (3 if self.kind == "ternar" else 2)
        if len(self.table) != expected:
            raise AlgebraFileError(f"{self.kind} of size {self.n} needs {expected} entries, got {len(self.table)}")
        bad = [v for v in self.table if not (0 <= v < self.n)]
        if bad:
            raise AlgebraFileError(f"table entry {bad[0]} out of range 0..{self.n - 1}")
        for k, v in self.metadata.items():
            if not isinstance(k, str) or not k or any(ch.isspace() for ch in k) or ":" in k:
                raise AlgebraFileError(f"bad metadata key {k!r}")
            if "\n" in str(v) or "#" in str(v) or str(v) != str(v).strip():
                raise AlgebraFileError(f"metadata value for {k!r} has a newline, '#' or outer spaces")
        if self.name is not None and ("\n" in self.name or "#" in self.name):
            raise AlgebraFileError("name contains a newline or '#'")

    @classmethod
    def from_algebra(cls, algebra, name: str | None = None, metadata: dict | None = None) -> "AlgebraFile":
        kind = "ternar" if isinstance(algebra, TernaryTable) else "binary"
        meta = {k: str(v) for k, v in (metadata or {}).items()}
        return cls(kind, algebra.n, algebra.flat(), name, meta)

    def to_algebra(self):
        arr = np.array(self.table, dtype=np.int64)
        if self.kind == "ternar":
            return TernaryTable(arr)
        return BinaryTable(arr)

    def meta_ints(self, key: str) -> tuple[int, ...] | None:
        if key not in self.metadata:
            return None
        return parse_ints(self.metadata[key])

    def meta_endomap(self, key: str) -> Endomap | None:
        xs = self.meta_ints(key)
        return None if xs is None else Endomap(xs)

    def to_text(self) -> str:
        lines = [f"kind: {self.kind}", f"n: {self.n}"]
        if self.name:
            lines.append(f"name: {self.name}")
        if self.kind == "binary":
            ident = self.to_algebra().identity
            if ident is not None:
                lines.append(f"identity: {ident}")
        for k in sorted(self.metadata):
            lines.append(f"meta.{k}: {self.metadata[k]}")
        lines.append("table:")
        for i in range(0, len(self.table), self.n):
            lines.append(format_ints(self.table[i:i + self.n]))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "AlgebraFile":
        header: dict[str, str] = {}
        meta: dict[str, str] = {}
        body: list[str] = []
        in_table = False
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if in_table:
                body.append(line)
                continue
            if ":" not in line:
                raise AlgebraFileError(f"expected 'key: value', got {raw!r}")
            key, value = (s.strip() for s in line.split(":", 1))
            if key == "table":
                in_table = True
                if value:
                    body.append(value)
            elif key.startswith("meta."):
                meta[key[5:]] = value
            elif key in ("kind", "n", "name", "identity"):
                if key in header:
                    raise AlgebraFileError(f"duplicate key {key!r}")
                header[key] = value
            else:
                raise AlgebraFileError(f"unknown key {key!r}")
        for key in ("kind", "n"):
            if key not in header:
                raise AlgebraFileError(f"missing {key!r}")
        if not in_table:
            raise AlgebraFileError("missing table")
        try:
            n = int(header["n"])
        except ValueError as exc:
            raise AlgebraFileError(f"n must be an integer, got {header['n']!r}") from exc
        rec = cls(header["kind"], n, parse_ints(" ".join(body)), header.get("name") or None, meta)
        if "identity" in header:
            if rec.kind != "binary":
                raise AlgebraFileError("identity is only meaningful for binary tables")
            declared = int(header["identity"])
            found = rec.to_algebra().identity
            if declared != found:
                raise AlgebraFileError(f"declared identity {declared} but the table's identity is {found}")
        return rec


def load(path) -> AlgebraFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise AlgebraFileError(f"cannot read {path}: {exc}") from exc
    return AlgebraFile.from_text(text)


def save(record: AlgebraFile, path) -> None:
    Path(path).write_text(record.to_text())
