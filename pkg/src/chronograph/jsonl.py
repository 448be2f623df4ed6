"""Line-oriented record files: gzip sniffing on read, atomic replace on write."""

from __future__ import annotations

import gzip
import io
import json
import os
import tempfile
from pathlib import Path
from typing import Iterable, Iterator

GZIP_MAGIC = b"\x1f\x8b"


def read_lines(path: str | os.PathLike) -> Iterator[str]:
    """Non-empty lines of a text file, transparently gunzipped."""
    with open(path, "rb") as fh:
        head = fh.read(2)
    opener = gzip.open if head == GZIP_MAGIC else open
    with opener(path, "rb") as raw, io.TextIOWrapper(raw, encoding="utf-8", newline="\n") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.strip():
                yield line


def read_records(path: str | os.PathLike) -> Iterator[dict]:
    for line in read_lines(path):
        yield json.loads(line)


def dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def write_atomic(path: str | os.PathLike, lines: Iterable[str]) -> int:
    """Write ``lines`` (newline-terminated) to a temp file, then rename over ``path``."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    count = 0
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            for line in lines:
                fh.write(line)
                fh.write("\n")
                count += 1
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return count
