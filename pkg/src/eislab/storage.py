"""On-disk formats: CSV emission, profile binaries, ball-count cache, manifests."""
from __future__ import annotations

import hashlib
import json
import os
import struct

import numpy as np

from .haar import EuclideanProfile, RadialProfile

__all__ = [
    "format_float",
    "write_csv",
    "write_profile",
    "read_profile",
    "BallCountCache",
    "content_hash",
    "write_manifest",
]

PROFILE_MAGIC = b"EISL-PROF\x00"
PROFILE_VERSION = 1
_KIND_EUCLIDEAN = 0
_KIND_RADIAL = 1


def format_float(x) -> str:
    """Floats at 17 significant digits (lossless round trip); ints verbatim."""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def write_csv(path: str, header, rows) -> None:
    """UTF-8, comma separators, LF endings, full-precision floats."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(format_float(v) if isinstance(v, (int, float, np.integer, np.floating))
                              else str(v) for v in row) + "\n")


def write_profile(path: str, profile) -> None:
    """16-byte header (magic, version, kind), then step, support, samples."""
    if isinstance(profile, EuclideanProfile):
        kind = _KIND_EUCLIDEAN
    elif isinstance(profile, RadialProfile):
        kind = _KIND_RADIAL
    else:
        raise TypeError(f"cannot serialize {type(profile).__name__}")
    samples = np.asarray(profile.samples, dtype="<f8")
    with open(path, "wb") as fh:
        fh.write(PROFILE_MAGIC)
        fh.write(struct.pack("<HB3x", PROFILE_VERSION, kind))
        fh.write(struct.pack("<dd", float(profile.step), float(profile.support_b)))
        fh.write(struct.pack("<Q", len(samples)))
        fh.write(samples.tobytes())


def read_profile(path: str):
    with open(path, "rb") as fh:
        magic = fh.read(10)
        if magic != PROFILE_MAGIC:
            raise ValueError(f"bad profile magic {magic!r}")
        version, kind = struct.unpack("<HB3x", fh.read(6))
        if version != PROFILE_VERSION:
            raise ValueError(f"unsupported profile version {version}")
        step, support = struct.unpack("<dd", fh.read(16))
        (count,) = struct.unpack("<Q", fh.read(8))
        samples = np.frombuffer(fh.read(8 * count), dtype="<f8")
        if len(samples) != count:
            raise ValueError("truncated profile file")
    if kind == _KIND_EUCLIDEAN:
        return EuclideanProfile(samples=tuple(samples), step=step, support_b=support)
    if kind == _KIND_RADIAL:
        return RadialProfile(samples=tuple(samples), step=step, support_b=support)
    raise ValueError(f"unknown profile kind {kind}")


class BallCountCache:
    """Append-only binary cache of ball counts keyed by (n, norm_sq_bound).

    Records are three little-endian signed 64-bit integers:
    (n, norm_sq_bound, count).
    """

    RECORD = struct.Struct("<qqq")

    def __init__(self, path: str):
        self.path = path
        self._table: dict[tuple[int, int], int] = {}
        if os.path.exists(path):
            with open(path, "rb") as fh:
                blob = fh.read()
            if len(blob) % self.RECORD.size:
                raise ValueError("corrupt cache file")
            for off in range(0, len(blob), self.RECORD.size):
                n, bound, count = self.RECORD.unpack_from(blob, off)
                self._table[(n, bound)] = count

    def get(self, n: int, norm_sq_bound: int):
        return self._table.get((n, norm_sq_bound))

    def put(self, n: int, norm_sq_bound: int, count: int) -> None:
        key = (n, norm_sq_bound)
        if self._table.get(key) == count:
            return
        self._table[key] = count
        with open(self.path, "ab") as fh:
            fh.write(self.RECORD.pack(n, norm_sq_bound, count))

    def __len__(self):
        return len(self._table)


def content_hash(path: str) -> str:
    """Git-style blob hash of a file; empty-blob hash when absent."""
    data = b""
    if path and os.path.exists(path):
        with open(path, "rb") as fh:
            data = fh.read()
    return hashlib.sha1(b"blob %d\x00" % len(data) + data).hexdigest()


def write_manifest(path: str, params: dict, cache_path: str | None = None) -> None:
    """Reproducibility manifest: inputs plus the cache content hash."""
    doc = dict(params)
    doc["cache_hash"] = content_hash(cache_path) if cache_path else None
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
