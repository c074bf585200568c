"""Versioned on-disk cache of finite field tables.

Binary layout (all integers little-endian)::

    magic           4 bytes   b"FFHC"
    format_version  u16
    p               u32
    r               u16
    modulus         (r + 1) x u32   coefficients, constant term first
    generator       u32             element index of the generator
    digits          q x r x u16     element enumeration (coefficient digits)
    dlog            q x i32         discrete logs, -1 at zero
    checksum        32 bytes        SHA-256 of everything above

A JSON mirror with the same content (checksum as hex) sits next to each file.
"""

from __future__ import annotations

import hashlib
import json
import os
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import CacheError
from .field import FieldCtx, build_field

FORMAT_VERSION = 1
MAGIC = b"FFHC"
ENV_CACHE_DIR = "FFHYPER_CACHE_DIR"
_HEAD = struct.Struct("<4sHIH")


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_CACHE_DIR)
    if env:
        return Path(env).expanduser().resolve()
    return (Path.home() / ".cache" / "ffhyper").resolve()


def cache_path(cache_dir: Path | str, p: int, r: int) -> Path:
    return Path(cache_dir) / f"field_p{p}_r{r}_v{FORMAT_VERSION}.ffc"


def encode_field(ctx: FieldCtx) -> bytes:
    body = bytearray(_HEAD.pack(MAGIC, FORMAT_VERSION, ctx.p, ctx.r))
    body += np.asarray(ctx.modulus, dtype="<u4").tobytes()
    body += struct.pack("<I", ctx.generator)
    body += np.asarray(ctx.digits, dtype="<u2").tobytes()
    body += np.asarray(ctx.dlog_table, dtype="<i4").tobytes()
    return bytes(body) + hashlib.sha256(body).digest()


def decode_field(data: bytes) -> FieldCtx:
    """Parse and validate cache bytes; the result is rebuilt and compared table by table."""
    if len(data) < _HEAD.size + 32:
        raise CacheError("cache file is truncated")
    body, digest = data[:-32], data[-32:]
    if hashlib.sha256(body).digest() != digest:
        raise CacheError("cache checksum mismatch")
    magic, version, p, r = _HEAD.unpack_from(body)
    if magic != MAGIC:
        raise CacheError("not a field cache file")
    if version != FORMAT_VERSION:
        raise CacheError(f"cache format version {version}, expected {FORMAT_VERSION}")
    q = p ** r
    off = _HEAD.size
    modulus = tuple(int(v) for v in np.frombuffer(body, "<u4", r + 1, off))
    off += 4 * (r + 1)
    (generator,) = struct.unpack_from("<I", body, off)
    off += 4
    digits = np.frombuffer(body, "<u2", q * r, off).reshape(q, r)
    off += 2 * q * r
    dlog = np.frombuffer(body, "<i4", q, off)
    if off + 4 * q != len(body):
        raise CacheError("cache body has the wrong length")
    ctx = build_field(p, r)
    if (ctx.modulus != modulus or ctx.generator != generator
            or not np.array_equal(ctx.digits, digits) or not np.array_equal(ctx.dlog_table, dlog)):
        raise CacheError("cached tables disagree with the canonical construction")
    return ctx


def field_json(ctx: FieldCtx, checksum: str) -> dict:
    return {
        "format_version": FORMAT_VERSION, "p": ctx.p, "r": ctx.r,
        "modulus": list(ctx.modulus), "generator": ctx.generator,
        "elements": ctx.digits.tolist(), "dlog": ctx.dlog_table.tolist(), "checksum": checksum,
    }


@dataclass(frozen=True)
class CacheResult:
    path: Path
    status: str     # "created", "unchanged" or "rebuilt"
    checksum: str
    ctx: FieldCtx


def _write(path: Path, data: bytes, ctx: FieldCtx) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_bytes(data)
    tmp.replace(path)
    mirror = field_json(ctx, data[-32:].hex())
    path.with_suffix(".json").write_text(json.dumps(mirror, separators=(",", ":")) + "\n")


def ensure_field_cache(p: int, r: int = 1, cache_dir: Path | str | None = None) -> CacheResult:
    """Write the cache for F_{p^r} unless a valid one already exists.

    An existing file is checked against its checksum and against a fresh
    construction; anything stale or corrupt is replaced.
    """
    ctx = build_field(p, r)
    path = cache_path(cache_dir or default_cache_dir(), p, r)
    data = encode_field(ctx)
    status = "created"
    try:
        if path.exists():
            old = path.read_bytes()
            try:
                decode_field(old)
                if old == data:
                    return CacheResult(path, "unchanged", data[-32:].hex(), ctx)
            except CacheError:
                pass
            status = "rebuilt"
        _write(path, data, ctx)
    except OSError as exc:
        raise CacheError(f"cannot write field cache {path}: {exc}") from exc
    return CacheResult(path, status, data[-32:].hex(), ctx)


def load_field(p: int, r: int = 1, cache_dir: Path | str | None = None) -> FieldCtx:
    """Field context backed by the cache, building it on demand."""
    return ensure_field_cache(p, r, cache_dir).ctx
