"""Minimal PBM (portable bitmap) reader and writer.

1 is black, 0 is white, one image row per time step.
"""
from __future__ import annotations

import io
import os

import numpy as np


def encode(rows: np.ndarray, *, binary: bool = False, comment: str | None = None) -> bytes:
    rows = np.asarray(rows, dtype=np.uint8)
    if rows.ndim != 2:
        raise ValueError("expected a 2-d array of bits")
    if np.any(rows > 1):
        raise ValueError("PBM pixels must be 0 or 1")
    height, width = rows.shape
    header = "P4\n" if binary else "P1\n"
    if comment:
        for line in comment.splitlines():
            header += f"# {line}\n"
    header += f"{width} {height}\n"
    if binary:
        body = np.packbits(rows, axis=1, bitorder="big").tobytes()
        return header.encode("ascii") + body
    out = io.StringIO()
    out.write(header)
    for row in rows:
        text = "".join("1" if v else "0" for v in row)
        # P1 lines must not exceed 70 characters
        for k in range(0, max(len(text), 1), 70):
            out.write(text[k:k + 70] + "\n")
    return out.getvalue().encode("ascii")


def write_pbm(path: str | os.PathLike, rows: np.ndarray, *, binary: bool = False,
              comment: str | None = None) -> None:
    with open(path, "wb") as fh:
        fh.write(encode(rows, binary=binary, comment=comment))


def _tokens(data: bytes, pos: int, count: int):
    """Read ``count`` whitespace-separated header tokens, skipping comments."""
    out = []
    while len(out) < count:
        while pos < len(data) and data[pos:pos + 1].isspace():
            pos += 1
        if data[pos:pos + 1] == b"#":
            while pos < len(data) and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos:pos + 1].isspace() and data[pos:pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise ValueError("truncated PBM header")
        out.append(data[start:pos])
    return out, pos


def decode(data: bytes) -> np.ndarray:
    magic = data[:2]
    if magic not in (b"P1", b"P4"):
        raise ValueError("not a PBM file")
    (w, h), pos = _tokens(data, 2, 2)
    width, height = int(w), int(h)
    if magic == b"P4":
        pos += 1  # single whitespace byte after the height
        stride = (width + 7) // 8
        raw = np.frombuffer(data[pos:pos + stride * height], dtype=np.uint8)
        if raw.size != stride * height:
            raise ValueError("truncated P4 raster")
        bits = np.unpackbits(raw.reshape(height, stride), axis=1, bitorder="big")
        return bits[:, :width].copy()
    pixels = []
    need = width * height
    body = data[pos:]
    k = 0
    while len(pixels) < need and k < len(body):
        ch = body[k:k + 1]
        if ch == b"#":
            while k < len(body) and body[k:k + 1] not in (b"\n", b"\r"):
                k += 1
        elif ch in (b"0", b"1"):
            pixels.append(int(ch))
        elif not ch.isspace():
            raise ValueError(f"unexpected byte {ch!r} in P1 raster")
        k += 1
    if len(pixels) != need:
        raise ValueError("truncated P1 raster")
    return np.array(pixels, dtype=np.uint8).reshape(height, width)


def read_pbm(path: str | os.PathLike) -> np.ndarray:
    with open(path, "rb") as fh:
        return decode(fh.read())
