"""File formats: CSV / raw float64 signals, PGM images, pyramid export, results.

1D signals travel as one-value-per-line CSV or raw little-endian float64;
2D data as binary PGM (P5, 8- or 16-bit) or a raw float64 grid with an
explicit shape.  Binary grids use PGM P4 (packed bits) or P5.  Pyramids
export as a JSON manifest plus one raw float64 file per level and band.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import numpy as np

from .dwt import CoefficientPyramid, Signal
from .errors import InvalidArgumentError, InvalidDataError
from .geometry import BinaryGrid


def _tokens(data: bytes):
    """PGM header tokens, skipping '#' comments."""
    pos = 0
    while True:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos : pos + 1] == b"#":
            while pos < len(data) and data[pos : pos + 1] != b"\n":
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        if start == pos:
            raise InvalidDataError("truncated PGM header")
        yield data[start:pos], pos + 1


def _parse_pnm(path) -> tuple[str, np.ndarray]:
    data = Path(path).read_bytes()
    if not data:
        raise InvalidDataError(f"empty file: {path}")
    toks = _tokens(data)
    magic, _ = next(toks)
    magic = magic.decode()
    if magic not in ("P4", "P5"):
        raise InvalidDataError(f"unsupported PNM magic {magic!r}")
    width, _ = next(toks)
    height, after = next(toks)
    width, height = int(width), int(height)
    if magic == "P4":
        body = data[after:]
        row_bytes = (width + 7) // 8
        raw = np.frombuffer(body[: row_bytes * height], dtype=np.uint8)
        bits = np.unpackbits(raw.reshape(height, row_bytes), axis=1)[:, :width]
        return magic, bits.astype(np.uint8)
    maxval, after = next(toks)
    maxval = int(maxval)
    body = data[after:]
    dtype = np.dtype(">u2") if maxval > 255 else np.uint8
    count = width * height
    arr = np.frombuffer(body[: count * dtype.itemsize], dtype=dtype)
    if arr.size != count:
        raise InvalidDataError("PGM payload shorter than header promises")
    return magic, arr.reshape(height, width).astype(np.float64)


def read_signal(path, fmt: str | None = None, shape=None) -> Signal:
    """Load a 1D/2D signal; '-' reads CSV from stdin."""
    if str(path) == "-":
        values = np.array([float(x) for x in sys.stdin.read().split()])
        if values.size == 0:
            raise InvalidDataError("empty input on stdin")
        return Signal(values)
    path = Path(path)
    if fmt is None:
        fmt = {".csv": "csv", ".txt": "csv", ".f64": "f64", ".pgm": "pgm"}.get(
            path.suffix.lower()
        )
        if fmt == "f64" and shape is not None:
            fmt = "f64grid"
        if fmt is None:
            raise InvalidArgumentError(f"cannot infer format of {path}")
    if not path.exists() or path.stat().st_size == 0:
        raise InvalidDataError(f"missing or empty input file: {path}")
    if fmt == "csv":
        values = np.loadtxt(path, dtype=float, ndmin=1)
        return Signal(values)
    if fmt == "f64":
        return Signal(np.fromfile(path, dtype="<f8"))
    if fmt == "f64grid":
        if shape is None or len(shape) != 2:
            raise InvalidArgumentError("f64grid needs an explicit 2D shape")
        values = np.fromfile(path, dtype="<f8")
        if values.size != shape[0] * shape[1]:
            raise InvalidDataError(f"file holds {values.size} values, shape wants {shape}")
        return Signal(values.reshape(shape))
    if fmt == "pgm":
        _, arr = _parse_pnm(path)
        return Signal(arr.astype(float))
    raise InvalidArgumentError(f"unknown signal format {fmt!r}")


def write_signal(path, signal: Signal, fmt: str | None = None) -> None:
    """Write a signal; '-' writes CSV to stdout."""
    if str(path) == "-":
        for v in np.asarray(signal.samples).ravel():
            sys.stdout.write(f"{v!r}\n")
        return
    path = Path(path)
    if fmt is None:
        fmt = {".csv": "csv", ".txt": "csv", ".f64": "f64", ".pgm": "pgm"}.get(path.suffix.lower())
    if fmt == "csv":
        np.savetxt(path, np.asarray(signal.samples).ravel(), fmt="%.17g")
    elif fmt == "f64":
        signal.samples.astype("<f8").tofile(path)
    elif fmt == "pgm":
        arr = signal.samples
        if arr.ndim != 2:
            raise InvalidArgumentError("PGM output needs a 2D signal")
        rng = arr.max() - arr.min()
        scaled = (arr - arr.min()) / rng if rng > 0 else np.zeros_like(arr)
        quant = np.round(scaled * 65535).astype(">u2")
        with open(path, "wb") as fh:
            fh.write(f"P5\n{arr.shape[1]} {arr.shape[0]}\n65535\n".encode())
            fh.write(quant.tobytes())
    else:
        raise InvalidArgumentError(f"unknown signal format {fmt!r}")


def read_binary_grid(path) -> BinaryGrid:
    _, arr = _parse_pnm(path)
    occ = arr > (arr.max() / 2 if arr.max() > 1 else 0)
    size = occ.shape[0]
    res = int(np.log2(size))
    if occ.shape[0] != occ.shape[1] or 2**res != size:
        raise InvalidDataError("binary grids must be square with power-of-two side")
    return BinaryGrid(occupancy=occ, resolution=res)


def write_binary_grid(path, grid: BinaryGrid, magic: str = "P4") -> None:
    occ = grid.occupancy
    h, w = occ.shape
    with open(path, "wb") as fh:
        if magic == "P4":
            fh.write(f"P4\n{w} {h}\n".encode())
            fh.write(np.packbits(occ.astype(np.uint8), axis=1).tobytes())
        elif magic == "P5":
            fh.write(f"P5\n{w} {h}\n255\n".encode())
            fh.write((occ.astype(np.uint8) * 255).tobytes())
        else:
            raise InvalidArgumentError("magic must be P4 or P5")


def export_pyramid(pyramid: CoefficientPyramid, out_dir) -> Path:
    """JSON manifest plus raw little-endian float64 arrays per level/band."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    manifest = {
        "normalization": "L1",
        "dimension": pyramid.dimension,
        "boundary": pyramid.boundary,
        "filter_order": pyramid.filter.order,
        "shape": list(pyramid.shape),
        "fractional_order": pyramid.frac_order,
        "levels": [],
    }
    for lv in pyramid.levels:
        entry = {"j": lv.j, "shape": list(lv.bands[0].shape), "bands": [], "valid": None}
        for i, band in enumerate(lv.bands):
            name = f"level{lv.j:02d}_band{i}.f64"
            band.astype("<f8").tofile(out / name)
            entry["bands"].append(name)
        vname = f"level{lv.j:02d}_valid.u8"
        lv.valid.astype(np.uint8).tofile(out / vname)
        entry["valid"] = vname
        manifest["levels"].append(entry)
    (out / "manifest.json").write_text(json.dumps(manifest, indent=1, sort_keys=True))
    return out / "manifest.json"


def _json_default(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not JSON serializable: {type(obj)}")


def write_result_json(path, doc: dict) -> None:
    Path(path).write_text(json.dumps(doc, indent=1, sort_keys=True, default=_json_default) + "\n")


def write_csv(path, header: list, columns: list) -> None:
    rows = np.column_stack([np.asarray(c, dtype=float) for c in columns])
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(f"{v!r}" for v in row) + "\n")
