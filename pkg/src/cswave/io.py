"""Journals, manifests, snapshots.

Journal files are plain CSV with every float printed through %.17g, which
round-trips doubles exactly; reruns of the same configuration produce byte
identical journals. Anything time-of-day flavored (timestamps, versions,
hashes) lives in the side manifest instead.
"""

from __future__ import annotations

import datetime
import hashlib
import json
from importlib import resources

import numpy as np

from . import __version__
from .errors import UsageError

_FloatFmt = "%.17g"


def format_float(x: float) -> str:
    return _FloatFmt % float(x)


def write_journal(path, header, rows) -> None:
    """Write a CSV journal: one header line, then %.17g-formatted rows."""
    header = list(header)
    width = len(header)
    lines = [",".join(header)]
    for row in rows:
        row = tuple(row)
        if len(row) != width:
            raise UsageError(
                f"journal row has {len(row)} fields, header has {width}"
            )
        lines.append(",".join(format_float(x) for x in row))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def read_journal(path):
    """Read a CSV journal back as (header, array of shape (rows, cols)).

    Malformed content raises UsageError naming the line that failed."""
    with open(path, "r", newline="") as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise UsageError(f"{path}: journal parse error at line 1: empty file")
    header = lines[0].split(",")
    width = len(header)
    data = []
    for lineno, line in enumerate(lines[1:], start=2):
        if line == "":
            continue
        parts = line.split(",")
        if len(parts) != width:
            raise UsageError(
                f"{path}: journal parse error at line {lineno}: "
                f"expected {width} fields, found {len(parts)}"
            )
        try:
            data.append([float(p) for p in parts])
        except ValueError as exc:
            raise UsageError(
                f"{path}: journal parse error at line {lineno}: {exc}"
            ) from None
    return header, np.array(data, dtype=np.float64).reshape(len(data), width)


def file_sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def write_manifest(path, payload: dict) -> None:
    """JSON manifest next to a journal: config echo, hashes, provenance."""
    doc = dict(payload)
    doc.setdefault("version", __version__)
    doc.setdefault(
        "created", datetime.datetime.now(datetime.timezone.utc).isoformat()
    )
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_manifest(path) -> dict:
    with open(path, "r") as fh:
        return json.load(fh)


def save_snapshot(path, system, state) -> None:
    """Persist a state (components, channels, parameters) as an .npz file."""
    meta = {
        "kind": system.kind,
        "n": system.grid.n,
        "length": system.grid.length,
        "kappa": system.kappa,
        "time": state.time,
    }
    if system.kind == "csh":
        meta["massive"] = bool(system.massive)
        meta["potential"] = list(system.potential.coeffs) if system.potential else None
    else:
        meta["mass"] = system.mass
    arrays = {f"comp_{k}": v for k, v in state.comps.items()}
    for name, ch in state.channels.items():
        arrays[f"chan_val_{name}"] = np.asarray(ch.value)
        if ch.velocity is not None:
            arrays[f"chan_vel_{name}"] = np.asarray(ch.velocity)
    np.savez_compressed(path, meta=json.dumps(meta, sort_keys=True), **arrays)


def load_snapshot(path):
    """Rebuild (system, state) from an .npz snapshot."""
    from .grid import Grid2D
    from .state import Channel, HalfWaveState

    with np.load(path, allow_pickle=False) as z:
        meta = json.loads(str(z["meta"]))
        grid = Grid2D(int(meta["n"]), float(meta["length"]))
        if meta["kind"] == "csh":
            from .csh import CSHSystem, HiggsPotential

            pot = meta.get("potential")
            system = CSHSystem(
                grid,
                kappa=float(meta["kappa"]),
                massive=bool(meta["massive"]),
                potential=HiggsPotential(tuple(pot)) if pot else None,
            )
        elif meta["kind"] == "csd":
            from .csd import CSDSystem

            system = CSDSystem(
                grid, kappa=float(meta["kappa"]), mass=float(meta["mass"])
            )
        else:
            raise UsageError(f"snapshot has unknown system kind {meta['kind']!r}")
        state = system.blank_state(float(meta["time"]))
        for name in state.comps:
            state.comps[name] = np.ascontiguousarray(z[f"comp_{name}"])
        for name, ch in state.channels.items():
            value = z[f"chan_val_{name}"]
            if ch.velocity is not None:
                state.channels[name] = Channel(value, z[f"chan_vel_{name}"])
            else:
                state.channels[name] = Channel(value, generator=ch.generator)
    return system, state


def load_baselines() -> dict:
    """Frozen reference numbers for the regression checks."""
    ref = resources.files("cswave").joinpath("data/baselines.json")
    try:
        text = ref.read_text()
    except FileNotFoundError:
        raise UsageError("baselines.json is missing from the installed package")
    return json.loads(text)
