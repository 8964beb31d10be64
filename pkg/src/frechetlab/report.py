"""Output rendering: CSV, JSON run manifests and optional figures.

Exactness stops here by design: CSV cells carry decimals with 17
significant digits, manifests carry a SHA-256 of the CSV bytes, and both
are byte-identical across runs with identical parameters (no
timestamps, sorted JSON keys, fixed separators).  Figures are a
convenience rendering of the same data and never feed back into any
computation.
"""

from __future__ import annotations

import hashlib
import json
import sys
from typing import Iterable, Optional, Sequence

from .explore import CoverageGrid, GrowthTable, PointCloud
from .shear import ShearDecomposition

DECIMAL_DIGITS = 17

VERSION = "0.1.0"


def render_decimal(value) -> str:
    """Decimal text with 17 significant digits; exact zeros stay '0'."""
    return format(float(value), f".{DECIMAL_DIGITS}g")


def csv_bytes(header: Sequence[str], rows: Iterable[Sequence[str]]) -> bytes:
    lines = [",".join(header)]
    lines.extend(",".join(str(c) for c in row) for row in rows)
    return ("\n".join(lines) + "\n").encode("utf-8")


def cloud_rows(cloud: PointCloud, verify=None) -> list[list[str]]:
    """Decimal rows of a point cloud.

    ``verify`` re-checks the graph property (last coordinate equals the
    model at the first coordinates) exactly before anything is written.
    """
    rows = []
    for pt in cloud.points:
        if verify is not None and verify(pt[:-1]) != pt[-1]:
            raise AssertionError(
                f"graph property violated at {pt!r} before serialization")
        rows.append([render_decimal(v) for v in pt])
    return rows


def growth_rows(table: GrowthTable) -> list[list[str]]:
    rows = []
    for H, sup, count in table.rows:
        rows.append([str(H), "" if sup is None else render_decimal(sup),
                     str(count)])
    return rows


def decomposition_rows(D: ShearDecomposition) -> list[list[str]]:
    return [[str(i), a.to_text()] for i, a in enumerate(D.coefficients)]


def poly_rows(P) -> list[list[str]]:
    """One row per tensor coefficient: exponents, exact text, decimal."""
    rows = []
    for e in P.exponents():
        c = P.coeff(e)
        rows.append([*map(str, e), str(c), render_decimal(c)])
    return rows


def sha256_hex(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def manifest_bytes(manifest: dict) -> bytes:
    return (json.dumps(manifest, sort_keys=True, separators=(",", ":"))
            + "\n").encode("utf-8")


def build_manifest(subcommand: str, model: Optional[str], parameters: dict,
                   output_rows: int, csv_sha256: str, **extra) -> dict:
    manifest = {
        "subcommand": subcommand,
        "model": model,
        "parameters": parameters,
        "output_rows": output_rows,
        "csv_sha256": csv_sha256,
        "version": VERSION,
    }
    manifest.update(extra)
    return manifest


def emit(csv_data: bytes, manifest: dict, out_path: Optional[str],
         manifest_path: Optional[str]) -> None:
    """Write CSV to a file or stdout; write the manifest next to it."""
    if out_path:
        with open(out_path, "wb") as fh:
            fh.write(csv_data)
        mpath = manifest_path or f"{out_path}.manifest.json"
        with open(mpath, "wb") as fh:
            fh.write(manifest_bytes(manifest))
    else:
        sys.stdout.write(csv_data.decode("utf-8"))
        if manifest_path:
            with open(manifest_path, "wb") as fh:
                fh.write(manifest_bytes(manifest))


# -- figures ------------------------------------------------------------------


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def figure_cloud(cloud: PointCloud, path: str, title: str = "") -> None:
    """Scatter of the first coordinate against the last, written to a file."""
    plt = _pyplot()
    xs = [float(pt[0]) for pt in cloud.points]
    ys = [float(pt[-1]) for pt in cloud.points]
    fig, ax = plt.subplots(figsize=(8, 5))
    ax.plot(xs, ys, ".", markersize=2, color="#30507a", alpha=0.6)
    ax.set_xlabel(cloud.columns[0])
    ax.set_ylabel(cloud.columns[-1])
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def figure_growth(table: GrowthTable, path: str, title: str = "") -> None:
    """Height bound against sup |f|, written to a file."""
    plt = _pyplot()
    hs = [H for H, sup, _ in table.rows if sup is not None]
    sups = [float(sup) for _, sup, _ in table.rows if sup is not None]
    fig, ax = plt.subplots(figsize=(8, 5))
    ax.plot(hs, sups, "o-", color="#a03030")
    ax.set_xlabel("height bound")
    ax.set_ylabel("sup |f| over sample")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def figure_coverage(grid: CoverageGrid, path: str, title: str = "") -> None:
    """Occupancy bitmap of a coverage grid, written to a file."""
    plt = _pyplot()
    r = grid.resolution
    bitmap = [[1.0 if (i, j) in grid.occupied else 0.0 for i in range(r)]
              for j in range(r)]
    fig, ax = plt.subplots(figsize=(6, 6))
    ax.imshow(bitmap, origin="lower", cmap="Blues", interpolation="nearest")
    ax.set_xlabel("x cell")
    ax.set_ylabel("y cell")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
