"""Parameter-sweep engine: config parsing, grid evaluation, CSV and SVG output.

The sweep walks a grid of noise levels p and evaluates the requested
quantities at fixed (p_c, xi, axis, probe):

    qc        coupling scalar tr s01 (trace route, any noise kind)
    fq_con    quantum FI of the control qubit
    fq_cas    quantum FI of the plain cascade (numeric SLD)
    fc_con    classical FI of the Hadamard measurement of the control
    fq_joint  quantum FI of the joint probe-control output (numeric SLD)

For the Pauli noise kinds fq_con and fc_con use the closed forms; for
depolarizing noise they fall back to the numeric routes.  Rows are plain
dicts in grid order; evaluation is pure per grid point, so results are
identical for any thread count.
"""

from __future__ import annotations

import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channels import (
    KrausChannel,
    PauliAxis,
    bloch_to_density,
    bloch_vector,
    depolarizing_channel,
    noisy_phase_channel,
    pauli_channel,
)
from .metrology import (
    cfi_control,
    cfi_numeric,
    control_family,
    qfi_cascade,
    qfi_control,
    qfi_joint,
    qfi_numeric,
)
from .switch import qc_numeric

NOISE_KINDS = ("bitflip", "phaseflip", "bitphaseflip", "depolarizing")
PAULI_OF_KIND = {"bitflip": PauliAxis.X, "phaseflip": PauliAxis.Z, "bitphaseflip": PauliAxis.Y}
QUANTITIES = ("qc", "fq_con", "fq_cas", "fc_con", "fq_joint")

DEFAULT_XI = math.pi / 5
DEFAULT_AXIS = (0.0, 1.0, 0.0)
DEFAULT_PROBE = (0.0, 0.0, 1.0)
FIG2_R_VALUES = (1.0, 0.8, 0.6, 0.4, 0.2)

# Config axes are human-typed; near-unit vectors within this are renormalized.
CONFIG_AXIS_TOL = 1e-6


class ConfigError(ValueError):
    """Malformed sweep configuration; message carries the offending line."""


@dataclass
class SweepConfig:
    """Declarative sweep: one noise grid, fixed everything else."""

    noise_kind: str = "bitflip"
    axis: tuple[float, float, float] = DEFAULT_AXIS
    probe: tuple[float, float, float] = DEFAULT_PROBE
    xi: float = DEFAULT_XI
    p_c: float = 0.5
    p_grid: tuple[float, float, float] = (0.0, 1.0, 0.1)  # start, stop, step
    quantities: tuple[str, ...] = ("qc", "fq_con", "fq_cas", "fc_con")

    def grid(self) -> list[float]:
        return grid_points(*self.p_grid)


def grid_points(start: float, stop: float, step: float) -> list[float]:
    """Arithmetic grid start, start+step, ..., inclusive of stop.

    Points are clipped to stop so roundoff cannot push a probability past
    its validated range.
    """
    if step <= 0.0:
        raise ValueError(f"grid step must be positive, got {step}")
    if start > stop:
        raise ValueError(f"grid start {start} exceeds stop {stop}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [min(start + i * step, stop) for i in range(count)]


def _parse_float(raw: str, lineno: int, key: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"line {lineno}: {key} expects a number, got {raw!r}") from None


def _parse_triple(raw: str, lineno: int, key: str) -> tuple[float, float, float]:
    parts = [s.strip() for s in raw.split(",")]
    if len(parts) != 3:
        raise ConfigError(f"line {lineno}: {key} expects three comma-separated numbers")
    return tuple(_parse_float(s, lineno, key) for s in parts)  # type: ignore[return-value]


def _parse_range(raw: str, lineno: int, key: str) -> tuple[float, float, float]:
    parts = [s.strip() for s in raw.split(":")]
    if len(parts) == 1:
        v = _parse_float(parts[0], lineno, key)
        return (v, v, 1.0)
    if len(parts) != 3:
        raise ConfigError(f"line {lineno}: {key} expects start:stop:step or a single number")
    return tuple(_parse_float(s, lineno, key) for s in parts)  # type: ignore[return-value]


def parse_config(text: str) -> SweepConfig:
    """Parse a `key = value` sweep configuration.

    One assignment per line; `#` starts a comment; blank lines are skipped.
    Keys: noise, axis, probe, xi, p_c, p, quantities.  Ranges are written
    start:stop:step (a bare number is a single-point grid), vectors as
    comma triples, quantities as a comma list.  An empty document yields
    the defaults (bit-flip noise, axis 0,1,0, probe 0,0,1, xi = pi/5,
    p_c = 0.5, p = 0:1:0.1).  Axes within 1e-6 of unit norm are
    renormalized; anything else is an error with its line number.
    """
    cfg = SweepConfig()
    seen: set[str] = set()
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value, got {raw_line.strip()!r}")
        key, _, raw = line.partition("=")
        key, raw = key.strip(), raw.strip()
        if key in seen:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        seen.add(key)
        if not raw:
            raise ConfigError(f"line {lineno}: empty value for {key!r}")

        if key == "noise":
            if raw not in NOISE_KINDS:
                raise ConfigError(
                    f"line {lineno}: noise must be one of {', '.join(NOISE_KINDS)}, got {raw!r}"
                )
            cfg.noise_kind = raw
        elif key == "axis":
            vec = np.asarray(_parse_triple(raw, lineno, key))
            norm = float(np.linalg.norm(vec))
            if abs(norm - 1.0) > CONFIG_AXIS_TOL:
                raise ConfigError(f"line {lineno}: axis must be a unit vector, |n| = {norm}")
            cfg.axis = tuple(vec / norm)
        elif key == "probe":
            vec = _parse_triple(raw, lineno, key)
            try:
                bloch_vector(vec)
            except ValueError as exc:
                raise ConfigError(f"line {lineno}: {exc}") from None
            cfg.probe = vec
        elif key == "xi":
            cfg.xi = _parse_float(raw, lineno, key)
        elif key == "p_c":
            v = _parse_float(raw, lineno, key)
            if not 0.0 <= v <= 1.0:
                raise ConfigError(f"line {lineno}: p_c must lie in [0, 1], got {v}")
            cfg.p_c = v
        elif key == "p":
            start, stop, step = _parse_range(raw, lineno, key)
            if not (0.0 <= start <= 1.0 and 0.0 <= stop <= 1.0):
                raise ConfigError(f"line {lineno}: p grid must lie in [0, 1]")
            try:
                grid_points(start, stop, step)
            except ValueError as exc:
                raise ConfigError(f"line {lineno}: {exc}") from None
            cfg.p_grid = (start, stop, step)
        elif key == "quantities":
            names = tuple(s.strip() for s in raw.split(","))
            bad = [n for n in names if n not in QUANTITIES]
            if bad:
                raise ConfigError(
                    f"line {lineno}: unknown quantity {bad[0]!r}; choose from {', '.join(QUANTITIES)}"
                )
            if len(set(names)) != len(names):
                raise ConfigError(f"line {lineno}: repeated quantity")
            cfg.quantities = names
        else:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
    return cfg


def noise_channel(kind: str, p: float) -> KrausChannel:
    """Noise channel of the given kind at level p."""
    if kind == "depolarizing":
        return depolarizing_channel(p)
    if kind in PAULI_OF_KIND:
        return pauli_channel(PAULI_OF_KIND[kind], p)
    raise ValueError(f"unknown noise kind {kind!r}")


def compute_quantity(
    name: str,
    kind: str,
    p: float,
    p_c: float,
    xi: float,
    axis,
    probe,
) -> float:
    """One scalar of the sweep at one grid point."""
    noise = noise_channel(kind, p)
    axis = np.asarray(axis, dtype=float)
    rho = bloch_to_density(probe)
    pauli = PAULI_OF_KIND.get(kind)
    if name == "qc":
        return qc_numeric(noisy_phase_channel(noise, axis, xi), rho)
    if name == "fq_con":
        if pauli is not None:
            return qfi_control(p_c, p, xi, axis[pauli.index]).value
        return qfi_numeric(control_family(noise, axis, rho, p_c), xi).value
    if name == "fq_cas":
        return qfi_cascade(noise, axis, xi, probe).value
    if name == "fc_con":
        if pauli is not None:
            return cfi_control(p_c, p, xi, axis[pauli.index]).value
        return cfi_numeric(noise, axis, xi, rho, p_c).value
    if name == "fq_joint":
        return qfi_joint(noise, axis, xi, rho, p_c).value
    raise ValueError(f"unknown quantity {name!r}")


def _map_ordered(fn, items, threads: int) -> list:
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def run_sweep(cfg: SweepConfig, threads: int = 1) -> tuple[list[str], list[dict]]:
    """Evaluate the sweep; returns (column names, rows in grid order).

    Grid points are independent, so results do not depend on ``threads``.
    """
    columns = [
        "p",
        "p_c",
        "xi",
        "axis_x",
        "axis_y",
        "axis_z",
        "probe_x",
        "probe_y",
        "probe_z",
        "noise_kind",
        *cfg.quantities,
    ]

    def one_row(p: float) -> dict:
        row = {
            "p": p,
            "p_c": cfg.p_c,
            "xi": cfg.xi,
            "axis_x": cfg.axis[0],
            "axis_y": cfg.axis[1],
            "axis_z": cfg.axis[2],
            "probe_x": cfg.probe[0],
            "probe_y": cfg.probe[1],
            "probe_z": cfg.probe[2],
            "noise_kind": cfg.noise_kind,
        }
        for name in cfg.quantities:
            try:
                row[name] = compute_quantity(
                    name, cfg.noise_kind, p, cfg.p_c, cfg.xi, cfg.axis, cfg.probe
                )
            except Exception as exc:
                raise RuntimeError(f"sweep failed at p = {p}, quantity {name!r}: {exc}") from exc
        return row

    return columns, _map_ordered(one_row, cfg.grid(), threads)


def _cas_column_name(r: float) -> str:
    return "fq_cas_r" + f"{r:g}".replace(".", "_").replace("-", "m")


def fig2_preset(
    steps: int = 201,
    xi: float = DEFAULT_XI,
    r_values: tuple[float, ...] = FIG2_R_VALUES,
    threads: int = 1,
) -> tuple[list[str], list[dict]]:
    """Control-vs-cascade comparison preset.

    Bit-flip noise, rotation axis e_y, probe r e_z, and a grid of ``steps``
    noise levels on [0, 1].  Columns: the control-qubit quantum FI at
    p_c = 1/2 (closed form) and one numeric cascade column per probe
    length r.  The control column is probe independent; the cascade
    columns start at 4 r^2 and vanish at p = 1.
    """
    if steps < 2:
        raise ValueError(f"steps must be at least 2, got {steps}")
    for r in r_values:
        if not 0.0 <= r <= 1.0:
            raise ValueError(f"probe length must lie in [0, 1], got {r}")
    columns = ["p", "fq_con", *(_cas_column_name(r) for r in r_values)]
    grid = np.linspace(0.0, 1.0, steps)

    def one_row(p: float) -> dict:
        row = {"p": float(p), "fq_con": qfi_control(0.5, p, xi, 0.0).value}
        for r in r_values:
            noise = pauli_channel(PauliAxis.X, p)
            row[_cas_column_name(r)] = qfi_cascade(noise, (0.0, 1.0, 0.0), xi, (0.0, 0.0, r)).value
        return row

    return columns, _map_ordered(one_row, [float(p) for p in grid], threads)


def format_number(value: float) -> str:
    """Render a float with 12 significant digits (trailing zeros kept)."""
    v = float(value)
    if not math.isfinite(v):
        raise ValueError(f"non-finite value {v} in output")
    if v == 0.0:
        v = 0.0  # normalize -0.0
    return format(v, "#.12g")


def render_csv(rows: list[dict], columns: list[str] | None = None) -> str:
    """CSV text: header of column names, one line per row, `\\n` terminators."""
    if not rows:
        raise ValueError("refusing to emit an empty table")
    if columns is None:
        columns = list(rows[0].keys())
    lines = [",".join(columns)]
    for row in rows:
        cells = []
        for col in columns:
            if col not in row:
                raise ValueError(f"row is missing column {col!r}")
            v = row[col]
            cells.append(v if isinstance(v, str) else format_number(v))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def emit_csv(rows: list[dict], destination, columns: list[str] | None = None) -> None:
    """Write the CSV to a path or binary file-like destination."""
    data = render_csv(rows, columns).encode("utf-8")
    if hasattr(destination, "write"):
        destination.write(data)
    else:
        with open(destination, "wb") as fh:
            fh.write(data)


# Fixed palette (tab10 order) so SVG bytes are reproducible.
_PALETTE = (
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
    "#17becf",
)
_SVG_W, _SVG_H = 800, 600
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 70, 170, 40, 60


def _ticks(lo: float, hi: float, n: int = 6) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    return [lo + i * (hi - lo) / (n - 1) for i in range(n)]


def render_svg(rows: list[dict], x_col: str, y_cols: list[str]) -> str:
    """Standalone 800x600 SVG line plot: first series solid, the rest dashed."""
    if len(rows) < 2:
        raise ValueError("need at least 2 rows to draw lines")
    for col in [x_col, *y_cols]:
        if col not in rows[0]:
            raise ValueError(f"unknown column {col!r}")
    xs = [float(r[x_col]) for r in rows]
    all_y = [float(r[c]) for r in rows for c in y_cols]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(all_y), max(all_y)
    if x_hi <= x_lo:
        x_hi = x_lo + 1.0
    if y_hi <= y_lo:
        y_hi = y_lo + 1.0
    plot_w = _SVG_W - _MARGIN_L - _MARGIN_R
    plot_h = _SVG_H - _MARGIN_T - _MARGIN_B

    def px(x: float) -> float:
        return _MARGIN_L + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y: float) -> float:
        return _SVG_H - _MARGIN_B - (y - y_lo) / (y_hi - y_lo) * plot_h

    out = io.StringIO()
    out.write(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_W}" height="{_SVG_H}" '
        f'viewBox="0 0 {_SVG_W} {_SVG_H}">\n'
    )
    out.write(f'<rect width="{_SVG_W}" height="{_SVG_H}" fill="white"/>\n')
    # Axes.
    x0, y0 = _MARGIN_L, _SVG_H - _MARGIN_B
    out.write(
        f'<line x1="{x0}" y1="{y0}" x2="{x0 + plot_w}" y2="{y0}" stroke="black" stroke-width="1"/>\n'
    )
    out.write(
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{_MARGIN_T}" stroke="black" stroke-width="1"/>\n'
    )
    for t in _ticks(x_lo, x_hi):
        tx = px(t)
        out.write(f'<line x1="{tx:.2f}" y1="{y0}" x2="{tx:.2f}" y2="{y0 + 5}" stroke="black"/>\n')
        out.write(
            f'<text x="{tx:.2f}" y="{y0 + 20}" font-family="sans-serif" font-size="12" '
            f'text-anchor="middle">{t:.3g}</text>\n'
        )
    for t in _ticks(y_lo, y_hi):
        ty = py(t)
        out.write(f'<line x1="{x0 - 5}" y1="{ty:.2f}" x2="{x0}" y2="{ty:.2f}" stroke="black"/>\n')
        out.write(
            f'<text x="{x0 - 8}" y="{ty + 4:.2f}" font-family="sans-serif" font-size="12" '
            f'text-anchor="end">{t:.3g}</text>\n'
        )
    out.write(
        f'<text x="{x0 + plot_w / 2:.2f}" y="{_SVG_H - 15}" font-family="sans-serif" '
        f'font-size="14" text-anchor="middle">{x_col}</text>\n'
    )
    # Series.
    for i, col in enumerate(y_cols):
        color = _PALETTE[i % len(_PALETTE)]
        dash = "" if i == 0 else ' stroke-dasharray="6,4"'
        pts = " ".join(f"{px(float(r[x_col])):.2f},{py(float(r[col])):.2f}" for r in rows)
        out.write(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash} points="{pts}"/>\n'
        )
    # Legend.
    lx = _SVG_W - _MARGIN_R + 18
    for i, col in enumerate(y_cols):
        ly = _MARGIN_T + 14 + 20 * i
        color = _PALETTE[i % len(_PALETTE)]
        dash = "" if i == 0 else ' stroke-dasharray="6,4"'
        out.write(
            f'<line x1="{lx}" y1="{ly}" x2="{lx + 26}" y2="{ly}" stroke="{color}" '
            f'stroke-width="1.5"{dash}/>\n'
        )
        out.write(
            f'<text x="{lx + 32}" y="{ly + 4}" font-family="sans-serif" font-size="12">{col}</text>\n'
        )
    out.write("</svg>\n")
    return out.getvalue()


def emit_svg(rows: list[dict], x_col: str, y_cols: list[str], destination) -> None:
    """Write the SVG plot to a path or binary file-like destination."""
    data = render_svg(rows, x_col, y_cols).encode("utf-8")
    if hasattr(destination, "write"):
        destination.write(data)
    else:
        with open(destination, "wb") as fh:
            fh.write(data)
