"""CSV time-series output and run manifests.

Floats are serialized with 17 significant digits so a write/read round trip
is bitwise exact. Column schemas are documented in docs/output-schema.md.
"""

import datetime
import json
import time
from dataclasses import dataclass, field


@dataclass
class TimeSeries:
    columns: list
    rows: list = field(default_factory=list)

    def append(self, *values):
        if len(values) != len(self.columns):
            raise ValueError(f"expected {len(self.columns)} values, got {len(values)}")
        self.rows.append(tuple(values))

    def column(self, name):
        i = self.columns.index(name)
        return [row[i] for row in self.rows]

    def __len__(self):
        return len(self.rows)


def _format_value(v):
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, (int,)) or (hasattr(v, "dtype") and v.dtype.kind in "iu"):
        return str(int(v))
    if isinstance(v, str):
        return v
    return format(float(v), ".17g")


def write_timeseries(path, series, units_comment=None):
    """Write a TimeSeries as CSV with a header row (and optional unit comment)."""
    with open(path, "w") as fh:
        if units_comment:
            fh.write(f"# {units_comment}\n")
        fh.write(",".join(series.columns) + "\n")
        for row in series.rows:
            fh.write(",".join(_format_value(v) for v in row) + "\n")


def read_timeseries(path):
    """Inverse of write_timeseries; floats round-trip bitwise."""
    with open(path) as fh:
        lines = [ln.rstrip("\n") for ln in fh if not ln.startswith("#")]
    if not lines:
        raise ValueError(f"empty CSV: {path}")
    columns = lines[0].split(",")
    ts = TimeSeries(columns=columns)
    for ln in lines[1:]:
        if not ln:
            continue
        values = []
        for tok in ln.split(","):
            try:
                values.append(int(tok))
            except ValueError:
                values.append(float(tok))
        ts.append(*values)
    return ts


class RunManifest:
    """Record of one run: config echo, seed, wall time, files written."""

    def __init__(self, config_echo, seed, code_version):
        self.manifest = {
            "code_version": code_version,
            "seed": seed,
            "config": config_echo,
            "started": datetime.datetime.now().isoformat(timespec="seconds"),
            "finished": None,
            "files": {},
        }
        self._t0 = time.monotonic()

    def add_file(self, path, row_count):
        self.manifest["files"][str(path)] = {"rows": int(row_count)}

    def finalize(self, path):
        self.manifest["finished"] = datetime.datetime.now().isoformat(timespec="seconds")
        self.manifest["wall_seconds"] = round(time.monotonic() - self._t0, 3)
        with open(path, "w") as fh:
            json.dump(self.manifest, fh, indent=2, default=_jsonable)
        return path


def _jsonable(v):
    if hasattr(v, "tolist"):
        return v.tolist()
    if hasattr(v, "value"):
        return v.value
    return str(v)


def positions_series(label=None):
    return TimeSeries(columns=["t", "node", "x", "y"])


def record_positions(series, t, nodes):
    for i, (x, y) in enumerate(nodes):
        series.append(t, i, x, y)
