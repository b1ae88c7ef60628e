"""Run configuration: scenario defaults, INI-style config files, validation.

A run is described by one diff-friendly text file with flat sections:

    [run]
    scenario = tethered
    method = meanzero
    seed = 7

    [tethered]
    k_teth = 2.0

Every key is optional; scenario defaults fill the rest. Unknown sections or
keys are rejected.
"""

import configparser
from dataclasses import dataclass, field, fields, replace

import numpy as np

from .constraints import CorrectionConfig, Method


class ConfigError(ValueError):
    pass


@dataclass
class TetheredParams:
    n_points: int = 32
    radius: float = 20.0         # um, radius of the moving circle of points
    center_x: float = 10.0
    anchor_offset: float = 80.0  # anchors centered at (+-anchor_offset, 0)
    k_teth: float = 1.0          # pN/um^2


# Canonical 20-node ECM lattice: nodes roughly one cell diameter apart on a
# box a few cell diameters across, with the cell starting at the origin in a
# small cavity and the nearest node in the migration direction at (1.2, 0).
DEFAULT_ECM_NODES = (
    (1.2, 0.0), (2.01, 0.56), (1.45, 1.43), (0.49, 1.97), (-0.54, 1.93),
    (-1.49, 1.5), (-1.96, 0.5), (-1.99, -0.48), (-1.41, -1.42),
    (-0.54, -1.98), (0.55, -2.02), (1.46, -1.47), (2.02, -0.57),
    (3.04, 0.73), (1.32, 2.83), (-1.31, 2.74), (-3.0, 0.64),
    (-2.42, -1.94), (-0.03, -3.12), (2.45, -1.95),
)


@dataclass
class MotilityParams:
    n_cortex: int = 80
    n_nucleus: int = 40
    cortex_diameter: float = 1.0    # um
    nucleus_diameter: float = 0.9   # um
    k_cortex: float = 1.0           # pN/um
    k_nucleus: float = 50.0         # pN/um
    bind_stiffen_factor: float = 100.0
    f0: float = 500.0               # protrusion force density, pN/um^2
    k_teth: float = 50.0            # ECM spring stiffness, pN/um^2
    sector_deg: float = 60.0        # half-angle of the protrusion sector about +x
    rigid: bool = False
    rigid_mode: str = "frozen"      # "frozen" or "no-slip"
    max_cycles: int = 1
    ecm_nodes: tuple = DEFAULT_ECM_NODES


@dataclass
class BlebbingParams:
    n_nodes: int = 100
    r_mem: float = 10.0       # um
    r_cortex: float = 9.90    # um
    gamma_m: float = 40.0     # pN/um
    k_m: float = 80.0         # pN/um
    gamma_c: float = 250.0    # pN/um
    k_c: float = 100.0        # pN/um
    k_adh: float = 247.0      # pN/um^3
    nu_c: float = 10.0        # pN-s/um^3
    n_break: int = 7
    equil_steps: int = 10
    sample_times: tuple = (0.0, 0.1, 1.0, 5.0, 10.0)
    pressure_samples: int = 101
    pressure_extent: float = 15.0  # profile along x=0, y in [-extent, extent]


@dataclass
class ScenarioConfig:
    scenario: str = "tethered"
    method: Method = Method.MEAN_ZERO_CORRECTION
    radius: float = 1e3       # large-circle radius R, um
    circle_points: int = 100  # M for the explicit-circle method
    mu: float = 1.0           # Pa-s
    eps: float = 0.075        # um
    seed: int = 0
    dt: float = 1e-3          # s
    dt_fine: float = 2e-4
    fine_window: float = 0.05  # s of fine stepping after a binding event
    t_end: float = 1.0
    stop_speed: float = 0.0   # um/s; 0 disables early stopping
    output_every: int = 10    # steps between recorded rows
    tethered: TetheredParams = field(default_factory=TetheredParams)
    motility: MotilityParams = field(default_factory=MotilityParams)
    blebbing: BlebbingParams = field(default_factory=BlebbingParams)

    @property
    def correction(self):
        return CorrectionConfig(method=self.method, R=self.radius,
                                circle_points=self.circle_points)

    def validate(self):
        if self.scenario not in ("tethered", "motility", "blebbing"):
            raise ConfigError(f"unknown scenario {self.scenario!r}")
        positive = {"radius": self.radius, "mu": self.mu, "eps": self.eps,
                    "dt": self.dt, "dt_fine": self.dt_fine, "t_end": self.t_end}
        for name, value in positive.items():
            if not value > 0:
                raise ConfigError(f"{name} must be positive, got {value}")
        nonneg = {"stop_speed": self.stop_speed, "fine_window": self.fine_window,
                  "tethered.k_teth": self.tethered.k_teth,
                  "motility.k_cortex": self.motility.k_cortex,
                  "motility.k_nucleus": self.motility.k_nucleus,
                  "motility.k_teth": self.motility.k_teth,
                  "motility.f0": self.motility.f0,
                  "blebbing.gamma_m": self.blebbing.gamma_m,
                  "blebbing.k_m": self.blebbing.k_m,
                  "blebbing.gamma_c": self.blebbing.gamma_c,
                  "blebbing.k_c": self.blebbing.k_c,
                  "blebbing.k_adh": self.blebbing.k_adh}
        for name, value in nonneg.items():
            if value < 0:
                raise ConfigError(f"{name} must be nonnegative, got {value}")
        if self.blebbing.nu_c <= 0:
            raise ConfigError("blebbing.nu_c must be positive")
        if self.motility.rigid_mode not in ("frozen", "no-slip"):
            raise ConfigError(f"bad rigid_mode {self.motility.rigid_mode!r}")
        if self.output_every < 1:
            raise ConfigError("output_every must be >= 1")
        return self


def default_config(scenario):
    """Scenario defaults matching the reference parameter sets."""
    cfg = ScenarioConfig(scenario=scenario)
    if scenario == "tethered":
        r = cfg.tethered.radius
        cfg.eps = 2 * np.pi * r / cfg.tethered.n_points
        cfg.mu = 1.0
        cfg.dt = 2e-4
        cfg.t_end = 0.5
        cfg.output_every = 25
    elif scenario == "motility":
        cfg.eps = 0.075
        cfg.mu = 1.0
        cfg.dt = 1e-3
        cfg.dt_fine = 2e-4
        cfg.t_end = 3.0
        cfg.stop_speed = cfg.eps
        cfg.output_every = 10
        cfg.seed = 23  # aims the protrusion at the +x node
    elif scenario == "blebbing":
        cfg.mu = 5.0
        cfg.eps = 2 * np.pi * cfg.blebbing.r_mem / cfg.blebbing.n_nodes
        cfg.dt = 1e-4
        cfg.t_end = 10.0
        cfg.output_every = 100
    else:
        raise ConfigError(f"unknown scenario {scenario!r}")
    return cfg


_ENUM_METHODS = {m.value: m for m in Method}

_RUN_KEYS = {"scenario", "method", "radius", "circle_points", "mu", "eps", "seed",
             "dt", "dt_fine", "fine_window", "t_end", "stop_speed", "output_every"}


def _parse_scalar(name, raw, current):
    try:
        if isinstance(current, bool):
            low = raw.strip().lower()
            if low not in ("true", "false", "1", "0", "yes", "no"):
                raise ValueError(raw)
            return low in ("true", "1", "yes")
        if isinstance(current, int):
            return int(raw)
        if isinstance(current, float):
            return float(raw)
        return raw.strip()
    except ValueError as exc:
        raise ConfigError(f"bad value for {name}: {raw!r}") from exc


def _parse_points(raw):
    pts = []
    for chunk in raw.replace("\n", ";").split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        xy = chunk.split(",")
        if len(xy) != 2:
            raise ConfigError(f"bad point {chunk!r}; expected 'x, y'")
        pts.append((float(xy[0]), float(xy[1])))
    return tuple(pts)


def _parse_floats(raw):
    return tuple(float(v) for v in raw.replace(";", ",").split(",") if v.strip())


def parse_config(path, scenario=None):
    """Load and validate a ScenarioConfig from an INI-style file."""
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ConfigError(f"config file not found: {path}")

    run = dict(parser["run"]) if parser.has_section("run") else {}
    scen = run.get("scenario", scenario)
    if scen is None:
        raise ConfigError("config must set scenario in [run] (or pass it explicitly)")
    if scenario is not None and scen != scenario:
        raise ConfigError(f"config scenario {scen!r} does not match requested {scenario!r}")
    cfg = default_config(scen)

    for key, raw in run.items():
        if key not in _RUN_KEYS:
            raise ConfigError(f"unknown key [run] {key}")
        if key == "scenario":
            continue
        if key == "method":
            if raw not in _ENUM_METHODS:
                raise ConfigError(f"unknown method {raw!r}; expected one of "
                                  f"{sorted(_ENUM_METHODS)}")
            cfg.method = _ENUM_METHODS[raw]
        else:
            setattr(cfg, key, _parse_scalar(f"[run] {key}", raw, getattr(cfg, key)))

    for section, sub in (("tethered", cfg.tethered), ("motility", cfg.motility),
                         ("blebbing", cfg.blebbing)):
        if not parser.has_section(section):
            continue
        known = {f.name for f in fields(sub)}
        for key, raw in parser[section].items():
            if key not in known:
                raise ConfigError(f"unknown key [{section}] {key}")
            if key == "ecm_nodes":
                setattr(sub, key, _parse_points(raw))
            elif key == "sample_times":
                setattr(sub, key, _parse_floats(raw))
            else:
                setattr(sub, key, _parse_scalar(f"[{section}] {key}", raw,
                                                getattr(sub, key)))

    for section in parser.sections():
        if section not in ("run", "tethered", "motility", "blebbing"):
            raise ConfigError(f"unknown section [{section}]")

    return cfg.validate()


def config_echo(cfg):
    """Flat dict of every setting, sufficient to reproduce the run."""
    out = {"scenario": cfg.scenario, "method": cfg.method.value}
    for f in fields(cfg):
        if f.name in ("scenario", "method", "tethered", "motility", "blebbing"):
            continue
        out[f.name] = getattr(cfg, f.name)
    sub = getattr(cfg, cfg.scenario)
    for f in fields(sub):
        value = getattr(sub, f.name)
        if isinstance(value, tuple):
            value = list(list(v) if isinstance(v, tuple) else v for v in value)
        out[f"{cfg.scenario}.{f.name}"] = value
    return out


def jittered_grid(nx, ny, spacing, jitter, seed, exclude_radius=0.0):
    """Convenience ECM node generator: jittered grid centered at the origin."""
    rng = np.random.default_rng(seed)
    xs = (np.arange(nx) - (nx - 1) / 2) * spacing
    ys = (np.arange(ny) - (ny - 1) / 2) * spacing
    pts = np.stack(np.meshgrid(xs, ys), axis=-1).reshape(-1, 2)
    pts = pts + rng.uniform(-jitter, jitter, size=pts.shape)
    if exclude_radius > 0:
        pts = pts[np.linalg.norm(pts, axis=1) > exclude_radius]
    return [tuple(p) for p in pts]
