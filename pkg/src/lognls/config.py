"""Run configuration: a flat sectioned key = value format.

Sections are [physics], [grid], [evolve], [scenario], [output] and, for
the ad-hoc residual command, [residual]. Every key is validated before any
computation runs; unknown sections or keys are errors carrying the line
number, so typos cannot silently fall back to defaults. Parsing is
locale-independent (decimal point only).

A minimal config is just:

    [scenario]
    name = free_gausson

which applies all defaults (hbar=1, mass=1, b=0.5, dt=1e-3 and a
scenario-appropriate grid).
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .core import Grid1D, PhysicalParams, make_grid
from .errors import ConfigError
from .evolve import SCHEMES, EvolveConfig

SCENARIO_NAMES = (
    "free_gausson",
    "mass_sweep",
    "plane_wave",
    "superposition",
    "knife_edge",
)

# per-scenario option keys: name -> {key: (default, type)}
SCENARIO_OPTIONS: dict[str, dict[str, tuple]] = {
    "free_gausson": {
        "k": (1.0, float),
        "T": (5.0, float),
        "c": (1.0, float),
        "d": (0.0, float),
        "shape_b": (0.5, float),
    },
    "mass_sweep": {
        "n_masses": (8, int),
        "mass_ratio": (2.0, float),
        "mass_start": (1.0, float),
    },
    "plane_wave": {
        "k": (0.0, float),
        "T": (2.0, float),
    },
    "superposition": {
        "x0": (8.0, float),
        "probe_dt": (1e-4, float),
        "shape_b": (0.5, float),
    },
    "knife_edge": {
        "T": (2.0, float),
        "envelope_width": (12.0, float),
        "edge": (0.0, float),
        "center": (0.0, float),
    },
}

# grids used when the config has no [grid] section
DEFAULT_GRID = (-62.83, 62.83, 1024)
SCENARIO_GRIDS: dict[str, tuple[float, float, int]] = {
    "plane_wave": (0.0, 2 * math.pi, 64),
    "mass_sweep": (-20.0, 20.0, 1024),
    "knife_edge": (-64.0, 64.0, 2048),
}


@dataclass
class PhysicsSection:
    hbar: float = 1.0
    mass: float = 1.0
    b: float = 0.5
    potential: str = "none"


@dataclass
class GridSection:
    x_min: float
    x_max: float
    n_points: int


@dataclass
class EvolveSection:
    dt: float = 1e-3
    scheme: str = "split-step"
    record_every: int = 0
    log_clamp: float = 1e-30
    cn_tol: float = 1e-12
    cn_max_iter: int = 50
    n_steps: int | None = None


@dataclass
class ScenarioSection:
    name: str
    options: dict = field(default_factory=dict)
    # option keys the user actually wrote; bookkeeping, not identity
    explicit: tuple = field(default=(), compare=False)


@dataclass
class OutputSection:
    dir: str = "out"


@dataclass
class ResidualSection:
    snapshots: str
    t_center: float | None = None
    threshold: float | None = None


@dataclass
class RunConfig:
    physics: PhysicsSection
    grid: GridSection | None
    evolve: EvolveSection
    scenario: ScenarioSection | None
    output: OutputSection
    residual: ResidualSection | None

    def resolve_grid(self) -> Grid1D:
        """The grid actually used: explicit [grid] or the scenario default."""
        if self.grid is not None:
            return make_grid(self.grid.x_min, self.grid.x_max, self.grid.n_points)
        name = self.scenario.name if self.scenario else ""
        x_min, x_max, n = SCENARIO_GRIDS.get(name, DEFAULT_GRID)
        return make_grid(x_min, x_max, n)

    def physical_params(self, grid: Grid1D, b: float | None = None) -> PhysicalParams:
        """PhysicalParams with the potential sampled on the grid.

        b overrides the configured nonlinearity (scenarios that compare a
        linear against a nonlinear run use this).
        """
        pot = sample_potential(self.physics.potential, grid)
        return PhysicalParams(
            hbar=self.physics.hbar,
            mass=self.physics.mass,
            b=self.physics.b if b is None else b,
            potential=pot,
        )

    def evolve_config(self, T: float, record_every: int | None = None) -> EvolveConfig:
        """EvolveConfig for a run of duration T (or explicit n_steps)."""
        ev = self.evolve
        n_steps = ev.n_steps if ev.n_steps is not None else max(1, round(T / ev.dt))
        return EvolveConfig(
            dt=ev.dt,
            n_steps=n_steps,
            scheme=ev.scheme,
            log_clamp=ev.log_clamp,
            cn_tol=ev.cn_tol,
            cn_max_iter=ev.cn_max_iter,
            record_every=ev.record_every if record_every is None else record_every,
        )

    def option(self, key: str):
        return self.scenario.options[key]


def sample_potential(spec: str, grid: Grid1D) -> np.ndarray | None:
    """Sample a potential spec string on the grid.

    Recognized forms: "none" (no potential) and "harmonic:<coef>" meaning
    V(x) = 0.5 * coef * x^2.
    """
    if spec == "none":
        return None
    if spec.startswith("harmonic:"):
        try:
            coef = float(spec.split(":", 1)[1])
        except ValueError:
            raise ConfigError(f"bad harmonic coefficient in potential spec {spec!r}")
        return 0.5 * coef * grid.x**2
    raise ConfigError(
        f"unknown potential spec {spec!r} (expected 'none' or 'harmonic:<coef>')"
    )


_FLOAT_KEYS = {
    "physics": {"hbar": float, "mass": float, "b": float, "potential": str},
    "grid": {"x_min": float, "x_max": float, "n_points": int},
    "evolve": {
        "dt": float,
        "scheme": str,
        "record_every": int,
        "log_clamp": float,
        "cn_tol": float,
        "cn_max_iter": int,
        "n_steps": int,
    },
    "output": {"dir": str},
    "residual": {"snapshots": str, "t_center": float, "threshold": float},
}


def _convert(raw: str, typ, key: str, line: int):
    if typ is str:
        return raw
    try:
        if typ is int:
            return int(raw)
        value = float(raw)
    except ValueError:
        raise ConfigError(f"malformed number {raw!r} for key {key!r}", line)
    if not math.isfinite(value):
        raise ConfigError(f"key {key!r} must be finite, got {raw!r}", line)
    return value


def _scan(text: str):
    """First pass: (section, key) -> (raw value, line number), strict."""
    sections: dict[str, dict[str, tuple[str, int]]] = {}
    section_lines: dict[str, int] = {}
    current = None
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name not in (*_FLOAT_KEYS, "scenario"):
                raise ConfigError(f"unknown section [{name}]", lineno)
            if name in sections:
                raise ConfigError(f"duplicate section [{name}]", lineno)
            sections[name] = {}
            section_lines[name] = lineno
            current = name
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {line!r}", lineno)
        if current is None:
            raise ConfigError("key before any [section] header", lineno)
        key, _, raw = line.partition("=")
        key = key.strip()
        raw = raw.strip()
        if not key:
            raise ConfigError("empty key", lineno)
        if not raw:
            raise ConfigError(f"empty value for key {key!r}", lineno)
        if key in sections[current]:
            raise ConfigError(f"duplicate key {key!r} in [{current}]", lineno)
        sections[current][key] = (raw, lineno)
    return sections, section_lines


def _take(entries: dict, section: str, key: str):
    """Pop a typed value (or None) from the scanned entries."""
    if key not in entries:
        return None, None
    raw, line = entries.pop(key)
    return _convert(raw, _FLOAT_KEYS[section][key], key, line), line


def _build_section(entries: dict, section: str, cls, **overrides):
    kwargs = {}
    lines = {}
    for key in _FLOAT_KEYS[section]:
        value, line = _take(entries, section, key)
        if value is not None:
            kwargs[key] = value
            lines[key] = line
    for key, (raw, line) in entries.items():
        raise ConfigError(f"unknown key {key!r} in [{section}]", line)
    kwargs.update(overrides)
    return cls(**kwargs), lines


def _positive(value, name, line):
    if not (value > 0):
        raise ConfigError(f"{name} must be positive, got {value}", line)


def parse_config(text: str, scenario: str | None = None) -> RunConfig:
    """Parse and fully validate a config; apply documented defaults.

    scenario, when given, supplies or must match the [scenario] name key
    (this is how the CLI's --scenario flag is reconciled with the file).
    """
    sections, section_lines = _scan(text)

    physics, phys_lines = _build_section(sections.pop("physics", {}), "physics", PhysicsSection)
    if not (physics.hbar > 0):
        raise ConfigError(f"hbar must be positive, got {physics.hbar}", phys_lines.get("hbar"))
    if not (physics.mass > 0):
        raise ConfigError(f"mass must be positive, got {physics.mass}", phys_lines.get("mass"))
    if physics.b < 0:
        raise ConfigError(f"b must be non-negative, got {physics.b}", phys_lines.get("b"))
    if physics.potential != "none" and not physics.potential.startswith("harmonic:"):
        raise ConfigError(
            f"unknown potential spec {physics.potential!r}",
            phys_lines.get("potential"),
        )

    grid = None
    if "grid" in sections:
        grid_entries = sections.pop("grid")
        grid_line = section_lines["grid"]
        gkw, grid_lines = _build_section(grid_entries, "grid", dict)
        for key in ("x_min", "x_max", "n_points"):
            if key not in gkw:
                raise ConfigError(f"[grid] is missing key {key!r}", grid_line)
        if not (gkw["x_max"] > gkw["x_min"]):
            raise ConfigError(
                f"x_max ({gkw['x_max']}) must exceed x_min ({gkw['x_min']})",
                grid_lines.get("x_max"),
            )
        n = gkw["n_points"]
        if n < 16 or n & (n - 1):
            raise ConfigError(
                f"n_points must be a power of two >= 16, got {n}",
                grid_lines.get("n_points"),
            )
        grid = GridSection(**gkw)

    evolve, ev_lines = _build_section(sections.pop("evolve", {}), "evolve", EvolveSection)
    _positive(evolve.dt, "dt", ev_lines.get("dt"))
    if evolve.scheme not in SCHEMES:
        raise ConfigError(
            f"scheme must be one of {SCHEMES}, got {evolve.scheme!r}",
            ev_lines.get("scheme"),
        )
    if not (0.0 < evolve.log_clamp <= 1e-6):
        raise ConfigError(
            f"log_clamp must lie in (0, 1e-6], got {evolve.log_clamp}",
            ev_lines.get("log_clamp"),
        )
    _positive(evolve.cn_tol, "cn_tol", ev_lines.get("cn_tol"))
    if evolve.cn_max_iter < 1:
        raise ConfigError(
            f"cn_max_iter must be >= 1, got {evolve.cn_max_iter}",
            ev_lines.get("cn_max_iter"),
        )
    if evolve.record_every < 0:
        raise ConfigError(
            f"record_every must be >= 0, got {evolve.record_every}",
            ev_lines.get("record_every"),
        )
    if evolve.n_steps is not None and evolve.n_steps < 1:
        raise ConfigError(
            f"n_steps must be >= 1, got {evolve.n_steps}", ev_lines.get("n_steps")
        )

    scen = _parse_scenario(sections.pop("scenario", None), section_lines.get("scenario"), scenario)
    output, _ = _build_section(sections.pop("output", {}), "output", OutputSection)
    if not output.dir:
        raise ConfigError("output dir must not be empty")

    residual = None
    if "residual" in sections:
        res_entries = sections.pop("residual")
        res_line = section_lines["residual"]
        rkw, _ = _build_section(res_entries, "residual", dict)
        if "snapshots" not in rkw:
            raise ConfigError("[residual] is missing key 'snapshots'", res_line)
        residual = ResidualSection(**rkw)

    return RunConfig(
        physics=physics,
        grid=grid,
        evolve=evolve,
        scenario=scen,
        output=output,
        residual=residual,
    )


def _parse_scenario(entries, section_line, override: str | None):
    if entries is None and override is None:
        return None
    entries = dict(entries or {})
    name = override
    if "name" in entries:
        raw, line = entries.pop("name")
        if override is not None and raw != override:
            raise ConfigError(
                f"scenario name {raw!r} conflicts with requested {override!r}", line
            )
        name = raw
        section_line = line
    if name is None:
        raise ConfigError("[scenario] is missing key 'name'", section_line)
    if name not in SCENARIO_NAMES:
        raise ConfigError(
            f"unknown scenario {name!r} (choose from {', '.join(SCENARIO_NAMES)})",
            section_line,
        )
    spec = SCENARIO_OPTIONS[name]
    options = {}
    explicit = []
    for key, (default, typ) in spec.items():
        if key in entries:
            raw, line = entries.pop(key)
            value = _convert(raw, typ, key, line)
            _validate_option(name, key, value, line)
            options[key] = value
            explicit.append(key)
        else:
            options[key] = default
    for key, (raw, line) in entries.items():
        raise ConfigError(f"unknown key {key!r} for scenario {name!r}", line)
    return ScenarioSection(name=name, options=options, explicit=tuple(explicit))


def _validate_option(name: str, key: str, value, line: int):
    if key in ("T", "c", "probe_dt", "envelope_width", "mass_start", "shape_b", "x0"):
        if not (value > 0):
            raise ConfigError(f"{key} must be positive, got {value}", line)
    if key == "n_masses" and value < 3:
        raise ConfigError(f"n_masses must be >= 3 for a slope fit, got {value}", line)
    if key == "mass_ratio" and (value <= 0 or value == 1.0):
        raise ConfigError(
            f"mass_ratio must be positive and != 1, got {value}", line
        )


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def config_items(cfg: RunConfig) -> list[tuple[str, str, str]]:
    """Canonical (section, key, rendered value) triples, every key once.

    Optional sections that are absent contribute nothing; None-valued
    optional keys are skipped. Used by both the renderer and the manifest.
    """
    items: list[tuple[str, str, str]] = []
    p = cfg.physics
    items += [
        ("physics", "hbar", _fmt(p.hbar)),
        ("physics", "mass", _fmt(p.mass)),
        ("physics", "b", _fmt(p.b)),
        ("physics", "potential", p.potential),
    ]
    if cfg.grid is not None:
        g = cfg.grid
        items += [
            ("grid", "x_min", _fmt(g.x_min)),
            ("grid", "x_max", _fmt(g.x_max)),
            ("grid", "n_points", _fmt(g.n_points)),
        ]
    e = cfg.evolve
    items += [
        ("evolve", "dt", _fmt(e.dt)),
        ("evolve", "scheme", e.scheme),
        ("evolve", "record_every", _fmt(e.record_every)),
        ("evolve", "log_clamp", _fmt(e.log_clamp)),
        ("evolve", "cn_tol", _fmt(e.cn_tol)),
        ("evolve", "cn_max_iter", _fmt(e.cn_max_iter)),
    ]
    if e.n_steps is not None:
        items.append(("evolve", "n_steps", _fmt(e.n_steps)))
    if cfg.scenario is not None:
        items.append(("scenario", "name", cfg.scenario.name))
        for key in SCENARIO_OPTIONS[cfg.scenario.name]:
            items.append(("scenario", key, _fmt(cfg.scenario.options[key])))
    items.append(("output", "dir", cfg.output.dir))
    if cfg.residual is not None:
        r = cfg.residual
        items.append(("residual", "snapshots", r.snapshots))
        if r.t_center is not None:
            items.append(("residual", "t_center", _fmt(r.t_center)))
        if r.threshold is not None:
            items.append(("residual", "threshold", _fmt(r.threshold)))
    return items


def render_config(cfg: RunConfig) -> str:
    """Serialize a RunConfig so parse_config reproduces it exactly.

    Every resolved value is written out, so the round trip is independent
    of which keys the original file spelled explicitly (scenario option
    keys all come back marked explicit; values are unchanged).
    """
    lines = []
    current = None
    for section, key, value in config_items(cfg):
        if section != current:
            if current is not None:
                lines.append("")
            lines.append(f"[{section}]")
            current = section
        lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"
