"""Design-point configuration: physical parameters, protocol parameters, geometry.

Units are fixed per field and never converted silently: channel geometry and
MT parameters in micrometers, vesicle/transmitter radii in nanometers, times
in seconds, kinesin density per square micrometer.
"""

import hashlib
import json
import math
import warnings
from dataclasses import dataclass, fields, replace


class ConfigError(ValueError):
    """Raised when a configuration violates one or more invariants."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("invalid config: " + "; ".join(self.errors))


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle in channel coordinates (micrometers)."""

    xmin: float
    ymin: float
    xmax: float
    ymax: float

    @property
    def width(self):
        return self.xmax - self.xmin

    @property
    def height(self):
        return self.ymax - self.ymin

    @property
    def center(self):
        return (0.5 * (self.xmin + self.xmax), 0.5 * (self.ymin + self.ymax))

    def contains(self, x, y):
        return self.xmin <= x <= self.xmax and self.ymin <= y <= self.ymax

    def overlaps(self, other):
        # strict interior overlap; touching edges do not count
        return (self.xmin < other.xmax and other.xmin < self.xmax
                and self.ymin < other.ymax and other.ymin < self.ymax)

    def to_list(self):
        return [self.xmin, self.ymin, self.xmax, self.ymax]

    @classmethod
    def from_list(cls, values):
        if len(values) != 4:
            raise ValueError(f"rectangle needs 4 numbers, got {len(values)}")
        return cls(*(float(v) for v in values))


@dataclass(frozen=True)
class SimConfig:
    """All physical and protocol parameters of one design point.

    channel_width/channel_height: channel extent, um
    tx_rx_separation: center-to-center distance of the zones, um (descriptive)
    loading_zone/unloading_zone: axis-aligned rectangles, um
    num_mts: number of microtubules in the channel
    mt_length: average MT filament length, um
    v_avg: average gliding speed, um/s
    diffusion_coeff: step-length diffusion coefficient, um^2/s (no default;
        must be supplied explicitly)
    persistence_length: trajectory persistence length, um
    dt: simulation time step, s
    symbol_duration: time per channel use, s
    vesicle_radius: nm; tx_node_radius: transmitter-cell radius, nm
    kinesin_density: motors per um^2
    symbol_set_size: cardinality of the input alphabet {0..symbol_set_size-1}
    trials_per_symbol: Monte Carlo trials per input symbol
    rng_seed: 64-bit unsigned root seed
    """

    channel_width: float
    channel_height: float
    tx_rx_separation: float
    loading_zone: Rect
    unloading_zone: Rect
    num_mts: int
    mt_length: float
    v_avg: float
    diffusion_coeff: float
    persistence_length: float
    dt: float
    symbol_duration: float
    vesicle_radius: float
    tx_node_radius: float
    kinesin_density: float
    symbol_set_size: int
    trials_per_symbol: int
    rng_seed: int

    def replace(self, **changes):
        return replace(self, **changes)

    def to_dict(self):
        d = {}
        for f in fields(self):
            v = getattr(self, f.name)
            d[f.name] = v.to_list() if isinstance(v, Rect) else v
        return d

    @classmethod
    def from_dict(cls, data):
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(unknown)}")
        missing = sorted(known - set(data))
        if missing:
            raise ValueError(f"missing config keys: {', '.join(missing)}")
        kwargs = {}
        for f in fields(cls):
            v = data[f.name]
            if f.name in ("loading_zone", "unloading_zone"):
                kwargs[f.name] = Rect.from_list(v)
            elif f.name in _INT_FIELDS:
                if not isinstance(v, int) or isinstance(v, bool):
                    raise ValueError(f"{f.name} must be an integer, got {v!r}")
                kwargs[f.name] = v
            else:
                kwargs[f.name] = float(v)
        return cls(**kwargs)


_INT_FIELDS = ("num_mts", "symbol_set_size", "trials_per_symbol", "rng_seed")


def cell_side_um(config):
    """Loading-grid cell side in um: one vesicle diameter."""
    return 2.0 * config.vesicle_radius * 1e-3


def loading_grid_shape(config):
    """(n_rows, n_cols) of whole grid cells that fit inside the loading zone."""
    side = cell_side_um(config)
    zone = config.loading_zone
    return int(math.floor(zone.height / side)), int(math.floor(zone.width / side))


def max_cargo(config):
    """Largest number of vesicles one MT can carry.

    Half the MT length divided by the vesicle diameter, floored, at least 1.
    """
    diameter_um = cell_side_um(config)
    return max(1, int(math.floor((config.mt_length / 2.0) / diameter_um)))


def validate_config(config):
    """Return the list of violated invariants (empty means valid).

    Also warns when v_avg*dt exceeds the loading-grid cell side, since grid
    cells can then be jumped over within a single step.
    """
    errors = []

    positive = [
        ("channel_width", config.channel_width),
        ("channel_height", config.channel_height),
        ("tx_rx_separation", config.tx_rx_separation),
        ("mt_length", config.mt_length),
        ("persistence_length", config.persistence_length),
        ("dt", config.dt),
        ("symbol_duration", config.symbol_duration),
        ("vesicle_radius", config.vesicle_radius),
        ("tx_node_radius", config.tx_node_radius),
        ("kinesin_density", config.kinesin_density),
    ]
    for name, value in positive:
        if not value > 0:
            errors.append(f"{name} must be > 0, got {value}")
    for name, value in [("v_avg", config.v_avg),
                        ("diffusion_coeff", config.diffusion_coeff)]:
        if not value >= 0:
            errors.append(f"{name} must be >= 0, got {value}")
    if config.num_mts < 1:
        errors.append(f"num_mts must be >= 1, got {config.num_mts}")
    if config.symbol_set_size < 2:
        errors.append(f"symbol_set_size must be >= 2, got {config.symbol_set_size}")
    if config.trials_per_symbol < 1:
        errors.append(
            f"trials_per_symbol must be >= 1, got {config.trials_per_symbol}")
    if not 0 <= config.rng_seed < 2**64:
        errors.append(f"rng_seed must be a 64-bit unsigned integer, got {config.rng_seed}")
    if not config.dt < config.symbol_duration:
        errors.append(
            f"dt must be < symbol_duration ({config.dt} >= {config.symbol_duration})")

    channel = Rect(0.0, 0.0, config.channel_width, config.channel_height)
    for name, zone in [("loading_zone", config.loading_zone),
                       ("unloading_zone", config.unloading_zone)]:
        if not (zone.xmin < zone.xmax and zone.ymin < zone.ymax):
            errors.append(f"{name} is degenerate: {zone.to_list()}")
        elif not (channel.contains(zone.xmin, zone.ymin)
                  and channel.contains(zone.xmax, zone.ymax)):
            errors.append(f"{name} must lie inside the channel rectangle")
    if config.loading_zone.overlaps(config.unloading_zone):
        errors.append("loading_zone and unloading_zone must be disjoint")

    if config.vesicle_radius > 0 and config.loading_zone.width > 0:
        n_rows, n_cols = loading_grid_shape(config)
        needed = config.symbol_set_size - 1
        if n_rows * n_cols < needed:
            errors.append(
                f"loading_zone admits only {n_rows * n_cols} cells of side "
                f"{cell_side_um(config)} um; need >= {needed} "
                f"(symbol_set_size - 1)")

    if not errors and config.v_avg * config.dt > cell_side_um(config):
        warnings.warn(
            f"v_avg*dt = {config.v_avg * config.dt:.3g} um exceeds the "
            f"loading-grid cell side {cell_side_um(config):.3g} um; grid "
            "cells can be jumped over within one step", stacklevel=2)

    return errors


def require_valid(config):
    errors = validate_config(config)
    if errors:
        raise ConfigError(errors)
    return config


def default_config(diffusion_coeff, **overrides):
    """Baseline design point: 20x60 um channel, 15 MTs of 10 um, 41 symbols.

    The step-length diffusion coefficient has no accepted literature default
    and must be passed explicitly. Zone strips are 20x10 um, inset so their
    centers sit 40 um apart.
    """
    base = SimConfig(
        channel_width=20.0,
        channel_height=60.0,
        tx_rx_separation=40.0,
        loading_zone=Rect(0.0, 5.0, 20.0, 15.0),
        unloading_zone=Rect(0.0, 45.0, 20.0, 55.0),
        num_mts=15,
        mt_length=10.0,
        v_avg=0.85,
        diffusion_coeff=float(diffusion_coeff),
        persistence_length=111.0,
        dt=0.1,
        symbol_duration=250.0,
        vesicle_radius=500.0,
        tx_node_radius=5000.0,
        kinesin_density=100.0,
        symbol_set_size=41,
        trials_per_symbol=1000,
        rng_seed=0,
    )
    return base.replace(**overrides) if overrides else base


def config_hash(config):
    """Stable hex digest identifying a design point (all fields included)."""
    canon = json.dumps(config.to_dict(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode("ascii")).hexdigest()


def save_config(config, path):
    with open(path, "w") as fh:
        json.dump(config.to_dict(), fh, indent=2)
        fh.write("\n")


def load_config(path):
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ValueError(f"{path}: config file must hold a JSON object")
    return SimConfig.from_dict(data)
