"""Design-point evaluation, parameter sweeps, and result persistence.

A design point runs the full pipeline: Monte Carlo channel estimate,
capacity and optimal input law, posterior means, energy total, and the
rate-per-energy figures of merit. Sweeps walk a Cartesian grid of design
parameters and never let one bad point kill the run.
"""

import csv
import json
import os
import tempfile
from dataclasses import dataclass
from itertools import product

import numpy as np

from .channel import ChannelPmf
from .config import SimConfig, config_hash, require_valid
from .energy import EnergyBreakdown, power, total_energy
from .infotheory import blahut_arimoto, posterior_means
from .motility import estimate_channel
from .rng import derive_seed

SWEEPABLE = ("vesicle_radius", "symbol_duration", "symbol_set_size",
             "kinesin_density")


@dataclass(frozen=True, eq=False)
class DesignResult:
    """Everything the pipeline produces for one design point."""

    config: SimConfig
    capacity: float            # bits
    p_x: np.ndarray            # capacity-achieving input law
    mean_x: float
    mean_y: float
    energy: EnergyBreakdown
    power: float               # watts
    bits_per_joule: float
    bits_per_sec_per_joule: float

    def to_dict(self):
        return {
            "config": self.config.to_dict(),
            "capacity_bits": self.capacity,
            "p_x": [float(v) for v in self.p_x],
            "mean_x": self.mean_x,
            "mean_y": self.mean_y,
            "energy": self.energy.to_dict(),
            "power_w": self.power,
            "bits_per_joule": self.bits_per_joule,
            "bits_per_sec_per_joule": self.bits_per_sec_per_joule,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            config=SimConfig.from_dict(data["config"]),
            capacity=float(data["capacity_bits"]),
            p_x=np.asarray(data["p_x"], dtype=float),
            mean_x=float(data["mean_x"]),
            mean_y=float(data["mean_y"]),
            energy=EnergyBreakdown.from_dict(data["energy"]),
            power=float(data["power_w"]),
            bits_per_joule=float(data["bits_per_joule"]),
            bits_per_sec_per_joule=float(data["bits_per_sec_per_joule"]),
        )


def _cache_path(cache_dir, config):
    return os.path.join(cache_dir, config_hash(config) + ".json")


def _cache_store(cache_dir, config, channel):
    os.makedirs(cache_dir, exist_ok=True)
    path = _cache_path(cache_dir, config)
    fd, tmp = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(channel.to_dict(), fh)
            fh.write("\n")
        os.replace(tmp, path)  # atomic: concurrent writers race harmlessly
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def get_channel(config, workers=1, cache_dir=None):
    """Channel matrix for a config, through the on-disk cache when enabled."""
    if cache_dir is not None:
        path = _cache_path(cache_dir, config)
        if os.path.exists(path):
            return ChannelPmf.load(path)
    channel = estimate_channel(config, workers=workers)
    if cache_dir is not None:
        _cache_store(cache_dir, config, channel)
    return channel


def evaluate_design(config, workers=1, cache_dir=None, channel=None,
                    ba_tol=1e-6, ba_max_iter=50000):
    """Run the full pipeline for one design point.

    channel may be injected to reuse or pin an existing estimate; it must
    match the config's symbol-set size. Deterministic given config.rng_seed.

    ba_tol defaults looser here than in blahut_arimoto itself: empirical
    channels routinely tie several symbols at capacity, where the iteration
    converges sublinearly, and 1e-6 bits is far below Monte Carlo noise.
    """
    require_valid(config)
    if channel is None:
        channel = get_channel(config, workers=workers, cache_dir=cache_dir)
    elif channel.x_max != config.symbol_set_size:
        raise ValueError(
            f"injected channel has x_max={channel.x_max}, config has "
            f"{config.symbol_set_size}")

    capacity, p_x, _ = blahut_arimoto(channel, tol=ba_tol,
                                      max_iter=ba_max_iter)
    mean_x, mean_y = posterior_means(p_x, channel)
    breakdown = total_energy(config, mean_x, mean_y)
    watts = power(breakdown.total, config.symbol_duration)
    joules = breakdown.total.joules
    return DesignResult(
        config=config,
        capacity=capacity,
        p_x=p_x,
        mean_x=mean_x,
        mean_y=mean_y,
        energy=breakdown,
        power=watts,
        bits_per_joule=capacity / joules,
        bits_per_sec_per_joule=capacity / (config.symbol_duration * joules),
    )


@dataclass(frozen=True)
class SweepSpec:
    """A base design point plus value lists for any subset of the sweepable
    parameters (vesicle_radius, symbol_duration, symbol_set_size,
    kinesin_density)."""

    base: SimConfig
    vesicle_radius: tuple = ()
    symbol_duration: tuple = ()
    symbol_set_size: tuple = ()
    kinesin_density: tuple = ()

    def swept(self):
        """(name, values) pairs actually swept, in canonical order."""
        out = []
        for name in SWEEPABLE:
            values = tuple(getattr(self, name))
            if values:
                out.append((name, values))
        return out

    def points(self):
        """Lexicographically ordered (index, {field: value}) grid points."""
        swept = self.swept()
        if not swept:
            yield 0, {}
            return
        names = [name for name, _ in swept]
        for index, combo in enumerate(product(*(vals for _, vals in swept))):
            yield index, dict(zip(names, combo))

    def config_at(self, index, values):
        seed = derive_seed(self.base.rng_seed, index)
        return self.base.replace(rng_seed=seed, **values)

    def to_dict(self):
        sweep = {name: list(values) for name, values in self.swept()}
        return {"base": self.base.to_dict(), "sweep": sweep}

    @classmethod
    def from_dict(cls, data):
        extra = sorted(set(data) - {"base", "sweep"})
        if extra:
            raise ValueError(f"unknown sweep-spec keys: {', '.join(extra)}")
        if "base" not in data:
            raise ValueError("sweep spec needs a 'base' config object")
        base = SimConfig.from_dict(data["base"])
        sweep = data.get("sweep", {})
        bad = sorted(set(sweep) - set(SWEEPABLE))
        if bad:
            raise ValueError(
                f"cannot sweep {', '.join(bad)}; sweepable parameters are "
                f"{', '.join(SWEEPABLE)}")
        kwargs = {}
        for name in SWEEPABLE:
            values = sweep.get(name, ())
            if name == "symbol_set_size":
                kwargs[name] = tuple(int(v) for v in values)
            else:
                kwargs[name] = tuple(float(v) for v in values)
        return cls(base=base, **kwargs)


def run_sweep(spec, workers=1, cache_dir=None, on_point=None,
              ba_tol=1e-6, ba_max_iter=50000):
    """Evaluate every grid point of a sweep.

    Per-point root seeds are derived from (base seed, point index), so every
    point is reproducible on its own and appending values to the grid never
    changes existing rows. Failing points are recorded and skipped.

    Returns (results, failures); failures are dicts with index, point, error.
    """
    points = list(spec.points())
    results = []
    failures = []
    for index, values in points:
        config = spec.config_at(index, values)
        if on_point is not None:
            on_point(index, len(points), values)
        try:
            results.append(evaluate_design(config, workers=workers,
                                           cache_dir=cache_dir,
                                           ba_tol=ba_tol,
                                           ba_max_iter=ba_max_iter))
        except Exception as exc:
            failures.append({"index": index, "point": dict(values),
                             "error": f"{type(exc).__name__}: {exc}"})
    return results, failures


CSV_COLUMNS = ["vesicle_diameter_nm", "tau_s", "x_max", "sigma_k",
               "capacity_bits", "mean_x", "mean_y", "energy_total_pJ",
               "power_fW", "bits_per_J", "bits_per_s_per_J", "seed",
               "trials"]


def _csv_row(result):
    cfg = result.config
    values = [2.0 * cfg.vesicle_radius, cfg.symbol_duration,
              cfg.symbol_set_size, cfg.kinesin_density, result.capacity,
              result.mean_x, result.mean_y, result.energy.total.pj,
              result.power * 1e15, result.bits_per_joule,
              result.bits_per_sec_per_joule, cfg.rng_seed,
              cfg.trials_per_symbol]
    row = []
    for v in values:
        row.append(f"{v:.6g}" if isinstance(v, float) else str(v))
    return row


def write_csv(results, fh):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for result in results:
        writer.writerow(_csv_row(result))


def write_json(results, fh):
    json.dump([r.to_dict() for r in results], fh, indent=2)
    fh.write("\n")


def emit(results, format, path):
    """Write results as CSV (fixed column set) or JSON (full records)."""
    results = list(results)
    if not results:
        raise ValueError("no results to emit")
    if format == "csv":
        with open(path, "w", newline="") as fh:
            write_csv(results, fh)
    elif format == "json":
        with open(path, "w") as fh:
            write_json(results, fh)
    else:
        raise ValueError(f"format must be 'csv' or 'json', got {format!r}")


# Named sweep grids matching the figure-style experiments: an energy/power
# view over symbol duration for the four vesicle sizes, a symbol-set-size
# view at tau = 250 s, and the rate-per-energy view over symbol duration.
PRESETS = {
    "fig2": {"vesicle_radius": [125.0, 250.0, 500.0, 1000.0],
             "symbol_duration": [125.0, 250.0, 375.0, 500.0]},
    "fig3": {"vesicle_radius": [125.0, 250.0, 500.0, 1000.0],
             "symbol_duration": [125.0, 250.0, 375.0, 500.0]},
    "fig4": {"symbol_set_size": [2, 6, 11, 21, 41, 61, 81]},
    "fig5": {"vesicle_radius": [125.0, 250.0, 500.0, 1000.0],
             "symbol_duration": [125.0, 250.0, 375.0, 500.0]},
}


def preset_sweep(name, base):
    """Named figure-style SweepSpec over the given base config."""
    if name not in PRESETS:
        raise ValueError(
            f"unknown preset {name!r}; choose from {', '.join(sorted(PRESETS))}")
    base_overrides = {"symbol_set_size": 41}
    if name == "fig4":
        base_overrides = {"symbol_set_size": 41, "symbol_duration": 250.0,
                          "vesicle_radius": 500.0}
    return SweepSpec.from_dict({
        "base": base.replace(**base_overrides).to_dict(),
        "sweep": PRESETS[name],
    })
