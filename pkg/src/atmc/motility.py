"""Monte Carlo simulation of MT gliding, vesicle pickup, and drop-off.

One symbol interval: x vesicles are anchored into distinct loading-grid
cells, the MTs glide from random starting poses for floor(tau/dt) steps,
pick up vesicles whose cells their heads cross (up to their cargo limit),
and release everything aboard when they reach the unloading zone. The
arrival count by time tau is the channel output.
"""

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .channel import ChannelPmf
from .config import (cell_side_um, config_hash, loading_grid_shape, max_cargo,
                     require_valid)
from .rng import stream

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class MtState:
    """Head position (um), heading (rad), and cargo count of one MT."""

    x: float
    y: float
    theta: float
    cargo: int = 0


@dataclass(frozen=True)
class SymbolOutcome:
    """Released and received counts of one trial."""

    x_sent: int
    y_received: int
    trial_index: int

    def __post_init__(self):
        if not 0 <= self.y_received <= self.x_sent:
            raise ValueError(
                f"need 0 <= y <= x, got y={self.y_received}, x={self.x_sent}")


@dataclass(frozen=True)
class LoadingGrid:
    """Square lattice of vesicle anchor cells covering the loading zone."""

    x0: float
    y0: float
    cell_side: float
    n_rows: int
    n_cols: int

    @property
    def n_cells(self):
        return self.n_rows * self.n_cols

    @classmethod
    def for_config(cls, config):
        n_rows, n_cols = loading_grid_shape(config)
        zone = config.loading_zone
        return cls(x0=zone.xmin, y0=zone.ymin, cell_side=cell_side_um(config),
                   n_rows=n_rows, n_cols=n_cols)

    def place(self, x_count, rng):
        """Occupancy lattice with x_count vesicles in distinct uniform cells."""
        if x_count > self.n_cells:
            raise ValueError(
                f"cannot anchor {x_count} vesicles in {self.n_cells} cells")
        occupancy = np.zeros((self.n_rows, self.n_cols), dtype=np.uint8)
        cells = rng.choice(self.n_cells, size=x_count, replace=False)
        occupancy.reshape(-1)[cells] = 1
        return occupancy


def step_noise_params(config):
    """(mean, std) of the step length and std of the heading change."""
    mu = config.v_avg * config.dt
    sigma_s = math.sqrt(2.0 * config.diffusion_coeff * config.dt)
    sigma_th = math.sqrt(config.v_avg * config.dt / config.persistence_length)
    return mu, sigma_s, sigma_th


def step_mt(state, config, rng):
    """Advance one MT by one time step.

    Draws the step length then the heading change from the configured
    normal laws and reflects off the channel walls. Cargo is untouched.
    """
    mu, sigma_s, sigma_th = step_noise_params(config)
    ds = rng.normal(mu, sigma_s)
    dtheta = rng.normal(0.0, sigma_th)
    nx, ny, nth = kernels.move_mt(state.x, state.y, state.theta, ds, dtheta,
                                  config.channel_width, config.channel_height)
    return MtState(x=nx, y=ny, theta=nth, cargo=state.cargo)


@dataclass(frozen=True)
class TrialTrace:
    """Full per-step record of one trial, for debugging and visualization.

    trajectory[t, m] holds (x, y, theta, cargo) of MT m after step t
    (t = 0 is the initial placement); tallies[t] holds the
    (anchored, carried, delivered) totals at the same instant.
    """

    outcome: SymbolOutcome
    trajectory: np.ndarray
    tallies: np.ndarray

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["step", "mt_id", "x", "y", "theta", "cargo"])
            n_steps, n_mts, _ = self.trajectory.shape
            for t in range(n_steps):
                for m in range(n_mts):
                    x, y, theta, cargo = self.trajectory[t, m]
                    writer.writerow([t, m, repr(float(x)), repr(float(y)),
                                     repr(float(theta)), int(cargo)])


def _simulate_trial(config, x_value, trial_index, record=False):
    """Run one trial and return (outcome, trace-or-None)."""
    rng = stream(config.rng_seed, x_value, trial_index)
    grid = LoadingGrid.for_config(config)
    occupancy = grid.place(x_value, rng)

    n_mts = config.num_mts
    xs = rng.uniform(0.0, config.channel_width, n_mts)
    ys = rng.uniform(0.0, config.channel_height, n_mts)
    thetas = rng.uniform(0.0, TWO_PI, n_mts)
    cargo = np.zeros(n_mts, dtype=np.int64)

    # One interleaved block of standard normals, scaled afterwards: trials
    # that differ only in symbol_duration consume the same draw prefix, so a
    # longer symbol extends the shorter run rather than resampling it.
    n_steps = int(math.floor(config.symbol_duration / config.dt))
    mu, sigma_s, sigma_th = step_noise_params(config)
    z = rng.standard_normal((n_steps, n_mts, 2))
    ds = mu + sigma_s * z[:, :, 0]
    dtheta = sigma_th * z[:, :, 1]

    if record:
        traj = np.empty((n_steps + 1, n_mts, 4), dtype=np.float64)
        tallies = np.empty((n_steps + 1, 3), dtype=np.int64)
    else:
        traj = np.empty((1, 1, 4), dtype=np.float64)
        tallies = np.empty((1, 3), dtype=np.int64)

    zone = config.unloading_zone
    delivered = kernels.simulate_steps(
        ds, dtheta, xs, ys, thetas, cargo, occupancy,
        grid.x0, grid.y0, grid.cell_side, grid.n_rows, grid.n_cols,
        zone.xmin, zone.ymin, zone.xmax, zone.ymax,
        config.channel_width, config.channel_height, max_cargo(config),
        traj, tallies, record)

    outcome = SymbolOutcome(x_sent=x_value, y_received=int(delivered),
                            trial_index=trial_index)
    if record:
        return outcome, TrialTrace(outcome=outcome, trajectory=traj,
                                   tallies=tallies)
    return outcome, None


def run_symbol(config, x, trial_index):
    """Simulate one symbol interval; deterministic in (seed, x, trial_index)."""
    require_valid(config)
    if not 0 <= x <= config.symbol_set_size - 1:
        raise ValueError(
            f"x must be in [0, {config.symbol_set_size - 1}], got {x}")
    outcome, _ = _simulate_trial(config, x, trial_index)
    return outcome


def run_symbol_detailed(config, x, trial_index):
    """Like run_symbol but also returns the full TrialTrace."""
    require_valid(config)
    if not 0 <= x <= config.symbol_set_size - 1:
        raise ValueError(
            f"x must be in [0, {config.symbol_set_size - 1}], got {x}")
    _, trace = _simulate_trial(config, x, trial_index, record=True)
    return trace


def estimate_channel(config, workers=1):
    """Monte Carlo estimate of the channel matrix P(y | x).

    Runs trials_per_symbol independent trials for every input symbol and
    returns the empirical row distributions over y in {0..x_max-1}. The
    result is a pure function of the config (workers only changes wall
    time: every trial owns its own stream and the integer tallies are
    order-free).
    """
    require_valid(config)
    x_max = config.symbol_set_size
    trials = config.trials_per_symbol
    counts = np.zeros((x_max, x_max), dtype=np.int64)

    tasks = [(xv, t) for xv in range(x_max) for t in range(trials)]
    if workers <= 1:
        for xv, t in tasks:
            outcome, _ = _simulate_trial(config, xv, t)
            counts[xv, outcome.y_received] += 1
    else:
        def job(task):
            xv, t = task
            outcome, _ = _simulate_trial(config, xv, t)
            return xv, outcome.y_received

        with ThreadPoolExecutor(max_workers=workers) as pool:
            for xv, y in pool.map(job, tasks, chunksize=64):
                counts[xv, y] += 1

    matrix = counts / float(trials)
    return ChannelPmf(matrix=matrix, x_max=x_max, seed=config.rng_seed,
                      trials=trials, config_hash=config_hash(config))
