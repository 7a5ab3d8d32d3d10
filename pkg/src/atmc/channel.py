"""Empirical channel law P(y | x) with provenance metadata."""

import json
from dataclasses import dataclass

import numpy as np

ROW_SUM_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ChannelPmf:
    """Conditional distribution of received count y given released count x.

    matrix[x, y] for x, y in {0..x_max-1}; every row sums to one. seed,
    trials, and config_hash record how the estimate was produced.
    """

    matrix: np.ndarray
    x_max: int
    seed: int
    trials: int
    config_hash: str

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        object.__setattr__(self, "matrix", m)
        if m.ndim != 2 or m.shape[0] != self.x_max:
            raise ValueError(
                f"matrix must have {self.x_max} rows, got shape {m.shape}")
        if np.any(m < 0):
            raise ValueError("channel matrix entries must be >= 0")
        bad = np.abs(m.sum(axis=1) - 1.0) > ROW_SUM_TOL
        if np.any(bad):
            rows = np.nonzero(bad)[0].tolist()
            raise ValueError(f"channel rows {rows} do not sum to 1")

    def to_dict(self):
        return {
            "x_max": self.x_max,
            "matrix": [float(v) for v in self.matrix.reshape(-1)],
            "seed": self.seed,
            "trials": self.trials,
            "config_hash": self.config_hash,
        }

    @classmethod
    def from_dict(cls, data):
        required = {"x_max", "matrix", "seed", "trials", "config_hash"}
        missing = sorted(required - set(data))
        if missing:
            raise ValueError(f"channel file missing keys: {', '.join(missing)}")
        x_max = int(data["x_max"])
        flat = np.asarray(data["matrix"], dtype=float)
        if flat.size % x_max != 0:
            raise ValueError(
                f"matrix length {flat.size} is not a multiple of x_max {x_max}")
        return cls(matrix=flat.reshape(x_max, -1), x_max=x_max,
                   seed=int(data["seed"]), trials=int(data["trials"]),
                   config_hash=str(data["config_hash"]))

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh)
            fh.write("\n")

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def as_matrix(channel):
    """Accept a ChannelPmf or a bare row-stochastic array."""
    if isinstance(channel, ChannelPmf):
        return channel.matrix
    m = np.asarray(channel, dtype=float)
    if m.ndim != 2:
        raise ValueError(f"channel matrix must be 2-D, got shape {m.shape}")
    return m
