"""Capital grids for scans, figures and synthetic data."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np


class Spacing(enum.Enum):
    LOG = "log"
    LINEAR = "linear"


@dataclass(frozen=True)
class Grid:
    k_min: float
    k_max: float
    points: int
    spacing: Spacing = Spacing.LOG

    def __post_init__(self):
        if not (np.isfinite(self.k_min) and np.isfinite(self.k_max)):
            raise ValueError("grid bounds must be finite")
        if self.k_min <= 0:
            raise ValueError(f"k_min must be > 0, got {self.k_min!r}")
        if self.k_max < self.k_min:
            raise ValueError("k_max must be >= k_min")
        if int(self.points) != self.points or self.points < 1:
            raise ValueError(f"points must be a positive integer, got {self.points!r}")
        if self.points == 1 and self.k_min != self.k_max:
            raise ValueError("a one-point grid needs k_min == k_max")
        if self.points > 1 and self.k_min == self.k_max:
            raise ValueError("a multi-point grid needs k_min < k_max")

    @classmethod
    def single(cls, k):
        return cls(k, k, 1)

    def values(self):
        if self.points == 1:
            return np.array([float(self.k_min)])
        if self.spacing is Spacing.LOG:
            k = np.geomspace(self.k_min, self.k_max, self.points)
        else:
            k = np.linspace(self.k_min, self.k_max, self.points)
        # pin endpoints exactly; geomspace can be off by an ulp
        k[0], k[-1] = self.k_min, self.k_max
        return k

    def __len__(self):
        return self.points


def log_grid(k_min, k_max, points):
    return Grid(k_min, k_max, points, Spacing.LOG).values()
