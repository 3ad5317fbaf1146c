"""Code-capacity Pauli channels and the seeded per-trial RNG contract.

Trial i of a Monte Carlo run draws from ``random.Random`` seeded with
``derive_seed(master_seed, i)`` (a splitmix64 hash), so results are
identical for any worker count or scheduling order.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .pauli import PauliOperator

_MASK64 = (1 << 64) - 1


def derive_seed(master_seed: int, index: int) -> int:
    """Stable 64-bit stream seed for (master_seed, index)."""
    z = (master_seed + 0x9E3779B97F4A7C15 * (index + 1)) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


@dataclass(frozen=True)
class NoiseModel:
    """kind in {iid_x, iid_xz, depolarizing}; see the constructors below."""

    kind: str
    p_x: float = 0.0
    p_z: float = 0.0
    p: float = 0.0

    def __post_init__(self):
        for value in (self.p_x, self.p_z, self.p):
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"probability {value} outside [0, 1]")
        if self.kind not in ("iid_x", "iid_xz", "depolarizing"):
            raise ValueError(f"unknown noise kind {self.kind!r}")

    @property
    def headline_rate(self) -> float:
        return self.p if self.kind == "depolarizing" else self.p_x

    @property
    def site_error_rate(self) -> float:
        """Probability that a given qubit carries any non-identity letter."""
        if self.kind == "iid_x":
            return self.p_x
        if self.kind == "iid_xz":
            return 1.0 - (1.0 - self.p_x) * (1.0 - self.p_z)
        return self.p


def iid_x(p_x: float) -> NoiseModel:
    return NoiseModel("iid_x", p_x=p_x)


def iid_xz(p_x: float, p_z: float) -> NoiseModel:
    """Independent X and Z flips per qubit; Y arises as the coincidence."""
    return NoiseModel("iid_xz", p_x=p_x, p_z=p_z)


def depolarizing(p: float) -> NoiseModel:
    """X, Y, Z each with probability p/3."""
    return NoiseModel("depolarizing", p=p)


def sample(model: NoiseModel, n: int, rng: random.Random) -> PauliOperator:
    """One error draw; per-qubit draws are made in qubit order."""
    x = z = 0
    if model.kind == "iid_x":
        for q in range(n):
            if rng.random() < model.p_x:
                x |= 1 << q
    elif model.kind == "iid_xz":
        for q in range(n):
            if rng.random() < model.p_x:
                x |= 1 << q
            if rng.random() < model.p_z:
                z |= 1 << q
    else:
        p = model.p
        for q in range(n):
            u = rng.random()
            if u < p:
                third = p / 3.0
                if u < third:
                    x |= 1 << q
                elif u < 2.0 * third:
                    x |= 1 << q
                    z |= 1 << q
                else:
                    z |= 1 << q
    return PauliOperator(n, x, z, 0)


@dataclass(frozen=True)
class ErrorDistribution:
    mean_weight: float
    weight_probabilities: dict[int, float]  # P(weight = w) for w <= 3


def error_probabilities(model: NoiseModel, n: int) -> ErrorDistribution:
    """Exact binomial weight distribution (weight = qubits with any letter)."""
    if n > 30:
        raise ValueError("exact tail computation limited to n <= 30")
    q = model.site_error_rate
    probs = {
        w: math.comb(n, w) * q**w * (1.0 - q) ** (n - w) for w in range(min(3, n) + 1)
    }
    return ErrorDistribution(mean_weight=n * q, weight_probabilities=probs)
