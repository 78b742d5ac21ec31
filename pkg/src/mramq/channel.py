"""Cascaded STT-MRAM read channel: BAC crossovers, Gaussian readback, quantized law.

The stored bit first passes a binary asymmetric channel (write errors and
read-disturb flips), then the readback resistance is drawn from a Gaussian
whose parameters depend on the possibly-flipped cell state.  An M-level
quantizer turns the continuous readback into a discrete symbol; the composite
law is a 2 x M transition matrix.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erfc

ROW_SUM_TOL = 1e-12


def _check_prob(name, value):
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"{name} must be in [0, 1], got {value}")


@dataclass(frozen=True)
class RawErrorRates:
    """Raw cell error rates: write-direction flip rates and read disturb."""

    p_w10: float  # write error 1 -> 0
    p_w01: float  # write error 0 -> 1
    p_rd: float   # read disturb

    def __post_init__(self):
        _check_prob("p_w10", self.p_w10)
        _check_prob("p_w01", self.p_w01)
        _check_prob("p_rd", self.p_rd)


@dataclass(frozen=True)
class BacProbs:
    """Crossover probabilities of the binary asymmetric channel.

    Only p0 and p1 are stored; q0 = 1 - p0 and q1 = 1 - p1 are exact
    complements by construction.
    """

    p0: float  # stored 0 read back as 1
    p1: float  # stored 1 read back as 0

    def __post_init__(self):
        _check_prob("p0", self.p0)
        _check_prob("p1", self.p1)

    @property
    def q0(self) -> float:
        return 1.0 - self.p0

    @property
    def q1(self) -> float:
        return 1.0 - self.p1


def derive_bac(raw: RawErrorRates) -> BacProbs:
    """Fold raw write/read-disturb rates into BAC crossover probabilities.

    Models reading with the write-1 current direction, so a disturb can only
    switch cells toward state 1.  The success probabilities come out as exact
    complements of p0/p1 (the product forms expand to 1 - p0 and 1 - p1).
    """
    a = raw.p_w10 / 2.0
    p0 = a + (1.0 - a) * raw.p_rd
    p1 = (raw.p_w01 / 2.0) * (1.0 - raw.p_rd)
    return BacProbs(p0=p0, p1=p1)


@dataclass(frozen=True)
class GaussianPair:
    """Readback resistance statistics for the two cell states (ohms)."""

    mu0: float
    mu1: float
    sigma0: float
    sigma1: float

    def __post_init__(self):
        if self.sigma0 <= 0 or self.sigma1 <= 0:
            raise ValueError("sigma0 and sigma1 must be positive")
        if not self.mu0 < self.mu1:
            raise ValueError("mu0 must be below mu1")


@dataclass(frozen=True)
class ChannelSpec:
    """Full cascaded-channel description: Gaussian readback + BAC crossovers."""

    gauss: GaussianPair
    bac: BacProbs

    @classmethod
    def from_raw(cls, gauss: GaussianPair, raw: RawErrorRates) -> "ChannelSpec":
        return cls(gauss=gauss, bac=derive_bac(raw))

    @classmethod
    def from_dict(cls, d: dict) -> "ChannelSpec":
        gauss = GaussianPair(mu0=float(d["mu0"]), mu1=float(d["mu1"]),
                             sigma0=float(d["sigma0"]), sigma1=float(d["sigma1"]))
        if "p0" in d or "p1" in d:
            bac = BacProbs(p0=float(d.get("p0", 0.0)), p1=float(d.get("p1", 0.0)))
            return cls(gauss=gauss, bac=bac)
        raw = RawErrorRates(p_w10=float(d.get("p_w10", 0.0)),
                            p_w01=float(d.get("p_w01", 0.0)),
                            p_rd=float(d.get("p_rd", 0.0)))
        return cls.from_raw(gauss, raw)

    @classmethod
    def from_json(cls, path) -> "ChannelSpec":
        with open(path) as f:
            return cls.from_dict(json.load(f))


class Quantizer:
    """Sorted finite boundaries splitting the readback axis into M intervals.

    Interval j is (b_j, b_{j+1}] with implicit b_0 = -inf and b_M = +inf.
    """

    def __init__(self, boundaries):
        b = np.asarray(boundaries, dtype=float)
        if b.ndim != 1 or b.size == 0:
            raise ValueError("boundaries must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(b)):
            raise ValueError("boundaries must be finite")
        if not np.all(np.diff(b) > 0):
            raise ValueError("boundaries must be strictly increasing")
        b.setflags(write=False)
        self.boundaries = b

    @property
    def m(self) -> int:
        """Number of quantizer output symbols."""
        return self.boundaries.size + 1

    @property
    def q_bits(self):
        """Bits per symbol when M is a power of two, else None."""
        q = int(round(math.log2(self.m)))
        return q if 2 ** q == self.m else None

    def __repr__(self):
        return f"Quantizer({list(self.boundaries)})"

    def __eq__(self, other):
        return isinstance(other, Quantizer) and np.array_equal(
            self.boundaries, other.boundaries)


class TransitionMatrix:
    """Quantized-channel law t[i, j] = P(symbol j | stored bit i), shape 2 x M."""

    def __init__(self, t):
        t = np.asarray(t, dtype=float)
        if t.ndim != 2 or t.shape[0] != 2 or t.shape[1] < 1:
            raise ValueError("transition matrix must have shape (2, M)")
        if np.any(t < 0) or np.any(t > 1):
            raise ValueError("transition probabilities must lie in [0, 1]")
        sums = t.sum(axis=1)
        if np.any(np.abs(sums - 1.0) > ROW_SUM_TOL):
            raise ValueError(f"rows must sum to 1 within {ROW_SUM_TOL}, got {sums}")
        t.setflags(write=False)
        self.t = t

    @property
    def m(self) -> int:
        return self.t.shape[1]

    def __repr__(self):
        return f"TransitionMatrix(m={self.m})"


def q_function(x):
    """Standard normal tail probability via the complementary error function."""
    return 0.5 * erfc(np.asarray(x, dtype=float) / math.sqrt(2.0))


def interval_probs(mu: float, sigma: float, boundaries) -> np.ndarray:
    """P(readback in interval j) for j = 0..M-1, one Gaussian component.

    Telescopes the Q-function over the padded boundary list so the M values
    sum to 1 up to rounding.
    """
    b = np.asarray(boundaries, dtype=float)
    if b.size and not np.all(np.diff(b) > 0):
        raise ValueError("boundaries must be strictly increasing")
    qvals = np.empty(b.size + 2)
    qvals[0] = 1.0  # Q at the implicit -inf edge
    qvals[-1] = 0.0  # Q at the implicit +inf edge
    if b.size:
        qvals[1:-1] = q_function((b - mu) / sigma)
    probs = qvals[:-1] - qvals[1:]
    # Q is monotone so exact zeros are the only boundary artifacts.
    return np.clip(probs, 0.0, 1.0)


def gaussian_interval_prob(gauss: GaussianPair, bit: int, quant: Quantizer,
                           j: int) -> float:
    """P(readback falls in quantizer interval j | cell state `bit`)."""
    if bit not in (0, 1):
        raise ValueError("bit must be 0 or 1")
    if not 0 <= j < quant.m:
        raise ValueError(f"interval index {j} out of range for M={quant.m}")
    mu = gauss.mu0 if bit == 0 else gauss.mu1
    sigma = gauss.sigma0 if bit == 0 else gauss.sigma1
    return float(interval_probs(mu, sigma, quant.boundaries)[j])


def transition_matrix(spec: ChannelSpec, quant: Quantizer) -> TransitionMatrix:
    """Compose BAC crossovers with the quantized Gaussian law."""
    g0 = interval_probs(spec.gauss.mu0, spec.gauss.sigma0, quant.boundaries)
    g1 = interval_probs(spec.gauss.mu1, spec.gauss.sigma1, quant.boundaries)
    bac = spec.bac
    t0 = bac.q0 * g0 + bac.p0 * g1
    t1 = bac.p1 * g0 + bac.q1 * g1
    return TransitionMatrix(np.vstack([t0, t1]))
