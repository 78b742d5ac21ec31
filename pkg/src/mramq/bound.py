"""Pairwise error probabilities and ML-decoding union bounds.

On an asymmetric quantized channel the pairwise error probability between two
codewords depends on the pair (m01, m10) of disagreement counts, not just the
Hamming distance.  The PEP sums, over all ways the disagreement positions can
land in the M output symbols (weak compositions), the probability of every
output pattern whose likelihood under the competitor is at least the
likelihood under the transmitted word.  The union bound then weights PEPs by
the code's weight spectrum, splitting each distance-d pair binomially between
(m01, m10) under equiprobable codewords.

All accumulation is done in the log domain: at realistic operating points the
individual pattern probabilities underflow long before the bound does.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from .channel import TransitionMatrix

# Relative half-width of the band around zero in which the log-likelihood
# difference between competitor and transmitted word is declared a tie.
# Exact ties on structured channels land at ~1e-15 after rounding; genuine
# gaps on non-degenerate channels are many orders larger.
TIE_RTOL = 1e-9


class TieRule(enum.Enum):
    """How decision-metric ties count in the error region."""

    TIES_AS_ERRORS = "ties-as-errors"
    TIES_HALF = "ties-half"


@dataclass(frozen=True)
class MultiDistance:
    """Disagreement counts between transmitted x and competitor e."""

    m01: int  # positions with x=0, e=1
    m10: int  # positions with x=1, e=0

    def __post_init__(self):
        if self.m01 < 0 or self.m10 < 0:
            raise ValueError("multi-distance counts must be non-negative")

    @property
    def d(self) -> int:
        return self.m01 + self.m10


@dataclass(frozen=True)
class BoundMode:
    """Full-spectrum bound (optionally truncated) or dominant-d_min term only."""

    min_distance_only: bool = False
    d_max: int | None = None  # FULL mode truncation; None -> d_min + 8

    def __post_init__(self):
        if self.d_max is not None and self.d_max < 1:
            raise ValueError("d_max must be positive")

    @classmethod
    def full(cls, d_max: int | None = None) -> "BoundMode":
        return cls(min_distance_only=False, d_max=d_max)

    @classmethod
    def min_distance(cls) -> "BoundMode":
        return cls(min_distance_only=True)


FULL_DMAX_MARGIN = 8  # default FULL truncation: d_min + this


def multi_distance(x, e) -> MultiDistance:
    """Count (m01, m10) between two equal-length binary vectors."""
    x = np.asarray(x, dtype=int)
    e = np.asarray(e, dtype=int)
    if x.shape != e.shape or x.ndim != 1:
        raise ValueError("inputs must be 1-D bit vectors of equal length")
    m01 = int(np.sum((x == 0) & (e == 1)))
    m10 = int(np.sum((x == 1) & (e == 0)))
    return MultiDistance(m01=m01, m10=m10)


@lru_cache(maxsize=None)
def _compositions(total: int, parts: int) -> np.ndarray:
    """All weak compositions of `total` into `parts` ordered slots."""
    if parts == 1:
        out = np.array([[total]], dtype=np.int64)
    else:
        blocks = []
        for first in range(total + 1):
            rest = _compositions(total - first, parts - 1)
            head = np.full((rest.shape[0], 1), first, dtype=np.int64)
            blocks.append(np.hstack([head, rest]))
        out = np.vstack(blocks)
    out.setflags(write=False)
    return out


def _side_tables(comps: np.ndarray, total: int, log_own: np.ndarray,
                 log_ratio: np.ndarray, zero_own: np.ndarray,
                 zero_other: np.ndarray):
    """Per-composition log-weight and decision coordinate for one side.

    `own` is the transmitted-bit row feeding this side's positions, `other`
    the row the competitor would use there.  Compositions placing mass on a
    zero own-probability have probability zero and are dropped; compositions
    placing mass on a zero other-probability can never be preferred by the
    competitor and are dropped from the error region too.
    """
    keep = ~(comps[:, zero_own].any(axis=1) | comps[:, zero_other].any(axis=1))
    comps = comps[keep]
    log_multinom = gammaln(total + 1) - gammaln(comps + 1).sum(axis=1)
    weight = log_multinom + comps @ log_own
    coord = comps @ log_ratio
    return weight, coord


def log_pairwise_error_prob(T: TransitionMatrix, md: MultiDistance,
                            tie: TieRule = TieRule.TIES_AS_ERRORS) -> float:
    """log of the pairwise error probability for disagreement counts md.

    Sums over weak compositions of m01 and m10 into the M output symbols.
    The decision statistic separates into a difference of one coordinate per
    side, so the double sum is evaluated by sorting one side and accumulating
    prefix log-sums: O(n log n) instead of O(n^2) composition pairs.
    """
    t = T.t
    m = T.m
    if md.m01 == 0 and md.m10 == 0:
        warnings.warn("degenerate multi-distance (0, 0): identical codewords",
                      stacklevel=2)
        return 0.0 if tie is TieRule.TIES_AS_ERRORS else math.log(0.5)

    t0 = t[0]
    t1 = t[1]
    zero0 = t0 == 0.0
    zero1 = t1 == 0.0
    lt0 = np.where(zero0, 0.0, np.log(np.where(zero0, 1.0, t0)))
    lt1 = np.where(zero1, 0.0, np.log(np.where(zero1, 1.0, t1)))
    lratio = lt0 - lt1  # only read where the relevant exponents are nonzero

    # side A: the m01 positions carry transmitted 0s; side B: transmitted 1s
    wa, ca = _side_tables(_compositions(md.m01, m), md.m01, lt0, lratio,
                          zero0, zero1)
    wb, cb = _side_tables(_compositions(md.m10, m), md.m10, lt1, lratio,
                          zero1, zero0)
    if wa.size == 0 or wb.size == 0:
        return -math.inf

    # error region: cb[j] - ca[i] > 0, ties on |cb - ca| <= tol
    scale = max(1.0, float(np.abs(ca).max()), float(np.abs(cb).max()))
    tol = TIE_RTOL * scale

    order = np.argsort(ca, kind="stable")
    ca_sorted = ca[order]
    wa_sorted = wa[order]
    prefix = np.concatenate(([-np.inf], np.logaddexp.accumulate(wa_sorted)))

    lo = np.searchsorted(ca_sorted, cb - tol, side="left")
    hi = np.searchsorted(ca_sorted, cb + tol, side="right")

    terms = []
    strict = prefix[lo] + wb  # pairs strictly inside the error region
    terms.append(strict[np.isfinite(strict)])
    tie_weight = 0.0 if tie is TieRule.TIES_AS_ERRORS else math.log(0.5)
    for j in np.flatnonzero(hi > lo):
        seg = wa_sorted[lo[j]:hi[j]]
        tie_term = _logsumexp(seg) + wb[j] + tie_weight
        if math.isfinite(tie_term):
            terms.append(np.array([tie_term]))
    if not terms:
        return -math.inf
    flat = np.concatenate(terms)
    if flat.size == 0:
        return -math.inf
    return _logsumexp(flat)


def _logsumexp(a: np.ndarray) -> float:
    if a.size == 0:
        return -math.inf
    hi = float(np.max(a))
    if not math.isfinite(hi):
        return hi
    return hi + math.log(float(np.sum(np.exp(a - hi))))


def pairwise_error_prob(T: TransitionMatrix, md: MultiDistance,
                        tie: TieRule = TieRule.TIES_AS_ERRORS) -> float:
    """Pairwise error probability in linear domain (see log variant)."""
    return math.exp(log_pairwise_error_prob(T, md, tie))


def union_bound_terms(T: TransitionMatrix, spectrum, mode: BoundMode,
                      tie: TieRule = TieRule.TIES_AS_ERRORS):
    """Per-(d, m01, m10) log-terms of the union bound.

    Returns (log_bound, rows) with rows of (d, m01, m10, log_term); the bound
    is the log-sum of all terms.  Terms with zero probability are skipped.
    """
    counts = {d: a for d, a in spectrum.counts.items() if d >= 1 and a > 0}
    if not counts:
        raise ValueError("spectrum has no codewords at distance >= 1")
    d_min = min(counts)
    if mode.min_distance_only:
        ds = [d_min]
    else:
        d_max = mode.d_max if mode.d_max is not None else d_min + FULL_DMAX_MARGIN
        if d_max < d_min:
            raise ValueError(f"d_max={d_max} below d_min={d_min}")
        ds = [d for d in sorted(counts) if d <= d_max]

    rows = []
    log2 = math.log(2.0)
    for d in ds:
        log_ad = math.log(counts[d])
        for m01 in range(d + 1):
            m10 = d - m01
            lpep = log_pairwise_error_prob(T, MultiDistance(m01, m10), tie)
            if not math.isfinite(lpep):
                continue
            log_split = (gammaln(d + 1) - gammaln(m01 + 1) - gammaln(m10 + 1))
            term = log_ad - d * log2 + log_split + lpep
            rows.append((d, m01, m10, term))
    if not rows:
        return -math.inf, rows
    log_bound = _logsumexp(np.array([r[3] for r in rows]))
    return log_bound, rows


def union_bound(T: TransitionMatrix, spectrum, mode: BoundMode = BoundMode.full(),
                tie: TieRule = TieRule.TIES_AS_ERRORS) -> float:
    """Union bound (FULL) or dominant-minimum-distance approximation on ML WER.

    The value is an upper bound / estimate and is deliberately not clamped
    to 1.
    """
    log_bound, _ = union_bound_terms(T, spectrum, mode, tie)
    return math.exp(log_bound)
