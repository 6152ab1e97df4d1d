"""Vilenkin characters, fast mixed-radix transform and convolution.

The character psi_n(x) = prod_k r_k(x)^{n_k} with r_k(x) = exp(2*pi*i*x_k/m_k)
is a tensor product over coordinates, so the transform decimates over the
coordinates: one stage per radix m_k, each stage a size-m_k DFT applied
M_N/m_k times.  Total cost is O(M_N * sum_k m_k) against O(M_N^2) for the
literal sum.

Normalization: the forward transform carries the factor 1/M_N, so that
coeffs[n] equals the exact Haar integral of f * conj(psi_n); the inverse
carries no factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .group import GroupPoint, VilenkinBase, decode_index, shift_table


@dataclass(frozen=True)
class StepFunction:
    """Complex function constant on rank-N cosets, one value per rank."""

    base: VilenkinBase
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.complex128)
        if values.shape != (self.base.size,):
            raise ValueError(
                f"expected {self.base.size} values for {self.base}, "
                f"got shape {values.shape}"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def integral(self) -> complex:
        """Exact Haar integral (1/M_N) * sum of the values."""
        return complex(self.values.mean())

    def __add__(self, other: "StepFunction") -> "StepFunction":
        _check_same_base(self, other)
        return StepFunction(self.base, self.values + other.values)

    def __sub__(self, other: "StepFunction") -> "StepFunction":
        _check_same_base(self, other)
        return StepFunction(self.base, self.values - other.values)

    def __mul__(self, scalar: complex) -> "StepFunction":
        return StepFunction(self.base, self.values * scalar)

    __rmul__ = __mul__

    def to_csv(self, path) -> None:
        write_complex_csv(path, "rank", self.values)

    @classmethod
    def from_csv(cls, base: VilenkinBase, path) -> "StepFunction":
        return cls(base, read_complex_csv(path, base.size))


@dataclass(frozen=True)
class Spectrum:
    """Fourier coefficients coeffs[n] for n < M_N."""

    base: VilenkinBase
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        coeffs = np.array(self.coeffs, dtype=np.complex128)
        if coeffs.shape != (self.base.size,):
            raise ValueError(
                f"expected {self.base.size} coefficients for {self.base}, "
                f"got shape {coeffs.shape}"
            )
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    def to_csv(self, path) -> None:
        write_complex_csv(path, "n", self.coeffs)

    @classmethod
    def from_csv(cls, base: VilenkinBase, path) -> "Spectrum":
        return cls(base, read_complex_csv(path, base.size))


def _check_same_base(f, g) -> None:
    if f.base != g.base:
        raise ValueError(f"base mismatch: {f.base} vs {g.base}")


@lru_cache(maxsize=64)
def _unit_roots(m: int) -> np.ndarray:
    """Table exp(2*pi*i*j/m) for j < m."""
    roots = np.exp(2j * np.pi * np.arange(m) / m)
    roots.setflags(write=False)
    return roots


@lru_cache(maxsize=64)
def _dft_matrix(m: int, sign: int) -> np.ndarray:
    """Size-m DFT matrix W[a, b] = exp(sign * 2*pi*i*a*b/m) from the root table."""
    roots = _unit_roots(m)
    ab = np.outer(np.arange(m), np.arange(m)) % m
    mat = roots[ab] if sign > 0 else np.conj(roots[ab])
    mat.setflags(write=False)
    return mat


def rademacher(k: int, x: GroupPoint) -> complex:
    """Generalized Rademacher value exp(2*pi*i*x_k/m_k)."""
    if not 0 <= k < x.base.depth:
        raise ValueError(f"coordinate index {k} outside [0, {x.base.depth})")
    return complex(_unit_roots(x.base.radices[k])[x.coords[k]])


def character(n: int, x: GroupPoint) -> complex:
    """psi_n(x) = prod_k r_k(x)^{n_k}; unimodular, psi_0 = 1."""
    base = x.base
    out = 1.0 + 0.0j
    for k, n_k in enumerate(decode_index(n, base)):
        if n_k:
            m = base.radices[k]
            out *= _unit_roots(m)[(n_k * x.coords[k]) % m]
    return complex(out)


def character_values(base: VilenkinBase, n: int) -> np.ndarray:
    """psi_n sampled at every rank, via the same per-radix root tables."""
    digits = decode_index(n, base)
    out = np.ones(base.size, dtype=np.complex128)
    for k, n_k in enumerate(digits):
        if n_k:
            m = base.radices[k]
            out *= _unit_roots(m)[(n_k * base.digit_table[:, k]) % m]
    return out


def character_block(base: VilenkinBase, start: int, stop: int) -> np.ndarray:
    """Rows psi_n over all ranks for n in [start, stop), built literally.

    Entry [i, r] is psi_{start+i} at the point of rank r, assembled digit by
    digit exactly as :func:`character` does.
    """
    if not 0 <= start <= stop <= base.size:
        raise ValueError(f"bad frequency block [{start}, {stop})")
    out = np.ones((stop - start, base.size), dtype=np.complex128)
    digits = base.digit_table
    for k, m in enumerate(base.radices):
        n_k = digits[start:stop, k]
        if not n_k.any():
            continue
        x_k = digits[:, k]
        # per-radix table of r_k^(a*b), gathered by the two digit vectors
        out *= _dft_matrix(m, +1)[n_k[:, None], x_k[None, :]]
    return out


def _separable_apply(base: VilenkinBase, vec: np.ndarray, sign: int) -> np.ndarray:
    """One size-m_k DFT stage per coordinate over the reshaped hypercube."""
    # C-order reshape puts coordinate 0 (stride M_0 = 1) on the last axis.
    a = np.asarray(vec, dtype=np.complex128).reshape(tuple(reversed(base.radices)))
    last = base.depth - 1
    for k, m in enumerate(base.radices):
        axis = last - k
        a = np.moveaxis(np.tensordot(_dft_matrix(m, sign), a, axes=(1, axis)), 0, axis)
    return a.reshape(-1)


def forward(f: StepFunction) -> Spectrum:
    """Fast transform: coeffs[n] = (1/M_N) * sum_x f(x) * conj(psi_n(x))."""
    return Spectrum(f.base, _separable_apply(f.base, f.values, -1) / f.base.size)


def inverse(spectrum: Spectrum) -> StepFunction:
    """Reconstruction sum_n coeffs[n] * psi_n, exact on depth-N data."""
    return StepFunction(spectrum.base, _separable_apply(spectrum.base, spectrum.coeffs, +1))


def _naive_block_size(size: int) -> int:
    # Cap scratch at ~64 MiB of complex128 per block.
    return max(1, min(size, (1 << 22) // max(size, 1)))


def forward_naive(f: StepFunction) -> Spectrum:
    """Literal O(M_N^2) transform; the oracle the fast path is checked against."""
    batch = forward_naive_batch(f.base, f.values[None, :])
    return Spectrum(f.base, batch[0])


def forward_naive_batch(base: VilenkinBase, values: np.ndarray) -> np.ndarray:
    """Apply the literal-sum transform to each row of ``values``."""
    values = np.asarray(values, dtype=np.complex128)
    if values.ndim != 2 or values.shape[1] != base.size:
        raise ValueError(f"expected rows of length {base.size}")
    out = np.empty_like(values)
    step = _naive_block_size(base.size)
    for lo in range(0, base.size, step):
        hi = min(lo + step, base.size)
        block = character_block(base, lo, hi)
        out[:, lo:hi] = values @ np.conj(block).T
    return out / base.size


def convolve(f: StepFunction, g: StepFunction) -> StepFunction:
    """(f * g)(x) = (1/M_N) * sum_t f(x - t) g(t), by direct summation."""
    _check_same_base(f, g)
    base = f.base
    out = np.zeros(base.size, dtype=np.complex128)
    for t in range(base.size):
        gt = g.values[t]
        if gt == 0:
            continue
        out += gt * f.values[shift_table(base, t)]
    return StepFunction(base, out / base.size)


def convolve_spectral(f: StepFunction, g: StepFunction) -> StepFunction:
    """Convolution through the spectrum: coefficients multiply pointwise."""
    _check_same_base(f, g)
    product = forward(f).coeffs * forward(g).coeffs
    return inverse(Spectrum(f.base, product))


def write_complex_csv(path, index_name: str, values: np.ndarray) -> None:
    """CSV with columns (index, re, im); repr floats, '.' decimal point."""
    lines = [f"{index_name},re,im"]
    for i, v in enumerate(values):
        lines.append(f"{i},{float(v.real)!r},{float(v.imag)!r}")
    text = "\n".join(lines) + "\n"
    if hasattr(path, "write"):
        path.write(text)
    else:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)


def read_complex_csv(path, expected_length: int) -> np.ndarray:
    if hasattr(path, "read"):
        lines = path.read().splitlines()
    else:
        with open(path, "r", encoding="ascii") as fh:
            lines = fh.read().splitlines()
    rows = [line.split(",") for line in lines[1:] if line.strip()]
    if len(rows) != expected_length:
        raise ValueError(f"expected {expected_length} rows, got {len(rows)}")
    out = np.empty(expected_length, dtype=np.complex128)
    for idx, re_part, im_part in rows:
        out[int(idx)] = complex(float(re_part), float(im_part))
    return out
