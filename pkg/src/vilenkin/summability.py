"""Weight sequences, summability kernels and their identity verifiers.

Two aggregation shapes are supported, both driven by a nonnegative weight
sequence {q_k} with prefix sums Q_n = q_0 + ... + q_{n-1}:

    norlund:  t_n f = (1/Q_n) * sum_{k=1}^{n}   q_{n-k} * S_k f
    tmean:    T_n f = (1/Q_n) * sum_{k=0}^{n-1} q_k     * S_k f

with matching kernels

    F_n      = (1/Q_n) * sum_{k=1}^{n}   q_{n-k} * D_k
    F_n^inv  = (1/Q_n) * sum_{k=0}^{n-1} q_k     * D_k

so that the mean is convolution of f with its kernel.  D_0 is the empty sum
(identically 0).  The Abel rearrangement gives the alternate evaluation

    t_n f = (1/Q_n) * ( sum_{j=1}^{n-1} (q_{n-j} - q_{n-j-1}) * j * sigma_j f
                        + q_0 * n * sigma_n f )

where sigma_j is the Fejer mean; means are evaluated through all three
routes (direct, kernel convolution, Abel) and cross-checked in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .group import VilenkinBase, coset_members, order_stats
from .transform import (
    Spectrum,
    StepFunction,
    character_values,
    convolve_spectral,
    forward,
    inverse,
    write_complex_csv,
)

WEIGHT_KINDS = ("constant", "cesaro", "valpha", "riesz_log", "norlund_log", "blog")


class WeightSequence:
    """A {q_k} family with cached prefix sums and a monotonicity tag.

    ``mean_type`` records which aggregation the family belongs to:
    "norlund" for constant/cesaro/valpha/norlund_log, "tmean" for
    riesz_log/blog.
    """

    def __init__(self, kind, extend, mean_type, monotonicity):
        self.kind = kind
        self.mean_type = mean_type
        self.monotonicity = monotonicity
        self._extend = extend
        self._q = extend(np.arange(1))
        self._Q = np.concatenate([[0.0], np.cumsum(self._q)])

    def _ensure(self, n: int) -> None:
        if n > len(self._q):
            grown = max(n, 2 * len(self._q))
            self._q = self._extend(np.arange(grown))
            self._Q = np.concatenate([[0.0], np.cumsum(self._q)])

    def q(self, k: int) -> float:
        """Weight q_k."""
        if k < 0:
            raise ValueError(f"weight index must be >= 0, got {k}")
        self._ensure(k + 1)
        return float(self._q[k])

    def q_prefix(self, n: int) -> np.ndarray:
        """Array (q_0, ..., q_{n-1})."""
        self._ensure(n)
        return self._q[:n].copy()

    def Q(self, n: int) -> float:
        """Prefix sum Q_n = q_0 + ... + q_{n-1}; Q_0 = 0."""
        if n < 0:
            raise ValueError(f"prefix length must be >= 0, got {n}")
        self._ensure(n)
        return float(self._Q[n])

    def Q_prefix(self, n: int) -> np.ndarray:
        """Array (Q_0, ..., Q_n)."""
        self._ensure(n)
        return self._Q[: n + 1].copy()

    def __repr__(self) -> str:
        return f"WeightSequence({self.kind!r})"


def _cesaro_weights(alpha: float):
    # A_k^{alpha-1} by the stable recurrence A_j = A_{j-1} * (alpha-1+j)/j,
    # started at A_0 = 1 so that alpha = 1 reduces to Fejer.
    def extend(ks: np.ndarray) -> np.ndarray:
        factors = np.ones(len(ks))
        js = np.arange(1, len(ks), dtype=float)
        factors[1:] = (alpha - 1.0 + js) / js
        return np.cumprod(factors)

    return extend


def _iterated_log(values: np.ndarray, beta: int) -> np.ndarray:
    """beta-fold natural log, truncated to 0 where undefined or negative."""
    out = values.astype(float).copy()
    alive = out > 0
    for _ in range(beta):
        alive &= out > 0
        out[~alive] = 0.0
        out[alive] = np.log(out[alive])
    out[out < 0] = 0.0
    out[~alive] = 0.0
    return out


def make_weights(kind: str, alpha: float | None = None, beta: int | None = None) -> WeightSequence:
    """Construct one of the named weight families.

    constant       q_k = 1
    cesaro         q_k = A_k^{alpha-1},   0 < alpha < 1 (alpha = 1 allowed: Fejer)
    valpha         q_0 = 1, q_k = k^{alpha-1},  0 < alpha < 1
    riesz_log      q_0 = 0, q_k = 1/k     (tmean aggregation)
    norlund_log    q_0 = 0, q_k = 1/k     (norlund aggregation)
    blog           q_0 = 0, q_k = log^(beta)(k^alpha) truncated at 0 (tmean)
    """
    if kind == "constant":
        return WeightSequence(
            "constant", lambda ks: np.ones(len(ks)), "norlund", "non-increasing"
        )
    if kind == "cesaro":
        if alpha is None or not 0 < alpha <= 1:
            raise ValueError(f"cesaro needs 0 < alpha <= 1, got {alpha}")
        return WeightSequence(
            f"cesaro:{alpha:g}", _cesaro_weights(alpha), "norlund", "non-increasing"
        )
    if kind == "valpha":
        if alpha is None or not 0 < alpha < 1:
            raise ValueError(f"valpha needs 0 < alpha < 1, got {alpha}")

        def extend(ks: np.ndarray) -> np.ndarray:
            out = np.ones(len(ks))
            out[1:] = np.arange(1, len(ks), dtype=float) ** (alpha - 1.0)
            return out

        return WeightSequence(f"valpha:{alpha:g}", extend, "norlund", "non-increasing")
    if kind in ("riesz_log", "norlund_log"):

        def extend(ks: np.ndarray) -> np.ndarray:
            out = np.zeros(len(ks))
            out[1:] = 1.0 / np.arange(1, len(ks), dtype=float)
            return out

        mean_type = "tmean" if kind == "riesz_log" else "norlund"
        return WeightSequence(kind, extend, mean_type, "n/a")
    if kind == "blog":
        if alpha is None or alpha <= 0:
            raise ValueError(f"blog needs alpha > 0, got {alpha}")
        if beta is None or beta < 1 or beta != int(beta):
            raise ValueError(f"blog needs integer beta >= 1, got {beta}")
        beta = int(beta)

        def extend(ks: np.ndarray) -> np.ndarray:
            out = np.zeros(len(ks))
            if len(ks) > 1:
                out[1:] = _iterated_log(
                    np.arange(1, len(ks), dtype=float) ** alpha, beta
                )
            return out

        return WeightSequence(f"blog:{alpha:g}:{beta}", extend, "tmean", "non-decreasing")
    raise ValueError(f"unknown weight kind {kind!r}; expected one of {WEIGHT_KINDS}")


def weights_from_spec(text: str) -> WeightSequence:
    """Parse the CLI grammar: "constant", "cesaro:0.5", "blog:0.5:1", ..."""
    parts = text.split(":")
    kind, params = parts[0], parts[1:]
    try:
        if kind in ("constant", "riesz_log", "norlund_log"):
            if params:
                raise ValueError(f"{kind} takes no parameters")
            return make_weights(kind)
        if kind in ("cesaro", "valpha"):
            (alpha,) = params
            return make_weights(kind, alpha=float(alpha))
        if kind == "blog":
            alpha, beta = params
            return make_weights(kind, alpha=float(alpha), beta=int(beta))
    except ValueError:
        raise
    except Exception as exc:
        raise ValueError(f"bad weight spec {text!r}") from exc
    raise ValueError(f"unknown weight kind {kind!r} in {text!r}")


@dataclass(frozen=True)
class RegularityReport:
    """Summary of the classical summability-regularity diagnostics."""

    kind: str
    horizon: int
    max_norlund_ratio: float  # max over n of n * q_{n-1} / Q_n
    final_norlund_ratio: float
    ratio_decreasing: bool
    q_total_growing: bool  # Q_n still growing at the horizon


def regularity_check(w: WeightSequence, horizon: int) -> RegularityReport:
    """Evaluate n * q_{n-1}/Q_n over n <= horizon and the growth of Q_n."""
    if horizon < 2:
        raise ValueError(f"horizon must be >= 2, got {horizon}")
    q = w.q_prefix(horizon)
    Q = w.Q_prefix(horizon)
    ns = np.arange(1, horizon + 1, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = ns * q / Q[1:]
    valid = Q[1:] > 0
    ratios = ratios[valid]
    half = max(1, len(ratios) // 2)
    return RegularityReport(
        kind=w.kind,
        horizon=horizon,
        max_norlund_ratio=float(ratios.max()),
        final_norlund_ratio=float(ratios[-1]),
        ratio_decreasing=bool(ratios[-1] < ratios[half - 1]),
        q_total_growing=bool(Q[horizon] > Q[horizon // 2]),
    )


@dataclass(frozen=True)
class KernelTable:
    """Sampled kernel values at resolution N."""

    base: VilenkinBase
    n: int
    kind: str  # dirichlet | fejer | norlund | tmean
    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.complex128)
        if values.shape != (self.base.size,):
            raise ValueError(f"expected {self.base.size} kernel values")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def integral(self) -> complex:
        return complex(self.values.mean())

    def to_step(self) -> StepFunction:
        return StepFunction(self.base, self.values)

    def to_csv(self, path) -> None:
        write_complex_csv(path, "rank", self.values)


def _check_order(base: VilenkinBase, n: int) -> None:
    if not 1 <= n <= base.size:
        raise ValueError(f"kernel order {n} outside [1, {base.size}]")


def _dirichlet_values(base: VilenkinBase, n: int) -> np.ndarray:
    # n = 0 is the empty sum; used internally by the identity verifiers.
    coeffs = np.zeros(base.size, dtype=np.complex128)
    coeffs[:n] = 1.0
    return inverse(Spectrum(base, coeffs)).values


def dirichlet(base: VilenkinBase, n: int) -> KernelTable:
    """D_n = sum_{k<n} psi_k, synthesized from its 0/1 spectral profile."""
    _check_order(base, n)
    return KernelTable(base, n, "dirichlet", _dirichlet_values(base, n))


def fejer_kernel(base: VilenkinBase, n: int) -> KernelTable:
    """K_n = (1/n) sum_{k=1}^n D_k, spectral profile (n-j)/n for j < n."""
    _check_order(base, n)
    coeffs = np.zeros(base.size, dtype=np.complex128)
    coeffs[:n] = (n - np.arange(n)) / n
    return KernelTable(base, n, "fejer", inverse(Spectrum(base, coeffs)).values)


def norlund_kernel(w: WeightSequence, base: VilenkinBase, n: int) -> KernelTable:
    """F_n = (1/Q_n) sum_{k=1}^n q_{n-k} D_k.

    Collecting the coefficient of each character gives the equivalent
    spectral profile Q_{n-j}/Q_n for j < n, synthesized in one pass.
    """
    _check_order(base, n)
    Q = w.Q_prefix(n)
    if Q[n] <= 0:
        raise ValueError(f"degenerate weights: Q_{n} = 0 for {w.kind}")
    coeffs = np.zeros(base.size, dtype=np.complex128)
    coeffs[:n] = Q[n:0:-1] / Q[n]
    return KernelTable(base, n, "norlund", inverse(Spectrum(base, coeffs)).values)


def t_kernel(w: WeightSequence, base: VilenkinBase, n: int) -> KernelTable:
    """F_n^inv = (1/Q_n) sum_{k=0}^{n-1} q_k D_k, profile (Q_n - Q_{j+1})/Q_n."""
    _check_order(base, n)
    Q = w.Q_prefix(n)
    if Q[n] <= 0:
        raise ValueError(f"degenerate weights: Q_{n} = 0 for {w.kind}")
    coeffs = np.zeros(base.size, dtype=np.complex128)
    coeffs[: n - 1] = (Q[n] - Q[1:n]) / Q[n]
    return KernelTable(base, n, "tmean", inverse(Spectrum(base, coeffs)).values)


def kernel_for(w: WeightSequence, base: VilenkinBase, n: int) -> KernelTable:
    """The kernel matching the family's aggregation shape."""
    if w.mean_type == "norlund":
        return norlund_kernel(w, base, n)
    return t_kernel(w, base, n)


def partial_sum(f: StepFunction, n: int) -> StepFunction:
    """S_n f = sum_{k<n} coeffs[k] psi_k, by spectral truncation."""
    if not 0 <= n <= f.base.size:
        raise ValueError(f"partial-sum order {n} outside [0, {f.base.size}]")
    coeffs = forward(f).coeffs.copy()
    coeffs[n:] = 0.0
    return inverse(Spectrum(f.base, coeffs))


MEAN_METHODS = ("direct", "kernel", "abel")


def mean(f: StepFunction, w: WeightSequence, n: int, method: str = "direct") -> StepFunction:
    """The weighted mean of order n of f under the family w.

    ``method`` selects the evaluation route: "direct" accumulates partial
    sums, "kernel" convolves with the matching kernel table, "abel" uses the
    rearrangement through Fejer means.  All routes agree up to roundoff.
    """
    base = f.base
    if not 1 <= n <= base.size:
        raise ValueError(f"mean order {n} outside [1, {base.size}]")
    Qn = w.Q(n)
    if Qn <= 0:
        raise ValueError(f"degenerate weights: Q_{n} = 0 for {w.kind}")
    if method == "kernel":
        return convolve_spectral(f, kernel_for(w, base, n).to_step())
    if method == "direct":
        return _mean_direct(f, w, n, Qn)
    if method == "abel":
        return _mean_abel(f, w, n, Qn)
    raise ValueError(f"unknown method {method!r}; expected one of {MEAN_METHODS}")


def _mean_direct(f: StepFunction, w: WeightSequence, n: int, Qn: float) -> StepFunction:
    base = f.base
    coeffs = forward(f).coeffs
    q = w.q_prefix(n)
    running = np.zeros(base.size, dtype=np.complex128)
    acc = np.zeros(base.size, dtype=np.complex128)
    if w.mean_type == "norlund":
        # sum_{k=1}^{n} q_{n-k} S_k f
        for k in range(1, n + 1):
            running += coeffs[k - 1] * character_values(base, k - 1)
            acc += q[n - k] * running
    else:
        # sum_{k=1}^{n-1} q_k S_k f  (the k = 0 term is the empty sum)
        for k in range(1, n):
            running += coeffs[k - 1] * character_values(base, k - 1)
            acc += q[k] * running
    return StepFunction(base, acc / Qn)


def _mean_abel(f: StepFunction, w: WeightSequence, n: int, Qn: float) -> StepFunction:
    base = f.base
    coeffs = forward(f).coeffs
    q = w.q_prefix(n)
    running = np.zeros(base.size, dtype=np.complex128)  # S_j f
    block = np.zeros(base.size, dtype=np.complex128)  # j * sigma_j f
    acc = np.zeros(base.size, dtype=np.complex128)
    if w.mean_type == "norlund":
        for j in range(1, n + 1):
            running += coeffs[j - 1] * character_values(base, j - 1)
            block += running
            if j < n:
                acc += (q[n - j] - q[n - j - 1]) * block
            else:
                acc += q[0] * block
    else:
        for j in range(1, n):
            running += coeffs[j - 1] * character_values(base, j - 1)
            block += running
            if j < n - 1:
                acc += (q[j] - q[j + 1]) * block
            else:
                acc += q[n - 1] * block
    return StepFunction(base, acc / Qn)


def verify_dirichlet_complement(base: VilenkinBase, r: int, j: int) -> float:
    """Residual of D_{M_r - j} = D_{M_r} - psi_{M_r - 1} * conj(D_j).

    Exact for 0 <= j < M_r because the top M_r - j characters are the
    digitwise complements of the bottom j.  Returns the max pointwise
    deviation over the group.
    """
    if not 0 <= r <= base.depth:
        raise ValueError(f"block level {r} outside [0, {base.depth}]")
    m_r = base.cumprod[r]
    if not 0 <= j < m_r:
        raise ValueError(f"offset {j} outside [0, {m_r})")
    lhs = _dirichlet_values(base, m_r - j)
    rhs = _dirichlet_values(base, m_r) - character_values(base, m_r - 1) * np.conj(
        _dirichlet_values(base, j)
    )
    return float(np.max(np.abs(lhs - rhs)))


def verify_block_kernel_split(w: WeightSequence, base: VilenkinBase, r: int) -> float:
    """Residual of F_{M_r} = D_{M_r} - psi_{M_r - 1} * conj(F_{M_r}^inv).

    Follows from the Dirichlet complement identity applied to the reversed
    kernel sum; stated for non-increasing families, which the tag must
    confirm.  The level r = 0 (M_0 = 1) is excluded as degenerate.
    """
    if w.monotonicity != "non-increasing":
        raise ValueError(
            f"block kernel split needs a non-increasing family, got {w.kind} "
            f"({w.monotonicity})"
        )
    if not 1 <= r <= base.depth:
        raise ValueError(f"block level {r} outside [1, {base.depth}]")
    m_r = base.cumprod[r]
    lhs = norlund_kernel(w, base, m_r).values
    rhs = _dirichlet_values(base, m_r) - character_values(base, m_r - 1) * np.conj(
        t_kernel(w, base, m_r).values
    )
    return float(np.max(np.abs(lhs - rhs)))


def kernel_l1_profile(
    w: WeightSequence, base: VilenkinBase, n_list
) -> list[tuple[int, float]]:
    """L1 norms of the family's kernel at each requested order."""
    out = []
    for n in n_list:
        table = kernel_for(w, base, int(n))
        out.append((int(n), float(np.abs(table.values).mean())))
    return out


def kernel_tail(w: WeightSequence, base: VilenkinBase, n: int, n_cut: int) -> float:
    """Tail mass of the kernel outside the coset I_{n_cut}(0)."""
    if not 0 <= n_cut < base.depth:
        raise ValueError(f"cut level {n_cut} outside [0, {base.depth})")
    table = kernel_for(w, base, n)
    inside = coset_members(base, n_cut, 0)
    mask = np.ones(base.size, dtype=bool)
    mask[inside] = False
    return float(np.abs(table.values[mask]).sum() / base.size)


def fejer_domination_constant(base: VilenkinBase, n: int) -> float:
    """Smallest empirical c with n|K_n| <= c * sum_{l=<n>}^{|n|} M_l |K_{M_l}|.

    Points where both sides vanish are treated as satisfied; a vanishing
    bound against a nonvanishing left side yields inf.
    """
    _check_order(base, n)
    top, bottom = order_stats(n, base)
    numerator = n * np.abs(fejer_kernel(base, n).values)
    denominator = np.zeros(base.size)
    for level in range(bottom, top + 1):
        m_l = base.cumprod[level]
        denominator += m_l * np.abs(fejer_kernel(base, m_l).values)
    tiny = 1e-12
    degenerate = denominator <= tiny
    if np.any(degenerate & (numerator > tiny)):
        return math.inf
    live = ~degenerate
    if not live.any():
        return 0.0
    return float(np.max(numerator[live] / denominator[live]))
