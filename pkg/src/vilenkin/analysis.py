"""Norms, Lebesgue-point diagnostics, maximal operators and sweeps.

Everything here is an exact finite computation on depth-N step data: Lp
norms are finite sums, weak quasi-norms take their supremum over the
(finite) value set of the function, and the convergence sweep tabulates
mean-vs-function errors for the experiment runner.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .group import GroupPoint, VilenkinBase, coset_members, group_sub
from .summability import WeightSequence, make_weights, mean, partial_sum
from .transform import StepFunction, character_values, forward


def lp_norm(f: StepFunction, p: float) -> float:
    """||f||_p with ||f||_p^p = (1/M_N) sum |f|^p; p = inf is the max."""
    if p == math.inf:
        return float(np.max(np.abs(f.values)))
    if p < 1:
        raise ValueError(f"norm exponent must be >= 1 or inf, got {p}")
    return float(np.mean(np.abs(f.values) ** p) ** (1.0 / p))


def weak_lp(f: StepFunction, p: float) -> float:
    """Weak quasi-norm sup_t t * mu(|f| > t)^(1/p).

    The level grid is the set of distinct values of |f|; evaluating
    t * mu(|f| >= t)^(1/p) there attains the supremum exactly, because the
    distribution function only jumps at those values.
    """
    if p < 1:
        raise ValueError(f"weak norm exponent must be >= 1, got {p}")
    magnitudes = np.abs(f.values)
    best = 0.0
    for level in np.unique(magnitudes):
        if level <= 0:
            continue
        measure = np.mean(magnitudes >= level)
        best = max(best, level * measure ** (1.0 / p))
    return float(best)


def lebesgue_profile(f: StepFunction, x: GroupPoint) -> np.ndarray:
    """Coset averages a_n of |f - f(x)| over I_n(x), n = 0 .. N.

    a_N is always 0 for step data, since I_N(x) is the single cell of x.
    """
    base = f.base
    fx = f.values[x.rank]
    deviations = np.abs(f.values - fx)
    out = np.empty(base.depth + 1)
    for n in range(base.depth + 1):
        members = coset_members(base, n, x.rank % base.cumprod[n])
        out[n] = base.cumprod[n] * deviations[members].sum() / base.size
    return out


def vilenkin_lebesgue_profile(f: StepFunction, x: GroupPoint, a_max: int) -> np.ndarray:
    """Translated-coset oscillation sums W_1 .. W_{a_max} at x.

    W_A adds, over coordinates s < A and nonzero shifts r of coordinate s,
    M_s times the integral of |f - f(x)| over I_A(x - r*e_s); a point where
    W_A tends to 0 is a Vilenkin-Lebesgue point.
    """
    base = f.base
    if not 1 <= a_max <= base.depth:
        raise ValueError(f"profile depth {a_max} outside [1, {base.depth}]")
    fx = f.values[x.rank]
    deviations = np.abs(f.values - fx)
    out = np.empty(a_max)
    for a in range(1, a_max + 1):
        m_a = base.cumprod[a]
        total = 0.0
        for s in range(a):
            for shift in range(1, base.radices[s]):
                y = group_sub(x, GroupPoint.unit(base, s, shift))
                members = coset_members(base, a, y.rank % m_a)
                total += base.cumprod[s] * deviations[members].sum() / base.size
        out[a - 1] = total
    return out


MAXIMAL_FAMILIES = ("S_at_Mn", "L_at_Mn", "t_at_Mn")


def restricted_maximal(
    f: StepFunction, family: str, weights: WeightSequence | None = None
) -> StepFunction:
    """Pointwise sup of |operator f| over the block orders M_0 .. M_N.

    Families: "S_at_Mn" (partial sums), "L_at_Mn" (logarithmic Norlund
    means), "t_at_Mn" (the means of ``weights``).  Orders with a degenerate
    weight prefix are skipped.
    """
    base = f.base
    if family == "S_at_Mn":
        operators = (partial_sum(f, m_r) for m_r in base.cumprod)
    elif family == "L_at_Mn":
        log_weights = make_weights("norlund_log")
        operators = (
            mean(f, log_weights, m_r, method="kernel")
            for m_r in base.cumprod
            if log_weights.Q(m_r) > 0
        )
    elif family == "t_at_Mn":
        if weights is None:
            raise ValueError("family 't_at_Mn' needs a weight sequence")
        operators = (
            mean(f, weights, m_r, method="kernel")
            for m_r in base.cumprod
            if weights.Q(m_r) > 0
        )
    else:
        raise ValueError(f"unknown family {family!r}; expected one of {MAXIMAL_FAMILIES}")
    sup = np.zeros(base.size)
    for g in operators:
        sup = np.maximum(sup, np.abs(g.values))
    return StepFunction(base, sup)


def full_maximal_fejer(f: StepFunction, n_max: int) -> StepFunction:
    """sup_{1 <= n <= n_max} |sigma_n f|, by one cumulative pass."""
    base = f.base
    if not 1 <= n_max <= base.size:
        raise ValueError(f"maximal order {n_max} outside [1, {base.size}]")
    coeffs = forward(f).coeffs
    running = np.zeros(base.size, dtype=np.complex128)
    block = np.zeros(base.size, dtype=np.complex128)
    sup = np.zeros(base.size)
    for n in range(1, n_max + 1):
        running += coeffs[n - 1] * character_values(base, n - 1)
        block += running
        sup = np.maximum(sup, np.abs(block) / n)
    return StepFunction(base, sup)


def weak11_ratio(maximal: StepFunction, f: StepFunction) -> float:
    """sup_t t * mu(maximal > t) / ||f||_1, the empirical weak-(1,1) constant."""
    denom = lp_norm(f, 1)
    if denom == 0:
        raise ValueError("weak-(1,1) ratio needs a nonzero reference function")
    return weak_lp(maximal, 1) / denom


@dataclass(frozen=True)
class ConvergenceRecord:
    """One cell of a convergence experiment."""

    mean_kind: str
    n: int
    p: float
    error: float
    point_errors: dict[int, float] = field(default_factory=dict)


def convergence_sweep(
    f: StepFunction,
    w: WeightSequence,
    n_list,
    p_list,
    points: list[int] | None = None,
) -> list[ConvergenceRecord]:
    """Tabulate ||t_n f - f||_p and pointwise errors over the grid.

    Whenever an order n equals some block size M_r, a companion record for
    the partial sum S_n is emitted as well (mean_kind "partial_sum").
    """
    base = f.base
    points = list(points or [])
    blocks = set(base.cumprod)
    records = []
    for n in n_list:
        n = int(n)
        targets = [(w.kind, mean(f, w, n, method="kernel"))]
        if n in blocks:
            targets.append(("partial_sum", partial_sum(f, n)))
        for kind, approx in targets:
            residual = approx - f
            point_errors = {
                rank: float(abs(residual.values[rank])) for rank in points
            }
            for p in p_list:
                records.append(
                    ConvergenceRecord(
                        mean_kind=kind,
                        n=n,
                        p=float(p),
                        error=lp_norm(residual, p),
                        point_errors=point_errors,
                    )
                )
    return records


def records_to_csv(records: list[ConvergenceRecord], path) -> None:
    """Flatten records to CSV columns mean_kind,n,p,error,point_rank,point_error.

    Norm rows leave the point columns empty; each pointwise error gets its
    own row with the norm columns repeated.  Ordering follows the input.
    """
    lines = ["mean_kind,n,p,error,point_rank,point_error"]
    for rec in records:
        p_text = "inf" if rec.p == math.inf else f"{rec.p:g}"
        lines.append(f"{rec.mean_kind},{rec.n},{p_text},{rec.error!r},,")
        for rank in sorted(rec.point_errors):
            lines.append(
                f"{rec.mean_kind},{rec.n},{p_text},{rec.error!r},"
                f"{rank},{rec.point_errors[rank]!r}"
            )
    text = "\n".join(lines) + "\n"
    if hasattr(path, "write"):
        path.write(text)
    else:
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
