"""Holevo information of the coherently controlled channel switch.

chi = log2(d) + H(control marginal) - H_min, all entropies in bits. H_min
is the minimum output entropy over target states; by concavity it is
attained on pure states aligned with a basis vector, so the block structure
reduces it to two n! x n! eigenproblems (target eigenvalue 1 and 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import DepolarizingChannel
from .switch import ControlSpec, SwitchBlockMatrix, assemble_blocks, closed_form_n2

TRACE_SLACK = 1e-9
EIGENVALUE_SLACK = 1e-9


@dataclass(frozen=True)
class HolevoReport:
    """Inputs and the resulting entropies, in bits."""

    n: int
    d: int
    q: tuple[float, ...]
    probs: tuple[float, ...]
    h_min: float
    h_control: float
    chi: float


def _entropy_bits(eigenvalues: np.ndarray, slack: float = EIGENVALUE_SLACK) -> float:
    """Shannon entropy of a spectrum, with 0*log(0) = 0.

    Eigenvalues in [-slack, 0) are treated as exact zeros; anything below
    -slack is a contract violation.
    """
    vals = np.asarray(eigenvalues, dtype=float)
    low = vals.min() if vals.size else 0.0
    if low < -slack:
        raise ValueError(f"spectrum has a negative eigenvalue: {low}")
    vals = vals[vals > 0.0]
    return float(-(vals * np.log2(vals)).sum()) + 0.0


def von_neumann_entropy(matrix: np.ndarray) -> float:
    """Entropy in bits of a unit-trace Hermitian positive semidefinite matrix."""
    m = np.asarray(matrix)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if np.abs(m - m.conj().T).max() > TRACE_SLACK:
        raise ValueError("matrix is not Hermitian")
    trace = complex(np.trace(m)).real
    if abs(trace - 1.0) > TRACE_SLACK:
        raise ValueError(f"matrix trace {trace} != 1")
    return _entropy_bits(np.linalg.eigvalsh(m))


def control_marginal(sbm: SwitchBlockMatrix) -> np.ndarray:
    """Reduced control state after the switch: entry (k, k') = d*a + b.

    Tracing each block a*I + b*rho over the target gives a*d + b, so the
    marginal is independent of the target state.
    """
    return sbm.d * sbm.a + sbm.b


def min_output_entropy(sbm: SwitchBlockMatrix) -> float:
    """Minimum output entropy over target states, in bits.

    Substituting a one-hot target spectrum turns the block matrix into a
    pencil of n! x n! matrices: entrywise a + b at the populated eigenvector
    and plain a at each of the d-1 empty ones. The output spectrum is the
    union of their eigenvalues with multiplicities 1 and d-1.
    """
    top = sbm.a + sbm.b
    rest = sbm.a
    try:
        lam_top = np.linalg.eigvalsh(top)
        lam_rest = np.linalg.eigvalsh(rest)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(
            f"eigensolver failed on block pencil:\n{top!r}\n{rest!r}"
        ) from exc
    spectrum = np.concatenate([lam_top, np.tile(lam_rest, sbm.d - 1)])
    return _entropy_bits(spectrum)


def min_output_entropy_n2(q1: float, q2: float, p: float, d: int) -> float:
    """Closed-form minimum output entropy for two channels, in bits.

    The four spectral branches are lam_{s,k} = alpha_k/2
    + s*sqrt(p(1-p)*beta_k^2 + alpha_k^2 (p-1/2)^2) for s = +-1 and target
    eigenvalue k in {0, 1}, weighted (d-1)^(1-k), with
    alpha_k = (1-q1 q2)/d + k q1 q2 and
    beta_k = (p1 q2 + q1 p2)/d + k (p1 p2/d^2 + q1 q2).
    """
    for name, value in (("q1", q1), ("q2", q2), ("p", p)):
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1], got {value}")
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    p1, p2 = 1.0 - q1, 1.0 - q2
    acc = 0.0
    for k in (0, 1):
        alpha = (1.0 - q1 * q2) / d + k * q1 * q2
        beta = (p1 * q2 + q1 * p2) / d + k * (p1 * p2 / d**2 + q1 * q2)
        disc = math.sqrt(p * (1.0 - p) * beta**2 + alpha**2 * (p - 0.5) ** 2)
        weight = (d - 1) ** (1 - k)
        for s in (1.0, -1.0):
            lam = alpha / 2.0 + s * disc
            if lam > 0.0:
                acc -= weight * lam * math.log2(lam)
    return acc


def holevo_information(n: int, d: int, q, probs) -> HolevoReport:
    """Holevo information chi = log2(d) + H(control marginal) - H_min.

    Uses the two-channel closed form when n = 2 and the contraction-based
    assembly plus eigensolver otherwise.
    """
    q = tuple(float(x) for x in q)
    probs = tuple(float(x) for x in probs)
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    if len(q) != n:
        raise ValueError(f"expected {n} transparencies, got {len(q)}")
    for x in q:
        if not 0.0 <= x <= 1.0:
            raise ValueError(f"transparencies must lie in [0, 1], got {x}")
    ctrl = ControlSpec(n, probs)
    if n == 2:
        sbm = closed_form_n2(q[0], q[1], ctrl, d)
        h_min = min_output_entropy_n2(q[0], q[1], probs[0], d)
    else:
        channels = [DepolarizingChannel(x, d) for x in q]
        sbm = assemble_blocks(channels, ctrl)
        h_min = min_output_entropy(sbm)
    h_control = von_neumann_entropy(control_marginal(sbm))
    chi = math.log2(d) + h_control - h_min
    return HolevoReport(
        n=n, d=d, q=q, probs=probs, h_min=h_min, h_control=h_control, chi=chi
    )
