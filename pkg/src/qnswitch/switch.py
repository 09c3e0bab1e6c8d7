"""Output of the coherently controlled N-channel switch.

The switch applies N depolarizing channels to a target state rho in an
order selected by a control system prepared in the superposition
sum_k sqrt(P_k) |k>, one basis state per causal order. Its output is an
(N! x N!) array of d x d blocks, and every block is a linear combination
a*I + b*rho with nonnegative coefficients. The module provides

* a symbolic contraction engine that evaluates, per pair of causal orders
  (k, k') and zero-index subset A_z, the summed unitary word
  sum pi_k(U_{i1}..U_{iN}) rho [pi_k'(U_{i1}..U_{iN})]^dag as a power of d
  times I or rho,
* ``assemble_blocks``, which combines those contractions with the channel
  transparencies into the exact block matrix for any N up to 5,
* hand-expanded closed forms for N = 2 and N = 3,
* a brute-force reference (``kraus_sum_output``) that sums the generalized
  Kraus operators tuple by tuple, used to cross-check the analytic path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import product
from typing import Sequence

import numpy as np

from .channels import DensityMatrix, DepolarizingChannel, kraus_set, weyl_basis
from .errors import ReductionError, SizeLimitError
from .symgroup import ZeroSubset, apply_order, enumerate_orders, zero_subsets

# Hard caps: the brute-force sums run over (d^2+1)^n index tuples, the block
# assembly over n!^2 causal-order pairs.
DEFAULT_TUPLE_BUDGET = 1_000_000
MAX_ASSEMBLE_CHANNELS = 5


@dataclass(frozen=True)
class ControlSpec:
    """Control-system preparation: probability P_k per causal order.

    The control state is the pure superposition with real nonnegative
    amplitudes sqrt(P_k); zero entries switch individual orders off.
    """

    n: int
    probs: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "probs", tuple(float(p) for p in self.probs))
        nf = math.factorial(self.n)
        if len(self.probs) != nf:
            raise ValueError(f"expected {nf} probabilities for n={self.n}, got {len(self.probs)}")
        if any(p < 0.0 for p in self.probs):
            raise ValueError("probabilities must be nonnegative")
        if abs(math.fsum(self.probs) - 1.0) > 1e-12:
            raise ValueError(f"probabilities must sum to 1, got {math.fsum(self.probs)}")

    @property
    def amplitudes(self) -> np.ndarray:
        return np.sqrt(np.asarray(self.probs))

    def density(self) -> np.ndarray:
        """The control density matrix sum_{k,k'} sqrt(P_k P_k') |k><k'|."""
        amps = self.amplitudes
        return np.outer(amps, amps)

    @classmethod
    def uniform(cls, n: int) -> ControlSpec:
        nf = math.factorial(n)
        return cls(n, (1.0 / nf,) * nf)

    @classmethod
    def definite(cls, n: int, k: int) -> ControlSpec:
        """All weight on causal order k (1-based)."""
        nf = math.factorial(n)
        if not 1 <= k <= nf:
            raise ValueError(f"order label must be in 1..{nf}, got {k}")
        probs = [0.0] * nf
        probs[k - 1] = 1.0
        return cls(n, tuple(probs))


@dataclass(frozen=True)
class Block:
    """One d x d block of the switch output, stored as a*I + b*rho."""

    a: float
    b: float

    def __post_init__(self):
        if not (np.isfinite(self.a) and np.isfinite(self.b)):
            raise ValueError(f"block coefficients must be finite: ({self.a}, {self.b})")
        if self.a < 0.0 or self.b < 0.0:
            raise ValueError(f"block coefficients must be nonnegative: ({self.a}, {self.b})")


@dataclass(frozen=True)
class SwitchBlockMatrix:
    """The full switch output: an n! x n! array of blocks a*I + b*rho.

    ``a`` and ``b`` hold the identity and rho coefficients of every block.
    Both arrays are exactly symmetric, and the realized trace
    sum_k (d*a[k,k] + b[k,k]) equals 1.
    """

    n: int
    d: int
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.array(self.a, dtype=float)
        b = np.array(self.b, dtype=float)
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        nf = math.factorial(self.n)
        if a.shape != (nf, nf) or b.shape != (nf, nf):
            raise ValueError(f"coefficient arrays must be {nf}x{nf}")
        if not (np.array_equal(a, a.T) and np.array_equal(b, b.T)):
            raise ValueError("block matrix must be exactly symmetric")
        if (a < 0).any() or (b < 0).any():
            raise ValueError("block coefficients must be nonnegative")
        trace = self.d * np.trace(a) + np.trace(b)
        if abs(trace - 1.0) > 1e-12:
            raise ValueError(f"realized trace {trace} != 1")

    def block(self, k: int, kp: int) -> Block:
        """1-based access to the (k, k') block coefficients."""
        return Block(float(self.a[k - 1, kp - 1]), float(self.b[k - 1, kp - 1]))


class TermKind(Enum):
    IDENTITY = "identity"
    RHO = "rho"


@dataclass(frozen=True)
class ContractedTerm:
    """A fully contracted word: d**power times either I or rho."""

    kind: TermKind
    power: int

    def __post_init__(self):
        if self.power < 0:
            raise ValueError(f"power must be nonnegative, got {self.power}")

    def scale(self, d: int) -> float:
        return float(d) ** self.power


# ---------------------------------------------------------------------------
# Symbolic contraction of summed unitary words.
#
# A word is a list of tokens: _RHO, or (slot, daggered) for the basis element
# U carrying the summation index of channel `slot`. Each live slot occurs
# exactly twice, once plain and once daggered. Contraction repeatedly sums
# out one slot using the trace-orthogonality identities
#
#   (sandwich)  sum_i U_i X U_i^dag            = d tr(X) I
#   (splice)    sum_i tr(Y U_i) U_i^dag        = d Y
#   (adjacent)  sum_i U_i U_i^dag              = d^2 I   (empty sandwich)
#   (split)     sum_i tr(U_i X U_i^dag Y)      = d tr(X) tr(Y)
#   (merge)     sum_i tr(X U_i) tr(U_i^dag Y)  = d tr(X Y)
#
# all of which hold with the daggers exchanged as well. Every move removes
# one slot entirely, so contraction terminates after exactly |B_z| moves,
# in any move order. tr(I) contributes a factor d, tr(rho) a factor 1.
# ---------------------------------------------------------------------------

_RHO = "rho"


def _format_word(word) -> str:
    parts = []
    for tok in word:
        if tok == _RHO:
            parts.append("rho")
        else:
            slot, dag = tok
            parts.append(f"U{slot}*" if dag else f"U{slot}")
    return " ".join(parts) if parts else "<empty>"


def _initial_word(k: int, kp: int, zeros: ZeroSubset) -> list:
    orders = enumerate_orders(zeros.n)
    slots = list(range(1, zeros.n + 1))
    live = set(zeros.complement)
    left = [(s, False) for s in apply_order(orders[k - 1], slots) if s in live]
    right = [(s, True) for s in apply_order(orders[kp - 1], slots) if s in live]
    right.reverse()
    return left + [_RHO] + right


def _locate(slot: int, word: list, traces: list[list]) -> list[tuple[int, int]]:
    """Both occurrences of a slot as (container, position); container -1 is the word."""
    hits = []
    for pos, tok in enumerate(word):
        if tok != _RHO and tok[0] == slot:
            hits.append((-1, pos))
    for t, tr in enumerate(traces):
        for pos, tok in enumerate(tr):
            if tok != _RHO and tok[0] == slot:
                hits.append((t, pos))
    if len(hits) != 2:
        raise ReductionError(
            f"slot {slot} occurs {len(hits)} times in {_format_word(word)}", word
        )
    return sorted(hits)


def _file_trace(seq: list, traces: list[list]) -> int:
    """Register a new trace factor; returns the power of d it contributes.

    An empty product traces to d, a bare rho traces to 1; anything still
    holding letters is kept for later moves.
    """
    if not seq:
        return 1
    if seq == [_RHO]:
        return 0
    traces.append(seq)
    return 0


def _contract_slot(slot: int, word: list, traces: list[list]) -> int:
    """Sum out one slot in place; returns the power of d gained."""
    (c1, p1), (c2, p2) = _locate(slot, word, traces)
    tok1 = word[p1] if c1 == -1 else traces[c1][p1]
    tok2 = word[p2] if c2 == -1 else traces[c2][p2]
    if tok1[1] == tok2[1]:
        raise ReductionError(
            f"slot {slot} appears twice with the same dagger flag in {_format_word(word)}",
            word,
        )
    if c1 == -1 and c2 == -1:
        # Sandwich in the word; an empty filling is the adjacent contraction.
        inner = word[p1 + 1 : p2]
        del word[p1 : p2 + 1]
        return 1 + _file_trace(inner, traces)
    if c1 == -1:
        # Partner letter sits in a trace: rotate it last and splice the rest
        # of the trace into the word at the letter position.
        tr = traces.pop(c2)
        word[p1 : p1 + 1] = tr[p2 + 1 :] + tr[:p2]
        return 1
    if c1 == c2:
        # Both letters in one trace: it splits into the two enclosed arcs.
        tr = traces.pop(c1)
        first = tr[p1 + 1 : p2]
        second = tr[p2 + 1 :] + tr[:p1]
        return 1 + _file_trace(first, traces) + _file_trace(second, traces)
    # Letters in two distinct traces: the traces fuse into one.
    hi, lo = traces.pop(c2), traces.pop(c1)
    merged = lo[p1 + 1 :] + lo[:p1] + hi[p2 + 1 :] + hi[:p2]
    return 1 + _file_trace(merged, traces)


def _pick_slot(alive: set[int], word: list, traces: list[list]) -> int:
    """Deterministic move order: clean up trace factors first, then take the
    innermost sandwich remaining in the word."""
    best_key = None
    best_slot = None
    for slot in sorted(alive):
        (c1, p1), (c2, p2) = _locate(slot, word, traces)
        if c1 == -1 and c2 == -1:
            key = (3, p2 - p1, p1, slot)
        elif c1 == -1:
            key = (2, c2, p2, slot)
        elif c1 == c2:
            key = (0, c1, p1, slot)
        else:
            key = (1, c1, p1, slot)
        if best_key is None or key < best_key:
            best_key, best_slot = key, slot
    return best_slot


def _reduce_word(
    word: list, live_slots: Sequence[int], rng: np.random.Generator | None = None
) -> ContractedTerm:
    word = list(word)
    traces: list[list] = []
    alive = set(live_slots)
    power = 0
    while alive:
        if rng is None:
            slot = _pick_slot(alive, word, traces)
        else:
            slot = sorted(alive)[rng.integers(len(alive))]
        power += _contract_slot(slot, word, traces)
        alive.discard(slot)
    if traces:
        raise ReductionError(
            f"dangling trace factors after contraction: {[_format_word(t) for t in traces]}",
            word,
        )
    if word == []:
        return ContractedTerm(TermKind.IDENTITY, power)
    if word == [_RHO]:
        return ContractedTerm(TermKind.RHO, power)
    raise ReductionError(f"word did not contract to I or rho: {_format_word(word)}", word)


# One table serves every parameter sweep: contractions depend only on the
# combinatorics (n, k, k', A_z), never on q, P or d. Inserts are idempotent,
# so concurrent writers are harmless.
_CONTRACTION_CACHE: dict[tuple, ContractedTerm] = {}


def contract_pair(
    k: int, kp: int, zeros: ZeroSubset, rng: np.random.Generator | None = None
) -> ContractedTerm:
    """Contract the summed word of causal-order pair (k, k') for subset A_z.

    Slots listed in ``zeros`` carry the identity; the remaining slots are
    summed over the unitary basis and contracted symbolically. Passing an
    ``rng`` takes the applicable moves in random order (bypassing the cache),
    which is useful for checking that the result is move-order independent.
    """
    nf = math.factorial(zeros.n)
    if not (1 <= k <= nf and 1 <= kp <= nf):
        raise ValueError(f"order labels must be in 1..{nf}, got ({k}, {kp})")
    key = (zeros.n, k, kp, zeros.members)
    if rng is None:
        cached = _CONTRACTION_CACHE.get(key)
        if cached is not None:
            return cached
    term = _reduce_word(_initial_word(k, kp, zeros), zeros.complement, rng)
    if rng is None:
        _CONTRACTION_CACHE[key] = term
    return term


# ---------------------------------------------------------------------------
# Block assembly.
# ---------------------------------------------------------------------------


def _channel_dimension(channels: Sequence[DepolarizingChannel]) -> int:
    if not channels:
        raise ValueError("at least one channel is required")
    d = channels[0].d
    if any(ch.d != d for ch in channels):
        raise ValueError("all channels must share one dimension")
    return d


def assemble_blocks(
    channels: Sequence[DepolarizingChannel], ctrl: ControlSpec
) -> SwitchBlockMatrix:
    """Exact switch output blocks from the symbolic contraction table.

    Block (k, k') collects, over all zero-index subsets A_z,
    sqrt(P_k P_k') * w(A_z) * d^(2(z-N)) * d^power * (I or rho), where
    w(A_z) = prod_{a in A_z} q_a * prod_{b not in A_z} (1-q_b). The weight
    is the factored form of the subset prefactor with all (1-q_a)
    denominators cancelled, so transparent channels (q_a = 1) are regular.
    """
    n = len(channels)
    d = _channel_dimension(channels)
    if ctrl.n != n:
        raise ValueError(f"control is for {ctrl.n} channels, got {n}")
    if n > MAX_ASSEMBLE_CHANNELS:
        raise SizeLimitError(
            f"block assembly supports up to {MAX_ASSEMBLE_CHANNELS} channels, got {n}"
        )
    nf = math.factorial(n)
    qs = [ch.q for ch in channels]
    coeff_id = np.zeros((nf, nf))
    coeff_rho = np.zeros((nf, nf))
    for z in range(n + 1):
        for zeros in zero_subsets(n, z):
            inside = set(zeros.members)
            weight = 1.0
            for j, q in enumerate(qs, start=1):
                weight *= q if j in inside else (1.0 - q)
            if weight == 0.0:
                continue
            base = weight * float(d) ** (2 * (z - n))
            for k in range(1, nf + 1):
                for kp in range(k, nf + 1):
                    term = contract_pair(k, kp, zeros)
                    target = coeff_id if term.kind is TermKind.IDENTITY else coeff_rho
                    target[k - 1, kp - 1] += base * term.scale(d)
    upper = np.triu_indices(nf, 1)
    coeff_id[(upper[1], upper[0])] = coeff_id[upper]
    coeff_rho[(upper[1], upper[0])] = coeff_rho[upper]
    weights = ctrl.density()
    return SwitchBlockMatrix(n=n, d=d, a=coeff_id * weights, b=coeff_rho * weights)


def closed_form_n2(q1: float, q2: float, ctrl: ControlSpec, d: int) -> SwitchBlockMatrix:
    """Hand-expanded switch blocks for two channels.

    With p_i = 1-q_i, r0 = p1 p2, r1 = q1 p2 + q2 p1, r2 = q1 q2, the
    diagonal blocks are P_k [(r0+r1) I/d + r2 rho] and the off-diagonal
    block is sqrt(P1 P2) [(r0 + d^2 r2) rho/d^2 + r1 I/d].
    """
    if ctrl.n != 2:
        raise ValueError("control must describe two channels")
    p1, p2 = 1.0 - q1, 1.0 - q2
    r0 = p1 * p2
    r1 = q1 * p2 + q2 * p1
    r2 = q1 * q2
    probs = ctrl.probs
    cross = math.sqrt(probs[0] * probs[1])
    a = np.array(
        [
            [probs[0] * (r0 + r1) / d, cross * r1 / d],
            [cross * r1 / d, probs[1] * (r0 + r1) / d],
        ]
    )
    b = np.array(
        [
            [probs[0] * r2, cross * (r0 + d * d * r2) / d**2],
            [cross * (r0 + d * d * r2) / d**2, probs[1] * r2],
        ]
    )
    return SwitchBlockMatrix(n=2, d=d, a=a, b=b)


def closed_form_n3(
    q1: float, q2: float, q3: float, ctrl: ControlSpec, d: int
) -> SwitchBlockMatrix:
    """Hand-expanded switch blocks for three channels.

    Coefficients: s0 = p1 p2 p3, t_j = q_j * prod of the other two p's,
    s2 = sum over pairs of q q p, s3 = q1 q2 q3. The fifteen distinct
    off-diagonal entries below follow the causal-order labeling of
    ``enumerate_orders(3)``.
    """
    if ctrl.n != 3:
        raise ValueError("control must describe three channels")
    p1, p2, p3 = 1.0 - q1, 1.0 - q2, 1.0 - q3
    s0 = p1 * p2 * p3
    t1 = q1 * p2 * p3
    t2 = q2 * p1 * p3
    t3 = q3 * p1 * p2
    s2 = q1 * q2 * p3 + q1 * q3 * p2 + q2 * q3 * p1
    s3 = q1 * q2 * q3
    d2, d3 = float(d) ** 2, float(d) ** 3
    off = {
        (1, 2): ((d2 * s2 + d2 * t2 + d2 * t3 + s0) / d3, (d2 * s3 + t1) / d2),
        (1, 3): ((d2 * s2 + d2 * t1 + d2 * t2 + s0) / d3, (d2 * s3 + t3) / d2),
        (1, 4): ((t1 + s2) / d, (d2 * s3 + s0 + t2 + t3) / d2),
        (1, 5): ((s2 + t3) / d, (d2 * s3 + s0 + t1 + t2) / d2),
        (1, 6): ((d2 * s2 + s0) / d3, (d2 * s3 + t1 + t2 + t3) / d2),
        (2, 3): ((s2 + t2) / d, (d2 * s3 + s0 + t1 + t3) / d2),
        (2, 4): ((d2 * s2 + s0) / d3, (d2 * s3 + t1 + t2 + t3) / d2),
        (2, 5): ((d2 * s2 + d2 * t1 + d2 * t3 + s0) / d3, (d2 * s3 + t2) / d2),
        (2, 6): ((s2 + t1) / d, (d2 * s3 + s0 + t2 + t3) / d2),
        (3, 4): ((d2 * s2 + d2 * t1 + d2 * t3 + s0) / d3, (d2 * s3 + t2) / d2),
        (3, 5): ((d2 * s2 + s0) / d3, (d2 * s3 + t1 + t2 + t3) / d2),
        (3, 6): ((s2 + t3) / d, (d2 * s3 + s0 + t1 + t2) / d2),
        (4, 5): ((s2 + t2) / d, (d2 * s3 + s0 + t1 + t3) / d2),
        (4, 6): ((d2 * s2 + d2 * t2 + d2 * t3 + s0) / d3, (d2 * s3 + t1) / d2),
        (5, 6): ((d2 * s2 + d2 * t1 + d2 * t2 + s0) / d3, (d2 * s3 + t3) / d2),
    }
    diag_a = (s0 + s2 + t1 + t2 + t3) / d
    probs = ctrl.probs
    a = np.zeros((6, 6))
    b = np.zeros((6, 6))
    for k in range(6):
        a[k, k] = probs[k] * diag_a
        b[k, k] = probs[k] * s3
    for (k, kp), (ca, cb) in off.items():
        w = math.sqrt(probs[k - 1] * probs[kp - 1])
        a[k - 1, kp - 1] = a[kp - 1, k - 1] = w * ca
        b[k - 1, kp - 1] = b[kp - 1, k - 1] = w * cb
    return SwitchBlockMatrix(n=3, d=d, a=a, b=b)


def realize(sbm: SwitchBlockMatrix, rho: DensityMatrix) -> np.ndarray:
    """Materialize the block matrix for a concrete target state.

    Returns the dense (d*n!) x (d*n!) matrix whose (k, k') block occupies
    rows and columns [(k-1)*d, k*d).
    """
    if rho.d != sbm.d:
        raise ValueError(f"state dimension {rho.d} != block dimension {sbm.d}")
    eye = np.eye(sbm.d, dtype=complex)
    return np.kron(sbm.a, eye) + np.kron(sbm.b, rho.entries)


# ---------------------------------------------------------------------------
# Brute-force reference path.
# ---------------------------------------------------------------------------


def _order_products(
    channels: Sequence[DepolarizingChannel], budget: int
) -> tuple[int, int, list, list]:
    n = len(channels)
    d = _channel_dimension(channels)
    tuples = (d * d + 1) ** n
    if tuples > budget:
        raise SizeLimitError(
            f"brute-force sum needs {tuples} index tuples, budget is {budget}"
        )
    basis = weyl_basis(d)
    kraus = [kraus_set(ch.q, d, basis) for ch in channels]
    slots = list(range(1, n + 1))
    sequences = [apply_order(p, slots) for p in enumerate_orders(n)]
    return n, d, kraus, sequences


def _stacked_kraus(kraus, sequences, tup, d) -> np.ndarray:
    """K_{pi_k} for every causal order k, stacked along axis 0."""
    ops = np.empty((len(sequences), d, d), dtype=complex)
    for k, seq in enumerate(sequences):
        acc = kraus[seq[0] - 1][tup[seq[0] - 1]]
        for slot in seq[1:]:
            acc = acc @ kraus[slot - 1][tup[slot - 1]]
        ops[k] = acc
    return ops


def kraus_sum_output(
    channels: Sequence[DepolarizingChannel],
    ctrl: ControlSpec,
    rho: DensityMatrix,
    budget: int = DEFAULT_TUPLE_BUDGET,
) -> np.ndarray:
    """Switch output by direct summation of the generalized Kraus operators.

    Sums W (rho tensor rho_c) W^dag over all (d^2+1)^n Kraus index tuples,
    where W places K_{pi_k} on the control-diagonal block k. No analytic
    grouping is used, which makes this the independent reference for
    ``assemble_blocks``; it is exponential in n and guarded by ``budget``
    (the maximum number of index tuples).
    """
    n, d, kraus, sequences = _order_products(channels, budget)
    if ctrl.n != n:
        raise ValueError(f"control is for {ctrl.n} channels, got {n}")
    nf = len(sequences)
    blocks = np.zeros((nf, nf, d, d), dtype=complex)
    for tup in product(range(d * d + 1), repeat=n):
        ops = _stacked_kraus(kraus, sequences, tup, d)
        blocks += np.einsum("kab,bc,ldc->klad", ops, rho.entries, ops.conj())
    amps = ctrl.amplitudes
    out = np.zeros((nf * d, nf * d), dtype=complex)
    for k in range(nf):
        for kp in range(nf):
            out[k * d : (k + 1) * d, kp * d : (kp + 1) * d] = (
                amps[k] * amps[kp] * blocks[k, kp]
            )
    return out


def completeness_defect(
    channels: Sequence[DepolarizingChannel], budget: int = DEFAULT_TUPLE_BUDGET
) -> float:
    """Max entrywise deviation of sum_i W_i W_i^dag from the identity.

    The generalized Kraus operators of the switch resolve the identity on
    target and control exactly; this sums them tuple by tuple and reports
    the numerical defect.
    """
    n, d, kraus, sequences = _order_products(channels, budget)
    nf = len(sequences)
    acc = np.zeros((nf, d, d), dtype=complex)
    for tup in product(range(d * d + 1), repeat=n):
        ops = _stacked_kraus(kraus, sequences, tup, d)
        acc += np.einsum("kab,kcb->kac", ops, ops.conj())
    full = np.zeros((nf * d, nf * d), dtype=complex)
    for k in range(nf):
        full[k * d : (k + 1) * d, k * d : (k + 1) * d] = acc[k]
    return float(np.abs(full - np.eye(nf * d)).max())
