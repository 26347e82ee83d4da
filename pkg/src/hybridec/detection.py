"""Detectability and correctability of errors, measurement, and the
dimension of the detectable operator space.

An operator E is detectable when every cross-block compression vanishes
and every within-block compression is a scalar: P_b E P_a equals
lambda_a [a = b] P_a.  All checks work on the K x K blocks of matrix
elements between frame vectors, so the q^n x q^n products are never
materialized.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import error_basis, linalg
from .code_model import HybridCode, encode
from .error_basis import PauliElement
from .linalg import GuardExceededError

EPSILON_LABEL = "epsilon"

# Largest q^n for which the numeric dimension check will assemble its
# linear system; the real split squares the ambient dimension.
NUMERIC_DIMENSION_GUARD = 16

# Largest number of elements a single weight-class scan may enumerate.
SCAN_GUARD = 4**8


class NotDetectableError(ValueError):
    """Raised when an operation requires a detectable operator."""


def error_block_tensor(code: HybridCode, err) -> np.ndarray:
    """Matrix elements <f_j^(b)| E |f_i^(a)> as an (M, K, M, K) array.

    Index order is [b, j, a, i]: bra block and row first.  err may be a
    PauliElement (applied via its permutation action) or a dense matrix.
    """
    v = code.frame_stack
    if isinstance(err, PauliElement):
        if (err.q, err.n) != (code.q, code.n):
            raise ValueError("element parameters do not match the code")
        perm, phase = error_basis.permutation_action(err)
        ev = np.empty_like(v)
        ev[:, perm] = v * phase
    else:
        em = linalg.as_matrix(err)
        dim = code.dimension
        if em.shape != (dim, dim):
            raise linalg.DimensionMismatchError(
                f"operator must be {dim} x {dim}, got {em.shape}"
            )
        ev = v @ em.T
    t = v.conj() @ ev.T
    return t.reshape(code.m, code.k, code.m, code.k)


@dataclass(frozen=True, eq=False)
class DetectabilityReport:
    """Outcome of the detectability test for one operator.

    lambdas holds the per-block scalars and is present only when the
    operator is detectable.  witness names the first offending (b, a)
    block pair, 1-based, when it is not.
    """

    error: object
    detectable: bool
    lambdas: tuple[complex, ...] | None
    max_diag_violation: float
    max_offdiag_violation: float
    witness: tuple[int, int] | None


def detectability(code: HybridCode, err, tol: float | None = None) -> DetectabilityReport:
    """Decide whether the code detects err.

    Scans source blocks a in order and, within each, bra blocks b, so
    the recorded witness is the first failing pair in that order.
    """
    tol = linalg.ENTRY_TOL if tol is None else tol
    t = error_block_tensor(code, err)
    m, k = code.m, code.k
    eye = np.eye(k)
    lambdas = []
    max_diag = 0.0
    max_off = 0.0
    witness = None
    for a in range(m):
        block_aa = t[a, :, a, :]
        lam = complex(np.trace(block_aa) / k)
        lambdas.append(lam)
        for b in range(m):
            if b == a:
                dev = float(np.max(np.abs(block_aa - lam * eye)))
                max_diag = max(max_diag, dev)
            else:
                dev = float(np.max(np.abs(t[b, :, a, :])))
                max_off = max(max_off, dev)
            if witness is None and dev > tol:
                witness = (b + 1, a + 1)
    detectable = witness is None
    return DetectabilityReport(
        error=err,
        detectable=detectable,
        lambdas=tuple(lambdas) if detectable else None,
        max_diag_violation=max_diag,
        max_offdiag_violation=max_off,
        witness=witness,
    )


def all_detectable_of_weight(
    code: HybridCode,
    d: int,
    tol: float | None = None,
    max_counterexamples: int = 10,
) -> tuple[bool, list[DetectabilityReport]]:
    """Scan every weight-d basis error; collect the first failures.

    Enumeration order is the deterministic order of enumerate_weight, so
    the counterexample list is reproducible.  Scanning stops once the
    counterexample cap is reached.
    """
    elements = error_basis.enumerate_weight(code.q, code.n, d)
    if len(elements) > SCAN_GUARD:
        raise GuardExceededError(
            f"weight class has {len(elements)} elements, guard is {SCAN_GUARD}"
        )
    failures: list[DetectabilityReport] = []
    for e in elements:
        rep = detectability(code, e, tol)
        if not rep.detectable:
            failures.append(rep)
            if len(failures) >= max_counterexamples:
                break
    return (not failures), failures


def is_correctable_set(
    code: HybridCode,
    errors: Sequence[PauliElement],
    tol: float | None = None,
) -> tuple[bool, tuple[PauliElement, PauliElement] | None]:
    """Whether the code corrects the given error set.

    The criterion is stated for sets containing the identity: every
    composed element adjoint(f) e over ordered pairs must be detectable.
    Returns the first failing pair (f, e) in input order as witness.
    """
    errors = list(errors)
    if not errors:
        raise ValueError("error set must be nonempty")
    for f in errors:
        for e in errors:
            g = error_basis.compose_adjoint_left(f, e)
            if not detectability(code, g, tol).detectable:
                return False, (f, e)
    return True, None


class DetectableDimensions(NamedTuple):
    hybrid: int
    quantum: int


def detectable_dimension_formula(n: int, k: int, m: int, q: int) -> DetectableDimensions:
    """Dimension of the space of detectable operators, in closed form.

    hybrid counts the detectable space of an ((n, K:M))_q code; quantum
    is the comparison value for a quantum-only code of the same size
    K*M.  The two differ by exactly M - 1.
    """
    if q < 2 or n < 1 or k < 1 or m < 1:
        raise ValueError("need q >= 2, n >= 1, K >= 1, M >= 1")
    if m * k > q**n:
        raise ValueError(f"M*K = {m * k} does not fit in dimension {q**n}")
    total = q ** (2 * n)
    return DetectableDimensions(total - (m * k) ** 2 + m, total - (m * k) ** 2 + 1)


def detectable_dimension_numeric(code: HybridCode, tol: float = 1e-8) -> int:
    """Dimension of the detectable operator space from a rank computation.

    Assembles the linear constraints on E (cross-block compressions
    vanish, within-block compressions are scalar) as a real system with
    real and imaginary parts split, and subtracts its rank from q^(2n).
    Guarded to q^n <= 16; the split system already has 2 q^(2n) columns.
    """
    dim = code.dimension
    if dim > NUMERIC_DIMENSION_GUARD:
        raise GuardExceededError(
            f"q^n = {dim} exceeds the numeric dimension guard ({NUMERIC_DIMENSION_GUARD})"
        )
    m, k = code.m, code.k
    frames = [b.frame for b in code.blocks]
    rows: list[np.ndarray] = []
    for a in range(m):
        for b in range(m):
            if b == a:
                ref = np.outer(frames[a][0].conj(), frames[a][0]).ravel()
                for j in range(k):
                    for i in range(k):
                        row = np.outer(frames[a][j].conj(), frames[a][i]).ravel()
                        if j == i:
                            if j > 0:
                                rows.append(ref - row)
                        else:
                            rows.append(row)
            else:
                for j in range(k):
                    for i in range(k):
                        rows.append(np.outer(frames[b][j].conj(), frames[a][i]).ravel())
    if not rows:
        return dim * dim
    a_c = np.array(rows)
    real_system = np.block([[a_c.real, -a_c.imag], [a_c.imag, a_c.real]])
    rank = linalg.numeric_rank(real_system, tol)
    # The system is complex-linear, so the real rank is even.
    return dim * dim - rank // 2


@dataclass(frozen=True, eq=False)
class PositiveParts:
    """A detectable operator split into positive detectable pieces.

    recombine() returns sum(coefficient * operator), which reproduces
    the original operator.
    """

    operators: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]
    coefficients: tuple[complex, complex, complex, complex]

    def recombine(self) -> np.ndarray:
        out = np.zeros_like(self.operators[0])
        for c, op in zip(self.coefficients, self.operators):
            out = out + c * op
        return out


def operator_system_decompose(code: HybridCode, err, tol: float | None = None) -> PositiveParts:
    """Write a detectable operator as a combination of positive detectable ones.

    With A and B the Hermitian and anti-Hermitian parts, the pieces are
    ||A|| 1, ||A|| 1 - A, ||B|| 1, ||B|| 1 - B with coefficients
    (1, -1, i, -i).  Each piece is verified positive semidefinite and
    detectable.  Raises NotDetectableError when err is not detectable.
    """
    tol = linalg.ENTRY_TOL if tol is None else tol
    e_mat = error_basis.realize(err) if isinstance(err, PauliElement) else linalg.as_matrix(err)
    dim = code.dimension
    if e_mat.shape != (dim, dim):
        raise linalg.DimensionMismatchError(
            f"operator must be {dim} x {dim}, got {e_mat.shape}"
        )
    rep = detectability(code, e_mat, tol)
    if not rep.detectable:
        raise NotDetectableError(
            f"operator is not detectable (witness block pair {rep.witness})"
        )
    herm = (e_mat + e_mat.conj().T) / 2
    anti = 1j * (e_mat.conj().T - e_mat) / 2
    eye = np.eye(dim, dtype=complex)
    ops = []
    for part in (herm, anti):
        nrm = float(np.linalg.norm(part, 2))
        ops.extend((nrm * eye, nrm * eye - part))
    for idx, op in enumerate(ops):
        low = float(np.min(np.linalg.eigvalsh((op + op.conj().T) / 2)))
        if low < -tol * (1.0 + abs(low)):
            raise ArithmeticError(f"piece {idx} is not positive semidefinite ({low:.3e})")
        if not detectability(code, op, tol).detectable:
            raise ArithmeticError(f"piece {idx} is not detectable")
    return PositiveParts(tuple(ops), (1 + 0j, -1 + 0j, 1j, -1j))


@dataclass(frozen=True, eq=False)
class MeasurementOutcome:
    """One branch of the code measurement.

    label is the message index (1-based) or EPSILON_LABEL for the error
    outcome.  post_state is the normalized projection, or None when the
    probability is below 1e-15.
    """

    label: int | str
    probability: float
    post_state: np.ndarray | None


def measure(code: HybridCode, state, tol: float | None = None) -> list[MeasurementOutcome]:
    """Projective measurement of a unit state against the code blocks.

    Outcomes are ordered 1..M then the error label; their probabilities
    sum to one.
    """
    tol = linalg.ENTRY_TOL if tol is None else tol
    state = linalg.as_vector(state)
    dim = code.dimension
    if state.shape != (dim,):
        raise linalg.DimensionMismatchError(
            f"state must have {dim} entries, got {state.shape[0]}"
        )
    nrm = float(np.linalg.norm(state))
    if abs(nrm - 1.0) > max(tol, 1e-9):
        raise ValueError(f"state must be a unit vector, norm is {nrm!r}")
    outcomes: list[MeasurementOutcome] = []
    residual = state.copy()
    for m_idx, block in enumerate(code.blocks):
        amps = block.frame.conj() @ state
        prob = float(np.real(amps.conj() @ amps))
        proj = amps @ block.frame
        residual = residual - proj
        post = proj / np.sqrt(prob) if prob >= 1e-15 else None
        outcomes.append(MeasurementOutcome(m_idx + 1, prob, post))
    prob_eps = float(np.real(residual.conj() @ residual))
    post_eps = residual / np.sqrt(prob_eps) if prob_eps >= 1e-15 else None
    outcomes.append(MeasurementOutcome(EPSILON_LABEL, prob_eps, post_eps))
    return outcomes


@dataclass(frozen=True, eq=False)
class TransmissionTally:
    """Sampled outcome counts for one simulated transmission."""

    counts: dict[int | str, int]
    probabilities: dict[int | str, float]
    post_state_fidelity: float | None


def simulate_transmission(
    code: HybridCode,
    m: int,
    phi,
    err,
    trials: int,
    seed: int,
) -> TransmissionTally:
    """Encode message m with state phi, apply err, measure trials times.

    Sampling uses a generator seeded with seed, so the tally is
    deterministic.  Outcome probabilities below 1e-15 are clamped to
    zero before sampling; for a detectable error this guarantees no
    wrong-message outcomes at all.  post_state_fidelity is the overlap
    of the message-m post state with the encoded state, when that
    outcome is possible.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    sent = encode(code, m, phi)
    if isinstance(err, PauliElement):
        received = error_basis.apply_to_state(err, sent)
    else:
        e_mat = linalg.as_matrix(err)
        dim = code.dimension
        if e_mat.shape != (dim, dim):
            raise linalg.DimensionMismatchError(
                f"operator must be {dim} x {dim}, got {e_mat.shape}"
            )
        received = e_mat @ sent
    nrm = float(np.linalg.norm(received))
    if nrm < 1e-12:
        raise ValueError("error operator annihilates the encoded state")
    outcomes = measure(code, received / nrm)
    probs = np.array([o.probability for o in outcomes])
    probs[probs < 1e-15] = 0.0
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    draws = rng.choice(len(outcomes), size=trials, p=probs)
    hist = np.bincount(draws, minlength=len(outcomes))
    counts = {o.label: int(c) for o, c in zip(outcomes, hist)}
    probabilities = {o.label: o.probability for o in outcomes}
    fid = None
    post_m = outcomes[m - 1].post_state
    if post_m is not None:
        fid = float(abs(np.vdot(sent, post_m)))
    return TransmissionTally(counts, probabilities, fid)
