"""Weight distributions of a hybrid code and the identities linking them.

Four distributions are computed over the basis errors of each weight d:

  A_d    averages |Tr(P_a E)|^2 and carries normalization 1/(K^2 M),
  B_d    averages the two-sided compressions, normalization 1/(K M),
  A'_d   the block-diagonal part of B ("A perp"),
  C_d    the cross-block part, so B = A' + C termwise.

Simplified mode evaluates everything through K x K frame blocks; the
definitional mode materializes the projectors and evaluates the traces
as written, which is kept as an independent cross-check at small sizes.
The distributions satisfy a substitution transform carried out in exact
rational arithmetic, and A_d = B_d at weight d exactly when every
weight-d error is detectable; the smallest weight where they part is
the detection distance.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import detection, error_basis, linalg
from .code_model import HybridCode, projector
from .linalg import GuardExceededError, RationalPolynomial, poly_substitute_macwilliams

# Full-scan cost guard: total enumerated elements per computation.
ENUMERATION_GUARD = 4**8

# Fixed chunk size for parallel scans.  Chunk boundaries, and with them
# the floating-point reduction order, must not depend on the worker
# count, so results are byte-identical for any jobs value.
_CHUNK = 2048

SNAP_THRESHOLD = 1e-6


@dataclass(frozen=True)
class WeightDistribution:
    """One distribution, indexed by weight.

    values[d] is the coefficient at weight d.  A full computation has
    n + 1 values; a capped one (max_weight) stops early.  exact_values
    is present when every coefficient snapped to a rational with the
    distribution's natural denominator, or when the values came out of
    the exact transform.
    """

    kind: str
    n: int
    values: tuple[float, ...]
    exact_values: tuple[Fraction, ...] | None = None

    @property
    def complete(self) -> bool:
        return len(self.values) == self.n + 1

    def total(self) -> float:
        return float(sum(self.values))


def snap_to_rationals(values, denominator: int, threshold: float = SNAP_THRESHOLD):
    """Nearest rationals with the given denominator, or None if any value
    is farther than threshold from its candidate."""
    out = []
    for v in values:
        fr = Fraction(round(v * denominator), denominator)
        if abs(v - float(fr)) > threshold:
            return None
        out.append(fr)
    return tuple(out)


def _check_scan_size(q: int, n: int, max_d: int):
    total = sum(len(error_basis.enumerate_weight(q, n, d)) for d in range(max_d + 1))
    if total > ENUMERATION_GUARD:
        raise GuardExceededError(
            f"scan would enumerate {total} elements, guard is {ENUMERATION_GUARD}; "
            f"restrict max_weight"
        )


def _frame_terms(code: HybridCode, elements) -> np.ndarray:
    """Accumulated (a, a_perp, c, b) sums for a run of elements.

    Terms come from the (M, K, M, K) block tensor of each element:
    squared block-diagonal traces for a, squared moduli split into the
    block-diagonal and cross parts for a_perp and c, and their full sum
    for b.  Elements are consumed in order; the accumulation order is
    part of the determinism contract.
    """
    m, k = code.m, code.k
    diag = np.arange(m)
    acc = np.zeros(4)
    for e in elements:
        t = detection.error_block_tensor(code, e)
        diag_blocks = t[diag, :, diag, :]
        traces = np.trace(diag_blocks, axis1=1, axis2=2)
        absq = np.abs(t) ** 2
        b_term = float(absq.sum())
        aperp_term = float(absq[diag, :, diag, :].sum())
        off_term = 0.0
        for a in range(m):
            for b in range(m):
                if b != a:
                    off_term += float(absq[b, :, a, :].sum())
        acc += (
            float(np.sum(np.abs(traces) ** 2)),
            aperp_term,
            off_term,
            b_term,
        )
    return acc


def _frame_scan(code: HybridCode, max_d: int, jobs: int) -> list[np.ndarray]:
    """Per-weight (a, a_perp, c, b) sums for d = 0..max_d."""
    per_weight = []
    for d in range(max_d + 1):
        elements = list(error_basis.enumerate_weight(code.q, code.n, d))
        chunks = [elements[i:i + _CHUNK] for i in range(0, len(elements), _CHUNK)]
        if jobs > 1 and len(chunks) > 1:
            with ThreadPoolExecutor(max_workers=jobs) as pool:
                partials = list(pool.map(lambda ch: _frame_terms(code, ch), chunks))
        else:
            partials = [_frame_terms(code, ch) for ch in chunks]
        acc = np.zeros(4)
        for p in partials:
            acc += p
        per_weight.append(acc)
    return per_weight


def _projector_scan(code: HybridCode, max_d: int) -> list[np.ndarray]:
    """Per-weight (a, b) sums evaluated through materialized projectors.

    a accumulates |Tr(P_b E P_a)|^2 over ordered block pairs; b
    accumulates the squared Frobenius norm of P_b E P_a times the trace
    of P_a.  Quadratic memory in q^n, so only used for cross-checks.
    """
    ps = [projector(blk) for blk in code.blocks]
    traces = [float(np.real(np.trace(p))) for p in ps]
    per_weight = []
    for d in range(max_d + 1):
        acc = np.zeros(2)
        for e in error_basis.enumerate_weight(code.q, code.n, d):
            em = error_basis.realize(e)
            for b, pb in enumerate(ps):
                left = pb @ em
                for a, pa in enumerate(ps):
                    tr = linalg.trace_product(left, pa)
                    x = left @ pa
                    acc += (
                        abs(tr) ** 2,
                        float(np.sum(np.abs(x) ** 2)) * traces[a],
                    )
        per_weight.append(acc)
    return per_weight


def _resolve_max_weight(code: HybridCode, max_weight: int | None) -> int:
    max_d = code.n if max_weight is None else max_weight
    if not 0 <= max_d <= code.n:
        raise ValueError(f"max_weight must lie in [0, {code.n}]")
    _check_scan_size(code.q, code.n, max_d)
    return max_d


def compute_distributions(
    code: HybridCode,
    *,
    jobs: int = 1,
    max_weight: int | None = None,
    c_mode: str = "direct",
) -> dict[str, WeightDistribution]:
    """All four distributions from one simplified-mode scan.

    c_mode picks how C is produced: "direct" sums the cross-block terms
    as encountered, "difference" subtracts A' from B after the fact.
    """
    if c_mode not in ("direct", "difference"):
        raise ValueError(f"unknown c_mode {c_mode!r}")
    max_d = _resolve_max_weight(code, max_weight)
    sums = _frame_scan(code, max_d, jobs)
    k, m = code.k, code.m
    a_vals = tuple(float(s[0] / (k * k * m)) for s in sums)
    aperp_vals = tuple(float(s[1] / (k * m)) for s in sums)
    b_vals = tuple(float(s[3] / (k * m)) for s in sums)
    if c_mode == "direct":
        c_vals = tuple(float(s[2] / (k * m)) for s in sums)
    else:
        c_vals = tuple(b - ap for b, ap in zip(b_vals, aperp_vals))
    return {
        "A": WeightDistribution("A", code.n, a_vals, snap_to_rationals(a_vals, k * k * m)),
        "A_perp": WeightDistribution("A_perp", code.n, aperp_vals,
                                     snap_to_rationals(aperp_vals, k * m)),
        "C": WeightDistribution("C", code.n, c_vals, snap_to_rationals(c_vals, k * m)),
        "B": WeightDistribution("B", code.n, b_vals, snap_to_rationals(b_vals, k * m)),
    }


def weights_a(
    code: HybridCode,
    mode: str = "simplified",
    *,
    jobs: int = 1,
    max_weight: int | None = None,
) -> WeightDistribution:
    """Distribution A.  Modes: "simplified" (frame blocks) or
    "definitional" (materialized projectors, the double block sum)."""
    if mode == "simplified":
        return compute_distributions(code, jobs=jobs, max_weight=max_weight)["A"]
    if mode != "definitional":
        raise ValueError(f"unknown mode {mode!r}")
    max_d = _resolve_max_weight(code, max_weight)
    sums = _projector_scan(code, max_d)
    k, m = code.k, code.m
    vals = tuple(float(s[0] / (k * k * m)) for s in sums)
    return WeightDistribution("A", code.n, vals, snap_to_rationals(vals, k * k * m))


def weights_b(
    code: HybridCode,
    mode: str = "simplified",
    *,
    jobs: int = 1,
    max_weight: int | None = None,
) -> WeightDistribution:
    """Distribution B, with the same mode choice as weights_a."""
    if mode == "simplified":
        return compute_distributions(code, jobs=jobs, max_weight=max_weight)["B"]
    if mode != "definitional":
        raise ValueError(f"unknown mode {mode!r}")
    max_d = _resolve_max_weight(code, max_weight)
    sums = _projector_scan(code, max_d)
    k, m = code.k, code.m
    # Definitional normalization 1/(K^2 M); each term carries a factor
    # Tr(P_a) which collapses it to the simplified 1/(K M) form.
    vals = tuple(float(s[1] / (k * k * m)) for s in sums)
    return WeightDistribution("B", code.n, vals, snap_to_rationals(vals, k * m))


def weights_a_perp(
    code: HybridCode,
    *,
    jobs: int = 1,
    max_weight: int | None = None,
) -> WeightDistribution:
    """Block-diagonal part of B."""
    return compute_distributions(code, jobs=jobs, max_weight=max_weight)["A_perp"]


def weights_c(
    code: HybridCode,
    mode: str = "direct",
    *,
    jobs: int = 1,
    max_weight: int | None = None,
) -> WeightDistribution:
    """Cross-block part of B; mode "direct" or "difference"."""
    return compute_distributions(code, jobs=jobs, max_weight=max_weight, c_mode=mode)["C"]


def macwilliams_of_a(
    source,
    *,
    k: int | None = None,
    n: int | None = None,
    q: int | None = None,
    jobs: int = 1,
) -> WeightDistribution:
    """Transform distribution A into A' by the exact substitution.

    source may be a HybridCode (A is computed first) or an A
    distribution, in which case k, n, q must be supplied (or are taken
    from a WeightDistribution plus k, q).  Coefficients that did not
    snap to rationals are converted exactly from their binary values, so
    the substitution itself never rounds.
    """
    if isinstance(source, HybridCode):
        dist = weights_a(source, jobs=jobs)
        k, n, q = source.k, source.n, source.q
    elif isinstance(source, WeightDistribution):
        dist = source
        n = dist.n if n is None else n
        if k is None or q is None:
            raise ValueError("k and q are required alongside a distribution")
    else:
        values = tuple(float(v) for v in source)
        if k is None or n is None or q is None:
            raise ValueError("k, n, q are required alongside raw values")
        dist = WeightDistribution("A", n, values)
    if not dist.complete:
        raise ValueError("transform needs the full distribution; drop max_weight")
    if abs(dist.values[0] - 1.0) > 1e-6:
        raise ValueError(f"A must start at 1, got {dist.values[0]!r}")
    if dist.exact_values is not None:
        coeffs = dist.exact_values
    else:
        coeffs = tuple(Fraction(v) for v in dist.values)
    poly = RationalPolynomial(coeffs)
    out = poly_substitute_macwilliams(poly, n, q, Fraction(k, q**n))
    exact = tuple(out.coefficient(d) for d in range(n + 1))
    return WeightDistribution(
        "A_perp", n, tuple(float(c) for c in exact), exact
    )


def min_detection_weight(code: HybridCode, tol: float | None = None, *, jobs: int = 1) -> int:
    """Smallest weight where A and B part ways; n + 1 when they never do.

    A weight d with A_d = B_d means every weight-d error is detectable,
    so this is the code's detection distance.
    """
    tol = linalg.ENTRY_TOL if tol is None else tol
    dists = compute_distributions(code, jobs=jobs)
    a, b = dists["A"].values, dists["B"].values
    for d in range(1, code.n + 1):
        if abs(a[d] - b[d]) > tol:
            return d
    return code.n + 1


@dataclass(frozen=True)
class WeightRow:
    """One line of the identity report's per-weight table."""

    d: int
    a: float
    b: float
    a_perp: float
    a_perp_transform: float
    c: float
    equal: bool
    all_detectable: bool


@dataclass(frozen=True)
class IdentityReport:
    """Joint check of the structural identities on one code.

    macwilliams_residual compares the transformed A against the directly
    computed A'; additivity_residual checks B = A' + C termwise;
    equivalence_ok records that A_d = B_d exactly matches brute-force
    detectability at every weight.
    """

    a: WeightDistribution
    b: WeightDistribution
    a_perp: WeightDistribution
    a_perp_transform: WeightDistribution
    c: WeightDistribution
    macwilliams_residual: float
    additivity_residual: float
    c_nonneg_ok: bool
    equivalence_ok: bool
    detection_distance: int
    rows: tuple[WeightRow, ...]


def verify_identities(
    code: HybridCode,
    tol: float | None = None,
    *,
    jobs: int = 1,
) -> IdentityReport:
    """Compute all distributions and check the identities tying them together."""
    tol = linalg.ENTRY_TOL if tol is None else tol
    dists = compute_distributions(code, jobs=jobs)
    a, b = dists["A"], dists["B"]
    aperp, c = dists["A_perp"], dists["C"]
    transform = macwilliams_of_a(a, k=code.k, n=code.n, q=code.q)
    mac_res = max(
        abs(x - y) for x, y in zip(aperp.values, transform.values)
    )
    add_res = max(
        abs(bv - (av + cv))
        for bv, av, cv in zip(b.values, aperp.values, c.values)
    )
    c_ok = all(v >= -tol for v in c.values)
    rows = []
    equivalence_ok = True
    distance = code.n + 1
    for d in range(code.n + 1):
        equal = abs(a.values[d] - b.values[d]) <= tol
        if not equal and distance == code.n + 1:
            distance = d
        detectable_all, _ = detection.all_detectable_of_weight(
            code, d, tol, max_counterexamples=1
        )
        if equal != detectable_all:
            equivalence_ok = False
        rows.append(
            WeightRow(
                d,
                a.values[d],
                b.values[d],
                aperp.values[d],
                transform.values[d],
                c.values[d],
                equal,
                detectable_all,
            )
        )
    return IdentityReport(
        a=a,
        b=b,
        a_perp=aperp,
        a_perp_transform=transform,
        c=c,
        macwilliams_residual=mac_res,
        additivity_residual=add_res,
        c_nonneg_ok=c_ok,
        equivalence_ok=equivalence_ok,
        detection_distance=distance,
        rows=tuple(rows),
    )


def sum_rule_targets(code: HybridCode) -> tuple[float, float]:
    """Expected totals: sum A_d = q^n / K and sum B_d = q^n K M."""
    return (code.dimension / code.k, float(code.dimension * code.k * code.m))
