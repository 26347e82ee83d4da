"""Dense complex linear algebra and exact rational polynomial arithmetic.

Matrices and vectors are plain numpy arrays with dtype complex128.  The
helpers here add shape checking and fix the conventions the rest of the
package relies on: the Kronecker product keeps the left factor as the
slow (most significant) index, and floating-point reductions run in a
fixed order so repeated runs are bit-identical.

Polynomials carry Fraction coefficients so transform identities can be
checked without any rounding.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

import numpy as np

# Default absolute tolerances: entrywise matrix comparisons and scalar
# identities respectively.  Operations take an optional tol argument and
# fall back to these, so a caller can retune the whole package globally.
ENTRY_TOL = 1e-9
SCALAR_TOL = 1e-12


class DimensionMismatchError(ValueError):
    """Operand shapes do not compose."""


class DegreeOverflowError(ValueError):
    """Polynomial degree exceeds what the transform target can hold."""


class GuardExceededError(RuntimeError):
    """A requested computation exceeds the desk-scale cost guard."""


def as_matrix(a) -> np.ndarray:
    """Coerce to a 2-d complex array, rejecting non-finite entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise DimensionMismatchError(f"expected a 2-d array, got shape {m.shape}")
    if m.size and not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def as_vector(a) -> np.ndarray:
    """Coerce to a 1-d complex array, rejecting non-finite entries."""
    v = np.asarray(a, dtype=complex)
    if v.ndim != 1:
        raise DimensionMismatchError(f"expected a 1-d array, got shape {v.shape}")
    if v.size and not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    return v


def mat_mul(a, b) -> np.ndarray:
    """Matrix product."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatchError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def adjoint(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(a).conj().T


def trace_product(a, b) -> complex:
    """Tr(a b), accumulated entrywise without forming the product matrix."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0] or a.shape[0] != b.shape[1]:
        raise DimensionMismatchError(
            f"shapes {a.shape} and {b.shape} do not compose to a square"
        )
    return complex(np.einsum("ij,ji->", a, b))


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product; the left factor is the slow index."""
    return np.kron(as_matrix(a), as_matrix(b))


def orthonormalize(vectors: Iterable, tol: float = 1e-10) -> list[np.ndarray]:
    """Orthonormal basis for the span of the input vectors.

    Gram-Schmidt with a second re-orthogonalization pass to control
    cancellation.  Vectors whose residual norm falls below tol are
    dropped, so the result has one entry per independent input.
    """
    vecs = [as_vector(v) for v in vectors]
    if not vecs:
        raise ValueError("orthonormalize needs at least one vector")
    dim = vecs[0].shape[0]
    if any(v.shape[0] != dim for v in vecs):
        raise DimensionMismatchError("vectors must share one dimension")
    basis: list[np.ndarray] = []
    for v in vecs:
        w = v.copy()
        for _ in range(2):
            for u in basis:
                w = w - (u.conj() @ w) * u
        nrm = float(np.linalg.norm(w))
        if nrm >= tol:
            basis.append(w / nrm)
    return basis


def numeric_rank(a, tol: float = 1e-10) -> int:
    """Number of singular values above tol relative to the largest one."""
    a = as_matrix(a)
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] <= 0.0:
        return 0
    return int(np.count_nonzero(s > tol * s[0]))


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"exact rational coefficient required, got {type(x).__name__}")


class RationalPolynomial:
    """Univariate polynomial with exact Fraction coefficients.

    coeffs[d] multiplies z**d.  Trailing zero coefficients are trimmed on
    construction; the zero polynomial keeps a single zero coefficient and
    reports degree -1.  No operation on this type ever rounds.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = [_as_fraction(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [Fraction(0)]
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("RationalPolynomial is immutable")

    @property
    def degree(self) -> int:
        if len(self.coeffs) == 1 and self.coeffs[0] == 0:
            return -1
        return len(self.coeffs) - 1

    def coefficient(self, d: int) -> Fraction:
        if 0 <= d < len(self.coeffs):
            return self.coeffs[d]
        return Fraction(0)

    def evaluate(self, x) -> Fraction:
        x = _as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        size = max(len(self.coeffs), len(other.coeffs))
        return RationalPolynomial(
            self.coefficient(d) + other.coefficient(d) for d in range(size)
        )

    def __mul__(self, other) -> "RationalPolynomial":
        if isinstance(other, RationalPolynomial):
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return RationalPolynomial(out)
        if isinstance(other, (int, Fraction)):
            s = _as_fraction(other)
            return RationalPolynomial(c * s for c in self.coeffs)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RationalPolynomial({list(self.coeffs)!r})"


def poly_substitute_macwilliams(p, n: int, q: int, scale) -> RationalPolynomial:
    """Expand scale * sum_d p_d (1-z)^d (1+(q^2-1)z)^(n-d) exactly.

    This is the substitution step of the weight-distribution transform;
    the caller supplies the normalizing scale as an exact rational.  The
    input degree must not exceed n.
    """
    if not isinstance(p, RationalPolynomial):
        p = RationalPolynomial(p)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if q < 2:
        raise ValueError("q must be at least 2")
    if p.degree > n:
        raise DegreeOverflowError(f"degree {p.degree} exceeds n = {n}")
    lam = q * q - 1
    out = [Fraction(0)] * (n + 1)
    for d, c in enumerate(p.coeffs):
        if c == 0:
            continue
        first = [Fraction(comb(d, k) * (-1) ** k) for k in range(d + 1)]
        second = [Fraction(comb(n - d, j) * lam**j) for j in range(n - d + 1)]
        for k, fk in enumerate(first):
            if fk == 0:
                continue
            for j, sj in enumerate(second):
                out[k + j] += c * fk * sj
    s = _as_fraction(scale)
    return RationalPolynomial(s * c for c in out)


def max_abs_diff(a, b) -> float:
    """Largest entrywise absolute difference between two arrays."""
    a, b = np.asarray(a, dtype=complex), np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"shape {a.shape} differs from {b.shape}")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))
