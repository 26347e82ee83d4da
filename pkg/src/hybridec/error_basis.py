"""Shift-and-clock error operators on n digits with q levels each.

An element is recorded by two exponent vectors.  Digit i contributes the
factor X^(x_i) Z^(z_i), where X|j> = |j+1 mod q> and Z|j> = w^j |j> with
w = exp(2*pi*i/q).  Basis states of the q^n dimensional space are indexed
big-endian: the first digit is the most significant.  For q = 2 the pair
x = z = 1 realizes the product XZ, which differs from the Hermitian Y by
a phase; every quantity computed downstream is insensitive to that phase.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from math import comb

import numpy as np

from .linalg import DimensionMismatchError


@dataclass(frozen=True)
class PauliElement:
    """One basis error, identified by its shift and clock exponents."""

    q: int
    n: int
    xvec: tuple[int, ...]
    zvec: tuple[int, ...]

    def __post_init__(self):
        if self.q < 2:
            raise ValueError("q must be at least 2")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        object.__setattr__(self, "xvec", tuple(int(v) for v in self.xvec))
        object.__setattr__(self, "zvec", tuple(int(v) for v in self.zvec))
        if len(self.xvec) != self.n or len(self.zvec) != self.n:
            raise ValueError("exponent vectors must have length n")
        if not all(0 <= v < self.q for v in self.xvec + self.zvec):
            raise ValueError("exponents must lie in [0, q)")

    @classmethod
    def identity(cls, q: int, n: int) -> "PauliElement":
        return cls(q, n, (0,) * n, (0,) * n)

    @property
    def is_identity(self) -> bool:
        return not any(self.xvec) and not any(self.zvec)

    def __str__(self) -> str:
        return format_element(self)


def weight(e: PauliElement) -> int:
    """Number of digits the element acts on nontrivially."""
    return sum(1 for x, z in zip(e.xvec, e.zvec) if x or z)


@functools.lru_cache(maxsize=None)
def _digit_table(q: int, n: int) -> np.ndarray:
    """Digit strings of all q^n basis indices, most significant first."""
    idx = np.arange(q**n, dtype=np.int64)
    digits = np.empty((q**n, n), dtype=np.int64)
    for i in range(n - 1, -1, -1):
        digits[:, i] = idx % q
        idx = idx // q
    digits.setflags(write=False)
    return digits


@functools.lru_cache(maxsize=None)
def _place_values(q: int, n: int) -> np.ndarray:
    p = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    p.setflags(write=False)
    return p


@functools.lru_cache(maxsize=None)
def _root_powers(q: int) -> np.ndarray:
    """Powers of the primitive q-th root of unity, exact on the axes."""
    out = np.empty(q, dtype=complex)
    for k in range(q):
        if (4 * k) % q == 0:
            out[k] = (1, 1j, -1, -1j)[(4 * k // q) % 4]
        else:
            out[k] = np.exp(2j * np.pi * k / q)
    out.setflags(write=False)
    return out


def permutation_action(e: PauliElement) -> tuple[np.ndarray, np.ndarray]:
    """The element as a phase-decorated index permutation.

    Returns (perm, phase) such that applying the element to a vector v
    produces out with out[perm[j]] = phase[j] * v[j] for every basis
    index j.  This is the fast path shared by realize and apply_to_state.
    """
    digits = _digit_table(e.q, e.n)
    x = np.asarray(e.xvec, dtype=np.int64)
    z = np.asarray(e.zvec, dtype=np.int64)
    perm = ((digits + x) % e.q) @ _place_values(e.q, e.n)
    phase = _root_powers(e.q)[(digits @ z) % e.q]
    return perm, phase


def realize(e: PauliElement) -> np.ndarray:
    """Dense unitary matrix of the element on the q^n dimensional space."""
    perm, phase = permutation_action(e)
    d = e.q**e.n
    m = np.zeros((d, d), dtype=complex)
    m[perm, np.arange(d)] = phase
    return m


def apply_to_state(e: PauliElement, v) -> np.ndarray:
    """Apply the element to a state vector without building its matrix."""
    v = np.asarray(v, dtype=complex)
    d = e.q**e.n
    if v.shape != (d,):
        raise DimensionMismatchError(f"state must have shape ({d},), got {v.shape}")
    perm, phase = permutation_action(e)
    out = np.empty(d, dtype=complex)
    out[perm] = phase * v
    return out


@functools.lru_cache(maxsize=None)
def _nonidentity_pairs(q: int) -> tuple[tuple[int, int], ...]:
    return tuple(
        (x, z) for x in range(q) for z in range(q) if (x, z) != (0, 0)
    )


@dataclass(frozen=True)
class WeightedPauliSet:
    """Lazy, deterministically ordered view of all weight-d elements.

    Iteration is lexicographic: support positions first (as emitted by
    itertools.combinations), then the per-position (x, z) pairs.
    """

    q: int
    n: int
    d: int

    def __len__(self) -> int:
        return comb(self.n, self.d) * (self.q * self.q - 1) ** self.d

    def __iter__(self):
        pairs = _nonidentity_pairs(self.q)
        for support in itertools.combinations(range(self.n), self.d):
            for assign in itertools.product(pairs, repeat=self.d):
                xv = [0] * self.n
                zv = [0] * self.n
                for pos, (x, z) in zip(support, assign):
                    xv[pos] = x
                    zv[pos] = z
                yield PauliElement(self.q, self.n, tuple(xv), tuple(zv))


def enumerate_weight(q: int, n: int, d: int) -> WeightedPauliSet:
    """All elements of exact weight d, in a fixed lexicographic order."""
    if q < 2 or n < 1:
        raise ValueError("need q >= 2 and n >= 1")
    if not 0 <= d <= n:
        raise ValueError(f"weight must lie in [0, {n}], got {d}")
    return WeightedPauliSet(q, n, d)


def compose_adjoint_left(f: PauliElement, e: PauliElement) -> PauliElement:
    """Basis element equivalent to adjoint(f) e, with the phase discarded.

    The index group is componentwise addition mod q, so the result has
    exponents e - f.  Downstream detectability checks only consume the
    basis element, never the dropped scalar.
    """
    if (f.q, f.n) != (e.q, e.n):
        raise ValueError("elements must share q and n")
    xv = tuple((a - b) % f.q for a, b in zip(e.xvec, f.xvec))
    zv = tuple((a - b) % f.q for a, b in zip(e.zvec, f.zvec))
    return PauliElement(f.q, f.n, xv, zv)


_QUBIT_LETTERS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_QUBIT_NAMES = {v: k for k, v in _QUBIT_LETTERS.items()}


def format_element(e: PauliElement) -> str:
    """Render as a letter string for q = 2, or as x:...;z:... otherwise."""
    if e.q == 2:
        return "".join(_QUBIT_NAMES[(x, z)] for x, z in zip(e.xvec, e.zvec))
    xs = ",".join(str(v) for v in e.xvec)
    zs = ",".join(str(v) for v in e.zvec)
    return f"x:{xs};z:{zs}"


def parse_element(text: str, q: int, n: int | None = None) -> PauliElement:
    """Parse the text form of an element for a code with parameters q, n.

    Accepts the letter alphabet I, X, Y, Z when q = 2 (Y meaning the
    x = z = 1 element) and the explicit x:a1,...,an;z:b1,...,bn form for
    any q.  When n is omitted it is taken from the text itself.
    """
    s = text.strip()
    if not s:
        raise ValueError("empty error string")
    if s.lower().startswith("x:"):
        parts = s.split(";")
        if len(parts) != 2 or not parts[1].lower().startswith("z:"):
            raise ValueError(f"malformed element {text!r}; expected x:...;z:...")
        try:
            xv = tuple(int(t) for t in parts[0][2:].split(","))
            zv = tuple(int(t) for t in parts[1][2:].split(","))
        except ValueError as exc:
            raise ValueError(f"malformed element {text!r}: {exc}") from None
        if n is None:
            n = len(xv)
        if len(xv) != n or len(zv) != n:
            raise ValueError(f"element {text!r} does not have {n} digits")
        if not all(0 <= v < q for v in xv + zv):
            raise ValueError(f"element {text!r} has exponents outside [0, {q})")
        return PauliElement(q, n, xv, zv)
    if q != 2:
        raise ValueError("letter strings describe qubit elements; use x:...;z:... for q > 2")
    u = s.upper()
    if n is None:
        n = len(u)
    if len(u) != n:
        raise ValueError(f"element {text!r} does not have {n} letters")
    bad = set(u) - set(_QUBIT_LETTERS)
    if bad:
        raise ValueError(f"element {text!r} uses letters outside I, X, Y, Z")
    xv, zv = zip(*(_QUBIT_LETTERS[ch] for ch in u))
    return PauliElement(2, n, xv, zv)
