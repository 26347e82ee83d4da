"""Shared fixtures: three small reference codes plus a random-code builder.

The reference codes are constructed from explicit basis vectors (or, for the
five-qubit one, from its stabilizer generators) so that every expected value
asserted against them can be checked by hand.
"""

import json

import numpy as np
import pytest

from hybridec.code_model import (
    CodeBlock,
    HybridCode,
    StabilizerSpec,
    from_stabilizer,
    serialize_code,
)

FIVE_QUBIT_GENERATORS = ("XZZXI", "IXZZX", "XIXZZ", "ZXIXZ")


def basis_state(dim, idx):
    v = np.zeros(dim, dtype=complex)
    v[idx] = 1.0
    return v


def make_t1():
    # One qubit carrying one classical bit: block 1 = span{|0>}, block 2 = span{|1>}.
    return HybridCode(2, 1, (
        CodeBlock(np.array([basis_state(2, 0)])),
        CodeBlock(np.array([basis_state(2, 1)])),
    ))


def make_t3():
    # Two qubits, repetition-style blocks |00> and |11>.
    return HybridCode(2, 2, (
        CodeBlock(np.array([basis_state(4, 0)])),
        CodeBlock(np.array([basis_state(4, 3)])),
    ))


def make_f5():
    # The five-qubit single-error-correcting code, one block of dimension 2.
    return from_stabilizer(StabilizerSpec(5, FIVE_QUBIT_GENERATORS))


def random_code(q, n, k, m, seed):
    """Haar-ish random code: QR of a complex Gaussian matrix, split into blocks.

    Columns of an orthonormal matrix become the m*k frame vectors; consecutive
    groups of k columns form each block, so blocks are mutually orthogonal by
    construction.
    """
    dim = q ** n
    if m * k > dim:
        raise ValueError("m*k exceeds the ambient dimension")
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(dim, m * k)) + 1j * rng.normal(size=(dim, m * k))
    qmat, _ = np.linalg.qr(a)
    blocks = tuple(CodeBlock(qmat[:, i * k:(i + 1) * k].T.copy()) for i in range(m))
    return HybridCode(q, n, blocks)


@pytest.fixture(scope="session")
def t1():
    return make_t1()


@pytest.fixture(scope="session")
def t3():
    return make_t3()


@pytest.fixture(scope="session")
def f5():
    return make_f5()


@pytest.fixture(scope="session")
def make_random():
    return random_code


@pytest.fixture(scope="session")
def code_files(tmp_path_factory):
    """On-disk JSON documents for the three reference codes, for CLI tests."""
    d = tmp_path_factory.mktemp("codes")
    paths = {}

    p = d / "t1.json"
    p.write_text(serialize_code(make_t1()))
    paths["t1"] = str(p)

    p = d / "t3.json"
    p.write_text(serialize_code(make_t3()))
    paths["t3"] = str(p)

    p = d / "f5.json"
    p.write_text(json.dumps({"n": 5, "stabilizers": list(FIVE_QUBIT_GENERATORS)}))
    paths["f5"] = str(p)

    return paths
