"""Simultaneous diagonalization of a commuting Pauli set.

Synthesizes a Clifford circuit W (gates H, S, CNOT, CZ) such that every
operator of the input set conjugates under W to a signed {I, Z}-only
string, then reads off the Z-masks (matrix A) and signs.

The algorithm is symplectic Gaussian elimination on an independent
generator subset: for each pivot qubit, one generator is reduced to
exactly +-X_q (row products clear the x column, CNOTs clear the x row,
CZ/S clear the z row), after which H(q) turns it into +-Z_q.  Because the
generators stay mutually commuting throughout, a generator equal to X_q
forces x_q = z_q = 0 on every other generator, so the Hadamard never
disturbs already-diagonal rows.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gf2
from .pauli import (
    CliffordCircuit,
    CliffordGate,
    PauliString,
    check_commuting_set,
    conjugate,
    conjugate_by_circuit,
    multiply,
)


class NonCommutingSetError(ValueError):
    """Input operators do not pairwise commute."""

    def __init__(self, pair: tuple[int, int]):
        self.pair = pair
        super().__init__(f"operators {pair[0]} and {pair[1]} anticommute")


@dataclass(frozen=True)
class DiagonalizedSet:
    """Circuit W plus the diagonal encodings of the conjugated set.

    Row j of A is the Z-mask of W H_j W†; s_j is 1 iff that string
    carries sign -1.
    """

    circuit: CliffordCircuit
    A: np.ndarray  # N x n
    s: np.ndarray  # length N


def _symplectic_row(p: PauliString) -> np.ndarray:
    return np.concatenate([p.x, p.z])


def _independent_generators(ops: list[PauliString]) -> list[PauliString]:
    gens: list[PauliString] = []
    stacked: list[np.ndarray] = []
    current_rank = 0
    for op in ops:
        candidate = stacked + [_symplectic_row(op)]
        r = gf2.rank(np.array(candidate, dtype=np.uint8))
        if r > current_rank:
            gens.append(op)
            stacked = candidate
            current_rank = r
    return gens


def simultaneous_diagonalize(ops: list[PauliString]) -> DiagonalizedSet:
    """Build W, A, s for a pairwise-commuting set without identities."""
    if not ops:
        raise ValueError("empty operator list")
    bad = check_commuting_set(ops)
    if bad is not None:
        raise NonCommutingSetError(bad)
    for j, op in enumerate(ops):
        if op.is_identity():
            raise ValueError(f"operator {j} is the identity string")
    n = ops[0].n

    gens = _independent_generators(ops)
    gates: list[CliffordGate] = []

    def apply(gate: CliffordGate) -> None:
        gates.append(gate)
        for k in range(len(gens)):
            gens[k] = conjugate(gens[k], gate)

    done = [False] * len(gens)
    for q in range(n):
        pivot_idx = None
        for k, g in enumerate(gens):
            if not done[k] and g.x[q]:
                pivot_idx = k
                break
        if pivot_idx is None:
            continue
        # Clear column q of the x block in all other generators by row
        # products (the set stays a generating set of the same group).
        for k in range(len(gens)):
            if k != pivot_idx and not done[k] and gens[k].x[q]:
                gens[k] = multiply(gens[k], gens[pivot_idx])
        # Reduce the pivot generator to exactly +-X_q.
        pivot = gens[pivot_idx]
        for q2 in range(n):
            if q2 != q and pivot.x[q2]:
                apply(CliffordGate.cnot(q, q2))
        pivot = gens[pivot_idx]
        for q2 in range(n):
            if q2 != q and pivot.z[q2]:
                apply(CliffordGate.cz(q, q2))
        if gens[pivot_idx].z[q]:
            apply(CliffordGate.s(q))
        pivot = gens[pivot_idx]
        assert pivot.x[q] == 1 and not pivot.z.any()
        assert not pivot.x[np.arange(n) != q].any()
        # Every other generator commutes with +-X_q, hence has z_q = 0,
        # so H(q) only acts on the pivot.
        apply(CliffordGate.h(q))
        done[pivot_idx] = True

    assert all(not g.x.any() for g in gens), "elimination left an X component"

    w = CliffordCircuit(n, tuple(gates))
    A = np.zeros((len(ops), n), dtype=np.uint8)
    s = np.zeros(len(ops), dtype=np.uint8)
    for j, op in enumerate(ops):
        lam = conjugate_by_circuit(op, w)
        assert not lam.x.any(), "conjugated operator is not diagonal"
        A[j] = lam.z
        s[j] = 1 if lam.sign < 0 else 0
    return DiagonalizedSet(circuit=w, A=A, s=s)


def verify_diagonalization(
    ops: list[PauliString], result: DiagonalizedSet
) -> tuple[bool, int | None]:
    """Re-derive each conjugated operator and compare with (A, s).

    Returns (True, None) on success, else (False, j) for the first
    operator that fails.
    """
    for j, op in enumerate(ops):
        lam = conjugate_by_circuit(op, result.circuit)
        ok = (
            not lam.x.any()
            and np.array_equal(lam.z, gf2.as_bits(result.A[j]))
            and lam.sign == (-1 if result.s[j] else 1)
        )
        if not ok:
            return False, j
    return True, None
