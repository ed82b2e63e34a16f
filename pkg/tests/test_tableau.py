from __future__ import annotations

import numpy as np
import pytest

from pauliframe import CliffordCircuit, CliffordGate, gf2, tableau_from_circuit
from pauliframe.oracle import (
    amplitudes_squared,
    bits_to_index,
    dense_state_from_circuit,
)
from pauliframe.tableau import StabilizerTableau

from conftest import random_clifford_circuit


def coset_indices(R, t):
    """All basis indices {R z + t} as a set of ints."""
    n, r = R.shape
    out = set()
    for z in range(2**r):
        u = t.copy()
        for i in range(r):
            if (z >> i) & 1:
                u = u ^ R[:, i]
        out.add(bits_to_index(u))
    return out


class TestConstruction:
    def test_initial_tableau(self):
        tab = StabilizerTableau(2)
        assert np.array_equal(tab.x[:2], np.eye(2, dtype=np.uint8))
        assert not tab.x[2:].any()
        assert np.array_equal(tab.z[2:], np.eye(2, dtype=np.uint8))
        assert not tab.z[:2].any()
        assert not tab.r.any()

    def test_hadamard_gives_plus_state(self):
        tab = tableau_from_circuit(CliffordCircuit(1, (CliffordGate.h(0),)))
        # stabilizer row is now X
        assert tab.x[1, 0] == 1 and tab.z[1, 0] == 0 and tab.r[1] == 0

    def test_gate_out_of_range(self):
        tab = StabilizerTableau(1)
        with pytest.raises(ValueError):
            tab.apply_gate(CliffordGate.h(1))


def tableau_invariants_hold(tab):
    n = tab.n
    full = np.concatenate([tab.x, tab.z], axis=1)
    if gf2.rank(full) != 2 * n:
        return False
    for i in range(2 * n):
        for j in range(i + 1, 2 * n):
            sp = (int(tab.x[i] @ tab.z[j].astype(np.int64))
                  + int(tab.z[i] @ tab.x[j].astype(np.int64))) % 2
            expect = 1 if j == i + n else 0
            if sp != expect:
                return False
    return True


class TestInvariants:
    def test_hold_after_every_gate_and_measurement(self):
        rng = np.random.default_rng(5)
        for _ in range(15):
            n = int(rng.integers(1, 5))
            tab = StabilizerTableau(n)
            for g in random_clifford_circuit(n, 25, rng).gates:
                tab.apply_gate(g)
                assert tableau_invariants_hold(tab)
            for q in range(n):
                tab.measure(q, forced=int(rng.integers(2)))
                assert tableau_invariants_hold(tab)


class TestMeasure:
    def test_zero_state_deterministic(self):
        tab = StabilizerTableau(1)
        outcome, deterministic = tab.measure(0)
        assert outcome == 0 and deterministic

    def test_plus_state_forced(self):
        tab = tableau_from_circuit(CliffordCircuit(1, (CliffordGate.h(0),)))
        outcome, deterministic = tab.measure(0, forced=0)
        assert outcome == 0 and not deterministic
        # post-state is |0>: measuring again is deterministic 0
        outcome, deterministic = tab.measure(0)
        assert outcome == 0 and deterministic

    def test_minus_state(self):
        w = CliffordCircuit(1, (CliffordGate.h(0), CliffordGate.z(0)))
        tab = tableau_from_circuit(w)
        outcome, deterministic = tab.measure(0, forced=0)
        assert outcome == 0 and not deterministic
        probs = amplitudes_squared(dense_state_from_circuit(w))
        assert probs[0] == pytest.approx(0.5)

    def test_rank_decrement_per_random_measurement(self):
        rng = np.random.default_rng(21)
        for _ in range(20):
            n = int(rng.integers(1, 6))
            tab = tableau_from_circuit(random_clifford_circuit(n, 30, rng))
            rank = gf2.rank(tab.xbar())
            for q in range(n):
                _, deterministic = tab.measure(q, forced=0)
                new_rank = gf2.rank(tab.xbar())
                assert new_rank == rank - (0 if deterministic else 1)
                rank = new_rank
            assert rank == 0
            assert not tab.xbar().any()


class TestSampleBasisState:
    def test_zero_state(self):
        assert not StabilizerTableau(3).sample_basis_state().any()

    def test_does_not_mutate(self):
        tab = tableau_from_circuit(
            CliffordCircuit(2, (CliffordGate.h(0), CliffordGate.cnot(0, 1)))
        )
        before = tab.dump()
        tab.sample_basis_state()
        assert tab.dump() == before

    def test_sampled_state_has_nonzero_amplitude(self):
        rng = np.random.default_rng(13)
        for _ in range(25):
            n = int(rng.integers(1, 6))
            w = random_clifford_circuit(n, 30, rng)
            tab = tableau_from_circuit(w)
            u = tab.sample_basis_state()
            probs = amplitudes_squared(dense_state_from_circuit(w))
            r = gf2.rank(tab.xbar())
            assert probs[bits_to_index(u)] == pytest.approx(2.0**-r, abs=1e-10)

    def test_flipping_one_outcome_moves_within_row_space(self):
        rng = np.random.default_rng(17)
        for _ in range(20):
            n = int(rng.integers(2, 6))
            w = random_clifford_circuit(n, 30, rng)
            base_tab = tableau_from_circuit(w)
            xbar = base_tab.xbar()
            u0 = base_tab.sample_basis_state()
            # Replay, flipping the k-th random outcome to 1.
            random_positions = []
            probe = base_tab.copy()
            for q in range(n):
                _, det = probe.measure(q, forced=0)
                if not det:
                    random_positions.append(q)
            for k in range(len(random_positions)):
                work = base_tab.copy()
                u = np.zeros(n, dtype=np.uint8)
                seen_random = 0
                for q in range(n):
                    hits = np.nonzero(work.x[n:, q])[0]
                    force = 0
                    if hits.size and seen_random == k:
                        force = 1
                    if hits.size:
                        seen_random += 1
                    out, _ = work.measure(q, forced=force)
                    u[q] = out
                assert gf2.in_row_span(xbar, u ^ u0)


class TestExtractSupport:
    def test_zero_state(self):
        sup = StabilizerTableau(3).extract_support()
        assert sup.r == 0
        assert sup.R.shape == (3, 0)
        assert not sup.t.any()

    def test_hh_full_support(self):
        w = CliffordCircuit(2, (CliffordGate.h(0), CliffordGate.h(1)))
        sup = tableau_from_circuit(w).extract_support()
        assert sup.r == 2
        assert gf2.rank(sup.R) == 2
        assert not sup.t.any()

    def test_support_matches_dense_oracle(self):
        rng = np.random.default_rng(29)
        for _ in range(30):
            n = int(rng.integers(1, 6))
            w = random_clifford_circuit(n, 40, rng)
            tab = tableau_from_circuit(w)
            sup = tab.extract_support()
            probs = amplitudes_squared(dense_state_from_circuit(w))
            dense = {x for x in range(2**n) if probs[x] > 1e-12}
            assert coset_indices(sup.R, sup.t) == dense
            for x in dense:
                assert probs[x] == pytest.approx(2.0**-sup.r, abs=1e-10)

    def test_r_matches_rank_and_R_full_column_rank(self):
        rng = np.random.default_rng(31)
        for _ in range(20):
            n = int(rng.integers(1, 6))
            tab = tableau_from_circuit(random_clifford_circuit(n, 25, rng))
            sup = tab.extract_support()
            assert sup.r == gf2.rank(tab.xbar())
            assert gf2.rank(sup.R) == sup.r


class TestDump:
    def test_block_layout(self):
        lines = StabilizerTableau(1).dump().splitlines()
        assert lines == ["1 | 0 | 0", "0 | 1 | 0"]
