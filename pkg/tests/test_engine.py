from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import GOLDEN_SUITE
from oracle import brute_force_cycle, brute_force_solutions

from expodio import (
    Constraint,
    EquationInstance,
    Mode,
    SolverConfig,
    SolveStatus,
    final_enumeration,
    initial_search,
    magic_prime_search,
    solve,
    verify_certificate,
    witness_for_prime,
)
from expodio.engine import (
    ExclusionKind,
    exclusion_step,
    make_candidate,
)


class TestInitialSearch:
    def test_examples(self):
        assert initial_search(EquationInstance(5, 3, 2), 1 << 64) == ((1, 3), (3, 7))
        assert initial_search(EquationInstance(3, 5, 7), 1 << 64) == ()
        assert initial_search(EquationInstance(2, 1, 3), 1 << 64) == ((1, 1), (3, 2))

    def test_respects_ceiling(self):
        assert initial_search(EquationInstance(5, 3, 2), 100) == ((1, 3),)

    def test_sorted_by_y(self):
        found = initial_search(EquationInstance(2, 1, 3), 1 << 64)
        ys = [y for _, y in found]
        assert ys == sorted(ys)


class TestExclusionStep:
    def test_direct_exclusion(self):
        inst = EquationInstance(7, 3, 10)
        cand = make_candidate(inst, Mode.FORWARD, 2, 3)
        assert cand.key == 8
        step = exclusion_step(inst, cand)
        assert step.kind is ExclusionKind.DIRECT

    def test_conditional_forward(self):
        inst = EquationInstance(5, 3, 2)
        cand = make_candidate(inst, Mode.FORWARD, 2, 8)
        assert cand.key == 256
        step = exclusion_step(inst, cand)
        assert step.kind is ExclusionKind.CONDITIONAL
        assert step.constraint == Constraint(
            variable="x", residue=35, period=64, source_modulus=256, source_target=253
        )

    def test_conditional_backward(self):
        inst = EquationInstance(3, 7, 2)
        cand = make_candidate(inst, Mode.BACKWARD, 3, 3)
        step = exclusion_step(inst, cand)
        assert step.kind is ExclusionKind.CONDITIONAL
        assert step.constraint == Constraint(
            variable="y", residue=16, period=18, source_modulus=27, source_target=7
        )

    def test_degenerate_over_cap(self):
        inst = EquationInstance(5, 3, 2)
        cand = make_candidate(inst, Mode.FORWARD, 2, 63)
        step = exclusion_step(inst, cand, max_modulus=1 << 62)
        assert step.kind is ExclusionKind.DEGENERATE

    def test_exponent_scales_with_valuation(self):
        # v_2(20) = 2, so attacking y >= 3 works modulo 2^6
        inst = EquationInstance(17, 3, 20)
        cand = make_candidate(inst, Mode.FORWARD, 2, 3)
        assert cand.k == 6 and cand.key == 64

    def test_constraint_soundness_small_moduli(self):
        # every conditional constraint pins the target to exactly one
        # residue class of the full cycle
        cases = [
            (EquationInstance(5, 3, 2), Mode.FORWARD, 2, 8),
            (EquationInstance(3, 7, 2), Mode.BACKWARD, 3, 3),
            (EquationInstance(2, 1, 3), Mode.FORWARD, 3, 3),
            (EquationInstance(2, 1, 3), Mode.BACKWARD, 2, 4),
            (EquationInstance(3, 10, 13), Mode.BACKWARD, 3, 8),
        ]
        for inst, mode, p, t in cases:
            step = exclusion_step(inst, make_candidate(inst, mode, p, t))
            con = step.constraint
            assert con is not None
            base = inst.a if con.variable == "x" else inst.c
            m = con.source_modulus
            cycle = brute_force_cycle(base, m)
            assert len(cycle) == con.period
            hits = [j + 1 for j, v in enumerate(cycle) if v == con.source_target]
            assert len(hits) == 1
            assert hits[0] % con.period == con.residue % con.period


class TestMagicPrimeSearch:
    def test_forward_small(self):
        inst = EquationInstance(2, 1, 3)
        con = Constraint(variable="x", residue=9, period=18, source_modulus=27, source_target=26)
        witness = magic_prime_search(inst, con)
        assert witness is not None
        assert witness.prime == 19
        assert witness.power_values == (18,)
        assert witness.shifted_values == (0,)
        assert witness.disjoint

    def test_forward_with_lift_expansion(self):
        inst = EquationInstance(5, 3, 2)
        con = Constraint(variable="x", residue=35, period=64, source_modulus=256, source_target=253)
        witness = magic_prime_search(inst, con)
        assert witness is not None
        assert witness.prime == 257
        assert witness.lifted_period == 256
        assert witness.lifted_residues == (35, 99, 163, 227)
        assert witness.power_values == (14, 224, 243, 33)
        assert witness.shifted_values == (17, 227, 246, 36)

    def test_backward_large(self):
        inst = EquationInstance(3, 10, 13)
        con = Constraint(
            variable="y", residue=1461, period=2187, source_modulus=6561, source_target=10
        )
        witness = magic_prime_search(inst, con)
        assert witness is not None
        assert witness.prime == 17497
        assert witness.lifted_period == 8748
        assert witness.lifted_residues == (1461, 3648, 5835, 8022)
        assert witness.power_values == (11616, 6486, 5881, 11011)
        assert witness.shifted_values == (11606, 6476, 5871, 11001)

    def test_budget_exhaustion_returns_none(self):
        inst = EquationInstance(7, 3, 10)
        con = Constraint(variable="x", residue=0, period=2, source_modulus=4, source_target=1)
        config = SolverConfig(prime_budget_count=3)
        assert magic_prime_search(inst, con, config) is None

    def test_pinned_primes(self):
        inst = EquationInstance(5, 3, 2)
        con = Constraint(variable="x", residue=35, period=64, source_modulus=256, source_target=253)
        config = SolverConfig(pinned_magic_primes=(257,))
        witness = magic_prime_search(inst, con, config)
        assert witness is not None and witness.prime == 257
        # a pinned prime that is no witness yields nothing
        config = SolverConfig(pinned_magic_primes=(193,))
        assert magic_prime_search(inst, con, config) is None

    def test_candidates_dividing_parameters_are_skipped(self):
        inst = EquationInstance(2, 19, 3)
        con = Constraint(variable="x", residue=3, period=18, source_modulus=27, source_target=8)
        # 19 divides b, so it cannot serve as a magic prime here
        assert witness_for_prime(inst, con, 19) is None
        config = SolverConfig(pinned_magic_primes=(19,))
        assert magic_prime_search(inst, con, config) is None

    def test_witness_soundness_by_brute_force(self):
        inst = EquationInstance(3, 7, 2)
        con = Constraint(variable="y", residue=16, period=18, source_modulus=27, source_target=7)
        witness = magic_prime_search(inst, con)
        assert witness is not None and witness.prime == 73
        P = witness.prime
        lhs = {
            (pow(inst.c, y, P) - inst.b) % P
            for y in range(1, 4 * witness.lifted_period + 1)
            if y % con.period == con.residue % con.period
        }
        assert lhs == set(witness.shifted_values)
        rhs = set(brute_force_cycle(inst.a, P))
        assert not (lhs & rhs)


class TestFinalEnumeration:
    def test_examples(self):
        assert final_enumeration(EquationInstance(2, 89, 91), "y", 3) == ((1, 1), (13, 2))
        assert final_enumeration(EquationInstance(2, 5, 11), "x", 3) == ()
        assert final_enumeration(EquationInstance(3, 7, 2), "x", 3) == ((2, 4),)

    def test_rejects_unknown_variable(self):
        with pytest.raises(ValueError):
            final_enumeration(EquationInstance(2, 5, 11), "z", 3)


class TestSolve:
    def test_golden_solutions(self, golden_results):
        for triple, expected in GOLDEN_SUITE.items():
            result = golden_results[triple]
            assert result.status is SolveStatus.SOLVED, triple
            assert list(result.solutions) == expected, triple

    def test_golden_certificates_verify(self, golden_certificates):
        for triple, cert in golden_certificates.items():
            assert verify_certificate(cert).accepted, triple

    def test_solution_exactness(self, golden_results):
        for triple, result in golden_results.items():
            a, b, c = triple
            for x, y in result.solutions:
                assert a**x + b == c**y

    def test_derived_instance_matches_oracle(self):
        result = solve(EquationInstance(6, 2, 10))
        assert result.status is SolveStatus.SOLVED
        assert list(result.solutions) == brute_force_solutions(6, 2, 10)

    def test_queue_monotonicity_and_trace(self):
        popped = []

        def on_event(kind, payload):
            if kind == "attempt":
                popped.append(payload["modulus"])

        for triple in [(5, 3, 2), (2, 5, 11), (7, 3, 10), (3, 10, 13), (2, 1, 3)]:
            popped.clear()
            solve(EquationInstance(*triple), on_event=on_event)
            assert popped == sorted(popped), triple

    def test_completeness_handoff(self, golden_results):
        # every initial-search solution must sit below the proved bound
        for triple, result in golden_results.items():
            cert = result.certificate
            if cert.enumeration is None:
                assert result.solutions == ()
                continue
            index = {"x": 0, "y": 1, "either": None}[cert.enumeration.variable]
            for sol in initial_search(EquationInstance(*triple), 1 << 64):
                assert sol in result.solutions
                if index is not None:
                    assert sol[index] < cert.enumeration.strict_bound

    def test_unresolved_on_tiny_budget(self):
        config = SolverConfig(prime_budget_count=0, max_queue_pops=1)
        result = solve(EquationInstance(5, 3, 2), config)
        assert result.status is SolveStatus.UNRESOLVED
        assert result.certificate is None
        # the initial search still reports what it found
        assert list(result.solutions) == [(1, 3), (3, 7)]

    def test_unresolved_when_moduli_capped(self):
        config = SolverConfig(max_modulus=4, prime_budget_count=1)
        result = solve(EquationInstance(5, 3, 2), config)
        assert result.status is SolveStatus.UNRESOLVED

    def test_unresolved_when_modulus_line_outgrows_cap(self):
        # the only viable line starts below the cap and is dropped once
        # its modulus would exceed it
        config = SolverConfig(max_modulus=4, prime_budget_count=2)
        result = solve(EquationInstance(2, 5, 11), config)
        assert result.status is SolveStatus.UNRESOLVED

    def test_unresolved_on_expired_wall_clock(self):
        config = SolverConfig(wall_limit=1e-9)
        result = solve(EquationInstance(5, 3, 2), config)
        assert result.status is SolveStatus.UNRESOLVED
        assert list(result.solutions) == [(1, 3), (3, 7)]

    def test_effort_counters(self):
        result = solve(EquationInstance(2, 89, 91))
        # one modulus popped (7^3), three primes tried (883, 1471, 2647)
        assert result.effort.moduli_tried == 1
        assert result.effort.primes_tried == 3
        assert result.effort.elapsed_ms > 0

        result = solve(EquationInstance(5, 3, 2))
        assert result.effort.moduli_tried == 1
        assert result.effort.primes_tried == 2  # 193 fails, 257 succeeds

    def test_oracle_equivalence_cube(self):
        for a in range(2, 13):
            for b in range(1, 13):
                for c in range(2, 13):
                    result = solve(EquationInstance(a, b, c))
                    if result.status is not SolveStatus.SOLVED:
                        continue
                    expected = brute_force_solutions(a, b, c, ceiling=10**9)
                    got_small = [s for s in result.solutions if c ** s[1] <= 10**9]
                    assert got_small == expected, (a, b, c)
                    assert verify_certificate(result.certificate).accepted, (a, b, c)

    @given(
        st.integers(2, 60),
        st.integers(1, 120),
        st.integers(2, 60),
    )
    @settings(max_examples=150, deadline=None)
    def test_random_instances_match_oracle(self, a, b, c):
        result = solve(EquationInstance(a, b, c))
        if result.status is not SolveStatus.SOLVED:
            return
        oracle = brute_force_solutions(a, b, c, ceiling=10**12)
        mine = [s for s in result.solutions if c ** s[1] <= 10**12]
        assert mine == oracle
        assert verify_certificate(result.certificate).accepted
