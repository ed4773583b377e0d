from __future__ import annotations

import pytest

from expodio import EquationInstance, SolveStatus, solve

# The golden instance suite with its exact solution sets.
GOLDEN_SUITE: dict[tuple[int, int, int], list[tuple[int, int]]] = {
    (5, 3, 2): [(1, 3), (3, 7)],
    (2, 6, 9): [],
    (3, 6, 8): [],
    (2, 4, 7): [],
    (3, 6, 11): [],
    (2, 4, 6): [(1, 1), (5, 2)],
    (3, 1, 9): [],
    (7, 3, 10): [(1, 1)],
    (17, 3, 20): [(1, 1)],
    (2, 1, 3): [(1, 1), (3, 2)],
    (2, 89, 91): [(1, 1), (13, 2)],
    (2, 5, 11): [],
    (3, 5, 7): [],
    (3, 7, 2): [(2, 4)],
    (3, 10, 13): [(1, 1), (7, 3)],
}

# All ten two-solution equations with parameters a, b, c <= 250.
TWO_SOLUTION_TABLE: dict[tuple[int, int, int], list[tuple[int, int]]] = {
    (2, 1, 3): [(1, 1), (3, 2)],
    (2, 4, 6): [(1, 1), (5, 2)],
    (2, 89, 91): [(1, 1), (13, 2)],
    (3, 5, 2): [(1, 3), (3, 5)],
    (3, 10, 13): [(1, 1), (7, 3)],
    (3, 13, 2): [(1, 4), (5, 8)],
    (3, 13, 4): [(1, 2), (5, 4)],
    (3, 13, 16): [(1, 1), (5, 2)],
    (5, 3, 2): [(1, 3), (3, 7)],
    (6, 9, 15): [(1, 1), (3, 2)],
}


@pytest.fixture(scope="session")
def golden_results():
    """Solve the golden suite once per test session."""
    results = {}
    for triple in GOLDEN_SUITE:
        results[triple] = solve(EquationInstance(*triple))
    return results


@pytest.fixture(scope="session")
def golden_certificates(golden_results):
    certs = {}
    for triple, result in golden_results.items():
        assert result.status is SolveStatus.SOLVED, f"golden instance {triple} unresolved"
        assert result.certificate is not None
        certs[triple] = result.certificate
    return certs
