"""Core solver for pairwise-coprime instances of a^x + b = c^y.

The strategy is proof by contradiction against a bound: assume the
equation has a solution with y >= t (Forward mode, working modulo a
prime power dividing c) or x >= t (Backward mode, modulo a prime power
dividing a).  The assumption forces the other side into a single
residue class modulo M = p^k.  Either the residue is outside the power
cycle (direct exclusion), or it pins the exponent to a congruence class
and a "magic prime" P = nK + 1 is sought whose two value sets are
disjoint.  A success yields a strict bound on one variable and a finite
enumeration closes the proof.

Candidate moduli live in a priority queue keyed by M, smallest first,
so cheap contradictions are found before expensive ones.  Termination
is conjectural; the solver gives up cleanly (status Unresolved) when
its budgets are exhausted.
"""

from __future__ import annotations

import heapq
import math
import time
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable

from . import arith
from .certificate import (
    Certificate,
    CertificateBuildError,
    Constraint,
    MagicPrimeWitness,
    Mode,
    build_common_factor_certificate,
    build_direct_exclusion_certificate,
    build_divisibility_certificate,
    build_magic_prime_certificate,
)
from .classify import Classification, ClassTag, bounded_case_solutions, classify
from .instance import EquationInstance

EventCallback = Callable[[str, dict], None]


class SolveStatus(str, Enum):
    SOLVED = "Solved"
    UNRESOLVED = "Unresolved"


@dataclass(frozen=True)
class SolverConfig:
    """Budgets for the search; defaults solve every tabulated instance.

    ceiling bounds the initial search (all solutions with c^y <= ceiling
    are collected up front).  Each congruence constraint may try at most
    prime_budget_count magic-prime candidates, none larger than
    prime_budget_cap.  The queue refuses moduli above max_modulus and
    the whole run stops after max_queue_pops pops or wall_limit seconds.
    """

    ceiling: int = 1 << 64
    prime_budget_count: int = 64
    prime_budget_cap: int = 1 << 40
    max_modulus: int = arith.MODULUS_CAP
    max_queue_pops: int = 10_000
    wall_limit: float | None = None
    pinned_magic_primes: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.ceiling < 2:
            raise ValueError("ceiling must be >= 2")
        if self.prime_budget_count < 0 or self.prime_budget_cap < 2:
            raise ValueError("prime budget must be nonnegative with cap >= 2")
        if not 2 <= self.max_modulus <= arith.MODULUS_CAP:
            raise ValueError(f"max modulus must lie in [2, 2^62], got {self.max_modulus}")
        if self.max_queue_pops < 1:
            raise ValueError("max queue pops must be >= 1")
        if self.wall_limit is not None and self.wall_limit <= 0:
            raise ValueError("wall limit must be positive")


DEFAULT_CONFIG = SolverConfig()


@dataclass(frozen=True, order=True)
class ModulusCandidate:
    """One queue entry: disprove `variable of mode` >= t working modulo p^k."""

    mode: Mode
    p: int
    t: int
    k: int

    @property
    def key(self) -> int:
        return self.p**self.k


def make_candidate(instance: EquationInstance, mode: Mode, p: int, t: int) -> ModulusCandidate:
    """Candidate with k = t * v_p(base), so base^var = 0 (mod p^k) iff var >= t."""
    base = instance.c if mode is Mode.FORWARD else instance.a
    v = arith.p_adic_valuation(base, p)
    if v < 1:
        raise ValueError(f"{p} does not divide {base}")
    return ModulusCandidate(mode=mode, p=p, t=t, k=t * v)


@dataclass
class Effort:
    moduli_tried: int = 0
    primes_tried: int = 0
    elapsed_ms: float = 0.0


@dataclass(frozen=True)
class SolveResult:
    status: SolveStatus
    solutions: tuple[tuple[int, int], ...]
    classification: Classification
    certificate: Certificate | None
    effort: Effort


class ExclusionKind(str, Enum):
    DIRECT = "DirectExclusion"
    CONDITIONAL = "Conditional"
    DEGENERATE = "Degenerate"


@dataclass(frozen=True)
class ExclusionStep:
    kind: ExclusionKind
    constraint: Constraint | None = None


def initial_search(instance: EquationInstance, ceiling: int) -> tuple[tuple[int, int], ...]:
    """All solutions with c^y <= ceiling, by exact power decomposition."""
    if ceiling < instance.c:
        raise ValueError("ceiling must be at least c")
    a, b, c = instance.a, instance.b, instance.c
    found = []
    power = c
    y = 1
    while power <= ceiling:
        rest = power - b
        if rest >= 2:
            x = arith.exact_power_decompose(rest, a)
            if x is not None:
                found.append((x, y))
        power *= c
        y += 1
    return tuple(found)


def exclusion_step(
    instance: EquationInstance,
    candidate: ModulusCandidate,
    max_modulus: int = arith.MODULUS_CAP,
) -> ExclusionStep:
    """Try to refute `var >= t` modulo p^k: a contradiction or a congruence.

    Forward mode forces a^x = -b (mod M); Backward forces c^y = b (mod M).
    If the target is outside the cycle of the base the bound is disproved
    outright; otherwise the unique discrete log becomes a constraint.
    """
    modulus = candidate.key
    if modulus > max_modulus:
        return ExclusionStep(kind=ExclusionKind.DEGENERATE)
    if candidate.mode is Mode.FORWARD:
        base, variable = instance.a, "x"
        target = (-instance.b) % modulus
    else:
        base, variable = instance.c, "y"
        target = instance.b % modulus
    residue = arith.cycle_discrete_log(base % modulus, target, modulus)
    if residue is None:
        return ExclusionStep(kind=ExclusionKind.DIRECT)
    period = arith.multiplicative_order(base % modulus, modulus).order
    return ExclusionStep(
        kind=ExclusionKind.CONDITIONAL,
        constraint=Constraint(
            variable=variable,
            residue=residue,
            period=period,
            source_modulus=modulus,
            source_target=target,
        ),
    )


def witness_for_prime(
    instance: EquationInstance, constraint: Constraint, prime: int
) -> MagicPrimeWitness | None:
    """Evaluate one candidate magic prime against a congruence constraint.

    Lifts the constraint to L = lcm(K, ord_P(base)), computes the power
    values of the constrained side, shifts them across the equation, and
    tests disjointness from the other side's power cycle (membership in
    the unique subgroup of that order).  Returns the witness or None.
    """
    if any(v % prime == 0 for v in (instance.a, instance.b, instance.c)):
        return None
    if constraint.variable == "x":
        base, other, forward = instance.a, instance.c, True
    else:
        base, other, forward = instance.c, instance.a, False
    base_order = arith.multiplicative_order(base % prime, prime).order
    lifted_period = math.lcm(constraint.period, base_order)
    lifted = tuple(
        constraint.residue + j * constraint.period
        for j in range(lifted_period // constraint.period)
    )
    values = tuple(pow(base, r, prime) for r in lifted)
    shift = instance.b if forward else -instance.b
    shifted = tuple((v + shift) % prime for v in values)
    other_order = arith.multiplicative_order(other % prime, prime).order
    for s in shifted:
        if s != 0 and pow(s, other_order, prime) == 1:
            return None
    return MagicPrimeWitness(
        prime=prime,
        lifted_period=lifted_period,
        lifted_residues=lifted,
        power_values=values,
        shifted_values=shifted,
        other_side_order=other_order,
        disjoint=True,
    )


def magic_prime_search(
    instance: EquationInstance,
    constraint: Constraint,
    config: SolverConfig = DEFAULT_CONFIG,
    effort: Effort | None = None,
    on_event: EventCallback | None = None,
) -> MagicPrimeWitness | None:
    """First magic prime P = nK + 1 within budget, or None when exhausted."""
    if config.pinned_magic_primes is not None:
        candidates = iter(
            p
            for p in config.pinned_magic_primes
            if arith.is_prime(p) and p % constraint.period == 1 % constraint.period
        )
    else:
        candidates = arith.primes_in_progression(constraint.period, 1)
    tried = 0
    for prime in candidates:
        if prime > config.prime_budget_cap:
            break
        if instance.a % prime == 0 or instance.b % prime == 0 or instance.c % prime == 0:
            continue
        tried += 1
        if effort is not None:
            effort.primes_tried += 1
        if on_event is not None:
            on_event("try_prime", {"prime": prime})
        witness = witness_for_prime(instance, constraint, prime)
        if witness is not None:
            return witness
        if tried >= config.prime_budget_count:
            break
    return None


def final_enumeration(
    instance: EquationInstance, variable: str, strict_bound: int
) -> tuple[tuple[int, int], ...]:
    """Complete solution list once `variable < strict_bound` is proved."""
    if variable not in ("x", "y"):
        raise ValueError(f"variable must be 'x' or 'y', got {variable!r}")
    a, b, c = instance.a, instance.b, instance.c
    found = set()
    if variable == "x":
        for x in range(1, strict_bound):
            y = arith.exact_power_decompose(a**x + b, c)
            if y is not None:
                found.add((x, y))
    else:
        for y in range(1, strict_bound):
            rest = c**y - b
            if rest >= 2:
                x = arith.exact_power_decompose(rest, a)
                if x is not None:
                    found.add((x, y))
    return tuple(sorted(found))


def _solve_class_one(
    instance: EquationInstance, classification: Classification, effort: Effort
) -> SolveResult:
    tag = classification.tag
    p = classification.witness_prime
    assert p is not None
    if tag is ClassTag.TYPE_I_I:
        cert = build_divisibility_certificate(instance, Mode.FORWARD, p)
        solutions: tuple[tuple[int, int], ...] = ()
    elif tag is ClassTag.TYPE_I_II:
        cert = build_divisibility_certificate(instance, Mode.BACKWARD, p)
        solutions = ()
    else:
        solutions = bounded_case_solutions(instance, classification)
        k = classification.modulus_exponent
        assert k is not None
        cert = build_common_factor_certificate(instance, p, k, solutions)
    return SolveResult(
        status=SolveStatus.SOLVED,
        solutions=solutions,
        classification=classification,
        certificate=cert,
        effort=effort,
    )


def _bounded_variable_index(mode: Mode) -> int:
    return 1 if mode is Mode.FORWARD else 0


def _conclude(
    instance: EquationInstance,
    candidate: ModulusCandidate,
    known: tuple[tuple[int, int], ...],
    build,
) -> tuple[tuple[tuple[int, int], ...], Certificate]:
    """Run the closing enumeration and build the certificate for a success."""
    variable = "y" if candidate.mode is Mode.FORWARD else "x"
    idx = _bounded_variable_index(candidate.mode)
    for sol in known:
        if sol[idx] >= candidate.t:
            raise CertificateBuildError(
                f"exclusion at {variable} >= {candidate.t} contradicts known solution {sol}"
            )
    solutions = final_enumeration(instance, variable, candidate.t)
    if not set(known) <= set(solutions):
        raise CertificateBuildError("final enumeration lost an initial-search solution")
    return solutions, build(solutions)


def solve(
    instance: EquationInstance,
    config: SolverConfig = DEFAULT_CONFIG,
    on_event: EventCallback | None = None,
) -> SolveResult:
    """Solve one instance end to end, producing a certificate when it can.

    Class I instances are settled by divisibility.  For Class II the
    queue is seeded with (Forward, p, y_max + 1) for every p | c and
    (Backward, q, x_max + 1) for every q | a, where x_max, y_max come
    from the initial search.  Failure to exclude at t re-queues t + 1.
    All budget exhaustion folds into status Unresolved.
    """
    start = time.perf_counter()
    effort = Effort()

    def finish(result: SolveResult) -> SolveResult:
        effort.elapsed_ms = (time.perf_counter() - start) * 1000.0
        return result

    classification = classify(instance)
    if classification.tag is not ClassTag.CLASS_II:
        return finish(_solve_class_one(instance, classification, effort))

    known = tuple(sorted(initial_search(instance, max(config.ceiling, instance.c))))
    x_max = max((x for x, _ in known), default=0)
    y_max = max((y for _, y in known), default=0)

    heap: list[tuple[int, int, int, ModulusCandidate]] = []

    def push(mode: Mode, p: int, t: int) -> None:
        cand = make_candidate(instance, mode, p, t)
        if cand.key <= config.max_modulus:
            mode_rank = 0 if mode is Mode.FORWARD else 1
            heapq.heappush(heap, (cand.key, mode_rank, p, cand))

    for p, _ in arith.factorize(instance.c):
        push(Mode.FORWARD, p, y_max + 1)
    for p, _ in arith.factorize(instance.a):
        push(Mode.BACKWARD, p, x_max + 1)

    pops = 0
    while heap:
        if pops >= config.max_queue_pops:
            break
        if (
            config.wall_limit is not None
            and time.perf_counter() - start > config.wall_limit
        ):
            break
        _, _, _, candidate = heapq.heappop(heap)
        pops += 1
        effort.moduli_tried += 1
        if on_event is not None:
            base = instance.c if candidate.mode is Mode.FORWARD else instance.a
            variable = "y" if candidate.mode is Mode.FORWARD else "x"
            on_event(
                "attempt",
                {
                    "mode": candidate.mode,
                    "variable": variable,
                    "t": candidate.t,
                    "p": candidate.p,
                    "base": base,
                    "modulus": candidate.key,
                },
            )
        step = exclusion_step(instance, candidate, config.max_modulus)
        if step.kind is ExclusionKind.DEGENERATE:
            continue
        if step.kind is ExclusionKind.DIRECT:
            solutions, cert = _conclude(
                instance,
                candidate,
                known,
                lambda sols: build_direct_exclusion_certificate(
                    instance, candidate.mode, candidate.p, candidate.k, candidate.t, sols
                ),
            )
            if on_event is not None:
                on_event("succeeded", {"modulus": candidate.key})
            return finish(
                SolveResult(
                    status=SolveStatus.SOLVED,
                    solutions=solutions,
                    classification=classification,
                    certificate=cert,
                    effort=effort,
                )
            )
        constraint = step.constraint
        assert constraint is not None
        witness = magic_prime_search(instance, constraint, config, effort, on_event)
        if witness is not None:
            solutions, cert = _conclude(
                instance,
                candidate,
                known,
                lambda sols: build_magic_prime_certificate(
                    instance,
                    candidate.mode,
                    candidate.p,
                    candidate.k,
                    candidate.t,
                    constraint,
                    witness,
                    sols,
                ),
            )
            if on_event is not None:
                on_event("succeeded", {"modulus": candidate.key, "prime": witness.prime})
            return finish(
                SolveResult(
                    status=SolveStatus.SOLVED,
                    solutions=solutions,
                    classification=classification,
                    certificate=cert,
                    effort=effort,
                )
            )
        push(candidate.mode, candidate.p, candidate.t + 1)

    if on_event is not None:
        on_event("unresolved", {"pops": pops})
    return finish(
        SolveResult(
            status=SolveStatus.UNRESOLVED,
            solutions=known,
            classification=classification,
            certificate=None,
            effort=effort,
        )
    )


def enlarged(config: SolverConfig, factor: int = 4) -> SolverConfig:
    """A copy of `config` with search budgets scaled up for retries."""
    return replace(
        config,
        prime_budget_count=config.prime_budget_count * factor,
        max_queue_pops=config.max_queue_pops * factor,
    )
