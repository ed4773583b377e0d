"""Trivial-case analysis for non-coprime parameter triples.

A triple (a, b, c) with a shared factor somewhere is decidable by
elementary divisibility: either one side of a^x + b = c^y would have to
be divisible by a prime that cannot divide it, or a common factor of a
and c bounds min(x, y) and the remaining candidates can be enumerated.
Triples that survive all three checks are pairwise coprime and go to
the modular-exclusion engine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from . import arith
from .instance import EquationInstance


class ClassTag(str, Enum):
    TYPE_I_I = "TypeI_i"
    TYPE_I_II = "TypeI_ii"
    TYPE_I_III_NO_SOLUTION = "TypeI_iii_NoSolution"
    TYPE_I_III_BOUNDED = "TypeI_iii_Bounded"
    CLASS_II = "ClassII"


@dataclass(frozen=True)
class Classification:
    """Outcome of the divisibility analysis, with witnesses.

    tag selects the case.  For TypeI_i / TypeI_ii, witness_prime is the
    smallest prime dividing gcd(b, c) resp. gcd(a, b).  For the
    common-factor case, common_divisor is gcd(a, c) > 1, witness_prime
    the smallest prime dividing it, modulus_exponent k the smallest
    power with p^k not dividing b, and bound = k - 1 bounds min(x, y).
    """

    tag: ClassTag
    witness_prime: int | None = None
    common_divisor: int | None = None
    modulus_exponent: int | None = None
    bound: int | None = None


def _smallest_prime_factor(n: int) -> int:
    return arith.factorize(n).factors[0][0]


def classify(instance: EquationInstance) -> Classification:
    """Decide the trivial cases of (a, b, c), or certify pairwise coprimality.

    Checked in priority order: a common factor of a and c first (it
    subsumes overlaps with the other two cases), then a prime shared by
    b and c, then one shared by a and b.  Witness primes are always the
    smallest qualifying prime, so results are deterministic.
    """
    a, b, c = instance.a, instance.b, instance.c
    d_ac = math.gcd(a, c)
    if d_ac > 1:
        p = _smallest_prime_factor(d_ac)
        k = arith.p_adic_valuation(b, p) + 1
        return Classification(
            tag=ClassTag.TYPE_I_III_BOUNDED,
            witness_prime=p,
            common_divisor=d_ac,
            modulus_exponent=k,
            bound=k - 1,
        )
    d_bc = math.gcd(b, c)
    if d_bc > 1:
        return Classification(tag=ClassTag.TYPE_I_I, witness_prime=_smallest_prime_factor(d_bc))
    d_ab = math.gcd(a, b)
    if d_ab > 1:
        return Classification(tag=ClassTag.TYPE_I_II, witness_prime=_smallest_prime_factor(d_ab))
    return Classification(tag=ClassTag.CLASS_II)


def bounded_case_solutions(
    instance: EquationInstance, classification: Classification
) -> tuple[tuple[int, int], ...]:
    """All solutions of a common-factor instance, by exhausting min(x, y) <= bound.

    Both variables are enumerated up to the bound (the common-factor
    argument only bounds the smaller one), with exact big-integer power
    tests on the other side.
    """
    if classification.tag is not ClassTag.TYPE_I_III_BOUNDED:
        raise ValueError(f"expected a bounded common-factor classification, got {classification.tag}")
    a, b, c = instance.a, instance.b, instance.c
    bound = classification.bound or 0
    found: set[tuple[int, int]] = set()
    for x in range(1, bound + 1):
        y = arith.exact_power_decompose(a**x + b, c)
        if y is not None:
            found.add((x, y))
    for y in range(1, bound + 1):
        rest = c**y - b
        if rest >= 2:
            x = arith.exact_power_decompose(rest, a)
            if x is not None:
                found.add((x, y))
    return tuple(sorted(found))
