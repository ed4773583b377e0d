"""Self-contained proof certificates and their independent verifier.

A certificate records one complete exclusion argument for a^x + b = c^y
as an ordered list of claims, each tagged with the revalidator that can
re-establish it by direct computation:

    pow_mod_eq_zero            var >= t  =>  base^var = 0 (mod M)
    observe_mod_cycle          base^var = R (mod M) is impossible, or
                               forces var = r (mod K)
    utilize_mod_cycle          var = r (mod K)  =>  base^var mod P is in a list
    compute_mod_add / _sub     shifts that list across the equation
    exhaust_mod_cycle          the shifted list misses the other power cycle
    diophantine1_enumeration   bounded exhaustive search of the leftover range

verify_certificate replays every claim from the (a, b, c) triple alone.
It deliberately shares nothing with the solver beyond the arithmetic
kernel, so an accepted certificate is evidence independent of the
search that produced it.
"""

from __future__ import annotations

import copy
import hashlib
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from . import arith
from .instance import EquationInstance

FORMAT_TAG = "diophantine1-certificate/1"

# Cycles up to this order are checked by literal exhaustion; beyond it
# the verifier falls back to order/discrete-log arguments, which decide
# the same membership questions.
_EXHAUST_LIMIT = 1 << 21


class Mode(str, Enum):
    """Which side of the equation the modulus attacks.

    Forward zeroes c^y modulo a prime power dividing c and constrains x;
    Backward zeroes a^x and constrains y.  (Generated proofs label these
    "Front Mode" and "Back Mode".)
    """

    FORWARD = "Forward"
    BACKWARD = "Backward"


class CertShape(str, Enum):
    DIVISIBILITY_NO_SOLUTION = "DivisibilityNoSolution"
    COMMON_FACTOR_BOUND = "CommonFactorBound"
    DIRECT_MODULAR_EXCLUSION = "DirectModularExclusion"
    MAGIC_PRIME_EXCLUSION = "MagicPrimeExclusion"


class ClaimKind(str, Enum):
    POW_MOD_EQ_ZERO = "pow_mod_eq_zero"
    OBSERVE_MOD_CYCLE = "observe_mod_cycle"
    UTILIZE_MOD_CYCLE = "utilize_mod_cycle"
    COMPUTE_MOD_ADD = "compute_mod_add"
    COMPUTE_MOD_SUB = "compute_mod_sub"
    EXHAUST_MOD_CYCLE = "exhaust_mod_cycle"
    DIOPHANTINE1_ENUMERATION = "diophantine1_enumeration"


@dataclass(frozen=True)
class Constraint:
    """A congruence var = residue (mod period) forced by a source modulus."""

    variable: str  # "x" or "y"
    residue: int
    period: int
    source_modulus: int
    source_target: int


@dataclass(frozen=True)
class MagicPrimeWitness:
    """A prime P where the constrained side's values miss the other power cycle."""

    prime: int
    lifted_period: int
    lifted_residues: tuple[int, ...]
    power_values: tuple[int, ...]
    shifted_values: tuple[int, ...]
    other_side_order: int
    disjoint: bool


@dataclass(frozen=True)
class EnumerationBound:
    """The finite search that closes a proof: variable < strict_bound."""

    variable: str  # "x", "y", or "either"
    strict_bound: int


@dataclass(frozen=True)
class ClaimRecord:
    kind: ClaimKind
    params: dict[str, Any] = field(default_factory=dict)
    premises: tuple[int, ...] = ()


@dataclass(frozen=True)
class Certificate:
    instance: EquationInstance
    shape: CertShape
    mode: Mode | None
    witness_prime: int
    modulus_exponent: int
    bound_threshold: int
    constraint: Constraint | None
    magic_prime_witness: MagicPrimeWitness | None
    enumeration: EnumerationBound | None
    solutions: tuple[tuple[int, int], ...]
    claims: tuple[ClaimRecord, ...]


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    reason: str | None = None
    claim_index: int | None = None


ACCEPT = Verdict(accepted=True)


class CertificateBuildError(Exception):
    """Raised when solver outputs handed to a builder are inconsistent."""


class MalformedCertificateError(Exception):
    """Raised when serialized certificate text cannot be parsed."""


def _reject(reason: str, claim_index: int | None = None) -> Verdict:
    return Verdict(accepted=False, reason=reason, claim_index=claim_index)


# ---------------------------------------------------------------------------
# builders

def _sides(instance: EquationInstance, mode: Mode) -> tuple[int, str, int, str]:
    """(zeroed base, zeroed var, constrained base, constrained var) for a mode."""
    if mode is Mode.FORWARD:
        return instance.c, "y", instance.a, "x"
    return instance.a, "x", instance.c, "y"


def _expected_target(instance: EquationInstance, mode: Mode, modulus: int) -> int:
    """Residue forced on the constrained side once the other side is 0 mod M."""
    if mode is Mode.FORWARD:
        return (-instance.b) % modulus
    return instance.b % modulus


def _check_solutions(instance: EquationInstance, solutions) -> tuple[tuple[int, int], ...]:
    solutions = tuple(sorted(set(map(tuple, solutions))))
    for x, y in solutions:
        if not instance.is_solution(x, y):
            raise CertificateBuildError(f"({x}, {y}) does not solve {instance.equation_text()}")
    return solutions


def _pow_claim(base: int, variable: str, threshold: int, modulus: int) -> ClaimRecord:
    return ClaimRecord(
        kind=ClaimKind.POW_MOD_EQ_ZERO,
        params={"base": base, "variable": variable, "threshold": threshold, "modulus": modulus},
    )


def _enumeration_claim(
    variable: str, bound: int, solutions: tuple[tuple[int, int], ...], premises: tuple[int, ...]
) -> ClaimRecord:
    return ClaimRecord(
        kind=ClaimKind.DIOPHANTINE1_ENUMERATION,
        params={"variable": variable, "bound": bound, "solutions": [list(s) for s in solutions]},
        premises=premises,
    )


def build_divisibility_certificate(instance: EquationInstance, mode: Mode, p: int) -> Certificate:
    """Type i / ii certificate: one side is 0 mod p, the other never is."""
    zero_base, zero_var, other_base, other_var = _sides(instance, mode)
    if zero_base % p != 0 or instance.b % p != 0:
        raise CertificateBuildError(f"prime {p} does not divide both b and {zero_base}")
    if other_base % p == 0:
        raise CertificateBuildError(f"prime {p} divides both sides of {instance.equation_text()}")
    claims = (
        _pow_claim(zero_base, zero_var, 1, p),
        ClaimRecord(
            kind=ClaimKind.OBSERVE_MOD_CYCLE,
            params={
                "base": other_base,
                "variable": other_var,
                "target": _expected_target(instance, mode, p),
                "modulus": p,
                "outcome": "impossible",
            },
            premises=(0,),
        ),
    )
    return Certificate(
        instance=instance,
        shape=CertShape.DIVISIBILITY_NO_SOLUTION,
        mode=mode,
        witness_prime=p,
        modulus_exponent=1,
        bound_threshold=1,
        constraint=None,
        magic_prime_witness=None,
        enumeration=None,
        solutions=(),
        claims=claims,
    )


def build_common_factor_certificate(
    instance: EquationInstance, p: int, k: int, solutions
) -> Certificate:
    """Type iii certificate: p | gcd(a, c) and p^k does not divide b."""
    modulus = p**k
    if instance.a % p != 0 or instance.c % p != 0:
        raise CertificateBuildError(f"prime {p} does not divide both a and c")
    if instance.b % modulus == 0:
        raise CertificateBuildError(f"{modulus} divides b; bound exponent {k} is unsound")
    solutions = _check_solutions(instance, solutions)
    for x, y in solutions:
        if x >= k and y >= k:
            raise CertificateBuildError(f"solution ({x}, {y}) contradicts min(x, y) < {k}")
    claims = (
        _pow_claim(instance.a, "x", k, modulus),
        _pow_claim(instance.c, "y", k, modulus),
        _enumeration_claim("either", k - 1, solutions, premises=(0, 1)),
    )
    return Certificate(
        instance=instance,
        shape=CertShape.COMMON_FACTOR_BOUND,
        mode=None,
        witness_prime=p,
        modulus_exponent=k,
        bound_threshold=k,
        constraint=None,
        magic_prime_witness=None,
        enumeration=EnumerationBound(variable="either", strict_bound=k),
        solutions=solutions,
        claims=claims,
    )


def build_direct_exclusion_certificate(
    instance: EquationInstance, mode: Mode, p: int, k: int, t: int, solutions
) -> Certificate:
    """Type iv / vi certificate: the forced residue is outside the power cycle."""
    modulus = p**k
    zero_base, zero_var, other_base, other_var = _sides(instance, mode)
    solutions = _check_solutions(instance, solutions)
    bounded = {"x": 0, "y": 1}[zero_var]
    for sol in solutions:
        if sol[bounded] >= t:
            raise CertificateBuildError(f"solution {sol} contradicts {zero_var} < {t}")
    claims = (
        _pow_claim(zero_base, zero_var, t, modulus),
        ClaimRecord(
            kind=ClaimKind.OBSERVE_MOD_CYCLE,
            params={
                "base": other_base,
                "variable": other_var,
                "target": _expected_target(instance, mode, modulus),
                "modulus": modulus,
                "outcome": "impossible",
            },
            premises=(0,),
        ),
        _enumeration_claim(zero_var, t - 1, solutions, premises=(1,)),
    )
    return Certificate(
        instance=instance,
        shape=CertShape.DIRECT_MODULAR_EXCLUSION,
        mode=mode,
        witness_prime=p,
        modulus_exponent=k,
        bound_threshold=t,
        constraint=None,
        magic_prime_witness=None,
        enumeration=EnumerationBound(variable=zero_var, strict_bound=t),
        solutions=solutions,
        claims=claims,
    )


def build_magic_prime_certificate(
    instance: EquationInstance,
    mode: Mode,
    p: int,
    k: int,
    t: int,
    constraint: Constraint,
    witness: MagicPrimeWitness,
    solutions,
) -> Certificate:
    """Type v / vii certificate: a magic prime separates the two value sets."""
    modulus = p**k
    zero_base, zero_var, con_base, con_var = _sides(instance, mode)
    if constraint.variable != con_var:
        raise CertificateBuildError(
            f"constraint variable {constraint.variable} does not match mode {mode.value}"
        )
    if not witness.disjoint:
        raise CertificateBuildError("witness is not marked disjoint")
    solutions = _check_solutions(instance, solutions)
    bounded = {"x": 0, "y": 1}[zero_var]
    for sol in solutions:
        if sol[bounded] >= t:
            raise CertificateBuildError(f"solution {sol} contradicts {zero_var} < {t}")
    shift_kind = ClaimKind.COMPUTE_MOD_ADD if mode is Mode.FORWARD else ClaimKind.COMPUTE_MOD_SUB
    values = [int(v) for v in witness.power_values]
    shifted = [int(v) for v in witness.shifted_values]
    claims = (
        _pow_claim(zero_base, zero_var, t, modulus),
        ClaimRecord(
            kind=ClaimKind.OBSERVE_MOD_CYCLE,
            params={
                "base": con_base,
                "variable": con_var,
                "target": constraint.source_target,
                "modulus": modulus,
                "outcome": "constrains",
                "residue": constraint.residue,
                "period": constraint.period,
            },
            premises=(0,),
        ),
        ClaimRecord(
            kind=ClaimKind.UTILIZE_MOD_CYCLE,
            params={
                "base": con_base,
                "variable": con_var,
                "residue": constraint.residue,
                "period": constraint.period,
                "prime": witness.prime,
                "lifted_period": witness.lifted_period,
                "lifted_residues": list(witness.lifted_residues),
                "values": values,
            },
            premises=(1,),
        ),
        ClaimRecord(
            kind=shift_kind,
            params={
                "prime": witness.prime,
                "input_base": con_base,
                "input_variable": con_var,
                "input_values": values,
                "shift": instance.b,
                "output_base": zero_base,
                "output_variable": zero_var,
                "output_values": shifted,
            },
            premises=(2,),
        ),
        ClaimRecord(
            kind=ClaimKind.EXHAUST_MOD_CYCLE,
            params={
                "base": zero_base,
                "variable": zero_var,
                "prime": witness.prime,
                "values": shifted,
            },
            premises=(3,),
        ),
        _enumeration_claim(zero_var, t - 1, solutions, premises=(4,)),
    )
    return Certificate(
        instance=instance,
        shape=CertShape.MAGIC_PRIME_EXCLUSION,
        mode=mode,
        witness_prime=p,
        modulus_exponent=k,
        bound_threshold=t,
        constraint=constraint,
        magic_prime_witness=witness,
        enumeration=EnumerationBound(variable=zero_var, strict_bound=t),
        solutions=solutions,
        claims=claims,
    )


# ---------------------------------------------------------------------------
# canonical serialization

def certificate_to_dict(cert: Certificate) -> dict[str, Any]:
    return {
        "format": FORMAT_TAG,
        "instance": {"a": cert.instance.a, "b": cert.instance.b, "c": cert.instance.c},
        "shape": cert.shape.value,
        "mode": cert.mode.value if cert.mode is not None else None,
        "witness_prime": cert.witness_prime,
        "modulus_exponent": cert.modulus_exponent,
        "bound_threshold": cert.bound_threshold,
        "constraint": None
        if cert.constraint is None
        else {
            "variable": cert.constraint.variable,
            "residue": cert.constraint.residue,
            "period": cert.constraint.period,
            "source_modulus": cert.constraint.source_modulus,
            "source_target": cert.constraint.source_target,
        },
        "magic_prime_witness": None
        if cert.magic_prime_witness is None
        else {
            "prime": cert.magic_prime_witness.prime,
            "lifted_period": cert.magic_prime_witness.lifted_period,
            "lifted_residues": list(cert.magic_prime_witness.lifted_residues),
            "power_values": list(cert.magic_prime_witness.power_values),
            "shifted_values": list(cert.magic_prime_witness.shifted_values),
            "other_side_order": cert.magic_prime_witness.other_side_order,
            "disjoint": cert.magic_prime_witness.disjoint,
        },
        "enumeration": None
        if cert.enumeration is None
        else {"variable": cert.enumeration.variable, "strict_bound": cert.enumeration.strict_bound},
        "solutions": [list(s) for s in cert.solutions],
        "claims": [
            {
                "kind": claim.kind.value,
                "params": copy.deepcopy(claim.params),
                "premises": list(claim.premises),
            }
            for claim in cert.claims
        ],
    }


def serialize_certificate(cert: Certificate) -> str:
    """Canonical text form; field order is fixed, so bytes are reproducible."""
    return json.dumps(certificate_to_dict(cert), indent=2) + "\n"


def certificate_digest(cert: Certificate) -> str:
    return hashlib.sha256(serialize_certificate(cert).encode("utf-8")).hexdigest()


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise MalformedCertificateError(message)


def _as_int(value: Any, what: str) -> int:
    _require(isinstance(value, int) and not isinstance(value, bool), f"{what} must be an integer")
    return value


def _as_int_list(value: Any, what: str) -> list[int]:
    _require(isinstance(value, list), f"{what} must be a list")
    return [_as_int(v, what) for v in value]


def _as_str(value: Any, what: str) -> str:
    _require(isinstance(value, str), f"{what} must be a string")
    return value


def certificate_from_dict(doc: Any) -> Certificate:
    _require(isinstance(doc, dict), "certificate must be a JSON object")
    expected_keys = {
        "format",
        "instance",
        "shape",
        "mode",
        "witness_prime",
        "modulus_exponent",
        "bound_threshold",
        "constraint",
        "magic_prime_witness",
        "enumeration",
        "solutions",
        "claims",
    }
    _require(set(doc) == expected_keys, "unexpected or missing certificate fields")
    _require(doc["format"] == FORMAT_TAG, f"unknown format {doc['format']!r}")

    inst = doc["instance"]
    _require(isinstance(inst, dict) and set(inst) == {"a", "b", "c"}, "bad instance field")
    try:
        instance = EquationInstance(
            _as_int(inst["a"], "a"), _as_int(inst["b"], "b"), _as_int(inst["c"], "c")
        )
    except ValueError as exc:
        raise MalformedCertificateError(str(exc)) from exc

    try:
        shape = CertShape(_as_str(doc["shape"], "shape"))
    except ValueError as exc:
        raise MalformedCertificateError(f"unknown shape {doc['shape']!r}") from exc
    mode = None
    if doc["mode"] is not None:
        try:
            mode = Mode(_as_str(doc["mode"], "mode"))
        except ValueError as exc:
            raise MalformedCertificateError(f"unknown mode {doc['mode']!r}") from exc

    constraint = None
    if doc["constraint"] is not None:
        con = doc["constraint"]
        _require(
            isinstance(con, dict)
            and set(con) == {"variable", "residue", "period", "source_modulus", "source_target"},
            "bad constraint field",
        )
        constraint = Constraint(
            variable=_as_str(con["variable"], "constraint variable"),
            residue=_as_int(con["residue"], "constraint residue"),
            period=_as_int(con["period"], "constraint period"),
            source_modulus=_as_int(con["source_modulus"], "constraint modulus"),
            source_target=_as_int(con["source_target"], "constraint target"),
        )

    witness = None
    if doc["magic_prime_witness"] is not None:
        w = doc["magic_prime_witness"]
        _require(
            isinstance(w, dict)
            and set(w)
            == {
                "prime",
                "lifted_period",
                "lifted_residues",
                "power_values",
                "shifted_values",
                "other_side_order",
                "disjoint",
            },
            "bad magic_prime_witness field",
        )
        _require(isinstance(w["disjoint"], bool), "disjoint must be a boolean")
        witness = MagicPrimeWitness(
            prime=_as_int(w["prime"], "witness prime"),
            lifted_period=_as_int(w["lifted_period"], "lifted period"),
            lifted_residues=tuple(_as_int_list(w["lifted_residues"], "lifted residues")),
            power_values=tuple(_as_int_list(w["power_values"], "power values")),
            shifted_values=tuple(_as_int_list(w["shifted_values"], "shifted values")),
            other_side_order=_as_int(w["other_side_order"], "other side order"),
            disjoint=w["disjoint"],
        )

    enumeration = None
    if doc["enumeration"] is not None:
        en = doc["enumeration"]
        _require(
            isinstance(en, dict) and set(en) == {"variable", "strict_bound"},
            "bad enumeration field",
        )
        enumeration = EnumerationBound(
            variable=_as_str(en["variable"], "enumeration variable"),
            strict_bound=_as_int(en["strict_bound"], "enumeration bound"),
        )

    _require(isinstance(doc["solutions"], list), "solutions must be a list")
    solutions = []
    for pair in doc["solutions"]:
        _require(isinstance(pair, list) and len(pair) == 2, "each solution must be a pair")
        solutions.append((_as_int(pair[0], "solution x"), _as_int(pair[1], "solution y")))

    _require(isinstance(doc["claims"], list), "claims must be a list")
    claims = []
    for entry in doc["claims"]:
        _require(
            isinstance(entry, dict) and set(entry) == {"kind", "params", "premises"},
            "bad claim record",
        )
        try:
            kind = ClaimKind(_as_str(entry["kind"], "claim kind"))
        except ValueError as exc:
            raise MalformedCertificateError(f"unknown claim kind {entry['kind']!r}") from exc
        _require(isinstance(entry["params"], dict), "claim params must be an object")
        premises = tuple(_as_int_list(entry["premises"], "claim premises"))
        claims.append(ClaimRecord(kind=kind, params=entry["params"], premises=premises))

    return Certificate(
        instance=instance,
        shape=shape,
        mode=mode,
        witness_prime=_as_int(doc["witness_prime"], "witness_prime"),
        modulus_exponent=_as_int(doc["modulus_exponent"], "modulus_exponent"),
        bound_threshold=_as_int(doc["bound_threshold"], "bound_threshold"),
        constraint=constraint,
        magic_prime_witness=witness,
        enumeration=enumeration,
        solutions=tuple(solutions),
        claims=tuple(claims),
    )


def parse_certificate(text: str) -> Certificate:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedCertificateError(f"not valid JSON: {exc}") from exc
    return certificate_from_dict(doc)


# ---------------------------------------------------------------------------
# verification

_SHAPE_CLAIM_KINDS: dict[CertShape, tuple[ClaimKind, ...]] = {
    CertShape.DIVISIBILITY_NO_SOLUTION: (
        ClaimKind.POW_MOD_EQ_ZERO,
        ClaimKind.OBSERVE_MOD_CYCLE,
    ),
    CertShape.COMMON_FACTOR_BOUND: (
        ClaimKind.POW_MOD_EQ_ZERO,
        ClaimKind.POW_MOD_EQ_ZERO,
        ClaimKind.DIOPHANTINE1_ENUMERATION,
    ),
    CertShape.DIRECT_MODULAR_EXCLUSION: (
        ClaimKind.POW_MOD_EQ_ZERO,
        ClaimKind.OBSERVE_MOD_CYCLE,
        ClaimKind.DIOPHANTINE1_ENUMERATION,
    ),
}

_SHAPE_PREMISES: dict[CertShape, tuple[tuple[int, ...], ...]] = {
    CertShape.DIVISIBILITY_NO_SOLUTION: ((), (0,)),
    CertShape.COMMON_FACTOR_BOUND: ((), (), (0, 1)),
    CertShape.DIRECT_MODULAR_EXCLUSION: ((), (0,), (1,)),
    CertShape.MAGIC_PRIME_EXCLUSION: ((), (0,), (1,), (2,), (3,), (4,)),
}

_POW_PARAMS = {"base", "variable", "threshold", "modulus"}
_OBSERVE_IMPOSSIBLE_PARAMS = {"base", "variable", "target", "modulus", "outcome"}
_OBSERVE_CONSTRAINS_PARAMS = _OBSERVE_IMPOSSIBLE_PARAMS | {"residue", "period"}
_UTILIZE_PARAMS = {
    "base",
    "variable",
    "residue",
    "period",
    "prime",
    "lifted_period",
    "lifted_residues",
    "values",
}
_COMPUTE_PARAMS = {
    "prime",
    "input_base",
    "input_variable",
    "input_values",
    "shift",
    "output_base",
    "output_variable",
    "output_values",
}
_EXHAUST_PARAMS = {"base", "variable", "prime", "values"}
_ENUM_PARAMS = {"variable", "bound", "solutions"}


def _power_cycle_values(base: int, modulus: int) -> set[int]:
    """{base^j mod modulus : j >= 1}, by walking until the sequence repeats."""
    values: set[int] = set()
    v = base % modulus
    while v not in values:
        values.add(v)
        v = v * base % modulus
    return values


def _cycle_membership_disjoint(base: int, modulus: int, targets: list[int]) -> bool:
    """True when no target lies in {base^j mod modulus : j >= 1}."""
    if base % modulus == 0 or not arith.is_prime(modulus):
        return not (_power_cycle_values(base, modulus) & set(targets))
    order = arith.multiplicative_order(base % modulus, modulus).order
    if order <= _EXHAUST_LIMIT:
        return not (_power_cycle_values(base, modulus) & set(targets))
    # In (Z/PZ)* the subgroup of order d is unique, so membership is t^d = 1.
    return all(t == 0 or pow(t, order, modulus) != 1 for t in targets)


def _enumerate_solutions(
    instance: EquationInstance, variable: str, bound: int
) -> tuple[tuple[int, int], ...]:
    """All solutions with the named variable (or either, for 'either') <= bound."""
    a, b, c = instance.a, instance.b, instance.c
    found: set[tuple[int, int]] = set()
    if variable in ("x", "either"):
        for x in range(1, bound + 1):
            y = arith.exact_power_decompose(a**x + b, c)
            if y is not None:
                found.add((x, y))
    if variable in ("y", "either"):
        for y in range(1, bound + 1):
            rest = c**y - b
            if rest >= 2:
                x = arith.exact_power_decompose(rest, a)
                if x is not None:
                    found.add((x, y))
    return tuple(sorted(found))


def _verify_pow_claim(
    claim: ClaimRecord, base: int, variable: str, threshold: int, prime: int, exponent: int
) -> str | None:
    modulus = prime**exponent
    p = claim.params
    if set(p) != _POW_PARAMS:
        return "pow_mod_eq_zero has wrong parameters"
    if p["base"] != base or p["variable"] != variable:
        return "pow_mod_eq_zero attacks the wrong side"
    if p["threshold"] != threshold or p["modulus"] != modulus:
        return "pow_mod_eq_zero threshold or modulus mismatch"
    if threshold < 1 or exponent < 1:
        return "pow_mod_eq_zero needs threshold >= 1 and modulus >= 2"
    # var >= t implies base^var = 0 (mod p^k) iff t * v_p(base) >= k
    if threshold * arith.p_adic_valuation(base, prime) < exponent:
        return f"{modulus} does not divide {base}^{threshold}"
    return None


def _verify_enumeration_claim(
    claim: ClaimRecord,
    instance: EquationInstance,
    variable: str,
    strict_bound: int,
    solutions: tuple[tuple[int, int], ...],
) -> str | None:
    p = claim.params
    if set(p) != _ENUM_PARAMS:
        return "diophantine1_enumeration has wrong parameters"
    if p["variable"] != variable:
        return "enumeration bounds the wrong variable"
    if p["bound"] != strict_bound - 1:
        return "enumeration bound does not match the proved exclusion"
    claimed = p["solutions"]
    if not isinstance(claimed, list) or any(
        not isinstance(s, list) or len(s) != 2 for s in claimed
    ):
        return "enumeration solution list is malformed"
    claimed_pairs = tuple((s[0], s[1]) for s in claimed)
    if claimed_pairs != solutions:
        return "enumeration solutions differ from the certificate's solution list"
    if _enumerate_solutions(instance, variable, strict_bound - 1) != solutions:
        return "re-enumeration does not reproduce the claimed solutions"
    return None


def _verify_class_two(cert: Certificate) -> Verdict:
    instance = cert.instance
    mode = cert.mode
    if mode is None:
        return _reject("modular exclusion certificates need a mode")
    p, k, t = cert.witness_prime, cert.modulus_exponent, cert.bound_threshold
    if not arith.is_prime(p):
        return _reject(f"{p} is not prime")
    zero_base, zero_var, con_base, con_var = _sides(instance, mode)
    if t < 1 or k != t * arith.p_adic_valuation(zero_base, p):
        return _reject("modulus exponent does not match the attacked bound")
    if k * (p.bit_length() - 1) > 62:
        return _reject("modulus exceeds the supported cap")
    modulus = p**k
    if modulus > arith.MODULUS_CAP:
        return _reject("modulus exceeds the supported cap")
    if math.gcd(con_base, modulus) != 1:
        return _reject("constrained base shares a factor with the modulus")
    if cert.enumeration != EnumerationBound(variable=zero_var, strict_bound=t):
        return _reject("enumeration bound does not match the attacked variable")

    error = _verify_pow_claim(cert.claims[0], zero_base, zero_var, t, p, k)
    if error:
        return _reject(error, claim_index=0)

    observe = cert.claims[1]
    target = _expected_target(instance, mode, modulus)
    expected_keys = (
        _OBSERVE_CONSTRAINS_PARAMS
        if cert.shape is CertShape.MAGIC_PRIME_EXCLUSION
        else _OBSERVE_IMPOSSIBLE_PARAMS
    )
    if set(observe.params) != expected_keys:
        return _reject("observe_mod_cycle has wrong parameters", claim_index=1)
    if observe.params["base"] != con_base or observe.params["variable"] != con_var:
        return _reject("observe_mod_cycle inspects the wrong side", claim_index=1)
    if observe.params["modulus"] != modulus or observe.params["target"] != target:
        return _reject("observe_mod_cycle target is not forced by the equation", claim_index=1)

    dlog = arith.cycle_discrete_log(con_base % modulus, target, modulus)

    if cert.shape is CertShape.DIRECT_MODULAR_EXCLUSION:
        if cert.constraint is not None or cert.magic_prime_witness is not None:
            return _reject("unexpected payload for a direct exclusion certificate")
        if observe.params["outcome"] != "impossible":
            return _reject("direct exclusion requires an impossibility outcome", claim_index=1)
        if dlog is not None:
            return _reject("target actually lies in the power cycle", claim_index=1)
        error = _verify_enumeration_claim(cert.claims[2], instance, zero_var, t, cert.solutions)
        if error:
            return _reject(error, claim_index=2)
        return ACCEPT

    # magic prime shape
    if observe.params["outcome"] != "constrains":
        return _reject("magic prime exclusion requires a congruence outcome", claim_index=1)
    constraint = cert.constraint
    witness = cert.magic_prime_witness
    if constraint is None or witness is None:
        return _reject("magic prime certificate is missing its payload")
    order = arith.multiplicative_order(con_base % modulus, modulus).order
    if constraint.variable != con_var or constraint.source_modulus != modulus:
        return _reject("constraint does not match the source modulus", claim_index=1)
    if constraint.source_target != target or constraint.period != order:
        return _reject("constraint period or target is wrong", claim_index=1)
    if dlog is None or dlog != constraint.residue:
        return _reject("constraint residue is not the discrete log of the target", claim_index=1)
    if observe.params["residue"] != constraint.residue or observe.params["period"] != constraint.period:
        return _reject("observe_mod_cycle congruence differs from the constraint", claim_index=1)

    utilize = cert.claims[2]
    P = witness.prime
    if set(utilize.params) != _UTILIZE_PARAMS:
        return _reject("utilize_mod_cycle has wrong parameters", claim_index=2)
    if not arith.is_prime(P):
        return _reject(f"magic prime {P} is not prime", claim_index=2)
    if P % constraint.period != 1 % constraint.period:
        return _reject("magic prime is not 1 mod the constraint period", claim_index=2)
    if any(v % P == 0 for v in (instance.a, instance.b, instance.c)):
        return _reject("magic prime divides one of the parameters", claim_index=2)
    prime_order = arith.multiplicative_order(con_base % P, P).order
    lifted_period = math.lcm(constraint.period, prime_order)
    expected_lift = tuple(
        constraint.residue + j * constraint.period
        for j in range(lifted_period // constraint.period)
    )
    expected_values = tuple(pow(con_base, r, P) for r in expected_lift)
    if witness.lifted_period != lifted_period or witness.lifted_residues != expected_lift:
        return _reject("lifted residues do not match lcm(period, prime order)", claim_index=2)
    if witness.power_values != expected_values:
        return _reject("lifted power values are wrong", claim_index=2)
    if (
        utilize.params["base"] != con_base
        or utilize.params["variable"] != con_var
        or utilize.params["residue"] != constraint.residue
        or utilize.params["period"] != constraint.period
        or utilize.params["prime"] != P
        or utilize.params["lifted_period"] != lifted_period
        or tuple(utilize.params["lifted_residues"]) != expected_lift
        or tuple(utilize.params["values"]) != expected_values
    ):
        return _reject("utilize_mod_cycle disagrees with the witness payload", claim_index=2)

    compute = cert.claims[3]
    expected_kind = (
        ClaimKind.COMPUTE_MOD_ADD if mode is Mode.FORWARD else ClaimKind.COMPUTE_MOD_SUB
    )
    if compute.kind is not expected_kind:
        return _reject(f"mode {mode.value} requires {expected_kind.value}", claim_index=3)
    if set(compute.params) != _COMPUTE_PARAMS:
        return _reject("compute claim has wrong parameters", claim_index=3)
    shift = instance.b if mode is Mode.FORWARD else -instance.b
    expected_shifted = tuple((v + shift) % P for v in expected_values)
    if (
        compute.params["prime"] != P
        or compute.params["input_base"] != con_base
        or compute.params["input_variable"] != con_var
        or tuple(compute.params["input_values"]) != expected_values
        or compute.params["shift"] != instance.b
        or compute.params["output_base"] != zero_base
        or compute.params["output_variable"] != zero_var
        or tuple(compute.params["output_values"]) != expected_shifted
    ):
        return _reject("shifted values are not the equation's other side", claim_index=3)
    if witness.shifted_values != expected_shifted:
        return _reject("witness shifted values disagree with the compute claim", claim_index=3)

    exhaust = cert.claims[4]
    if set(exhaust.params) != _EXHAUST_PARAMS:
        return _reject("exhaust_mod_cycle has wrong parameters", claim_index=4)
    if (
        exhaust.params["base"] != zero_base
        or exhaust.params["variable"] != zero_var
        or exhaust.params["prime"] != P
        or tuple(exhaust.params["values"]) != expected_shifted
    ):
        return _reject("exhaust_mod_cycle tests the wrong set", claim_index=4)
    if witness.other_side_order != arith.multiplicative_order(zero_base % P, P).order:
        return _reject("other side order is wrong", claim_index=4)
    if not witness.disjoint:
        return _reject("witness does not claim disjointness", claim_index=4)
    if not _cycle_membership_disjoint(zero_base, P, list(expected_shifted)):
        return _reject("shifted values intersect the other power cycle", claim_index=4)

    error = _verify_enumeration_claim(cert.claims[5], instance, zero_var, t, cert.solutions)
    if error:
        return _reject(error, claim_index=5)
    return ACCEPT


def verify_certificate(cert: Certificate) -> Verdict:
    """Re-validate every claim from the instance alone; Accept or Reject.

    Acceptance means the claim chain proves that the certificate's
    solution list is the complete solution set of a^x + b = c^y.
    """
    try:
        instance = cert.instance
        if not isinstance(instance, EquationInstance):
            return _reject("missing instance")

        expected_kinds: tuple[ClaimKind, ...]
        if cert.shape is CertShape.MAGIC_PRIME_EXCLUSION:
            shift_kind = (
                ClaimKind.COMPUTE_MOD_ADD if cert.mode is Mode.FORWARD else ClaimKind.COMPUTE_MOD_SUB
            )
            expected_kinds = (
                ClaimKind.POW_MOD_EQ_ZERO,
                ClaimKind.OBSERVE_MOD_CYCLE,
                ClaimKind.UTILIZE_MOD_CYCLE,
                shift_kind,
                ClaimKind.EXHAUST_MOD_CYCLE,
                ClaimKind.DIOPHANTINE1_ENUMERATION,
            )
        elif cert.shape in _SHAPE_CLAIM_KINDS:
            expected_kinds = _SHAPE_CLAIM_KINDS[cert.shape]
        else:
            return _reject(f"unknown certificate shape {cert.shape!r}")

        kinds = tuple(claim.kind for claim in cert.claims)
        if kinds != expected_kinds:
            return _reject("claim kinds do not follow the shape's template")
        expected_premises = _SHAPE_PREMISES[cert.shape]
        for i, claim in enumerate(cert.claims):
            if claim.premises != expected_premises[i]:
                return _reject("claim premises break the dependency chain", claim_index=i)

        # completeness and exactness of the solution list are settled by
        # re-running the bounded enumeration during the shape checks; the
        # claimed pairs are only ever compared, never exponentiated
        if cert.solutions != tuple(sorted(set(cert.solutions))):
            return _reject("solution list is not sorted and duplicate-free")

        if cert.shape is CertShape.DIVISIBILITY_NO_SOLUTION:
            return _verify_divisibility(cert)
        if cert.shape is CertShape.COMMON_FACTOR_BOUND:
            return _verify_common_factor(cert)
        return _verify_class_two(cert)
    except (ValueError, OverflowError, KeyError, TypeError, ZeroDivisionError) as exc:
        return _reject(f"malformed certificate: {exc}")


def _verify_divisibility(cert: Certificate) -> Verdict:
    instance = cert.instance
    mode = cert.mode
    if mode is None:
        return _reject("divisibility certificates need a mode")
    p = cert.witness_prime
    if not arith.is_prime(p):
        return _reject(f"{p} is not prime")
    if cert.modulus_exponent != 1 or cert.bound_threshold != 1:
        return _reject("divisibility certificates work modulo a single prime")
    if cert.constraint is not None or cert.magic_prime_witness is not None:
        return _reject("unexpected payload for a divisibility certificate")
    if cert.enumeration is not None:
        return _reject("divisibility certificates carry no enumeration")
    if cert.solutions != ():
        return _reject("divisibility certificates prove there are no solutions")
    zero_base, zero_var, other_base, other_var = _sides(instance, mode)

    error = _verify_pow_claim(cert.claims[0], zero_base, zero_var, 1, p, 1)
    if error:
        return _reject(error, claim_index=0)

    observe = cert.claims[1]
    if set(observe.params) != _OBSERVE_IMPOSSIBLE_PARAMS:
        return _reject("observe_mod_cycle has wrong parameters", claim_index=1)
    target = _expected_target(instance, mode, p)
    if (
        observe.params["base"] != other_base
        or observe.params["variable"] != other_var
        or observe.params["target"] != target
        or observe.params["modulus"] != p
        or observe.params["outcome"] != "impossible"
    ):
        return _reject("observe_mod_cycle does not match the equation", claim_index=1)
    if not _cycle_membership_disjoint(other_base, p, [target]):
        return _reject("target actually lies in the power cycle", claim_index=1)
    return ACCEPT


def _verify_common_factor(cert: Certificate) -> Verdict:
    instance = cert.instance
    if cert.mode is not None:
        return _reject("common-factor certificates are symmetric; no mode applies")
    p, k = cert.witness_prime, cert.modulus_exponent
    if not arith.is_prime(p):
        return _reject(f"{p} is not prime")
    if k < 1 or cert.bound_threshold != k:
        return _reject("bound threshold must equal the modulus exponent")
    if cert.constraint is not None or cert.magic_prime_witness is not None:
        return _reject("unexpected payload for a common-factor certificate")
    # Honest exponents satisfy p^(k-1) <= b, so k is small relative to b.
    if k > instance.b.bit_length() + 1:
        return _reject("bound exponent is too large to stem from b")
    modulus = p**k
    if instance.b % modulus == 0:
        return _reject(f"{modulus} divides b, so no contradiction arises")
    if cert.enumeration != EnumerationBound(variable="either", strict_bound=k):
        return _reject("enumeration bound does not match min(x, y) < k")

    error = _verify_pow_claim(cert.claims[0], instance.a, "x", k, p, k)
    if error:
        return _reject(error, claim_index=0)
    error = _verify_pow_claim(cert.claims[1], instance.c, "y", k, p, k)
    if error:
        return _reject(error, claim_index=1)
    error = _verify_enumeration_claim(cert.claims[2], instance, "either", k, cert.solutions)
    if error:
        return _reject(error, claim_index=2)
    return ACCEPT
