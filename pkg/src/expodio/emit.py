"""Render verified certificates as prose proofs and Lean proof scripts.

Each script states the instance hypotheses (h1: x >= 1, h2: y >= 1,
h3: the equation), splits on the excluded bound where one exists, and
discharges every computational fact through the trusted `Claim` axiom,
naming the revalidator that can re-check it.  A shared prelude file
declares the `VerifiedFact` structure and the `Claim` axiom.

Rendering is deterministic: the same certificate always produces the
same bytes.  Only certificates accepted by the independent verifier are
rendered at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from . import arith
from .certificate import (
    Certificate,
    CertShape,
    Mode,
    verify_certificate,
)

_WRAP_COLUMN = 80

PRELUDE_FILENAME = "prelude.lean"

PRELUDE = """\
-- Shared declarations for generated diophantine1 proof scripts.

structure VerifiedFact where
  prop : Prop
  proof : prop

axiom Claim (prop_to_claim : Prop)
  (verified_facts : List VerifiedFact)
  (revalidator : String)
  : prop_to_claim
"""


class EmitRefusedError(Exception):
    """Raised when asked to render a certificate the verifier rejects."""


@dataclass(frozen=True)
class RenderedProof:
    comment_block: str
    theorem_name: str
    script_body: str
    claim_count: int

    @property
    def text(self) -> str:
        return self.comment_block + "\n" + self.script_body


def theorem_name(cert: Certificate) -> str:
    inst = cert.instance
    return f"diophantine1_{inst.a}_{inst.b}_{inst.c}"


def _require_verified(cert: Certificate) -> None:
    verdict = verify_certificate(cert)
    if not verdict.accepted:
        raise EmitRefusedError(f"refusing to render a rejected certificate: {verdict.reason}")


def _int_list(values) -> str:
    return ", ".join(str(v) for v in values)


def _pair_list(solutions) -> str:
    return ", ".join(f"({x}, {y})" for x, y in solutions)


def _sides(cert: Certificate) -> tuple[int, str, int, str]:
    """(bounded base, bounded var, constrained base, constrained var)."""
    inst = cert.instance
    if cert.mode is Mode.FORWARD:
        return inst.c, "y", inst.a, "x"
    return inst.a, "x", inst.c, "y"


def _case_header(cert: Certificate) -> str:
    if cert.shape is CertShape.DIVISIBILITY_NO_SOLUTION:
        case = "Type i" if cert.mode is Mode.FORWARD else "Type ii"
        return f"(Class I, {case})"
    if cert.shape is CertShape.COMMON_FACTOR_BOUND:
        return "(Class I, Type iii)"
    side = "Front Mode" if cert.mode is Mode.FORWARD else "Back Mode"
    if cert.shape is CertShape.DIRECT_MODULAR_EXCLUSION:
        return f"(Class II, {side}, no magic prime)"
    return f"(Class II, {side}, with magic prime {cert.magic_prime_witness.prime})"


def _conclusion_lines(cert: Certificate) -> list[str]:
    equation = cert.instance.equation_text()
    if cert.enumeration is not None and cert.enumeration.strict_bound <= 1:
        return [f"So {equation} is impossible."]
    if not cert.solutions:
        return [f"Further examination shows that {equation} is impossible."]
    return [f"Further examination shows that (x, y) = {_pair_list(cert.solutions)}."]


def _narrative(cert: Certificate) -> list[str]:
    """The prose proof, one sentence per line, as placed in the comment block."""
    inst = cert.instance
    equation = inst.equation_text()
    lines = [
        f"{_case_header(cert)}   {equation}",
        f"For positive integers x, y satisfying {equation},",
    ]
    if cert.shape is CertShape.DIVISIBILITY_NO_SOLUTION:
        side = f"{inst.a} ^ x" if cert.mode is Mode.FORWARD else f"{inst.c} ^ y"
        lines.append(
            f"this is impossible, because it implies that {side} = 0 (mod {cert.witness_prime})."
        )
        return lines

    if cert.shape is CertShape.COMMON_FACTOR_BOUND:
        k = cert.modulus_exponent
        modulus = cert.witness_prime**k
        lines.append(f"if x >= {k} and y >= {k},")
        lines.append(f"{inst.b} = 0 (mod {modulus}), which is impossible.")
        lines.append(f"Therefore, x < {k} or y < {k}.")
        lines.extend(_conclusion_lines(cert))
        return lines

    t = cert.bound_threshold
    modulus = cert.witness_prime**cert.modulus_exponent
    bound_base, bound_var, con_base, con_var = _sides(cert)

    if cert.shape is CertShape.DIRECT_MODULAR_EXCLUSION:
        target = cert.claims[1].params["target"]
        lines.append(f"if {bound_var} >= {t}, {con_base} ^ {con_var} = {target} (mod {modulus}).")
        lines.append("However, this is impossible.")
    else:
        constraint = cert.constraint
        witness = cert.magic_prime_witness
        lines.append(
            f"if {bound_var} >= {t}, {con_base} ^ {con_var} = "
            f"{constraint.source_target} (mod {modulus})."
        )
        # Power values mod P only depend on the exponent mod ord_P(base);
        # report the residues modulo that order when it differs from K.
        order = arith.multiplicative_order(con_base % witness.prime, witness.prime).order
        if order == constraint.period:
            lines.append(f"So {con_var} = {constraint.residue} (mod {constraint.period}).")
        else:
            reduced = [r % order for r in witness.lifted_residues]
            lines.append(f"So {con_var} = {constraint.residue} (mod {constraint.period}),")
            lines.append(f"which implies {con_var} = {_int_list(reduced)} (mod {order}).")
        lines.append(
            f"Therefore, {con_base} ^ {con_var} = "
            f"{_int_list(witness.power_values)} (mod {witness.prime})."
        )
        impossible = (
            f"So {bound_base} ^ {bound_var} = "
            f"{_int_list(witness.shifted_values)} (mod {witness.prime}), but this is impossible."
        )
        if len(impossible) > _WRAP_COLUMN:
            head = impossible[: -len(" but this is impossible.")]
            lines.append(head)
            lines.append("but this is impossible.")
        else:
            lines.append(impossible)
    lines.append(f"Therefore, {bound_var} < {t}.")
    lines.extend(_conclusion_lines(cert))
    return lines


# ---------------------------------------------------------------------------
# Lean script assembly

_TRIVIAL = {"x": "h4", "y": "h5"}
_POSITIVE = {"x": "h1", "y": "h2"}


def _goal(cert: Certificate) -> str:
    if not cert.solutions:
        return "False"
    return f"List.Mem (x, y) [{_pair_list(cert.solutions)}]"


class _Script:
    """Line accumulator with the deterministic wrap rules of the templates."""

    def __init__(self) -> None:
        self.lines: list[str] = []

    def add(self, line: str) -> None:
        self.lines.append(line)

    def claim(self, handle: str, statement: str, premises: list[tuple[str, str]], kind: str) -> None:
        wrapped = statement if statement == "False" else f"({statement})"
        head = f"  have {handle} := Claim {wrapped} ["
        if len(head) > _WRAP_COLUMN and "[" in statement:
            stem, _, values = statement.partition(" [")
            self.add(f"  have {handle} := Claim ({stem}")
            self.add(f"  [{values}) [")
        else:
            self.add(head)
        for prop, proof in premises:
            line = f"    {{prop := {prop}, proof := {proof}}},"
            if len(line) > _WRAP_COLUMN:
                self.add(f"    {{prop := {prop},")
                self.add(f"    proof := {proof}}},")
            else:
                self.add(line)
        self.add(f'  ] "{kind}"')

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def _prologue(script: _Script, cert: Certificate) -> None:
    inst = cert.instance
    script.add(
        f"theorem {theorem_name(cert)} (x : Nat) (y : Nat) (h1 : x >= 1) (h2 : y >= 1)"
    )
    script.add(f"(h3 : {inst.equation_text()}) :")
    script.add(f"  {_goal(cert)}")
    script.add("  := by")
    script.add("  have h4 : x % 1 = 0 := Nat.mod_one x")
    script.add("  have h5 : y % 1 = 0 := Nat.mod_one y")


def _enumeration_premises(cert: Certificate, bound_prop: str) -> list[tuple[str, str]]:
    return [
        ("x % 1 = 0", "h4"),
        ("x >= 1", "h1"),
        ("y % 1 = 0", "h5"),
        ("y >= 1", "h2"),
        (cert.instance.equation_text(), "h3"),
        (bound_prop, "h7"),
    ]


def _script_divisibility(cert: Certificate) -> _Script:
    inst = cert.instance
    p = cert.witness_prime
    if cert.mode is Mode.FORWARD:
        zero_base, zero_var, other_base, other_var = inst.c, "y", inst.a, "x"
    else:
        zero_base, zero_var, other_base, other_var = inst.a, "x", inst.c, "y"
    target = cert.claims[1].params["target"]
    script = _Script()
    _prologue(script, cert)
    script.claim(
        "h6",
        f"{zero_base} ^ {zero_var} % {p} = 0",
        [
            (f"{zero_var} % 1 = 0", _TRIVIAL[zero_var]),
            (f"{zero_var} >= 1", _POSITIVE[zero_var]),
        ],
        "pow_mod_eq_zero",
    )
    congruence = f"{other_base} ^ {other_var} % {p} = {target}"
    script.add(f"  have h7 : {congruence} := by omega")
    script.claim(
        "h8",
        "False",
        [
            (f"{other_var} % 1 = 0", _TRIVIAL[other_var]),
            (f"{other_var} >= 1", _POSITIVE[other_var]),
            (congruence, "h7"),
        ],
        "observe_mod_cycle",
    )
    script.add("  exact h8")
    return script


def _script_common_factor(cert: Certificate) -> _Script:
    inst = cert.instance
    k = cert.modulus_exponent
    modulus = cert.witness_prime**k
    script = _Script()
    _prologue(script, cert)
    script.add(f"  by_cases h6 : And (x >= {k}) (y >= {k})")
    script.claim(
        "h7",
        f"{inst.a} ^ x % {modulus} = 0",
        [("x % 1 = 0", "h4"), (f"x >= {k}", "h6.left")],
        "pow_mod_eq_zero",
    )
    script.claim(
        "h8",
        f"{inst.c} ^ y % {modulus} = 0",
        [("y % 1 = 0", "h5"), (f"y >= {k}", "h6.right")],
        "pow_mod_eq_zero",
    )
    script.add("  omega")
    bound_prop = f"Or (x <= {k - 1}) (y <= {k - 1})"
    script.add(f"  have h7 : {bound_prop} := by omega")
    script.claim("h8", _goal(cert), _enumeration_premises(cert, bound_prop), "diophantine1_enumeration")
    script.add("  exact h8")
    return script


def _script_direct(cert: Certificate) -> _Script:
    t = cert.bound_threshold
    modulus = cert.witness_prime**cert.modulus_exponent
    bound_base, bound_var, con_base, con_var = _sides(cert)
    target = cert.claims[1].params["target"]
    script = _Script()
    _prologue(script, cert)
    script.add(f"  by_cases h6 : {bound_var} >= {t}")
    script.claim(
        "h7",
        f"{bound_base} ^ {bound_var} % {modulus} = 0",
        [
            (f"{bound_var} % 1 = 0", _TRIVIAL[bound_var]),
            (f"{bound_var} >= {t}", "h6"),
        ],
        "pow_mod_eq_zero",
    )
    congruence = f"{con_base} ^ {con_var} % {modulus} = {target}"
    script.add(f"  have h8 : {congruence} := by omega")
    script.claim(
        "h9",
        "False",
        [
            (f"{con_var} % 1 = 0", _TRIVIAL[con_var]),
            (f"{con_var} >= 1", _POSITIVE[con_var]),
            (congruence, "h8"),
        ],
        "observe_mod_cycle",
    )
    script.add("  apply False.elim h9")
    bound_prop = f"{bound_var} <= {t - 1}"
    script.add(f"  have h7 : {bound_prop} := by omega")
    script.claim("h8", _goal(cert), _enumeration_premises(cert, bound_prop), "diophantine1_enumeration")
    script.add("  exact h8")
    return script


def _script_magic(cert: Certificate) -> _Script:
    t = cert.bound_threshold
    modulus = cert.witness_prime**cert.modulus_exponent
    bound_base, bound_var, con_base, con_var = _sides(cert)
    constraint = cert.constraint
    witness = cert.magic_prime_witness
    prime = witness.prime
    script = _Script()
    _prologue(script, cert)
    script.add(f"  by_cases h6 : {bound_var} >= {t}")
    script.claim(
        "h7",
        f"{bound_base} ^ {bound_var} % {modulus} = 0",
        [
            (f"{bound_var} % 1 = 0", _TRIVIAL[bound_var]),
            (f"{bound_var} >= {t}", "h6"),
        ],
        "pow_mod_eq_zero",
    )
    congruence = f"{con_base} ^ {con_var} % {modulus} = {constraint.source_target}"
    script.add(f"  have h8 : {congruence} := by omega")
    residue_prop = f"{con_var} % {constraint.period} = {constraint.residue}"
    script.claim(
        "h9",
        residue_prop,
        [
            (f"{con_var} % 1 = 0", _TRIVIAL[con_var]),
            (f"{con_var} >= 1", _POSITIVE[con_var]),
            (congruence, "h8"),
        ],
        "observe_mod_cycle",
    )
    values_prop = f"List.Mem ({con_base} ^ {con_var} % {prime}) [{_int_list(witness.power_values)}]"
    script.claim(
        "h10",
        values_prop,
        [
            (f"{con_var} % 1 = 0", _TRIVIAL[con_var]),
            (f"{con_var} >= 1", _POSITIVE[con_var]),
            (residue_prop, "h9"),
        ],
        "utilize_mod_cycle",
    )
    shifted_prop = (
        f"List.Mem ({bound_base} ^ {bound_var} % {prime}) [{_int_list(witness.shifted_values)}]"
    )
    shift_kind = "compute_mod_add" if cert.mode is Mode.FORWARD else "compute_mod_sub"
    script.claim(
        "h11",
        shifted_prop,
        [(values_prop, "h10"), (cert.instance.equation_text(), "h3")],
        shift_kind,
    )
    script.claim(
        "h12",
        "False",
        [
            (f"{bound_var} % 1 = 0", _TRIVIAL[bound_var]),
            (f"{bound_var} >= 1", _POSITIVE[bound_var]),
            (shifted_prop, "h11"),
        ],
        "exhaust_mod_cycle",
    )
    script.add("  apply False.elim h12")
    bound_prop = f"{bound_var} <= {t - 1}"
    script.add(f"  have h7 : {bound_prop} := by omega")
    script.claim("h8", _goal(cert), _enumeration_premises(cert, bound_prop), "diophantine1_enumeration")
    script.add("  exact h8")
    return script


_SCRIPT_BUILDERS = {
    CertShape.DIVISIBILITY_NO_SOLUTION: _script_divisibility,
    CertShape.COMMON_FACTOR_BOUND: _script_common_factor,
    CertShape.DIRECT_MODULAR_EXCLUSION: _script_direct,
    CertShape.MAGIC_PRIME_EXCLUSION: _script_magic,
}


def emit_text(cert: Certificate) -> str:
    """Deterministic prose proof for a verified certificate."""
    _require_verified(cert)
    return "\n".join(_narrative(cert)) + "\n"


def emit_lean(cert: Certificate) -> RenderedProof:
    """Deterministic Lean proof script for a verified certificate."""
    _require_verified(cert)
    comment = "/-\n" + "\n".join(_narrative(cert)) + "\n-/"
    body = _SCRIPT_BUILDERS[cert.shape](cert).text()
    return RenderedProof(
        comment_block=comment,
        theorem_name=theorem_name(cert),
        script_body=body,
        claim_count=len(cert.claims),
    )


def write_proof_files(
    cert: Certificate,
    directory: str | Path,
    lean: bool = True,
    text: bool = True,
) -> list[Path]:
    """Write <theorem>.lean / <theorem>.txt (and the prelude) into a directory."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    name = theorem_name(cert)
    if lean:
        prelude_path = directory / PRELUDE_FILENAME
        prelude_path.write_text(PRELUDE, encoding="utf-8", newline="\n")
        rendered = emit_lean(cert)
        path = directory / f"{name}.lean"
        path.write_text(rendered.text, encoding="utf-8", newline="\n")
        written.extend([prelude_path, path])
    if text:
        path = directory / f"{name}.txt"
        path.write_text(emit_text(cert), encoding="utf-8", newline="\n")
        written.append(path)
    return written
