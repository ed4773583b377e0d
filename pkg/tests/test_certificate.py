from __future__ import annotations

import json
import random
from pathlib import Path

import pytest

from independence import certificate_import_violations
from mutation import mutated_certificate_is_rejected

from expodio import (
    CertShape,
    ClaimKind,
    EquationInstance,
    Mode,
    certificate_digest,
    parse_certificate,
    serialize_certificate,
    verify_certificate,
)
from expodio.certificate import (
    CertificateBuildError,
    MalformedCertificateError,
    build_direct_exclusion_certificate,
    build_divisibility_certificate,
    certificate_to_dict,
)

_EXPECTED_KINDS = {
    CertShape.DIVISIBILITY_NO_SOLUTION: ["pow_mod_eq_zero", "observe_mod_cycle"],
    CertShape.COMMON_FACTOR_BOUND: [
        "pow_mod_eq_zero",
        "pow_mod_eq_zero",
        "diophantine1_enumeration",
    ],
    CertShape.DIRECT_MODULAR_EXCLUSION: [
        "pow_mod_eq_zero",
        "observe_mod_cycle",
        "diophantine1_enumeration",
    ],
}


def _expected_kinds(cert):
    if cert.shape in _EXPECTED_KINDS:
        return _EXPECTED_KINDS[cert.shape]
    shift = "compute_mod_add" if cert.mode is Mode.FORWARD else "compute_mod_sub"
    return [
        "pow_mod_eq_zero",
        "observe_mod_cycle",
        "utilize_mod_cycle",
        shift,
        "exhaust_mod_cycle",
        "diophantine1_enumeration",
    ]


class TestBuildCertificate:
    def test_direct_exclusion_claim_sequence(self):
        # built at the first threshold where the residue leaves the cycle
        inst = EquationInstance(7, 3, 10)
        cert = build_direct_exclusion_certificate(inst, Mode.FORWARD, 2, 3, 3, [(1, 1)])
        assert [c.kind.value for c in cert.claims] == [
            "pow_mod_eq_zero",
            "observe_mod_cycle",
            "diophantine1_enumeration",
        ]
        assert verify_certificate(cert).accepted

    def test_magic_prime_claim_sequence(self, golden_certificates):
        cert = golden_certificates[(2, 89, 91)]
        assert cert.shape is CertShape.MAGIC_PRIME_EXCLUSION
        assert [c.kind.value for c in cert.claims] == [
            "pow_mod_eq_zero",
            "observe_mod_cycle",
            "utilize_mod_cycle",
            "compute_mod_add",
            "exhaust_mod_cycle",
            "diophantine1_enumeration",
        ]

    def test_backward_uses_subtraction(self, golden_certificates):
        cert = golden_certificates[(3, 7, 2)]
        assert cert.mode is Mode.BACKWARD
        assert ClaimKind.COMPUTE_MOD_SUB in [c.kind for c in cert.claims]

    def test_all_golden_sequences(self, golden_certificates):
        for triple, cert in golden_certificates.items():
            assert [c.kind.value for c in cert.claims] == _expected_kinds(cert), triple

    def test_inconsistent_inputs_rejected(self):
        inst = EquationInstance(7, 3, 10)
        with pytest.raises(CertificateBuildError):
            # (1, 1) is a real solution, so claiming y < 1 must be refused
            build_direct_exclusion_certificate(inst, Mode.FORWARD, 2, 1, 1, [(1, 1)])
        with pytest.raises(CertificateBuildError):
            # a non-solution in the list must be refused
            build_direct_exclusion_certificate(inst, Mode.FORWARD, 2, 3, 3, [(1, 2)])
        with pytest.raises(CertificateBuildError):
            # p does not divide b
            build_divisibility_certificate(inst, Mode.FORWARD, 5)


class TestVerifyCertificate:
    def test_accepts_all_goldens(self, golden_certificates):
        for triple, cert in golden_certificates.items():
            verdict = verify_certificate(cert)
            assert verdict.accepted, (triple, verdict.reason)

    def test_rejects_wrong_solution_list(self, golden_certificates):
        doc = certificate_to_dict(golden_certificates[(5, 3, 2)])
        doc["solutions"] = [[1, 3]]
        doc["claims"][-1]["params"]["solutions"] = [[1, 3]]
        verdict = verify_certificate(parse_certificate(json.dumps(doc)))
        assert not verdict.accepted
        assert verdict.claim_index == len(doc["claims"]) - 1  # the enumeration claim

    def test_rejects_swapped_magic_prime(self, golden_certificates):
        doc = certificate_to_dict(golden_certificates[(5, 3, 2)])
        doc["magic_prime_witness"]["prime"] = 19
        for claim in doc["claims"]:
            if "prime" in claim["params"]:
                claim["params"]["prime"] = 19
        verdict = verify_certificate(parse_certificate(json.dumps(doc)))
        assert not verdict.accepted
        assert verdict.claim_index in (2, 3, 4)

    def test_rejects_dropped_claim(self, golden_certificates):
        doc = certificate_to_dict(golden_certificates[(2, 1, 3)])
        del doc["claims"][2]
        verdict = verify_certificate(parse_certificate(json.dumps(doc)))
        assert not verdict.accepted

    def test_rejects_unknown_claim_kind(self, golden_certificates):
        doc = certificate_to_dict(golden_certificates[(2, 6, 9)])
        doc["claims"][0]["kind"] = "novel_revalidator"
        with pytest.raises(MalformedCertificateError):
            parse_certificate(json.dumps(doc))

    def test_rejects_loosened_bound(self, golden_certificates):
        doc = certificate_to_dict(golden_certificates[(3, 7, 2)])
        doc["bound_threshold"] = 4
        verdict = verify_certificate(parse_certificate(json.dumps(doc)))
        assert not verdict.accepted

    def test_fuzz_mutations_rejected(self, golden_certificates):
        rng = random.Random(20250810)
        for triple, cert in golden_certificates.items():
            doc = certificate_to_dict(cert)
            for _ in range(120):
                rejected, reason = mutated_certificate_is_rejected(doc, rng)
                assert rejected, (triple, reason)


class TestSerialization:
    def test_round_trip_preserves_verdict(self, golden_certificates):
        for triple, cert in golden_certificates.items():
            text = serialize_certificate(cert)
            clone = parse_certificate(text)
            assert clone == cert
            assert serialize_certificate(clone) == text
            assert verify_certificate(clone).accepted

    def test_byte_stable(self, golden_certificates):
        cert = golden_certificates[(2, 89, 91)]
        assert serialize_certificate(cert) == serialize_certificate(cert)
        assert certificate_digest(cert) == certificate_digest(cert)

    def test_round_trip_preserves_rejection(self, golden_certificates):
        # a tampered certificate is rejected identically before and
        # after a trip through the wire format
        doc = certificate_to_dict(golden_certificates[(3, 7, 2)])
        doc["magic_prime_witness"]["power_values"][0] += 1
        doc["claims"][2]["params"]["values"][0] += 1
        text = json.dumps(doc)
        first = verify_certificate(parse_certificate(text))
        second = verify_certificate(parse_certificate(serialize_certificate(parse_certificate(text))))
        assert not first.accepted and not second.accepted
        assert (first.reason, first.claim_index) == (second.reason, second.claim_index)

    def test_digest_changes_with_content(self, golden_certificates):
        a = certificate_digest(golden_certificates[(2, 89, 91)])
        b = certificate_digest(golden_certificates[(5, 3, 2)])
        assert a != b

    def test_malformed_inputs(self):
        with pytest.raises(MalformedCertificateError):
            parse_certificate("")
        with pytest.raises(MalformedCertificateError):
            parse_certificate("{}")
        with pytest.raises(MalformedCertificateError):
            parse_certificate('{"format": "something else"}')

    def test_frozen_goldens_still_verify_and_reserialize(self):
        golden_dir = Path(__file__).parent / "golden"
        frozen = sorted(golden_dir.glob("*.cert.json"))
        assert frozen, "golden certificates missing; run tests/regen_golden.py"
        for path in frozen:
            text = path.read_text(encoding="utf-8")
            cert = parse_certificate(text)
            assert verify_certificate(cert).accepted, path.name
            assert serialize_certificate(cert) == text, path.name

    def test_frozen_goldens_match_current_solver(self, golden_certificates):
        golden_dir = Path(__file__).parent / "golden"
        for triple, cert in golden_certificates.items():
            a, b, c = triple
            path = golden_dir / f"diophantine1_{a}_{b}_{c}.cert.json"
            assert path.exists(), path.name
            assert serialize_certificate(cert) == path.read_text(encoding="utf-8"), triple


class TestVerifierIndependence:
    def test_certificate_module_avoids_solver_code(self):
        # the verifier may share only the arithmetic kernel (and the
        # instance type); it must not import the engine, classifier,
        # emitter, or CLI
        assert certificate_import_violations() == []

    def test_verify_does_not_touch_engine(self, golden_certificates, monkeypatch):
        import expodio.engine as engine_module

        def boom(*args, **kwargs):  # pragma: no cover - should never run
            raise AssertionError("verifier called into the engine")

        for name in ("solve", "exclusion_step", "magic_prime_search", "witness_for_prime"):
            monkeypatch.setattr(engine_module, name, boom)
        for cert in golden_certificates.values():
            assert verify_certificate(cert).accepted
