"""Command-line surface: solve, scan, verify, stats.

    expodio solve A B C [--emit-lean DIR] [--emit-text DIR] [--cert FILE] [--json]
    expodio scan --a-max N --b-max N --c-max N --out FILE [--jobs N] [--resume]
    expodio verify FILE
    expodio stats FILE

Scans write one JSON object per line (appended as each worker result
arrives), so an interrupted run can be resumed: instances already in
the output file are skipped.  Exit codes: 0 ok, 1 usage or I/O error,
2 unresolved, 3 certificate rejected.
"""

from __future__ import annotations

import argparse
import json
import multiprocessing
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, TextIO

from . import emit
from .certificate import (
    MalformedCertificateError,
    certificate_digest,
    parse_certificate,
    serialize_certificate,
    verify_certificate,
)
from .engine import SolveResult, SolverConfig, SolveStatus, enlarged, solve
from .instance import EquationInstance

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_UNRESOLVED = 2
EXIT_REJECTED = 3

JOBS_ENV_VAR = "EXPODIO_JOBS"

_CONFIG_FILE_KEYS = {
    "ceiling": "ceiling",
    "prime_budget_count": "prime_budget_count",
    "prime_budget_cap": "prime_budget_cap",
    "max_modulus": "max_modulus",
    "max_queue_pops": "max_queue_pops",
    "wall_limit": "wall_limit",
}


class CliError(Exception):
    """Usage or I/O problem; maps to exit code 1."""


@dataclass(frozen=True)
class ScanRecord:
    """One persisted scan row."""

    a: int
    b: int
    c: int
    status: str
    class_tag: str
    solution_count: int
    solutions: tuple[tuple[int, int], ...]
    certificate_digest: str | None
    elapsed_ms: float

    def to_json(self) -> str:
        doc = {
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "status": self.status,
            "class_tag": self.class_tag,
            "solution_count": self.solution_count,
            "solutions": [list(s) for s in self.solutions],
            "certificate_digest": self.certificate_digest,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }
        return json.dumps(doc, separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "ScanRecord":
        doc = json.loads(line)
        solutions = tuple((int(x), int(y)) for x, y in doc["solutions"])
        return cls(
            a=int(doc["a"]),
            b=int(doc["b"]),
            c=int(doc["c"]),
            status=str(doc["status"]),
            class_tag=str(doc["class_tag"]),
            solution_count=int(doc["solution_count"]),
            solutions=solutions,
            certificate_digest=doc["certificate_digest"],
            elapsed_ms=float(doc["elapsed_ms"]),
        )


def record_from_result(instance: EquationInstance, result: SolveResult) -> ScanRecord:
    digest = None
    if result.certificate is not None:
        digest = certificate_digest(result.certificate)
    return ScanRecord(
        a=instance.a,
        b=instance.b,
        c=instance.c,
        status=result.status.value,
        class_tag=result.classification.tag.value,
        solution_count=len(result.solutions),
        solutions=result.solutions,
        certificate_digest=digest,
        elapsed_ms=result.effort.elapsed_ms,
    )


# ---------------------------------------------------------------------------
# configuration plumbing

def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="FILE", help="JSON file with solver budget overrides")
    parser.add_argument("--ceiling", type=int, help="initial search bound on c^y")
    parser.add_argument("--prime-count", type=int, help="magic prime candidates per constraint")
    parser.add_argument("--prime-cap", type=int, help="largest magic prime candidate")
    parser.add_argument("--max-modulus", type=int, help="largest modulus the queue may reach")
    parser.add_argument("--max-pops", type=int, help="queue pops before giving up")
    parser.add_argument("--time-limit", type=float, help="wall-clock limit per instance (seconds)")


def build_config(args: argparse.Namespace) -> SolverConfig:
    """Resolve the solver config: flags beat the config file beat defaults."""
    values: dict = {}
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as handle:
                doc = json.load(handle)
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(f"cannot read config file {args.config}: {exc}") from exc
        if not isinstance(doc, dict):
            raise CliError(f"config file {args.config} must hold a JSON object")
        for key, field_name in _CONFIG_FILE_KEYS.items():
            if key in doc:
                values[field_name] = doc[key]
        unknown = set(doc) - set(_CONFIG_FILE_KEYS)
        if unknown:
            raise CliError(f"unknown config keys: {', '.join(sorted(unknown))}")
    flag_map = {
        "ceiling": "ceiling",
        "prime_count": "prime_budget_count",
        "prime_cap": "prime_budget_cap",
        "max_modulus": "max_modulus",
        "max_pops": "max_queue_pops",
        "time_limit": "wall_limit",
    }
    for attr, field_name in flag_map.items():
        value = getattr(args, attr, None)
        if value is not None:
            values[field_name] = value
    try:
        return SolverConfig(**values)
    except (TypeError, ValueError) as exc:
        raise CliError(f"invalid solver configuration: {exc}") from exc


def _resolve_jobs(value: int | None) -> int:
    if value is None:
        env = os.environ.get(JOBS_ENV_VAR)
        if env is not None:
            try:
                value = int(env)
            except ValueError as exc:
                raise CliError(f"{JOBS_ENV_VAR} must be an integer, got {env!r}") from exc
    if value is None:
        value = os.cpu_count() or 1
    if value < 1:
        raise CliError(f"jobs must be >= 1, got {value}")
    return value


def _parse_instance(a: int, b: int, c: int) -> EquationInstance:
    try:
        return EquationInstance(a, b, c)
    except ValueError as exc:
        raise CliError(str(exc)) from exc


# ---------------------------------------------------------------------------
# solve

def _verbose_printer(instance: EquationInstance, out: TextIO):
    def on_event(kind: str, payload: dict) -> None:
        if kind == "attempt":
            out.write(
                f"-- Trying to disprove {payload['variable']} >= {payload['t']} "
                f"with prime factor {payload['p']} of {payload['base']} ...\n"
            )
        elif kind == "try_prime":
            out.write(f"-- Trying prime {payload['prime']}...\n")
        elif kind == "succeeded":
            out.write("-- Succeeded.\n")

    return on_event


def cmd_solve(args: argparse.Namespace) -> int:
    instance = _parse_instance(args.a, args.b, args.c)
    config = build_config(args)
    on_event = _verbose_printer(instance, sys.stdout) if args.verbose else None
    result = solve(instance, config, on_event=on_event)

    if args.json:
        print(record_from_result(instance, result).to_json())
    else:
        print(f"{instance.equation_text()}: {result.status.value}")
        if result.solutions:
            print(" ".join(f"({x},{y})" for x, y in result.solutions))
        else:
            print("no solutions")

    cert = result.certificate
    if cert is not None:
        if args.cert:
            try:
                Path(args.cert).write_text(serialize_certificate(cert), encoding="utf-8")
            except OSError as exc:
                raise CliError(f"cannot write certificate: {exc}") from exc
        try:
            if args.emit_lean:
                emit.write_proof_files(cert, args.emit_lean, lean=True, text=False)
            if args.emit_text:
                emit.write_proof_files(cert, args.emit_text, lean=False, text=True)
        except (emit.EmitRefusedError, OSError) as exc:
            raise CliError(f"cannot emit proof: {exc}") from exc
    elif args.cert or args.emit_lean or args.emit_text:
        print("no certificate produced (instance unresolved); nothing written", file=sys.stderr)

    return EXIT_OK if result.status is SolveStatus.SOLVED else EXIT_UNRESOLVED


# ---------------------------------------------------------------------------
# scan

_WORKER_CONFIG: SolverConfig | None = None
_WORKER_KEEP_CERTS = False


def _scan_worker_init(config: SolverConfig, keep_certs: bool) -> None:
    global _WORKER_CONFIG, _WORKER_KEEP_CERTS
    _WORKER_CONFIG = config
    _WORKER_KEEP_CERTS = keep_certs


def _scan_worker(triple: tuple[int, int, int]) -> tuple[str, str | None]:
    a, b, c = triple
    instance = EquationInstance(a, b, c)
    result = solve(instance, _WORKER_CONFIG or SolverConfig())
    record = record_from_result(instance, result)
    cert_text = None
    if _WORKER_KEEP_CERTS and result.certificate is not None:
        cert_text = serialize_certificate(result.certificate)
    return record.to_json(), cert_text


def _terminate_partial_line(path: Path) -> None:
    """Close off a half-written trailing line so appends start fresh."""
    try:
        with open(path, "rb+") as handle:
            handle.seek(0, os.SEEK_END)
            if handle.tell() == 0:
                return
            handle.seek(-1, os.SEEK_END)
            if handle.read(1) != b"\n":
                handle.write(b"\n")
    except FileNotFoundError:
        return


def iter_cube(a_max: int, b_max: int, c_max: int) -> Iterable[tuple[int, int, int]]:
    for a in range(2, a_max + 1):
        for b in range(1, b_max + 1):
            for c in range(2, c_max + 1):
                yield (a, b, c)


def read_records(path: str | Path) -> tuple[list[ScanRecord], int]:
    """Parse a JSONL results file, tolerating a truncated trailing line."""
    records: list[ScanRecord] = []
    malformed = 0
    try:
        with open(path, encoding="utf-8") as handle:
            for line in handle:
                line = line.strip()
                if not line:
                    continue
                try:
                    records.append(ScanRecord.from_json(line))
                except (json.JSONDecodeError, KeyError, TypeError, ValueError):
                    malformed += 1
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    return records, malformed


def _run_pool(
    triples: Iterable[tuple[int, int, int]],
    config: SolverConfig,
    jobs: int,
    keep_certs_dir: Path | None,
    out_handle: TextIO,
) -> tuple[int, int, int]:
    """Solve triples on a worker pool; stream records through one writer.

    Work is distributed in small fixed chunks so results reach the
    writer continuously even on multi-million-instance sweeps, and the
    input iterable is consumed lazily.
    """
    processed = solved = unresolved = 0

    start = time.perf_counter()

    def consume(payload: tuple[str, str | None]) -> None:
        nonlocal processed, solved, unresolved
        line, cert_text = payload
        out_handle.write(line + "\n")
        doc = json.loads(line)
        processed += 1
        if doc["status"] == SolveStatus.SOLVED.value:
            solved += 1
        else:
            unresolved += 1
        if cert_text is not None and keep_certs_dir is not None:
            name = f"cert_{doc['a']}_{doc['b']}_{doc['c']}.json"
            (keep_certs_dir / name).write_text(cert_text, encoding="utf-8")
        if processed % 250_000 == 0:
            rate = processed / (time.perf_counter() - start)
            print(
                f"... {processed} instances done ({rate:.0f}/s, {unresolved} unresolved)",
                file=sys.stderr,
            )

    keep = keep_certs_dir is not None
    if jobs == 1:
        _scan_worker_init(config, keep)
        for triple in triples:
            consume(_scan_worker(triple))
    else:
        with multiprocessing.Pool(
            processes=jobs, initializer=_scan_worker_init, initargs=(config, keep)
        ) as pool:
            for payload in pool.imap_unordered(_scan_worker, triples, chunksize=64):
                consume(payload)
    return processed, solved, unresolved


def cmd_scan(args: argparse.Namespace) -> int:
    if args.a_max < 2 or args.c_max < 2 or args.b_max < 1:
        raise CliError("ranges must satisfy a-max >= 2, c-max >= 2, b-max >= 1")
    config = build_config(args)
    jobs = _resolve_jobs(args.jobs)
    out_path = Path(args.out)
    keep_certs_dir = Path(args.keep_certs) if args.keep_certs else None
    if keep_certs_dir is not None:
        keep_certs_dir.mkdir(parents=True, exist_ok=True)

    done: set[tuple[int, int, int]] = set()
    existing: list[ScanRecord] = []
    if args.resume and out_path.exists():
        existing, _ = read_records(out_path)
        done = {(r.a, r.b, r.c) for r in existing}

    if args.retry_unresolved and out_path.exists():
        # retrying implies resuming: never duplicate solved records
        if not existing:
            existing, _ = read_records(out_path)
        done = {(r.a, r.b, r.c) for r in existing}
        retry = [(r.a, r.b, r.c) for r in existing if r.status == SolveStatus.UNRESOLVED.value]
        if retry:
            retry_config = enlarged(config)
            kept = [r for r in existing if r.status != SolveStatus.UNRESOLVED.value]
            tmp_path = out_path.with_suffix(out_path.suffix + ".tmp")
            try:
                with open(tmp_path, "w", encoding="utf-8", buffering=1) as handle:
                    for record in kept:
                        handle.write(record.to_json() + "\n")
                    _run_pool(retry, retry_config, jobs, keep_certs_dir, handle)
                os.replace(tmp_path, out_path)
            except OSError as exc:
                raise CliError(f"cannot rewrite {out_path}: {exc}") from exc
            existing, _ = read_records(out_path)
            done = {(r.a, r.b, r.c) for r in existing}

    todo = (t for t in iter_cube(args.a_max, args.b_max, args.c_max) if t not in done)
    start = time.perf_counter()
    try:
        _terminate_partial_line(out_path)
        with open(out_path, "a", encoding="utf-8", buffering=1) as handle:
            processed, solved, unresolved = _run_pool(todo, config, jobs, keep_certs_dir, handle)
    except OSError as exc:
        raise CliError(f"cannot write {out_path}: {exc}") from exc
    elapsed = time.perf_counter() - start

    total_records, _ = read_records(out_path)
    total_unresolved = sum(1 for r in total_records if r.status == SolveStatus.UNRESOLVED.value)
    print(
        f"scanned {processed} instances in {elapsed:.1f}s "
        f"(jobs={jobs}, new solved={solved}, new unresolved={unresolved}); "
        f"file now holds {len(total_records)} records, {total_unresolved} unresolved"
    )
    return EXIT_OK if total_unresolved == 0 else EXIT_UNRESOLVED


# ---------------------------------------------------------------------------
# verify

def cmd_verify(args: argparse.Namespace) -> int:
    try:
        text = Path(args.certificate).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {args.certificate}: {exc}") from exc
    try:
        cert = parse_certificate(text)
    except MalformedCertificateError as exc:
        raise CliError(f"malformed certificate: {exc}") from exc
    verdict = verify_certificate(cert)
    if verdict.accepted:
        print(f"Accept: {cert.instance.equation_text()} has solutions {list(cert.solutions)}")
        return EXIT_OK
    where = "" if verdict.claim_index is None else f" at claim {verdict.claim_index}"
    print(f"Reject{where}: {verdict.reason}")
    return EXIT_REJECTED


# ---------------------------------------------------------------------------
# stats

def cmd_stats(args: argparse.Namespace) -> int:
    records, malformed = read_records(args.results)
    histogram: dict[int, int] = {}
    tags: dict[str, int] = {}
    unresolved: list[ScanRecord] = []
    for record in records:
        histogram[record.solution_count] = histogram.get(record.solution_count, 0) + 1
        tags[record.class_tag] = tags.get(record.class_tag, 0) + 1
        if record.status == SolveStatus.UNRESOLVED.value:
            unresolved.append(record)

    print(f"records: {len(records)} ({malformed} malformed lines)")
    print("solution count histogram:")
    for k in sorted(histogram):
        print(f"  {k}: {histogram[k]}")
    max_count = max(histogram) if histogram else 0
    print(f"max solution count: {max_count}")
    if histogram:
        print("instances attaining the maximum:")
        for record in sorted(
            (r for r in records if r.solution_count == max_count),
            key=lambda r: (r.a, r.b, r.c),
        ):
            inst = EquationInstance(record.a, record.b, record.c)
            sols = " ".join(f"({x},{y})" for x, y in record.solutions) or "-"
            print(f"  {inst.equation_text()}: {sols}")
    print("class breakdown:")
    for tag in sorted(tags):
        print(f"  {tag}: {tags[tag]}")
    if unresolved:
        print(f"unresolved ({len(unresolved)}):")
        for record in sorted(unresolved, key=lambda r: (r.a, r.b, r.c)):
            print(f"  ({record.a}, {record.b}, {record.c})")
    else:
        print("unresolved: none")
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="expodio",
        description="Solve a^x + b = c^y, generate proof certificates, verify them, scan ranges.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve one instance")
    p_solve.add_argument("a", type=int)
    p_solve.add_argument("b", type=int)
    p_solve.add_argument("c", type=int)
    p_solve.add_argument("--emit-lean", metavar="DIR", help="write the Lean proof script here")
    p_solve.add_argument("--emit-text", metavar="DIR", help="write the prose proof here")
    p_solve.add_argument("--cert", metavar="FILE", help="write the serialized certificate here")
    p_solve.add_argument("--json", action="store_true", help="print a scan-record JSON line")
    p_solve.add_argument("--verbose", "-v", action="store_true", help="log the search progress")
    _add_config_flags(p_solve)
    p_solve.set_defaults(func=cmd_solve)

    p_scan = sub.add_parser("scan", help="solve every instance in a parameter cube")
    p_scan.add_argument("--a-max", type=int, required=True)
    p_scan.add_argument("--b-max", type=int, required=True)
    p_scan.add_argument("--c-max", type=int, required=True)
    p_scan.add_argument("--out", required=True, metavar="FILE", help="JSONL output path")
    p_scan.add_argument("--jobs", type=int, help=f"worker count (default: ${JOBS_ENV_VAR} or CPUs)")
    p_scan.add_argument("--resume", action="store_true", help="skip instances already in the file")
    p_scan.add_argument("--keep-certs", metavar="DIR", help="also store certificate files here")
    p_scan.add_argument(
        "--retry-unresolved",
        action="store_true",
        help="re-run unresolved records with enlarged budgets first",
    )
    _add_config_flags(p_scan)
    p_scan.set_defaults(func=cmd_scan)

    p_verify = sub.add_parser("verify", help="re-validate a certificate file")
    p_verify.add_argument("certificate", metavar="FILE")
    p_verify.set_defaults(func=cmd_verify)

    p_stats = sub.add_parser("stats", help="summarize a scan results file")
    p_stats.add_argument("results", metavar="FILE")
    p_stats.set_defaults(func=cmd_stats)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors; this tool reports 1
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
