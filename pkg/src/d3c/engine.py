"""End-to-end simulated runs: corpus, map, coded shuffle, reduce, verify.

Nodes are logical entities in one process. Isolation is enforced by
construction: every file or signal access goes through a per-node view that
admits only the node's placed files and the signals actually delivered to
it. Audit mode additionally records each access so a run can prove that no
information flowed outside the scheme's plan.

All randomness comes from one explicit seed; reports contain no wall-clock
fields, so identical inputs serialize byte-identically.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from random import Random
from typing import IO, Callable, Sequence

from .analytics import lstar_formula
from .bits import BitString
from .composer import (
    CompositePlan,
    basic_communication,
    basic_computation,
    safe_iva_bits,
)
from .errors import (
    ExecutionError,
    InternalConsistencyError,
    InvalidParameterError,
)
from .scheme import (
    BasicScheme,
    LoadReport,
    SchemeParams,
    build_basic_scheme,
    build_cdc_scheme,
    default_iva_bits,
    measure_storage,
)
from .shuffle import decode_node, run_shuffle, write_signal_trace


@dataclass(frozen=True)
class Corpus:
    """N pseudorandom files of F bits each, reproducible from the seed."""

    files: tuple[bytes, ...]
    F: int
    seed: int

    @property
    def N(self) -> int:
        return len(self.files)


def generate_corpus(N: int, F: int, seed: int) -> Corpus:
    """Deterministic corpus; F must be byte-aligned."""
    if N < 1:
        raise InvalidParameterError(f"need at least one file, got N={N}")
    if F < 8 or F % 8:
        raise InvalidParameterError(f"file size must be a positive multiple of 8 bits, got {F}")
    rng = Random(seed)
    nbytes = F // 8
    return Corpus(tuple(rng.randbytes(nbytes) for _ in range(N)), F, seed)


@dataclass(frozen=True)
class FunctionSuite:
    """Map/reduce pair with fixed value sizes.

    ``map_fn(target, file_id, file_bytes)`` yields the T-bit intermediate
    value; ``reduce_fn(target, values)`` consumes the N values in ascending
    file order and yields the B-bit output.
    """

    map_fn: Callable[[int, int, bytes], BitString]
    reduce_fn: Callable[[int, Sequence[BitString]], BitString]
    iva_bits: int
    output_bits: int


def _digest_bits(domain: bytes, payload: bytes, nbits: int) -> BitString:
    """Keyed digest stream truncated to nbits (counter mode for long outputs)."""
    nbytes = (nbits + 7) // 8
    out = bytearray()
    counter = 0
    while len(out) < nbytes:
        h = hashlib.blake2b(payload, digest_size=64, key=domain + counter.to_bytes(8, "big"))
        out += h.digest()
        counter += 1
    return BitString.from_bytes(bytes(out[:nbytes]), nbits)


def default_suite(T: int, B: int | None = None) -> FunctionSuite:
    """Keyed-digest suite: deterministic, size-exact, order-sensitive."""
    if B is None:
        B = T
    if T < 1 or B < 1:
        raise InvalidParameterError("value sizes must be positive")

    def map_fn(target: int, file_id: int, data: bytes) -> BitString:
        key = target.to_bytes(4, "big") + file_id.to_bytes(8, "big")
        return _digest_bits(b"map", key + data, T)

    def reduce_fn(target: int, values: Sequence[BitString]) -> BitString:
        blob = bytearray(target.to_bytes(4, "big"))
        for v in values:
            blob += v.length.to_bytes(4, "big") + v.to_bytes()
        return _digest_bits(b"reduce", bytes(blob), B)

    return FunctionSuite(map_fn, reduce_fn, T, B)


def oracle(corpus: Corpus, suite: FunctionSuite, K: int) -> list[BitString]:
    """Centralized ground truth: all N*K values, then the K reduce outputs."""
    outputs = []
    for k in range(1, K + 1):
        values = [
            suite.map_fn(k, n, corpus.files[n - 1]) for n in range(1, corpus.N + 1)
        ]
        outputs.append(suite.reduce_fn(k, values))
    return outputs


@dataclass
class _Auditor:
    enabled: bool
    file_reads: int = 0
    signal_reads: int = 0
    violations: list[dict] = field(default_factory=list)

    def file_access(self, node: int, file_id: int, allowed: bool) -> None:
        if allowed:
            self.file_reads += 1
        else:
            self.violations.append({"node": node, "kind": "file", "id": file_id})

    def signal_access(self, node: int, key, allowed: bool) -> None:
        if allowed:
            self.signal_reads += 1
        else:
            self.violations.append({"node": node, "kind": "signal", "id": repr(key)})


class _NodeFiles:
    """Per-node gate in front of the corpus: only placed files are readable."""

    __slots__ = ("node", "corpus", "allowed", "auditor")

    def __init__(self, node: int, corpus: Corpus, allowed: set[int], auditor: _Auditor):
        self.node = node
        self.corpus = corpus
        self.allowed = allowed
        self.auditor = auditor

    def read(self, file_id: int) -> bytes:
        ok = file_id in self.allowed
        self.auditor.file_access(self.node, file_id, ok)
        if not ok:
            raise ExecutionError(
                f"node {self.node} attempted to read file {file_id} outside its storage"
            )
        return self.corpus.files[file_id - 1]


class _NodeSignals(dict):
    """Per-node delivered-signal store that audits every lookup."""

    def __init__(self, node: int, delivered: dict, auditor: _Auditor):
        super().__init__(delivered)
        self.node = node
        self.auditor = auditor

    def get(self, key, default=None):
        found = super().get(key, default)
        self.auditor.signal_access(self.node, key, found is not None)
        return found


@dataclass(frozen=True)
class PerNodeStats:
    node: int
    stored_files: int
    computed_values: int
    sent_signals: int
    sent_bits: int
    received_signals: int
    received_bits: int


@dataclass(frozen=True)
class ExecutionReport:
    """Everything one run produced, deterministic given (plan, seed, suite)."""

    K: int
    N: int
    T: int
    B: int
    seed: int
    plan: dict
    measured: LoadReport
    predicted: dict[str, Fraction]
    per_node: tuple[PerNodeStats, ...]
    outputs: tuple[str, ...]
    verification_passed: bool
    first_mismatch: dict | None
    overhead_bits: int
    audit: dict | None

    def to_dict(self) -> dict:
        return {
            "K": self.K,
            "N": self.N,
            "T": self.T,
            "B": self.B,
            "seed": self.seed,
            "plan": self.plan,
            "measured": self.measured.to_dict(),
            "predicted": {
                name: {"exact": str(value), "value": float(value)}
                for name, value in self.predicted.items()
            },
            "per_node": [
                {
                    "node": s.node,
                    "stored_files": s.stored_files,
                    "computed_values": s.computed_values,
                    "sent_signals": s.sent_signals,
                    "sent_bits": s.sent_bits,
                    "received_signals": s.received_signals,
                    "received_bits": s.received_bits,
                }
                for s in self.per_node
            ],
            "outputs": list(self.outputs),
            "verification": {
                "passed": self.verification_passed,
                "first_mismatch": self.first_mismatch,
            },
            "overhead_bits": self.overhead_bits,
            "audit": self.audit,
        }

    def to_json(self, *, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def _bound_groups(plan: BasicScheme | CompositePlan, F: int, T: int) -> list[tuple[BasicScheme, int]]:
    """Materialize (scheme, file offset) pairs for execution."""
    if isinstance(plan, BasicScheme):
        return [(plan, 0)]
    out = []
    for sp in plan.groups:
        params = SchemeParams(K=plan.K, N=sp.file_count, F=F, T=T, r=sp.r, g=sp.g)
        out.append((build_basic_scheme(params), sp.first_file - 1))
    return out


def _predicted_loads(plan: BasicScheme | CompositePlan) -> dict[str, Fraction]:
    if isinstance(plan, CompositePlan):
        return {
            "storage_space": plan.predicted_r,
            "computation_load": plan.predicted_c,
            "communication_load": plan.predicted_L,
        }
    p = plan.params
    if plan.kind == "cdc":
        computation = Fraction(p.r)
        communication = lstar_formula(p.K, p.r) if p.r < p.K else Fraction(0)
    else:
        computation = basic_computation(p.K, p.r, p.g)
        communication = basic_communication(p.K, p.r, p.g) if p.r < p.K else Fraction(0)
    return {
        "storage_space": Fraction(p.r),
        "computation_load": computation,
        "communication_load": communication,
    }


def _plan_summary(plan: BasicScheme | CompositePlan) -> dict:
    if isinstance(plan, CompositePlan):
        return {
            "type": "composite",
            "route": plan.route,
            "target_r": str(plan.target_r),
            "target_c": str(plan.target_c),
            "groups": [
                {
                    "fraction": str(sp.fraction),
                    "r": sp.r,
                    "g": sp.g,
                    "first_file": sp.first_file,
                    "file_count": sp.file_count,
                }
                for sp in plan.groups
            ],
        }
    p = plan.params
    return {"type": plan.kind, "r": p.r, "g": p.g}


def _signal_overhead_bits(K: int, group_i: int, group_j: int) -> int:
    """Bits to address one signal's metadata: sender id plus both member lists.

    Excluded from the communication load; reported for transparency.
    """
    per_id = max(1, math.ceil(math.log2(K)))
    return per_id * (1 + group_i + group_j)


def execute(
    plan: BasicScheme | CompositePlan,
    corpus: Corpus,
    suite: FunctionSuite | None = None,
    *,
    audit: bool = False,
    trace: IO[str] | None = None,
) -> ExecutionReport:
    """Run map, shuffle, and reduce under ``plan`` and verify against the
    centralized oracle. Raises only on plan/corpus mismatch or internal
    inconsistency; a wrong output is reported, not raised."""
    if isinstance(plan, BasicScheme):
        K, N_total = plan.params.K, plan.params.N
        F, T = plan.params.F, plan.params.T
    else:
        K, N_total = plan.K, plan.N
        F = corpus.F
        T = suite.iva_bits if suite else safe_iva_bits(plan)
    if corpus.N != N_total:
        raise InvalidParameterError(
            f"corpus has {corpus.N} files but the plan needs {N_total}"
        )
    if corpus.F != F:
        raise InvalidParameterError(f"corpus file size {corpus.F} != plan file size {F}")
    if suite is None:
        suite = default_suite(T)
    if suite.iva_bits != T:
        raise InvalidParameterError(
            f"suite produces {suite.iva_bits}-bit values but the plan assumes {T}"
        )

    groups = _bound_groups(plan, F, T)
    nodes = range(1, K + 1)
    auditor = _Auditor(enabled=audit)

    # per-node allowed file sets across all groups
    allowed: dict[int, set[int]] = {k: set() for k in nodes}
    for scheme, offset in groups:
        for k in nodes:
            allowed[k].update(offset + n for n in scheme.storage[k])
    file_views = {k: _NodeFiles(k, corpus, allowed[k], auditor) for k in nodes}

    evaluations = 0
    planned_evaluations = 0
    total_bits = 0
    overhead_bits = 0
    sent_signals = {k: 0 for k in nodes}
    sent_bits = {k: 0 for k in nodes}
    received_signals = {k: 0 for k in nodes}
    received_bits = {k: 0 for k in nodes}
    collected: dict[int, dict[int, BitString]] = {k: {} for k in nodes}

    for scheme, offset in groups:
        computed: dict[int, dict] = {}
        for k in nodes:
            store = {}
            plan_k = scheme.compute_own[k] + scheme.compute_coded[k]
            planned_evaluations += len(plan_k)
            view = file_views[k]
            for iva in plan_k:
                data = view.read(offset + iva.file)
                store[iva] = suite.map_fn(iva.target, offset + iva.file, data)
                evaluations += 1
            computed[k] = store

        delivered, bits = run_shuffle(scheme, computed)
        total_bits += bits
        all_signals = {
            key: sig for store in delivered.values() for key, sig in store.items()
        }
        for (sender, group), signal in all_signals.items():
            sent_signals[sender] += 1
            sent_bits[sender] += signal.bit_length
            overhead_bits += _signal_overhead_bits(K, len(group.i), len(group.j))
            for k in nodes:
                if k != sender:
                    received_signals[k] += 1
                    received_bits[k] += signal.bit_length
        if trace is not None:
            write_signal_trace(
                sorted(all_signals.values(), key=lambda s: (s.group, s.sender)), trace
            )

        for k in nodes:
            signal_view = _NodeSignals(k, delivered[k], auditor)
            try:
                values = decode_node(k, scheme, computed[k], signal_view)
            except Exception as err:
                raise ExecutionError(f"decode failed at node {k}: {err}") from err
            for local_n, value in values.items():
                collected[k][offset + local_n] = value

    if evaluations != planned_evaluations:
        raise InternalConsistencyError(
            f"performed {evaluations} map evaluations, plan says {planned_evaluations}"
        )

    outputs = []
    for k in nodes:
        values = [collected[k][n] for n in range(1, N_total + 1)]
        outputs.append(suite.reduce_fn(k, values))

    truth = oracle(corpus, suite, K)
    first_mismatch = None
    for k, (got, want) in enumerate(zip(outputs, truth), start=1):
        if got != want:
            first_mismatch = {
                "node": k,
                "expected": want.to_bytes().hex(),
                "actual": got.to_bytes().hex(),
            }
            break

    stored_total = sum(len(allowed[k]) for k in nodes)
    measured = LoadReport(
        storage_space=Fraction(stored_total, N_total),
        computation_load=Fraction(evaluations, N_total * K),
        communication_load=Fraction(total_bits, N_total * K * T),
    )
    per_node = tuple(
        PerNodeStats(
            node=k,
            stored_files=len(allowed[k]),
            computed_values=sum(
                len(s.compute_own[k]) + len(s.compute_coded[k]) for s, _ in groups
            ),
            sent_signals=sent_signals[k],
            sent_bits=sent_bits[k],
            received_signals=received_signals[k],
            received_bits=received_bits[k],
        )
        for k in nodes
    )
    audit_summary = None
    if audit:
        audit_summary = {
            "file_reads": auditor.file_reads,
            "signal_reads": auditor.signal_reads,
            "violations": auditor.violations,
        }
    return ExecutionReport(
        K=K,
        N=N_total,
        T=T,
        B=suite.output_bits,
        seed=corpus.seed,
        plan=_plan_summary(plan),
        measured=measured,
        predicted=_predicted_loads(plan),
        per_node=per_node,
        outputs=tuple(out.to_bytes().hex() for out in outputs),
        verification_passed=first_mismatch is None,
        first_mismatch=first_mismatch,
        overhead_bits=overhead_bits,
        audit=audit_summary,
    )


@dataclass(frozen=True)
class ComparisonRow:
    name: str
    storage: Fraction
    computation: Fraction
    communication: Fraction
    predicted_computation: Fraction
    predicted_communication: Fraction
    verified: bool


def compare_schemes(
    configs: Sequence[tuple],
    K: int,
    N: int,
    *,
    F: int = 64,
    T: int | None = None,
    B: int | None = None,
    seed: int = 0,
) -> list[ComparisonRow]:
    """Execute several schemes on one corpus and tabulate measured loads
    beside their analytic predictions.

    Each config is ("d3c", r, g) or ("cdc", r).
    """
    if T is None:
        T = default_iva_bits(max(cfg[1] for cfg in configs))
    corpus = generate_corpus(N, F, seed)
    suite = default_suite(T, B)
    rows = []
    for cfg in configs:
        if cfg[0] == "d3c":
            _, r, g = cfg
            scheme = build_basic_scheme(SchemeParams(K=K, N=N, F=F, T=T, r=r, g=g))
            name = f"d3c-r{r}-g{g}"
        elif cfg[0] == "cdc":
            _, r = cfg
            scheme = build_cdc_scheme(K, N, r, F=F, T=T)
            name = f"cdc-r{r}"
        else:
            raise InvalidParameterError(f"unknown scheme kind {cfg[0]!r}")
        report = execute(scheme, corpus, suite)
        rows.append(
            ComparisonRow(
                name=name,
                storage=measure_storage(scheme),
                computation=report.measured.computation_load,
                communication=report.measured.communication_load,
                predicted_computation=report.predicted["computation_load"],
                predicted_communication=report.predicted["communication_load"],
                verified=report.verification_passed,
            )
        )
    return rows
