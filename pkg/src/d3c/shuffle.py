"""Coded exchange: segmentation, XOR multicast signals, delivery, decoding.

Every intermediate-value block an absent node needs is split into g equal
whole-bit segments, one per coding-set member. Each multicast group (i, j)
yields one signal per sender k in j: the XOR of the sender-owned segments of
the blocks requested by the other members of j. Receivers cancel the
segments they computed locally and keep the one they miss.

Only payload bits count toward the communication load; simulation metadata
is tracked separately by the engine.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import IO, Mapping

from .bits import BitString
from .combinatorics import BatchIndex, GroupIndex, enum_pi
from .errors import DecodeError, InternalConsistencyError, SegmentationError
from .scheme import BasicScheme, IvaId

IvaStore = Mapping[IvaId, BitString]


@dataclass(frozen=True)
class IvaBlock:
    """Concatenation of one batch's intermediate values for one target node,
    in ascending file-id order."""

    batch: BatchIndex
    target: int
    payload: BitString


@dataclass(frozen=True)
class Segment:
    """One owner's share of a block after the g-way equal split."""

    batch: BatchIndex
    target: int
    owner: int
    payload: BitString


@dataclass(frozen=True)
class MulticastSignal:
    """One XOR payload multicast by ``sender`` for group (i, j)."""

    sender: int
    group: GroupIndex
    payload: BitString

    @property
    def bit_length(self) -> int:
        return self.payload.length


def make_block(computed: IvaStore, batch: BatchIndex, files: tuple[int, ...], target: int) -> IvaBlock:
    """Assemble a block from a node's computed values; raises KeyError parts."""
    parts = []
    for n in files:
        iva = computed.get(IvaId(target, n))
        if iva is None:
            raise KeyError(IvaId(target, n))
        parts.append(iva)
    return IvaBlock(batch, target, BitString.join(parts))


def segment_block(block: IvaBlock, g: int) -> list[Segment]:
    """Split a block into g equal segments owned by the coding-set members
    in ascending node order. Lossless: concatenation restores the block."""
    length = block.payload.length
    if g < 1 or len(block.batch.t) != g:
        raise SegmentationError(
            f"block {block.batch} has {len(block.batch.t)} owners, cannot split into {g}"
        )
    if length % g:
        pad = g - length % g
        raise SegmentationError(
            f"{length} bits do not split into {g} equal whole-bit segments; "
            f"{pad} padding bits would be required",
            required_padding=pad,
        )
    seg_bits = length // g
    return [
        Segment(block.batch, block.target, owner, block.payload.slice(idx * seg_bits, seg_bits))
        for idx, owner in enumerate(block.batch.t)
    ]


def _owned_segment(
    computed: IvaStore, scheme: BasicScheme, batch: BatchIndex, target: int, owner: int
) -> BitString:
    """The ``owner``-indexed segment of block (batch, target), built locally."""
    block = make_block(computed, batch, scheme.batches[batch], target)
    seg_bits = block.payload.length // scheme.params.g
    idx = batch.t.index(owner)
    return block.payload.slice(idx * seg_bits, seg_bits)


def build_signals(scheme: BasicScheme, computed: Mapping[int, IvaStore]) -> list[MulticastSignal]:
    """Every multicast signal of the scheme, in group order then sender order.

    Each sender XORs, over the other members i of its group's j-set, its own
    segment of the block requested by i. All operands are in the sender's
    planned compute set; a miss indicates a compute-plan bug.
    """
    p = scheme.params
    if p.r >= p.K:
        return []  # every node stores everything; nothing to exchange
    signals = []
    for group in enum_pi(p.K, p.r, p.g):
        for sender in group.j:
            acc: BitString | None = None
            for i in group.j:
                if i == sender:
                    continue
                batch = BatchIndex(
                    tuple(x for x in group.i if x != i),
                    tuple(x for x in group.j if x != i),
                )
                try:
                    seg = _owned_segment(computed[sender], scheme, batch, i, sender)
                except KeyError as missing:
                    raise InternalConsistencyError(
                        f"node {sender} lacks operand {missing} for group {group}"
                    ) from None
                acc = seg if acc is None else acc.xor(seg)
            assert acc is not None
            signals.append(MulticastSignal(sender, group, acc))
    return signals


def run_shuffle(
    scheme: BasicScheme, computed: Mapping[int, IvaStore]
) -> tuple[dict[int, dict[tuple[int, GroupIndex], MulticastSignal]], int]:
    """Build all signals and deliver each to every other node losslessly.

    Returns the per-node delivered store keyed by (sender, group) and the
    total payload bits placed on the channel.
    """
    signals = build_signals(scheme, computed)
    total_bits = sum(s.bit_length for s in signals)
    delivered: dict[int, dict[tuple[int, GroupIndex], MulticastSignal]] = {
        k: {} for k in range(1, scheme.params.K + 1)
    }
    for signal in signals:
        for k in delivered:
            if k != signal.sender:
                delivered[k][(signal.sender, signal.group)] = signal
    return delivered, total_bits


def decode_node(
    k: int,
    scheme: BasicScheme,
    computed_k: IvaStore,
    delivered_k: Mapping[tuple[int, GroupIndex], MulticastSignal],
) -> dict[int, BitString]:
    """Recover node k's full value set {v_(k,n) : n in [N]}.

    Locally computed values cover stored batches. For each missing batch and
    each coding-set member j, the j-owned segment of k's block is the group
    signal of j XORed with the segments k already knows; segments reassemble
    in ascending owner order into the block, which splits back into values.
    """
    p = scheme.params
    result: dict[int, BitString] = {}
    for n in scheme.storage[k]:
        iva = computed_k.get(IvaId(k, n))
        if iva is None:
            raise DecodeError(f"node {k} missing own value for file {n}")
        result[n] = iva
    for batch in scheme.missing_batches(k):
        group = GroupIndex(
            tuple(sorted(batch.s + (k,))),
            tuple(sorted(batch.t + (k,))),
        )
        segments = []
        for j in batch.t:
            signal = delivered_k.get((j, group))
            if signal is None:
                raise DecodeError(
                    f"node {k} missing signal from {j} for group {group}",
                    batch=batch,
                    owner=j,
                )
            acc = signal.payload
            for i in batch.t:
                if i == j:
                    continue
                other = BatchIndex(
                    tuple(x for x in group.i if x != i),
                    tuple(x for x in group.j if x != i),
                )
                try:
                    acc = acc.xor(_owned_segment(computed_k, scheme, other, i, j))
                except KeyError:
                    raise DecodeError(
                        f"node {k} missing local segment of {other} for target {i}",
                        batch=batch,
                        owner=j,
                    ) from None
            segments.append(acc)
        block = BitString.join(segments)  # owners ascend with batch.t order
        for n, iva in zip(scheme.batches[batch], block.chunks(p.T)):
            result[n] = iva
    return result


def signal_trace_records(signals: list[MulticastSignal]) -> list[dict]:
    """One audit record per signal, stable across runs and implementations."""
    return [
        {
            "sender": s.sender,
            "group_i": list(s.group.i),
            "group_j": list(s.group.j),
            "bit_length": s.bit_length,
            "payload_digest": s.payload.digest(),
        }
        for s in signals
    ]


def write_signal_trace(signals: list[MulticastSignal], fp: IO[str]) -> None:
    """JSON-lines trace of the exchange, one record per signal."""
    for record in signal_trace_records(signals):
        fp.write(json.dumps(record, separators=(",", ":")) + "\n")
