"""
Verification campaigns: exhaustive or sampled error/erasure sweeps for the
one-step decoder, and the transversal-number sweep.

Patterns are split into shards of contiguous colex ranks per weight. Shards run
on a process pool when more than one worker is requested; counts are summed and
witness lists merged lowest (weight, rank, message) first, so the report does
not depend on the worker count.
"""

import asyncio
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

import config
from decode.majority import BatchMajorityDecoder, mld_decode_erasures, mld_decode_errors
from decode.oracles import erasure_correctable_oracle
from decode.words import ReceivedWord
from errors import GuardExceededError, ParameterError
from geom.subspace import Subspace, subspace_points
from geom.transversal import (coset_transversal, is_transversal, minimum_transversal,
                              transversal_number_bruteforce, transversal_size)
from harness.channel_sim import run_channel_sim
from harness.models import (MODE_ERASURES, MODE_ERRORS, MODE_TRANSVERSAL, CampaignReport,
                            CampaignSpec)
from harness.patterns import (check_pattern_budget, colex_patterns, make_rng, masks_to_words,
                              pattern_count, sample_patterns)
from recovery.families import recovery_table
from rmcode.bitstrings import format_bits, format_message
from rmcode.generator import code_params, generator_matrix

logger = logging.getLogger(__name__)


def message_block(policy: str, k: int, rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """Messages for a campaign as a (count, k) uint8 array.

    random:N puts the zero and all-ones messages ahead of N uniform draws.
    """
    policy = policy.strip().lower()
    if policy == 'zero':
        return np.zeros((1, k), dtype=np.uint8)
    if policy in ('ones', 'all-ones'):
        return np.ones((1, k), dtype=np.uint8)
    if policy == 'exhaustive':
        if k > config.MAX_K_EXHAUSTIVE:
            raise GuardExceededError(f"k={k} too large for exhaustive messages (limit {config.MAX_K_EXHAUSTIVE})")
        values = np.arange(1 << k)
        return ((values[:, None] >> np.arange(k - 1, -1, -1)) & 1).astype(np.uint8)
    if policy.startswith('random'):
        _, _, count = policy.partition(':')
        try:
            count = int(count) if count else config.DEFAULT_RANDOM_MESSAGES
        except ValueError as e:
            raise ParameterError(f"Malformed message policy {policy!r}") from e
        if rng is None:
            raise ParameterError("Random messages require a seeded generator")
        drawn = rng.integers(0, 2, size=(count, k), dtype=np.uint8)
        return np.vstack([np.zeros((1, k), dtype=np.uint8), np.ones((1, k), dtype=np.uint8), drawn])
    raise ParameterError(f"Unknown message policy {policy!r}")


def encode_block(messages: np.ndarray, r: int, m: int) -> np.ndarray:
    rows = generator_matrix(r, m).rows.astype(np.float32)
    return ((messages.astype(np.float32) @ rows).astype(np.int64) & 1).astype(np.uint8)


@lru_cache(maxsize=16)
def batch_decoder(r: int, m: int) -> BatchMajorityDecoder:
    return BatchMajorityDecoder(recovery_table(r, m))


@dataclass
class ShardTask:
    r: int
    m: int
    mode: str
    weight: int
    within_radius: bool
    messages: np.ndarray
    start: int = 0
    stop: int = 0
    masks: Optional[Tuple[int, ...]] = None
    witness_cap: int = config.WITNESS_CAP


@dataclass
class ShardResult:
    counts: Dict[str, int]
    candidates: List[Tuple[int, int, int, int, bool]]


def _shard_masks(task: ShardTask):
    if task.masks is not None:
        return enumerate(task.masks, start=task.start)
    n = 1 << task.m
    return enumerate(colex_patterns(n, task.weight, task.start, task.stop), start=task.start)


def _chunks(iterable, size: int):
    chunk = []
    for item in iterable:
        chunk.append(item)
        if len(chunk) == size:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


def run_shard(task: ShardTask) -> ShardResult:
    """Decode every (pattern, message) pair of one shard."""
    n = 1 << task.m
    gen = generator_matrix(task.r, task.m)
    decoder = batch_decoder(task.r, task.m)
    messages = task.messages
    codewords = encode_block(messages, task.r, task.m)
    count = len(messages)
    counts = dict(patterns=0, words=0, failures=0, ties=0, unrecoverable_symbols=0,
                  wrong_values=0, violations=0, oracle_correctable_failures=0)
    candidates = []
    oracle_seen = {}
    for chunk in _chunks(_shard_masks(task), max(1, config.BATCH_SIZE // count)):
        ranks = [rank for rank, _ in chunk]
        masks = [mask for _, mask in chunk]
        patterns = masks_to_words(masks, n)
        expected = np.tile(messages, (len(masks), 1))
        if task.mode == MODE_ERRORS:
            words = (patterns[:, None, :] ^ codewords[None, :, :]).reshape(-1, n)
            decoded, ties = decoder.decode_errors(words)
            wrong = (decoded != expected).any(axis=1)
            tied = ties.any(axis=1)
            failed = wrong
            bad = wrong | tied if task.within_radius else wrong
            counts['ties'] += int(tied.sum())
            violation = bad if task.within_radius else np.zeros_like(bad)
        else:
            erasures = np.repeat(patterns, count, axis=0)
            words = np.tile(codewords, (len(masks), 1))
            decoded, unrecoverable = decoder.decode_erasures(words, erasures)
            failed = unrecoverable.any(axis=1)
            wrong = ((decoded != expected) & ~unrecoverable).any(axis=1)
            bad = failed | wrong
            counts['unrecoverable_symbols'] += int(unrecoverable.sum())
            counts['wrong_values'] += int(wrong.sum())
            violation = wrong | (failed if task.within_radius else np.zeros_like(failed))
            for row in np.flatnonzero(failed):
                mask = masks[row // count]
                if mask not in oracle_seen:
                    oracle_seen[mask] = erasure_correctable_oracle(mask, gen)
                if oracle_seen[mask]:
                    counts['oracle_correctable_failures'] += 1
        counts['patterns'] += len(masks)
        counts['words'] += len(words)
        counts['failures'] += int(failed.sum())
        counts['violations'] += int(violation.sum())
        for row in np.flatnonzero(bad):
            if len(candidates) >= task.witness_cap:
                break
            pattern = row // count
            candidates.append((task.weight, ranks[pattern], masks[pattern], int(row % count), bool(violation[row])))
    return ShardResult(counts=counts, candidates=candidates)


def replay_witness(kind: str, r: int, m: int, mask: int, message: Sequence[int]) -> Dict:
    """Rebuild one witness through the scalar decoder and record its transcript."""
    gen = generator_matrix(r, m)
    table = recovery_table(r, m)
    n = gen.params.n
    codeword = gen.encode(message)
    if kind == MODE_ERRORS:
        word = ReceivedWord(n=n, bits=codeword ^ mask)
        report = mld_decode_errors(word, table)
    else:
        word = ReceivedWord(n=n, bits=codeword & ~mask, erasures=mask)
        report = mld_decode_erasures(word, table)
    return {
        'kind': kind,
        'weight': mask.bit_count(),
        'pattern': format_bits(mask, n),
        'message': format_message(message),
        'word': format_bits(word.bits, n),
        'erasures': format_bits(word.erasures, n),
        'decoded': format_message(report.message),
        'status': report.status,
        'correct': tuple(report.message) == tuple(message),
        'per_symbol': [d.to_dict() for d in report.per_symbol],
    }


def _split(total: int, parts: int) -> List[Tuple[int, int]]:
    parts = max(1, min(parts, total))
    step = -(-total // parts)
    return [(s, min(s + step, total)) for s in range(0, total, step)]


class CampaignRunner:
    """Runs campaigns, fanning shards out over a process pool."""

    def __init__(self, workers: Optional[int] = None):
        self.logger = logging.getLogger(__name__)
        self.workers = workers or config.DEFAULT_WORKERS

    async def run_tasks(self, fn: Callable, tasks: List) -> List:
        if self.workers <= 1 or len(tasks) <= 1:
            return [fn(task) for task in tasks]
        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor(max_workers=self.workers) as pool:
            futures = [loop.run_in_executor(pool, fn, task) for task in tasks]
            return list(await asyncio.gather(*futures))

    def run(self, spec: CampaignSpec) -> CampaignReport:
        return asyncio.run(self.run_async(spec))

    async def run_async(self, spec: CampaignSpec) -> CampaignReport:
        spec.validate()
        started = time.perf_counter()
        self.logger.info(f"Campaign {spec.mode} RM({spec.r},{spec.m}) weight={spec.weight} "
                         f"{'exhaustive' if spec.exhaustive else 'sampled'} workers={self.workers}")
        if spec.mode in (MODE_ERRORS, MODE_ERASURES):
            report = await self._run_pattern_campaign(spec)
        elif spec.mode == MODE_TRANSVERSAL:
            report = await self._run_transversal_campaign(spec)
        else:
            report = run_channel_sim(spec)
        report.timing['seconds'] = round(time.perf_counter() - started, 6)
        self.logger.info(f"Campaign finished: {report.totals}")
        if report.violations:
            self.logger.error(f"{report.violations} guarantee violations in {spec.mode} campaign")
        return report

    def _weights(self, spec: CampaignSpec) -> List[int]:
        if not spec.at_most:
            return [spec.weight]
        low = 0 if spec.exhaustive else 1
        return list(range(low, spec.weight + 1))

    def _radius(self, spec: CampaignSpec) -> int:
        params = code_params(spec.r, spec.m)
        return params.error_radius if spec.mode == MODE_ERRORS else params.erasure_radius

    async def _run_pattern_campaign(self, spec: CampaignSpec) -> CampaignReport:
        n = 1 << spec.m
        k = code_params(spec.r, spec.m).k
        rng = make_rng(spec.seed) if spec.sampled else None
        messages = message_block(spec.messages, k, rng)
        radius = self._radius(spec)
        weights = self._weights(spec)
        tasks = []
        if spec.exhaustive:
            check_pattern_budget(n, max(weights), min(weights))
            for w in weights:
                for start, stop in _split(pattern_count(n, w), self.workers):
                    tasks.append(ShardTask(spec.r, spec.m, spec.mode, w, w <= radius, messages, start, stop))
        else:
            for w in weights:
                sampled = sample_patterns(rng, n, w, spec.trials)
                for start, stop in _split(len(sampled), self.workers):
                    tasks.append(ShardTask(spec.r, spec.m, spec.mode, w, w <= radius, messages, start=start,
                                           masks=tuple(sampled[start:stop])))
            if spec.mode == MODE_ERASURES and spec.adversarial:
                tasks.extend(self._adversarial_tasks(spec, messages, radius, spec.trials))
        results = await self.run_tasks(run_shard, tasks)
        totals: Dict[str, int] = {}
        candidates = []
        for result in results:
            for key, value in result.counts.items():
                totals[key] = totals.get(key, 0) + value
            candidates.extend(result.candidates)
        totals['radius'] = radius
        candidates.sort(key=lambda c: (c[0], c[1], c[3]))
        witnesses = []
        for weight, rank, mask, index, violation in candidates[:config.WITNESS_CAP]:
            entry = replay_witness(spec.mode, spec.r, spec.m, mask, tuple(int(b) for b in messages[index]))
            entry.update(rank=rank, violation=violation)
            witnesses.append(entry)
        return CampaignReport(spec=spec.to_dict(), totals=totals, witnesses=witnesses)

    def _adversarial_tasks(self, spec: CampaignSpec, messages: np.ndarray, radius: int,
                           offset: int) -> List[ShardTask]:
        """Erasures shaped like minimum transversals of each symbol's large sets."""
        table = recovery_table(spec.r, spec.m)
        by_weight: Dict[int, List[int]] = {}
        for family in table:
            shifts = family.subspace.vectors()
            shaped = [minimum_transversal(spec.m, family.subspace, spec.r + 1)]
            shaped.extend(coset_transversal(spec.m, family.subspace, spec.r + 1, shifts[i:] + shifts[:i])
                          for i in range(1, len(shifts)))
            for points in shaped:
                for mask in (points.mask, points.mask | 1):
                    if mask.bit_count() <= spec.weight:
                        by_weight.setdefault(mask.bit_count(), []).append(mask)
        # ranks continue past the sampled ones
        tasks = [ShardTask(spec.r, spec.m, spec.mode, w, w <= radius, messages, start=offset,
                           masks=tuple(sorted(set(masks))))
                 for w, masks in sorted(by_weight.items())]
        self.logger.info(f"Added {sum(len(t.masks) for t in tasks)} transversal-shaped erasure patterns")
        return tasks

    async def _run_transversal_campaign(self, spec: CampaignSpec) -> CampaignReport:
        cases = [(m, level, flat_dim)
                 for m in range(1, spec.m + 1)
                 for level in range(m)
                 for flat_dim in range(level + 1, m + 1)]
        rows = await self.run_tasks(transversal_case, cases)
        failures = sum(not row['ok'] for row in rows)
        totals = {'cases': len(rows), 'failures': failures, 'violations': failures}
        return CampaignReport(spec=spec.to_dict(), totals=totals, results=rows)


def transversal_case(case: Tuple[int, int, int]) -> Dict:
    """Construction, formula and exhaustive search for one (m, dim S, flat_dim)."""
    m, level, flat_dim = case
    space = Subspace.axes(m, range(1, level + 1))
    formula = transversal_size(m, flat_dim)
    built = minimum_transversal(m, space, flat_dim)
    blocks = is_transversal(built, m, space, flat_dim)
    disjoint = built.isdisjoint(subspace_points(space))
    brute = transversal_number_bruteforce(m, space, flat_dim)
    return {
        'm': m,
        'dim_s': level,
        'flat_dim': flat_dim,
        'formula': formula,
        'constructed': len(built),
        'bruteforce': brute,
        'ok': blocks and disjoint and formula == len(built) == brute,
    }


async def run_campaign_async(spec: CampaignSpec) -> CampaignReport:
    return await CampaignRunner(spec.workers).run_async(spec)


def run_error_campaign(spec: CampaignSpec) -> CampaignReport:
    if spec.mode != MODE_ERRORS:
        raise ParameterError(f"Error campaign given mode {spec.mode!r}")
    return CampaignRunner(spec.workers).run(spec)


def run_erasure_campaign(spec: CampaignSpec) -> CampaignReport:
    if spec.mode != MODE_ERASURES:
        raise ParameterError(f"Erasure campaign given mode {spec.mode!r}")
    return CampaignRunner(spec.workers).run(spec)


def run_transversal_campaign(spec: CampaignSpec) -> CampaignReport:
    if spec.mode != MODE_TRANSVERSAL:
        raise ParameterError(f"Transversal campaign given mode {spec.mode!r}")
    return CampaignRunner(spec.workers).run(spec)
