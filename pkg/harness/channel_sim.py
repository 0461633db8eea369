"""
Monte-Carlo simulation of the one-step, Reed and ML decoders over BSC(p) and BEC(eps).

Frames are drawn in fixed-size batches from a single PCG64 stream, messages
first and channel masks second, so a seed pins the whole run.
"""

import logging
from math import comb, sqrt
from typing import Dict, Optional

import numpy as np

import config
from decode.majority import BatchMajorityDecoder
from decode.oracles import codebook, erasure_correctable_oracle
from decode.reed import reed_decoder
from decode.words import ReceivedWord
from errors import GuardExceededError
from harness.models import MODE_SIM_BEC, MODE_SIM_BSC, CampaignReport, CampaignSpec
from harness.patterns import channel_masks, make_rng
from recovery.families import recovery_table
from rmcode.generator import generator_matrix
from rmcode.gf2 import bits_to_int

logger = logging.getLogger(__name__)


def binomial_tail(n: int, probability: float, above: int) -> float:
    """P[Binomial(n, probability) > above]."""
    return sum(comb(n, w) * probability ** w * (1 - probability) ** (n - w) for w in range(above + 1, n + 1))


def _ml_errors(words: np.ndarray, book: np.ndarray, max_cells: Optional[int] = None) -> np.ndarray:
    """Index of the nearest codeword per row, scanning the codebook in slices of at most max_cells distances.

    Only a strictly smaller distance replaces the running best, so the smallest message wins ties.
    """
    max_cells = config.ML_ORACLE_MAX_CELLS if max_cells is None else max_cells
    rows = len(words)
    words_f = words.astype(np.float32)
    word_weights = words_f.sum(axis=1)
    best = np.zeros(rows, dtype=np.int64)
    best_distance = np.full(rows, np.inf, dtype=np.float32)
    step = max(1, max_cells // max(rows, 1))
    every_row = np.arange(rows)
    for start in range(0, len(book), step):
        block = book[start:start + step].astype(np.float32)
        distances = word_weights[:, None] + block.sum(axis=1)[None, :] - 2 * (words_f @ block.T)
        nearest = distances.argmin(axis=1)
        nearest_distance = distances[every_row, nearest]
        better = nearest_distance < best_distance
        best[better] = nearest[better] + start
        best_distance[better] = nearest_distance[better]
    return best


class ChannelSimulator:
    def __init__(self, spec: CampaignSpec):
        self.logger = logging.getLogger(__name__)
        self.spec = spec
        self.gen = generator_matrix(spec.r, spec.m)
        self.params = self.gen.params
        self.decoders = list(spec.decoders)
        if spec.mode == MODE_SIM_BEC and 'reed' in self.decoders:
            self.logger.warning("Reed decoder handles errors only; dropped from the erasure simulation")
            self.decoders.remove('reed')
        self.book = None
        if 'ml' in self.decoders:
            try:
                self.book = codebook(spec.r, spec.m)
            except GuardExceededError:
                self.logger.warning(f"ML oracle outside its guard for RM({spec.r},{spec.m}); skipped")
                self.decoders.remove('ml')
        self.batch = BatchMajorityDecoder(recovery_table(spec.r, spec.m))
        self.rows = self.gen.rows.astype(np.float32)

    def _decode(self, name: str, words: np.ndarray, masks: np.ndarray) -> np.ndarray:
        """Decoded messages (batch, k) plus -1 rows where nothing was decoded."""
        k = self.params.k
        if name == 'mld':
            if self.spec.mode == MODE_SIM_BSC:
                return self.batch.decode_errors(words)[0].astype(np.int8)
            decoded, unrecoverable = self.batch.decode_erasures(words * (1 - masks), masks)
            out = decoded.astype(np.int8)
            out[unrecoverable] = -1
            return out
        if name == 'reed':
            decoder = reed_decoder(self.spec.r, self.spec.m)
            out = np.empty((len(words), k), dtype=np.int8)
            for i, row in enumerate(words):
                out[i] = decoder.decode(ReceivedWord(n=self.params.n, bits=bits_to_int(row)))
            return out
        shifts = np.arange(k - 1, -1, -1)
        if self.spec.mode == MODE_SIM_BSC:
            best = _ml_errors(words, self.book)
            return ((best[:, None] >> shifts) & 1).astype(np.int8)
        # on an erasure channel ML succeeds exactly when the erasure pattern is correctable
        out = np.full((len(words), k), -1, dtype=np.int8)
        for i, row in enumerate(masks):
            if erasure_correctable_oracle(bits_to_int(row), self.gen):
                kept = row == 0
                matches = (self.book[:, kept] == words[i, kept]).all(axis=1)
                out[i] = (int(np.argmax(matches)) >> shifts) & 1
        return out

    def run(self) -> CampaignReport:
        spec = self.spec
        n, k = self.params.n, self.params.k
        rng = make_rng(spec.seed)
        radius = self.params.error_radius if spec.mode == MODE_SIM_BSC else self.params.erasure_radius
        tallies = {name: {'frame_errors': 0, 'symbol_errors': 0, 'failures_within_radius': 0}
                   for name in self.decoders}
        frames_within = 0
        done = 0
        while done < spec.trials:
            size = min(config.BATCH_SIZE, spec.trials - done)
            messages = rng.integers(0, 2, size=(size, k), dtype=np.uint8)
            masks = channel_masks(rng, n, spec.probability, size)
            codewords = ((messages.astype(np.float32) @ self.rows).astype(np.int64) & 1).astype(np.uint8)
            if spec.mode == MODE_SIM_BSC:
                words = codewords ^ masks
            else:
                words = codewords * (1 - masks)
            within = masks.sum(axis=1) <= radius
            frames_within += int(within.sum())
            for name in self.decoders:
                decoded = self._decode(name, words, masks)
                wrong = decoded != messages.astype(np.int8)
                frame_wrong = wrong.any(axis=1)
                tallies[name]['frame_errors'] += int(frame_wrong.sum())
                tallies[name]['symbol_errors'] += int(wrong.sum())
                tallies[name]['failures_within_radius'] += int((frame_wrong & within).sum())
            done += size
        return self._report(tallies, frames_within, radius)

    def _report(self, tallies: Dict, frames_within: int, radius: int) -> CampaignReport:
        spec = self.spec
        n, k = self.params.n, self.params.k
        tail = binomial_tail(n, spec.probability, radius)
        margin = 4 * sqrt(max(tail * (1 - tail), 1e-12) / spec.trials) + 1 / spec.trials
        rows = []
        violations = 0
        for name in self.decoders:
            t = tallies[name]
            fer = t['frame_errors'] / spec.trials
            row = {
                'decoder': name,
                'trials': spec.trials,
                'frame_errors': t['frame_errors'],
                'symbol_errors': t['symbol_errors'],
                'fer': fer,
                'ser': t['symbol_errors'] / (spec.trials * k),
                'failures_within_radius': t['failures_within_radius'],
            }
            if name == 'mld':
                row['radius_tail'] = tail
                row['within_bound'] = fer <= tail + margin
                violations += t['failures_within_radius']
            rows.append(row)
        totals = {'trials': spec.trials, 'frames_within_radius': frames_within,
                  'radius': radius, 'violations': violations}
        self.logger.info(f"Simulated {spec.trials} frames of RM({spec.r},{spec.m}) on {spec.mode} "
                         f"p={spec.probability}: {[(r['decoder'], r['fer']) for r in rows]}")
        return CampaignReport(spec=spec.to_dict(), totals=totals, results=rows)


def run_channel_sim(spec: CampaignSpec) -> CampaignReport:
    spec.validate()
    return ChannelSimulator(spec).run()
