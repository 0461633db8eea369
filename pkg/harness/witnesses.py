"""
Concrete patterns one past the guaranteed radii that defeat the one-step decoder.
"""

import logging
from typing import Dict, List, Optional

import numpy as np

import config
from geom.points import PointSet
from geom.transversal import minimum_transversal
from harness.campaigns import batch_decoder, encode_block, replay_witness
from harness.models import MODE_ERASURES, MODE_ERRORS
from harness.patterns import check_pattern_budget, colex_patterns, masks_to_words
from recovery.families import recovery_table
from rmcode.generator import MonomialIndex, code_params

logger = logging.getLogger(__name__)


def find_error_witnesses(r: int, m: int, weight: Optional[int] = None,
                         cap: Optional[int] = None) -> List[Dict]:
    """Weight-(t+1) error patterns that mis-decode the zero or the all-ones message.

    The all-ones message turns tied votes into visible errors, since a tie
    always decodes to 0.
    """
    params = code_params(r, m)
    weight = params.error_radius + 1 if weight is None else weight
    cap = config.WITNESS_CAP if cap is None else cap
    n, k = params.n, params.k
    check_pattern_budget(n, weight, weight)
    messages = np.vstack([np.zeros((1, k), dtype=np.uint8), np.ones((1, k), dtype=np.uint8)])
    codewords = encode_block(messages, r, m)
    decoder = batch_decoder(r, m)
    found = []
    chunk = []

    def scan(masks):
        patterns = masks_to_words(masks, n)
        for index in range(len(messages)):
            decoded, _ = decoder.decode_errors(patterns ^ codewords[index])
            for row in np.flatnonzero((decoded != messages[index]).any(axis=1)):
                found.append((masks[row], index))

    for mask in colex_patterns(n, weight):
        chunk.append(mask)
        if len(chunk) == config.BATCH_SIZE:
            scan(chunk)
            chunk = []
            if len(found) >= cap:
                break
    if chunk and len(found) < cap:
        scan(chunk)
    found.sort()
    witnesses = [replay_witness(MODE_ERRORS, r, m, mask, tuple(int(b) for b in messages[index]))
                 for mask, index in found[:cap]]
    logger.info(f"RM({r},{m}): {len(witnesses)} error witnesses of weight {weight}")
    return witnesses


def erasure_witness(r: int, m: int, sigma: MonomialIndex) -> Dict:
    """Origin plus a minimum transversal of the large sets: weight d, blocks a_sigma."""
    table = recovery_table(r, m)
    family = table.family(sigma)
    n = table.gen.params.n
    blocking = minimum_transversal(m, family.subspace, r + 1) | PointSet.from_indices(n, [1])
    entry = replay_witness(MODE_ERASURES, r, m, blocking.mask, (0,) * table.gen.params.k)
    entry['sigma'] = list(sigma)
    entry['blocked'] = all(member.intersects(blocking) for member in family.all_sets())
    return entry
