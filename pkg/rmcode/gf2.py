"""GF(2) linear algebra on numpy arrays."""

import numpy as np


def to_gf2(matrix) -> np.ndarray:
    return np.array(matrix, dtype=np.uint8) % 2


def gf2_rank(matrix) -> int:
    """Rank over GF(2) by row reduction."""
    mat = to_gf2(matrix).copy()
    if mat.ndim != 2 or mat.size == 0:
        return 0
    rows, cols = mat.shape
    rank = 0
    for col in range(cols):
        candidates = np.nonzero(mat[rank:, col])[0]
        if candidates.size == 0:
            continue
        pivot = rank + candidates[0]
        if pivot != rank:
            mat[[rank, pivot]] = mat[[pivot, rank]]
        hits = np.nonzero(mat[:, col])[0]
        hits = hits[hits != rank]
        mat[hits] ^= mat[rank]
        rank += 1
        if rank == rows:
            break
    return rank


def gf2_matmul(left, right) -> np.ndarray:
    return (to_gf2(left).astype(np.int64) @ to_gf2(right).astype(np.int64)) % 2


def bits_to_int(bits) -> int:
    """Pack a bit sequence into an int with element j at bit j."""
    value = 0
    for j, b in enumerate(bits):
        if b:
            value |= 1 << j
    return value


def int_to_bits(value: int, length: int) -> np.ndarray:
    """Unpack bit j of value into element j."""
    raw = value.to_bytes(max(1, (length + 7) // 8), 'little')
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder='little')[:length]


def masks_to_array(masks, length: int) -> np.ndarray:
    if not masks:
        return np.zeros((0, length), dtype=np.uint8)
    return np.vstack([int_to_bits(mask, length) for mask in masks])


def array_to_masks(matrix: np.ndarray):
    """Pack each row back into an int, element j at bit j."""
    packed = np.packbits(to_gf2(matrix), axis=1, bitorder='little')
    return [int.from_bytes(row.tobytes(), 'little') for row in packed]
