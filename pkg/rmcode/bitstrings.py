"""
Text forms of codewords, received words, masks and messages.

Bit-strings list x_1 first. Hex strings carry x_1 in the most significant bit of
the first hex digit, padded with zero bits on the right to a whole digit.
"""

from typing import Sequence, Tuple

from errors import ParameterError


def format_bits(mask: int, n: int) -> str:
    return "".join('1' if mask >> j & 1 else '0' for j in range(n))


def parse_bits(text: str, n: int) -> int:
    text = text.strip()
    if len(text) != n or set(text) - {'0', '1'}:
        raise ParameterError(f"Expected a {n}-character bit-string, got {text!r}")
    mask = 0
    for j, ch in enumerate(text):
        if ch == '1':
            mask |= 1 << j
    return mask


def format_hex(mask: int, n: int) -> str:
    digits = (n + 3) // 4
    padded = format_bits(mask, n) + '0' * (digits * 4 - n)
    return "0x" + format(int(padded, 2), f"0{digits}x")


def parse_hex(text: str, n: int) -> int:
    body = text.strip().lower()
    if body.startswith("0x"):
        body = body[2:]
    digits = (n + 3) // 4
    if len(body) != digits:
        raise ParameterError(f"Expected {digits} hex digits for {n} bits, got {text!r}")
    try:
        padded = format(int(body, 16), f"0{digits * 4}b")
    except ValueError as e:
        raise ParameterError(f"Malformed hex word {text!r}") from e
    if '1' in padded[n:]:
        raise ParameterError(f"Hex word {text!r} has bits beyond position {n}")
    return parse_bits(padded[:n], n)


def parse_word(text: str, n: int) -> int:
    """Accept either form; hex needs the 0x prefix."""
    if text.strip().lower().startswith("0x"):
        return parse_hex(text, n)
    return parse_bits(text, n)


def format_message(message: Sequence[int]) -> str:
    return "".join(str(int(b) & 1) for b in message)


def parse_message(text: str, k: int) -> Tuple[int, ...]:
    mask = parse_bits(text, k)
    return tuple((mask >> i) & 1 for i in range(k))


def message_from_int(value: int, k: int) -> Tuple[int, ...]:
    """Message whose first symbol is the most significant bit of value.

    Counting value upward walks messages in lexicographic order.
    """
    return tuple((value >> (k - 1 - i)) & 1 for i in range(k))
