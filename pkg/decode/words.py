"""
Received words and per-symbol decoding transcripts.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from errors import ParameterError
from rmcode.bitstrings import format_bits, format_message, parse_word
from rmcode.generator import MonomialIndex, symbol_name

STATUS_OK = 'ok'
STATUS_TIE = 'tie_broken'
STATUS_ERASURE_FAILURE = 'erasure_failure'


@dataclass(frozen=True)
class ReceivedWord:
    n: int
    bits: int
    erasures: int = 0

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.n or self.erasures < 0 or self.erasures >> self.n:
            raise ParameterError(f"Received word does not fit in {self.n} coordinates")

    @classmethod
    def from_text(cls, n: int, word: str, erasures: Optional[str] = None) -> 'ReceivedWord':
        mask = parse_word(erasures, n) if erasures else 0
        return cls(n=n, bits=parse_word(word, n), erasures=mask)

    @property
    def erasure_weight(self) -> int:
        return self.erasures.bit_count()

    def to_dict(self) -> Dict:
        return {'word': format_bits(self.bits, self.n), 'erasures': format_bits(self.erasures, self.n)}


@dataclass
class SymbolDecision:
    sigma: MonomialIndex
    value: int = 0
    votes_for_0: int = 0
    votes_for_1: int = 0
    tie: bool = False
    unrecoverable: bool = False
    used_set: Optional[int] = None

    def to_dict(self) -> Dict:
        entry = {
            'symbol': symbol_name(self.sigma),
            'value': self.value,
            'votes_for_0': self.votes_for_0,
            'votes_for_1': self.votes_for_1,
            'tie': self.tie,
            'unrecoverable': self.unrecoverable,
        }
        if self.used_set is not None:
            entry['used_set'] = self.used_set
        return entry


@dataclass
class DecodeReport:
    per_symbol: List[SymbolDecision] = field(default_factory=list)

    @property
    def message(self) -> Tuple[int, ...]:
        return tuple(d.value for d in self.per_symbol)

    @property
    def status(self) -> str:
        if any(d.unrecoverable for d in self.per_symbol):
            return STATUS_ERASURE_FAILURE
        if any(d.tie for d in self.per_symbol):
            return STATUS_TIE
        return STATUS_OK

    def unrecoverable_symbols(self) -> List[MonomialIndex]:
        return [d.sigma for d in self.per_symbol if d.unrecoverable]

    def to_dict(self) -> Dict:
        return {
            'message': format_message(self.message),
            'status': self.status,
            'per_symbol': [d.to_dict() for d in self.per_symbol],
        }
