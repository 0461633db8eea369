"""
Campaign request and result records shared by the sweeps, the simulator and the CLI.
"""

from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Tuple

import config
from errors import ParameterError
from rmcode.generator import check_order

MODE_ERRORS = 'errors'
MODE_ERASURES = 'erasures'
MODE_TRANSVERSAL = 'transversal'
MODE_SIM_BSC = 'sim-bsc'
MODE_SIM_BEC = 'sim-bec'
MODES = (MODE_ERRORS, MODE_ERASURES, MODE_TRANSVERSAL, MODE_SIM_BSC, MODE_SIM_BEC)
DECODERS = ('mld', 'reed', 'ml')


@dataclass
class CampaignSpec:
    r: int
    m: int
    mode: str
    weight: int = 1
    at_most: bool = True
    exhaustive: bool = True
    trials: int = config.DEFAULT_SAMPLED_TRIALS
    seed: Optional[int] = None
    messages: str = 'zero'
    workers: int = config.DEFAULT_WORKERS
    probability: float = 0.0
    decoders: Tuple[str, ...] = ('mld',)
    adversarial: bool = True
    output: Optional[str] = None

    @property
    def sampled(self) -> bool:
        return (not self.exhaustive or self.messages.startswith('random')
                or self.mode in (MODE_SIM_BSC, MODE_SIM_BEC))

    def validate(self):
        if self.mode not in MODES:
            raise ParameterError(f"Unknown campaign mode {self.mode!r}; expected one of {MODES}")
        if self.workers < 1:
            raise ParameterError("Worker count must be at least 1")
        if self.mode == MODE_TRANSVERSAL:
            if self.m < 1:
                raise ParameterError("Transversal sweep needs m >= 1")
            return
        check_order(self.r, self.m)
        n = 1 << self.m
        if not 0 <= self.weight <= n:
            raise ParameterError(f"Weight {self.weight} outside [0, {n}]")
        if self.trials < 1:
            raise ParameterError("Trials must be positive")
        if not 0.0 <= self.probability <= 1.0:
            raise ParameterError(f"Channel probability {self.probability} outside [0, 1]")
        unknown = [d for d in self.decoders if d not in DECODERS]
        if unknown:
            raise ParameterError(f"Unknown decoders {unknown}; expected some of {DECODERS}")
        if self.sampled and self.seed is None:
            raise ParameterError("Sampled modes and random messages require a seed")

    def to_dict(self) -> Dict:
        data = asdict(self)
        data['decoders'] = list(self.decoders)
        return data


@dataclass
class CampaignReport:
    spec: Dict
    totals: Dict[str, int] = field(default_factory=dict)
    witnesses: List[Dict] = field(default_factory=list)
    results: List[Dict] = field(default_factory=list)
    timing: Dict[str, float] = field(default_factory=dict)

    @property
    def violations(self) -> int:
        return self.totals.get('violations', 0)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self, include_timing: bool = True) -> Dict:
        data = {
            'schema_version': config.REPORT_SCHEMA_VERSION,
            'prng': config.PRNG_ALGORITHM,
            'spec': self.spec,
            'totals': self.totals,
            'witnesses': self.witnesses,
            'results': self.results,
        }
        if include_timing:
            data['timing'] = self.timing
        return data
