"""
Report files: JSON for full reports, CSV summary rows through pandas.
"""

import json
import logging
import os
from typing import Dict, Iterable, List

import pandas as pd

import config
from decode.majority import mld_decode_erasures, mld_decode_errors
from decode.words import ReceivedWord
from harness.models import MODE_ERRORS, CampaignReport
from recovery.families import recovery_table

logger = logging.getLogger(__name__)


def report_json(report: CampaignReport, include_timing: bool = True) -> str:
    """Stable text form: sorted keys, timing optional so reruns can be diffed."""
    return json.dumps(report.to_dict(include_timing=include_timing), indent=2, sort_keys=True)


def save_report(report: CampaignReport, path: str = None) -> str:
    if path is None:
        spec = report.spec
        os.makedirs(config.REPORT_DIR, exist_ok=True)
        path = os.path.join(config.REPORT_DIR, f"{spec['mode']}_rm{spec['r']}_{spec['m']}.json")
    with open(path, 'w') as f:
        f.write(report_json(report) + "\n")
    logger.info(f"Report saved to {path}")
    return path


def load_report(path: str) -> Dict:
    with open(path, 'r') as f:
        return json.load(f)


def summary_rows(reports: Iterable[CampaignReport]) -> pd.DataFrame:
    """One row per campaign, or per decoder for simulations."""
    rows: List[Dict] = []
    for report in reports:
        spec = report.spec
        base = {'mode': spec['mode'], 'r': spec['r'], 'm': spec['m'], 'weight': spec['weight'],
                'seed': spec['seed'], 'passed': report.passed, **report.totals}
        if report.results and 'decoder' in report.results[0]:
            rows.extend({**base, **result} for result in report.results)
        else:
            rows.append(base)
    return pd.DataFrame(rows)


def save_summary_csv(reports: Iterable[CampaignReport], path: str) -> str:
    frame = summary_rows(reports)
    frame.to_csv(path, index=False)
    logger.info(f"Summary with {len(frame)} rows saved to {path}")
    return path


def replay_witness_entry(entry: Dict, r: int, m: int) -> bool:
    """Decode a stored witness again and compare message and status."""
    table = recovery_table(r, m)
    n = table.gen.params.n
    word = ReceivedWord.from_text(n, entry['word'], entry['erasures'] if entry['kind'] != MODE_ERRORS else None)
    if entry['kind'] == MODE_ERRORS:
        decoded = mld_decode_errors(word, table)
    else:
        decoded = mld_decode_erasures(word, table)
    summary = decoded.to_dict()
    return summary['message'] == entry['decoded'] and summary['status'] == entry['status']


def replay_report(data: Dict) -> List[bool]:
    spec = data['spec']
    return [replay_witness_entry(entry, spec['r'], spec['m']) for entry in data.get('witnesses', [])]
