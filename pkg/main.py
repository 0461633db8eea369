"""
Command-line entry point and JSON HTTP service for the Reed-Muller toolkit.
"""

import argparse
import json
import logging
import sys
from typing import Dict, List, Optional

from flask import Flask, jsonify, request

import config
from decode.majority import MajorityLogicDecoder, naive_erasure_radius
from decode.oracles import ml_decode_oracle
from decode.reed import reed_decode
from decode.words import ReceivedWord
from errors import RMError, ParameterError
from harness.campaigns import CampaignRunner
from harness.models import MODE_ERASURES, MODE_ERRORS, MODE_SIM_BEC, MODE_SIM_BSC, MODE_TRANSVERSAL, CampaignSpec
from harness.reporting import load_report, replay_report, report_json, save_report, save_summary_csv
from harness.witnesses import erasure_witness, find_error_witnesses
from recovery.families import recovery_table
from rmcode.bitstrings import format_bits, format_hex, format_message, parse_message
from rmcode.generator import code_params, generator_matrix, one_step_bound, parse_sigma

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2

logger = logging.getLogger(__name__)

app = Flask(__name__)


def setup_logging():
    """Log to stderr (and LOG_FILE when set); stdout stays machine-readable."""
    handlers = [logging.StreamHandler(sys.stderr)]
    if config.LOG_FILE:
        handlers.append(logging.FileHandler(config.LOG_FILE))
    logging.basicConfig(
        level=getattr(logging, config.LOG_LEVEL.upper(), logging.INFO),
        format=config.LOG_FORMAT,
        handlers=handlers,
    )


def params_payload(r: int, m: int, bounds: bool = False) -> Dict:
    params = code_params(r, m)
    payload = {'n': params.n, 'k': params.k, 'd': params.d}
    if bounds:
        payload.update(one_step_bound(r, m))
        payload['naive_erasure_radius'] = naive_erasure_radius(r, m)
    return payload


def families_payload(r: int, m: int, sigma: Optional[str] = None) -> List[Dict]:
    table = recovery_table(r, m)
    if sigma is not None:
        return [table.family(parse_sigma(sigma, m)).to_dict()]
    return [family.to_dict() for family in table]


def encode_payload(r: int, m: int, message: str) -> Dict:
    gen = generator_matrix(r, m)
    codeword = gen.encode(parse_message(message, gen.params.k))
    return {'codeword': format_bits(codeword, gen.params.n), 'hex': format_hex(codeword, gen.params.n)}


def decode_payload(r: int, m: int, word: str, erasures: Optional[str] = None,
                   mode: str = MODE_ERRORS, decoder: str = 'mld') -> Dict:
    gen = generator_matrix(r, m)
    n = gen.params.n
    received = ReceivedWord.from_text(n, word, erasures)
    if decoder == 'mld':
        report = MajorityLogicDecoder(r, m).decode(received, mode)
        payload = report.to_dict()
        if not report.unrecoverable_symbols():
            payload['codeword'] = format_bits(gen.encode(report.message), n)
        return payload
    if mode != MODE_ERRORS:
        raise ParameterError(f"Decoder {decoder!r} only handles errors")
    if decoder == 'reed':
        message = reed_decode(received, gen)
        return {'message': format_message(message), 'codeword': format_bits(gen.encode(message), n)}
    if decoder == 'ml':
        return {'codeword': format_bits(ml_decode_oracle(received, gen), n)}
    raise ParameterError(f"Unknown decoder {decoder!r}")


@app.route('/')
def home():
    """Home endpoint."""
    return jsonify({
        "status": "running",
        "service": "Reed-Muller one-step decoding toolkit",
        "endpoints": ["/health", "/params", "/families", "/encode", "/decode"]
    })


@app.route('/health')
def health_check():
    return jsonify({"status": "healthy", "schema_version": config.REPORT_SCHEMA_VERSION}), 200


def _order_args(source: Dict):
    try:
        return int(source['r']), int(source['m'])
    except (KeyError, TypeError, ValueError) as e:
        raise ParameterError("Parameters r and m are required integers") from e


@app.route('/params')
def get_params():
    try:
        r, m = _order_args(request.args)
        bounds = request.args.get('bounds', '').lower() in ('1', 'true', 'yes')
        return jsonify(params_payload(r, m, bounds))
    except RMError as e:
        return jsonify({"error": str(e)}), 400


@app.route('/families')
def get_families():
    try:
        r, m = _order_args(request.args)
        return jsonify(families_payload(r, m, request.args.get('sigma')))
    except RMError as e:
        return jsonify({"error": str(e)}), 400


@app.route('/encode', methods=['POST'])
def post_encode():
    try:
        body = request.get_json(silent=True) or {}
        r, m = _order_args(body)
        return jsonify(encode_payload(r, m, str(body.get('message', ''))))
    except RMError as e:
        return jsonify({"error": str(e)}), 400


@app.route('/decode', methods=['POST'])
def post_decode():
    try:
        body = request.get_json(silent=True) or {}
        r, m = _order_args(body)
        return jsonify(decode_payload(r, m, str(body.get('word', '')), body.get('erasures'),
                                      body.get('mode', MODE_ERRORS), body.get('decoder', 'mld')))
    except RMError as e:
        return jsonify({"error": str(e)}), 400


def _print(payload):
    print(json.dumps(payload))


def _add_code_args(parser: argparse.ArgumentParser):
    parser.add_argument('-r', type=int, required=True, help="Code order r")
    parser.add_argument('-m', type=int, required=True, help="Length exponent m (n = 2^m)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='rmtool', description="Reed-Muller codes with one-step majority-logic decoding")
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('params', help="Print n, k, d")
    _add_code_args(p)
    p.add_argument('--bounds', action='store_true', help="Also print one-step and erasure bounds")

    p = sub.add_parser('encode', help="Encode a message (k bits, a0 first)")
    _add_code_args(p)
    p.add_argument('--message', required=True)
    p.add_argument('--hex', action='store_true', help="Print the codeword as hex")

    p = sub.add_parser('decode', help="Decode a received word (bits x1 first, or 0x hex)")
    _add_code_args(p)
    p.add_argument('--word', required=True, help="Received word, or - to read it from stdin")
    p.add_argument('--erasures', help="Erasure mask, same format as the word; - reads the next stdin line")
    p.add_argument('--mode', choices=[MODE_ERRORS, MODE_ERASURES], default=MODE_ERRORS)
    p.add_argument('--decoder', choices=['mld', 'reed', 'ml'], default='mld')

    p = sub.add_parser('families', help="Dump recovery families as JSON")
    _add_code_args(p)
    p.add_argument('--sigma', help="Single symbol, e.g. 1, 12, a34, 0")

    p = sub.add_parser('verify', help="Run a verification campaign")
    p.add_argument('kind', choices=[MODE_ERRORS, MODE_ERASURES, MODE_TRANSVERSAL])
    p.add_argument('-r', type=int, default=0)
    p.add_argument('-m', type=int, required=True)
    p.add_argument('--weight', type=int, default=1)
    p.add_argument('--exact', action='store_true', help="Only the given weight instead of every weight up to it")
    group = p.add_mutually_exclusive_group()
    group.add_argument('--exhaustive', dest='exhaustive', action='store_true', default=True)
    group.add_argument('--sampled', dest='exhaustive', action='store_false')
    p.add_argument('--trials', type=int, default=config.DEFAULT_SAMPLED_TRIALS)
    p.add_argument('--messages', default='zero', help="zero, all-ones, random:N or exhaustive")
    p.add_argument('--seed', type=int)
    p.add_argument('--workers', type=int, default=config.DEFAULT_WORKERS)
    p.add_argument('--no-adversarial', dest='adversarial', action='store_false')
    p.add_argument('--witnesses', action='store_true', help="Also search sharpness witnesses")
    p.add_argument('--output', help="Write the JSON report here")
    p.add_argument('--csv', help="Write a CSV summary row here")

    p = sub.add_parser('sim', help="Monte-Carlo BSC/BEC simulation")
    _add_code_args(p)
    p.add_argument('--channel', choices=['bsc', 'bec'], required=True)
    p.add_argument('-p', '--probability', type=float, required=True)
    p.add_argument('--trials', type=int, default=config.DEFAULT_SAMPLED_TRIALS)
    p.add_argument('--seed', type=int)
    p.add_argument('--decoders', default='mld', help="Comma list of mld, reed, ml")
    p.add_argument('--output')
    p.add_argument('--csv')

    p = sub.add_parser('replay', help="Re-decode every witness of a saved report")
    p.add_argument('report')

    p = sub.add_parser('serve', help="Serve the JSON API")
    p.add_argument('--host', default=config.HOST)
    p.add_argument('--port', type=int, default=config.PORT)
    return parser


def read_stdin_inputs(word: str, erasures: Optional[str]):
    """Replace '-' arguments by the next non-empty stdin lines, word first."""
    if '-' not in (word, erasures):
        return word, erasures
    lines = iter([line.strip() for line in sys.stdin if line.strip()])
    if word == '-':
        word = next(lines, None)
        if word is None:
            raise ParameterError("Expected a received word on stdin")
    if erasures == '-':
        erasures = next(lines, None)
        if erasures is None:
            raise ParameterError("Expected an erasure mask on stdin")
    return word, erasures


def _emit_report(report, args) -> int:
    if args.output:
        save_report(report, args.output)
    if args.csv:
        save_summary_csv([report], args.csv)
    print(report_json(report))
    return EXIT_VIOLATION if report.violations else EXIT_OK


def run_verify(args) -> int:
    spec = CampaignSpec(r=args.r, m=args.m, mode=args.kind, weight=args.weight, at_most=not args.exact,
                        exhaustive=args.exhaustive, trials=args.trials, seed=args.seed,
                        messages=args.messages, workers=args.workers, adversarial=args.adversarial,
                        output=args.output)
    report = CampaignRunner(spec.workers).run(spec)
    if args.witnesses and args.kind == MODE_ERRORS:
        report.witnesses = report.witnesses + find_error_witnesses(args.r, args.m)
    elif args.witnesses and args.kind == MODE_ERASURES:
        report.witnesses = report.witnesses + [erasure_witness(args.r, args.m, sigma)
                                               for sigma in generator_matrix(args.r, args.m).monomials]
    return _emit_report(report, args)


def run_sim(args) -> int:
    mode = MODE_SIM_BSC if args.channel == 'bsc' else MODE_SIM_BEC
    spec = CampaignSpec(r=args.r, m=args.m, mode=mode, exhaustive=False, trials=args.trials, seed=args.seed,
                        probability=args.probability,
                        decoders=tuple(d.strip() for d in args.decoders.split(',') if d.strip()),
                        output=args.output)
    report = CampaignRunner(1).run(spec)
    return _emit_report(report, args)


def run_command(args) -> int:
    if args.command == 'params':
        _print(params_payload(args.r, args.m, args.bounds))
    elif args.command == 'encode':
        payload = encode_payload(args.r, args.m, args.message)
        print(payload['hex'] if args.hex else payload['codeword'])
    elif args.command == 'decode':
        word, erasures = read_stdin_inputs(args.word, args.erasures)
        _print(decode_payload(args.r, args.m, word, erasures, args.mode, args.decoder))
    elif args.command == 'families':
        _print(families_payload(args.r, args.m, args.sigma))
    elif args.command == 'verify':
        return run_verify(args)
    elif args.command == 'sim':
        return run_sim(args)
    elif args.command == 'replay':
        outcomes = replay_report(load_report(args.report))
        _print({'witnesses': len(outcomes), 'reproduced': sum(outcomes)})
        return EXIT_OK if all(outcomes) else EXIT_VIOLATION
    elif args.command == 'serve':
        from waitress import serve
        logger.info(f"Serving on {args.host}:{args.port}")
        serve(app, host=args.host, port=args.port)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    setup_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return run_command(args)
    except RMError as e:
        logger.error(f"{type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
