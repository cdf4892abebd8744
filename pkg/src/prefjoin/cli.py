"""Command line: ``prefjoin join``, ``prefjoin eval`` and ``prefjoin oracle``.

Exit codes: 0 success, 2 usage error, 3 input error, 4 arithmetic overflow.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import re
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .engine import EngineConfig, run
from .evaluate import score_pairs
from .model import ExactSim
from .oracle import oracle_run
from .preference import full_outer_join
from .simcore import MEASURES, SimilarityMeasure
from .tokenize import Corpus, TokenizerConfig, build_corpus

logger = logging.getLogger("prefjoin")

EXIT_USAGE, EXIT_INPUT, EXIT_OVERFLOW = 2, 3, 4
ORACLE_PAIR_CAP = 10**7


class IngestError(Exception):
    pass


@dataclass
class Table:
    ids: list[str]
    texts: list[str]


def _delimiter(path: Path, override: str | None) -> str:
    if override:
        return "\t" if override in ("\\t", "tab") else override
    return "\t" if path.suffix.lower() in (".tsv", ".tab") else ","


def ingest(path, text_cols=None, id_col=None, delim=None) -> Table:
    """Read a delimited file with a header row.

    ``text_cols`` defaults to the last column; several columns are joined with
    one space. Without ``id_col`` the 0-based data row number is the id.
    """
    path = Path(path)
    try:
        fh = path.open(newline="", encoding="utf-8")
    except OSError as exc:
        raise IngestError(f"{path}: {exc.strerror}") from None
    with fh:
        reader = csv.reader(fh, delimiter=_delimiter(path, delim))
        try:
            header = next(reader)
        except StopIteration:
            raise IngestError(f"{path}: empty file") from None
        except csv.Error as exc:
            raise IngestError(f"{path}: {exc}") from None
        cols = list(text_cols) if text_cols else [header[-1]]
        for c in cols + ([id_col] if id_col else []):
            if c not in header:
                raise IngestError(f"{path}: missing column {c!r} (have {header})")
        text_idx = [header.index(c) for c in cols]
        id_idx = header.index(id_col) if id_col else None
        ids, texts = [], []
        try:
            for n, row in enumerate(reader):
                if not row:
                    continue
                if len(row) != len(header):
                    raise IngestError(
                        f"{path}: malformed row {reader.line_num}: expected {len(header)} fields, got {len(row)}"
                    )
                ids.append(row[id_idx] if id_idx is not None else str(n))
                texts.append(" ".join(row[i] for i in text_idx))
        except csv.Error as exc:
            raise IngestError(f"{path}: row {reader.line_num}: {exc}") from None
    if len(set(ids)) != len(ids):
        raise IngestError(f"{path}: duplicate record ids")
    return Table(ids, texts)


def read_pairs(path, delim=None, header=True) -> list[tuple[str, str]]:
    """First two columns of a delimited file as id pairs; NULL rows are skipped."""
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh, delimiter=_delimiter(path, delim)))
    except (OSError, csv.Error) as exc:
        raise IngestError(f"{path}: {exc}") from None
    if header:
        rows = rows[1:]
    out = []
    for row in rows:
        if len(row) < 2:
            if row:
                raise IngestError(f"{path}: row {row!r} has fewer than two fields")
            continue
        if "NULL" in (row[0], row[1]):
            continue
        out.append((row[0], row[1]))
    return out


def _alpha(text: str) -> Fraction:
    if not re.fullmatch(r"\s*\d+\s*/\s*\d+\s*", text):
        raise argparse.ArgumentTypeError("alpha must be an exact fraction P/Q, e.g. 1/10")
    p, q = (int(x) for x in text.split("/"))
    if q == 0 or not 0 < p < q:
        raise argparse.ArgumentTypeError("alpha must satisfy 0 < P/Q < 1")
    return Fraction(p, q)


def _tokenizer(text: str) -> TokenizerConfig:
    try:
        return TokenizerConfig.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_input_args(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--left", type=Path, required=required, help="R side file (header row required)")
    p.add_argument("--right", type=Path, required=required, help="S side file (header row required)")
    p.add_argument("--sim", choices=MEASURES, default="jaccard")
    p.add_argument("--alpha", type=_alpha, help="tversky weight of the left side, as P/Q")
    p.add_argument("--tokenizer", type=_tokenizer, default=TokenizerConfig("words"), help="words | qgrams:N")
    p.add_argument("--id-col", help="id column name (default: row number)")
    p.add_argument("--text-col", action="append", help="text column; repeat to concatenate (default: last column)")
    p.add_argument("--delim", help="field delimiter (default from extension: .csv comma, .tsv tab)")


def _add_join_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--pref", choices=("maxgroups", "minoutjoin"), default="maxgroups")
    p.add_argument("--pivotal", choices=("mutual", "relaxed"), default="mutual")
    p.add_argument("--no-length-filter", action="store_true", help="strict mode: no length-based pruning")
    p.add_argument("--threads", type=int, default=0, help="accepted for compatibility; verification runs in-process")
    p.add_argument("--report", type=Path, help="append a JSON-lines run report here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="prefjoin", description="Similarity join that picks its own threshold.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("join", help="run the join and print matched pairs as TSV")
    _add_input_args(p)
    _add_join_args(p)
    p.add_argument("--outer", action="store_true", help="also print unmatched rows padded with NULL")

    p = sub.add_parser("eval", help="precision/recall/F1 against ground-truth pairs")
    _add_input_args(p, required=False)
    _add_join_args(p)
    p.add_argument("--truth", type=Path, required=True, help="ground-truth id pairs (header row, first two columns)")
    p.add_argument("--pred", type=Path, help="score an existing join TSV instead of running the join")

    p = sub.add_parser("oracle", help="brute-force per-threshold score table as TSV")
    _add_input_args(p)
    p.add_argument("--max-pairs", type=int, default=ORACLE_PAIR_CAP)
    return parser


def _check_measure(parser, args) -> SimilarityMeasure:
    if args.sim == "tversky" and args.alpha is None:
        parser.error("--sim tversky requires --alpha P/Q")
    if args.sim != "tversky" and args.alpha is not None:
        parser.error(f"--alpha is only valid with --sim tversky, not {args.sim}")
    return SimilarityMeasure(args.sim, args.alpha)


def _load(args) -> Corpus:
    left = ingest(args.left, args.text_col, args.id_col, args.delim)
    right = ingest(args.right, args.text_col, args.id_col, args.delim)
    return build_corpus(left.texts, right.texts, args.tokenizer, left.ids, right.ids)


def _sim_cells(sim: ExactSim) -> list[str]:
    return [sim.exact_str(), f"{float(sim):.6f}"]


def _write_report(path: Path | None, record: dict) -> None:
    if path is None:
        return
    with path.open("a", encoding="utf-8") as fh:
        fh.write(json.dumps(record, sort_keys=True) + "\n")


def _run_join(args, measure):
    corpus = _load(args)
    config = EngineConfig(measure, args.pref, args.pivotal, not args.no_length_filter)
    t0 = time.perf_counter()
    outcome = run(corpus.R, corpus.S, config)
    elapsed = time.perf_counter() - t0
    theta = outcome.theta_star
    report = {
        "sim": str(measure),
        "preference": args.pref,
        "pivotal_mode": args.pivotal,
        "theta_star": theta.exact_str() if theta else None,
        "theta_star_decimal": round(float(theta), 6) if theta else None,
        "best_score": outcome.best_score,
        "pairs": len(outcome.pairs()),
        "pivotal_thresholds": len(outcome.pivotal),
        "thresholds_evaluated": outcome.thresholds_evaluated,
        "terminated_early": outcome.terminated_early,
        "peak_candidates": outcome.peak_candidates,
        "records_left": len(corpus.R),
        "records_right": len(corpus.S),
        "dropped_left": len(corpus.dropped_r),
        "dropped_right": len(corpus.dropped_s),
        "wall_time_s": round(elapsed, 4),
    }
    return corpus, outcome, report


def cmd_join(args, parser) -> int:
    measure = _check_measure(parser, args)
    corpus, outcome, report = _run_join(args, measure)
    R, S = corpus.R, corpus.S
    out = csv.writer(sys.stdout, delimiter="\t", lineterminator="\n")
    for r, s in outcome.pairs():
        sim = measure.similarity(R.records[r], S.records[s])
        out.writerow([R.external_ids[r], S.external_ids[s], *_sim_cells(sim)])
    if args.outer and outcome.theta_star is not None:
        for r, s in full_outer_join(outcome.result, outcome.theta_star, R, S):
            if r is None:
                out.writerow(["NULL", S.external_ids[s], "NULL", "NULL"])
            elif s is None:
                out.writerow([R.external_ids[r], "NULL", "NULL", "NULL"])
    logger.info("theta* = %s, score %s", report["theta_star"], report["best_score"])
    _write_report(args.report, report)
    return 0


def cmd_eval(args, parser) -> int:
    truth = read_pairs(args.truth, args.delim)
    extra: dict = {}
    known = None
    if args.pred is not None:
        predicted = read_pairs(args.pred, "\t", header=False)
    else:
        if args.left is None or args.right is None:
            parser.error("eval needs --pred or both --left and --right")
        measure = _check_measure(parser, args)
        corpus, outcome, extra = _run_join(args, measure)
        predicted = [(corpus.R.external_ids[r], corpus.S.external_ids[s]) for r, s in outcome.pairs()]
        known = (set(corpus.R.external_ids) | set(corpus.dropped_r), set(corpus.S.external_ids) | set(corpus.dropped_s))
    if known is not None:
        kept = [(a, b) for a, b in truth if a in known[0] and b in known[1]]
        if len(kept) != len(truth):
            logger.warning("dropping %d ground-truth pairs with unknown ids", len(truth) - len(kept))
        extra["truth_dropped"] = len(truth) - len(kept)
        truth = kept
    rep = score_pairs(predicted, truth)
    rep.extra = extra
    record = rep.as_dict()
    print(json.dumps(record, sort_keys=True))
    _write_report(args.report, record)
    return 0


def cmd_oracle(args, parser) -> int:
    measure = _check_measure(parser, args)
    corpus = _load(args)
    n_pairs = len(corpus.R) * len(corpus.S)
    if n_pairs > args.max_pairs:
        parser.error(f"{n_pairs} pairs exceeds --max-pairs {args.max_pairs}")
    oc = oracle_run(corpus.R, corpus.S, measure)
    out = csv.writer(sys.stdout, delimiter="\t", lineterminator="\n")
    out.writerow(["theta", "theta_decimal", "h_c", "h_o", "join", "cover_r", "cover_s", "components"])
    for row in oc.per_threshold:
        out.writerow([*_sim_cells(row.theta), row.h_c, row.h_o, row.join_size, row.cover_r, row.cover_s, row.components])
    return 0


COMMANDS = {"join": cmd_join, "eval": cmd_eval, "oracle": cmd_oracle}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return COMMANDS[args.command](args, parser)
    except IngestError as exc:
        print(f"prefjoin: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OverflowError as exc:
        print(f"prefjoin: arithmetic overflow: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except ValueError as exc:
        # empty inputs after dropping blank records land here
        print(f"prefjoin: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
