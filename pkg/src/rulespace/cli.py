"""Command-line front end.

Every subcommand echoes its resolved configuration as a leading comment
line, so an output file identifies the run that produced it and identical
invocations produce identical bytes.  Progress and summaries go to
standard error; standard output stays machine-clean.
"""

from __future__ import annotations

import argparse
import sys
from multiprocessing import Pool
from pathlib import Path
from typing import Iterable, Iterator

from .errors import RangeError, RuleSpaceError
from .rulecore import RuleTable, StateWord, detect_orbit, parse_rule
from . import debruijn as db
from . import feasibility as fz
from . import census
from . import classifier as cl

ENUM_CHUNK = 1 << 20


def _header(cmd: str, /, **pairs) -> str:
    parts = [f"{k}={v}" for k, v in pairs.items() if v is not None]
    return f"# rulespace {cmd} " + " ".join(parts)


def _emit(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text, encoding="ascii")
    else:
        sys.stdout.write(text)


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def _bool(x: bool) -> str:
    return "true" if x else "false"


# ---------- check ----------

def cmd_check(args) -> int:
    rule = parse_rule(args.rule, args.mu)
    init = StateWord.from_bits(args.init) if args.init else StateWord(rule.mu, 0)
    if init.mu != rule.mu:
        raise RangeError(f"init window must have {rule.mu} bits")
    lines = [_header("check", mu=rule.mu, rule=rule.bits, init=init.bits)]
    lines.append(f"rule: {rule.bits}")
    lines.append(f"decimal: {rule.value}")
    lines.append(f"mu: {rule.mu}")
    try:
        profile = fz.is_feasible(rule)
    except RangeError:
        lines.append("feasible: n/a (structural filters need mu >= 2)")
    else:
        lines.append(f"boundary: {_bool(profile.boundary_ok)}")
        lines.append(f"symmetry: {_bool(profile.symmetry_ok)}")
        factor = profile.evil_factor
        lines.append(f"evil_factor: {'none' if factor is None else factor}")
        lines.append(f"phi: {profile.phi}")
        lines.append(f"pair: {_bool(profile.pair_ok)}")
        lines.append(f"feasible: {_bool(profile.feasible)}")
    is_db = db.is_debruijn_rule(rule)
    lines.append(f"debruijn: {_bool(is_db)}")
    if is_db:
        lines.append(f"sequence: {db.sequence_of_rule(rule).symbols}")
    orbit = detect_orbit(rule, init)
    lines.append(f"init: {init.bits}")
    lines.append(f"transient: {orbit.transient_length}")
    lines.append(f"period: {orbit.period}")
    _emit(args.output, "\n".join(lines) + "\n")
    return 0


# ---------- enumerate ----------

def _enumerate_chunk(job: tuple[int, int, int, str]) -> list[int]:
    mu, start, stop, kind = job
    out = []
    for rule in fz.enumerate_feasible(mu, start, stop, force=True):
        if kind == "debruijn" and not db.is_debruijn_rule(rule):
            continue
        out.append(rule.value)
    return out


def _scan_feasible(args) -> Iterator[int]:
    mu = args.mu
    free = (1 << (mu - 1)) - 2 if mu >= 3 else 0
    start = max(args.start or 0, 0)
    stop = (1 << free) if args.end is None else min(args.end, 1 << free)
    if mu > fz.ENUMERATION_GUARD_MU and not args.force:
        raise fz.CapacityError(
            f"enumerate at mu={mu} needs --force (interior space is 2^{free})"
        )
    if mu == 2:
        yield from _enumerate_chunk((mu, start, stop, args.kind))
        return
    chunks = [
        (mu, lo, min(lo + ENUM_CHUNK, stop), args.kind)
        for lo in range(start, stop, ENUM_CHUNK)
    ]
    workers = args.workers
    if workers > 1 and len(chunks) > 1:
        with Pool(processes=workers) as pool:
            for i, values in enumerate(pool.imap(_enumerate_chunk, chunks)):
                if len(chunks) > 1:
                    _note(f"chunk {i + 1}/{len(chunks)} done ({len(values)} rules)")
                yield from values
    else:
        for i, chunk in enumerate(chunks):
            values = _enumerate_chunk(chunk)
            if len(chunks) > 1:
                _note(f"chunk {i + 1}/{len(chunks)} done ({len(values)} rules)")
            yield from values


def cmd_enumerate(args) -> int:
    header = _header(
        "enumerate",
        mu=args.mu,
        kind=args.kind,
        profile=_bool(args.profile),
        start=args.start,
        end=args.end,
    )
    lines = [header]
    if args.profile:
        lines.append("rule,boundary,symmetry,evil_factor,phi,pair,feasible")
    count = 0
    for value in _scan_feasible(args):
        rule = RuleTable(args.mu, value)
        if args.profile:
            p = fz.is_feasible(rule)
            factor = "" if p.evil_factor is None else str(p.evil_factor)
            lines.append(
                f"{rule.bits},{_bool(p.boundary_ok)},{_bool(p.symmetry_ok)},"
                f"{factor},{p.phi},{_bool(p.pair_ok)},{_bool(p.feasible)}"
            )
        else:
            lines.append(rule.bits)
        count += 1
    _emit(args.output, "\n".join(lines) + "\n")
    _note(f"{count} rules")
    return 0


# ---------- granddaddy ----------

def cmd_granddaddy(args) -> int:
    rule, seq = db.granddaddy(args.mu, fz.enumerate_feasible(args.mu, force=args.force))
    lines = [
        _header("granddaddy", mu=args.mu),
        f"rule_decimal: {rule.value}",
        f"rule_binary: {rule.bits}",
        f"sequence: {seq.symbols}",
    ]
    _emit(args.output, "\n".join(lines) + "\n")
    return 0


# ---------- periods ----------

def cmd_periods(args) -> int:
    policy: census.Policy = args.policy if args.policy in ("max", "min") else args.init
    hist = census.period_histogram(
        args.mu, policy, workers=args.workers, force=args.force
    )
    header = _header(
        "periods", mu=args.mu, policy=hist.policy, workers=args.workers
    )
    body = census.histogram_chart(hist) if args.chart else census.histogram_csv(hist)
    _emit(args.output, header + "\n" + body)
    return 0


# ---------- table3 ----------

def cmd_table3(args) -> int:
    if args.mu_min < 2 or args.mu_max < args.mu_min:
        raise RangeError("need 2 <= mu-min <= mu-max")
    rows = census.reduction_table(range(args.mu_min, args.mu_max + 1))
    header = _header("table3", mu_min=args.mu_min, mu_max=args.mu_max)
    _emit(args.output, header + "\n" + census.reduction_csv(rows))
    return 0


# ---------- graph ----------

def cmd_graph(args) -> int:
    rule = parse_rule(args.rule, args.mu)
    header = f"// rulespace graph mu={rule.mu} rule={rule.bits}"
    _emit(args.output, header + "\n" + db.export_state_graph(rule))
    return 0


# ---------- dataset ----------

def cmd_dataset(args) -> int:
    ds = cl.build_dataset(
        args.mu, sample=args.sample, balanced=args.balanced, seed=args.seed
    )
    header = _header(
        "dataset",
        mu=args.mu,
        sample=args.sample,
        balanced=_bool(args.balanced),
        seed=args.seed,
    )
    lines = [header, "rule,label"]
    lines += [f"{r},{int(l)}" for r, l in zip(ds.rules, ds.labels)]
    _emit(args.output, "\n".join(lines) + "\n")
    _note(f"{len(ds)} rows, {ds.positives} positive")
    return 0


def _parse_layers(text: str) -> tuple[int, ...]:
    try:
        layers = tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise RangeError(f"bad layer list {text!r}") from None
    if not layers or any(w <= 0 for w in layers):
        raise RangeError(f"layer widths must be positive, got {text!r}")
    return layers


def _config_from_args(mu: int, args) -> cl.NetworkConfig:
    base = cl.NetworkConfig.for_mu(mu, seed=args.seed)
    return cl.NetworkConfig(
        hidden_layers=_parse_layers(args.layers) if args.layers else base.hidden_layers,
        learning_rate=args.lr if args.lr is not None else base.learning_rate,
        batch_size=args.batch if args.batch is not None else base.batch_size,
        epochs=args.epochs if args.epochs is not None else base.epochs,
        threshold=args.threshold,
        seed=args.seed,
    )


def _metrics_lines(report: cl.MetricsReport) -> list[str]:
    return ["metric,value"] + [f"{k},{v}" for k, v in report.as_rows()]


# ---------- train ----------

def cmd_train(args) -> int:
    ds = cl.load_dataset(args.dataset, trust=args.trust)
    cfg = _config_from_args(ds.mu, args)
    if not 0 < args.split <= 1:
        raise RangeError("--split must be in (0, 1]")
    if args.split < 1:
        train_ds, test_ds = cl.split_dataset(ds, args.split, args.seed)
    else:
        train_ds, test_ds = ds, None
    model = cl.train(train_ds, cfg)
    cl.save_model(model, args.model)
    header = _header(
        "train",
        dataset=args.dataset,
        mu=ds.mu,
        layers=",".join(str(w) for w in cfg.hidden_layers),
        lr=cfg.learning_rate,
        batch=cfg.batch_size,
        epochs=cfg.epochs,
        split=args.split,
        seed=cfg.seed,
        threshold=cfg.threshold,
    )
    lines = [header]
    if test_ds is not None and len(test_ds):
        lines += _metrics_lines(cl.evaluate(model, test_ds, cfg.threshold))
    _emit(args.output, "\n".join(lines) + "\n")
    _note(f"model saved to {args.model} ({len(train_ds)} training rows)")
    return 0


# ---------- evaluate ----------

def cmd_evaluate(args) -> int:
    model = cl.load_model(args.model)
    ds = cl.load_dataset(args.dataset, trust=args.trust)
    report = cl.evaluate(model, ds, args.threshold)
    header = _header(
        "evaluate",
        model=args.model,
        dataset=args.dataset,
        threshold=args.threshold,
    )
    _emit(args.output, "\n".join([header] + _metrics_lines(report)) + "\n")
    return 0


# ---------- classify ----------

def _candidate_stream(args) -> Iterable[RuleTable]:
    if args.rules:
        def from_file() -> Iterator[RuleTable]:
            with open(args.rules, encoding="ascii") as fh:
                for raw in fh:
                    line = raw.strip()
                    if line and not line.startswith("#"):
                        yield parse_rule(line, args.mu)
        return from_file()
    if args.sample is not None:
        return fz.sample_feasible(args.mu, args.seed, args.sample, unique=True)
    return fz.enumerate_feasible(args.mu, force=args.force)


def cmd_classify(args) -> int:
    model = cl.load_model(args.model)
    if args.mu != model.mu:
        raise RangeError(f"model was trained at mu={model.mu}, got --mu {args.mu}")
    report = cl.verify_predictions(model, _candidate_stream(args), args.threshold)
    header = _header(
        "classify",
        model=args.model,
        mu=args.mu,
        source="file" if args.rules else ("sample" if args.sample else "feasible"),
        sample=args.sample,
        seed=args.seed if args.sample is not None else None,
        threshold=args.threshold,
    )
    lines = [header] + [rule.bits for rule in report.confirmed]
    _emit(args.output, "\n".join(lines) + "\n")
    _note(
        f"scanned={report.scanned} predicted_positive={report.predicted_positive} "
        f"confirmed={report.confirmed_count}"
    )
    return 0


# ---------- parser ----------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rulespace",
        description="Analyze binary generating rules with memory: de Bruijn "
        "rules and sequences, structural filters, rule-space censuses and a "
        "neural classifier.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, workers=False):
        p.add_argument("--output", help="write to this file instead of stdout")
        if workers:
            p.add_argument(
                "--workers",
                type=int,
                default=census.default_workers(),
                help="parallel workers (default: RULESPACE_WORKERS or 1)",
            )

    p = sub.add_parser("check", help="feasibility profile, de Bruijn verdict and period of one rule")
    p.add_argument("--mu", type=int, help="memory length (needed for d:<decimal> rules)")
    p.add_argument("--rule", required=True, help="rule as binary table string or d:<decimal>")
    p.add_argument("--init", help="initial window bits (default all zeros)")
    add_common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("enumerate", help="enumerate feasible or de Bruijn rules")
    p.add_argument("--mu", type=int, required=True)
    p.add_argument("--kind", choices=("feasible", "debruijn"), default="feasible")
    p.add_argument("--profile", action="store_true", help="emit filter columns as CSV")
    p.add_argument("--start", type=int, help="first interior index of the scan")
    p.add_argument("--end", type=int, help="end interior index (exclusive)")
    p.add_argument("--force", action="store_true", help="override the capacity guard")
    add_common(p, workers=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("granddaddy", help="lexicographically least de Bruijn sequence and its rule")
    p.add_argument("--mu", type=int, required=True)
    p.add_argument("--force", action="store_true")
    add_common(p)
    p.set_defaults(func=cmd_granddaddy)

    p = sub.add_parser("periods", help="period histogram over the whole rule space")
    p.add_argument("--mu", type=int, required=True)
    p.add_argument("--policy", choices=("fixed", "max", "min"), default="fixed")
    p.add_argument("--init", type=int, default=1, help="initial window value for the fixed policy")
    p.add_argument("--chart", action="store_true", help="render a text bar chart instead of CSV")
    p.add_argument("--force", action="store_true")
    add_common(p, workers=True)
    p.set_defaults(func=cmd_periods)

    p = sub.add_parser("table3", help="rule-space reduction table (totals, counts, ratios)")
    p.add_argument("--mu-min", type=int, default=3)
    p.add_argument("--mu-max", type=int, default=9)
    add_common(p)
    p.set_defaults(func=cmd_table3)

    p = sub.add_parser("graph", help="export the state graph of a rule as DOT text")
    p.add_argument("--mu", type=int)
    p.add_argument("--rule", required=True)
    add_common(p)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("dataset", help="build a labeled rule,label CSV over the feasible set")
    p.add_argument("--mu", type=int, required=True)
    p.add_argument("--sample", type=int, help="sample this many rules (default: exhaustive)")
    p.add_argument("--balanced", action="store_true", help="equal class counts (needs --sample)")
    p.add_argument("--seed", type=int, default=0)
    add_common(p)
    p.set_defaults(func=cmd_dataset)

    p = sub.add_parser("train", help="train the classifier on a dataset CSV")
    p.add_argument("--dataset", required=True)
    p.add_argument("--model", required=True, help="path for the saved model")
    p.add_argument("--layers", help="hidden layer widths, e.g. 32,16")
    p.add_argument("--lr", type=float)
    p.add_argument("--batch", type=int)
    p.add_argument("--epochs", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--split", type=float, default=0.8, help="training fraction (1.0 trains on all rows)")
    p.add_argument("--threshold", type=float, default=0.5)
    p.add_argument("--trust", action="store_true", help="skip oracle re-verification of labels")
    add_common(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("evaluate", help="evaluate a saved model on a dataset CSV")
    p.add_argument("--model", required=True)
    p.add_argument("--dataset", required=True)
    p.add_argument("--threshold", type=float, default=0.5)
    p.add_argument("--trust", action="store_true")
    add_common(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("classify", help="screen candidates with a model, then oracle-verify positives")
    p.add_argument("--model", required=True)
    p.add_argument("--mu", type=int, required=True)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--rules", help="file with one rule per line")
    src.add_argument("--sample", type=int, help="draw this many feasible rules")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threshold", type=float, default=0.5)
    p.add_argument("--force", action="store_true", help="allow full feasible scans past the guard")
    add_common(p)
    p.set_defaults(func=cmd_classify)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except RuleSpaceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
