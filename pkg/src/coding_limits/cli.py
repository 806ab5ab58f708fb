"""Command-line interface: ``coding-limits {bound,rate,curve,capacity,simulate}``.

Exit codes: 0 success, 2 invalid input or domain error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from concurrent.futures import ThreadPoolExecutor

from . import awgn_bpsk, bounds, dmc, endchan
from .bounds import Measure, OperatingPoint
from .errors import ConvergenceError, DomainError, QuadratureError

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_IO = 3

CSV_HEADER = ("abscissa", "measure", "k", "rate", "value")
DEFAULT_RATIOS = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)
DEFAULT_RATES = (0.25, 0.5, 0.75)
FIGURES = ("fer_vs_k", "ber_vs_gap", "snr_curves")
FIGURE_MEASURES = {
    "fer_vs_k": (Measure.FER,),
    "ber_vs_gap": (Measure.BER, Measure.BER_PRIME),
    "snr_curves": (Measure.BER, Measure.BER_PRIME, Measure.FER, Measure.FER_PRIME),
}


def fmt(x) -> str:
    """12 significant digits, locale independent."""
    return format(float(x), ".12g")


def log_k_grid(k_max: int) -> list[int]:
    """1, 2, 5, 10, 20, 50, ... up to and including ``k_max``."""
    out = []
    decade = 1
    while decade <= k_max:
        out += [m * decade for m in (1, 2, 5) if m * decade <= k_max]
        decade *= 10
    return out


def _floats(text):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _measures(text):
    try:
        return [Measure(t.strip()) for t in text.split(",") if t.strip()]
    except ValueError:
        choices = ", ".join(m.value for m in Measure)
        raise argparse.ArgumentTypeError(f"measures must be among: {choices}") from None


# -- curve generation ------------------------------------------------------------


def curve_rows(
    figure,
    ratios=DEFAULT_RATIOS,
    k_values=None,
    k_max=10_000,
    gap_step=0.01,
    rates=DEFAULT_RATES,
    measures=None,
    ebn0_start=-2.0,
    ebn0_stop=6.0,
    ebn0_step=0.1,
    k=None,
    hard_decision=False,
    workers=None,
):
    """Rows ``(abscissa, measure, k, rate, value)`` of one figure, in grid order.

    For ``fer_vs_k`` and ``ber_vs_gap`` the bounds depend on ``C/R`` only;
    they are emitted at unit capacity, so the ``rate`` column holds ``R/C``.
    """
    if figure not in FIGURES:
        raise DomainError(f"figure must be one of {FIGURES}, got {figure!r}")
    measures = tuple(measures or FIGURE_MEASURES[figure])
    bad = [m for m in measures if m not in FIGURE_MEASURES[figure] and m is not Measure.MI_PER_BIT]
    if bad:
        raise DomainError(f"measure {bad[0]} is not available for figure {figure}")
    rows = []
    if figure == "fer_vs_k":
        ks = list(k_values) if k_values else log_k_grid(k_max)
        if not ks or not ratios:
            raise DomainError("fer_vs_k needs nonempty C/R and k grids")
        for ratio in ratios:
            if not ratio > 0.0:
                raise DomainError(f"C/R values must be positive, got {ratio!r}")
            op = OperatingPoint(1.0, 1.0 / ratio)
            for kk in ks:
                for m in measures:
                    value = bounds.evaluate(m, op, kk)
                    rows.append((kk, m.value, kk, 1.0 / ratio, value))
        return rows
    if figure == "ber_vs_gap":
        for gap in awgn_bpsk.db_grid(0.0, 1.0, gap_step):
            ratio = 1.0 - gap
            op = OperatingPoint(ratio, 1.0)
            for m in measures:
                rows.append((gap, m.value, "", 1.0 / ratio if ratio > 0 else math.inf,
                             bounds.evaluate(m, op)))
        return rows

    grid = awgn_bpsk.db_grid(ebn0_start, ebn0_stop, ebn0_step)
    if not rates:
        raise DomainError("snr_curves needs at least one rate")
    jobs = [(r, m) for r in rates for m in measures]

    def run(job):
        r, m = job
        return awgn_bpsk.bound_curve(r, m, grid, k=k, hard_decision=hard_decision)

    n_workers = min(endchan.worker_count(workers), len(jobs))
    if n_workers > 1:
        with ThreadPoolExecutor(n_workers) as pool:
            curves = list(pool.map(run, jobs))
    else:
        curves = [run(j) for j in jobs]
    for curve in curves:
        for pt in curve:
            rows.append((pt.abscissa, pt.measure.value, "" if pt.k is None else pt.k, pt.rate, pt.value))
    return rows


def format_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for abscissa, measure, k, rate, value in rows:
        w.writerow([fmt(abscissa), measure, k, fmt(rate), fmt(value)])
    return buf.getvalue()


# -- subcommands -----------------------------------------------------------------


def cmd_bound(args, out):
    op = OperatingPoint(args.c, args.r)
    value = bounds.evaluate(args.measure, op, args.k)
    print(fmt(value), file=out)
    return EXIT_OK


def cmd_rate(args, out):
    if args.ber_t is not None:
        value = bounds.max_rate_for_tolerated_ber(args.c, args.ber_t)
    else:
        value = bounds.max_rate_for_tolerated_fer(args.c, args.fer_t)
    print(fmt(value), file=out)
    return EXIT_OK


def cmd_curve(args, out):
    rows = curve_rows(
        args.figure,
        ratios=args.ratios or DEFAULT_RATIOS,
        k_values=args.k_values,
        k_max=args.k_max,
        gap_step=args.gap_step,
        rates=args.rates or DEFAULT_RATES,
        measures=args.measures,
        ebn0_start=args.ebn0_start,
        ebn0_stop=args.ebn0_stop,
        ebn0_step=args.ebn0_step,
        k=args.k,
        hard_decision=args.hard_decision,
    )
    text = format_csv(rows)
    if args.output in (None, "-"):
        out.write(text)
        return EXIT_OK
    try:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {args.output}: {exc.strerror}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_capacity(args, out):
    try:
        channel = dmc.read_dmc(args.matrix_file)
    except OSError as exc:
        print(f"error: cannot read {args.matrix_file}: {exc.strerror}", file=sys.stderr)
        return EXIT_IO
    res = dmc.capacity_blahut_arimoto(channel, args.tolerance, args.max_iterations)
    print(f"capacity={fmt(res.capacity)}", file=out)
    print(f"iterations={res.iterations}", file=out)
    print(f"residual={fmt(res.residual)}", file=out)
    print("input=" + " ".join(fmt(p) for p in res.argmax_input), file=out)
    return EXIT_OK


def _model_from_args(args):
    need = {"bsc": "p", "msc": "fer", "erasure": "erasure", "fritchman": "pgb"}[args.model]
    if getattr(args, need) is None:
        raise DomainError(f"--model {args.model} requires --{need}")
    if args.model == "bsc":
        return endchan.Bsc(args.p)
    if args.model == "msc":
        return endchan.MarySymmetric(args.k, args.fer)
    if args.model == "erasure":
        return endchan.BlockErasure(args.k, args.erasure)
    if args.pbg is None:
        raise DomainError("--model fritchman requires --pbg")
    return endchan.FritchmanBurst(args.pgb, args.pbg, args.burst_flip)


def cmd_simulate(args, out):
    model = _model_from_args(args)
    report = endchan.simulate(model, args.k, args.frames, args.seed)
    if args.format == "csv":
        out.write(report.csv_header() + "\n" + report.to_csv_row() + "\n")
    else:
        out.write(report.to_record())
    return EXIT_OK


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coding-limits",
        description="Lowest possible BER and FER for coded transmission above capacity.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="evaluate one bound at capacity C and rate R")
    p.add_argument("--c", type=float, required=True, help="capacity, bits per channel use")
    p.add_argument("--r", type=float, required=True, help="code rate, bits per channel use")
    p.add_argument("--measure", type=Measure, required=True,
                   choices=list(Measure), help="ber, fer, ber-prime, fer-prime or mi-per-bit")
    p.add_argument("--k", type=int, help="frame length for the FER bound (default: k -> infinity)")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("rate", help="largest rate for a tolerated BER or FER")
    p.add_argument("--c", type=float, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--ber-t", type=float)
    g.add_argument("--fer-t", type=float)
    p.set_defaults(func=cmd_rate)

    p = sub.add_parser("curve", help="write a bound curve family as CSV")
    p.add_argument("--figure", choices=FIGURES, required=True)
    p.add_argument("--output", "-o", help="CSV path ('-' or omitted: stdout)")
    p.add_argument("--ratios", type=_floats, help="C/R values for fer_vs_k")
    p.add_argument("--k-values", type=_ints, help="explicit k grid for fer_vs_k")
    p.add_argument("--k-max", type=int, default=10_000, help="largest k of the 1-2-5 grid")
    p.add_argument("--gap-step", type=float, default=0.01, help="1-C/R step for ber_vs_gap")
    p.add_argument("--rates", type=_floats, help="code rates for snr_curves")
    p.add_argument("--measures", type=_measures)
    p.add_argument("--ebn0-start", type=float, default=-2.0)
    p.add_argument("--ebn0-stop", type=float, default=6.0)
    p.add_argument("--ebn0-step", type=float, default=0.1)
    p.add_argument("--k", type=int, help="finite frame length for the FER curves of snr_curves")
    p.add_argument("--hard-decision", action="store_true",
                   help="use the hard-decision (BSC) capacity of BPSK")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("capacity", help="Blahut-Arimoto capacity of a channel matrix file")
    p.add_argument("matrix_file")
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--max-iterations", type=int, default=100_000)
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("simulate", help="simulate an end-to-end channel")
    p.add_argument("--model", choices=("bsc", "msc", "erasure", "fritchman"), required=True)
    p.add_argument("--k", type=int, default=1, help="frame length in bits")
    p.add_argument("--frames", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p", type=float, help="BSC crossover probability")
    p.add_argument("--fer", type=float, help="M-SC frame error probability")
    p.add_argument("--erasure", type=float, help="block erasure probability")
    p.add_argument("--pgb", type=float, help="Fritchman good-to-burst probability")
    p.add_argument("--pbg", type=float, help="Fritchman burst-to-good probability")
    p.add_argument("--burst-flip", type=float, default=0.5)
    p.add_argument("--format", choices=("record", "csv"), default="record")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except dmc.DmcFileError as exc:
        print(f"error: {args.matrix_file}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DomainError, ConvergenceError, QuadratureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
