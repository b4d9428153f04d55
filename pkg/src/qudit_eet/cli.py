"""``qudit-eet`` command line front end.

    qudit-eet <subcommand> [--config PATH] [--out DIR] [--svg] [--workers N]

Exit status: 0 on success, 2 for a bad config or arguments, 3 when a
numerical invariant fails during the run, 4 when outputs cannot be written.
"""
from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__, estimation
from .config import ConfigError, RunConfig, default_config, parse_config, serialize_config
from .excitation import populations
from .experiments import (
    ALL_TRUNCATIONS,
    EntanglementEngine,
    InvariantViolation,
    compare_truncations,
    sweep_gamma,
    sweep_surface,
)
from .svg import heatmap, line_plot

log = logging.getLogger("qudit_eet")

TRACE_HEADER = ("gamma", "gamma2", "entropy")
SWEEP_HEADER = ("gamma", "p0", "p1", "p2", "p3", "e_max", "e_max_gamma2")
EXCITE_HEADER = ("gamma", "p0", "p1", "p2", "p3")
SUMMARY_HEADER = ("truncation", "e_max", "e_max_gamma2", "e_max_over_four_level")
KEY_VALUE_HEADER = ("key", "value")

EXIT_CONFIG = 2
EXIT_INVARIANT = 3
EXIT_OUTPUT = 4


def fmt(x) -> str:
    """17 significant digits: exact round trip for doubles."""
    if isinstance(x, str):
        return x
    return f"{float(x):.17g}"


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def _trace_rows(gamma, gamma2, entropy):
    g = fmt(gamma)
    return ((g, a, b) for a, b in zip(gamma2.tolist(), entropy.tolist()))


class Run:
    """Collects output files so they are written together with a manifest."""

    def __init__(self, name: str, config: RunConfig, out: Path, svg: bool):
        self.name, self.config, self.out, self.svg = name, config, out, svg
        self.files: dict[str, str] = {}
        self.summary: list[str] = []

    def add(self, filename, text):
        self.files[filename] = text

    def add_svg(self, filename, make):
        if self.svg:
            self.files[filename] = make()

    def say(self, line):
        self.summary.append(line)

    def manifest(self) -> str:
        lines = [
            f"qudit-eet {__version__}",
            f"numpy {np.__version__}",
            f"subcommand: {self.name}",
            f"config: {self.config.source or '(built-in defaults)'}",
            "defaults applied: " + (", ".join(self.config.defaults_applied) or "none"),
            "outputs: " + ", ".join(sorted(self.files)),
            "",
            "summary:",
            *("  " + s for s in self.summary),
            "",
            "effective config:",
            serialize_config(self.config),
        ]
        return "\n".join(lines)

    def write(self):
        self.out.mkdir(parents=True, exist_ok=True)
        for filename, text in self.files.items():
            (self.out / filename).write_text(text)
        (self.out / "manifest.txt").write_text(self.manifest())


def cmd_excite(run: Run, workers: int):
    m, p = run.config.model(), run.config.params()
    psi = EntanglementEngine(m, p).initial_state(p.gamma)
    pops = np.zeros(4)
    pops[: m.dim] = populations(psi)
    run.add("excite.csv", _csv_text(EXCITE_HEADER, [(p.gamma, *pops)]))
    run.say(f"gamma = {p.gamma:g} ({m.truncation.value}): " + ", ".join(f"p{n} = {v:.6f}" for n, v in enumerate(pops[: m.dim])))


def cmd_trace(run: Run, workers: int):
    m, p, grid = run.config.model(), run.config.params(), run.config.grid()
    engine = EntanglementEngine(m, p)
    trace = engine.trace(p.gamma, grid, workers)
    best = engine.max_entanglement(p.gamma, grid, workers, trace=trace)
    run.add("trace.csv", _csv_text(TRACE_HEADER, _trace_rows(trace.gamma, trace.gamma2, trace.entropy)))
    run.add_svg("trace.svg", lambda: line_plot(
        [(f"gamma = {p.gamma:g}", trace.gamma2, trace.entropy)],
        title=f"Entropy of entanglement ({m.truncation.value})", xlabel="gamma2", ylabel="E",
    ))
    run.say(f"gamma = {p.gamma:g}: e_max = {best.value:.6f} at gamma2 = {best.gamma2:.6f}")


def cmd_sweep_gamma(run: Run, workers: int):
    m, p, grid = run.config.model(), run.config.params(), run.config.grid()
    sweep = sweep_gamma(m, p, run.config.gamma_values(), grid, workers)
    rows = [(r.gamma, r.p0, r.p1, r.p2, r.p3, r.e_max, r.e_max_gamma2) for r in sweep]
    run.add("sweep_gamma.csv", _csv_text(SWEEP_HEADER, rows))
    g = np.array([r.gamma for r in sweep])

    def plot():
        series = [(f"p{n}", g, [getattr(r, f"p{n}") for r in sweep]) for n in range(m.dim)]
        series.append(("E_max", g, [r.e_max for r in sweep]))
        return line_plot(series, title="Populations and maximum entanglement", xlabel="gamma", ylabel="value")

    run.add_svg("sweep_gamma.svg", plot)
    run.say(f"{len(sweep)} gamma values; largest e_max decrease between neighbors {sweep.max_decrease:.3g}")


def cmd_sweep_surface(run: Run, workers: int):
    m, p = run.config.model(), run.config.params()
    surface = sweep_surface(m, p, run.config.surface_gamma_values(), run.config.surface_grid(), workers)

    def rows():
        for i, g in enumerate(surface.gamma_values.tolist()):
            yield from _trace_rows(g, surface.gamma2_values, surface.entropy[i])

    run.add("surface.csv", _csv_text(TRACE_HEADER, rows()))
    run.add_svg("surface.svg", lambda: heatmap(
        surface.gamma2_values, surface.gamma_values, surface.entropy,
        title="Entropy of entanglement", xlabel="gamma2", ylabel="gamma", zlabel="E",
    ))
    run.say(f"{surface.entropy.size} cells; max entropy {surface.entropy.max():.6f}")


def cmd_compare_truncations(run: Run, workers: int):
    p, grid = run.config.params(), run.config.grid()
    base = run.config.model()
    if base.truncation.dimension != 4:
        raise ConfigError("compare-truncations needs model.truncation = four_level", key="model.truncation")
    cmp = compare_truncations(p.gamma, p, grid, m=base, workers=workers)
    summary = []
    for mode in ALL_TRUNCATIONS:
        tr = cmp.traces[mode]
        run.add(f"trace_{mode.value}.csv", _csv_text(TRACE_HEADER, _trace_rows(tr.gamma, tr.gamma2, tr.entropy)))
        best = cmp.maxima[mode]
        summary.append((mode.value, best.value, best.gamma2, cmp.ratio(mode)))
        run.say(f"{mode.value}: e_max = {best.value:.6f} at gamma2 = {best.gamma2:.6f}")
    run.add("truncation_summary.csv", _csv_text(SUMMARY_HEADER, summary))
    run.say(f"max pairwise deviation between traces: {cmp.max_pairwise_deviation:.6f}")
    run.add_svg("truncations.svg", lambda: line_plot(
        [(mode.value, cmp.traces[mode].gamma2, cmp.traces[mode].entropy) for mode in ALL_TRUNCATIONS],
        title=f"Truncations at gamma = {p.gamma:g}", xlabel="gamma2", ylabel="E",
    ))


def cmd_estimate_params(run: Run, workers: int):
    model, report = estimation.estimate_table1(**run.config.estimation_inputs())
    run.add("estimate_report.txt", report.to_text())
    run.add("estimate.csv", _csv_text(KEY_VALUE_HEADER, report.items()))
    run.say("level ratios: " + ", ".join(f"{v:.6g}" for v in model.level_ratios))
    run.say("dipole ratios: " + ", ".join(f"{v:.6g}" for v in model.dipole_ratios))
    run.say("coupling ratios: " + ", ".join(f"{v:.6g}" for v in model.coupling_ratios))


def cmd_gamma_from_pulse(run: Run, workers: int):
    pulse = run.config.pulse()
    quoted = run.config["estimation"]["quoted_gamma"]
    gamma = estimation.gamma_from_pulse(pulse)
    items = [
        ("formula_gamma", gamma),
        ("quoted_gamma", quoted),
        ("relative_difference", (gamma - quoted) / quoted if quoted else float("nan")),
        ("field_amplitude_V_per_m", pulse.field_amplitude),
    ]
    run.add("gamma_from_pulse.csv", _csv_text(KEY_VALUE_HEADER, items))
    run.say(f"formula gamma = {gamma:.6f}; quoted gamma = {quoted:g}")


COMMANDS = {
    "excite": (cmd_excite, "populations of qudit A after the pulse"),
    "trace": (cmd_trace, "entropy of entanglement versus gamma2"),
    "sweep-gamma": (cmd_sweep_gamma, "populations and maximum entanglement versus gamma"),
    "sweep-surface": (cmd_sweep_surface, "entropy over the (gamma, gamma2) plane"),
    "compare-truncations": (cmd_compare_truncations, "four-, three-, two-level and single-exciton traces"),
    "estimate-params": (cmd_estimate_params, "model ratios from Frenkel-Hamiltonian inputs"),
    "gamma-from-pulse": (cmd_gamma_from_pulse, "gamma from pulse energy, length and beam area"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qudit-eet", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", type=Path, help="config file (defaults used if omitted)")
        p.add_argument("--out", type=Path, help="output directory (overrides output.directory)")
        p.add_argument("--svg", action="store_true", help="also write SVG plots")
        p.add_argument("--workers", type=int, default=1, help="threads for grid evaluation")
        p.add_argument("-v", "--verbose", action="store_true")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        config = parse_config(args.config) if args.config else default_config()
        out = args.out or Path(config["output"]["directory"])
        svg = args.svg or "svg" in config["output"]["formats"]
        run = Run(args.command, config, out, svg)
        COMMANDS[args.command][0](run, max(1, args.workers))
    except ConfigError as exc:
        print(f"qudit-eet: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InvariantViolation as exc:
        print(f"qudit-eet: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    try:
        run.write()
    except OSError as exc:
        print(f"qudit-eet: cannot write outputs to {out}: {exc}", file=sys.stderr)
        return EXIT_OUTPUT
    for line in run.summary:
        print(line)
    print(f"wrote {len(run.files) + 1} files to {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
