"""Command-line front end.

Subcommands map one-to-one onto the library surveys; each writes a plain
report.txt plus CSV side files into --out.  Options resolve as command line
> INI config (--config) > built-in defaults, and --dump-config prints the
effective INI so runs can be reproduced exactly.  Exit codes: 0 ok, 2 bad
configuration or empty analysis, 3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import sys
from fractions import Fraction
from pathlib import Path

from . import interval, setfam, shadowing, subshift
from .budgets import BudgetError
from .setfam import FamilyParams, WindowSet


class ConfigError(Exception):
    pass


def _floats(s: str) -> tuple[float, ...]:
    out = tuple(float(t) for t in s.split(",") if t.strip())
    if not out:
        raise ValueError("empty float list")
    return out


_DELTAS = "0.01,0.001,0.0001"

# name, converter, default, help
RUN_OPTIONS = [
    ("seed", str, "42", "seed string for all randomized probes"),
    ("out", str, ".", "output directory"),
]

SECTIONS: dict[str, list[tuple[str, type, object, str]]] = {
    "classify-set": [
        ("horizon", int, 256, "window horizon"),
        ("members", str, "complement(powers(2))",
         "generator, comma-separated members, or @file"),
        ("gap", int, 2, "syndetic gap bound"),
        ("block", int, 8, "thickness block length"),
        ("cofinite-head", int, 8, "largest admissible co-finite head"),
        ("burnin", int, 8, "density burn-in prefix"),
        ("tail-policy", str, "censored", "censored|strict trailing gap"),
    ],
    "spacing": [
        ("horizon", int, 128, "horizon of the spacing set"),
        ("p", str, "evens", "spacing set: generator, members, or @file"),
        ("word-len", int, 3, "survey words up to this length"),
        ("n-max", int, 64, "largest filler length / shift"),
        ("gap", int, 2, "syndetic gap bound"),
        ("block", int, 8, "thickness block length"),
        ("cofinite-head", int, 8, "largest admissible co-finite head"),
        ("burnin", int, 8, "density burn-in prefix"),
        ("tail-policy", str, "censored", "censored|strict trailing gap"),
        ("k-max", int, 128, "modulus bound for the periodic-point search"),
        ("witness", str, "", "u,k,v triple for a glued-word witness"),
    ],
    "sturmian": [
        ("prefix-len", int, 10_000, "certified prefix length"),
        ("word-len", int, 8, "factor-count table up to this length"),
        ("word", str, "010", "factor whose occurrence set is classified"),
        ("gap", int, 34, "syndetic gap bound for occurrence sets"),
        ("block", int, 8, "thickness block length"),
        ("cofinite-head", int, 8, "largest admissible co-finite head"),
        ("burnin", int, 8, "density burn-in prefix"),
        ("tail-policy", str, "censored", "censored|strict trailing gap"),
    ],
    "interval-devaney": [
        ("map", str, "S", "builtin map name or @file"),
        ("cells", int, 10, "interval grid cells"),
        ("margin", Fraction, Fraction(1, 100), "shrink cells by this margin"),
        ("delta", Fraction, Fraction(1, 2), "sensitivity threshold"),
        ("steps", int, 64, "iteration window length"),
        ("gap", int, 16, "syndetic gap bound"),
        ("block", int, 8, "thickness block length"),
        ("cofinite-head", int, 16, "largest admissible co-finite head"),
        ("burnin", int, 8, "density burn-in prefix"),
        ("density-eps", Fraction, Fraction(1, 16), "periodic-point cell size"),
        ("density-steps", int, 10, "largest period searched"),
    ],
    "shadow": [
        ("map", str, "tent", "builtin map name or @file"),
        ("eps", float, 0.05, "tracing tolerance"),
        ("deltas", _floats, _floats(_DELTAS), "pseudo-orbit ladder"),
        ("length", int, 10, "pseudo-orbit length"),
        ("trials", int, 6, "random pseudo-orbits per delta"),
        ("target", str, "full", "trace-set target family"),
        ("candidates", int, 10_001, "tracer grid size"),
        ("challenge", str, "auto", "auto|crossing|none"),
        ("gap", int, 2, "syndetic gap bound"),
        ("block", int, 4, "thickness block length"),
        ("cofinite-head", int, 2, "largest admissible co-finite head"),
        ("burnin", int, 4, "density burn-in prefix"),
    ],
    "p-chaos": [
        ("map", str, "tent", "builtin map name or @file"),
        ("eps", float, 0.05, "tracing tolerance"),
        ("deltas", _floats, _floats(_DELTAS), "pseudo-orbit ladder"),
        ("length", int, 10, "pseudo-orbit length"),
        ("trials", int, 6, "random pseudo-orbits per delta"),
        ("candidates", int, 10_001, "tracer grid size"),
        ("challenge", str, "auto", "auto|crossing|none"),
        ("chain-delta", float, 0.02, "chain graph tolerance"),
        ("chain-nodes", int, 129, "chain graph size"),
        ("density-eps", Fraction, Fraction(1, 64), "periodic-point cell size"),
        ("density-steps", int, 10, "largest period searched"),
        ("gap", int, 2, "syndetic gap bound"),
        ("block", int, 4, "thickness block length"),
        ("cofinite-head", int, 2, "largest admissible co-finite head"),
        ("burnin", int, 4, "density burn-in prefix"),
    ],
    "report-all": [],
}


def _fb(b: bool) -> str:
    return "true" if b else "false"


def _pf(b: bool) -> str:
    return "pass" if b else "fail"


# ---------------------------------------------------------------------------
# Config plumbing.

def _load_ini(path: str) -> dict[str, dict[str, object]]:
    cfg = configparser.ConfigParser()
    try:
        with open(path) as fh:
            cfg.read_file(fh)
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}")
    except configparser.Error as e:
        raise ConfigError(f"bad config {path}: {e}")
    out: dict[str, dict[str, object]] = {}
    for section in cfg.sections():
        if section == "run":
            table = RUN_OPTIONS
        elif section in SECTIONS:
            table = SECTIONS[section]
        else:
            raise ConfigError(f"unknown config section [{section}]")
        known = {name: conv for name, conv, _, _ in table}
        vals: dict[str, object] = {}
        for key, raw in cfg.items(section):
            if key not in known:
                raise ConfigError(f"unknown option {key!r} in [{section}]")
            try:
                vals[key.replace("-", "_")] = known[key](raw)
            except (ValueError, ZeroDivisionError) as e:
                raise ConfigError(f"bad value for {key} in [{section}]: {e}")
        out[section] = vals
    return out


def _dump_config(ini: dict[str, dict[str, object]], seed: str, out: str) -> str:
    lines = ["[run]", f"seed={seed}", f"out={out}", ""]
    for section, table in SECTIONS.items():
        if not table:
            continue
        lines.append(f"[{section}]")
        merged = ini.get(section, {})
        for name, conv, default, _ in table:
            val = merged.get(name.replace("-", "_"), default)
            if conv is _floats:
                val = ",".join(repr(v) for v in val)
            lines.append(f"{name}={val}")
        lines.append("")
    return "\n".join(lines)


def _build_parser(ini: dict[str, dict[str, object]]) -> argparse.ArgumentParser:
    # Global flags live in a parent parser with SUPPRESS defaults so they can
    # be given before or after the subcommand without clobbering each other.
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS,
                        help="INI file with option defaults")
    common.add_argument("--seed", default=argparse.SUPPRESS,
                        help="seed string for randomized probes")
    common.add_argument("--out", default=argparse.SUPPRESS,
                        help="output directory")
    common.add_argument("--dump-config", action="store_true",
                        default=argparse.SUPPRESS,
                        help="print the effective configuration and exit")
    parser = argparse.ArgumentParser(
        prog="chaoskit", parents=[common],
        description="family-indexed chaos surveys for subshifts and interval maps")
    subs = parser.add_subparsers(dest="command")
    for section, table in SECTIONS.items():
        sub = subs.add_parser(section, parents=[common])
        defaults = {}
        for name, conv, default, help_ in table:
            dest = name.replace("-", "_")
            sub.add_argument(f"--{name}", type=conv, help=help_)
            defaults[dest] = ini.get(section, {}).get(dest, default)
        sub.set_defaults(**defaults)
    return parser


def _family_params(args, tail: bool = True) -> FamilyParams:
    return FamilyParams(
        gap=args.gap, block=args.block, cofinite_head=args.cofinite_head,
        burnin=args.burnin,
        tail_policy=getattr(args, "tail_policy", setfam.CENSORED) if tail
        else setfam.CENSORED)


def _load_window(spec: str, horizon: int) -> tuple[WindowSet, str]:
    spec = spec.strip()
    if spec.startswith("@"):
        try:
            text = Path(spec[1:]).read_text()
        except OSError as e:
            raise ConfigError(f"cannot read set file: {e}")
        return subshift_parse_window(text), spec
    if spec and spec[0].isdigit():
        try:
            members = [int(t) for t in spec.split(",")]
        except ValueError:
            raise ConfigError(f"bad member list {spec!r}")
        return setfam.window_set(horizon, members), spec
    try:
        return setfam.from_generator(spec, horizon), spec
    except ValueError as e:
        raise ConfigError(str(e))


def subshift_parse_window(text: str) -> WindowSet:
    try:
        return setfam.parse_window_text(text)
    except ValueError as e:
        raise ConfigError(str(e))


def _load_map(spec: str) -> tuple[interval.PLMap, str]:
    spec = spec.strip()
    if spec.startswith("@"):
        path = Path(spec[1:])
        try:
            return interval.parse_pl_text(path.read_text()), path.stem
        except OSError as e:
            raise ConfigError(f"cannot read map file: {e}")
        except ValueError as e:
            raise ConfigError(str(e))
    try:
        return interval.builtin(spec), spec
    except ValueError as e:
        raise ConfigError(str(e))


def _emit(outdir: Path, report: str, csvs: dict[str, list[list]]) -> None:
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / "report.txt").write_text(report)
    for name, rows in csvs.items():
        with open(outdir / name, "w", newline="") as fh:
            csv.writer(fh, lineterminator="\n").writerows(rows)


def _verdict_cells(v) -> list:
    return [v.max_gap if v.max_gap is not None else "",
            v.longest_block, v.cofinite_head, ";".join(v.tags())]


# ---------------------------------------------------------------------------
# Core runners.  Each returns (report text, csv files, one-line headline).

def run_classify(a: WindowSet, source: str, params: FamilyParams):
    if not a.members:
        raise ConfigError("empty set: nothing to classify")
    v = setfam.classify(a, params)
    report = "\n".join([
        "window set classification",
        f"source: {source}",
        f"horizon={a.horizon} size={len(a)}",
        f"max_gap={v.max_gap} longest_block={v.longest_block} "
        f"cofinite_head={v.cofinite_head}",
        f"lower_density={v.lower_density} upper_density={v.upper_density}",
        f"families: syndetic={_fb(v.syndetic)} thick={_fb(v.thick)} "
        f"cofinite={_fb(v.cofinite)}",
        f"derived: thickly_syndetic={_fb(v.thickly_syndetic)} "
        f"piecewise_syndetic={_fb(v.piecewise_syndetic)}",
        f"params: gap={params.gap} block={params.block} "
        f"cofinite_head={params.cofinite_head} burnin={params.burnin} "
        f"tail_policy={params.tail_policy}",
        "",
    ])
    rows = [["n", "member"]]
    rows += [[n, 1 if n in a else 0] for n in range(a.horizon)]
    headline = (f"syndetic={_fb(v.syndetic)} thick={_fb(v.thick)} "
                f"cofinite={_fb(v.cofinite)}")
    return report, {"set.csv": rows}, headline


def run_spacing(p: WindowSet, source: str, word_len: int, n_max: int,
                params: FamilyParams, k_max: int, witness: str):
    if not p.members:
        raise ConfigError("empty spacing set: nothing to survey")
    oracle = subshift.SpacingShift(p)
    rep = subshift.fs_transitivity_report(oracle, word_len, n_max, params)
    dp = subshift.spacing_dense_periodic(p, k_max)
    lines = [
        "spacing shift survey",
        f"p: {source} horizon={p.horizon} size={len(p)}",
        f"word_len={word_len} pairs={len(rep.rows)} n_max={n_max}",
        f"panels: all_syndetic={_fb(rep.all_syndetic)} "
        f"all_thick={_fb(rep.all_thick)} "
        f"all_thickly_syndetic={_fb(rep.all_thickly_syndetic)} "
        f"all_cofinite={_fb(rep.all_cofinite)}",
    ]
    pv = rep.p_verdict
    lines.append(
        f"p_set: syndetic={_fb(pv.syndetic)} thick={_fb(pv.thick)} "
        f"thickly_syndetic={_fb(pv.thickly_syndetic)} "
        f"cofinite={_fb(pv.cofinite)}")
    lines.append(
        f"dense_periodic: passed={_fb(dp.passed)} witnesses={len(dp.witnesses)} "
        f"failures={len(dp.failures)} skipped={len(dp.skipped)} k_max={dp.k_max}")
    headline = (f"all_syndetic={_fb(rep.all_syndetic)} "
                f"all_thick={_fb(rep.all_thick)} "
                f"dense_periodic={_pf(dp.passed)}")
    if witness:
        try:
            u_s, k_s, v_s = witness.split(",")
            w = subshift.spacing_witness(
                subshift.parse_word(u_s), int(k_s), subshift.parse_word(v_s), p)
        except ValueError as e:
            raise ConfigError(f"bad witness triple {witness!r}: {e}")
        lines.append(
            f"witness: word={subshift.format_word(w.word)} k={w.k} "
            f"member={_fb(w.member)} block_start={_fb(w.block_start)}")
    lines.append("")
    rows = [["u", "v", "members", "max_gap", "longest_block", "cofinite_head",
             "syndetic", "thick", "thickly_syndetic", "cofinite"]]
    for r in rep.rows:
        rows.append([subshift.format_word(r.u), subshift.format_word(r.v),
                     ";".join(str(m) for m in r.gaps.members),
                     r.verdict.max_gap if r.verdict.max_gap is not None else "",
                     r.verdict.longest_block, r.verdict.cofinite_head,
                     _fb(r.verdict.syndetic), _fb(r.verdict.thick),
                     _fb(r.verdict.thickly_syndetic), _fb(r.verdict.cofinite)])
    return "\n".join(lines), {"pairs.csv": rows}, headline


def run_sturmian(prefix_len: int, word_len: int, word: str,
                 params: FamilyParams):
    spec = subshift.golden_spec(prefix_len)
    oracle = subshift.SturmianShift(spec)
    lang = subshift.language(oracle, word_len)
    counts = {n: sum(1 for w in lang if len(w) == n)
              for n in range(1, word_len + 1)}
    complexity_ok = all(counts[n] == n + 1 for n in counts)
    word = subshift.parse_word(word)
    if not word:
        raise ConfigError("empty word: nothing to locate")
    occ = subshift.occurrence_gaps(spec, word)
    if not occ.members:
        raise ConfigError(f"word {word} does not occur in the prefix")
    v = setfam.classify(occ, params)
    lines = [
        "sturmian factor survey (golden rotation)",
        f"alpha={spec.alpha} ulp={spec.ulp} prefix_len={spec.prefix_len}",
        "factors: " + " ".join(f"n={n}:{counts[n]}" for n in sorted(counts)),
        f"complexity_matches_n_plus_1={_fb(complexity_ok)}",
        f"word={word} occurrences={len(occ)} max_gap={v.max_gap}",
        f"families: syndetic={_fb(v.syndetic)} thick={_fb(v.thick)} "
        f"cofinite={_fb(v.cofinite)}",
        "",
    ]
    factor_rows = [["n", "count"]] + [[n, counts[n]] for n in sorted(counts)]
    occ_rows = [["n", "member"]]
    occ_rows += [[n, 1 if n in occ else 0] for n in range(occ.horizon)]
    headline = (f"complexity={'n+1' if complexity_ok else 'other'} "
                f"word={word} syndetic={_fb(v.syndetic)}")
    return ("\n".join(lines),
            {"factors.csv": factor_rows, "occurrences.csv": occ_rows},
            headline)


def run_interval(m: interval.PLMap, name: str, params: interval.SurveyParams):
    survey = interval.devaney_report(m, params, map_name=name)
    fams = " ".join(f"{k}={_pf(survey.verdicts[k])}"
                    for k in ("Fs", "Ft", "Fts", "Fcf"))
    lines = [
        f"interval map survey: {name}",
        f"domain=[{m.lo},{m.hi}] breakpoints={len(m.xs)}",
        f"fixed_points={','.join(str(p) for p in survey.fixed_points) or '-'} "
        f"segments={','.join(f'[{a},{b}]' for a, b in survey.fixed_segments) or '-'}",
        f"density: covered={survey.density.covered_fraction} "
        f"cells={survey.density.cells} period_reached={survey.density.period_reached}",
        f"families: {fams}",
        "anomalies: " + ("; ".join(survey.anomalies) or "none"),
        "",
    ]
    sens_rows = [["cell", "a", "b", "max_gap", "longest_block",
                  "cofinite_head", "tags"]]
    for i, (u, v) in enumerate(survey.sensitivity):
        sens_rows.append([i, str(u[0]), str(u[1])] + _verdict_cells(v))
    trans_rows = [["i", "j", "max_gap", "longest_block", "cofinite_head", "tags"]]
    for i, j, v in survey.transitivity:
        trans_rows.append([i, j] + _verdict_cells(v))
    dens_rows = [["epsilon", "n_max", "cells", "covered_fraction",
                  "period_reached"],
                 [str(survey.density.epsilon), survey.density.n_max,
                  survey.density.cells, str(survey.density.covered_fraction),
                  survey.density.period_reached]]
    return ("\n".join(lines),
            {"sensitivity.csv": sens_rows, "transitivity.csv": trans_rows,
             "density.csv": dens_rows},
            fams)


def _challenges_for(name: str, choice: str):
    if choice == "none":
        return ()
    if choice == "crossing":
        return (shadowing.crossing_challenge(),)
    if choice == "auto":
        return (shadowing.crossing_challenge(),) if name == "example211" else ()
    raise ConfigError(f"unknown challenge {choice!r}")


def _probe_rows(probe: shadowing.ProbeResult) -> list[list]:
    rows = [["delta", "label", "valid_count", "tracer", "cardinality",
             "max_gap", "tags", "ok", "challenge"]]
    for r in probe.rows:
        rows.append([repr(r.delta), r.label, r.valid_count, repr(r.tracer),
                     r.cardinality,
                     r.trace_max_gap if r.trace_max_gap is not None else "",
                     ";".join(r.tags), _fb(r.ok), _fb(r.challenge)])
    return rows


def _probe_lines(probe: shadowing.ProbeResult) -> list[str]:
    lines = [
        f"eps={probe.eps!r} target={probe.target} length={probe.length} "
        f"candidates={probe.n_candidates} trials={probe.trials}",
        "ladder=" + ",".join(repr(d) for d in probe.deltas),
        f"verdict={probe.verdict} delta_pass="
        f"{probe.delta_pass!r}" if probe.delta_pass is not None
        else f"verdict={probe.verdict} delta_pass=-",
    ]
    w = probe.witness
    if w is not None:
        lines.append(
            f"witness: delta={w.delta!r} label={w.label} "
            f"cardinality={w.cardinality}/{probe.length} tags={';'.join(w.tags) or '-'}")
    else:
        lines.append("witness: none")
    return lines


def run_shadow(m: interval.PLMap, name: str, *, eps, deltas, length, trials,
               target, candidates, challenge, params: FamilyParams, seed: str):
    system = shadowing.IntervalSystem(m, name=name)
    probe = shadowing.fg_shadowing_probe(
        system, eps, deltas, length, trials, target=target, params=params,
        n_candidates=candidates, seed=f"{seed}/shadow/{name}",
        challenges=_challenges_for(name, challenge))
    lines = [f"tracing probe: {name}"] + _probe_lines(probe) + [""]
    return ("\n".join(lines), {"probe.csv": _probe_rows(probe)},
            f"probe={probe.verdict}")


def run_pchaos(m: interval.PLMap, name: str, *, eps, deltas, length, trials,
               candidates, challenge, chain_delta, chain_nodes,
               density_eps, density_steps, params: FamilyParams, seed: str):
    rep = shadowing.p_chaos_report(
        m, name, eps=eps, deltas=deltas, length=length, trials=trials,
        n_candidates=candidates, chain_delta=chain_delta,
        chain_nodes=chain_nodes, seed=f"{seed}/p-chaos/{name}", params=params,
        density_epsilon=density_eps, density_n_max=density_steps,
        challenges=_challenges_for(name, challenge))
    lines = [f"periodic-density and tracing report: {name}"]
    lines += list(rep.notes)
    lines.append(f"evidence={_fb(rep.evidence)}")
    lines.append("")
    files = {"probe.csv": _probe_rows(rep.probe),
             "aux_probe.csv": _probe_rows(rep.aux_probe)}
    headline = (f"probe={rep.probe.verdict} evidence={_fb(rep.evidence)} "
                f"chain_mixing={_fb(rep.chain_mixing)}")
    return "\n".join(lines), files, headline


# ---------------------------------------------------------------------------
# Subcommand adapters.

def _cmd_classify(args, outdir: Path, seed: str) -> str:
    a, source = _load_window(args.members, args.horizon)
    report, files, headline = run_classify(a, source, _family_params(args))
    _emit(outdir, report, files)
    return headline


def _cmd_spacing(args, outdir: Path, seed: str) -> str:
    p, source = _load_window(args.p, args.horizon)
    report, files, headline = run_spacing(
        p, source, args.word_len, args.n_max, _family_params(args),
        args.k_max, args.witness)
    _emit(outdir, report, files)
    return headline


def _cmd_sturmian(args, outdir: Path, seed: str) -> str:
    report, files, headline = run_sturmian(
        args.prefix_len, args.word_len, args.word, _family_params(args))
    _emit(outdir, report, files)
    return headline


def _survey_params(args) -> interval.SurveyParams:
    try:
        return interval.SurveyParams(
            cells=args.cells, margin=args.margin, delta=args.delta,
            n_steps=args.steps,
            family=FamilyParams(gap=args.gap, block=args.block,
                                cofinite_head=args.cofinite_head,
                                burnin=args.burnin),
            density_epsilon=args.density_eps,
            density_n_max=args.density_steps)
    except ValueError as e:
        raise ConfigError(str(e))


def _cmd_interval(args, outdir: Path, seed: str) -> str:
    m, name = _load_map(args.map)
    report, files, headline = run_interval(m, name, _survey_params(args))
    _emit(outdir, report, files)
    return headline


def _cmd_shadow(args, outdir: Path, seed: str) -> str:
    m, name = _load_map(args.map)
    if args.target not in shadowing.TARGETS:
        raise ConfigError(f"unknown target {args.target!r}")
    report, files, headline = run_shadow(
        m, name, eps=args.eps, deltas=args.deltas, length=args.length,
        trials=args.trials, target=args.target, candidates=args.candidates,
        challenge=args.challenge, params=_family_params(args, tail=False),
        seed=seed)
    _emit(outdir, report, files)
    return headline


def _cmd_pchaos(args, outdir: Path, seed: str) -> str:
    m, name = _load_map(args.map)
    report, files, headline = run_pchaos(
        m, name, eps=args.eps, deltas=args.deltas, length=args.length,
        trials=args.trials, candidates=args.candidates,
        challenge=args.challenge, chain_delta=args.chain_delta,
        chain_nodes=args.chain_nodes, density_eps=args.density_eps,
        density_steps=args.density_steps,
        params=_family_params(args, tail=False), seed=seed)
    _emit(outdir, report, files)
    return headline


def _cmd_report_all(args, outdir: Path, seed: str) -> str:
    classify_params = FamilyParams(gap=2, block=8, cofinite_head=8, burnin=8)
    survey_s = interval.SurveyParams()
    survey_tent = interval.SurveyParams(
        delta=Fraction(1, 4), density_epsilon=Fraction(1, 64))
    survey_eg = interval.SurveyParams()
    probe_params = FamilyParams(gap=2, block=4, cofinite_head=2, burnin=4)
    jobs = []

    a = setfam.from_generator("complement(powers(2))", 256)
    jobs.append(("classify_nonpowers",
                 run_classify(a, "complement(powers(2))", classify_params)))

    evens = setfam.from_generator("evens", 128)
    jobs.append(("spacing_evens",
                 run_spacing(evens, "evens", 3, 64, classify_params, 128, "")))

    nonpow = setfam.from_generator("complement(powers(2))", 128)
    jobs.append(("spacing_nonpowers",
                 run_spacing(nonpow, "complement(powers(2))", 3, 64,
                             classify_params, 128, "1,4,1")))

    jobs.append(("sturmian_golden",
                 run_sturmian(10_000, 8, "010",
                              FamilyParams(gap=34, block=8, cofinite_head=8,
                                           burnin=8))))

    for map_name, sp in (("S", survey_s), ("tent", survey_tent),
                         ("example211", survey_eg)):
        jobs.append((f"interval_{map_name}",
                     run_interval(interval.builtin(map_name), map_name, sp)))

    jobs.append(("pchaos_tent", run_pchaos(
        interval.builtin("tent"), "tent", eps=0.05,
        deltas=_floats(_DELTAS), length=10, trials=6, candidates=10_001,
        challenge="none", chain_delta=0.02, chain_nodes=129,
        density_eps=Fraction(1, 64), density_steps=10,
        params=probe_params, seed=seed)))

    jobs.append(("shadow_example211", run_shadow(
        interval.builtin("example211"), "example211", eps=0.05,
        deltas=_floats(_DELTAS), length=64, trials=6, target="full",
        candidates=2001, challenge="crossing", params=probe_params,
        seed=seed)))

    summary = []
    for sub, (report, files, headline) in jobs:
        _emit(outdir / sub, report, files)
        summary.append(f"{sub}: {headline}")
    (outdir / "summary.txt").write_text("\n".join(summary) + "\n")
    return f"{len(jobs)} fixture reports"


_HANDLERS = {
    "classify-set": _cmd_classify,
    "spacing": _cmd_spacing,
    "sturmian": _cmd_sturmian,
    "interval-devaney": _cmd_interval,
    "shadow": _cmd_shadow,
    "p-chaos": _cmd_pchaos,
    "report-all": _cmd_report_all,
}


def _main(argv: list[str]) -> int:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    ini = _load_ini(known.config) if known.config else {}
    parser = _build_parser(ini)
    args = parser.parse_args(argv)
    run_ini = ini.get("run", {})
    seed = getattr(args, "seed", None) or str(run_ini.get("seed", "42"))
    out = getattr(args, "out", None) or str(run_ini.get("out", "."))
    if getattr(args, "dump_config", False):
        sys.stdout.write(_dump_config(ini, seed, out))
        return 0
    if not args.command:
        parser.print_usage(sys.stderr)
        raise ConfigError("no subcommand given")
    headline = _HANDLERS[args.command](args, Path(out), seed)
    print(f"{args.command}: {headline}")
    return 0


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        return _main(argv)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except BudgetError as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
