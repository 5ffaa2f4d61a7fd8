"""Command-line front end: configure, run and render certifications.

Exit codes:
    0  verdict weakly_discerning
    1  verdict violated or inconclusive
    2  usage / configuration error
    3  resource limit (dimension or degree cap) exceeded
    4  input error (missing or corrupt report file)
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from dataclasses import dataclass

from .discern import VERDICT_PASS, certify_weak_discernibility
from .errors import DegreeCapError, DimensionCapError

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_INPUT = 4


@dataclass
class RunConfig:
    relation: str = "T"
    n_particles: int = 2
    two_s: int = 1
    sector: str = "full"
    n_pure_samples: int = 100
    n_mixed_samples: int = 20
    mixed_rank: int = 2
    max_degree: int = 6
    seed: int = 0
    tol: float = 1e-8
    out: str = "report.json"
    format: str = "json"

    def validate(self):
        if self.relation not in ("C", "T"):
            raise ValueError(f"unknown relation {self.relation!r}")
        if self.n_particles < 2:
            raise ValueError("need --particles >= 2")
        if self.relation == "T" and self.two_s < 1:
            raise ValueError("relation T needs --two-s >= 1")
        for name in ("n_pure_samples", "n_mixed_samples", "mixed_rank",
                     "max_degree"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")
        if self.sector not in ("full", "bose", "fermi"):
            raise ValueError(f"unknown sector {self.sector!r}")
        if self.format not in ("json", "markdown"):
            raise ValueError(f"unknown format {self.format!r}")


# flag destinations that map onto RunConfig fields
_FLAG_FIELDS = {
    "relation": "relation",
    "particles": "n_particles",
    "two_s": "two_s",
    "sector": "sector",
    "pure_samples": "n_pure_samples",
    "mixed_samples": "n_mixed_samples",
    "mixed_rank": "mixed_rank",
    "max_degree": "max_degree",
    "seed": "seed",
    "tol": "tol",
    "out": "out",
    "format": "format",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="discernlab",
        description="Certify weak-discernibility relations between "
                    "identical quantum particles.")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run a certification")
    verify.add_argument("--config", help="JSON config file; flags override it")
    verify.add_argument("--relation", choices=["C", "T"])
    verify.add_argument("--particles", type=int)
    verify.add_argument("--two-s", type=int, dest="two_s")
    verify.add_argument("--sector", choices=["full", "bose", "fermi"])
    verify.add_argument("--pure-samples", type=int, dest="pure_samples")
    verify.add_argument("--mixed-samples", type=int, dest="mixed_samples")
    verify.add_argument("--mixed-rank", type=int, dest="mixed_rank")
    verify.add_argument("--max-degree", type=int, dest="max_degree")
    verify.add_argument("--seed", type=int)
    verify.add_argument("--tol", type=float)
    verify.add_argument("--out")
    verify.add_argument("--format", choices=["json", "markdown"])

    render = sub.add_parser("render", help="render a report file")
    render.add_argument("path")
    render.add_argument("--format", choices=["json", "markdown"],
                        default="markdown")
    return parser


def load_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        with open(args.config) as fh:
            data = json.load(fh)
        for key, value in data.items():
            if not hasattr(cfg, key):
                raise ValueError(f"unknown config key {key!r}")
            setattr(cfg, key, value)
    for flag, field_name in _FLAG_FIELDS.items():
        value = getattr(args, flag, None)
        if value is not None:
            setattr(cfg, field_name, value)
    cfg.validate()
    return cfg


def atomic_write(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def report_to_markdown(data: dict) -> str:
    lines = [
        f"# Discernibility report: relation {data['relation']}",
        "",
        f"- verdict: **{data['verdict']}**",
        f"- mode: {data['mode']}",
        f"- particles: {data['n_particles']}, 2s = {data['two_s']}, "
        f"sector = {data['sector']}",
        f"- samples: {data['samples']}",
        f"- seed: {data['seed']}, tolerances: {data['tolerances']}",
        f"- permutation invariant: {data['permutation_invariant']}",
        "",
        "| a | b | reflexive | off-diagonal fails | witness |",
        "|---|---|-----------|--------------------|---------|",
    ]
    for p in data["pairs"]:
        lines.append(
            f"| {p['a']} | {p['b']} | {p['reflexive']} "
            f"| {p['off_diagonal_fails']} | {p['witness']} |")
    if data.get("spectrum"):
        lines.append("")
        lines.append("Spectrum of the off-diagonal operator "
                     "(eigenvalue in units of hbar^2, multiplicity):")
        for lam, mult in data["spectrum"]:
            lines.append(f"- {lam:.10g} (x{mult})")
    if "timestamp" in data:
        lines.append("")
        lines.append(f"Generated: {data['timestamp']}")
    return "\n".join(lines) + "\n"


def run_verify(cfg: RunConfig) -> int:
    if cfg.relation == "T":
        report = certify_weak_discernibility(
            "T",
            n_particles=cfg.n_particles,
            two_s=cfg.two_s,
            sector=cfg.sector,
            n_pure_samples=cfg.n_pure_samples,
            n_mixed_samples=cfg.n_mixed_samples,
            mixed_rank=cfg.mixed_rank,
            seed=cfg.seed,
            tol=cfg.tol,
        )
    else:
        report = certify_weak_discernibility(
            "C",
            n_particles=cfg.n_particles,
            two_s=cfg.two_s,
            n_samples=max(cfg.n_pure_samples, 1),
            max_degree=cfg.max_degree,
            seed=cfg.seed,
        )
    data = report.to_dict()
    data["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%S%z")
    if cfg.format == "markdown":
        atomic_write(cfg.out, report_to_markdown(data))
    else:
        atomic_write(cfg.out, json.dumps(data, indent=2, sort_keys=True) + "\n")
    if report.verdict == VERDICT_PASS:
        print(f"verdict: {report.verdict} (report: {cfg.out})")
        return EXIT_OK
    print(f"verdict: {report.verdict} (report: {cfg.out})", file=sys.stderr)
    return EXIT_VIOLATED


def run_render(path: str, fmt: str) -> int:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read report {path!r}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if fmt == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(report_to_markdown(data), end="")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    if args.command == "render":
        return run_render(args.path, args.format)
    try:
        cfg = load_config(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return run_verify(cfg)
    except (DimensionCapError, DegreeCapError) as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
