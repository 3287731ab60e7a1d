"""Batch front end: direct, inverse, roundtrip and validate subcommands.

Configuration is a JSON file with the sections

    {
      "potential": {"family": "sech_chirp", "A": 1.65, "gamma": 0.1},
      "grid": {"x_min": -35.0, "x_max": 35.0, "nodes_per_unit": 2500},
      "direct": {"N": 160,
                 "rho_sampling": {"scheme": "uniform",
                                  "segment": [-30.0, 30.0], "count": 2000}},
      "inverse": {"N": 50, "l": 5.0, "x_nodes_per_unit": 10},
      "output_dir": "out"
    }

Families: sech_chirp (fields A, gamma), gauss, gauss_phase, sampled
(field path pointing at a potential CSV).  The alternative sampling
scheme is {"scheme": "log_symmetric", "min_exp": ..., "max_exp": ...,
"count": ...} with an even count, half per sign.

Exit codes: 0 success; 1 I/O or parse failure; 2 potential decay
violation; 3 seed nonvanishing violation; 4 rank deficiency; 5
degenerate recovery denominator; 6 validation failure.  Every output
directory receives a copy of the resolved configuration, and all files
are written with shortest round-trip float formatting so identical
inputs produce byte-identical outputs.
"""

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .direct import (
    ScatteringData,
    log_symmetric_rho,
    read_discrete_json,
    read_scattering_csv,
    solve_direct,
    uniform_rho,
    write_discrete_json,
    write_scattering_csv,
)
from .errors import (
    AknsError,
    ConfigError,
    DecayError,
    DegenerateDenominator,
    NonvanishingAssumptionViolated,
    RankDeficiency,
)
from .inverse import InverseConfig, solve_inverse
from .numerics import Grid
from .potentials import (
    GaussPair,
    GaussPhasePair,
    Sampled,
    SechChirp,
    sample_potential,
    write_potential_csv,
)
from .seeds import compute_seed_set
from .serialize import fmt
from .spps import Family, write_coefficient_csv

EXIT_IO = 1
EXIT_DECAY = 2
EXIT_NONVANISHING = 3
EXIT_RANK = 4
EXIT_DENOMINATOR = 5
EXIT_VALIDATION = 6

VALIDATE_TOLERANCE = 1e-8

_FAMILIES = {
    "sech_chirp": (SechChirp, ("A", "gamma")),
    "gauss": (GaussPair, ()),
    "gauss_phase": (GaussPhasePair, ()),
    "sampled": (Sampled, ("path",)),
}


@dataclass(frozen=True)
class RunConfig:
    """Parsed configuration plus the resolved dictionary for echoing."""

    potential: object
    grid_section: dict | None
    direct_section: dict | None
    inverse_section: dict | None
    output_dir: Path | None
    resolved: dict


def _section(raw: dict, name: str) -> dict:
    value = raw.get(name)
    if value is not None and not isinstance(value, dict):
        raise ConfigError(f"section '{name}' must be an object")
    return value


def _build_potential(section: dict):
    if not isinstance(section, dict) or "family" not in section:
        raise ConfigError("potential section needs a 'family' key")
    family = section["family"]
    if family not in _FAMILIES:
        raise ConfigError(
            f"unknown potential family '{family}'; "
            f"choose from {sorted(_FAMILIES)}")
    cls, keys = _FAMILIES[family]
    extra = set(section) - {"family", *keys}
    if extra:
        raise ConfigError(f"unexpected potential keys {sorted(extra)}")
    kwargs = {k: section[k] for k in keys if k in section}
    try:
        return cls(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad potential parameters: {exc}") from exc


def load_config(path: str | Path) -> RunConfig:
    """Read and validate a JSON run configuration."""
    try:
        with open(path, encoding="utf-8") as handle:
            raw = json.load(handle)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config root must be an object")
    if "potential" not in raw:
        raise ConfigError("config needs a 'potential' section")
    potential = _build_potential(raw["potential"])
    out = raw.get("output_dir")
    resolved = dict(raw)
    inverse = _section(raw, "inverse")
    if inverse is not None:
        merged = {"l": 5.0, "x_nodes_per_unit": 10}
        merged.update(inverse)
        resolved["inverse"] = merged
        inverse = merged
    return RunConfig(
        potential=potential,
        grid_section=_section(raw, "grid"),
        direct_section=_section(raw, "direct"),
        inverse_section=inverse,
        output_dir=Path(out) if out is not None else None,
        resolved=resolved,
    )


def _build_grid(section: dict | None) -> Grid:
    if section is None:
        raise ConfigError("config needs a 'grid' section")
    try:
        return Grid.build(float(section["x_min"]), float(section["x_max"]),
                          int(section["nodes_per_unit"]))
    except KeyError as exc:
        raise ConfigError(f"grid section missing {exc}") from exc


def _build_rho(section: dict | None) -> np.ndarray:
    if section is None or "N" not in section or "rho_sampling" not in section:
        raise ConfigError("config needs direct.N and direct.rho_sampling")
    sampling = section["rho_sampling"]
    scheme = sampling.get("scheme")
    try:
        if scheme == "uniform":
            lo, hi = sampling["segment"]
            return uniform_rho(float(lo), float(hi), int(sampling["count"]))
        if scheme == "log_symmetric":
            return log_symmetric_rho(float(sampling["min_exp"]),
                                     float(sampling["max_exp"]),
                                     int(sampling["count"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"bad rho_sampling parameters: {exc}") from exc
    raise ConfigError(
        f"rho_sampling.scheme must be 'uniform' or 'log_symmetric', "
        f"got {scheme!r}")


def _build_inverse(section: dict | None) -> InverseConfig:
    if section is None or "N" not in section:
        raise ConfigError("config needs inverse.N")
    try:
        return InverseConfig(order=int(section["N"]),
                             half_width=float(section["l"]),
                             x_nodes_per_unit=int(section["x_nodes_per_unit"]))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad inverse parameters: {exc}") from exc


def _prepare_out(config: RunConfig, override: str | None) -> Path:
    out = Path(override) if override else config.output_dir
    if out is None:
        raise ConfigError("no output directory (set output_dir or pass --out)")
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "config.json", "w", encoding="utf-8") as handle:
        json.dump(config.resolved, handle, indent=2, sort_keys=True)
        handle.write("\n")
    return out


class _StageFailure(Exception):
    """Carries an exit code and a stage-labelled message."""

    def __init__(self, code: int, stage: str, cause: Exception):
        super().__init__(f"{stage}: {cause}")
        self.code = code


def _run_direct_pipeline(config: RunConfig):
    grid = _build_grid(config.grid_section)
    rho = _build_rho(config.direct_section)
    order = int(config.direct_section["N"])
    try:
        pair = sample_potential(config.potential, grid)
    except DecayError as exc:
        raise _StageFailure(EXIT_DECAY, "potential sampling", exc) from exc
    except (OSError, ValueError, AknsError) as exc:
        raise _StageFailure(EXIT_IO, "potential sampling", exc) from exc
    try:
        seeds = compute_seed_set(pair)
    except NonvanishingAssumptionViolated as exc:
        raise _StageFailure(EXIT_NONVANISHING, "seed computation",
                            exc) from exc
    except AknsError as exc:
        raise _StageFailure(EXIT_IO, "seed computation", exc) from exc
    try:
        tables, data = solve_direct(pair, seeds, order, rho)
    except AknsError as exc:
        raise _StageFailure(EXIT_IO, "scattering computation", exc) from exc
    return pair, tables, data


def _write_direct_outputs(out: Path, tables, data) -> None:
    write_scattering_csv(data.samples, out / "scattering.csv")
    write_discrete_json(data.upper, data.lower, out / "discrete.json")
    write_coefficient_csv(out / "coefficient_decay.csv", tables[Family.A])
    print(f"wrote {out / 'scattering.csv'} ({len(data.samples)} samples)")
    print(f"wrote {out / 'discrete.json'} ({len(data.upper)} upper, "
          f"{len(data.lower)} lower eigenvalues)")
    print(f"wrote {out / 'coefficient_decay.csv'}")


def cmd_direct(config: RunConfig, out_dir: str | None) -> int:
    """Solve the direct problem and emit the three data files."""
    out = _prepare_out(config, out_dir)
    _, tables, data = _run_direct_pipeline(config)
    _write_direct_outputs(out, tables, data)
    return 0


def _write_inverse_outputs(out: Path, result) -> None:
    write_potential_csv(result.pair, out / "recovered.csv")
    with open(out / "residual.csv", "w", encoding="utf-8", newline="") as fh:
        fh.write("x,res1,res2\n")
        for v in result.vectors:
            fh.write(f"{fmt(v.x)},{fmt(v.residual1)},{fmt(v.residual2)}\n")
    print(f"wrote {out / 'recovered.csv'} "
          f"({result.pair.grid.nodes.size} nodes)")
    print(f"wrote {out / 'residual.csv'}")


def _solve_inverse_guarded(data, inverse_config, threads):
    try:
        return solve_inverse(data, inverse_config, threads=threads)
    except RankDeficiency as exc:
        raise _StageFailure(EXIT_RANK, "coefficient solve", exc) from exc
    except DegenerateDenominator as exc:
        raise _StageFailure(EXIT_DENOMINATOR, "potential recovery",
                            exc) from exc


def cmd_inverse(config: RunConfig, out_dir: str | None, scattering: str,
                discrete: str | None, threads: int) -> int:
    """Reconstruct the potentials from scattering data files."""
    inverse_config = _build_inverse(config.inverse_section)
    out = _prepare_out(config, out_dir)
    try:
        samples = read_scattering_csv(scattering)
    except (OSError, ValueError, AknsError) as exc:
        raise _StageFailure(EXIT_IO, "scattering CSV parse", exc) from exc
    upper: list = []
    lower: list = []
    if discrete is None:
        sibling = Path(scattering).with_name("discrete.json")
        if sibling.exists():
            discrete = str(sibling)
    if discrete is None:
        print("warning: no discrete data file; "
              "proceeding with continuum rows only", file=sys.stderr)
    else:
        try:
            upper, lower = read_discrete_json(discrete)
        except (OSError, ValueError, KeyError, AknsError) as exc:
            raise _StageFailure(EXIT_IO, "discrete JSON parse", exc) from exc
    try:
        data = ScatteringData(samples=samples, upper=upper, lower=lower)
    except AknsError as exc:
        raise _StageFailure(EXIT_IO, "scattering data assembly",
                            exc) from exc
    result = _solve_inverse_guarded(data, inverse_config, threads)
    _write_inverse_outputs(out, result)
    return 0


def cmd_roundtrip(config: RunConfig, out_dir: str | None,
                  threads: int) -> int:
    """Direct solve, inverse solve, and error report against the truth."""
    inverse_config = _build_inverse(config.inverse_section)
    out = _prepare_out(config, out_dir)
    _, tables, data = _run_direct_pipeline(config)
    _write_direct_outputs(out, tables, data)
    result = _solve_inverse_guarded(data, inverse_config, threads)
    _write_inverse_outputs(out, result)

    recon = result.pair.grid
    q_true, r_true = config.potential.evaluate(recon.nodes)
    err_q = np.abs(result.pair.q.values - q_true)
    err_r = np.abs(result.pair.r.values - r_true)
    report = {"max_abs_err_q": float(err_q.max()),
              "max_abs_err_r": float(err_r.max())}
    with open(out / "error_report.json", "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    with open(out / "errors.csv", "w", encoding="utf-8", newline="") as fh:
        fh.write("x,abs_err_q,abs_err_r\n")
        for x, eq, er in zip(recon.nodes, err_q, err_r):
            fh.write(f"{fmt(x)},{fmt(eq)},{fmt(er)}\n")
    print(f"wrote {out / 'error_report.json'} "
          f"(max |q err| = {fmt(report['max_abs_err_q'])}, "
          f"max |r err| = {fmt(report['max_abs_err_r'])})")
    print(f"wrote {out / 'errors.csv'}")
    return 0


def cmd_validate(scattering: str) -> int:
    """Report the unitarity residual of a scattering CSV."""
    try:
        samples = read_scattering_csv(scattering)
    except (OSError, ValueError, AknsError) as exc:
        raise _StageFailure(EXIT_IO, "scattering CSV parse", exc) from exc
    if not samples:
        raise _StageFailure(EXIT_IO, "scattering CSV parse",
                            ValueError("no samples in file"))
    worst = 0.0
    for s in samples:
        residual = s.unitarity_residual
        worst = max(worst, residual)
        print(f"rho={fmt(s.rho)} residual={fmt(residual)}")
    print(f"max residual = {fmt(worst)} (tolerance {VALIDATE_TOLERANCE})")
    if worst > VALIDATE_TOLERANCE:
        print("validation FAILED", file=sys.stderr)
        return EXIT_VALIDATION
    print("validation passed")
    return 0


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="akns",
        description="Direct and inverse scattering for the AKNS system "
                    "with complex decaying potentials.")
    sub = parser.add_subparsers(dest="command", required=True)

    direct = sub.add_parser(
        "direct", help="solve the direct problem, write scattering files")
    inverse = sub.add_parser(
        "inverse", help="recover potentials from scattering files")
    roundtrip = sub.add_parser(
        "roundtrip", help="direct + inverse + error report vs the truth")
    validate = sub.add_parser(
        "validate", help="check unitarity of a scattering CSV")

    for p in (direct, inverse, roundtrip):
        p.add_argument("--config", required=True,
                       help="JSON run configuration")
        p.add_argument("--out", help="output directory "
                                     "(overrides config output_dir)")
    for p in (inverse, roundtrip):
        p.add_argument("--threads", type=int, default=1,
                       help="worker threads for per-node solves")
    inverse.add_argument("--scattering", required=True,
                         help="scattering CSV from a direct run")
    inverse.add_argument("--discrete",
                         help="discrete-data JSON (default: discrete.json "
                              "next to the scattering CSV)")
    validate.add_argument("--scattering", required=True,
                          help="scattering CSV to check")
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "validate":
            return cmd_validate(args.scattering)
        config = load_config(args.config)
        if args.command == "direct":
            return cmd_direct(config, args.out)
        if args.command == "inverse":
            return cmd_inverse(config, args.out, args.scattering,
                               args.discrete, args.threads)
        return cmd_roundtrip(config, args.out, args.threads)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except _StageFailure as exc:
        print(f"error in {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
