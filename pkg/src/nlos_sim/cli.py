"""Command-line front end.

Two subcommands:

* map:      SNR map and best placement for one geometry
* campaign: Monte Carlo campaign over random geometries

Exit codes: 0 on success, 2 for invalid flags/config/geometry, 1 for
unexpected runtime failures.  The worker count for campaigns comes
from the NLOS_SIM_THREADS environment variable (0 = one worker per
CPU; unset = sequential).
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import os
import sys
from pathlib import Path
from typing import Any, Mapping, Sequence

from . import __version__
from .direct_link import ThresholdModel
from .geometry import DegenerateGeometryError, Environment, Point2
from .montecarlo import CampaignResult, ScenarioConfig, run_campaign
from .mr_channel import MrOrientationPolicy
from .placement import (
    PlacementResult,
    Technology,
    optimize_irs,
    optimize_mr,
    snr_map_export,
)
from .radio import RadioConfig

MAP_HEADER = ("x_m", "y_m", "snr_db", "feasible")
RECORDS_HEADER = (
    "run_id",
    "env_size_m",
    "n_elements",
    "technology",
    "src_x",
    "src_y",
    "dst_x",
    "dst_y",
    "best_x",
    "best_y",
    "best_snr_db",
    "feasible",
)
SUMMARY_HEADER = (
    "env_size_m",
    "n_elements",
    "technology",
    "min_db",
    "q1_db",
    "median_db",
    "q3_db",
    "max_db",
    "mean_db",
    "feasible_rate",
)

_RADIO_KEYS = {
    "wavelength_m": (int, float),
    "bandwidth_hz": (int, float),
    "noise_figure_db": (int, float),
    "tx_power_w": (int, float),
    "mr_power_w": (int, float, type(None)),
    "tx_gain_dbi": (int, float),
    "rx_gain_dbi": (int, float),
}

_SCENARIO_KEYS = {
    "env_sizes_m": list,
    "element_counts": list,
    "step_m": (int, float),
    "runs": int,
    "seed": int,
    "min_separation_m": (int, float),
    "policy": str,
    "threshold_model": str,
    "radio": dict,
    "element_area_m2": (int, float, type(None)),
}


class ConfigError(ValueError):
    pass


def _check_type(path: str, value: Any, expected) -> None:
    if isinstance(value, bool) and bool not in (
        expected if isinstance(expected, tuple) else (expected,)
    ):
        raise ConfigError(f"{path}: expected {_type_name(expected)}, got bool")
    if not isinstance(value, expected):
        raise ConfigError(
            f"{path}: expected {_type_name(expected)}, got {type(value).__name__}"
        )


def _type_name(expected) -> str:
    if isinstance(expected, tuple):
        return " or ".join(t.__name__ for t in expected)
    return expected.__name__


def config_from_dict(data: Mapping[str, Any]) -> ScenarioConfig:
    """Build a ScenarioConfig from a JSON-style mapping.

    Unknown keys and wrong types are rejected with the offending key
    path named; missing keys fall back to scenario defaults.
    """
    kwargs: dict[str, Any] = {}
    for key, value in data.items():
        if key not in _SCENARIO_KEYS:
            raise ConfigError(f"unknown config key {key!r}")
        _check_type(key, value, _SCENARIO_KEYS[key])
        kwargs[key] = value

    if "env_sizes_m" in kwargs:
        sizes = kwargs["env_sizes_m"]
        for i, v in enumerate(sizes):
            _check_type(f"env_sizes_m[{i}]", v, (int, float))
        kwargs["env_sizes_m"] = tuple(float(v) for v in sizes)
    if "element_counts" in kwargs:
        counts = kwargs["element_counts"]
        for i, v in enumerate(counts):
            _check_type(f"element_counts[{i}]", v, int)
        kwargs["element_counts"] = tuple(counts)
    if "policy" in kwargs:
        kwargs["policy"] = _parse_policy(kwargs["policy"])
    if "threshold_model" in kwargs:
        kwargs["threshold_model"] = _parse_threshold(kwargs["threshold_model"])
    if "radio" in kwargs:
        radio_kwargs: dict[str, Any] = {}
        for rkey, rvalue in kwargs["radio"].items():
            if rkey not in _RADIO_KEYS:
                raise ConfigError(f"unknown config key radio.{rkey}")
            _check_type(f"radio.{rkey}", rvalue, _RADIO_KEYS[rkey])
            radio_kwargs[rkey] = rvalue
        kwargs["radio"] = RadioConfig(**radio_kwargs)

    try:
        return ScenarioConfig(**kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def config_to_dict(cfg: ScenarioConfig) -> dict[str, Any]:
    """Inverse of config_from_dict; round-trips exactly."""
    return {
        "env_sizes_m": list(cfg.env_sizes_m),
        "element_counts": list(cfg.element_counts),
        "step_m": cfg.step_m,
        "runs": cfg.runs,
        "seed": cfg.seed,
        "min_separation_m": cfg.min_separation_m,
        "policy": cfg.policy.value,
        "threshold_model": cfg.threshold_model.value,
        "element_area_m2": cfg.element_area_m2,
        "radio": {
            "wavelength_m": cfg.radio.wavelength_m,
            "bandwidth_hz": cfg.radio.bandwidth_hz,
            "noise_figure_db": cfg.radio.noise_figure_db,
            "tx_power_w": cfg.radio.tx_power_w,
            "mr_power_w": cfg.radio.mr_power_w,
            "tx_gain_dbi": cfg.radio.tx_gain_dbi,
            "rx_gain_dbi": cfg.radio.rx_gain_dbi,
        },
    }


def load_config(path: str | Path) -> ScenarioConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config {path} must hold a JSON object")
    return config_from_dict(data)


def _parse_policy(name: str) -> MrOrientationPolicy:
    try:
        return MrOrientationPolicy(name)
    except ValueError:
        allowed = ", ".join(p.value for p in MrOrientationPolicy)
        raise ConfigError(f"policy must be one of: {allowed}; got {name!r}") from None


def _parse_threshold(name: str) -> ThresholdModel:
    try:
        return ThresholdModel(name)
    except ValueError:
        allowed = ", ".join(t.value for t in ThresholdModel)
        raise ConfigError(
            f"threshold_model must be one of: {allowed}; got {name!r}"
        ) from None


def _parse_point(text: str, flag: str) -> Point2:
    parts = text.split(",")
    if len(parts) != 2:
        raise ConfigError(f"{flag} expects 'x,y', got {text!r}")
    try:
        return Point2(float(parts[0]), float(parts[1]))
    except ValueError:
        raise ConfigError(f"{flag} expects numeric 'x,y', got {text!r}") from None


def _parse_number_list(text: str, flag: str, as_int: bool) -> tuple:
    try:
        if as_int:
            return tuple(int(part) for part in text.split(","))
        return tuple(float(part) for part in text.split(","))
    except ValueError:
        raise ConfigError(f"{flag} expects a comma-separated list, got {text!r}") from None


def _worker_count() -> int:
    raw = os.environ.get("NLOS_SIM_THREADS")
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"NLOS_SIM_THREADS must be an integer, got {raw!r}") from None
    if value < 0:
        raise ConfigError(f"NLOS_SIM_THREADS must be >= 0, got {value}")
    if value == 0:
        return os.cpu_count() or 1
    return value


def _fmt(value: float) -> str:
    return f"{value:.6f}"


def _write_map_csv(path: Path, result: PlacementResult) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(MAP_HEADER)
        for x, y, snr_db, feasible in snr_map_export(result):
            writer.writerow([_fmt(x), _fmt(y), _fmt(snr_db), int(feasible)])


def _best_block(result: PlacementResult) -> dict[str, Any]:
    block: dict[str, Any] = {
        "candidates_evaluated": result.candidates_evaluated,
        "infeasible_count": result.infeasible_count,
        "feasible": result.has_feasible,
    }
    if result.best is not None:
        block["best_x"] = result.best.pose.position.x
        block["best_y"] = result.best.pose.position.y
        block["best_snr_db"] = result.best.snr_db
    return block


def cmd_map(args: argparse.Namespace) -> int:
    cfg = load_config(args.config) if args.config else ScenarioConfig()
    overrides: dict[str, Any] = {}
    if args.step is not None:
        overrides["step_m"] = args.step
    if args.policy is not None:
        overrides["policy"] = _parse_policy(args.policy)
    if args.threshold is not None:
        overrides["threshold_model"] = _parse_threshold(args.threshold)
    if overrides:
        cfg = dataclasses.replace(cfg, **overrides)

    env = Environment(side_length=args.env_size)
    src = _parse_point(args.src, "--src")
    dst = _parse_point(args.dst, "--dst")
    for flag, point in (("--src", src), ("--dst", dst)):
        if not env.contains_interior(point):
            raise ConfigError(
                f"{flag} {point.x},{point.y} must lie strictly inside the "
                f"{env.side_length} m room"
            )
    array = cfg.array_for(args.elements)

    results: dict[str, PlacementResult] = {}
    if args.tech in ("irs", "both"):
        results["irs"] = optimize_irs(env, src, dst, cfg.radio, array, cfg.step_m)
    if args.tech in ("mr", "both"):
        results["mr"] = optimize_mr(
            env,
            src,
            dst,
            cfg.radio,
            array,
            cfg.step_m,
            policy=cfg.policy,
            threshold_model=cfg.threshold_model,
        )

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    best: dict[str, Any] = {
        "env_size_m": env.side_length,
        "n_elements": args.elements,
        "step_m": cfg.step_m,
        "src": [src.x, src.y],
        "dst": [dst.x, dst.y],
        "policy": cfg.policy.value,
        "threshold_model": cfg.threshold_model.value,
    }
    for name, result in results.items():
        _write_map_csv(out_dir / f"{name}_map.csv", result)
        best[name] = _best_block(result)
    with open(out_dir / "best.json", "w", encoding="utf-8") as fh:
        json.dump(best, fh, indent=2)
        fh.write("\n")

    for name, result in results.items():
        feasible = result.candidates_evaluated - result.infeasible_count
        print(
            f"{name}: {result.candidates_evaluated} candidates, "
            f"{feasible} feasible -> {name}_map.csv"
        )
    print(f"best placements -> {out_dir / 'best.json'}")
    return 0


def _write_records_csv(path: Path, campaign: CampaignResult) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(RECORDS_HEADER)
        for record in campaign.records:
            for tech, best in (
                (Technology.IRS, record.irs_best),
                (Technology.MR, record.mr_best),
            ):
                row = [
                    record.run_id,
                    _fmt(record.env_size_m),
                    record.n_elements,
                    tech.value,
                    _fmt(record.src.x),
                    _fmt(record.src.y),
                    _fmt(record.dst.x),
                    _fmt(record.dst.y),
                ]
                if best is None:
                    row.extend(["", "", "", 0])
                else:
                    row.extend([_fmt(best[0]), _fmt(best[1]), _fmt(best[2]), 1])
                writer.writerow(row)


def _write_summary_csv(path: Path, campaign: CampaignResult) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(SUMMARY_HEADER)
        for row in campaign.summary:
            stats = [
                "" if v is None else _fmt(v)
                for v in (
                    row.min_db,
                    row.q1_db,
                    row.median_db,
                    row.q3_db,
                    row.max_db,
                    row.mean_db,
                )
            ]
            writer.writerow(
                [
                    _fmt(row.env_size_m),
                    row.n_elements,
                    row.technology.value,
                    *stats,
                    _fmt(row.feasible_rate),
                ]
            )


def cmd_campaign(args: argparse.Namespace) -> int:
    cfg = load_config(args.config) if args.config else ScenarioConfig()
    overrides: dict[str, Any] = {}
    if args.runs is not None:
        overrides["runs"] = args.runs
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.env_sizes is not None:
        overrides["env_sizes_m"] = _parse_number_list(
            args.env_sizes, "--env-sizes", as_int=False
        )
    if args.elements is not None:
        overrides["element_counts"] = _parse_number_list(
            args.elements, "--elements", as_int=True
        )
    if args.step is not None:
        overrides["step_m"] = args.step
    if args.policy is not None:
        overrides["policy"] = _parse_policy(args.policy)
    if args.threshold is not None:
        overrides["threshold_model"] = _parse_threshold(args.threshold)
    if overrides:
        try:
            cfg = dataclasses.replace(cfg, **overrides)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    n_workers = _worker_count()
    campaign = run_campaign(cfg, n_workers=n_workers)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    _write_records_csv(out_dir / "records.csv", campaign)
    _write_summary_csv(out_dir / "summary.csv", campaign)
    manifest = {
        "version": __version__,
        "seed": cfg.seed,
        "n_workers": n_workers,
        "config": config_to_dict(cfg),
        "outputs": {"records": "records.csv", "summary": "summary.csv"},
    }
    with open(out_dir / "manifest.json", "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")

    n_rows = len(campaign.records) * 2
    print(f"campaign: {len(campaign.records)} runs recorded ({n_rows} rows)")
    print(f"wrote {out_dir / 'records.csv'}, {out_dir / 'summary.csv'}, "
          f"{out_dir / 'manifest.json'}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nlos-sim",
        description="Indoor mmWave NLoS avoidance: reflective surface vs mobile relay",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_map = sub.add_parser("map", help="SNR map and best placement for one geometry")
    p_map.add_argument("--env-size", type=float, required=True, help="room side length [m]")
    p_map.add_argument("--src", required=True, help="source position 'x,y' [m]")
    p_map.add_argument("--dst", required=True, help="destination position 'x,y' [m]")
    p_map.add_argument("--elements", type=int, required=True, help="array element count")
    p_map.add_argument("--step", type=float, default=None, help="candidate spacing [m]")
    p_map.add_argument("--tech", choices=("irs", "mr", "both"), default="both")
    p_map.add_argument("--out", required=True, help="output directory")
    p_map.add_argument("--config", default=None, help="JSON scenario config")
    p_map.add_argument("--policy", default=None, help="relay orientation policy")
    p_map.add_argument("--threshold", default=None, help="relay feasibility ceiling model")
    p_map.set_defaults(func=cmd_map)

    p_camp = sub.add_parser("campaign", help="Monte Carlo campaign over random geometries")
    p_camp.add_argument("--runs", type=int, default=None)
    p_camp.add_argument("--seed", type=int, default=None)
    p_camp.add_argument("--env-sizes", default=None, help="comma list of room sides [m]")
    p_camp.add_argument("--elements", default=None, help="comma list of element counts")
    p_camp.add_argument("--step", type=float, default=None)
    p_camp.add_argument("--out", required=True, help="output directory")
    p_camp.add_argument("--config", default=None, help="JSON scenario config")
    p_camp.add_argument("--policy", default=None, help="relay orientation policy")
    p_camp.add_argument("--threshold", default=None, help="relay feasibility ceiling model")
    p_camp.set_defaults(func=cmd_campaign)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ConfigError, DegenerateGeometryError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
