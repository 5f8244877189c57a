from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import ValidationError

from ..chain_spec import ChainSpec
from ..chain_spec import to_json as chain_to_json
from ..empirics import (
    gof_report,
    h_transform,
    ks_one_sample,
    law_cdf,
    linear_transform,
    planar_sample,
    tnlimit_diagnostic,
    wasserstein1,
)
from ..eigen import eigenvalues
from ..errors import BadParameter, RectProdError
from ..export import load_angles, load_radial_sample, write_csv, write_json
from ..families import family, gamma_rule
from ..limit_law import classify, diagnostics_to_json
from ..models import OracleSample, PlanarSample, RadialSample, SampleSource, SpectralSample
from ..reporting import (
    gof_to_json,
    law_summary,
    limit_rows,
    oracle_rows,
    radii_rows,
    residual_rows,
    scatter_rows,
    tnlimit_rows,
)
from ..sampler import expected_log_t, make_rng, product_chain, sample_oracle
from ..schema import (
    LIMIT_CSV_HEADERS,
    ORACLE_CSV_HEADERS,
    RADII_CSV_HEADERS,
    RESIDUAL_CSV_HEADERS,
    SCATTER_CSV_HEADERS,
    TNLIMIT_CSV_HEADERS,
)
from ..storage.paths import output_root, run_dir
from .config import FamilyChain, LawPreset, RunConfig

logger = logging.getLogger(__name__)

# substream keys: trials use (TRIAL_STREAM, t), diagnostics use (DIAGNOSTIC_STREAM, i)
TRIAL_STREAM = 0
DIAGNOSTIC_STREAM = 1


def _prepare(config: RunConfig, command: str) -> Path:
    root = output_root(config.out)
    path = run_dir(root, config.run_id(command))
    write_json(str(path / "config.json"), config.model_dump(mode="json"))
    logger.info("%s run directory %s", command, path)
    return path


def _transform(config: RunConfig):
    return linear_transform if config.scaling == "linear" else h_transform


def _eigen_trial(spec: ChainSpec, config: RunConfig, trial: int) -> Tuple[SpectralSample, RadialSample, PlanarSample]:
    rng = make_rng(config.seed, TRIAL_STREAM, trial)
    spectrum = eigenvalues(product_chain(spec, rng))
    radial = _transform(config)(spectrum.log_modulus, spec, SampleSource.EIGEN)
    logger.info("trial %d done (n=%d, m=%d)", trial, spec.n, spec.m)
    return spectrum, radial, planar_sample(spectrum, radial)


def cmd_simulate(config: RunConfig) -> List[Path]:
    spec = config.resolve_chain()
    law = config.resolve_law()
    path = _prepare(config, "simulate")
    with ThreadPoolExecutor(max_workers=config.jobs) as pool:
        results = list(pool.map(lambda t: _eigen_trial(spec, config, t), range(config.trials)))

    scatter: List[Dict[str, str]] = []
    for trial, (spectrum, _, planar) in enumerate(results):
        scatter.extend(scatter_rows(trial, spectrum, planar))
    radial = RadialSample(radii=np.concatenate([r.radii for _, r, _ in results]), source=SampleSource.EIGEN)
    planar = PlanarSample(
        radii=np.concatenate([p.radii for _, _, p in results]),
        angles=np.concatenate([p.angles for _, _, p in results]),
    )
    report = gof_report(radial, planar, law, spec.n, spec.m, config.seed, config.trials, slack=config.ring_slack)

    outputs = [path / "scatter.csv", path / "radii.csv", path / "report.json"]
    write_csv(str(outputs[0]), scatter, SCATTER_CSV_HEADERS)
    write_csv(str(outputs[1]), radii_rows(radial, planar.angles), RADII_CSV_HEADERS)
    write_json(str(outputs[2]), {"chain": chain_to_json(spec, run_length=True), "gof": gof_to_json(report)})
    return outputs


def cmd_oracle(config: RunConfig) -> List[Path]:
    spec = config.resolve_chain()
    law = config.resolve_law()
    path = _prepare(config, "oracle")

    def draw(trial: int) -> OracleSample:
        return sample_oracle(spec, make_rng(config.seed, TRIAL_STREAM, trial))

    with ThreadPoolExecutor(max_workers=config.jobs) as pool:
        samples = list(pool.map(draw, range(config.trials)))
    log_t = np.vstack([s.log_t for s in samples])

    radial = _transform(config)(np.concatenate([s.log_y for s in samples]), spec, SampleSource.ORACLE)
    expected = [expected_log_t(spec, j) for j in range(1, spec.n + 1)]
    summaries = [
        tnlimit_diagnostic(spec, x, config.replicates, make_rng(config.seed, DIAGNOSTIC_STREAM, i))
        for i, x in enumerate(config.x_grid)
    ]
    report: Dict[str, Any] = {
        "chain": chain_to_json(spec, run_length=True),
        "n": spec.n,
        "m": spec.m,
        "seed": config.seed,
        "trials": config.trials,
        "law": law.label if law is not None else None,
        "ks_radial": ks_one_sample(radial, law_cdf(law)) if law is not None else None,
        "wasserstein_radial": wasserstein1(radial, law) if law is not None else None,
    }

    outputs = [
        path / "radii.csv",
        path / "oracle.csv",
        path / "residuals.csv",
        path / "tnlimit.csv",
        path / "report.json",
    ]
    oracle: List[Dict[str, str]] = []
    for trial, sample in enumerate(samples):
        oracle.extend(oracle_rows(trial, sample))
    write_csv(str(outputs[0]), radii_rows(radial), RADII_CSV_HEADERS)
    write_csv(str(outputs[1]), oracle, ORACLE_CSV_HEADERS)
    write_csv(str(outputs[2]), residual_rows(log_t, expected), RESIDUAL_CSV_HEADERS)
    write_csv(str(outputs[3]), tnlimit_rows(summaries), TNLIMIT_CSV_HEADERS)
    write_json(str(outputs[4]), report)
    return outputs


def cmd_limit(config: RunConfig) -> List[Path]:
    law = config.resolve_law()
    if law is None:
        raise BadParameter("limit needs a law (--preset NAME or a 'law' entry in the config)")
    path = _prepare(config, "limit")
    grid = np.linspace(0.0, 1.0, config.grid_points)
    outputs = [path / "limit.csv", path / "law.json"]
    write_csv(str(outputs[0]), limit_rows(law, grid), LIMIT_CSV_HEADERS)
    write_json(str(outputs[1]), law_summary(law))
    return outputs


def _family_ref(config: RunConfig) -> FamilyChain:
    if config.family is not None:
        return config.family
    if isinstance(config.chain, FamilyChain):
        return config.chain
    raise BadParameter("classify needs a family (--family NAME)")


def cmd_classify(config: RunConfig) -> Tuple[List[Path], Dict[str, Any]]:
    ref = _family_ref(config)
    fam = family(ref.family, ref.params)
    rule = gamma_rule(ref.gamma_rule or fam.default_gamma)
    diagnostics = classify(fam, rule, config.probes)
    payload = diagnostics_to_json(diagnostics)
    payload["family"] = {"name": ref.family, "params": ref.params, "gamma_rule": ref.gamma_rule or fam.default_gamma}
    path = _prepare(config, "classify")
    output = path / "report.json"
    write_json(str(output), payload)
    return [output], payload


def cmd_gof(config: RunConfig) -> List[Path]:
    if config.eigen_radii is None and config.oracle_radii is None:
        raise BadParameter("gof needs --eigen-radii and/or --oracle-radii")
    law = config.resolve_law()
    spec = config.resolve_chain() if config.chain is not None else None
    oracle = load_radial_sample(config.oracle_radii, SampleSource.ORACLE) if config.oracle_radii else None
    payload: Dict[str, Any] = {}
    if config.eigen_radii:
        radial = load_radial_sample(config.eigen_radii, SampleSource.EIGEN)
        planar = PlanarSample(radii=radial.radii, angles=load_angles(config.eigen_radii))
        n = spec.n if spec is not None else len(radial)
        m = spec.m if spec is not None else 0
        report = gof_report(radial, planar, law, n, m, config.seed, config.trials, oracle=oracle, slack=config.ring_slack)
        payload["gof"] = gof_to_json(report)
    elif oracle is not None and law is not None:
        payload["oracle"] = {
            "law": law.label,
            "ks_radial": ks_one_sample(oracle, law_cdf(law)),
            "wasserstein_radial": wasserstein1(oracle, law),
        }
    path = _prepare(config, "gof")
    output = path / "report.json"
    write_json(str(output), payload)
    return [output]


# --- argument handling ------------------------------------------------------


def _parse_value(text: str) -> Any:
    if "," in text:
        return [_parse_value(part) for part in text.split(",") if part]
    try:
        return float(text)
    except ValueError:
        return text


def parse_params(items: Optional[Sequence[str]]) -> Dict[str, Any]:
    params: Dict[str, Any] = {}
    for item in items or []:
        if "=" not in item:
            raise BadParameter(f"parameters must look like key=value, got {item!r}")
        key, value = item.split("=", 1)
        params[key.strip()] = _parse_value(value.strip())
    return params


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run configuration")
    common.add_argument("--seed", type=int, help="64-bit unsigned seed")
    common.add_argument("--trials", type=int)
    common.add_argument("--jobs", type=int, help="worker threads for trials")
    common.add_argument("--out", help="output root (RECTPROD_OUT overrides)")
    common.add_argument("--preset", help="limit-law preset name")
    common.add_argument("--param", action="append", metavar="K=V", help="limit-law preset parameter")
    common.add_argument("--chain", help="explicit chain JSON, e.g. '{\"n\":2,\"m\":2,\"dims\":[2,4,2],\"gamma\":2}'")
    common.add_argument("--family", help="dimension family name")
    common.add_argument("--family-param", action="append", metavar="K=V", help="dimension family parameter")
    common.add_argument("--n", type=int, help="square size for family chains")
    common.add_argument("--gamma-rule", help="m, 2m, m2, one, two, lambda1 or a number")
    common.add_argument("--scaling", choices=["nonlinear", "linear"])
    common.add_argument("--x-grid", help="comma separated x values in (0, 1]")
    common.add_argument("--grid-points", type=int)
    common.add_argument("--probes", help="comma separated probe sizes")
    common.add_argument("--replicates", type=int)
    common.add_argument("--eigen-radii", help="radii.csv from a simulate run")
    common.add_argument("--oracle-radii", help="radii.csv from an oracle run")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(prog="rectprod", description="Products of rectangular Ginibre matrices")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("simulate", parents=[common], help="eigenvalues of sampled products")
    sub.add_parser("oracle", parents=[common], help="Gamma-product oracle samples")
    sub.add_parser("limit", parents=[common], help="tables of a limit law")
    sub.add_parser("classify", parents=[common], help="Type I/II/III diagnostics of a family")
    sub.add_parser("gof", parents=[common], help="goodness of fit of saved radii")
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """defaults < --config file < flags."""
    data: Dict[str, Any] = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    for key in ("seed", "trials", "jobs", "out", "scaling", "grid_points", "replicates", "eigen_radii", "oracle_radii"):
        value = getattr(args, key)
        if value is not None:
            data[key] = value
    if args.x_grid:
        data["x_grid"] = [float(x) for x in args.x_grid.split(",") if x]
    if args.probes:
        data["probes"] = [int(x) for x in args.probes.split(",") if x]
    if args.preset:
        data["law"] = LawPreset(name=args.preset, params=parse_params(args.param)).model_dump()
    if args.chain:
        data["chain"] = json.loads(args.chain)
    if args.family:
        ref: Dict[str, Any] = {"family": args.family, "params": parse_params(args.family_param), "n": args.n or 1}
        if args.gamma_rule:
            ref["gamma_rule"] = args.gamma_rule
        if args.command == "classify":
            data["family"] = ref
        else:
            if args.n is None:
                raise BadParameter("--family needs --n for this subcommand")
            data["chain"] = ref
    return RunConfig.model_validate(data)


COMMANDS = {
    "simulate": cmd_simulate,
    "oracle": cmd_oracle,
    "limit": cmd_limit,
    "gof": cmd_gof,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING if args.verbose == 0 else (logging.INFO if args.verbose == 1 else logging.DEBUG)
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        config = resolve_config(args)
        if args.command == "classify":
            _, payload = cmd_classify(config)
            sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        else:
            outputs = COMMANDS[args.command](config)
            for path in outputs:
                sys.stdout.write(f"{path}\n")
    except (RectProdError, ValidationError) as exc:
        logger.error("%s failed: %s", args.command, exc)
        sys.stderr.write(f"error: {exc}\n")
        return 2
    return 0
