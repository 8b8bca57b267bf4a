"""Thin command-line client.

Commands run in process by default; with ``--url`` the validated config is
posted to a running ``alladi serve`` instance instead.  Exit codes: 0 success,
1 contract violation, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from .config import ConfigError, RunConfig, build_config, parse_config_file

EXIT_OK, EXIT_CONTRACT, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _cutoff(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad cutoff {text!r}") from None
    if not value.is_integer():
        raise argparse.ArgumentTypeError("cutoff must be an integer (1e6 style is fine)")
    return value


def _cutoff_list(text: str) -> list[int]:
    return [int(_cutoff(s)) for s in text.split(",") if s.strip()]


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key=value config file; flags take precedence")
    p.add_argument("--backend", choices=["poly", "int", "graph"])
    p.add_argument("--q", type=int)
    p.add_argument("--max-degree", type=int)
    p.add_argument("--field", choices=["Q", "Qi"])
    p.add_argument("--limit", type=int, help="prime table limit for the int backend")
    p.add_argument("--graph", help="named graph (k4, k5, c5, k33, petersen, multiloop) or edge-list file")
    p.add_argument("--max-len", type=int)
    p.add_argument("--set", dest="prime_set", help="prime set spec, e.g. all, mod:4,1, mod:x^2+x+1,1, split")
    p.add_argument("--cutoff", type=_cutoff)
    p.add_argument("--cutoffs", type=_cutoff_list, help="comma-separated cutoffs")
    p.add_argument("--workers", type=int)
    p.add_argument("--url", help="post the request to a running service instead of computing locally")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="alladi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    run = sub.add_parser("run", help="Alladi partial sums to CSV")
    _common(run)
    run.add_argument("--function", "--a", dest="function", help="identity | power:ALPHA | file:PATH")
    run.add_argument("--weight", choices=["norm", "phi"])
    run.add_argument("--output", "-o", help="CSV path; without it the CSV goes to stdout and the table to stderr")
    run.add_argument("--timings", action="store_true", default=None, help="fill the seconds column")

    fuzz = sub.add_parser("duality-fuzz", help="randomised duality identity check")
    _common(fuzz)
    fuzz.add_argument("--seed", type=int)
    fuzz.add_argument("--triples", type=int)

    zeta = sub.add_parser("zeta", help="prime, element and Moebius counts")
    _common(zeta)

    dens = sub.add_parser("density", help="empirical density of a prime set")
    _common(dens)

    stats = sub.add_parser("stats", help="C, M, R, Phi partial-sum statistics")
    _common(stats)
    stats.add_argument("--n", type=int)
    stats.add_argument("--m", type=float)

    serve = sub.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


FLAG_FIELDS = ("backend", "q", "max_degree", "field", "limit", "graph", "max_len", "prime_set", "cutoff", "cutoffs",
               "workers", "function", "weight", "output", "timings", "seed", "triples", "n", "m")


def config_from_args(args: argparse.Namespace) -> RunConfig:
    file_values = {}
    if getattr(args, "config", None):
        path = Path(args.config)
        if not path.is_file():
            raise ConfigError(f"config file {path} not found")
        file_values = parse_config_file(path.read_text())
    flags = {k: getattr(args, k) for k in FLAG_FIELDS if hasattr(args, k)}
    return build_config(file_values, flags)


def _remote(url: str, command: str, cfg: RunConfig) -> dict:
    import httpx

    resp = httpx.post(url.rstrip("/") + "/" + command, json=cfg.model_dump(mode="json"), timeout=None)
    if resp.status_code == 422:
        raise ConfigError(json.dumps(resp.json().get("detail")))
    resp.raise_for_status()
    return resp.json()


def _execute(command: str, cfg: RunConfig, url: Optional[str]):
    from . import schemas
    from .service import COMMANDS

    models = {"run": schemas.RunResponse, "duality-fuzz": schemas.FuzzResponse, "zeta": schemas.ZetaResponse,
              "density": schemas.DensityResponse, "stats": schemas.StatsResponse}
    if url:
        return models[command].model_validate(_remote(url, command, cfg))
    return COMMANDS[command](cfg)


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "serve":
        import uvicorn

        uvicorn.run("alladi.service:app", host=args.host, port=args.port)
        return EXIT_OK
    try:
        cfg = config_from_args(args)
        result = _execute(args.command, cfg, args.url)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "run":
        if cfg.output:
            Path(cfg.output).write_text(result.csv)
            print(result.table)
        else:
            print(result.table, file=sys.stderr)
            sys.stdout.write(result.csv)
        return EXIT_OK
    if args.command == "duality-fuzz":
        print(result.summary)
        if not result.passed:
            print(json.dumps(result.failure, indent=2), file=sys.stderr)
            return EXIT_CONTRACT
        return EXIT_OK
    print(result.table)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
