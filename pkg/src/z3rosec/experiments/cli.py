"""Batch command line interface.

Exit codes: 0 success, 1 usage or configuration error, 2 numerical failure.
"""

import argparse
import platform
import re
import sys
import time

import numpy as np

from .. import __version__, kernels
from ..bussgang import RNG_ALGORITHM
from ..errors import ConfigError, NumericalError
from ..precoders import KINDS
from .config import PA_MODELS, ScenarioConfig, load_config
from .output import write_artifact
from .runners import EXPERIMENTS

IBO_KEY = {"pattern": "sweep.pattern_ibo_db", "secrecy-angle": "sweep.angle_ibo_db"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _ibo_list(values):
    out = []
    for item in values:
        for part in item.split(","):
            part = part.strip()
            if part:
                try:
                    out.append(float(part))
                except ValueError:
                    raise ConfigError(f"not a number: {part!r}", "--ibo-db") from None
    return out


_NUMBER_LIST = re.compile(r"^[-+]?(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?(,[-+]?(\d+\.?\d*|\.\d+)([eE][-+]?\d+)?)*,?$")


def _fold_ibo_values(argv):
    """Join numeric tokens after ``--ibo-db`` so negative lists like ``-20,-10`` are not read as flags."""
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--ibo-db":
            j = i + 1
            while j < len(argv) and _NUMBER_LIST.match(argv[j]):
                j += 1
            if j > i + 1:
                out.append("--ibo-db=" + ",".join(argv[i + 1 : j]))
                i = j
                continue
        out.append(argv[i])
        i += 1
    return out


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--config", help="TOML config or a run manifest (.json)")
    common.add_argument("--precoder", action="append", choices=KINDS, help="repeatable")
    common.add_argument("--pa", action="append", choices=PA_MODELS, help="repeatable")
    common.add_argument("--ibo-db", nargs="+", metavar="DB", help="IBO values, space or comma separated")
    common.add_argument("--out-dir", default="results")
    common.add_argument("--seed", type=int)
    common.add_argument("--format", choices=["csv"], default="csv")

    parser = _Parser(prog="z3rosec", description="PA-distortion physical-layer-security simulations")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in (*EXPERIMENTS, "validate-config"):
        sub.add_parser(name, parents=[common])
    return parser


def resolve_config(args):
    cfg = load_config(args.config) if args.config else ScenarioConfig.from_mapping({})
    overrides = {}
    if args.precoder:
        overrides["precoder.kinds"] = args.precoder
    if args.pa:
        overrides["pa.models"] = args.pa
    if args.ibo_db:
        overrides[IBO_KEY.get(args.command, "sweep.ibo_db")] = _ibo_list(args.ibo_db)
    if args.seed is not None:
        overrides["montecarlo.seed"] = args.seed
    return cfg.replace(**overrides) if overrides else cfg


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(_fold_ibo_values(argv))
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    try:
        cfg = resolve_config(args)
        if args.command == "validate-config":
            print("config OK")
            return 0
        start = time.perf_counter()
        artifact = EXPERIMENTS[args.command](cfg)
        elapsed = time.perf_counter() - start
        manifest = {
            "command": argv,
            "config": cfg.to_mapping(),
            "seed": cfg["montecarlo.seed"],
            "code_version": __version__,
            "kernel_backend": kernels.BACKEND,
            "rng": RNG_ALGORITHM,
            "environment": {"python": platform.python_version(), "numpy": np.__version__},
            "timings": {"compute_seconds": elapsed},
        }
        path = write_artifact(artifact, args.out_dir, manifest)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    print(f"wrote {len(artifact.tables)} table(s); manifest {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
