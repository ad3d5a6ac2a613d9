"""Command-line entry point: ``demo``, ``experiment`` and ``check``.

Exit codes: 0 success, 1 a checked property failed, 2 usage or config error.
"""
from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Optional

from .checks import SUITES, run_suite
from .harness import (GAME_ADVERSARIES, EMPIRICAL, EXACT, ExperimentConfig, SchemeConfig,
                      build_strategy, evpke_report, game_report, hybrid_chain_report,
                      hybrid_report)
from .pvd import (DeletionCertificate, QuantumVerificationKey, pv_dec, pv_del, pv_enc,
                  pv_enc_owsg, pv_gen, pv_vrfy)
from .qstate import DimensionError
from .randomness import make_rng

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

GAMES = ("other-preimage",)


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    scheme: str = "owf"
    n: int = 8
    m: Optional[int] = None
    owf: str = "toy"
    owf_seed: int = 0
    pke: str = "group"
    group: str = "safe256"
    layers: int = 3
    t: int = 1
    adversary: str = "honest"
    adversary_params: dict = field(default_factory=dict)
    trials: int = 10_000
    seed: int = 0
    mode: str = EXACT
    instances: Optional[int] = 1
    confidence: float = 0.99
    workers: int = 1
    hybrid: Optional[int] = None
    game: Optional[str] = None
    evpke: bool = False
    commute: bool = False
    zero_z: bool = False
    b: int = 1

    def scheme_config(self) -> SchemeConfig:
        return SchemeConfig(scheme=self.scheme, n=self.n, m=self.m, owf=self.owf,
                            seed=self.owf_seed, pke=self.pke, group=self.group, t=self.t,
                            layers=self.layers, zero_z=self.zero_z)

    def experiment_config(self) -> ExperimentConfig:
        return ExperimentConfig(self.scheme_config(), self.mode, self.trials, self.instances,
                                self.confidence, self.workers)


# expected JSON type per field: (python types, description)
_INT = ((int,), "an integer")
_FIELD_TYPES = {
    "scheme": ((str,), "a string"), "n": _INT, "m": _INT, "owf": ((str,), "a string"),
    "owf_seed": _INT, "pke": ((str,), "a string"), "group": ((str,), "a string"),
    "layers": _INT, "t": _INT, "adversary": ((str, dict), "a name or an object"),
    "adversary_params": ((dict,), "an object"), "trials": _INT, "seed": _INT,
    "mode": ((str,), "a string"), "instances": ((int, str), "an integer or \"fresh\""),
    "confidence": ((int, float), "a number"), "workers": _INT, "hybrid": _INT,
    "game": ((str,), "a string"), "evpke": ((bool,), "a boolean"),
    "commute": ((bool,), "a boolean"), "zero_z": ((bool,), "a boolean"), "b": _INT,
}
_NULLABLE = {"m", "instances", "hybrid", "game"}


def _check_field(name: str, value: Any) -> Any:
    if name not in _FIELD_TYPES:
        raise ConfigError(f"unknown config field {name!r}")
    if value is None and name in _NULLABLE:
        return None
    types, desc = _FIELD_TYPES[name]
    if isinstance(value, bool) and bool not in types:
        raise ConfigError(f"config field {name!r}: expected {desc}, got {value!r}")
    if not isinstance(value, types):
        raise ConfigError(f"config field {name!r}: expected {desc}, got {value!r}")
    if name == "instances" and isinstance(value, str):
        if value != "fresh":
            raise ConfigError(f"config field 'instances': expected {desc}, got {value!r}")
        return None
    if name == "adversary" and isinstance(value, dict):
        if not isinstance(value.get("name"), str):
            raise ConfigError("config field 'adversary': object needs a string 'name'")
    return value


def _validate(cfg: RunConfig) -> RunConfig:
    if cfg.seed < 0 or cfg.seed >= 1 << 64:
        raise ConfigError("config field 'seed': must be a 64-bit unsigned integer")
    if cfg.b not in (0, 1):
        raise ConfigError("config field 'b': must be 0 or 1")
    if cfg.hybrid is not None and cfg.hybrid not in (0, 1, 2):
        raise ConfigError("config field 'hybrid': must be 0, 1 or 2")
    if cfg.game is not None and cfg.game not in GAMES:
        raise ConfigError(f"config field 'game': must be one of {GAMES}")
    chosen = [cfg.hybrid is not None, cfg.game is not None, cfg.evpke]
    if sum(chosen) > 1:
        raise ConfigError("choose at most one of 'hybrid', 'game' and 'evpke'")
    try:
        cfg.experiment_config()
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return cfg


def load_config(data: dict, base: Optional[RunConfig] = None) -> RunConfig:
    """Merge a JSON object into ``base``; unknown fields and wrong types are rejected."""
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    values = {}
    for name, value in data.items():
        values[name] = _check_field(name, value)
    if isinstance(values.get("adversary"), dict):
        adv = dict(values.pop("adversary"))
        values["adversary"] = adv.pop("name")
        values["adversary_params"] = {**values.get("adversary_params", {}), **adv}
    return _validate(dataclasses.replace(base or RunConfig(), **values))


def read_config_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON in {path!r}: {exc.msg} at line {exc.lineno} "
                          f"column {exc.colno}") from None


def _param(text: str) -> tuple[str, Any]:
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected KEY=VALUE, got {text!r}")
    key, raw = text.split("=", 1)
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return key, value


def _instances(text: str):
    if text == "fresh":
        return "fresh"
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected an integer or 'fresh'") from None


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    S = argparse.SUPPRESS
    p.add_argument("--config", default=S, help="JSON file with RunConfig fields")
    p.add_argument("--scheme", choices=("owf", "owsg"), default=S)
    p.add_argument("--n", type=int, default=S, help="input / key length in bits")
    p.add_argument("--m", type=int, default=S, help="OWF output bits or OWSG qubits")
    p.add_argument("--owf", choices=("toy", "hash"), default=S)
    p.add_argument("--owf-seed", dest="owf_seed", type=int, default=S,
                   help="seed of the toy OWF table or OWSG schedule")
    p.add_argument("--pke", choices=("group", "transparent"), default=S)
    p.add_argument("--group", default=S, help="named group or path to a JSON parameter file")
    p.add_argument("--layers", type=int, default=S)
    p.add_argument("--t", type=int, default=S, help="OWSG verification-key copies")
    p.add_argument("--adversary", default=S)
    p.add_argument("--adversary-param", dest="adversary_param", type=_param, action="append",
                   default=S, metavar="KEY=VALUE")
    p.add_argument("--trials", type=int, default=S)
    p.add_argument("--seed", type=int, default=S)
    p.add_argument("--mode", choices=(EXACT, EMPIRICAL), default=S)
    p.add_argument("--instances", type=_instances, default=S,
                   help="number of fixed instances, or 'fresh' for one per trial")
    p.add_argument("--confidence", type=float, default=S)
    p.add_argument("--workers", type=int, default=S)
    p.add_argument("--zero-z", dest="zero_z", action="store_true", default=S)
    p.add_argument("--b", type=int, default=S)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pvdsim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    demo = sub.add_parser("demo", help="gen -> enc(b) -> dec, and del -> vrfy")
    _add_run_flags(demo)

    exp = sub.add_parser("experiment", help="run a security experiment, print a JSON report")
    _add_run_flags(exp)
    exp.add_argument("--hybrid", type=int, choices=(0, 1, 2), default=argparse.SUPPRESS)
    exp.add_argument("--game", choices=GAMES, default=argparse.SUPPRESS)
    exp.add_argument("--evpke", action="store_true", default=argparse.SUPPRESS)
    exp.add_argument("--commute", action="store_true", default=argparse.SUPPRESS,
                     help="Hyb2: measure C in the Hadamard basis before the adversary")
    exp.add_argument("--out", help="write the report here instead of stdout")

    chk = sub.add_parser("check", help="numeric property suites")
    chk.add_argument("suite", choices=SUITES + ("all",))
    chk.add_argument("--instances", type=int, default=None,
                     help="random instances (per n for 'measurement'); default 1000 / 20")
    chk.add_argument("--seed", type=int, default=0)
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if hasattr(args, "config"):
        cfg = load_config(read_config_file(args.config), cfg)
    flags = {k: v for k, v in vars(args).items()
             if k in _FIELD_TYPES or k == "adversary_param"}
    params = dict(flags.pop("adversary_param", []))
    if "adversary" in flags and "adversary_params" not in flags:
        flags["adversary_params"] = {}
    if params:
        flags["adversary_params"] = {**flags.get("adversary_params", cfg.adversary_params),
                                     **params}
    return load_config(flags, cfg) if flags else _validate(cfg)


# -- demo ---------------------------------------------------------------------

def _short(data: bytes) -> str:
    return f"{len(data)} bytes, sha256 {hashlib.sha256(data).hexdigest()[:16]}"


def cmd_demo(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    scheme = cfg.scheme_config().build()
    rng = make_rng(cfg.seed, 0xDE)
    lines = [f"scheme: {cfg.scheme} n={scheme.n} m={scheme.config.out_size}"
             + (f" owf={cfg.owf}" if cfg.scheme == "owf" else f" t={cfg.t}")
             + f" pke={cfg.pke} seed={cfg.seed} b={cfg.b}"]
    keys = pv_gen(scheme.pke, rng)
    lines.append(f"pk: {_short(keys.pk.to_bytes())}")

    def encrypt():
        if scheme.owf is not None:
            return pv_enc(keys.pk, cfg.b, scheme.owf, rng)
        return pv_enc_owsg(keys.pk, cfg.b, scheme.primitive, rng, t=cfg.t)

    vk, ct = encrypt()
    if isinstance(vk, QuantumVerificationKey):
        lines.append(f"vk: quantum, 2 states of {vk.owsg.m} qubits, {vk.t} cop"
                     f"{'y' if vk.t == 1 else 'ies'} each")
    else:
        lines.append(f"vk: y0={vk.y0} y1={vk.y1}")
    lines.append(f"ct: classical {_short(ct.classical)}; quantum two-branch state on "
                 f"{ct.quantum.n} qubits")
    bit = pv_dec(keys.sk, ct, rng)
    lines.append(f"dec: {bit}")

    vk2, ct2 = encrypt()
    cert = pv_del(ct2, rng)
    accepted = pv_vrfy(vk2, DeletionCertificate(cert.pi), rng)
    lines.append(f"del: pi={cert.pi}")
    lines.append(f"vrfy: {'⊤' if accepted else '⊥'}")
    ok = bit == cfg.b and accepted
    lines.append(f"correctness: {'ok' if ok else 'FAILED'}")
    out.write("\n".join(lines) + "\n")
    return EXIT_OK if ok else EXIT_FAILED


# -- experiment -----------------------------------------------------------------

def _game_adversary(cfg: RunConfig):
    if cfg.adversary not in GAME_ADVERSARIES:
        raise ConfigError(f"game adversary must be one of {sorted(GAME_ADVERSARIES)}, "
                          f"got {cfg.adversary!r}")
    return GAME_ADVERSARIES[cfg.adversary](**cfg.adversary_params)


def run_experiment(cfg: RunConfig) -> dict:
    if cfg.game is not None:
        if cfg.scheme != "owf":
            raise ConfigError("the other-preimage game needs scheme 'owf'")
        scheme = cfg.scheme_config().build()
        return game_report(scheme.owf, _game_adversary(cfg), cfg.trials, cfg.seed,
                           zero_z=True, confidence=cfg.confidence,
                           config={"owf_seed": cfg.owf_seed})
    exp = cfg.experiment_config()
    scheme = exp.scheme.build()
    try:
        adversary = build_strategy({"name": cfg.adversary, **cfg.adversary_params}, scheme.n)
    except TypeError as exc:
        raise ConfigError(f"bad adversary parameters: {exc}") from None
    if cfg.evpke:
        return evpke_report(exp, adversary, cfg.seed)
    if cfg.hybrid is not None:
        return hybrid_report(cfg.hybrid, exp, adversary, cfg.seed, commute=cfg.commute)
    return hybrid_chain_report(exp, adversary, cfg.seed)


def dump_report(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def cmd_experiment(cfg: RunConfig, out_path: Optional[str] = None, out=None) -> int:
    out = out or sys.stdout
    report = run_experiment(cfg)
    text = dump_report(report)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK if all(q["satisfied"] for q in report["inequalities"]) else EXIT_FAILED


# -- check ----------------------------------------------------------------------

def cmd_check(suite: str, instances: Optional[int], seed: int, out=None) -> int:
    out = out or sys.stdout
    suites = SUITES if suite == "all" else (suite,)
    ok = True
    for name in suites:
        count = instances if instances is not None else (20 if name == "measurement" else 1000)
        result = run_suite(name, count, seed)
        out.write(result.summary() + "\n")
        for detail in result.failures:
            out.write(f"  failure: {detail}\n")
        ok = ok and result.ok
    return EXIT_OK if ok else EXIT_FAILED


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        if args.command == "check":
            if args.instances is not None and args.instances < 1:
                raise ConfigError("--instances must be >= 1")
            return cmd_check(args.suite, args.instances, args.seed)
        cfg = resolve_config(args)
        if args.command == "demo":
            return cmd_demo(cfg)
        return cmd_experiment(cfg, getattr(args, "out", None))
    except (ConfigError, DimensionError, ValueError) as exc:
        print(f"pvdsim: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
