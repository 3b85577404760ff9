"""Command-line front end.

    qss access <file> [--oracle]
    qss protocol <file> --advance 1,2,3,4
    qss roundtrip <file> --advance 1,2,3,4 --secret plus [--seed N] [--dump-states DIR]

All reports are JSON.  Exit status: 0 success, 2 input error, 3 semantic
rejection (share set not forbidden, state not a codeword), 1 when a
round-trip falls below the fidelity threshold.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import simulator
from .access import enumerate_access_structure
from .pauli import StabilizerCode, load_stabilizer
from .protocol import (
    NotACodeword,
    NotQualified,
    build_bundle,
    encode_advance,
    encode_direct,
    random_secret,
    reconstruct,
)
from .simulator import StateVector

log = logging.getLogger("qss")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_REJECT = 0, 1, 2, 3


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    input: Path
    advance: list[int] = field(default_factory=list)
    secret: str = "plus"
    seed: int = 0
    count: int = 1
    output: Path | None = None
    dump_states: Path | None = None
    cap: int = simulator.DEFAULT_CAP
    fidelity_tol: float = 1e-8
    oracle: bool = False


def _round(obj):
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    if isinstance(obj, (np.floating,)):
        return float(f"{float(obj):.12g}")
    if isinstance(obj, (np.integer,)):
        return int(obj)
    return obj


def dumps(obj) -> str:
    return json.dumps(_round(obj), indent=2) + "\n"


def _emit(obj, cfg: RunConfig) -> None:
    text = dumps(obj)
    if cfg.output is not None:
        cfg.output.write_text(text)
    else:
        sys.stdout.write(text)


def parse_indices(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise InputError(f"bad index list {text!r}") from None


def parse_secret(text: str, p: int, k: int, rng: np.random.Generator | None = None) -> StateVector:
    """Turn a secret text into a normalized k-qudit state.

    Named states ``zero``, ``one``, ``plus``, ``iplus`` are product states
    over the k qudits; ``v:<digits>`` is a basis state; ``random`` draws
    from ``rng``; anything else is read as a JSON amplitude list whose
    entries are numbers or ``[re, im]`` pairs.
    """
    s = 1 / np.sqrt(2)
    single = {
        "zero": np.eye(p)[0],
        "one": np.eye(p)[1],
        "plus": s * (np.eye(p)[0] + np.eye(p)[1]),
        "iplus": s * (np.eye(p)[0] + 1j * np.eye(p)[1]),
    }
    if text in single:
        amps = np.array([1.0 + 0j])
        for _ in range(k):
            amps = np.kron(amps, single[text])
        return StateVector(p, k, amps)
    if text.startswith("v:"):
        body = text[2:]
        digits = [int(t) for t in (body.split(",") if "," in body else body)]
        if len(digits) != k or any(not 0 <= d < p for d in digits):
            raise InputError(f"basis secret {text!r} needs {k} digits in 0..{p - 1}")
        return StateVector.basis(p, digits)
    if text == "random":
        if rng is None:
            rng = np.random.default_rng(0)
        return random_secret(p, k, rng)
    try:
        raw = json.loads(text if text.lstrip().startswith("[") else f"[{text}]")
    except json.JSONDecodeError:
        raise InputError(f"unrecognized secret {text!r}") from None
    amps = np.array([complex(*x) if isinstance(x, list) else complex(x) for x in raw])
    if amps.size != p**k:
        raise InputError(f"secret needs {p ** k} amplitudes, got {amps.size}")
    norm = np.linalg.norm(amps)
    if abs(norm - 1) > 1e-6:
        raise InputError(f"secret amplitudes have norm {norm:.8f}, expected 1")
    return StateVector(p, k, amps / norm)


def _load(cfg: RunConfig) -> StabilizerCode:
    if not cfg.input.exists():
        raise InputError(f"{cfg.input}: no such file")
    return load_stabilizer(cfg.input)


def _check_advance(code: StabilizerCode, advance: list[int]) -> None:
    bad = [j for j in advance if not 1 <= j <= code.n]
    if bad:
        raise InputError(f"share indices {bad} outside 1..{code.n}")


def cmd_access(cfg: RunConfig) -> int:
    code = _load(cfg)
    report = enumerate_access_structure(code, oracle=cfg.oracle)
    _emit(report.to_json(), cfg)
    return EXIT_OK


def cmd_protocol(cfg: RunConfig) -> int:
    code = _load(cfg)
    _check_advance(code, cfg.advance)
    try:
        bundle = build_bundle(code, cfg.advance)
    except NotQualified as exc:
        _emit({"status": "not_forbidden", "advance": sorted(set(cfg.advance)), "reason": str(exc)}, cfg)
        return EXIT_REJECT
    _emit(bundle.summary(), cfg)
    if cfg.dump_states is not None:
        _dump(cfg.dump_states, {"U": bundle.U.to_json(), "Phi": bundle.Phi.to_json()})
    return EXIT_OK


def cmd_roundtrip(cfg: RunConfig) -> int:
    code = _load(cfg)
    _check_advance(code, cfg.advance)
    try:
        bundle = build_bundle(code, cfg.advance)
    except NotQualified as exc:
        _emit({"status": "not_forbidden", "advance": sorted(set(cfg.advance)), "reason": str(exc)}, cfg)
        return EXIT_REJECT
    rng = np.random.default_rng(cfg.seed)
    results = []
    first = None
    for _ in range(cfg.count):
        secret = parse_secret(cfg.secret, code.p, code.k, rng)
        word = encode_advance(bundle, secret)
        direct = encode_direct(code, secret)
        try:
            back = reconstruct(bundle, word)
        except NotACodeword as exc:
            _emit({"status": "not_a_codeword", "reason": str(exc)}, cfg)
            return EXIT_REJECT
        results.append(
            {
                "secret": secret.to_json(),
                "fidelity_advance_vs_direct": word.fidelity(direct),
                "fidelity_reconstructed": back.fidelity(secret),
            }
        )
        if first is None:
            first = (secret, word, back)
    worst = min(min(r["fidelity_advance_vs_direct"], r["fidelity_reconstructed"]) for r in results)
    ok = worst >= 1 - cfg.fidelity_tol
    _emit(
        {
            "status": "ok" if ok else "fidelity_below_threshold",
            "seed": cfg.seed,
            "secret_spec": cfg.secret,
            "bundle": bundle.summary(),
            "min_fidelity": worst,
            "results": results,
        },
        cfg,
    )
    if cfg.dump_states is not None:
        secret, word, back = first
        _dump(
            cfg.dump_states,
            {
                "U": bundle.U.to_json(),
                "Phi": bundle.Phi.to_json(),
                "secret": secret.to_json(),
                "codeword": word.to_json(),
                "reconstructed": back.to_json(),
            },
        )
    return EXIT_OK if ok else EXIT_FAIL


def _dump(directory: Path, items: dict) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    for name, data in items.items():
        (directory / f"{name}.json").write_text(dumps(data))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qss", description=__doc__.split("\n\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("file", type=Path, help="stabilizer file")
        p.add_argument("-o", "--output", type=Path, help="write JSON here instead of stdout")
        p.add_argument("--cap", type=int, default=simulator.DEFAULT_CAP, help="max Hilbert-space dimension")

    p_acc = sub.add_parser("access", help="classify every subset of shares")
    common(p_acc)
    p_acc.add_argument("--oracle", action="store_true", help="cross-check with reduced density matrices")

    for name, help_ in [("protocol", "build the advance-sharing bundle"),
                        ("roundtrip", "encode in advance, compare, reconstruct")]:
        p = sub.add_parser(name, help=help_)
        common(p)
        p.add_argument("--advance", required=True, help="1-based share indices handed out early, e.g. 1,2,3,4")
        p.add_argument("--dump-states", type=Path, help="directory for U, Phi and state JSON")
        if name == "roundtrip":
            p.add_argument("--secret", default="plus")
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--count", type=int, default=1, help="number of secrets (useful with 'random')")
            p.add_argument("--tol", type=float, default=1e-8, help="allowed fidelity deficit")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        input=args.file,
        advance=parse_indices(getattr(args, "advance", "") or ""),
        secret=getattr(args, "secret", "plus"),
        seed=getattr(args, "seed", 0),
        count=getattr(args, "count", 1),
        output=args.output,
        dump_states=getattr(args, "dump_states", None),
        cap=args.cap,
        fidelity_tol=getattr(args, "tol", 1e-8),
        oracle=getattr(args, "oracle", False),
    )


COMMANDS = {"access": cmd_access, "protocol": cmd_protocol, "roundtrip": cmd_roundtrip}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        cfg = config_from_args(args)
        old = simulator.set_dimension_cap(cfg.cap)
        try:
            return COMMANDS[cfg.command](cfg)
        finally:
            simulator.set_dimension_cap(old)
    except (ValueError, IndexError, OSError) as exc:
        # parse errors, invalid generators, bad indices, dimension cap
        print(f"qss: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
