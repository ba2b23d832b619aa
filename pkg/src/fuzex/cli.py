"""Command-line interface: plan, crs, sample, enroll, reproduce, experiment.

Exit codes: 0 ok, 1 reproduction failed, 2 infeasible parameters,
3 digest mismatch, 4 malformed input, 5 experiment bound violated,
64 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import warnings
from pathlib import Path

import numpy as np

from . import fileformat as ff
from .bits import pack_bits
from .errors import DigestMismatch, FormatError, ParameterError
from .extractor import ToeplitzSeed
from .games.experiments import run_experiment
from .params import (Params, max_key_length, output_length, mac_length, report, solve_ell,
                     solve_t, validate)
from .rfe import rfe_gen, rfe_rep
from .sampler import generate_crs
from .sources import NoiseModel, perturb
from .srrfe import srrfe_gen, srrfe_rep

EXIT_OK, EXIT_BOTTOM, EXIT_INFEASIBLE, EXIT_DIGEST, EXIT_MALFORMED, EXIT_BOUND = 0, 1, 2, 3, 4, 5
EXIT_USAGE = 64
SEED_ENV = "FUZEX_SEED"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _Fail(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _rng(seed: int | None) -> np.random.Generator:
    if seed is None and os.environ.get(SEED_ENV):
        try:
            seed = int(os.environ[SEED_ENV])
        except ValueError:
            raise _Fail(EXIT_USAGE, f"{SEED_ENV} must be an integer") from None
    return np.random.default_rng(seed)


def _read(path) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise _Fail(EXIT_MALFORMED, f"cannot read {path}: {exc.strerror}") from None


def _load_params(path) -> Params:
    try:
        return Params.from_dict(json.loads(_read(path)))
    except (ValueError, TypeError) as exc:
        raise _Fail(EXIT_MALFORMED, f"bad parameter file {path}: {exc}") from None


def _load_sample(path, n) -> np.ndarray:
    w = ff.parse_sample(_read(path))
    if w.size != n:
        raise _Fail(EXIT_MALFORMED, f"sample has {w.size} bits, parameters need n={n}")
    return w


def commitment(key) -> str:
    return hashlib.sha256(b"fuzex/key" + pack_bits(key)).hexdigest()


def _emit_key(args, key, params):
    if args.key:
        Path(args.key).write_bytes(ff.serialize_key(key, params))
    print(f"key commitment {commitment(key)}")


# -- plan -------------------------------------------------------------------------


def plan(construction, alpha, n, m, t_err, sigma, eps_prime, lam=0, N=None, eta=1,
         q_e=0, q_d=0, xi=None):
    """Solve ``ell``, ``t`` and ``xi``; returns ``(params, violations)``."""
    target = eps_prime
    ell = solve_ell(n, m, t_err, 128, target)
    if ell is None:
        return None, ["correctness: no ell meets eps' (miss term never small enough)"]
    t = solve_t(ell, target)
    chosen = xi
    for _ in range(32):
        k = chosen if chosen is not None else max_key_length(alpha, ell, sigma, t, lam, construction)
        nu = output_length(construction, k, t, lam)
        L = mac_length(ell, nu, lam) if construction == 2 else 0
        new_t = solve_t(ell, target, construction, lam, L) if construction == 2 else t
        if new_t == t:
            break
        t = new_t
    params = Params(construction, n, m, ell, t, k, nu, t_err=t_err, lam=lam, L=L,
                    alpha=alpha, N=N, sigma=sigma, eps_prime=eps_prime, eta=eta,
                    q_e=q_e, q_d=q_d)
    problems = [str(v) for v in validate(params)]
    if k < 1 and not any(p.startswith("key length") for p in problems):
        problems.insert(0, "key length: no positive key length fits alpha, sigma and t")
    return params, problems


def cmd_plan(args) -> int:
    if args.construction == 2 and not args.lam:
        raise _Fail(EXIT_USAGE, "construction 2 needs --lam")
    params, problems = plan(args.construction, args.alpha, args.n, args.m, args.t_err,
                            args.sigma, args.eps_prime, args.lam if args.construction == 2 else 0,
                            args.N, args.eta, args.q_e, args.q_d, args.xi)
    if params is not None:
        print(report(params))
        xi_max = max_key_length(params.alpha, params.ell, params.sigma, params.t,
                                params.lam, params.construction)
        print(f"xi_max            {xi_max}")
    if problems:
        for p in problems:
            print(f"infeasible: {p}", file=sys.stderr)
        return EXIT_INFEASIBLE
    if args.out:
        Path(args.out).write_text(params.to_json() + "\n")
    return EXIT_OK


# -- crs / sample ------------------------------------------------------------------


def cmd_crs(args) -> int:
    params = _load_params(args.params)
    if params.construction != 2:
        raise _Fail(EXIT_USAGE, "a CRS is used by construction 2 only")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        crs = generate_crs(params, _rng(args.seed))
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    Path(args.out).write_bytes(ff.serialize_crs(crs, params))
    return EXIT_OK


def cmd_sample(args) -> int:
    rng = _rng(args.seed)
    if args.source:
        w = ff.parse_sample(_read(args.source))
        w = perturb(w, NoiseModel.random(args.flip), rng)
    else:
        if not args.n:
            raise _Fail(EXIT_USAGE, "give --n or --from")
        w = rng.integers(0, 2, size=args.n, dtype=np.uint8)
    Path(args.out).write_bytes(ff.serialize_sample(w))
    return EXIT_OK


# -- enroll / reproduce --------------------------------------------------------------


def _load_crs(path, params):
    cparams, crs = ff.parse_crs(_read(path))
    crs.check(params)
    return crs


def cmd_enroll(args) -> int:
    params = _load_params(args.params)
    problems = [v for v in validate(params) if v.constraint not in ("key length", "correctness")]
    if problems:
        raise _Fail(EXIT_MALFORMED, "; ".join(map(str, problems)))
    w = _load_sample(args.sample, params.n)
    rng = _rng(args.seed)
    if params.construction == 1:
        seed = ToeplitzSeed.random(params.m, params.nu, rng)
        key, helper = rfe_gen(w, seed, params, rng)
        data = ff.serialize_helper(helper, params, seed)
    else:
        if not args.crs:
            raise _Fail(EXIT_USAGE, "construction 2 needs --crs")
        crs = _load_crs(args.crs, params)
        key, helper = srrfe_gen(w, crs, params, rng)
        data = ff.serialize_helper(helper, params)
    Path(args.helper).write_bytes(data)
    _emit_key(args, key, params)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    params, helper, seed = ff.parse_helper(_read(args.helper))
    w = _load_sample(args.sample, params.n)
    if params.construction == 1:
        if seed is None:
            raise _Fail(EXIT_MALFORMED, "construction-1 helper file carries no extractor seed")
        key = rfe_rep(w, helper, seed, params)
    else:
        if not args.crs:
            raise _Fail(EXIT_USAGE, "construction 2 needs --crs")
        crs = _load_crs(args.crs, params)
        key = srrfe_rep(w, helper, crs, params)
    if key is None:
        print("reproduction failed", file=sys.stderr)
        return EXIT_BOTTOM
    _emit_key(args, key, params)
    return EXIT_OK


# -- experiment ----------------------------------------------------------------------


def cmd_experiment(args) -> int:
    try:
        cfg = json.loads(_read(args.config))
    except ValueError as exc:
        raise _Fail(EXIT_MALFORMED, f"bad config: {exc}") from None
    if args.seed is not None or os.environ.get(SEED_ENV):
        rng = _rng(args.seed)
    else:
        rng = np.random.default_rng(cfg.get("seed"))
    records = run_experiment(cfg, rng)
    lines = "".join(json.dumps(r, sort_keys=True, default=float) + "\n" for r in records)
    if args.out:
        Path(args.out).write_text(lines)
    sys.stdout.write(lines)
    return EXIT_OK if all(r["passed"] for r in records) else EXIT_BOUND


# -- entry point ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="fuzex", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("plan", help="solve and check parameters")
    p.add_argument("--construction", type=int, choices=(1, 2), required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--t-err", type=int, required=True)
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--eps-prime", type=float, required=True)
    p.add_argument("--N", type=int)
    p.add_argument("--lam", type=int, default=0)
    p.add_argument("--eta", type=int, default=1)
    p.add_argument("--q-e", type=int, default=0)
    p.add_argument("--q-d", type=int, default=0)
    p.add_argument("--xi", type=int, help="fix the key length instead of maximising it")
    p.add_argument("--out", help="write the parameter record as JSON")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("crs", help="generate a common random string")
    p.add_argument("--params", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_crs)

    p = sub.add_parser("sample", help="write a random sample or a noisy copy of one")
    p.add_argument("--n", type=int)
    p.add_argument("--from", dest="source")
    p.add_argument("--flip", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_sample)

    for name, func in (("enroll", cmd_enroll), ("reproduce", cmd_reproduce)):
        p = sub.add_parser(name)
        p.add_argument("--sample", required=True)
        p.add_argument("--helper", required=True)
        p.add_argument("--crs")
        p.add_argument("--key", help="key output file (needs --test-vectors)")
        p.add_argument("--test-vectors", action="store_true",
                       help="allow writing the key itself to a file")
        if name == "enroll":
            p.add_argument("--params", required=True)
            p.add_argument("--seed", type=int)
        p.set_defaults(func=func)

    p = sub.add_parser("experiment", help="run an experiment config")
    p.add_argument("--config", required=True)
    p.add_argument("--out")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_experiment)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "key", None) and not args.test_vectors:
        print("fuzex: --key writes secret key material; add --test-vectors", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except _Fail as exc:
        print(f"fuzex: {exc}", file=sys.stderr)
        return exc.code
    except DigestMismatch as exc:
        print(f"fuzex: digest mismatch: {exc}", file=sys.stderr)
        return EXIT_DIGEST
    except FormatError as exc:
        print(f"fuzex: malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except ParameterError as exc:
        print(f"fuzex: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
