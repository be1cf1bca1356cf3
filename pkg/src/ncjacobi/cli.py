"""Command-line entry point: ``ncjacobi <subcommand> [flags]``.

Exit status is 0 when every check passes, 1 on any failure and 2 on a
usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from typing import Callable, Sequence

from . import hirota, jacobi, partitions, special
from .report import VerificationReport, timed

MUTATIONS = ("split-sign", "rho-sign", "no-tilde")


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def _fraction_list(text: str) -> list[Fraction]:
    return [_fraction(t) for t in text.split(",") if t.strip()]


def default_couplings(rank: int) -> list[Fraction]:
    """A fixed non-trivial zero-sum choice: l_0 = 1, l_r = -1 (just [0] at rank 0)."""
    if rank == 0:
        return [Fraction(0)]
    return [Fraction(1)] + [Fraction(0)] * (rank - 1) + [Fraction(-1)]


def _quiver(rank: int, eps, eps3t, couplings):
    couplings = couplings if couplings is not None else default_couplings(rank)
    if len(couplings) != rank + 1:
        raise UsageError(f"--couplings needs {rank + 1} values for rank {rank}")
    return special.EpsilonParams(rank, eps, eps3t), special.CouplingData(couplings)


def combine(identity: str, parameters: dict, reports: Sequence[VerificationReport]) -> VerificationReport:
    out = VerificationReport(identity, parameters)
    for rep in reports:
        out.merge(rep, f"{rep.identity}: ")
        out.elapsed_ms += rep.elapsed_ms
    return out


# --- subcommands ------------------------------------------------------------------

def cmd_bijection(a, threads):
    return partitions.verify_bijection(a.max_weight, a.m_range)


def cmd_psi(a, threads):
    return partitions.verify_psi_sweep(a.max_weight, a.m_range, a.order)


def cmd_snake(a, threads):
    return partitions.verify_snake_sweep(a.max_weight, a.m_range)


def cmd_split(a, threads):
    return jacobi.verify_split(a.max_weight, a.m_range, threads=threads)


def cmd_jacobi(a, threads):
    sign = -1 if a.mutate == "split-sign" else 1
    reps = [jacobi.verify_jacobi(a.cutoff, t, split_charge_sign=sign, threads=threads) for t in (False, True)]
    params = {"cutoff": a.cutoff}
    if a.mutate == "split-sign":
        params["mutation"] = a.mutate
    return combine("jacobi", params, reps)


def cmd_hirota(a, threads):
    mutation = a.mutate if a.mutate in ("rho-sign", "no-tilde") else None
    return hirota.verify_bilinear(a.max_grade, threads=threads, mutation=mutation)


def cmd_classical_jtp(a, threads):
    return special.verify_classical_jtp(a.order, a.z_range)


def cmd_w1inf(a, threads):
    return special.verify_bosfert(a.times, a.degree_cap, a.order, a.m_range)


def cmd_qchar(a, threads):
    ep, cd = _quiver(a.rank, a.eps, a.eps3_tilde, a.couplings)
    nodes = [a.node] if a.node is not None else list(range(a.rank + 1))
    reps = [special.verify_qchar_jacobi(ep, cd, i, a.cutoff, threads=threads) for i in nodes]
    if len(reps) == 1:
        return reps[0]
    return combine("qchar", {"rank": a.rank, "nodes": nodes, "cutoff": a.cutoff}, reps)


def cmd_red34(a, threads):
    ep, cd = _quiver(a.rank, a.eps, a.eps3_tilde, a.couplings)
    return special.verify_red34(ep, cd, a.node or 0, a.order, a.z_range)


def cmd_fay(a, threads):
    rep = special.verify_fay_sweep(a.trials)
    rep.terms_checked += 1
    ep = special.EpsilonParams(0, a.eps, a.eps3_tilde)
    if not special.verify_fay(ep):
        rep.fail(f"eps={ep.eps} eps3~={ep.eps3_tilde}", "False", "True")
    return rep


PROFILES = {
    "quick": dict(bijection=(8, 4, 13), psi=(6, 4, 12), snake=6, split=(6, 4), cutoff=4, grade=8,
                  jtp=(30, 5), w1inf=[(3, 2, 12)], qchar_cutoff=3, limit=(4, 3), trials=20),
    "full": dict(bijection=(12, 6, 17), psi=(6, 4, 12), snake=8, split=(8, 5), cutoff=6, grade=12,
                 jtp=(30, 5), w1inf=[(3, 2, 12), (4, 2, 12)], qchar_cutoff=4, limit=(4, 3), trials=50),
}


def run_all(profile: str, threads: int | None = None, mutate: str | None = None) -> VerificationReport:
    p = PROFILES[profile]
    sign = -1 if mutate == "split-sign" else 1
    hmut = mutate if mutate in ("rho-sign", "no-tilde") else None
    jobs: list[Callable[[], VerificationReport]] = [
        lambda: partitions.verify_bijection(*p["bijection"]),
        lambda: partitions.verify_psi_sweep(*p["psi"]),
        lambda: partitions.verify_snake_sweep(p["snake"]),
        lambda: jacobi.verify_split(*p["split"], threads=threads),
        lambda: jacobi.verify_jacobi(p["cutoff"], False, split_charge_sign=sign, threads=threads),
        lambda: jacobi.verify_jacobi(p["cutoff"], True, split_charge_sign=sign, threads=threads),
        lambda: hirota.verify_bilinear(p["grade"], threads=threads, mutation=hmut),
        lambda: special.verify_classical_jtp(*p["jtp"]),
    ]
    for K, D, order in p["w1inf"]:
        jobs.append(lambda K=K, D=D, order=order: special.verify_bosfert(K, D, order))
    for r in (0, 1, 2):
        ep, cd = _quiver(r, Fraction(1), Fraction(1, 3), None)
        for i in range(r + 1):
            jobs.append(lambda ep=ep, cd=cd, i=i: special.verify_qchar_jacobi(ep, cd, i, p["qchar_cutoff"],
                                                                               threads=threads))
    for r in (0, 1):
        ep, cd = _quiver(r, Fraction(1), Fraction(1, 3), None)
        jobs.append(lambda ep=ep, cd=cd: special.verify_red34(ep, cd, 0, *p["limit"]))
    jobs.append(lambda: special.verify_xi_solver(p["trials"], range(1, 5)))
    jobs.append(lambda: special.verify_fay_sweep(20))

    params = {"profile": profile}
    if mutate:
        params["mutation"] = mutate
    reps = []
    for job in jobs:
        rep = job()
        print(rep.summary())
        reps.append(rep)
    return combine("all", params, reps)


def cmd_all(a, threads):
    return run_all(a.profile, threads, a.mutate)


COMMANDS = {
    "verify-bijection": (cmd_bijection, "charged partitions <-> half-integer set pairs",
                         dict(max_weight=12, m_range=6)),
    "verify-psi": (cmd_psi, "the psi generating-function identities", dict(max_weight=6, m_range=4, order=12)),
    "verify-snake": (cmd_snake, "snake classes, coverage and bounds", dict(max_weight=8, m_range=None)),
    "verify-split": (cmd_split, "factorization of X_lambda over the set pair", dict(max_weight=8, m_range=5)),
    "verify-jacobi": (cmd_jacobi, "noncommutative triple product, both orderings", dict(cutoff=6)),
    "verify-hirota": (cmd_hirota, "bilinear identity, grade by grade", dict(max_grade=12)),
    "verify-classical-jtp": (cmd_classical_jtp, "commutative triple product", dict(order=30, z_range=5)),
    "verify-w1inf": (cmd_w1inf, "higher-times refinement", dict(times=3, degree_cap=2, order=12, m_range=None)),
    "verify-qchar": (cmd_qchar, "q-character Theta-transform", dict(rank=2, cutoff=4)),
    "verify-red34": (cmd_red34, "commutative limit of the Theta-transform", dict(rank=1, order=4, z_range=3)),
    "verify-fay": (cmd_fay, "the epsilon identity", dict(trials=20)),
    "all": (cmd_all, "every check at a preset scale", dict()),
}


def _flags() -> argparse.ArgumentParser:
    f = argparse.ArgumentParser(add_help=False)
    f.add_argument("--max-weight", type=int)
    f.add_argument("--m-range", type=int)
    f.add_argument("--cutoff", type=int, metavar="R")
    f.add_argument("--max-grade", type=int)
    f.add_argument("--order", type=int)
    f.add_argument("--z-range", type=int)
    f.add_argument("--rank", type=int)
    f.add_argument("--node", type=int)
    f.add_argument("--degree-cap", type=int)
    f.add_argument("--times", type=int, metavar="K")
    f.add_argument("--eps", type=_fraction, default=Fraction(1))
    f.add_argument("--eps3-tilde", type=_fraction, default=Fraction(1, 3))
    f.add_argument("--couplings", type=_fraction_list, help="comma-separated l_0,...,l_r summing to 0")
    f.add_argument("--trials", type=int)
    f.add_argument("--profile", choices=("quick", "full"), default="quick")
    f.add_argument("--json", metavar="PATH")
    f.add_argument("--threads", type=int)
    f.add_argument("--mutate", choices=MUTATIONS, help=argparse.SUPPRESS)
    return f


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ncjacobi", description="Exact verifier for triple-product identities.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (fn, help_text, defaults) in COMMANDS.items():
        # fresh parent each time: set_defaults mutates shared actions
        p = sub.add_parser(name, parents=[_flags()], help=help_text, description=help_text)
        p.set_defaults(func=fn, **{k: v for k, v in defaults.items()})
    return parser


def _resolve_threads(requested: int | None) -> int:
    env = os.environ.get("NCJACOBI_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return max(1, requested or 1)


def _check_numbers(a) -> None:
    for name in ("max_weight", "m_range", "max_grade", "order", "z_range", "rank", "degree_cap", "trials"):
        v = getattr(a, name, None)
        if v is not None and v < 0:
            raise UsageError(f"--{name.replace('_', '-')} must be >= 0")
    if a.cutoff is not None and a.cutoff < 1:
        raise UsageError("--cutoff must be >= 1")
    if a.times is not None and a.times < 3:
        raise UsageError("--times must be >= 3")
    if a.threads is not None and a.threads < 1:
        raise UsageError("--threads must be >= 1")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _check_numbers(args)
        report = args.func(args, _resolve_threads(args.threads))
    except (UsageError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"ncjacobi: error: {exc}", file=sys.stderr)
        return 2
    print(report.summary())
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
            fh.write("\n")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
