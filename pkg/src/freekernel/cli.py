"""Command-line front end.

Every subcommand prints a single JSON report line::

    {"command": ..., "status": "ok" | "fail", "metrics": {...}, "artifacts": [...]}

Exit status is 0 when every checked metric is within its threshold, 1 on
validation or verification failure and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import displacement as disp
from . import dyck, invariant, jsonio, markov, orthpoly1, schur
from .exceptions import FreeKernelError, InvarianceError
from .generators import default_rng, random_pd_kernel
from .kmatrix import check_invariance, definiteness, gram_residual, integer_kernel, orthonormalize
from .words import enumerate_words


def _num(x):
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    x = float(x)
    if not np.isfinite(x):
        return str(x)
    return float(f"{x:.12g}")


def _pair(z):
    return [_num(np.real(z)), _num(np.imag(z))]


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (complex, np.complexfloating)):
        return _pair(obj)
    if isinstance(obj, (int, float, np.number, bool, np.bool_)):
        return _num(obj)
    return obj


class Report:
    def __init__(self, command):
        self.command = command
        self.metrics: dict = {}
        self.info: dict = {}
        self.artifacts: list[str] = []
        self.ok = True

    def check(self, name, value, threshold):
        self.metrics[name] = value
        if not value < threshold:
            self.ok = False

    def emit(self, out=None) -> int:
        out = sys.stdout if out is None else out
        payload = {
            "command": self.command,
            "status": "ok" if self.ok else "fail",
            "metrics": _jsonable(self.metrics),
            "artifacts": self.artifacts,
        }
        if self.info:
            payload["info"] = _jsonable(self.info)
        out.write(json.dumps(payload) + "\n")
        return 0 if self.ok else 1

    def write(self, path, obj):
        if path:
            jsonio.dump(obj, path)
            self.artifacts.append(str(path))
            return True
        return False


def _tol(args, default):
    return args.tol if getattr(args, "tol", None) is not None else default


def _kernel_arg(args, attr="kernel"):
    path = getattr(args, attr, None)
    if path:
        return jsonio.kernel_from_dict(jsonio.load(path))
    size = getattr(args, "random", None)
    if size:
        return random_pd_kernel(size, default_rng()), None
    raise FreeKernelError(f"--{attr} or --random is required")


# command handlers -----------------------------------------------------------


def cmd_pd_check(args, rep):
    K, _ = _kernel_arg(args)
    r = definiteness(K, tol=args.tol)
    rep.metrics["min_pivot"] = r.min_pivot
    rep.metrics["size"] = K.size
    rep.info["classification"] = r.classification.value
    rep.ok = r.is_psd


def cmd_schur(args, rep):
    if args.action == "reconstruct":
        params = jsonio.params_from_dict(jsonio.load(args.params))
        diag = None if args.diag is None else [float(x) for x in args.diag.split(",")]
        K = schur.reconstruct(params, diag)
        rep.metrics["size"] = K.size
        rep.metrics["min_pivot"] = definiteness(K).min_pivot
        if not rep.write(args.output, jsonio.kernel_to_dict(integer_kernel(K.entries))):
            rep.info["kernel"] = jsonio.kernel_to_dict(K)
        return
    K, _ = _kernel_arg(args)
    K = integer_kernel(K.entries)
    params = schur.extract(K)
    if args.action == "extract":
        rep.metrics["n"] = params.n
        rep.metrics["degenerate"] = len(params.degenerate)
        rep.metrics["max_abs_gamma"] = max((abs(g) for g in params.gamma.values()), default=0.0)
        if not rep.write(args.output, jsonio.params_to_dict(params)):
            rep.info["params"] = jsonio.params_to_dict(params)
    else:
        R = schur.reconstruct(params, K.entries.diagonal().real)
        rep.check("max_error", float(np.abs(R.entries - K.entries).max()), _tol(args, 1e-9))


def cmd_dyck(args, rep):
    if args.action == "count":
        c = dyck.catalan(args.k)
        rep.metrics["count"] = c
        if args.k <= dyck.MAX_ENUMERATION:
            rep.metrics["enumerated"] = len(dyck.enumerate_dyck(args.k))
            rep.ok = rep.metrics["enumerated"] == c
    elif args.action == "enumerate":
        paths = [list(p) for p in dyck.enumerate_dyck(args.k)]
        rep.metrics["count"] = len(paths)
        if not rep.write(args.output, {"k": args.k, "paths": paths}):
            rep.info["paths"] = paths
    elif args.action == "sum":
        params = jsonio.params_from_dict(jsonio.load(args.params))
        value = dyck.kernel_by_dyck_sum(params, args.l, args.m)
        line = schur.reconstruct(params).entries[args.l, args.m]
        rep.metrics["paths"] = dyck.catalan(args.m - args.l)
        rep.info["value"] = value
        rep.info["transmission_line"] = line
        rep.check("error", abs(value - line), _tol(args, 1e-9))
    else:
        c = dyck.catalan(args.n)
        traj = len(dyck.seismic_trajectories(args.n))
        rep.metrics["catalan"] = c
        rep.metrics["trajectories"] = traj
        rep.ok = c == traj


def _factors(args):
    right, _ = jsonio.kernel_from_dict(jsonio.load(args.right))
    left, _ = jsonio.kernel_from_dict(jsonio.load(args.left))
    return right, left


def cmd_markov(args, rep):
    right, left = _factors(args)
    if args.action == "product":
        P = markov.markov_product(right, left)
        r = definiteness(P)
        rep.metrics["size"] = P.size
        rep.metrics["min_pivot"] = r.min_pivot
        rep.ok = r.is_psd
        if not rep.write(args.output, jsonio.kernel_to_dict(P)):
            rep.info["kernel"] = jsonio.kernel_to_dict(P)
    else:
        r = markov.verify_markov_parameters(right, left)
        tol = _tol(args, markov.CROSS_TOL)
        rep.check("left_deviation", r.left_deviation, tol)
        rep.check("right_deviation", r.right_deviation, tol)
        rep.check("cross_max", r.cross_max, tol)
        rep.metrics["min_pivot"] = r.min_pivot


def _invariance_metrics(rep, K, N, tol):
    inv = check_invariance(K, N)
    pd = definiteness(K)
    rep.check("max_violation", inv.max_violation, tol)
    rep.metrics["min_pivot"] = pd.min_pivot
    rep.info["classification"] = pd.classification.value
    if inv.triple is not None and inv.max_violation >= tol:
        rep.info["violation_at"] = {
            "tau": list(inv.triple[0]),
            "sigma": list(inv.triple[1]),
            "sigma_prime": list(inv.triple[2]),
        }
    rep.ok = rep.ok and pd.is_psd


def cmd_invariant(args, rep):
    tol = _tol(args, 1e-10)
    if args.action == "gen":
        t = jsonio.parse_complex_list(args.t)
        K = invariant.t_kernel(t, args.depth)
        rep.metrics["size"] = K.size
        _invariance_metrics(rep, K, len(t), tol)
        if not rep.write(args.output, jsonio.kernel_to_dict(K, len(t))):
            rep.info["kernel"] = jsonio.kernel_to_dict(K, len(t))
    elif args.action == "verify":
        K, N = jsonio.kernel_from_dict(jsonio.load(args.kernel))
        N = args.N or N
        if N is None:
            raise FreeKernelError("alphabet size unknown: pass --N")
        _invariance_metrics(rep, K, N, tol)
    elif args.action == "polys":
        t = jsonio.parse_complex_list(args.t)
        K = invariant.t_kernel(t, args.depth)
        A = invariant.coefficient_matrix(invariant.theorem31_polys(t, args.depth), K.labels)
        gs = orthonormalize(K).coefficients
        rep.check("gram_residual", gram_residual(A, K.entries), _tol(args, 1e-10))
        rep.check("gram_schmidt_difference", float(np.abs(A - gs).max()), _tol(args, 1e-9))
        rep.check("chordal_deviation", invariant.chordal_identity_check(t, args.depth).max_deviation, 1e-12)
    else:
        c1 = jsonio.moments_from_dict(jsonio.load(args.c1))
        c2 = jsonio.moments_from_dict(jsonio.load(args.c2))
        K = invariant.free_product_kernel([c1, c2], args.depth)
        rep.metrics["size"] = K.size
        _invariance_metrics(rep, K, 2, tol)
        if not rep.write(args.output, jsonio.kernel_to_dict(K, 2)):
            rep.info["kernel"] = jsonio.kernel_to_dict(K, 2)


def _moments_arg(args):
    K, _ = _kernel_arg(args, "moments")
    return integer_kernel(K.entries)


def cmd_orthpoly(args, rep):
    s = _moments_arg(args)
    table = orthpoly1.recurrence_polys(s)
    max_n = min(args.max_n, table.max_index)
    worst = 0.0
    for n in range(max_n + 1):
        for t in range(table.max_index - n + 1):
            worst = max(worst, orthpoly1.verify_coefficient_systems(s, n, t, table).max_residual)
    rep.check("system_residual", worst, _tol(args, orthpoly1.SYSTEM_TOL))
    rows = [
        {"n": n, "l": l, "phi": table.phi[n, l], "phi_sharp": table.phi_sharp[n, l]}
        for n in range(max_n + 1)
        for l in range(table.max_index - n + 1)
    ]
    if args.format == "table":
        for r in rows:
            coeffs = " ".join(f"{z.real:+.6f}{z.imag:+.6f}i" for z in r["phi"])
            print(f"n={r['n']} l={r['l']}: {coeffs}")
    else:
        rep.info["polynomials"] = rows


def _nt_pairs(args, M, extra):
    if args.n is not None and args.t is not None:
        return [(args.n, args.t)]
    return [(n, t) for n in range(M) for t in range(M - n - extra + 1)]


def cmd_disp(args, rep):
    if args.action == "invariant":
        K, N = jsonio.kernel_from_dict(jsonio.load(args.kernel))
        N = args.N or N
        if N is None:
            raise FreeKernelError("alphabet size unknown: pass --N")
        if args.n is not None and len(enumerate_words(N, args.n)) != K.size:
            raise FreeKernelError(f"kernel size {K.size} does not match depth n={args.n}")
        try:
            f = disp.invariant_factorization(K, N)
        except InvarianceError as exc:
            rep.ok = False
            rep.metrics["max_violation"] = exc.violation
            tau, s, s2 = exc.triple
            rep.info["violation_at"] = {"tau": list(tau), "sigma": list(s), "sigma_prime": list(s2)}
            return
        tol = _tol(args, disp.INVARIANT_TOL)
        rep.check("residual", f.displacement_residual, tol)
        rep.metrics["J_dim"] = f.dimension
        if args.diagonalize:
            _, p = disp.diagonalize_symmetry(f.J)
            rep.metrics["p_n"] = p
        G = {"re": f.G.real.tolist(), "im": f.G.imag.tolist()}
        if not rep.write(args.output, {"G": G, "J": f.J.real.tolist()}):
            rep.info["G"] = G
        return
    S = _moments_arg(args)
    M = S.size - 1
    if args.action == "forward":
        worst = max(disp.residual_forward_n1(S, n, t) for n, t in _nt_pairs(args, M, 1))
        rep.check("residual", worst, _tol(args, disp.FORWARD_TOL))
    else:
        table = orthpoly1.recurrence_polys(S)
        res = [disp.inverse_displacement_n1(S, n, t, table) for n, t in _nt_pairs(args, M, 1)]
        tol = _tol(args, disp.INVERSE_TOL)
        rep.check("residual", max(r.residual for r in res), tol)
        rep.check("identity1_residual", max(r.identity1_residual for r in res), tol)
        rep.check("identity2_residual", max(r.identity2_residual for r in res), tol)


# parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, help="override the default threshold")
    common.add_argument("-o", "--output", help="write the artifact to this file")

    src = argparse.ArgumentParser(add_help=False)
    src.add_argument("--random", type=int, metavar="SIZE", help="random strictly PD input (seed: $FREEKERNEL_SEED)")

    p = argparse.ArgumentParser(prog="freekernel", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("pd-check", parents=[common, src], help="classify definiteness")
    q.add_argument("--kernel")
    q.set_defaults(func=cmd_pd_check)

    q = sub.add_parser("schur", parents=[common, src], help="Schur parameters")
    q.add_argument("action", choices=["extract", "reconstruct", "roundtrip"])
    q.add_argument("--kernel")
    q.add_argument("--params")
    q.add_argument("--diag", help="comma-separated diagonal for reconstruct")
    q.set_defaults(func=cmd_schur)

    q = sub.add_parser("dyck", parents=[common], help="Dyck paths")
    q.add_argument("action", choices=["count", "enumerate", "sum", "seismic"])
    q.add_argument("--k", type=int)
    q.add_argument("--n", type=int)
    q.add_argument("--params")
    q.add_argument("--l", type=int)
    q.add_argument("--m", type=int)
    q.set_defaults(func=cmd_dyck)

    q = sub.add_parser("markov", parents=[common], help="Markov products")
    q.add_argument("action", choices=["product", "verify"])
    q.add_argument("--left", required=True, help="kernel on {-m..0}")
    q.add_argument("--right", required=True, help="kernel on {0..n}")
    q.set_defaults(func=cmd_markov)

    q = sub.add_parser("invariant", parents=[common], help="invariant kernels")
    q.add_argument("action", choices=["gen", "verify", "polys", "freeprod"])
    q.add_argument("kernel", nargs="?")
    q.add_argument("--t", help='contraction tuple, e.g. "0.3,0.5i"')
    q.add_argument("--depth", type=int, default=2)
    q.add_argument("--N", type=int)
    q.add_argument("--c1")
    q.add_argument("--c2")
    q.set_defaults(func=cmd_invariant)

    q = sub.add_parser("orthpoly", parents=[common, src], help="one-variable orthonormal polynomials")
    q.add_argument("--moments")
    q.add_argument("--max-n", type=int, default=5)
    q.add_argument("--format", choices=["table", "json"], default="json")
    q.set_defaults(func=cmd_orthpoly)

    q = sub.add_parser("disp", parents=[common, src], help="displacement equations")
    q.add_argument("action", choices=["forward", "inverse", "invariant"])
    q.add_argument("--moments")
    q.add_argument("--kernel")
    q.add_argument("--N", type=int)
    q.add_argument("--n", type=int)
    q.add_argument("--t", type=int)
    q.add_argument("--diagonalize", action="store_true")
    q.set_defaults(func=cmd_disp)
    return p


_REQUIRED = {
    ("dyck", "count"): ["k"],
    ("dyck", "enumerate"): ["k"],
    ("dyck", "sum"): ["params", "l", "m"],
    ("dyck", "seismic"): ["n"],
    ("schur", "reconstruct"): ["params"],
    ("invariant", "gen"): ["t"],
    ("invariant", "polys"): ["t"],
    ("invariant", "verify"): ["kernel"],
    ("invariant", "freeprod"): ["c1", "c2"],
    ("disp", "invariant"): ["kernel"],
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    action = getattr(args, "action", None)
    missing = [a for a in _REQUIRED.get((args.command, action), []) if getattr(args, a) is None]
    if missing:
        parser.error(f"{args.command} {action}: missing --{', --'.join(missing)}")
    rep = Report(f"{args.command} {action}" if action else args.command)
    try:
        args.func(args, rep)
    except FreeKernelError as exc:
        rep.ok = False
        rep.info["error"] = f"{type(exc).__name__}: {exc}"
    return rep.emit()


dispatch = main


if __name__ == "__main__":
    sys.exit(main())
