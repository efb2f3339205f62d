"""Command-line front end: every experiment writes one CSV table.

Output is RFC-4180 style CSV with LF line endings.  The first line is a
``#`` comment recording the command with its parameters plus the library version;
the second is the column header.  Floats are written with 17 significant
digits.

Exit status: 0 on success, 2 when parameters fail validation, 1 when a
numerical step fails (a singular matrix or an integrator failure).

CSV schemas
-----------
quad-nodes     j,node,w_base,w_gjmqr1,w_gjmqr2
ortho-check    n,m,gram,expected,abs_dev
eigen-check    n,eigenvalue,ratio_n2mu
project        k,coeff   (followed by l2_error and linf_error comment lines)
ode            j,node,numeric,exact,abs_err
ode-sweep      n,err_inf,cond_jmf,cond_muntz
pde            j,node,numeric,exact,abs_err
burgers        j,node,numeric,exact,abs_err
burgers-sweep  n,E2,Einf
"""

import argparse
import csv
import io
import sys
import warnings

import numpy as np

from . import __version__
from .errors import MuntzError, ParameterError
from .jmf import JmfParams, jmf_batch, jmf_eigenvalue, jmf_norm, prefactor, validate_params
from .projection import error_norms, project
from .quadrature import gjm_base_rule, gjmqr_rule
from .solvers import (ExperimentConfig, MuntzBasis, burgers_example, burgers_sweep,
                      diffusion_example, example_terms, manufactured_rhs, monomial_exact,
                      solve_burgers, solve_fractional_diffusion, solve_muntz_monomial_ode,
                      solve_steady_ode)

# Default parameter sets, one per experiment family.
QUAD_SET = dict(alpha=0.5, beta=1.5, mu=0.5, sigma=0.5, eta=2.0, b=10.0, kind=1, n=50)
STEADY_SET = dict(alpha=0.5, beta=1.5, mu=1.5, sigma=0.5, eta=-3.0, b=1.0, kind=1, n=20, n_max=100,
            nu=3.0, k1=1.0, k2=1.0)
DIFFUSION_SET = dict(alpha=0.5, beta=3.5, mu=1.5, sigma=0.5, eta=-1.0, b=1.0, kind=1, n=10, nu=7.0,
            t_final=5.0)
BURGERS_SET = dict(alpha=0.5, beta=2.0, mu=0.5, sigma=0.5, eta=2.0, b=1.0, kind=2, n=10,
            epsilon=0.1, t_final=10.0, case=1, n_max=12)
ORTHO = dict(alpha=0.5, beta=1.5, mu=0.5, sigma=0.5, eta=-3.0, b=1.0, kind=1, n_max=12)
EIGEN = dict(alpha=1.0, beta=2.0, mu=0.75, sigma=0.5, eta=0.5, b=1.0, kind=1, n_max=20)
PROJ = dict(alpha=0.5, beta=1.5, mu=0.5, sigma=0.5, eta=-3.0, b=400.0, kind=1, n=40)


def fmt(v):
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return "%.17g" % float(v)


def write_table(path, args, header, rows, trailer=()):
    buf = io.StringIO()
    params = " ".join(f"{k}={v}" for k, v in sorted(vars(args).items())
                      if k not in ("func", "output") and v is not None)
    buf.write(f"# jacobi_muntz {__version__} {params}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    for line in trailer:
        buf.write(f"# {line}\n")
    text = buf.getvalue()
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def params_from(args):
    p = JmfParams(args.alpha, args.beta, args.mu, args.sigma, args.eta, args.b, args.kind)
    report = validate_params(p)
    if report.hard_violations:
        raise ParameterError(f"invalid parameters: {report.summary()}")
    if not report.ok:
        print(f"warning: {report.summary()}", file=sys.stderr)
    return p


def cmd_quad_nodes(args):
    p = params_from(args)
    base = gjm_base_rule(args.n, p.alpha, p.beta, p.sigma, p.b)
    r1 = gjmqr_rule(1, args.n, p.with_kind(1))
    r2 = gjmqr_rule(2, args.n, p.with_kind(2))
    rows = [(j, base.nodes[j], base.weights[j], r1.weights[j], r2.weights[j])
            for j in range(args.n + 1)]
    write_table(args.output, args, ["j", "node", "w_base", "w_gjmqr1", "w_gjmqr2"], rows)


def cmd_ortho_check(args):
    p = params_from(args)
    N = args.n_max
    rule = gjmqr_rule(p.kind, N + 1, p)
    B = jmf_batch(N, p, rule.nodes)
    G = (B * rule.weights) @ B.T
    rows = []
    for n in range(N + 1):
        for m in range(N + 1):
            expected = jmf_norm(n, p) if n == m else 0.0
            rows.append((n, m, G[n, m], expected, abs(G[n, m] - expected)))
    write_table(args.output, args, ["n", "m", "gram", "expected", "abs_dev"], rows)


def cmd_eigen_check(args):
    p = params_from(args)
    rows = []
    for n in range(1, args.n_max + 1):
        lam = jmf_eigenvalue(p.kind, n, p)
        rows.append((n, lam, lam / n ** (2 * p.mu)))
    write_table(args.output, args, ["n", "eigenvalue", "ratio_n2mu"], rows)


def cmd_project(args):
    p = params_from(args)
    s, half = p.sigma, 0.5 * p.b ** p.sigma
    if args.shape == "sin":
        def u(x):
            return prefactor(p, x) * np.sin(x ** s)
    else:
        def u(x):
            return prefactor(p, x) * np.abs(x ** s - half) ** args.gamma
    c = project(u, args.n, p, quad_size=max(3 * args.n, 64))
    l2, linf = error_norms(u, c, 128)
    rows = [(k, c.coeffs[k]) for k in range(args.n + 1)]
    write_table(args.output, args, ["k", "coeff"], rows,
                [f"l2_error={fmt(l2)}", f"linf_error={fmt(linf)}"])


def _steady_cfg(args, p):
    cfg = ExperimentConfig(K1=args.k1, K2=args.k2, nu=args.nu)
    terms = example_terms(p, args.nu)
    cfg.s = manufactured_rhs(terms, cfg, p)
    return cfg, monomial_exact(terms)


def cmd_ode(args):
    p = params_from(args)
    cfg, y = _steady_cfg(args, p)
    res = solve_steady_ode(cfg, args.n, p)
    ex = y(res.nodes)
    rows = [(j, res.nodes[j], res.values[j], ex[j], abs(res.values[j] - ex[j]))
            for j in range(args.n + 1)]
    write_table(args.output, args, ["j", "node", "numeric", "exact", "abs_err"], rows,
                [f"cond={fmt(res.cond)}"])


def cmd_ode_sweep(args):
    p = params_from(args)
    cfg, y = _steady_cfg(args, p)
    rows = []
    for n in range(1, args.n_max + 1):
        res = solve_steady_ode(cfg, n, p)
        err = float(np.max(np.abs(res.values - y(res.nodes))))
        try:
            cm = solve_muntz_monomial_ode(cfg, n, MuntzBasis.from_params(n, p), p).cond
        except MuntzError:
            cm = float("inf")
        rows.append((n, err, res.cond, cm))
    write_table(args.output, args, ["n", "err_inf", "cond_jmf", "cond_muntz"], rows)


def _evolution_rows(res, exact, T):
    ex = exact(res.nodes, T)
    final = res.nodal[-1]
    return [(j, res.nodes[j], final[j], ex[j], abs(final[j] - ex[j]))
            for j in range(len(res.nodes))]


def cmd_pde(args):
    p = params_from(args)
    cfg = diffusion_example(p, args.nu, args.t_final)
    res = solve_fractional_diffusion(cfg, args.n, p, args.rtol, args.atol)
    write_table(args.output, args, ["j", "node", "numeric", "exact", "abs_err"],
                _evolution_rows(res, cfg.exact, args.t_final))


def cmd_burgers(args):
    p = params_from(args)
    if args.case == 0:
        # homogeneous problem: zero source and zero initial data
        cfg = ExperimentConfig(epsilon=args.epsilon, T=args.t_final,
                               exact=lambda x, t: np.zeros(np.shape(x)))
    else:
        cfg = burgers_example(args.case, args.epsilon, args.t_final)
    res = solve_burgers(cfg, args.n, p, args.rtol, args.atol)
    write_table(args.output, args, ["j", "node", "numeric", "exact", "abs_err"],
                _evolution_rows(res, cfg.exact, args.t_final))


def cmd_burgers_sweep(args):
    p = params_from(args)
    if args.case not in (1, 2):
        raise ParameterError("burgers-sweep needs --case 1 or 2")
    ns = list(range(4, args.n_max + 1, 2))
    rows = burgers_sweep(args.case, ns, p, args.epsilon, args.t_final, args.rtol, args.atol)
    write_table(args.output, args, ["n", "E2", "Einf"], rows)


def _add_family(sp, d):
    sp.add_argument("--alpha", type=float, default=d["alpha"])
    sp.add_argument("--beta", type=float, default=d["beta"])
    sp.add_argument("--mu", type=float, default=d["mu"])
    sp.add_argument("--sigma", type=float, default=d["sigma"])
    sp.add_argument("--eta", type=float, default=d["eta"])
    sp.add_argument("--b", type=float, default=d["b"])
    sp.add_argument("--kind", type=int, choices=(1, 2), default=d["kind"])
    sp.add_argument("--output", "-o", default="-", help="CSV path ('-' for stdout)")


def _add_time(sp, rtol=1e-10):
    sp.add_argument("--rtol", type=float, default=rtol)
    sp.add_argument("--atol", type=float, default=1e-12)


def build_parser():
    ap = argparse.ArgumentParser(prog="jacobi-muntz", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("quad-nodes", help="base and GJMQR nodes/weights")
    _add_family(sp, QUAD_SET)
    sp.add_argument("--n", type=int, default=QUAD_SET["n"])
    sp.set_defaults(func=cmd_quad_nodes)

    sp = sub.add_parser("ortho-check", help="Gram matrix of a JMF family under GJMQR")
    _add_family(sp, ORTHO)
    sp.add_argument("--n-max", type=int, default=ORTHO["n_max"])
    sp.set_defaults(func=cmd_ortho_check)

    sp = sub.add_parser("eigen-check", help="Sturm-Liouville eigenvalues and n^{2mu} ratios")
    _add_family(sp, EIGEN)
    sp.add_argument("--n-max", type=int, default=EIGEN["n_max"])
    sp.set_defaults(func=cmd_eigen_check)

    sp = sub.add_parser("project", help="weighted L2 projection of a test function")
    _add_family(sp, PROJ)
    sp.add_argument("--n", type=int, default=PROJ["n"])
    sp.add_argument("--func", dest="shape", choices=("sin", "abs"), default="sin",
                    help="prefactor times sin(x^sigma), or times |x^sigma - b^sigma/2|^gamma")
    sp.add_argument("--gamma", type=float, default=2.5)
    sp.set_defaults(func=cmd_project)

    for name, fn, helptext in (("ode", cmd_ode, "steady fractional ODE at one degree"),
                               ("ode-sweep", cmd_ode_sweep, "errors and condition numbers for n=1..n-max")):
        sp = sub.add_parser(name, help=helptext)
        _add_family(sp, STEADY_SET)
        sp.add_argument("--n", type=int, default=STEADY_SET["n"])
        sp.add_argument("--n-max", type=int, default=STEADY_SET["n_max"])
        sp.add_argument("--nu", type=float, default=STEADY_SET["nu"])
        sp.add_argument("--k1", type=float, default=STEADY_SET["k1"])
        sp.add_argument("--k2", type=float, default=STEADY_SET["k2"])
        sp.set_defaults(func=fn)

    sp = sub.add_parser("pde", help="time-dependent fractional diffusion")
    _add_family(sp, DIFFUSION_SET)
    sp.add_argument("--n", type=int, default=DIFFUSION_SET["n"])
    sp.add_argument("--nu", type=float, default=DIFFUSION_SET["nu"])
    sp.add_argument("--t-final", type=float, default=DIFFUSION_SET["t_final"])
    _add_time(sp)
    sp.set_defaults(func=cmd_pde)

    for name, fn, helptext in (("burgers", cmd_burgers, "Burgers' equation at one degree"),
                               ("burgers-sweep", cmd_burgers_sweep, "E2/Einf for n=4,6,..,n-max")):
        sp = sub.add_parser(name, help=helptext)
        _add_family(sp, BURGERS_SET)
        sp.add_argument("--n", type=int, default=BURGERS_SET["n"])
        sp.add_argument("--n-max", type=int, default=BURGERS_SET["n_max"])
        sp.add_argument("--case", type=int, choices=(0, 1, 2), default=BURGERS_SET["case"],
                        help="manufactured solution 1 or 2; 0 for zero source and data")
        sp.add_argument("--epsilon", type=float, default=BURGERS_SET["epsilon"])
        sp.add_argument("--t-final", type=float, default=BURGERS_SET["t_final"])
        _add_time(sp)
        sp.set_defaults(func=fn)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            args.func(args)
    except ValueError as exc:  # ParameterError, DomainError, PoleError and plain range checks
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ArithmeticError, RuntimeError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
