"""Command-line front end.

Inputs are matrix documents: JSON objects ``{"rows": r, "cols": c,
"field": "R" | "C", "data": [...]}`` with row-major data (complex entries
as ``[re, im]`` pairs). Every invocation prints one report object to
standard output with the keys ``command``, ``inputs`` (sha256 of the
input files), ``outputs``, ``residuals``, ``status`` and ``message``.

Exit codes: 0 for an ok report (including negative mathematical answers
such as "no real logarithm"), 1 for precondition violations or residuals
above tolerance, 2 for unreadable documents and usage errors.
"""
import argparse
import hashlib
import json
import math
import shlex
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import expmlog, lattices, linalg, manifolds, metricspace, projective, spectral, submersion
from .exceptions import ConvergenceError, DocumentError, MatgeomError

EXIT_OK, EXIT_PRECONDITION, EXIT_PARSE = 0, 1, 2


def _reject_constant(name):
    raise ValueError(f"non-finite number {name} is not allowed")


def parse_matrix(text):
    """Parse a matrix document into a float or complex array."""
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, exc.lineno, exc.colno) from None
    except ValueError as exc:
        raise DocumentError(str(exc)) from None
    if not isinstance(doc, dict):
        raise DocumentError("document must be an object")
    missing = {"rows", "cols", "field", "data"} - doc.keys()
    if missing:
        raise DocumentError(f"missing keys: {', '.join(sorted(missing))}")
    rows, cols, fld, data = doc["rows"], doc["cols"], doc["field"], doc["data"]
    for name, v in (("rows", rows), ("cols", cols)):
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise DocumentError(f"{name} must be a nonnegative integer")
    if fld not in ("R", "C"):
        raise DocumentError('field must be "R" or "C"')
    if not isinstance(data, list) or len(data) != rows * cols:
        raise DocumentError(f"data must hold rows*cols = {rows * cols} entries")

    def number(x):
        if isinstance(x, bool) or not isinstance(x, (int, float)):
            raise DocumentError("entries must be numbers")
        x = float(x)
        if not math.isfinite(x):
            raise DocumentError("entries must be finite")
        return x

    if fld == "R":
        M = np.array([number(x) for x in data], dtype=float)
    else:
        vals = []
        for x in data:
            if not isinstance(x, list) or len(x) != 2:
                raise DocumentError("complex entries must be [re, im] pairs")
            vals.append(complex(number(x[0]), number(x[1])))
        M = np.array(vals, dtype=complex)
    return M.reshape(rows, cols)


def _tolerance(text):
    x = float(text)
    if not x >= 0:
        raise argparse.ArgumentTypeError("tolerance must be a nonnegative number")
    return x


def _fmt(x):
    return format(float(x), ".17g")


def matrix_document(M):
    M = np.atleast_2d(np.asarray(M))
    if np.iscomplexobj(M):
        data = [[float(z.real), float(z.imag)] for z in M.ravel()]
        fld = "C"
    else:
        data = [float(x) for x in M.ravel()]
        fld = "R"
    return {"rows": M.shape[0], "cols": M.shape[1], "field": fld, "data": data}


def _dump(obj):
    """JSON with floats in 17 significant digits, so output is byte-stable."""
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_dump(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_dump(v) for v in obj) + "]"
    if isinstance(obj, np.ndarray):
        return _dump(matrix_document(obj))
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return _fmt(x) if math.isfinite(x) else json.dumps(str(x))
    if isinstance(obj, (complex, np.complexfloating)):
        return _dump([float(obj.real), float(obj.imag)])
    if obj is None:
        return "null"
    return json.dumps(str(obj))


def serialize_matrix(M):
    return _dump(matrix_document(M))


class _Inputs:
    def __init__(self):
        self.digest = hashlib.sha256()

    def read(self, path):
        if path is None:
            raise MatgeomError("missing input document")
        try:
            with open(path, "rb") as fh:
                raw = fh.read()
        except OSError as exc:
            raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
        self.digest.update(raw)
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError:
            raise DocumentError(f"{path} is not UTF-8 text") from None
        try:
            return parse_matrix(text)
        except DocumentError as exc:
            raise DocumentError(f"{path}: {exc}") from None

    def vector(self, path):
        M = self.read(path)
        if min(M.shape) != 1 and M.size:
            raise MatgeomError("expected a 1 x n or n x 1 vector document")
        return M.ravel()


def _rel(a, b):
    return linalg.hs_norm(np.atleast_2d(a - b)) / max(linalg.hs_norm(np.atleast_2d(b)), 1e-300)


# each handler returns (outputs, residuals, default tolerance)

def cmd_expm(a, io):
    A = io.read(a.inp)
    r = expmlog.expm(A)
    inv = linalg.hs_norm(r.value @ expmlog.expm(-A).value - np.eye(A.shape[0]))
    return {"exp": r.value, "scaling_squarings": r.scaling_squarings, "taylor_terms": r.taylor_terms}, \
        {"inverse": inv / math.sqrt(A.shape[0])}, 1e-9


def cmd_logm(a, io):
    X = io.read(a.inp)
    kind = a.kind
    if kind == "real":
        rep = expmlog.real_log_exists(X)
        out = {"exists_real": rep.exists_real, "obstruction": rep.obstruction.value}
        res = {}
        if rep.value is not None:
            out["log"] = rep.value
            res["round_trip"] = rep.residual
        return out, res, 1e-8
    L = {"spd": expmlog.logm_spd, "unitary": expmlog.logm_unitary,
         "so": expmlog.logm_special_orthogonal}[kind](X)
    res = {"round_trip": _rel(expmlog.expm(L).value, X)}
    if kind == "spd":
        res["self_adjoint"] = linalg.self_adjoint_residual(L)
    else:
        res["anti_self_adjoint"] = linalg.hs_norm(L + linalg.adjoint(L))
    return {"log": L}, res, 1e-8


def cmd_reallog(a, io):
    a.kind = "real"
    return cmd_logm(a, io)


def cmd_detexp(a, io):
    A = io.read(a.inp)
    lhs, rhs = expmlog.det_exp_identity(A)
    return {"det_exp": lhs, "exp_trace": rhs}, {"identity": abs(lhs - rhs) / abs(rhs)}, 1e-9


def cmd_polar(a, io):
    T = io.read(a.inp)
    R, P = manifolds.polar_decompose(T)
    return {"R": R, "P": P, "representative": manifolds.quotient_representative(T)}, \
        {"recompose": _rel(R @ P, T), "unitary": linalg.unitary_residual(R)}, 1e-9


def cmd_geodesic(a, io):
    Y = io.read(a.inp)
    A = io.read(a.in2)
    group = a.group.upper()
    G = manifolds.geodesic(manifolds.GroupPoint(Y, group), A, a.t)
    return {"point": G.value}, {"membership": manifolds.membership_residual(G.value, group)}, 1e-9


def cmd_metric(a, io):
    T = io.read(a.inp)
    A = io.read(a.in2)
    B = io.read(a.in3) if a.in3 else A
    value = manifolds.metric_gl(T, A, B)
    swap = manifolds.metric_gl(T, B, A)
    return {"value": value}, {"symmetry": abs(value - swap) / max(abs(value), 1.0)}, 1e-12


def cmd_lattice(a, io):
    B = io.read(a.inp)
    L = lattices.Lattice(B)
    if a.action == "covol":
        return {"covolume": L.covolume}, {}, 0.0
    if a.action == "reduce":
        x = io.vector(a.in2)
        p = lattices.reduce_mod(L, x)
        back = lattices.reduce_mod(L, p.rep)
        return {"rep": p.rep, "coords": p.coords}, \
            {"idempotence": float(np.max(np.abs(back.rep - p.rep), initial=0.0))}, 1e-9
    if a.action == "equal":
        return {"equal": lattices.lattices_equal(L, lattices.Lattice(io.read(a.in2)))}, {}, 0.0
    return {"unimodular": lattices.is_unimodular_integer(B)}, {}, 0.0


def cmd_proj(a, io):
    if a.action == "apply":
        A = io.read(a.inp)
        P = projective.proj_from(io.vector(a.in2))
        Q = projective.apply_projective(A, P)
        return {"point": Q.rep}, {"incidence": projective.proj_distance(Q, projective.proj_from(A @ P.rep))}, 1e-9
    x = io.vector(a.inp)
    P = projective.affine_chart(a.index, x)
    back = projective.chart_extract(a.index, P)
    return {"point": P.rep}, {"round_trip": float(np.max(np.abs(back - x), initial=0.0))}, 1e-9


def cmd_grass(a, io):
    L = projective.grass_from(list(io.read(a.inp).T))
    if a.action == "annihilator":
        N = projective.annihilator(L)
        return {"basis": N.basis}, {"orthogonality": linalg.hs_norm(np.atleast_2d(L.basis.conj().T @ N.basis))}, 1e-9
    M = projective.annihilator(L)
    A = io.read(a.in2)
    X = projective.graph_chart(L, M, A)
    back = projective.graph_coordinates(L, M, X)
    return {"basis": X.basis, "projector": X.projector}, {"round_trip": linalg.hs_norm(back - A)}, 1e-9


def _submersion(name, p):
    if name == "rp":
        return submersion.SphereToRP(p.shape[0] - 1)
    if name == "cp":
        if p.shape[0] % 2:
            raise MatgeomError("cp needs an even-length realified vector")
        return submersion.SphereToCP(p.shape[0] // 2 - 1)
    if name == "proj":
        return submersion.CoordinateProjection(p.shape[0], p.shape[0] - 1)
    raise MatgeomError(f"unknown submersion {name!r}")


def cmd_lift(a, io):
    p0 = io.vector(a.inp).real
    q = io.vector(a.in2).real
    S = _submersion(a.submersion, p0)
    q = q - np.dot(q, p0) * p0
    if np.linalg.norm(q) == 0:
        raise MatgeomError("direction must not be parallel to the starting point")
    q = q / np.linalg.norm(q)
    end = np.pi if a.t is None else a.t
    alpha = lambda t: S.f(np.cos(t) * p0 + np.sin(t) * q)
    path = submersion.horizontal_lift(S, alpha, p0, 0.0, end, a.steps)
    proj = max(np.linalg.norm(S.f(b) - alpha(t)) for t, b in zip(path.times, path.points))
    unit = float(np.max(np.abs(np.linalg.norm(path.points, axis=1) - 1)))
    return {"end": path.end, "times": path.times.size}, {"projection": proj, "unit_norm": unit}, 1e-7


def cmd_curvature(a, io):
    p = io.vector(a.inp).real
    S = _submersion(a.submersion, p)
    v1 = io.vector(a.in2).real
    v2 = io.vector(a.in3).real
    u1, u2 = S.df(p, v1), S.df(p, v2)
    c = submersion.curvature_numeric(S, p, u1, u2)
    c_rev = submersion.curvature_numeric(S, p, u2, u1)
    return {"curvature": c, "norm": float(np.linalg.norm(c))}, \
        {"antisymmetry": float(np.linalg.norm(c + c_rev))}, 1e-6


def cmd_hausdorff(a, io):
    A = metricspace.FinitePointSet(io.read(a.inp).real, a.p)
    B = metricspace.FinitePointSet(io.read(a.in2).real, a.p)
    d = metricspace.hausdorff(A, B)
    return {"distance": d}, {"symmetry": abs(d - metricspace.hausdorff(B, A))}, 1e-12


def cmd_pathlen(a, io):
    pts = io.read(a.inp).real
    P = metricspace.SampledPath(np.arange(pts.shape[0], dtype=float), pts, a.p)
    return {"length": metricspace.path_length(P)}, {}, 0.0


def cmd_eigh(a, io):
    A = io.read(a.inp)
    dec = spectral.eigh(A)
    return {"eigenvalues": dec.eigenvalues[None, :], "basis": dec.basis}, \
        {"reconstruct": _rel(dec.reconstruct(), A), "orthonormal": linalg.unitary_residual(dec.basis)}, 1e-9


def cmd_charpoly(a, io):
    A = io.read(a.inp)
    p = spectral.char_poly(A)
    coef = np.asarray(p.coef, dtype=complex if linalg.is_complex(A) else float)
    return {"coefficients": coef[None, :]}, {"cayley_hamilton": spectral.cayley_hamilton_residual(A)}, 1e-8


def build_parser():
    parser = argparse.ArgumentParser(prog="matgeom", description="Matrix-group geometry toolkit")
    parser.add_argument("--batch", metavar="FILE",
                        help="run one command line per line of FILE; reports are printed as a list")
    sub = parser.add_subparsers(dest="command")

    def add(name, func, help_, inputs=1, **extra):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("--in", dest="inp", required=True, metavar="PATH")
        if inputs >= 2:
            p.add_argument("--in2", metavar="PATH", required=extra.pop("in2_required", True))
        if inputs >= 3:
            p.add_argument("--in3", metavar="PATH", required=extra.pop("in3_required", True))
        p.add_argument("--tol", type=_tolerance)
        return p

    add("expm", cmd_expm, "matrix exponential")
    p = add("logm", cmd_logm, "logarithm of an SPD, unitary, rotation or real matrix")
    p.add_argument("--kind", choices=["spd", "unitary", "so", "real"], required=True)
    add("reallog", cmd_reallog, "decide whether a real logarithm exists")
    add("detexp", cmd_detexp, "check det(exp A) = exp(tr A)")
    add("polar", cmd_polar, "polar decomposition T = R P")
    p = add("geodesic", cmd_geodesic, "geodesic Y exp(t A)", inputs=2)
    p.add_argument("--group", choices=["gl", "sl", "spd", "o", "u"], default="gl")
    p.add_argument("--t", type=float, default=1.0)
    add("metric", cmd_metric, "semi-Riemannian metric tr(T^-1 A T^-1 B)", inputs=3, in3_required=False)
    p = add("lattice", cmd_lattice, "lattice covolume, reduction, equality, unimodularity",
            inputs=2, in2_required=False)
    p.add_argument("action", choices=["covol", "reduce", "equal", "unimodular"])
    p = add("proj", cmd_proj, "projective maps and affine charts", inputs=2, in2_required=False)
    p.add_argument("action", choices=["apply", "chart"])
    p.add_argument("--index", type=int, default=0, help="0-based chart index")
    p = add("grass", cmd_grass, "Grassmannian graph charts and annihilators", inputs=2, in2_required=False)
    p.add_argument("action", choices=["graph", "annihilator"])
    p = add("lift", cmd_lift, "horizontal lift of a great-circle path", inputs=2)
    p.add_argument("--submersion", choices=["rp", "cp"], default="rp")
    p.add_argument("--t", type=float)
    p.add_argument("--steps", type=int, default=200)
    p = add("curvature", cmd_curvature, "connection curvature at a point", inputs=3)
    p.add_argument("--submersion", choices=["rp", "cp", "proj"], default="cp")
    p = add("hausdorff", cmd_hausdorff, "Hausdorff distance of two point sets (rows)", inputs=2)
    p.add_argument("--p", type=float, default=2.0)
    p = add("pathlen", cmd_pathlen, "length of a sampled path (rows)")
    p.add_argument("--p", type=float, default=2.0)
    add("eigh", cmd_eigh, "Jacobi eigendecomposition of a self-adjoint matrix")
    add("charpoly", cmd_charpoly, "characteristic polynomial (ascending coefficients)")
    return parser


def _execute(args):
    """Run one parsed command; returns (exit code, report dict)."""
    io = _Inputs()
    report = {"command": args.command, "inputs": None, "outputs": {}, "residuals": {},
              "status": "ok", "message": ""}
    code = EXIT_OK
    try:
        outputs, residuals, tol = args.func(args, io)
        if args.tol is not None:
            tol = args.tol
        report["outputs"] = outputs
        report["residuals"] = residuals
        bad = [k for k, v in residuals.items() if not v <= tol]
        if bad:
            report["status"] = "error"
            report["message"] = f"residual above tolerance {tol:g}: {', '.join(bad)}"
            code = EXIT_PRECONDITION
    except DocumentError as exc:
        report["status"], report["message"], code = "error", str(exc), EXIT_PARSE
    except (MatgeomError, ConvergenceError, np.linalg.LinAlgError) as exc:
        report["status"], report["message"], code = "error", str(exc), EXIT_PRECONDITION
    report["inputs"] = io.digest.hexdigest()
    return code, report


def _run_line(parser, argv):
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else EXIT_PARSE), \
            {"command": " ".join(argv), "inputs": None, "outputs": {}, "residuals": {},
             "status": "error", "message": "usage error"}
    if args.command is None or args.batch:
        return EXIT_PARSE, {"command": None, "inputs": None, "outputs": {}, "residuals": {},
                            "status": "error", "message": "usage error"}
    return _execute(args)


def run(argv=None, stdout=None, stderr=None):
    """Entry point; returns the exit code and prints the report."""
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_PARSE
    if args.batch:
        try:
            with open(args.batch, encoding="utf-8") as fh:
                lines = [shlex.split(line) for line in fh if line.strip() and not line.lstrip().startswith("#")]
        except (OSError, ValueError) as exc:
            print(f"matgeom: cannot read batch file: {exc}", file=stderr)
            return EXIT_PARSE
        with ThreadPoolExecutor() as pool:
            results = list(pool.map(lambda line: _run_line(parser, line), lines))
        print(_dump([r for _, r in results]), file=stdout)
        for i, (_, r) in enumerate(results):
            if r["status"] != "ok":
                print(f"matgeom: job {i}: {r['message']}", file=stderr)
        return max((c for c, _ in results), default=EXIT_OK)
    if args.command is None:
        parser.print_usage(stderr)
        return EXIT_PARSE
    code, report = _execute(args)
    print(_dump(report), file=stdout)
    if report["status"] != "ok":
        print(f"matgeom: {report['message']}", file=stderr)
    return code


def main():
    sys.exit(run())
