"""Command-line front end.

Exit codes: 0 success or verified, 1 input error or failed verification,
2 negative mathematical verdict (not positive, not PPT with --edge).
"""

import argparse
import os
import sys

import numpy as np

from . import __version__
from ._validation import DEFAULT_TOL, check_dims, check_hermitian
from .forms import (
    DecomposabilityCert,
    GramForm,
    IndecomposabilityWitness,
    check_sos_blf,
    check_sos_slf,
    verify_decomposability,
    verify_indecomposability,
)
from .io import (
    FormatError,
    cert_from_json,
    cert_to_json,
    form_from_json,
    form_to_json,
    map_from_json,
    matrix_from_json,
    read_json,
    write_json,
)
from .linalg import min_eigenvalue, partial_transpose_second
from .maps import LinearMap, Verdict, choi_to_gram, classify
from .optimize import SeesawConfig, find_ppt_witness, seesaw_min

EXIT_OK, EXIT_INPUT, EXIT_NEGATIVE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # usage errors are input errors; 2 is reserved for negative verdicts
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


class InputError(Exception):
    pass


def _dims_arg(text):
    try:
        m, n = (int(t) for t in text.split(","))
        return check_dims((m, n))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected m,n with positive integers, got {text!r}") from exc


def _floats_arg(text):
    try:
        return tuple(float(t) for t in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


# --- built-in inputs ---------------------------------------------------------


def _builtin_maps():
    from .gallery import example_f_map, tau41

    return {
        "tau41": tau41,
        "identity": lambda: LinearMap.identity(2),
        "example-f": example_f_map,
        "example-f-repaired": lambda: example_f_map(repaired=True),
    }


def _builtin_states():
    from .gallery import horodecki_state

    return {
        "horodecki": (horodecki_state, (2, 4)),
        "maximally-mixed": (lambda: np.eye(8, dtype=complex) / 8, (2, 4)),
    }


def _builtin_forms():
    from .gallery import example_pi

    return {"pi": lambda: example_pi()[0]}


def _stem(source):
    return os.path.splitext(os.path.basename(source))[0] if os.path.exists(source) else source


def _resolve(source, builtins, loader, what):
    if os.path.exists(source):
        return loader(read_json(source))
    if source in builtins:
        return builtins[source]()
    names = ", ".join(sorted(builtins))
    raise InputError(f"{source}: no such file and not a built-in {what} ({names})")


# --- reporting ---------------------------------------------------------------


def _config(args):
    return SeesawConfig(restarts=args.restarts, max_iter=args.max_iters, seed=args.seed)


def _provenance(args):
    return {
        "tool": "choipoly",
        "version": __version__,
        "seed": args.seed,
        "restarts": args.restarts,
        "max_iter": args.max_iters,
        "tol": args.tol,
    }


def _vec(v):
    return [[float(z.real) + 0.0, float(z.imag) + 0.0] for z in np.asarray(v, dtype=complex)]


def _say(key, value):
    print(f"{key}: {value}")


class _Output:
    """Collects report fields and writes the JSON outputs of one command."""

    def __init__(self, args, stem):
        self.args = args
        self.stem = stem
        self.report = {"command": args.command, "subject": stem, "provenance": _provenance(args)}
        self.files = {}

    def add(self, key, value, show=True):
        self.report[key] = value
        if show:
            _say(key, value)

    def emit(self, form=None, cert=None):
        out = self.args.json_out
        if out is None:
            return
        os.makedirs(out, exist_ok=True)
        if form is not None:
            self._write("form", form_to_json(form))
        if cert is not None:
            self._write("cert", cert_to_json(cert))
        self.report["files"] = dict(self.files)
        self._write("report", self.report)

    def _write(self, part, obj):
        name = f"{self.stem}_{part}.json"
        write_json(os.path.join(self.args.json_out, name), obj)
        self.files[part] = name
        _say(f"wrote {part}", os.path.join(self.args.json_out, name))


def _cert_summary(g, cert, tol):
    if isinstance(cert, DecomposabilityCert):
        ok = verify_decomposability(g, cert, tol)
        return ok, f"reconstruction residual {cert.residual(g):.3e}"
    ok = verify_indecomposability(g, cert, tol)
    trace = float(np.real(np.trace(g.W @ cert.M)))
    return ok, f"Tr(WM) = {trace!r}"


# --- commands ----------------------------------------------------------------


def cmd_analyze_map(args):
    phi = _resolve(args.source, _builtin_maps(), map_from_json, "map")
    out = _Output(args, _stem(args.source))
    res = classify(phi, args.tol, _config(args), search_witness=args.search_witness)
    out.add("dims", list(phi.dims))
    for key in ("self_adjoint", "completely_positive", "completely_copositive", "real_preserving"):
        out.add(key, getattr(res, key))
    out.add("positive", str(res.positive))
    out.add("decomposable", str(res.decomposable))
    if res.min_report is not None:
        out.add("seesaw_min", res.min_report.value)
    if res.nonreal_point is not None:
        x, y, val = res.nonreal_point
        out.add("nonreal_point", {"x": _vec(x), "y": _vec(y), "value": _vec([val])[0]}, show=False)
        _say("nonreal value", f"P({_fmt(x)}, {_fmt(y)}) = {complex(val)}")
    if res.negative_pair is not None:
        out.add("negative_pair", {"x": _vec(res.negative_pair.x), "y": _vec(res.negative_pair.y)}, show=False)
    for note in res.notes:
        _say("note", note)
    out.report["notes"] = list(res.notes)
    cert = res.decomposition or res.witness
    if res.self_adjoint:
        w = choi_to_gram(phi).W
        out.emit(GramForm((w + w.conj().T) / 2, phi.dims), cert)
    else:
        out.emit()
    if args.require_positive and res.positive is Verdict.NO:
        return EXIT_NEGATIVE
    return EXIT_OK


def _fmt(v):
    return "(" + ", ".join(f"{complex(z):g}" for z in v) + ")"


def _state_loader(dims_flag):
    def load(obj):
        if isinstance(obj, dict) and "rho" in obj:
            rho = matrix_from_json(obj["rho"])
            dims = obj.get("dims")
        else:
            rho = matrix_from_json(obj)
            dims = obj.get("dims") if isinstance(obj, dict) else None
        dims = dims_flag or (check_dims(dims) if dims is not None else None)
        if dims is None:
            raise InputError("state input needs --dims m,n")
        return rho, dims

    return load


def cmd_analyze_state(args):
    from .gallery import edge_check

    builtins = {k: (lambda f=f, d=d: (f(), args.dims or check_dims(d))) for k, (f, d) in _builtin_states().items()}
    rho, dims = _resolve(args.source, builtins, _state_loader(args.dims), "state")
    if rho.shape != (dims.total, dims.total):
        raise InputError(f"state has shape {rho.shape}, dims {tuple(dims)} need {dims.total} x {dims.total}")
    rho = check_hermitian(rho, args.tol, "rho")
    out = _Output(args, _stem(args.source))
    out.add("dims", list(dims))
    lam = min_eigenvalue(rho, args.tol)
    lam_g = min_eigenvalue(partial_transpose_second(rho, dims), args.tol)
    out.add("min_eig", lam)
    out.add("min_eig_partial_transpose", lam_g)
    ppt = lam >= -args.tol and lam_g >= -args.tol
    out.add("ppt", ppt)
    if not ppt:
        out.emit()
        return EXIT_NEGATIVE if args.edge else EXIT_OK
    rep = edge_check(rho, dims, _config(args), tol=args.tol)
    out.add("delta", rep.delta)
    out.add("edge", str(rep.is_edge))
    witness = form = None
    if args.eps is not None:
        if rep.is_edge is not Verdict.YES or not 0 < args.eps <= rep.delta:
            raise InputError(f"--eps needs an edge state and 0 < eps <= delta = {rep.delta!r}")
        rep = edge_check(rho, dims, _config(args), eps=args.eps, tol=args.tol)
        form, witness = rep.witness_form, rep.witness
        out.add("witness_trace", witness.trace_value)
    out.emit(form, witness)
    return EXIT_OK


def cmd_analyze_form(args):
    g = _resolve(args.source, _builtin_forms(), form_from_json, "form")
    if not g.is_hermitian(args.tol):
        raise InputError("form is not Hermitian symmetric")
    g = GramForm((g.W + g.W.conj().T) / 2, g.dims)
    out = _Output(args, _stem(args.source))
    out.add("dims", list(g.dims))
    blf, slf = check_sos_blf(g, args.tol), check_sos_slf(g, args.tol)
    out.add("sos_bilinear", blf)
    out.add("sos_sesquilinear", slf)
    rep = seesaw_min(g, _config(args))
    out.add("seesaw_min", rep.value)
    positive = Verdict.NO if rep.value < -args.tol else Verdict.YES
    out.add("positive", str(positive))
    cert = None
    if blf:
        cert = DecomposabilityCert(np.array(g.W), np.zeros_like(g.W), g.dims)
    elif slf:
        cert = DecomposabilityCert(np.zeros_like(g.W), np.array(g.gamma), g.dims)
    elif positive is Verdict.YES and args.search_witness:
        cert = find_ppt_witness(g, args.tol)
    if cert is not None:
        decomposable = Verdict.YES if isinstance(cert, DecomposabilityCert) else Verdict.NO
    else:
        decomposable = Verdict.NO if positive is Verdict.NO else Verdict.UNDECIDED
    out.add("decomposable", str(decomposable))
    out.emit(g, cert)
    return EXIT_NEGATIVE if args.require_positive and positive is Verdict.NO else EXIT_OK


def cmd_verify_cert(args):
    g = form_from_json(read_json(args.form))
    cert = cert_from_json(read_json(args.cert))
    if tuple(cert.dims) != tuple(g.dims):
        raise InputError(f"certificate dims {tuple(cert.dims)} do not match form dims {tuple(g.dims)}")
    if args.expect_kind and cert.kind != args.expect_kind:
        raise InputError(f"expected a {args.expect_kind} certificate, got {cert.kind}")
    if not g.is_hermitian(args.tol):
        raise InputError("form is not Hermitian symmetric")
    ok, detail = _cert_summary(g, cert, args.tol)
    _say("kind", cert.kind)
    _say("detail", detail)
    _say("verified", ok)
    return EXIT_OK if ok else EXIT_INPUT


# --- gallery -----------------------------------------------------------------


def _gallery_pi(args, out):
    from .gallery import example_pi, pi_indecomposable_witness

    g, _ = example_pi()
    delta = seesaw_min(g, _config(args)).value
    eps = 0.02 if args.eps is None else args.eps[0]
    out.add("delta", delta)
    out.add("eps", eps)
    form, wit = pi_indecomposable_witness(eps, delta=delta)
    out.add("witness_trace", wit.trace_value)
    return form, wit, EXIT_OK


def _gallery_horodecki(args, out):
    from .gallery import edge_check, horodecki_state

    rho = horodecki_state()
    rep = edge_check(rho, (2, 4), _config(args), tol=args.tol)
    out.add("delta", rep.delta)
    out.add("edge", str(rep.is_edge))
    if rep.is_edge is not Verdict.YES:
        return None, None, EXIT_NEGATIVE
    eps = rep.delta / 2 if args.eps is None else args.eps[0]
    out.add("eps", eps)
    rep = edge_check(rho, (2, 4), _config(args), eps=eps, tol=args.tol)
    out.add("witness_trace", rep.witness.trace_value)
    return rep.witness_form, rep.witness, EXIT_OK


def _gallery_phi(args, out):
    from .gallery import (
        PhiFamily,
        phi_decomposability_cert,
        phi_family_map,
        phi_j_epsilon,
        phi_s_profile,
    )

    m, n = args.m, args.n
    eps = args.eps if args.eps is not None else (1.0,) * (n - m + 1)
    probe = PhiFamily(0.0, m, n, eps)
    s = phi_s_profile(probe)
    a = float(s.max()) if args.a is None else args.a
    spec = PhiFamily(a, m, n, eps)
    phi = phi_family_map(spec)
    g = choi_to_gram(phi)
    out.add("a", a)
    out.add("dims", [m, n])
    out.add("eps", list(spec.eps))
    out.add("s_profile", [float(v) for v in s])
    if m == 2:
        out.add("threshold_j_eps", float(np.linalg.eigvalsh(phi_j_epsilon(spec.eps))[-1]))
    rep = seesaw_min(g, _config(args))
    out.add("seesaw_min", rep.value)
    positive = Verdict.NO if rep.value < -args.tol else Verdict.YES
    out.add("positive", str(positive))
    if a >= s.max():
        out.add("decomposable", str(Verdict.YES))
        return g, phi_decomposability_cert(spec), EXIT_OK
    out.add("decomposable", str(Verdict.NO if positive is Verdict.NO else Verdict.UNDECIDED))
    return g, None, EXIT_NEGATIVE if positive is Verdict.NO else EXIT_OK


def _gallery_tau41(args, out):
    from .gallery import tau41, tau41_positivity_suite, tau41_real_sos_obstruction

    suite = tau41_positivity_suite(_config(args))
    out.add("seesaw_min", suite.seesaw_min)
    out.add("ratio_max", suite.ratio_max)
    obs = tau41_real_sos_obstruction()
    out.add("zero_violation", obs.max_zero_violation)
    out.add("null_dim", obs.null_dim)
    out.add("monomial_residual", obs.monomial_residual)
    g = choi_to_gram(tau41())
    wit = find_ppt_witness(g, args.tol)
    if wit is None:
        raise InputError("no PPT witness found for tau41")
    out.add("witness_trace", wit.trace_value)
    return g, wit, EXIT_OK


def _gallery_upb(args, out):
    from .gallery import tiles_upb, upb_delta, upb_witness

    fam = tiles_upb()
    delta, _ = upb_delta(fam, _config(args))
    eps = delta / 2 if args.eps is None else args.eps[0]
    out.add("k", fam.k)
    out.add("delta", delta)
    out.add("eps", eps)
    form, wit, _ = upb_witness(fam, eps, _config(args), args.tol)
    out.add("witness_trace", wit.trace_value)
    return form, wit, EXIT_OK


GALLERY = {
    "pi": _gallery_pi,
    "horodecki": _gallery_horodecki,
    "phi": _gallery_phi,
    "tau41": _gallery_tau41,
    "upb": _gallery_upb,
}


def cmd_gallery(args):
    out = _Output(args, args.name)
    form, cert, code = GALLERY[args.name](args, out)
    if cert is not None:
        ok, detail = _cert_summary(form, cert, args.tol)
        out.add("certificate", cert.kind)
        out.add("certificate_verified", ok)
        _say("detail", detail)
    out.emit(form, cert)
    return code


# --- parser ------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL, help="numerical tolerance")
    common.add_argument("--seed", type=int, default=0, help="base seed of the see-saw restarts")
    common.add_argument("--restarts", type=int, default=200, help="see-saw restarts")
    common.add_argument("--max-iters", type=int, default=500, help="see-saw iterations per restart")
    common.add_argument("--json-out", metavar="DIR", help="write form, certificate and report JSON here")
    common.add_argument("--dims", type=_dims_arg, help="bipartite dimensions m,n")

    parser = _Parser(prog="choipoly", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"choipoly {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze-map", parents=[common], help="classify a linear map")
    p.add_argument("source", help="map JSON file or built-in: " + ", ".join(sorted(_builtin_maps())))
    p.add_argument("--require-positive", action="store_true", help="exit 2 when the map is not positive")
    p.add_argument("--search-witness", action="store_true", help="run the PPT witness SDP if undecided")
    p.set_defaults(func=cmd_analyze_map)

    p = sub.add_parser("analyze-state", parents=[common], help="PPT and edge test of a state")
    p.add_argument("source", help="matrix JSON file or built-in: horodecki, maximally-mixed")
    p.add_argument("--eps", type=float, help="emit the witness for W - eps I")
    p.add_argument("--edge", action="store_true", help="exit 2 when the state is not PPT")
    p.set_defaults(func=cmd_analyze_state)

    p = sub.add_parser("analyze-form", parents=[common], help="classify a biquadratic form")
    p.add_argument("source", help="form JSON file or built-in: pi")
    p.add_argument("--require-positive", action="store_true", help="exit 2 when the form is not positive")
    p.add_argument("--search-witness", action="store_true", help="run the PPT witness SDP if undecided")
    p.set_defaults(func=cmd_analyze_form)

    p = sub.add_parser("verify-cert", parents=[common], help="check a certificate against a form")
    p.add_argument("form")
    p.add_argument("cert")
    p.add_argument("--expect-kind", choices=[DecomposabilityCert.kind, IndecomposabilityWitness.kind])
    p.set_defaults(func=cmd_verify_cert)

    p = sub.add_parser("gallery", parents=[common], help="run a built-in example")
    p.add_argument("name", choices=sorted(GALLERY))
    p.add_argument("--eps", type=_floats_arg, help="shift for witnesses, or the weights for phi")
    p.add_argument("--a", type=float, help="phi: the trace coefficient a (default max s_j)")
    p.add_argument("--m", type=int, default=2, help="phi: m")
    p.add_argument("--n", type=int, default=3, help="phi: n")
    p.set_defaults(func=cmd_gallery)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, FormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
