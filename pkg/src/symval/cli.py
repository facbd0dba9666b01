"""Command-line frontend.

Exit codes are the machine contract: 0 success/pass, 2 inconclusive,
1 error or verification failure, 64 usage error.  Output formats: text
(default), json (schema-stable, sorted keys), csv where a tabular shape
exists.  Configuration: defaults, overlaid by a TOML file (SYMVAL_CONFIG or
--config), overlaid by flags.
"""

from __future__ import annotations

import argparse
import csv as _csv
import io
import json
import os
import sys
from dataclasses import dataclass, fields

import mpmath

from . import analytic, cohomology, critical, dihedral, qseries, verify
from .characters import gauss_sum, make_character, trivial_character
from .cohomology import ClozelRejection
from .errors import ConfigError, SymvalError

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 64


@dataclass
class Config:
    precision_bits: int = 192
    coefficient_budget: int = 10**5
    bad_prime_mode: str = "partial"
    height_cap: int = 10**30
    output_format: str = "text"
    parallelism: int = 1

    def validate(self):
        if self.precision_bits < 64:
            raise ConfigError("precision_bits must be at least 64")
        if self.coefficient_budget < 16:
            raise ConfigError("coefficient_budget must be at least 16")
        if self.bad_prime_mode not in ("partial", "naive"):
            raise ConfigError("bad_prime_mode must be 'partial' or 'naive'")
        if self.output_format not in ("text", "json", "csv"):
            raise ConfigError("output_format must be text, json or csv")
        return self


def load_config(path: str | None = None) -> Config:
    """Defaults overlaid by the TOML file at `path` or $SYMVAL_CONFIG."""
    cfg = Config()
    path = path or os.environ.get("SYMVAL_CONFIG")
    if path:
        try:
            import tomllib as toml
        except ModuleNotFoundError:  # python < 3.11
            import tomli as toml
        try:
            with open(path, "rb") as fh:
                doc = toml.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except toml.TOMLDecodeError as exc:
            raise ConfigError(f"malformed config {path}: {exc}") from exc
        known = {f.name for f in fields(Config)}
        for key, val in doc.items():
            if key not in known:
                raise ConfigError(f"unknown config key {key!r}")
            setattr(cfg, key, val)
    return cfg.validate()


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="TOML config path (or set SYMVAL_CONFIG)")
    common.add_argument("--format", dest="output_format", choices=("text", "json", "csv"))
    common.add_argument("--prec", type=int, help="working precision in bits")
    common.add_argument("--budget", type=int, help="coefficient budget")
    common.add_argument("--bad-prime-mode", choices=("partial", "naive"))
    common.add_argument("--height-cap", type=int)

    p = _Parser(prog="symval", description=__doc__, parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_parser(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    c = add_parser("critical", help="critical integers of Sym^n in weight k")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--predict", type=int, metavar="M",
                   help="print the period-exponent prediction at the critical m")

    pr = add_parser("predict", help="period-exponent prediction at a critical m")
    pr.add_argument("--n", type=int, required=True)
    pr.add_argument("--k", type=int, required=True)
    pr.add_argument("--m", type=int, required=True)

    e = add_parser("euler", help="symmetric-power Euler factor at p")
    e.add_argument("--form", required=True)
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--p", type=int, required=True)
    e.add_argument("--twist", help="character label M:[e1,...]")

    co = add_parser("coeffs", help="Dirichlet coefficients of Sym^n")
    co.add_argument("--form", required=True)
    co.add_argument("--n", type=int, required=True)
    co.add_argument("--length", type=int, default=30)
    co.add_argument("--twist")

    lv = add_parser("lvalue", help="L(s) by the approximate functional equation")
    lv.add_argument("--form", required=True)
    lv.add_argument("--n", type=int, required=True)
    lv.add_argument("--s", required=True)
    lv.add_argument("--twist")
    lv.add_argument("--csv", metavar="OUT", help="append an (s, Re, Im) row to OUT")

    fc = add_parser("fecheck", help="functional-equation self-check")
    fc.add_argument("--form", required=True)
    fc.add_argument("--n", type=int, required=True)
    fc.add_argument("--twist")
    fc.add_argument("--samples", type=int, default=3)

    v = add_parser("verify", help="verification harnesses")
    vsub = v.add_subparsers(dest="verify_kind", required=True, parser_class=_Parser)
    vd = vsub.add_parser("deligne", parents=[common])
    vd.add_argument("--form", required=True)
    vd.add_argument("--n", type=int, required=True)
    vd.add_argument("--pairs", required=True, help='e.g. "12,14;14,16"')
    vt = vsub.add_parser("twist", parents=[common])
    vt.add_argument("--form", required=True)
    vt.add_argument("--n", type=int, required=True)
    vt.add_argument("--char", required=True, help="character label M:[e1,...]")
    vt.add_argument("--m", type=int, required=True)

    dh = add_parser("dihedral", help="isobaric decomposition check for a CM form")
    dh.add_argument("--disc", type=int, required=True)
    dh.add_argument("--u", type=int, required=True)
    dh.add_argument("--cond", required=True, help='conductor, e.g. "(1+i)^3"')
    dh.add_argument("--n", type=int, required=True)
    dh.add_argument("--bound", type=int, default=100)

    ch = add_parser("cohomology", help="cuspidal range / lift weights")
    ch.add_argument("--range", type=int, metavar="N", dest="range_n")
    ch.add_argument("--n", type=int)
    ch.add_argument("--k", type=int)
    ch.add_argument("--s")
    ch.add_argument("--eps", type=int, choices=(0, 1))

    cc = add_parser("character", help="conductor, parity, Gauss sum")
    cc.add_argument("--char", required=True, help="character label M:[e1,...]")
    return p


def _parse_char(label: str):
    try:
        mod, exps = label.split(":", 1)
        exps = json.loads(exps)
        return make_character(int(mod), list(exps))
    except (ValueError, TypeError) as exc:
        raise SymvalError(f"cannot parse character label {label!r}") from exc


def _resolve_form(name_or_path: str, cfg: Config):
    if name_or_path in qseries.BUILTIN_FORMS:
        return name_or_path
    with open(name_or_path, "rb") as fh:
        f = qseries.load_newform(fh)
    report = qseries.hecke_validate(f)
    if not report.ok:
        raise SymvalError(
            f"form failed Hecke validation at {report.violations[:3]} "
            f"({len(report.violations)} violations)"
        )
    return f


def _emit(doc, cfg: Config, text_fn=None, csv_rows=None) -> None:
    if cfg.output_format == "json":
        print(json.dumps(doc, sort_keys=True, default=str))
    elif cfg.output_format == "csv" and csv_rows is not None:
        w = _csv.writer(sys.stdout)
        for row in csv_rows:
            w.writerow(row)
    else:
        print(text_fn() if text_fn else json.dumps(doc, sort_keys=True, default=str))


def _status_exit(status: str) -> int:
    return {"pass": EXIT_OK, "inconclusive": EXIT_INCONCLUSIVE}.get(status, EXIT_FAIL)


def dispatch(argv) -> int:
    args = _build_parser().parse_args(argv)
    cfg = load_config(args.config)
    for attr in ("output_format", "bad_prime_mode"):
        v = getattr(args, attr, None)
        if v is not None:
            setattr(cfg, attr, v)
    if args.prec is not None:
        cfg.precision_bits = args.prec
    if args.budget is not None:
        cfg.coefficient_budget = args.budget
    if getattr(args, "height_cap", None) is not None:
        cfg.height_cap = args.height_cap
    cfg.validate()

    if args.command in ("critical", "predict"):
        m_pred = args.m if args.command == "predict" else args.predict
        if m_pred is not None:
            pred = critical.deligne_prediction(args.n, m_pred, args.k)
            doc = {
                "n": args.n, "k": args.k, "m": m_pred,
                "power_of_2pii": pred.pow_2pii, "e_plus": pred.e_plus,
                "e_minus": pred.e_minus, "e_delta": pred.e_delta,
            }
            _emit(doc, cfg, text_fn=lambda: (
                f"(2 pi i)^{pred.pow_2pii} c+^{pred.e_plus} c-^{pred.e_minus} "
                f"delta^{pred.e_delta}"))
            return EXIT_OK
        cs = critical.critical_set(args.n, args.k)
        doc = {"n": args.n, "k": args.k, "members": list(cs.members)}
        _emit(doc, cfg,
              text_fn=lambda: " ".join(str(m) for m in cs.members),
              csv_rows=[[m] for m in cs.members])
        return EXIT_OK

    if args.command == "euler":
        form = _resolve_form(args.form, cfg)
        if isinstance(form, str):
            form = qseries.cached_level_one_form(form, max(args.p + 1, 16))
        from .satake import satake_at, sym_euler_factor

        params = satake_at(form, args.p, cfg.precision_bits)
        tw = 1
        if args.twist:
            chi = _parse_char(args.twist)
            t = chi.value_exact(args.p)
            tw = 0 if t is None else (1 if t == 0 else (-1 if 2 * t == 1 else chi.value(args.p, cfg.precision_bits)))
        factor = sym_euler_factor(params, args.n, tw)
        doc = {"p": args.p, "n": args.n, "coefficients": [str(c) for c in factor.coefficients]}
        _emit(doc, cfg, text_fn=lambda: str(list(factor.coefficients)))
        return EXIT_OK

    if args.command == "coeffs":
        form = _resolve_form(args.form, cfg)
        if isinstance(form, str):
            form = qseries.cached_level_one_form(form, max(args.length, 16))
        from .satake import dirichlet_coeffs

        eta = _parse_char(args.twist) if args.twist else None
        b = dirichlet_coeffs(form, args.n, eta, args.length,
                             bad_prime_mode=cfg.bad_prime_mode)
        doc = {"n": args.n, "coefficients": [str(x) for x in b]}
        _emit(doc, cfg, text_fn=lambda: " ".join(str(x) for x in b),
              csv_rows=[[i + 1, x] for i, x in enumerate(b)])
        return EXIT_OK

    if args.command == "lvalue":
        form = _resolve_form(args.form, cfg)
        eta = _parse_char(args.twist) if args.twist else None
        spec = analytic.spec_for_symn(form, args.n, eta, bad_prime_mode=cfg.bad_prime_mode)
        s = mpmath.mpmathify(args.s.replace("i", "j"))
        val = analytic.evaluate(spec, s, cfg.precision_bits)
        doc = {
            "label": spec.label, "s": str(s),
            "value": mpmath.nstr(val.value, int(cfg.precision_bits / 3.2)),
            "truncation_error_bound": mpmath.nstr(val.truncation_error_bound, 5),
            "precision_bits": cfg.precision_bits,
        }
        if args.csv:
            with open(args.csv, "a", newline="") as fh:
                _csv.writer(fh).writerow(
                    [str(s), mpmath.nstr(mpmath.re(val.value), 40),
                     mpmath.nstr(mpmath.im(mpmath.mpc(val.value)), 40)]
                )
        _emit(doc, cfg, text_fn=lambda: (
            f"{spec.label} at s={s}: {doc['value']}\n"
            f"truncation bound {doc['truncation_error_bound']}"))
        return EXIT_OK

    if args.command == "fecheck":
        form = _resolve_form(args.form, cfg)
        eta = _parse_char(args.twist) if args.twist else None
        spec = analytic.spec_for_symn(form, args.n, eta, bad_prime_mode=cfg.bad_prime_mode)
        w = spec.motivic_weight
        samples = [mpmath.mpf(w + 1) / 2 + mpmath.mpf(j * 2 + 1) / 3 for j in range(args.samples)]
        resid = analytic.fe_selfcheck(spec, samples, cfg.precision_bits)
        doc = {"label": spec.label, "samples": [str(s) for s in samples],
               "max_relative_residual": mpmath.nstr(resid, 6),
               "root_number": str(spec.root_number)}
        _emit(doc, cfg, text_fn=lambda: (
            f"{spec.label}: eps = {spec.root_number}, max residual {doc['max_relative_residual']}"))
        ok = resid < mpmath.mpf(2) ** (-(cfg.precision_bits // 2))
        return EXIT_OK if ok else EXIT_FAIL

    if args.command == "verify":
        form = _resolve_form(args.form, cfg)
        # recognition runs at 150 bits unless --prec says otherwise
        vprec = args.prec if args.prec is not None else 150
        if args.verify_kind == "deligne":
            pairs = []
            for part in args.pairs.split(";"):
                m1, m2 = part.split(",")
                pairs.append((int(m1), int(m2)))
            rep = verify.deligne_ratio_test(
                form, args.n, pairs, precision=vprec, height_cap=cfg.height_cap
            )
        else:
            chi = _parse_char(args.char)
            rep = verify.twist_test(
                form, args.n, chi, args.m, precision=vprec, height_cap=cfg.height_cap
            )
        _emit(rep.to_dict(), cfg, text_fn=lambda: _report_text(rep))
        return _status_exit(rep.status)

    if args.command == "dihedral":
        K = dihedral.ImagQuadField(args.disc)
        cond = dihedral.parse_conductor(args.cond, K)
        chi = dihedral.HeckeCharacter(K, args.u, cond)
        phi = dihedral.cm_newform(chi, max(args.bound + 1, 32))
        rep = dihedral.verify_decomposition(phi, args.n, args.bound)
        doc = {
            "form": phi.form.name, "level": phi.form.level, "weight": phi.form.weight,
            "n": args.n, "bound": args.bound,
            "checked": rep.checked, "failures": [list(f[:1]) for f in rep.failures],
            "skipped": rep.skipped, "status": "pass" if rep.ok else "fail",
        }
        _emit(doc, cfg, text_fn=lambda: (
            f"{phi.form.name}: Sym^{args.n} decomposition at good p < {args.bound}: "
            f"{len(rep.checked)} checked, {len(rep.failures)} failures, skipped {rep.skipped}"))
        return EXIT_OK if rep.ok else EXIT_FAIL

    if args.command == "cohomology":
        if args.range_n is not None:
            b, t = cohomology.cuspidal_range(args.range_n)
            _emit({"n": args.range_n, "b": b, "t": t}, cfg, text_fn=lambda: f"b={b} t={t}")
            return EXIT_OK
        if args.n is None or args.k is None or args.s is None or args.eps is None:
            raise SymvalError("cohomology needs either --range or all of --n --k --s --eps")
        from fractions import Fraction

        try:
            mu = cohomology.clozel_weight(args.n, args.k, Fraction(args.s), args.eps)
        except ClozelRejection as exc:
            _emit({"rejected": exc.clause}, cfg, text_fn=lambda: f"rejected: {exc.clause}")
            return EXIT_FAIL
        _emit({"mu": list(mu.entries), "weight": str(mu.weight)}, cfg,
              text_fn=lambda: "mu = " + str(tuple(mu.entries)))
        return EXIT_OK

    if args.command == "character":
        chi = _parse_char(args.char)
        g = gauss_sum(chi, cfg.precision_bits)
        doc = {
            "modulus": chi.modulus, "conductor": chi.conductor,
            "order": chi.order, "parity": chi.parity,
            "gauss_sum": mpmath.nstr(g.value, 25), "exact": g.exact_tag,
        }
        _emit(doc, cfg, text_fn=lambda: (
            f"modulus {chi.modulus}, conductor {chi.conductor}, order {chi.order}, "
            f"parity {chi.parity:+d}, g = {doc['gauss_sum']}"
            + (f" = {g.exact_tag}" if g.exact_tag else "")))
        return EXIT_OK

    raise SymvalError(f"unhandled command {args.command}")


def _report_text(rep) -> str:
    lines = [f"{rep.test}: status={rep.status} (precision {rep.precision} bits)"]
    for item in rep.items:
        lines.append("  " + json.dumps(item, default=str))
    return "\n".join(lines)


def main(argv=None) -> int:
    try:
        return dispatch(sys.argv[1:] if argv is None else argv)
    except SymvalError as exc:
        print(f"symval: error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"symval: error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
