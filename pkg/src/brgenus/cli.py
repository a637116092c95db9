"""Command-line front end: ``brgenus bound | cohomology | residue | selftest``.

Exit codes: 0 success, 1 self-test failure, 2 invalid input or schema
violation, 3 hypothesis refusal, 4 computation cap exceeded, 5 certificate
required or unsupported field, 6 internal audit failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from pathlib import Path

import jsonschema

from . import __version__, cache
from .bounds import AuditFailure, BoundConfig, HypothesisError, run_pipeline
from .cohom import (
    ClosureCapExceeded,
    FiniteModule,
    MatrixGroup,
    cyclic_h1,
    cyclic_subgroups_gl2,
    h1,
)
from .curves import (
    CertificateRequired,
    EllipticCurve,
    HyperellipticCurve,
    SingularCurve,
    paladino_curve,
)
from .numfield import FieldCertificate, UnsupportedField
from .poly import Poly
from .ratfunc import ParseError, parse_polys
from .report import Timer, dumps, envelope, load_schema
from .residue import (
    GeometricPlace,
    SymbolAlgebra,
    UnsupportedResidueField,
    ramification_count,
)

EXIT_OK, EXIT_SELFTEST, EXIT_SCHEMA, EXIT_REFUSED, EXIT_CAP, EXIT_CERT, EXIT_AUDIT = range(7)
DEFAULT_FIXED_S = "inf,2,3"


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ------------------------------------------------------------------ parsing


def _rational(text) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc


def _rational_json(text):
    """Canonical config form of a rational: int when integral, else 'p/q'."""
    q = _rational(text)
    return q.numerator if q.denominator == 1 else str(q)


def parse_place_list(text: str) -> list[int]:
    primes = []
    for item in text.replace("{", "").replace("}", "").split(","):
        item = item.strip().lower()
        if item in ("", "inf", "infinity", "oo", "∞"):
            continue
        try:
            primes.append(int(item))
        except ValueError as exc:
            raise UsageError(f"bad place {item!r} in {text!r}") from exc
    return sorted(set(primes))


def parse_matrix(text: str) -> list[list[int]]:
    try:
        rows = [[int(v) for v in row.split(",")] for row in text.split(";")]
    except ValueError as exc:
        raise UsageError(f"bad matrix {text!r}; use rows like '1,1;0,1'") from exc
    if any(len(r) != len(rows) for r in rows):
        raise UsageError(f"matrix {text!r} is not square")
    return rows


def _hyperelliptic_coeffs(text: str) -> list:
    if "x" in text:
        num, den = parse_polys(text)
        if den.degree != 0:
            raise UsageError("f must be a polynomial")
        return [_rational_json(c / den.lc) for c in num.coeffs]
    return [_rational_json(c) for c in text.split(",")]


def _certificate_arg(text: str) -> dict:
    if text.startswith("@"):
        text = Path(text[1:]).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"field certificate is not valid JSON: {exc}") from exc


def config_from_args(args) -> dict:
    curve = {}
    if args.paladino:
        curve["paladino"] = {"beta": _rational_json(args.paladino[0]), "h": _rational_json(args.paladino[1])}
    if args.elliptic:
        curve["elliptic"] = {"a": _rational_json(args.elliptic[0]), "b": _rational_json(args.elliptic[1])}
    if args.elliptic_roots:
        curve["roots"] = [_rational_json(r) for r in args.elliptic_roots.split(",")]
    if args.hyperelliptic:
        curve["hyperelliptic"] = _hyperelliptic_coeffs(args.hyperelliptic)
    config: dict = {"command": "bound", "curve": curve}
    if args.n is not None:
        config["n"] = args.n
    config["seed"] = args.seed
    ov: dict = {}
    if args.fixed_S is not None:
        ov["S"] = parse_place_list(args.fixed_S)
    if args.extra_primes:
        ov["extra_primes"] = parse_place_list(args.extra_primes)
    if args.r is not None:
        ov["r"] = args.r
    if args.field_certificate:
        ov["field_certificate"] = _certificate_arg(args.field_certificate)
    if args.c_nonempty:
        ov["c_nonempty"] = True
    if args.torsion_rational:
        ov["n_torsion_rational"] = True
    if args.generic_galois:
        ov["generic_galois"] = True
    if args.galois_action:
        ov["galois_action"] = [parse_matrix(m) for m in args.galois_action]
    if args.galois_generators is not None:
        ov["galois_generators"] = args.galois_generators
    if args.phi_order is not None:
        ov["phi_order"] = args.phi_order
    if ov:
        config["overrides"] = ov
    return config


def validate_config(config) -> None:
    jsonschema.validate(config, load_schema("config.schema.json"))


def bound_config(config: dict) -> BoundConfig:
    """Turn a schema-valid config dict into pipeline input."""
    validate_config(config)
    spec = config["curve"]
    label = spec.get("label", "")
    if "paladino" in spec:
        curve = paladino_curve(_rational(spec["paladino"]["beta"]), _rational(spec["paladino"]["h"]))
    elif "elliptic" in spec:
        curve = EllipticCurve(_rational(spec["elliptic"]["a"]), _rational(spec["elliptic"]["b"]), label=label)
    elif "roots" in spec:
        roots = [_rational(r) for r in spec["roots"]]
        if len(set(roots)) != 3:
            raise SingularCurve("roots must be distinct")
        curve = EllipticCurve.from_roots(*roots, label=label)
    else:
        curve = HyperellipticCurve(Poly([_rational(c) for c in spec["hyperelliptic"]]), label=label)
    ov = config.get("overrides", {})
    cert = ov.get("field_certificate")
    return BoundConfig(
        curve=curve,
        n=config["n"],
        S_override=ov.get("S"),
        extra_primes=list(ov.get("extra_primes", [])),
        r=ov.get("r"),
        ell_certificate=FieldCertificate.from_dict(cert) if cert else None,
        galois_action=ov.get("galois_action"),
        galois_generators=ov.get("galois_generators"),
        c_nonempty=ov.get("c_nonempty"),
        n_torsion_rational=ov.get("n_torsion_rational"),
        generic_galois=ov.get("generic_galois", False),
        phi_order=ov.get("phi_order", 1),
        seed=config.get("seed", 0),
    )


# ------------------------------------------------------------------ output


def render(rep) -> str:
    lines = []
    curve = rep.inputs["curve"]
    lines.append(f"curve: {curve.get('label') or curve['type']}")
    lines.append(f"n = {rep.inputs['n']}, k = Q, g = {rep.g}")
    s_note = " (override; good reduction outside S not verified)" if rep.S_overridden else ""
    lines.append(f"S = {rep.S}, |S| = {rep.S.size}{s_note}")
    lines.append(f"route: {rep.route}")
    if rep.torsion is not None and rep.torsion.field is not None:
        lines.append(f"l = {rep.torsion.field} [{rep.torsion.provenance}]")
    lines.append(f"|S^l| = {rep.S_ell.size}, w_l = {rep.w}, h_k(S) = {rep.h_k}, h_l(S^l) = {rep.h_ell}")
    width = max(len(k) for k in rep.values)
    for key, val in rep.values.items():
        lines.append(f"  {key.ljust(width)}  {val}")
    for c in rep.claims:
        lines.append(f"  check: {c.lhs} divides {c.rhs}: {'ok' if c.holds() else 'FAILED'}")
    for key, val in rep.provenance.items():
        lines.append(f"  provenance: {key}: {val}")
    for note in rep.notes:
        lines.append(f"  note: {note}")
    lines.append(f"Brauer bound: {rep.brauer_bound}; genus bound: {rep.genus}")
    return "\n".join(lines)


def _run_one(config: dict):
    with Timer() as t:
        rep = run_pipeline(bound_config(config))
    return rep, envelope(rep, config.get("seed", 0), t.elapsed)


def cmd_bound(args) -> int:
    if args.config:
        try:
            raw = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config: {exc}") from exc
        configs = raw if isinstance(raw, list) else [raw]
    else:
        configs = [config_from_args(args)]
    for cfg in configs:
        validate_config(cfg)
    if args.jobs > 1 and len(configs) > 1:
        with ThreadPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_one, configs))
    else:
        results = [_run_one(cfg) for cfg in configs]
    for i, (rep, _) in enumerate(results):
        if i:
            print()
        print(render(rep))
    report_path = args.report or (configs[0].get("output", {}).get("report") if len(configs) == 1 else None)
    if report_path:
        docs = [dumps(doc) for _, doc in results]
        text = docs[0] if len(docs) == 1 else "[\n" + ",\n".join(d.rstrip("\n") for d in docs) + "\n]\n"
        Path(report_path).write_text(text, encoding="utf-8")
    return EXIT_OK


def _sweep_prime(text: str) -> int:
    text = text.strip().lower().removeprefix("p=")
    try:
        return int(text)
    except ValueError as exc:
        raise UsageError(f"bad prime {text!r}") from exc


def cmd_cohomology(args) -> int:
    if args.sweep_p is not None:
        p = _sweep_prime(args.sweep_p)
        from .arith import is_prime

        if not is_prime(p):
            raise UsageError(f"{p} is not prime")
        M = FiniteModule(p, 2)
        bad = []
        subgroups = cyclic_subgroups_gl2(p)
        for u in subgroups:
            order = h1(MatrixGroup([u], p, cap=args.cap), M).h1_order
            if order not in (1, p) or (p == 2 and order != 1) or order != cyclic_h1(u, M):
                bad.append((u, order))
        print(f"p = {p}: {len(subgroups)} cyclic subgroups of GL_2(F_{p})")
        if bad:
            for u, order in bad:
                print(f"  u = {u}: |H^1| = {order}")
            print("some cyclic subgroups fail")
            return EXIT_SELFTEST
        print("all cyclic subgroups pass")
        return EXIT_OK
    if not args.gen or args.modulus is None:
        raise UsageError("give --modulus and at least one --gen, or --sweep-p")
    gens = [parse_matrix(g) for g in args.gen]
    G = MatrixGroup(gens, args.modulus, cap=args.cap)
    M = FiniteModule(args.modulus, G.d)
    res = h1(G, M)
    print(f"|G| = {G.order}, M = (Z/{args.modulus})^{G.d}")
    print(f"|Z^1| = {res.z1_order}, |B^1| = {res.b1_order}, |H^1| = {res.h1_order}")
    if len(gens) == 1:
        cyc = cyclic_h1(gens[0], M)
        verdict = "agrees" if cyc == res.h1_order else "DISAGREES"
        print(f"cyclic formula: |H^1| = {cyc} ({verdict})")
        if cyc != res.h1_order:
            return EXIT_SELFTEST
    return EXIT_OK


def cmd_residue(args) -> int:
    A = SymbolAlgebra.parse(args.symbol, args.n, args.p)
    places = [GeometricPlace.parse(t, args.p) for t in args.at] if args.at else A.candidate_places()
    ramified = []
    for pl in places:
        res = A.residue(pl)
        trivial = res.is_trivial()
        if not trivial:
            ramified.append(pl)
        print(f"at {pl}: {res}: {'trivial' if trivial else 'nontrivial'}")
    if not args.at:
        if ramified:
            r, prov = ramification_count(A)
            print(f"ramified at {', '.join(str(p) for p in ramified)}; r = {r} ({prov})")
        else:
            print("unramified everywhere (geometric places)")
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .acceptance import run_all

    results = run_all(quick=args.quick)
    for res in results:
        print(res.line)
    failed = [r.number for r in results if not r.ok]
    print(f"{len(results) - len(failed)}/{len(results)} passed" + (f"; failed: {failed}" if failed else ""))
    return EXIT_SELFTEST if failed else EXIT_OK


# ------------------------------------------------------------------ wiring


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="brgenus", description="Explicit Brauer-group and genus bounds for curves over Q.")
    parser.add_argument("--version", action="version", version=f"brgenus {__version__}")
    parser.add_argument("--cache", help="cache file (default: $BRGENUS_CACHE, else no cache)")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    b = sub.add_parser("bound", help="bound the unramified Brauer group and the genus")
    curve = b.add_mutually_exclusive_group()
    curve.add_argument("--paladino", nargs=2, metavar=("BETA", "H"), help="member of the Q(zeta_3) 3-torsion family")
    curve.add_argument("--elliptic", nargs=2, metavar=("A", "B"), help="y^2 = x^3 + A x + B")
    curve.add_argument("--elliptic-roots", metavar="E1,E2,E3", help="y^2 = (x-e1)(x-e2)(x-e3)")
    curve.add_argument("--hyperelliptic", metavar="F", help="f as 'x^5 - x' or coefficients c0,c1,...")
    b.add_argument("--n", type=int, help="exponent n > 1 (required)")
    b.add_argument("--fixed-S", dest="fixed_S", nargs="?", const=DEFAULT_FIXED_S, metavar="PLACES",
                   help=f"force S (bare flag: {DEFAULT_FIXED_S})")
    # compatibility spelling kept for existing scripts
    b.add_argument("--paper-S", dest="fixed_S", nargs="?", const=DEFAULT_FIXED_S, help=argparse.SUPPRESS)
    b.add_argument("--extra-primes", metavar="PRIMES", help="add these primes to S")
    b.add_argument("--r", type=int, help="number of ramified places of D (else symbolic)")
    b.add_argument("--field-certificate", metavar="JSON|@FILE", help="data for the n-torsion field l")
    b.add_argument("--c-nonempty", action="store_true", help="assert C(Q) is nonempty")
    b.add_argument("--torsion-rational", action="store_true", help="assert the n-torsion of J is rational")
    b.add_argument("--generic-galois", action="store_true", help="assert Gal(l/Q) is the full symmetric group")
    b.add_argument("--galois-action", action="append", metavar="MATRIX", help="generator action on nJ, e.g. '1,1;0,1'")
    b.add_argument("--galois-generators", type=int, help="number of generators of Gal(l/Q)")
    b.add_argument("--phi-order", type=int, help="|Phi(C,Q)| when known to exceed 1")
    b.add_argument("--config", metavar="FILE", help="JSON config (one object or a list)")
    b.add_argument("--report", metavar="FILE", help="write the JSON report here")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--jobs", type=int, default=1, help="evaluate a config list concurrently")
    b.set_defaults(func=cmd_bound)

    c = sub.add_parser("cohomology", help="brute-force H^1 of a matrix group on (Z/n)^d")
    c.add_argument("--modulus", "-m", type=int)
    c.add_argument("--gen", action="append", metavar="MATRIX", help="generator, rows separated by ';'")
    c.add_argument("--sweep-p", dest="sweep_p", metavar="P", help="check every cyclic subgroup of GL_2(F_p)")
    c.add_argument("--lemma-9-2", dest="sweep_p", help=argparse.SUPPRESS)
    c.add_argument("--cap", type=int, default=10**5, help="largest group order to enumerate")
    c.set_defaults(func=cmd_cohomology)

    r = sub.add_parser("residue", help="tame residues of symbol algebras over k(x)")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--symbol", required=True, help="e.g. '(3,x)' or '(x,x-1);(2,x+1)'")
    r.add_argument("--at", action="append", metavar="PLACE", help="monic irreducible in x, or 'inf'")
    r.add_argument("--p", type=int, help="work over F_p instead of Q")
    r.set_defaults(func=cmd_residue)

    s = sub.add_parser("selftest", help="run the acceptance checks")
    s.add_argument("--quick", action="store_true", help="skip the p = 7 cohomology sweep")
    s.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            parser.print_help()
            return EXIT_SCHEMA
        cache.activate(args.cache)
        try:
            return args.func(args)
        finally:
            cache.deactivate()
    except (UsageError, ParseError, SingularCurve) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except jsonschema.ValidationError as exc:
        print(f"error: config does not match the schema: {exc.message}", file=sys.stderr)
        return EXIT_SCHEMA
    except HypothesisError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except ClosureCapExceeded as exc:
        print(f"computation cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (CertificateRequired, UnsupportedField, UnsupportedResidueField) as exc:
        print(f"certificate required: {exc}", file=sys.stderr)
        return EXIT_CERT
    except AuditFailure as exc:
        print(f"internal audit failure: {exc}", file=sys.stderr)
        return EXIT_AUDIT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
