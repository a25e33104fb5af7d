"""
Command line front end: JSON on stdout, diagnostics on stderr

exit codes: 0 success, 1 invalid input, 2 failed residual or certificate check
"""

import argparse
import itertools
import json
import random
import sys
from typing import List, Optional

import numpy as np
import pandas as pd
from tqdm import tqdm

from kato.algebra.scalars import ScalarField, make_field
from kato.combinatorics.curves import k_invariant, k_invariant_matches
from kato.combinatorics.signature import (
    BranchSignature,
    Mat2Z,
    branch_selfintersections,
    check_gcd,
    derive_signature,
    signature_from_ks,
)
from kato.devmap.developing import (
    ChartPoint,
    commutativity_residuals,
    dev_eval,
    orbit_contraction_report,
    random_chart_points,
)
from kato.germs.families import BiratGerm, FavreGerm
from kato.germs.forms import (
    birat_origin_form,
    compose_blowups_oracle,
    jacobian_det,
    jacobian_monomial,
    origin_degree,
)
from kato.germs.invariants import (
    global_vector_field,
    index,
    kappa_exponent,
    kappa_of,
    lambda_of,
    uv_exponents,
    vf_condition,
)
from kato.normalform.certificate import CertificateVerifier
from kato.normalform.conjugator import normalize
from kato.normalform.equivalence import birat_equivalent, favre_equivalent
from kato.normalform.lattice import e_infty, mu_bound, resonances
from kato.utils.errors import InvalidInput, KatoError
from kato.utils.info import (
    DEFAULT_DEV_DEPTH,
    DEFAULT_ORBIT_STEPS,
    DEFAULT_SEED,
    DEV_TOL,
    EXIT_INVALID,
    EXIT_OK,
    EXIT_VERIFY_FAILED,
    MODES,
    RESIDUAL_TOL,
)
from kato.utils.serialize import certificate_from_json, certificate_to_json, germ_from_json, germ_to_json
from kato.utils.utils import (
    format_rational,
    log_error,
    log_info,
    parse_int_list,
    random_rational,
    set_random_seed,
    set_verbose,
)


def _common_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('--seed', type=int, help='Random seed', default=DEFAULT_SEED)
    parser.add_argument('--order', type=int, help='Truncation order', default=None)
    parser.add_argument('--mode', type=str, help='Scalar domain', choices=MODES, default='exact')
    parser.add_argument('--tol', type=float, help='Complex mode tolerance', default=RESIDUAL_TOL)
    parser.add_argument('--verbose', action='store_true', help='Print INFO lines on stderr')
    return parser


def _germ_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument('--sig', type=str, help='Matrix entries p,q,r,s', default=None)
    parser.add_argument('--ks', type=str, help='Dloussky sequence k1,...,kN', default=None)
    parser.add_argument('--l', type=int, help='Length of the regular sequence', default=1)
    parser.add_argument('--tau', type=str, help='Rational generator tau, a0 = tau^(r+s-1)', default=None)
    parser.add_argument('--minpoly', type=str, help='Defining polynomial of tau, constant term first', default=None)
    parser.add_argument('--a0', type=str, help='Root coefficient a0', default=None)
    parser.add_argument('--a', type=str, help='Coefficients a1,...,a(l-1); random when omitted', default=None)
    parser.add_argument('--aK', type=str, help='Coefficient a(l+K)', default=None)
    return parser


def get_parser() -> argparse.ArgumentParser:
    common, germ = _common_parser(), _germ_parser()
    parser = argparse.ArgumentParser('kato', description='*** one-branch Kato germs ***')
    sub = parser.add_subparsers(dest='command')

    sub.add_parser('analyze', parents=[common, germ], help='Signature invariants')
    sub.add_parser('oracle', parents=[common, germ], help='Composition and Jacobian oracles')
    p = sub.add_parser('normalize', parents=[common, germ], help='Conjugate G to its Favre form')
    p.add_argument('--eps', type=str, help='(k-1)-th root of unity (complex mode)', default='1')
    p = sub.add_parser('verify', parents=[common], help='Check a certificate')
    p.add_argument('--cert', type=str, help='Certificate file, stdin when omitted', default=None)
    p = sub.add_parser('equiv', parents=[common], help='Equivalence of two germs')
    p.add_argument('--germ1', type=str, required=True, help='First germ JSON file')
    p.add_argument('--germ2', type=str, required=True, help='Second germ JSON file')
    sub.add_parser('invariants', parents=[common, germ], help='lambda, kappa, index, vector field')
    p = sub.add_parser('orbit', parents=[common, germ], help='Orbit contraction')
    p.add_argument('--points', type=int, help='Number of sample points', default=10)
    p.add_argument('--radius', type=float, help='Sampling radius', default=0.05)
    p.add_argument('--steps', type=int, help='Number of iterations', default=DEFAULT_ORBIT_STEPS)
    p = sub.add_parser('dev', parents=[common, germ], help='Developing map')
    p.add_argument('--chart', type=int, help='Chart index, <= 0', default=None)
    p.add_argument('--samples', type=int, help='Number of sample points', default=10)
    p.add_argument('--depth', type=int, help='Number of fundamental domains', default=DEFAULT_DEV_DEPTH)
    p = sub.add_parser('sweep', parents=[common], help='Batch run over a signature grid')
    p.add_argument('--spec', type=str, required=True, help='Sweep spec JSON file')
    p.add_argument('--csv', type=str, help='Also write the records as CSV', default=None)
    return parser


def _emit(obj) -> None:
    print(json.dumps(obj))


def _signature(args) -> BranchSignature:
    if args.ks is not None:
        return signature_from_ks(parse_int_list(args.ks), args.l)
    if args.sig is None:
        raise ValueError("one of --sig or --ks is required")
    entries = parse_int_list(args.sig)
    if len(entries) != 4:
        raise ValueError(f"--sig takes four integers p,q,r,s, got {args.sig}")
    return derive_signature(Mat2Z(*entries), args.l)


def _field(args) -> ScalarField:
    minpoly = None if args.minpoly is None else [t.strip() for t in args.minpoly.split(",")]
    if args.mode == "complex":
        return make_field("complex")
    return make_field("exact", minpoly=minpoly, tau=args.tau)


def _a0(args, sig: BranchSignature, field: ScalarField):
    if args.a0 is not None:
        return field.parse(args.a0)
    if args.tau is not None or args.minpoly is not None:
        if field.is_exact:
            return field.gen ** (sig.kS - 1)
        if args.tau is None:
            raise ValueError("complex mode takes --tau or --a0, not --minpoly")
        return field.parse(args.tau) ** (sig.kS - 1)
    return field.one


def _germ(args, rng: random.Random) -> BiratGerm:
    sig = _signature(args)
    field = _field(args)
    a0 = _a0(args, sig, field)
    if args.a is not None:
        a = tuple(field.parse(t.strip()) for t in args.a.split(",") if t.strip())
    else:
        a = tuple(field(random_rational(rng)) for _ in range(sig.l - 1))
    if args.aK is not None:
        aK = field.parse(args.aK)
    elif args.a is None and sig.twisted:
        aK = field(random_rational(rng))
    else:
        aK = field.zero
    return BiratGerm(sig, field, a0, a, aK)


def _read_json(path: Optional[str]):
    if path is None:
        return json.load(sys.stdin)
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def analyze_record(sig: BranchSignature) -> dict:
    u, v = uv_exponents(sig)
    chain_k = k_invariant(sig.ks)
    out = sig.to_dict()
    out.update({
        "word": [letter.value for letter in sig.word],
        "selfintersections": branch_selfintersections(sig.ks),
        "kS_chain": chain_k,
        "kS_match": k_invariant_matches(sig.ks, sig.l),
        "gcd_ok": check_gcd(sig),
        "index": index(sig),
        "uv": [format_rational(u), format_rational(v)],
        "mu_bound": mu_bound(sig),
        "e_infty": [list(pt) for pt in e_infty(sig).sorted()],
        "resonances": [list(x) for x in resonances(sig, 2 * sig.kS)],
    })
    return out


def cmd_analyze(args, rng) -> int:
    _emit(analyze_record(_signature(args)))
    return EXIT_OK


def cmd_oracle(args, rng) -> int:
    g = _germ(args, rng)
    order = args.order if args.order is not None else max(20, origin_degree(g))
    composed = compose_blowups_oracle(g, order)
    origin = birat_origin_form(g, order)
    composition_match = composed[0] == origin[0] and composed[1] == origin[1]
    jac = jacobian_det(g)
    jacobian_match = jac == jacobian_monomial(g, jac.order)
    _emit({"order": order, "composition_match": composition_match, "jacobian_match": jacobian_match,
           "germ": germ_to_json(g)})
    return EXIT_OK if composition_match and jacobian_match else EXIT_VERIFY_FAILED


def cmd_invariants(args, rng) -> int:
    sig = _signature(args)
    field = _field(args)
    a0 = _a0(args, sig, field)
    out = {"sig": sig.to_dict(), "a0": field.format(a0), "index": index(sig),
           "lambda": field.format(lambda_of(sig, field, a0)), "twisted": sig.twisted,
           "vf": global_vector_field(sig, field, a0, args.tol)}
    if kappa_exponent(sig).denominator == 1:
        out["kappa"] = field.format(kappa_of(sig, field, a0))
    if sig.twisted:
        out["vf_condition"] = field.format(vf_condition(sig, field, a0))
    _emit(out)
    return EXIT_OK


def cmd_normalize(args, rng) -> int:
    g = _germ(args, rng)
    cert = normalize(g, eps=g.field.parse(args.eps), order=args.order, tol=args.tol)
    valid = cert.residual_is_zero(args.tol)
    _emit(certificate_to_json(cert, valid))
    return EXIT_OK if valid else EXIT_VERIFY_FAILED


def cmd_verify(args, rng) -> int:
    cert = certificate_from_json(_read_json(args.cert))
    input_dict = {"certificate": cert}
    if args.order is not None:
        input_dict["order"] = args.order
    result = CertificateVerifier(tol=args.tol).eval(input_dict, verbose=True)
    _emit(result)
    return EXIT_OK if result["valid"] else EXIT_VERIFY_FAILED


def cmd_equiv(args, rng) -> int:
    g1 = germ_from_json(_read_json(args.germ1))
    g2 = germ_from_json(_read_json(args.germ2))
    if isinstance(g1, FavreGerm) and isinstance(g2, FavreGerm):
        eps = favre_equivalent(g1, g2, args.tol)
        out = {"equivalent": eps is not None, "eps": None if eps is None else g1.field.format(eps)}
    elif isinstance(g1, BiratGerm) and isinstance(g2, BiratGerm):
        AB = birat_equivalent(g1, g2, args.tol)
        out = {"equivalent": AB is not None,
               "A": None if AB is None else g1.field.format(AB[0]),
               "B": None if AB is None else g1.field.format(AB[1])}
    else:
        raise ValueError("equivalence compares two Favre germs or two birational germs")
    _emit(out)
    return EXIT_OK


def cmd_orbit(args, rng) -> int:
    g = _germ(args, rng)
    nprng = np.random.default_rng(args.seed)
    moduli = args.radius * np.sqrt(nprng.uniform(0.0, 1.0, size=(args.points, 1)))
    direction = nprng.normal(size=(args.points, 2)) + 1j * nprng.normal(size=(args.points, 2))
    direction /= np.linalg.norm(direction, axis=1, keepdims=True)
    report = orbit_contraction_report(g, moduli * direction, args.steps)
    out = report.to_dict()
    out["points"] = [[[z.real, z.imag] for z in row] for row in moduli * direction]
    _emit(out)
    return EXIT_OK


def cmd_dev(args, rng) -> int:
    if args.chart is not None and args.chart > 0:
        raise InvalidInput(f"chart index must be <= 0, got {args.chart}")
    g = _germ(args, rng)
    n = g.sig.n
    chart = -n if args.chart is None else args.chart
    nprng = np.random.default_rng(args.seed)
    samples = random_chart_points(nprng, args.samples, chart)
    images = [dev_eval(g, pt, args.depth) for pt in samples]
    out = {"chart": chart, "points": [[[z.real, z.imag] for z in pt.coords] for pt in samples],
           "images": [P.to_list() for P in images]}
    status = EXIT_OK
    if chart + n <= 0:
        residuals = commutativity_residuals(g, samples, args.depth)
        out["commutativity"] = residuals
        if max(residuals, default=0.0) >= DEV_TOL:
            status = EXIT_VERIFY_FAILED
    _emit(out)
    return status


def sweep_cases(spec: dict) -> List[tuple]:
    r"""
    (ks, l) for every sequence of at most max_blocks entries in [1, max_k] and 1 <= l <= max_l
    """
    if "max_blocks" not in spec:
        return []
    max_blocks = int(spec["max_blocks"])
    max_k = int(spec.get("max_k", 3))
    max_l = int(spec.get("max_l", 1))
    assert max_blocks >= 0 and max_k >= 1 and max_l >= 1, "sweep ranges must be positive"
    cases = []
    for nblocks in range(1, max_blocks + 1):
        for ks in itertools.product(range(1, max_k + 1), repeat=nblocks):
            for l in range(1, max_l + 1):
                cases.append((ks, l))
    return cases


def sweep_record(ks, l, spec: dict, rng: random.Random, order: Optional[int]) -> dict:
    record = {"ks": list(ks), "l": l}
    try:
        sig = signature_from_ks(ks, l)
    except KatoError as err:
        record.update({"error": type(err).__name__, "message": str(err)})
        return record
    chain_k = k_invariant(ks)
    record.update({"p": sig.p, "q": sig.q, "r": sig.r, "s": sig.s, "kS": sig.kS,
                   "kS_chain": chain_k, "kS_match": k_invariant_matches(ks, l),
                   "gcd_ok": check_gcd(sig),
                   "twisted": sig.twisted, "index": index(sig)})
    if spec.get("normalize"):
        field = make_field("exact", tau=spec.get("tau", "1/2"))
        a = tuple(random_rational(rng) for _ in range(l - 1))
        aK = random_rational(rng) if sig.twisted else 0
        g = BiratGerm(sig, field, field.gen ** (sig.kS - 1), a, aK)
        try:
            cert = normalize(g, order=order)
            record.update({"valid": cert.residual_is_zero(),
                           "extended_support": [list(pt) for pt in cert.extended_support]})
        except KatoError as err:
            record.update({"valid": False, "error": type(err).__name__, "message": str(err)})
    return record


def cmd_sweep(args, rng) -> int:
    spec = _read_json(args.spec)
    if not isinstance(spec, dict):
        raise ValueError("sweep spec must be a JSON object")
    order = args.order if args.order is not None else spec.get("order")
    cases = sweep_cases(spec)
    records = [sweep_record(ks, l, spec, rng, order) for ks, l in tqdm(cases, disable=not cases, file=sys.stderr)]
    for record in records:
        _emit(record)
    if args.csv is not None:
        pd.DataFrame(records).to_csv(args.csv, index=False)
        log_info(f"wrote {len(records)} records to {args.csv}")
    failed = any(not r.get("kS_match", True) or not r.get("gcd_ok", True) or not r.get("valid", True)
                 for r in records)
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "oracle": cmd_oracle,
    "normalize": cmd_normalize,
    "verify": cmd_verify,
    "equiv": cmd_equiv,
    "invariants": cmd_invariants,
    "orbit": cmd_orbit,
    "dev": cmd_dev,
    "sweep": cmd_sweep,
}


def run(argv: Optional[List[str]] = None) -> int:
    r"""
    run one command and return its exit code
    """
    parser = get_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_INVALID
    set_verbose(args.verbose)
    set_random_seed(args.seed)
    rng = random.Random(args.seed)
    try:
        return COMMANDS[args.command](args, rng)
    except (KatoError, ValueError, OSError, KeyError, TypeError, AttributeError, AssertionError) as err:
        log_error(f"{type(err).__name__}: {err}")
        _emit({"error": type(err).__name__, "message": str(err)})
        return EXIT_INVALID


def main() -> None:
    sys.exit(run(sys.argv[1:]))
