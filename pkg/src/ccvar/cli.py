"""Command-line entry point: ``ccvar check | construct | suite``.

Exit codes: 0 pass, 1 a law failed, 2 invalid input (schema, capacity,
degeneracy).  Reports go to stdout as canonical JSON.
"""

import argparse
import json
import sys
import time

from . import io
from .balg import MAX_ATOMS, BooleanAlgebra
from .bset import (BSet, bset_certificate, bset_exponential, bset_product, check_eq_family,
                   conditioned_disjunction, free_bset, terminal_bset)
from .certificate import Certificate
from .clone import Decomposer, DualClone, bicross_build
from .clone.core import DEFAULT_MAX_ARITY
from .errors import AxiomError, CapacityError, CCVarError, DecompositionError, DegenerateError
from .matched.bmset import (BMSet, b_as_bmset, bm_product, bmset_certificate, free_bmset, m_as_bmset,
                            terminal_bmset)
from .matched.exponential import bm_exponential
from .matched.pair import MatchedPair, extract_from_endos, matched_pair_certificate
from .matched.theta import theta_certificate, theta_to_clone
from .mon import MAX_MONOID, validate_maction
from .bset import validate_bset

CONSTRUCT_KINDS = ("exp", "free", "product", "extract-endos", "bicross", "decompose")


class InputError(Exception):
    pass


def _report(command, cert=None, status=None, extra=None, error=None):
    rep = {"command": command}
    if cert is not None:
        rep["checks"] = [c.to_json() for c in cert.checks]
        rep["failures"] = [c.tag for c in cert.failures]
        rep["status"] = "pass" if cert.passed else "fail"
    if status:
        rep["status"] = status
    if error:
        rep["error"] = error
    if extra:
        rep.update(extra)
    return rep


def _limits(args):
    return io.Limits(args.max_atoms, args.max_monoid)


# ---------------------------------------------------------------------------
# check


def _check_doc(doc, args):
    L = _limits(args)
    kind = io.check_schema(doc)
    if kind == "bset":
        B = L.algebra(doc["boolean"])
        return bset_certificate(B, doc["action"])
    if kind == "eq-family":
        E = io.build(doc, L)
        return check_eq_family(E)
    if kind == "matched-pair":
        B, M = L.algebra(doc["boolean"]), L.monoid(doc["monoid"])
        X = validate_bset(B, doc["bset_on_m"])
        A = validate_maction(M, doc["m_on_b"], B.size)
        return matched_pair_certificate(B, M, X, A)
    if kind == "bmset":
        P = io.build(dict(doc["pair"], kind="matched-pair"), L)
        X = validate_bset(P.algebra, doc["bset"])
        A = validate_maction(P.monoid, doc["maction"], X.carrier)
        return bmset_certificate(P, X, A)
    if kind == "dual-op":
        t = io.build(doc, L)
        return _decompose_certificate(t, args)[0]
    # remaining kinds are fully checked by construction
    obj = io.build(doc, L)
    cert = Certificate(kind)
    cert.record("valid", True, ())
    del obj
    return cert


def _as_report_error(e):
    """Sub-structure axiom failures (the monoid, the B-set on M ...) are
    reported as a failed check with the axiom as tag."""
    cert = Certificate("structure")
    cert.record(e.axiom, False, e.witness)
    return cert


def cmd_check(args):
    try:
        doc = io.read_json(args.file)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read {args.file}: {e}") from None
    try:
        cert = _check_doc(doc, args)
    except AxiomError as e:
        cert = _as_report_error(e)
    return _report(["check", args.file], cert, extra={"kind": doc.get("kind")})


# ---------------------------------------------------------------------------
# construct


def _load_inputs(args, count):
    if len(args.input) != count:
        raise InputError(f"construct {args.kind} needs {count} --input file(s), got {len(args.input)}")
    L = _limits(args)
    out = []
    for path in args.input:
        try:
            out.append(io.build(io.read_json(path), L))
        except (OSError, json.JSONDecodeError) as e:
            raise InputError(f"cannot read {path}: {e}") from None
    return out


def _decompose_certificate(t, args):
    C = DualClone(len(t.h), max(t.arity, 1))
    d = Decomposer(C, t.arity)
    w = d.witnesses(t)
    cert = Certificate("decompose")
    cert.record("decomposition-exists", len(w) > 0, ())
    cert.record("decomposition-unique", len(w) <= 1, lambda: [[h.to_json(), m.to_json()] for h, m in w])
    if len(w) == 1:
        cert.record("agrees-with-pair-split", w[0] == C.pair_split(t), ())
    return cert, w


def _exp_tests(Y, Z):
    if isinstance(Y, BMSet):
        P = Y.pair
        objs = [terminal_bmset(P), m_as_bmset(P), b_as_bmset(P), Y, Z]
    else:
        objs = [terminal_bset(Y.algebra), conditioned_disjunction(Y.algebra), Y, Z]
    seen, out = set(), []
    for X in objs:
        key = X.key() if isinstance(X, BMSet) else (X.carrier, X.action)
        if key not in seen:
            seen.add(key)
            out.append(X)
    return out


def cmd_construct(args):
    kind = args.kind
    extra = {}
    if kind == "extract-endos":
        if args.size is None:
            raise InputError("extract-endos needs --size")
        obj = extract_from_endos(args.size)
        cert = matched_pair_certificate(obj.algebra, obj.monoid, obj.bset_on_m, obj.m_on_b)
        extra["summary"] = {"M": obj.monoid.size, "B": obj.algebra.size}
        out = io.dump(obj)
    elif kind == "exp":
        Y, Z = _load_inputs(args, 2)
        if isinstance(Y, BMSet) and isinstance(Z, BMSet):
            E = bm_exponential(Y, Z)
            obj = E.bmset
        elif isinstance(Y, BSet) and isinstance(Z, BSet):
            E = bset_exponential(Y, Z)
            obj = E.bset
        else:
            raise InputError("exp needs two B-sets or two BM-sets")
        cert = E.verify_universal(_exp_tests(Y, Z))
        out = io.dump(obj)
        out["homs"] = [list(h) for h in E.homs]
        extra["summary"] = {"carrier": obj.carrier}
    elif kind == "product":
        X, Y = _load_inputs(args, 2)
        if isinstance(X, BMSet) and isinstance(Y, BMSet):
            obj = bm_product(X, Y)
            cert = bmset_certificate(obj.pair, obj.bset, obj.maction)
        elif isinstance(X, BSet) and isinstance(Y, BSet):
            obj = bset_product(X, Y)
            cert = bset_certificate(obj.algebra, obj.action)
        else:
            raise InputError("product needs two B-sets or two BM-sets")
        out = io.dump(obj)
        extra["summary"] = {"carrier": obj.carrier}
    elif kind == "free":
        (src,) = _load_inputs(args, 1)
        g = args.generators
        if isinstance(src, MatchedPair):
            F = free_bmset(src, g)
            P = src
            cert = F.verify_free([terminal_bmset(P), m_as_bmset(P), b_as_bmset(P)])
            obj = F.bmset
        elif isinstance(src, BooleanAlgebra):
            F = free_bset(src, g)
            cert = F.verify_free([terminal_bset(src), conditioned_disjunction(src)])
            obj = F.bset
        else:
            raise InputError("free needs a matched-pair or boolean input")
        out = io.dump(obj)
        out["unit"] = list(F.unit)
        extra["summary"] = {"carrier": obj.carrier, "unit": list(F.unit)}
    elif kind == "bicross":
        (P,) = _load_inputs(args, 1)
        if not isinstance(P, MatchedPair):
            raise InputError("bicross needs a matched-pair input")
        arity = args.max_arity or 2
        cert = theta_certificate(P, arity)
        D = theta_to_clone(P, arity)
        C, _ = bicross_build(D, arity, certify=False)
        out = {"kind": "bicross-clone", "pair": io.dump(P), "max_arity": arity,
               "ops": {str(k): [op.to_json() for op in C.ops(k)] for k in range(1, arity + 1)}}
        extra["summary"] = {str(k): len(C.ops(k)) for k in range(1, arity + 1)}
    elif kind == "decompose":
        (t,) = _load_inputs(args, 1)
        if not hasattr(t, "pairs"):
            raise InputError("decompose needs a dual-op input")
        cert, w = _decompose_certificate(t, args)
        out = {"kind": "decomposition", "op": t.to_json(), "unique": len(w) == 1,
               "witnesses": [{"h": h.to_json(), "m": m.to_json()} for h, m in w]}
        extra["summary"] = {"witnesses": len(w), "unique": len(w) == 1}
    else:
        raise InputError(f"unknown construct kind {kind}")
    out["certificate"] = cert.to_json()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(io.dumps(out))
        extra["output"] = args.output
    else:
        extra["result"] = out
    return _report(["construct", kind], cert, extra=extra)


# ---------------------------------------------------------------------------
# suite


def cmd_suite(args):
    from .suite import run_suite
    t0 = time.perf_counter()
    results = run_suite(args.level, timing=args.timing)
    status = "pass" if all(r["status"] == "pass" for r in results) else "fail"
    rep = _report(["suite", args.level], status=status, extra={"criteria": results})
    if args.timing:
        rep["seconds"] = round(time.perf_counter() - t0, 3)
    return rep


# ---------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="ccvar", description="Finite cartesian closed varieties workbench.")
    p.add_argument("--max-atoms", type=int, default=MAX_ATOMS)
    p.add_argument("--max-monoid", type=int, default=MAX_MONOID)
    p.add_argument("--max-arity", type=int, default=None,
                   help=f"arity bound for clone checks (default {DEFAULT_MAX_ARITY}; 2 for bicross)")
    p.add_argument("--seed", type=int, default=None, help="accepted and ignored; every search is deterministic")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="validate a structure file")
    c.add_argument("file")
    c.set_defaults(func=cmd_check)

    k = sub.add_parser("construct", help="build a structure and its certificate")
    k.add_argument("kind", choices=CONSTRUCT_KINDS)
    k.add_argument("-i", "--input", action="append", default=[])
    k.add_argument("-o", "--output")
    k.add_argument("--size", type=int)
    k.add_argument("--generators", type=int, default=1)
    k.set_defaults(func=cmd_construct)

    s = sub.add_parser("suite", help="run the exhaustive acceptance suites")
    s.add_argument("--level", choices=("quick", "full"), default="quick")
    s.add_argument("--timing", action="store_true", help="include wall-clock seconds (breaks byte-identity)")
    s.set_defaults(func=cmd_suite)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    command = [args.command] + ([args.file] if args.command == "check" else [])
    try:
        rep = args.func(args)
        code = 0 if rep["status"] == "pass" else 1
    except io.SchemaError as e:
        rep = _report(command, status="error", error=str(e), extra={"pointer": e.pointer or "/"})
        code = 2
    except (InputError, CapacityError, DegenerateError, DecompositionError) as e:
        rep = _report(command, status="error", error=str(e))
        code = 2
    except AxiomError as e:
        rep = _report(command, status="fail", error=str(e),
                      extra={"failures": [e.axiom], "witnesses": [list(e.witness)]})
        code = 1
    except CCVarError as e:
        rep = _report(command, status="error", error=str(e))
        code = 2
    sys.stdout.write(io.dumps(rep))
    sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
