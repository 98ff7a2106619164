"""``moykv`` command line: evaluate invariants and verify identities.

Exit codes: 0 success, 1 parse or validation error, 2 precondition violated,
3 skein budget exhausted, 4 some check failed (``verify``, or ``corpus`` with
``--strict``).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from itertools import product
from pathlib import Path

from . import composition, jaeger, kauffman, moy_bracket, transforms
from .diagram import (
    DiagramError,
    Gen,
    ParseError,
    SliceDiagram,
    ValidationError,
    mirror,
    parse_diagrams,
    splice,
    upright,
)
from .laurent import QINV, Q, Z, HalfLaurent, monomial_ratio

EXIT_OK, EXIT_PARSE, EXIT_PRE, EXIT_BUDGET, EXIT_FAIL = 0, 1, 2, 3, 4

COMPOSITION_PAIRS = [(1, 1), (1, 2), (1, 3), (2, 2)]


# -- reports -------------------------------------------------------------


def record(check, diagram, params, lhs=None, rhs=None, status=None, message=None):
    if status is None:
        status = "pass" if lhs == rhs else "fail"
    rec = {
        "check": check,
        "diagram": diagram,
        "params": params,
        "status": status,
        "lhs": lhs.to_json() if isinstance(lhs, HalfLaurent) else lhs,
        "rhs": rhs.to_json() if isinstance(rhs, HalfLaurent) else rhs,
    }
    if message:
        rec["message"] = message
    return rec


# -- individual checks ---------------------------------------------------


def check_jaeger(D: SliceDiagram, Ns, budget):
    out = []
    for N in Ns:
        lhs = jaeger.jaeger_rhs(D, 2 * N)
        rhs = kauffman.kv(D, 2 * N, max_nodes=budget)
        out.append(record("jaeger", D.name, {"N": N}, lhs, rhs))
        if N == 1 and D.count("xo", "xu") == 0:
            ok = all(
                moy_bracket.r_n(R, 1) == (0 if R.count("v4") else 1)
                for _, _, _, R in jaeger.jaeger_terms(D, 2)
            )
            out.append(record("sl1", D.name, {"N": 1}, status="pass" if ok else "fail"))
    return out


def check_composition(G: SliceDiagram, pairs):
    out = []
    for M, N in pairs:
        lhs = composition.composition_rhs(G, M, N)
        rhs = moy_bracket.bracket_planar(G, M + N)
        out.append(record("composition", G.name, {"M": M, "N": N}, lhs, rhs))
    return out


def _is_planar(G):
    return not any(g.kind in ("xo", "xu") for g in G.gens)


def check_reverse(G: SliceDiagram, Ns):
    out = []
    planar = _is_planar(G) and G.kind == "moy"
    for N in Ns:
        for k, circ in enumerate(transforms.simple_circuits(G)):
            if max(G.arcs[a].color for a in circ) > N:
                continue
            params = {"N": N, "circuit": k}
            G2 = transforms.reverse_circuit(G, circ, N)
            if planar:
                lhs = moy_bracket.bracket_planar(G2, N)
                rhs = moy_bracket.bracket_planar(G, N)
                status = "pass" if lhs == rhs else "fail"
            else:
                lhs = moy_bracket.bracket_knotted(G2, N)
                rhs = moy_bracket.bracket_knotted(G, N)
                if rhs.is_zero():
                    status = "pass" if lhs.is_zero() else "fail"
                else:
                    status = "pass" if monomial_ratio(lhs, rhs) is not None else "fail"
            out.append(record("reverse", G.name, params, lhs, rhs, status=status))
    return out


def check_component_reverse(L: SliceDiagram, Ns):
    out = []
    for N in Ns:
        if max(L.colors(), default=0) > N:
            continue
        for K in range(len(L.components)):
            lhs, rhs = transforms.component_reversal_sides(L, K, N)
            params = {"N": N, "component": K, "shift": transforms.reversal_shift(L, K, N)}
            out.append(record("component-reverse", L.name, params, lhs, rhs))
    return out


def check_so6(D: SliceDiagram, budget):
    out = []
    if D.kind == "moy":
        S = transforms.graph_shadow(D)
        lhs = moy_bracket.bracket_planar(D, 4)
        rhs = kauffman.kv(S, 6, max_nodes=budget)
        out.append(record("so6-graph", D.name, {}, lhs, rhs))
        return out
    if D.kind != "unoriented" or D.count("v4"):
        raise DiagramError("so6 needs an unoriented link or a mostly 2-colored MOY graph")
    m = D.count("xo", "xu")
    target = kauffman.kauffman_link(mirror(D), 6, max_nodes=budget)
    if m % 2:
        target = -target
    for flags in product([True, False], repeat=len(D.components)):
        L2 = transforms.two_color(D, flags)
        lhs = moy_bracket.renormalized_bracket(L2, 4)
        params = {"orientation": "".join("+" if f else "-" for f in flags)}
        out.append(record("so6-link", D.name, params, lhs, target))
    return out


def add_kink(D: SliceDiagram) -> SliceDiagram:
    """Insert a positive curl into the first upward strand."""
    for s in range(len(D.gens)):
        for p, pt in enumerate(D.levels[s + 1]):
            if pt.up:
                sub = [D.gens[s], Gen("cup", p + 1, pt.color, "lu"), Gen("xo", p), Gen("cap", p + 1)]
                return splice(D, s, sub)
    raise DiagramError("no upward strand to kink")


def check_skein(D: SliceDiagram, Ns):
    """Difference, vertex and kink relations at every crossing of a
    1-colored oriented diagram."""
    if D.kind != "link" or D.colors() - {1} or D.count("v4"):
        raise DiagramError("skein checks need a 1-colored link diagram")
    U = upright(D)
    out = []
    for N in Ns:
        val = moy_bracket.bracket_knotted
        base = val(U, N)
        kink = val(add_kink(U), N)
        out.append(record("skein-kink", D.name, {"N": N}, kink, HalfLaurent.mono(-2 * N, -1) * base))
        for s, g in enumerate(U.gens):
            if g.kind not in ("xo", "xu"):
                continue
            i = g.pos
            xp = val(splice(U, s, [Gen("xo", i)]), N)
            xm = val(splice(U, s, [Gen("xu", i)]), N)
            sm = val(splice(U, s, []), N)
            vx = val(splice(U, s, [Gen("mrg", i), Gen("spl", i, 1)], kind="moy"), N)
            p = {"N": N, "slice": s}
            out.append(record("skein-difference", D.name, p, xp - xm, Z * sm))
            out.append(record("skein-vertex+", D.name, p, vx, xp + QINV * sm))
            out.append(record("skein-vertex-", D.name, p, vx, xm + Q * sm))
    return out


# -- dispatch ------------------------------------------------------------


def default_checks(D: SliceDiagram, budget):
    """The checks that apply to a diagram of this kind and shape."""
    out = []
    if D.kind == "unoriented":
        if D.count("xo", "xu") <= 3 and D.count("v4") <= 2:
            out += check_jaeger(D, [1, 2, 3], budget)
        if not D.count("v4"):
            out += check_so6(D, budget)
        else:
            lhs = kauffman.kv(D, 6, max_nodes=budget)
            rhs = kauffman.kv(D, 6, form=2, last_first=True, max_nodes=budget)
            out.append(record("kv-order", D.name, {"N": 6}, lhs, rhs))
    elif D.kind == "moy" and _is_planar(D):
        out += check_composition(D, COMPOSITION_PAIRS)
        out += check_reverse(D, [2, 3, 4])
        try:
            transforms.graph_shadow(D)
        except DiagramError:
            pass
        else:
            out += check_so6(D, budget)
    else:
        out += check_reverse(D, [2, 3])
        if not D.count("mrg", "spl", "v4"):
            out += check_component_reverse(D, [2, 3, 4])
            if not D.colors() - {1}:
                out += check_skein(D, [2, 3, 4])
    return out


def _error_record(check, name, exc):
    return record(check, name, {}, status="error", message=f"{type(exc).__name__}: {exc}")


def run_file(path: str, budget: int, timing: bool, checker=None):
    """All check records for one file; failures are isolated per diagram."""
    name = Path(path).name
    try:
        diagrams = parse_diagrams(Path(path).read_text())
    except (OSError, DiagramError) as exc:
        return [_error_record("parse", name, exc)]
    recs = []
    for D in diagrams:
        t = time.perf_counter()
        try:
            got = (checker or default_checks)(D, budget)
        except (DiagramError, ValueError, kauffman.BudgetExceeded) as exc:
            got = [_error_record("evaluate", D.name, exc)]
        if timing:
            dt = round(time.perf_counter() - t, 3)
            for r in got:
                r["time"] = dt
        for r in got:
            r["file"] = path
        recs += got
    return recs


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("MOYKV_THREADS", "1")))
    except ValueError:
        return 1


def _files(path: str) -> list[str]:
    p = Path(path)
    if p.is_dir():
        return sorted(str(f) for f in p.rglob("*.moy"))
    return [str(p)]


def _run_all(files, budget, timing, checker=None):
    n = _workers()
    if n == 1 or len(files) < 2:
        return [run_file(f, budget, timing, checker) for f in files]
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(run_file, files, [budget] * len(files), [timing] * len(files),
                             [checker] * len(files)))


def summarize(records):
    s = {"pass": 0, "fail": 0, "error": 0}
    for r in records:
        s[r["status"]] += 1
    return s


def write_report(records, out):
    doc = {"cases": records, "summary": summarize(records)}
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _print_records(records):
    for r in records:
        params = " ".join(f"{k}={v}" for k, v in sorted(r["params"].items()))
        line = f"{r['status']:5} {r['check']} {r['diagram']} {params}".rstrip()
        if r.get("message"):
            line += f" ({r['message']})"
        print(line)


# -- commands ------------------------------------------------------------


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")


def run_eval(args) -> int:
    try:
        diagrams = parse_diagrams(Path(args.file).read_text())
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ParseError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    fn = {
        "moy": lambda D: moy_bracket.bracket_knotted(D, args.N),
        "kauffman": lambda D: kauffman.kauffman_link(D, args.N, max_nodes=args.max_nodes),
        "kv": lambda D: kauffman.kv(D, args.N, max_nodes=args.max_nodes),
        "rn": lambda D: moy_bracket.r_n(D, args.N),
        "rtilde": lambda D: moy_bracket.renormalized_bracket(D, args.N),
    }[args.invariant]
    for D in diagrams:
        try:
            val = fn(D)
        except kauffman.BudgetExceeded as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_BUDGET
        except (DiagramError, ValueError) as exc:
            print(f"error: {D.name}: {exc}", file=sys.stderr)
            return EXIT_PRE
        prefix = f"{D.name}: " if len(diagrams) > 1 else ""
        print(prefix + (json.dumps(val.to_json()) if args.json else str(val)))
    return EXIT_OK


def _verify_checker(args):
    sub = args.check
    Ns = args.N
    if sub == "jaeger":
        return lambda D, b: check_jaeger(D, Ns or [1, 2, 3], b)
    if sub == "composition":
        if args.M is not None:
            pairs = [(args.M, n) for n in (Ns or [1, 2, 3])]
        else:
            pairs = COMPOSITION_PAIRS
        return lambda D, b: check_composition(D, pairs)
    if sub == "reverse":
        return lambda D, b: check_reverse(D, Ns or [2, 3, 4])
    if sub == "component-reverse":
        return lambda D, b: check_component_reverse(D, Ns or [2, 3, 4])
    if sub == "so6":
        return check_so6
    if sub == "skein-consistency":
        return lambda D, b: check_skein(D, Ns or [2, 3, 4])
    raise ValueError(sub)


def run_verify(args) -> int:
    files = _files(args.path)
    if not files:
        print(f"error: no .moy files at {args.path}", file=sys.stderr)
        return EXIT_PARSE
    checker = _verify_checker(args)
    records = []
    for f in files:
        records += run_file(f, args.max_nodes, args.timing, checker)
    _print_records(records)
    if args.report:
        write_report(records, args.report)
    return _exit_for(records, strict=True)


def _exit_for(records, strict):
    errs = [r for r in records if r["status"] == "error"]
    if any("BudgetExceeded" in r.get("message", "") for r in errs):
        return EXIT_BUDGET
    if any(r["check"] == "parse" for r in errs):
        return EXIT_PARSE
    if errs:
        return EXIT_PRE
    if strict and any(r["status"] == "fail" for r in records):
        return EXIT_FAIL
    return EXIT_OK


def corpus_report(args) -> int:
    p = Path(args.dir)
    if not p.is_dir():
        print(f"error: {args.dir} is not a directory", file=sys.stderr)
        return EXIT_PRE
    files = _files(args.dir)
    records = [r for recs in _run_all(files, args.max_nodes, args.timing) for r in recs]
    write_report(records, args.report or "-")
    s = summarize(records)
    print(f"{s['pass']} pass, {s['fail']} fail, {s['error']} error", file=sys.stderr)
    if args.strict and (s["fail"] or s["error"]):
        return EXIT_FAIL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="moykv", description="Evaluate MOY and Kauffman-Vogel invariants and verify identities between them.")
    sub = ap.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate one invariant")
    ev.add_argument("invariant", choices=["moy", "kauffman", "kv", "rn", "rtilde"])
    ev.add_argument("--N", type=int, required=True, help="rank (for rtilde: 2N)")
    ev.add_argument("--json", action="store_true", help="print [coef, doubled exponent] pairs")
    ev.add_argument("--max-nodes", type=int, default=kauffman.DEFAULT_BUDGET)
    ev.add_argument("file")
    ev.set_defaults(func=run_eval)

    ve = sub.add_parser("verify", help="check an identity on diagrams")
    ve.add_argument("check", choices=["jaeger", "composition", "reverse", "component-reverse",
                                      "so6", "skein-consistency"])
    ve.add_argument("--N", type=_int_list, default=None, help="comma separated ranks")
    ve.add_argument("--M", type=int, default=None)
    ve.add_argument("--report", help="write JSON report here")
    ve.add_argument("--timing", action="store_true", help="include wall times in the report")
    ve.add_argument("--max-nodes", type=int, default=kauffman.DEFAULT_BUDGET)
    ve.add_argument("path")
    ve.set_defaults(func=run_verify)

    co = sub.add_parser("corpus", help="run every applicable check on a directory")
    co.add_argument("dir")
    co.add_argument("--strict", action="store_true", help="exit 4 if anything fails")
    co.add_argument("--report", help="output file (default stdout)")
    co.add_argument("--timing", action="store_true", help="include wall times")
    co.add_argument("--max-nodes", type=int, default=kauffman.DEFAULT_BUDGET)
    co.set_defaults(func=corpus_report)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
