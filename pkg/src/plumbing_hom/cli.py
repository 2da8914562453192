"""Command line front end: ``plumbing-hom <build|dims|basis|mul|pairing|verify>``.

Exit codes: 0 success, 1 a verify check failed, 2 bad configuration or
input, 3 a product of non-composable elements.
"""

import argparse
import csv
import io
import json
import os
import re
import sys
from dataclasses import dataclass, field

from .algebra import hom_basis, hom_dim, hom_dim_dense
from .cluster import (
    QuotientAlgebra,
    UnsupportedShape,
    gram_determinant,
    gram_matrix,
    named_element,
    pairing,
    quotient_algebra,
    quotient_dim,
    u_path_vanishes,
    uv_generator_check,
)
from .ginzburg import ginzburg_cohomology_dim
from .paths import NotComposable, PathError
from .presentations import NotTypeA, e6_ring_dims, type_a_hilbert
from .quiver import (
    QuiverError,
    build_omega,
    build_omega_bar,
    coxeter_data,
    inverse_ar_step,
    parse_quiver_name,
    quiver_from_config,
    quiver_to_config,
)

DEFAULT_MAX_WINDOW = 200


class ConfigError(Exception):
    pass


@dataclass
class HomDimTable:
    source: int
    target: int
    side: str
    window: tuple
    dims: dict = field(default_factory=dict)   # degree -> dim

    def to_json(self):
        return {
            "from": self.source,
            "to": self.target,
            "side": self.side,
            "window": list(self.window),
            "dims": {str(p): self.dims[p] for p in sorted(self.dims)},
        }

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["from"]), int(obj["to"]), obj["side"], tuple(obj["window"]),
                   {int(p): int(d) for p, d in obj["dims"].items()})


# --- config --------------------------------------------------------------

def load_quiver(spec):
    if spec is None:
        raise ConfigError("--quiver is required")
    if spec.endswith(".json") or os.path.sep in spec:
        try:
            with open(spec) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read quiver file {spec}: {exc}") from None
        return quiver_from_config(cfg)
    return parse_quiver_name(spec)


def max_window():
    raw = os.environ.get("PLUMBING_HOM_MAX_WINDOW")
    if raw is None:
        return DEFAULT_MAX_WINDOW
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"PLUMBING_HOM_MAX_WINDOW must be an integer, got {raw!r}") from None


def parse_window(text, q):
    if text is None:
        n = q.rank
        lo, hi = -(3 * n + 9), n + 11
    else:
        m = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text)
        if not m:
            raise ConfigError(f"window must look like a..b, got {text!r}")
        lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise ConfigError(f"empty window {lo}..{hi}")
    if hi - lo + 1 > max_window():
        raise ConfigError(f"window {lo}..{hi} exceeds the cap of {max_window()} degrees")
    return lo, hi


def vertex_list(value, q, flag):
    if value is None:
        return list(q.vertices)
    if value not in q.vertices:
        raise ConfigError(f"{flag} {value} is not a vertex of {q.name}")
    return [value]


def algebra_for(q, args) -> QuotientAlgebra:
    try:
        return quotient_algebra(q, experimental_de=args.experimental_de)
    except UnsupportedShape as exc:
        raise ConfigError(f"{exc} (pass --experimental-de)") from None


# --- element grammar -----------------------------------------------------

_TOKEN = re.compile(r"(v_inv|vinv|e|u|v|x|y|z|U|V)\(\s*(\d+)\s*(?:,\s*(\d+)\s*)?\)")


def parse_element(qa: QuotientAlgebra, text):
    """Parse a product written right to left, e.g. ``"v_inv(1) * v(1)"``."""
    pos, factors = 0, []
    text = text.strip()
    while pos < len(text):
        if text[pos].isspace() or text[pos] == "*":
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ConfigError(f"cannot parse element at {text[pos:]!r}")
        name, a, b = m.group(1), int(m.group(2)), m.group(3)
        args = (a,) if b is None else (a, int(b))
        factors.append(_factor(qa, name, args))
        pos = m.end()
    if not factors:
        raise ConfigError("empty element")
    result = factors[-1]
    for f in reversed(factors[:-1]):
        result = qa.multiply(result, f)
    return result


def _factor(qa, name, args):
    phi = qa.phi
    for a in args:
        if a not in qa.q.vertices:
            raise ConfigError(f"{a} is not a vertex of {qa.q.name}")
    if name in ("v", "v_inv", "vinv") and len(args) == 2:
        i, j = args
        if j != phi(i):
            raise ConfigError(f"{name}{args}: second index must be phi({i}) = {phi(i)}")
        args = (i,)
    if name == "vinv":
        name = "v_inv"
    arity = 2 if name in ("u", "U", "V") else 1
    if len(args) != arity:
        raise ConfigError(f"{name} takes {arity} index(es)")
    if name == "u":
        i, j = args
        if j not in qa.q.neighbours(i):
            raise ConfigError(f"u({i},{j}) is not an arrow of {qa.q.name}")
    try:
        return named_element(qa, name, args)
    except NotTypeA as exc:
        raise ConfigError(f"{name}: {exc}") from None


def element_to_json(qa, elem):
    return {
        "element": qa.display(elem),
        "from": elem.source,
        "to": elem.target,
        "degree": elem.degree,
        "terms": [[str(qa.path_of(m)), str(c)] for m, c in elem.terms],
    }


# --- output --------------------------------------------------------------

def _render_tables(tables, fmt):
    if fmt == "json":
        payload = [t.to_json() for t in tables]
        if len(payload) == 1:
            payload = payload[0]
        return json.dumps(payload, indent=2) + "\n"
    rows = [(t.source, t.target, t.side, p, t.dims[p]) for t in tables for p in sorted(t.dims)]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["from", "to", "side", "degree", "dim"])
        w.writerows(rows)
        return buf.getvalue()
    lines = ["| from | to | side | degree | dim |", "|---|---|---|---|---|"]
    lines += [f"| {a} | {b} | {s} | {p} | {d} |" for a, b, s, p, d in rows]
    return "\n".join(lines) + "\n"


# --- commands ------------------------------------------------------------

def cmd_build(q, args, out):
    omega = build_omega(q)
    bar = build_omega_bar(omega)
    data = {
        "quiver": quiver_to_config(q),
        "coxeter_number": q.coxeter_number,
        "phi": {str(i): omega.phi(i) for i in q.vertices},
        "shift_exponents": {str(i): omega.shifts[i] for i in q.vertices},
        "arrows": [{"name": a.name, "source": a.source, "target": a.target, "degree": a.degree}
                   for a in bar.quiver.arrows],
        "relations": [str(r) for r in bar.relations],
    }
    if args.format == "json":
        out.write(json.dumps(data, indent=2) + "\n")
        return 0
    rows = [(a["name"], a["source"], a["target"], a["degree"]) for a in data["arrows"]]
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["arrow", "source", "target", "degree"])
        w.writerows(rows)
        out.write(buf.getvalue())
        return 0
    out.write(f"# {q.name}, h = {q.coxeter_number}\n\n| arrow | source | target | degree |\n|---|---|---|---|\n")
    for r in rows:
        out.write("| {} | {} | {} | {} |\n".format(*r))
    out.write("\nRelations:\n\n")
    for r in data["relations"]:
        out.write(f"- {r}\n")
    return 0


def _sides(args):
    return [args.side] if args.side else ["wrapped", "quotient"]


def dims_tables(q, sources, targets, window, sides):
    omega = build_omega(q)
    lo, hi = window
    tables = []
    for side in sides:
        for i in sources:
            for j in targets:
                if side == "wrapped":
                    dims = {p: hom_dim(omega, i, j, p) for p in range(lo, hi + 1)}
                else:
                    dims = {p: quotient_dim(omega, i, j, p) for p in range(lo, hi + 1)}
                tables.append(HomDimTable(i, j, side, window, dims))
    return tables


def cmd_dims(q, args, out):
    window = parse_window(args.window, q)
    tables = dims_tables(q, vertex_list(args.source, q, "--from"),
                         vertex_list(args.target, q, "--to"), window, _sides(args))
    out.write(_render_tables(tables, args.format))
    return 0


def cmd_basis(q, args, out):
    window = parse_window(args.window, q)
    sources = vertex_list(args.source, q, "--from")
    targets = vertex_list(args.target, q, "--to")
    omega = build_omega(q)
    result = []
    for side in _sides(args):
        qa = algebra_for(q, args) if side == "quotient" else None
        for i in sources:
            for j in targets:
                for p in range(window[0], window[1] + 1):
                    if side == "wrapped":
                        elems = [str(next(iter(e.terms))) for e in hom_basis(omega, i, j, p)]
                    else:
                        elems = [qa.display(m) for m in qa.basis(i, j, p)]
                    if elems:
                        result.append({"from": i, "to": j, "side": side, "degree": p, "basis": elems})
    if args.format == "json":
        out.write(json.dumps(result, indent=2) + "\n")
    elif args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["from", "to", "side", "degree", "element"])
        for r in result:
            for e in r["basis"]:
                w.writerow([r["from"], r["to"], r["side"], r["degree"], e])
        out.write(buf.getvalue())
    else:
        out.write("| from | to | side | degree | basis |\n|---|---|---|---|---|\n")
        for r in result:
            out.write(f"| {r['from']} | {r['to']} | {r['side']} | {r['degree']} | {'; '.join(r['basis'])} |\n")
    return 0


def cmd_mul(q, args, out):
    qa = algebra_for(q, args)
    if not args.elements:
        raise ConfigError("mul needs at least one element")
    elem = parse_element(qa, " * ".join(f"{e}" for e in args.elements))
    if args.format == "json":
        out.write(json.dumps(element_to_json(qa, elem), indent=2) + "\n")
    else:
        out.write(qa.display(elem) + "\n")
        out.write(f"# from {elem.source} to {elem.target}, degree {elem.degree}\n")
    return 0


def cmd_pairing(q, args, out):
    if q.series != "A":
        raise ConfigError("the pairing is only defined for type A")
    qa = algebra_for(q, args)
    if args.elements:
        if len(args.elements) != 2:
            raise ConfigError("pairing takes two elements: a (j -> i) and b (i -> j)")
        a, b = (parse_element(qa, e) for e in args.elements)
        try:
            value = pairing(qa, a, b)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        out.write(json.dumps({"pairing": str(value)}) + "\n" if args.format == "json" else f"{value}\n")
        return 0
    if args.source is None or args.target is None or args.degree is None:
        raise ConfigError("pairing needs --from, --to and --degree (or two elements)")
    i, j, p = args.source, args.target, args.degree
    vertex_list(i, q, "--from")
    vertex_list(j, q, "--to")
    g = gram_matrix(qa, i, j, p)
    det = gram_determinant(qa, i, j, p)
    payload = {
        "from": i, "to": j, "degree": p,
        "left": [qa.display(m) for m in qa.basis(j, i, 2 - p)],
        "right": [qa.display(m) for m in qa.basis(i, j, p)],
        "gram": [[str(x) for x in row] for row in g],
        "determinant": str(det),
    }
    if args.format == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write(f"gram matrix ({len(g)}x{len(g[0]) if g else 0}), determinant {det}\n")
        for row in payload["gram"]:
            out.write(" ".join(row) + "\n")
    return 0


# --- verify --------------------------------------------------------------

def _check(name, failures):
    return {"check": name, "ok": not failures, "failures": failures[:10], "n_failures": len(failures)}


def suite_duality(q, window):
    omega = build_omega(q)
    lo, hi = window
    fails = []
    for p in range(lo, hi + 1):
        total = sum(quotient_dim(omega, i, j, p) for i in q.vertices for j in q.vertices)
        dual = sum(quotient_dim(omega, i, j, 2 - p) for i in q.vertices for j in q.vertices)
        if total != dual:
            fails.append(f"p={p}: {total} != {dual}")
    if q.series == "A":
        qa = quotient_algebra(q)
        for p in range(lo, hi + 1):
            for i in q.vertices:
                for j in q.vertices:
                    a, b = qa.dim(i, j, p), qa.dim(j, i, 2 - p)
                    if a != b:
                        fails.append(f"({i},{j},{p}): {a} != {b}")
    return _check("duality", fails)


def suite_gap(q, window):
    omega = build_omega(q)
    fails = [f"({i},{j})" for i in q.vertices for j in q.vertices if quotient_dim(omega, i, j, 1)]
    if q.series == "A":
        qa = quotient_algebra(q)
        fails += [f"model ({i},{j})" for i in q.vertices for j in q.vertices if qa.dim(i, j, 1)]
    return _check("degree-1 gap", fails)


def suite_ginzburg(q, window):
    omega = build_omega(q)
    lo = window[0]
    fails = []
    for p in range(lo, min(window[1], 0) + 1):
        for i in q.vertices:
            for j in q.vertices:
                a, b = ginzburg_cohomology_dim(q, i, j, p), hom_dim(omega, i, j, p)
                if a != b:
                    fails.append(f"({i},{j},{p}): H = {a}, hom = {b}")
    return _check("ginzburg", fails)


def suite_closed_form(q, window):
    if q.series != "A":
        return None
    omega = build_omega(q)
    qa = quotient_algebra(q)
    lo, hi = window
    fails = []
    for i in q.vertices:
        for j in q.vertices:
            for p in range(lo, hi + 1):
                if p <= 0 and hom_dim(omega, i, j, p) != type_a_hilbert(q, i, j, p):
                    fails.append(f"wrapped ({i},{j},{p})")
                if qa.dim(i, j, p) != type_a_hilbert(q, i, j, p, "quotient"):
                    fails.append(f"quotient ({i},{j},{p})")
            if i != j:
                rep = uv_generator_check(qa, i, j, (max(lo, -3 * q.rank - 9), 0))
                if not rep.ok:
                    fails.append(f"U/V ({i},{j}) case {rep.case}")
    return _check("closed forms", fails)


def suite_vanishing(q, window, max_len=8):
    if q.series != "A":
        return None
    from .algebra import quotient_engine
    from .paths import Path
    omega = build_omega(q)
    n = q.rank
    engine = quotient_engine(omega, -max_len)
    fails = []
    stack = [Path.idempotent(v) for v in q.vertices]
    while stack:
        p = stack.pop()
        zero = not engine.normal_form_path(p)
        if u_path_vanishes(p, n) != zero:
            fails.append(str(p))
        if len(p) < max_len:
            for nb in q.neighbours(p.target):
                a = omega.quiver[f"u({p.target},{nb})"]
                stack.append(Path(p.arrows + (a.name,), p.source, a.target, p.degree + a.degree))
    return _check("u-path vanishing", fails)


def suite_cy(q, window):
    cox = coxeter_data(q)
    fails = []
    for k, root in enumerate(cox.proj_roots):
        obj = (root, 0)
        for _ in range(q.coxeter_number):
            obj = inverse_ar_step(cox, obj)
        if obj != (root, 2):
            fails.append(f"vertex {k + 1}: {obj}")
    return _check("fractional CY", fails)


def suite_e6_rings(q, window):
    if (q.series, q.rank) != ("E", 6) or q.arrows != ((1, 3), (2, 4), (3, 4), (4, 5), (5, 6)):
        return None
    omega = build_omega(q)
    fails = []
    for v in q.vertices:
        for p in range(max(window[0], -21), min(window[1], 21) + 1):
            a, b = quotient_dim(omega, v, v, p), e6_ring_dims(v, p)
            if a != b:
                fails.append(f"vertex {v}, p={p}: computed {a}, listed ring {b}")
    return _check("E6 listed rings", fails)


def suite_oracles(q, window):
    """Recompute [derived] values by the slow independent routes on a small window."""
    omega = build_omega(q)
    fails = []
    lo = max(window[0], -4)
    for p in range(lo, 1):
        for i in q.vertices:
            for j in q.vertices:
                fast = hom_dim(omega, i, j, p)
                if hom_dim_dense(omega.quiver, omega.relations, i, j, p) != fast:
                    fails.append(f"dense ({i},{j},{p})")
                if p >= -3 and ginzburg_cohomology_dim(q, i, j, p, method="direct") != fast:
                    fails.append(f"direct ginzburg ({i},{j},{p})")
    return _check("oracle recomputation", fails)


SUITES = {
    "duality": suite_duality,
    "gap": suite_gap,
    "ginzburg": suite_ginzburg,
    "closed-form": suite_closed_form,
    "vanishing": suite_vanishing,
    "cy": suite_cy,
    "e6-rings": suite_e6_rings,
}


def cmd_verify(q, args, out):
    window = parse_window(args.window, q)
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if args.seed_check:
        names.append("oracles")
    results = []
    for name in names:
        fn = suite_oracles if name == "oracles" else SUITES[name]
        res = fn(q, window)
        if res is not None:
            results.append(res)
    ok = all(r["ok"] for r in results)
    if args.format == "json":
        out.write(json.dumps({"quiver": q.name, "window": list(window), "ok": ok, "checks": results},
                             indent=2) + "\n")
    else:
        for r in results:
            out.write(f"{'PASS' if r['ok'] else 'FAIL'} {r['check']}\n")
            for f in r["failures"]:
                out.write(f"    {f}\n")
        out.write(f"{'PASS' if ok else 'FAIL'} {q.name} window {window[0]}..{window[1]}\n")
    return 0 if ok else 1


COMMANDS = {
    "build": cmd_build,
    "dims": cmd_dims,
    "basis": cmd_basis,
    "mul": cmd_mul,
    "pairing": cmd_pairing,
    "verify": cmd_verify,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="plumbing-hom",
                                     description="Graded Hom tables for cocores of ADE plumbings.")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("elements", nargs="*", help="elements for mul/pairing, written right to left")
    parser.add_argument("--quiver", help="A5, D4, E6, ... or a JSON config file")
    parser.add_argument("--from", dest="source", type=int)
    parser.add_argument("--to", dest="target", type=int)
    parser.add_argument("--degree", type=int, help="degree for pairing")
    parser.add_argument("--window", help="degree window a..b")
    parser.add_argument("--side", choices=["wrapped", "quotient"])
    parser.add_argument("--format", choices=["json", "csv", "md"], default=None)
    parser.add_argument("--suite", choices=["all", *SUITES], default="all")
    parser.add_argument("--experimental-de", action="store_true",
                        help="allow quotient-side products for D and E quivers")
    parser.add_argument("--seed-check", action="store_true",
                        help="also recompute derived values by the slow independent routes")
    return parser


def _join_window(argv):
    # "--window -16..4" would otherwise be read as an unknown option
    out, it = [], iter(argv)
    for a in it:
        if a == "--window":
            nxt = next(it, None)
            out.append(a if nxt is None else f"--window={nxt}")
        else:
            out.append(a)
    return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def main(argv=None, out=None):
    out = out or sys.stdout
    argv = _join_window(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    parser.__class__ = _Parser
    try:
        args = parser.parse_intermixed_args(argv)
        if args.format is None:
            args.format = "md" if args.command in ("mul", "pairing", "verify") else "json"
        q = load_quiver(args.quiver)
        return COMMANDS[args.command](q, args, out)
    except NotComposable as exc:
        print(json.dumps({"error": "NotComposable", "message": str(exc)}), file=sys.stderr)
        return 3
    except (ConfigError, QuiverError, PathError, NotTypeA, UnsupportedShape) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
