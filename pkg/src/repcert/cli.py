"""Command-line front end.  Every command prints one JSON report.

Exit codes: 0 success or positive verdict, 1 negative verdict, 2 usage error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
from pathlib import Path

from . import __version__
from .exactfield import QQ, GF, FieldError
from .grouppres import Presentation, PresentationError, cyclic_obstruction

COMMANDS = ("raag-bounds", "build-rep", "verify", "fbc-classify", "gersten-cert",
            "gersten-roots", "burau", "cyclic-obstruction")


class UsageError(Exception):
    pass


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}")


def _digest(args, files):
    data = {k: v for k, v in sorted(vars(args).items())
            if k not in ("pretty", "timing", "jobs", "func", "out")}
    data["files"] = {p: hashlib.sha256(_read(p).encode()).hexdigest() for p in sorted(files)}
    return hashlib.sha256(json.dumps(data, sort_keys=True, default=str).encode()).hexdigest()


def _field(char):
    return QQ if not char else GF(char)


# --- commands: each returns (results, ok, files) ---------------------------

def cmd_raag_bounds(a):
    from .raagbounds import Graph, bounds
    files = []
    if a.graph:
        g = Graph.parse(_read(a.graph))
        files.append(a.graph)
    elif a.edges is not None:
        g = Graph.parse(a.edges if a.n is None else f"n={a.n}\n{a.edges}")
    else:
        raise UsageError("give --graph FILE or --edges TEXT")
    return {"graph": g.to_json(), "bounds": bounds(g).to_json()}, True, files


def _build(a):
    from . import repbuild as rb
    kind = a.kind
    if kind == "p4-concrete":
        return rb.p4_concrete(conjugate_back=not a.theorem_form)
    if kind == "p4":
        return rb.p4_generic(_field(a.char), conjugate_back=not a.theorem_form)
    if kind == "free2dim":
        return rb.free2dim(_field(a.char))
    if kind == "zn":
        return rb.rep_zn(a.n or 2, _field(a.char))
    if kind == "z2-free-product":
        f = _field(a.char)
        r1 = rb.corner_extend(rb.rep_zn(2, f, gens=["a1", "a2"], symbols=["x1", "x2"]))
        r2 = rb.corner_extend(rb.rep_zn(2, f, gens=["b1", "b2"], symbols=["x1", "x2"]))
        return rb.free_product(r1, r2)
    if kind == "parabolic":
        return rb.parabolic_induced(rb.p4_generic(_field(a.char)))
    if kind == "b3":
        from .burau import b3_two_dim
        return b3_two_dim(_field(a.char))
    if kind == "burau":
        from .burau import burau_reduced
        return burau_reduced(a.n or 4, a.char)
    raise UsageError(f"unknown representation kind {kind}")


def cmd_build_rep(a):
    rep = _build(a)
    d = rep.to_json()
    if a.out:
        Path(a.out).write_text(json.dumps(d, indent=1, sort_keys=True) + "\n")
    return {"representation": d}, True, []


def cmd_verify(a):
    from .repbuild import Representation
    from .verify import hom_check, ball_kernel
    try:
        rep = Representation.from_json(json.loads(_read(a.rep)))
    except (KeyError, ValueError) as e:
        raise UsageError(f"bad representation file: {e}")
    certs = [hom_check(rep)]
    if a.ball is not None and certs[0].verdict:
        certs.append(ball_kernel(rep, a.ball, jobs=a.jobs))
    ok = all(c.verdict for c in certs)
    return {"certificates": [c.to_json(timing=a.timing) for c in certs]}, ok, [a.rep]


def _parse_matrix(text):
    vals = text.replace(",", " ").replace("(", " ").replace(")", " ").split()
    if len(vals) != 4:
        raise UsageError("matrix needs four integers a b c d (rows)")
    a, b, c, d = (int(v) for v in vals)
    return ((a, b), (c, d))


def cmd_fbc_classify(a):
    from .fbc import classify, fbc_bounds, trace_triple_solve, UnsupportedClass
    M = _parse_matrix(a.matrix)
    cls = classify(M)
    out = {"matrix": [list(r) for r in M], "class": cls.to_json(),
           "bounds": fbc_bounds(cls).to_json()}
    if a.solve:
        try:
            out["trace_triple"] = trace_triple_solve(cls).to_json()
        except UnsupportedClass as e:
            out["trace_triple"] = {"unsupported": str(e)}
    return out, True, []


def cmd_gersten_cert(a):
    from .gersten import PermSystem, certify_orbit_constancy, parse_perm
    if a.random:
        rng = random.Random(a.seed)
        certs = []
        for _ in range(a.random):
            d = rng.randint(1, a.d or 8)
            ps = PermSystem.random(d, rng)
            c = certify_orbit_constancy(ps)
            certs.append(c.verdict)
        passed = sum(certs)
        return {"instances": a.random, "passed": passed}, passed == a.random, []
    if not (a.d and a.pi is not None and a.sigma is not None):
        raise UsageError("give --d with --pi and --sigma, or --random N")
    ps = PermSystem(a.d, parse_perm(a.pi, a.d), parse_perm(a.sigma, a.d))
    c = certify_orbit_constancy(ps)
    return {"pi": [i + 1 for i in ps.pi], "sigma": [i + 1 for i in ps.sigma],
            "certificate": c.to_json()}, c.verdict, []


def _read_symbols(path):
    from .gersten import EigenSymbol
    return [EigenSymbol.parse(line) for line in _read(path).splitlines()
            if line.strip() and not line.lstrip().startswith("#")]


def cmd_gersten_roots(a):
    from .gersten import roots_of_unity_exponent, NotConjugate
    T, A = _read_symbols(a.t_diag), _read_symbols(a.a_diag)
    try:
        r = roots_of_unity_exponent(T, A, all_matchings=a.all_matchings)
    except NotConjugate as e:
        return {"verdict": "refuted", "reason": str(e), "witness": e.witness}, False, \
            [a.t_diag, a.a_diag]
    return {"verdict": "roots_of_unity", **r.to_json()}, True, [a.t_diag, a.a_diag]


def cmd_burau(a):
    from .burau import burau_reduced, center_image
    from .linalg import char_poly
    from .verify import hom_check
    rep = burau_reduced(a.n, a.char)
    out = {"n": a.n, "characteristic": a.char,
           "generators": {n: m.to_json() for n, m in zip(rep.presentation.names, rep.matrices)},
           "char_polys": [str(char_poly(m)) for m in rep.matrices]}
    ok = True
    if a.check_relators:
        c = hom_check(rep)
        out["relators"] = c.to_json(timing=a.timing)
        ok = c.verdict
    if a.center:
        z, sign = center_image(a.n, a.char)
        out["center"] = {"scalar": str(z.rows[0][0]), "sign": sign}
    return out, ok, []


def cmd_cyclic_obstruction(a):
    p = Presentation.free(2)
    w = p.parse_word(a.relator)
    v = cyclic_obstruction(w)
    return {"relator": p.word_text(w), "condition_holds": v}, True, []


# --- parser -----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="indent the JSON report")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--timing", action="store_true", help="include wall times")
    p = _Parser(prog="repcert", description="Exact representation certificates.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("raag-bounds", parents=[common])
    s.add_argument("--graph")
    s.add_argument("--edges")
    s.add_argument("--n", type=int)
    s.set_defaults(func=cmd_raag_bounds)

    s = sub.add_parser("build-rep", parents=[common])
    s.add_argument("--kind", required=True,
                   choices=["p4-concrete", "p4", "free2dim", "zn", "z2-free-product",
                            "parabolic", "b3", "burau"])
    s.add_argument("--char", type=int, default=0)
    s.add_argument("--n", type=int)
    s.add_argument("--theorem-form", action="store_true",
                   help="path RAAG: G = F0 G0 F0^-1 etc. instead of the conjugated-back form")
    s.add_argument("--out")
    s.set_defaults(func=cmd_build_rep)

    s = sub.add_parser("verify", parents=[common])
    s.add_argument("--rep", required=True)
    s.add_argument("--ball", type=int)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("fbc-classify", parents=[common])
    s.add_argument("--matrix", required=True, help='"a b c d", columns are images of x, y')
    s.add_argument("--solve", action="store_true")
    s.set_defaults(func=cmd_fbc_classify)

    s = sub.add_parser("gersten-cert", parents=[common])
    s.add_argument("--d", type=int)
    s.add_argument("--pi")
    s.add_argument("--sigma")
    s.add_argument("--random", type=int)
    s.set_defaults(func=cmd_gersten_cert)

    s = sub.add_parser("gersten-roots", parents=[common])
    s.add_argument("--t-diag", required=True)
    s.add_argument("--a-diag", required=True)
    s.add_argument("--all-matchings", action="store_true")
    s.set_defaults(func=cmd_gersten_roots)

    s = sub.add_parser("burau", parents=[common])
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--char", type=int, default=0)
    s.add_argument("--check-relators", action="store_true")
    s.add_argument("--center", action="store_true")
    s.set_defaults(func=cmd_burau)

    s = sub.add_parser("cyclic-obstruction", parents=[common])
    s.add_argument("--relator", required=True)
    s.set_defaults(func=cmd_cyclic_obstruction)
    return p


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("missing command; one of " + ", ".join(COMMANDS))
        results, ok, files = args.func(args)
        digest = _digest(args, files)
    except UsageError as e:
        print(f"error: {e}", file=stderr)
        return 2
    except (FieldError, PresentationError, ValueError) as e:
        print(f"error: {e}", file=stderr)
        return 2
    report = {"command": args.command, "inputs_digest": digest, "results": results,
              "version": __version__, "seed": args.seed}
    indent = 2 if args.pretty else None
    print(json.dumps(report, indent=indent, sort_keys=True), file=stdout)
    return 0 if ok else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
