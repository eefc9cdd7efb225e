"""Command-line front end.  Every command writes one JSON report (or CSV for
tables) to stdout.

Exit codes: 0 success, 1 usage error, 2 a check failed, 3 the form is singular,
4 the --max-degree safety cap was exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from pathlib import Path

from . import coupling, hodge
from .errors import HypothesisWarning, JacRingError, LimitExceeded, NotSmooth
from .forms import parse_form
from .linalg import FieldMode
from .ring import (
    JacobianRing,
    dim_R,
    hilbert_series,
    koszul_cohomology_dims,
    macaulay_pairing_rank,
    make_fermat,
    make_random_smooth,
    make_ring,
    root_extension,
)

EXIT_OK, EXIT_USAGE, EXIT_CHECK, EXIT_SINGULAR, EXIT_LIMIT = 0, 1, 2, 3, 4
SUITES = ("macaulay", "hilbert", "koszul", "prop64", "lemma18", "tower", "theorem65")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# argument grammar
# ---------------------------------------------------------------------------

def _common() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    p.add_argument("--field", default="rational", help="rational | prime | prime:<p>")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", action="store_true", help="CSV output (table commands only)")
    p.add_argument("--max-degree", type=int, default=40,
                   help="refuse rings whose socle degree exceeds this")
    return p


def _selector(p: argparse.ArgumentParser, required: bool = True) -> None:
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--fermat", action="store_true")
    g.add_argument("--random", action="store_true")
    g.add_argument("--form")
    g.add_argument("--form-file")
    p.add_argument("--d", type=int)
    p.add_argument("--vars", type=int)


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    top = _Parser(prog="jacring", description=__doc__.splitlines()[0])
    groups = top.add_subparsers(dest="group", required=True, parser_class=_Parser)

    ring = groups.add_parser("ring").add_subparsers(dest="action", required=True, parser_class=_Parser)
    _selector(ring.add_parser("info", parents=[common]))

    hg = groups.add_parser("hodge").add_subparsers(dest="action", required=True, parser_class=_Parser)
    _selector(hg.add_parser("diamond", parents=[common]))
    _selector(hg.add_parser("primitive", parents=[common]))
    eig = hg.add_parser("eigen", parents=[common])
    eig.add_argument("--d", type=int, required=True)
    eig.add_argument("--base-vars", type=int, required=True)
    eig.add_argument("--random", action="store_true", help="seeded random base instead of Fermat")
    which = eig.add_mutually_exclusive_group()
    which.add_argument("--i", type=int)
    which.add_argument("--all", action="store_true")

    yg = groups.add_parser("yukawa").add_subparsers(dest="action", required=True, parser_class=_Parser)
    length = yg.add_parser("length", parents=[common])
    length.add_argument("--tower", action="store_true")
    g = length.add_mutually_exclusive_group()
    g.add_argument("--fermat", action="store_true")
    g.add_argument("--random", action="store_true")
    g.add_argument("--form")
    g.add_argument("--form-file")
    length.add_argument("--d", type=int)
    length.add_argument("--vars", type=int)
    length.add_argument("--n", type=int)
    length.add_argument("--levels", type=int)
    length.add_argument("--mu", type=int)
    _selector(yg.add_parser("profile", parents=[common]))
    table = yg.add_parser("table", parents=[common])
    table.add_argument("--d", type=int, required=True)
    table.add_argument("--n", type=int, required=True)
    table.add_argument("--random", action="store_true", help="seeded random bases")

    vg = groups.add_parser("verify")
    vs = vg.add_subparsers(dest="action", required=True, parser_class=_Parser)
    for name in SUITES:
        sp = vs.add_parser(name, parents=[common])
        if name in ("prop64", "theorem65"):
            sp.add_argument("--d", type=int, required=True)
            sp.add_argument("--n", type=int, required=True)
            if name == "theorem65":
                sp.add_argument("--random", action="store_true")
        else:
            _selector(sp)
            if name == "koszul":
                sp.add_argument("--mu", type=int, action="append",
                                help="degree to sample (repeatable; default three degrees)")
    return top


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _field(args) -> FieldMode:
    return FieldMode.parse(args.field)


def _ring(args) -> JacobianRing:
    field = _field(args)
    if args.form is not None or args.form_file is not None:
        text = args.form if args.form is not None else Path(args.form_file).read_text(encoding="utf-8")
        ring = make_ring(parse_form(text, field))
    else:
        if args.d is None or args.vars is None:
            raise UsageError("--fermat/--random need --d and --vars")
        if args.random:
            ring = make_random_smooth(args.d, args.vars, field, seed=args.seed)
        else:
            ring = make_fermat(args.d, args.vars, field)
    _cap(args, ring.socle)
    return ring


def _cap(args, sigma: int) -> None:
    if sigma > args.max_degree:
        raise LimitExceeded(f"socle degree {sigma} exceeds --max-degree {args.max_degree}")


def _params(args) -> dict:
    skip = {"group", "action", "csv"}
    return {k: v for k, v in vars(args).items() if k not in skip and v not in (None, False)}


def _check(name: str, expected, actual) -> dict:
    return {"name": name, "expected": expected, "actual": actual, "pass": expected == actual}


def _report(args, results, checks=None, probabilistic=False) -> dict:
    return {
        "command": f"{args.group} {args.action}",
        "params": _params(args),
        "field_mode": _field(args).describe(),
        "results": results,
        "checks": checks or [],
        "probabilistic": bool(probabilistic),
    }


def _probabilistic(args, *rings: JacobianRing) -> bool:
    return _field(args).is_prime and any(not r.is_capped for r in rings)


def _ring_desc(ring: JacobianRing) -> dict:
    return {"form": str(ring.form), "d": ring.d, "nvars": ring.nvars, "n": ring.n,
            "socle": ring.socle, "monomial_ideal": ring.is_capped}


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_ring_info(args):
    ring = _ring(args)
    smooth = ring.certify()
    res = _ring_desc(ring)
    res["smooth"] = smooth
    if smooth:
        res["dims"] = [dim_R(ring, mu) for mu in range(ring.socle + 1)]
    else:
        res["dims_to_socle_plus_1"] = [dim_R(ring, mu) for mu in range(ring.socle + 2)]
    return _report(args, res, probabilistic=_probabilistic(args, ring)), (None if smooth else EXIT_SINGULAR)


def cmd_hodge_primitive(args):
    ring = _ring(args)
    v = hodge.primitive_hodge(ring)
    return _report(args, {"m": v.m, "h": list(v.h)}, probabilistic=_probabilistic(args, ring)), None


def cmd_hodge_diamond(args):
    ring = _ring(args)
    dia = hodge.hodge_diamond(ring)
    res = {"dim": dia.dim, "middle": list(dia.middle.h),
           "matrix": [list(r) for r in dia.matrix]}
    return _report(args, res, probabilistic=_probabilistic(args, ring)), None


def _eigen_base(args) -> JacobianRing:
    field = _field(args)
    if args.random:
        base = make_random_smooth(args.d, args.base_vars, field, seed=args.seed)
    else:
        base = make_fermat(args.d, args.base_vars, field)
    _cap(args, base.socle)
    return base


def cmd_hodge_eigen(args):
    base = _eigen_base(args)
    if args.i is not None:
        res = list(hodge.eigen_hodge(base, args.i).h)
        table = [[args.i] + res]
    else:
        tab = hodge.eigen_hodge_table(base)
        res = {str(i): list(v.h) for i, v in tab.items()}
        table = [[i] + list(v.h) for i, v in tab.items()]
    header = ["i"] + [f"p{p}" for p in range(base.n + 1)]
    return _report(args, res, probabilistic=_probabilistic(args, base)), None, (header, table)


def cmd_yukawa_length(args):
    field = _field(args)
    if args.tower:
        if None in (args.d, args.n, args.levels):
            raise UsageError("--tower needs --d, --n and --levels")
        kind = "random" if args.random else "fermat"
        spec = coupling.TowerSpec(args.d, args.n - args.levels + 1, args.levels, kind, args.seed)
        if spec.base_nvars < 2:
            raise UsageError("levels must be at most n-1")
        _cap(args, (args.n + 1) * (args.d - 2))
        top, V = coupling.build_tower(spec, field)
        mu = args.d - top.n - 1 if args.mu is None else args.mu
    else:
        if args.form is None and args.form_file is None and not (args.fermat or args.random):
            raise UsageError("give --tower or a ring selector")
        top = _ring(args)
        top.require_smooth()
        V = coupling.tangent_subspace_full(top)
        mu = top.d - top.n - 1 if args.mu is None else args.mu
    length = coupling.coupling_length(top, V, mu)
    res = {"length": length, "mu": mu, "dim_V": V.dim, "top_nvars": top.nvars, "socle": top.socle}
    return _report(args, res, probabilistic=_probabilistic(args, top)), None


def cmd_yukawa_profile(args):
    ring = _ring(args)
    ring.require_smooth()
    prof = coupling.coupling_profile(ring)
    res = {str(mu): v for mu, v in prof.lengths.items()}
    table = [[mu, v] for mu, v in prof.lengths.items()]
    return _report(args, res, probabilistic=_probabilistic(args, ring)), None, (["mu", "length"], table)


def cmd_yukawa_table(args):
    _cap(args, (args.n + 1) * (args.d - 2))
    kind = "random" if args.random else "fermat"
    tab = coupling.tower_length_table(args.d, args.n, kind, args.seed, _field(args))
    res = {str(r.level): r.computed for r in tab.rows}
    checks = [_check(f"level={r.level} (base nvars {r.base_nvars}, {r.base})", r.closed_form, r.computed)
              for r in tab.rows]
    table = [[r.level, r.base_nvars, r.computed, r.closed_form, r.match] for r in tab.rows]
    prob = _field(args).is_prime and kind != "fermat"
    return (_report(args, res, checks, prob), None,
            (["level", "base_nvars", "computed", "closed_form", "match"], table))


# -- verification suites ------------------------------------------------------

def _suite_macaulay(args):
    ring = _ring(args)
    ring.require_smooth()
    sigma = ring.socle
    checks = [_check("dim R_sigma", 1, dim_R(ring, sigma))]
    for mu in range(sigma + 1):
        checks.append(_check(f"pairing rank mu={mu}", dim_R(ring, mu), macaulay_pairing_rank(ring, mu)))
    return {"socle": sigma, "dims": [dim_R(ring, mu) for mu in range(sigma + 1)]}, checks, ring


def _suite_hilbert(args):
    ring = _ring(args)
    ring.require_smooth()
    sigma = ring.socle
    series = hilbert_series(ring.d, ring.nvars)
    dims = [dim_R(ring, mu) for mu in range(sigma + 2)]
    checks = [_check(f"dim R_{mu} = series coefficient", series[mu] if mu < len(series) else 0, dims[mu])
              for mu in range(sigma + 2)]
    for mu in range(sigma + 1):
        checks.append(_check(f"symmetry mu={mu}", dims[sigma - mu], dims[mu]))
    return {"dims": dims[:-1], "series": list(series)}, checks, ring


def _koszul_degrees(ring: JacobianRing) -> list[int]:
    return sorted({ring.d - 1, ring.socle // 2, ring.socle, ring.socle + 1})


def _suite_koszul(args):
    ring = _ring(args)
    ring.require_smooth()
    degrees = args.mu or _koszul_degrees(ring)
    p = ring.nvars
    checks, res = [], {}
    for mu in degrees:
        kc = koszul_cohomology_dims(ring, mu, p)
        res[str(mu)] = list(kc.dims)
        for r in range(p, 0, -1):
            checks.append(_check(f"mu={mu} H at r={r}", 0, kc.at(r)))
        checks.append(_check(f"mu={mu} H at r=0 = dim R_mu", dim_R(ring, mu), kc.at(0)))
    return res, checks, ring


def _suite_boundary(args):
    ring = _ring(args)
    ring.require_smooth()
    d, n, sigma = ring.d, ring.n, ring.socle
    if d < n + 1:
        warnings.warn(f"d={d} < n+1; the boundary law needs d >= n+1", HypothesisWarning)
    V = coupling.tangent_subspace_full(ring)
    prof = coupling.coupling_profile(ring, V)
    checks = []
    for mu in range(sigma + 1):
        nonzero = prof[mu] >= n - 1
        checks.append(_check(f"(a) S^(n-1) map nonzero at mu={mu}", 0 <= mu <= 2 * d - 2 * (n + 1), nonzero))
    all_zero = all(prof[mu] < n for mu in range(sigma + 1))
    checks.append(_check("(b) S^n map zero for all mu", d < 2 * (n + 1), all_zero))
    for mu in range(sigma):
        checks.append(_check(f"monotone mu={mu}", True, prof[mu] >= prof[mu + 1]))
    for mu in range(sigma + 1 - d):
        checks.append(_check(f"step bound mu={mu}", True, prof[mu] - 1 <= prof[mu + d]))
    checks.append(_check("length at sigma", 0, prof[sigma]))
    return {str(mu): v for mu, v in prof.lengths.items()}, checks, ring


def _suite_tower(args):
    base = _ring(args)
    base.require_smooth()
    cover = root_extension(base)
    _cap(args, cover.socle)
    d = base.d
    checks = []
    for mu in range(cover.socle + 1):
        expect = sum(dim_R(base, mu - e) for e in range(d - 1))
        checks.append(_check(f"tower dim mu={mu}", expect, dim_R(cover, mu)))
    checks.append(_check("eigen_sum_check", True, hodge.eigen_sum_check(base)))
    V = coupling.include_subspace(base, cover, d)
    Vb = coupling.tangent_subspace_full(base)
    for mu in range(cover.socle + 1):
        expect = max((coupling.coupling_length(base, Vb, mu - e) for e in range(d - 1)
                      if 0 <= mu - e <= base.socle), default=0)
        checks.append(_check(f"y-grading mu={mu}", expect,
                             coupling.coupling_length(cover, V, mu, method="generic")))
    res = {"cover_dims": [dim_R(cover, mu) for mu in range(cover.socle + 1)]}
    return res, checks, base


def _suite_decomposition(args):
    r = hodge.cover_decomposition_check(args.d, args.n)
    checks = [_check("off-center equality", True, r.off_center_equal),
              _check("residual_W >= 0", True, r.residual_W >= 0),
              _check("residual_Wprime >= 0", True, r.residual_Wprime >= 0)]
    if args.n % 2 == 0:
        checks.append(_check("residuals vanish for even n", [0, 0], [r.residual_W, r.residual_Wprime]))
    res = {"lhs": list(r.lhs), "rhs": list(r.rhs), "residual_W": r.residual_W,
           "residual_Wprime": r.residual_Wprime}
    return res, checks, None


def _suite_tower_table(args):
    _cap(args, (args.n + 1) * (args.d - 2))
    kind = "random" if args.random else "fermat"
    tab = coupling.tower_length_table(args.d, args.n, kind, args.seed, _field(args))
    checks = [_check(f"level={r.level}", r.closed_form, r.computed) for r in tab.rows]
    return {str(r.level): r.computed for r in tab.rows}, checks, None


_SUITES = {"macaulay": _suite_macaulay, "hilbert": _suite_hilbert, "koszul": _suite_koszul,
           "lemma18": _suite_boundary, "tower": _suite_tower, "prop64": _suite_decomposition,
           "theorem65": _suite_tower_table}


def cmd_verify(args):
    res, checks, ring = _SUITES[args.action](args)
    prob = ring is not None and _probabilistic(args, ring)
    if args.action == "theorem65":
        prob = _field(args).is_prime and args.random
    return _report(args, res, checks, prob), None


COMMANDS = {
    ("ring", "info"): cmd_ring_info,
    ("hodge", "primitive"): cmd_hodge_primitive,
    ("hodge", "diamond"): cmd_hodge_diamond,
    ("hodge", "eigen"): cmd_hodge_eigen,
    ("yukawa", "length"): cmd_yukawa_length,
    ("yukawa", "profile"): cmd_yukawa_profile,
    ("yukawa", "table"): cmd_yukawa_table,
}


def _to_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def run(argv, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    try:
        args = build_parser().parse_args(list(argv))
        _field(args)
        handler = cmd_verify if args.group == "verify" else COMMANDS[(args.group, args.action)]
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", HypothesisWarning)
            out = handler(args)
        for w in caught:
            print(f"warning: {w.message}", file=stderr)
        report, code = out[0], out[1]
        table = out[2] if len(out) > 2 else None
        if args.csv and table is None:
            raise UsageError("--csv is only available for table-shaped commands")
    except UsageError as e:
        print(str(e), file=stderr)
        return EXIT_USAGE
    except NotSmooth as e:
        print(f"error: {e}", file=stderr)
        return EXIT_SINGULAR
    except LimitExceeded as e:
        print(f"error: {e}", file=stderr)
        return EXIT_LIMIT
    except (JacRingError, OSError) as e:
        print(f"error: {e}", file=stderr)
        return EXIT_USAGE

    if args.csv:
        stdout.write(_to_csv(*table))
    else:
        stdout.write(json.dumps(report, indent=2) + "\n")
    if code is not None:
        return code
    if any(not c["pass"] for c in report["checks"]):
        return EXIT_CHECK
    return EXIT_OK


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
