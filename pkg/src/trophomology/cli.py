"""Command-line front end: generators, hypersurfaces, homology reports, checks.

Exit codes: 0 success, 1 a requested check failed, 2 parse/IO error.
Every run is determined by its arguments; all randomness flows through --seed.
"""

from __future__ import annotations

import argparse
import json
import sys

from .homology import (
    chain_complex,
    euler_check,
    hodge_table,
    hodge_text_table,
    homology_report,
)
from .hypersurface import (
    HeightError,
    HeightFunction,
    NonTransversalError,
    build_hypersurface,
    degree,
    is_smooth,
    smooth_heights,
)
from .matroid import Matroid, MatroidError, bergman_complex, load_matroid
from .tropgeo import (
    GeometryError,
    TropicalComplex,
    canonical_json,
    fan_linear_space,
    is_balanced,
    is_smooth_at,
)


class CheckFailure(Exception):
    pass


def _load_complex(path: str) -> TropicalComplex:
    return TropicalComplex.load(path)


def _load_heights(path: str) -> HeightFunction:
    return HeightFunction.load(path)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_gen(args) -> int:
    kind = args.kind
    if kind in ("line", "plane", "linear") and not 1 <= args.N <= 4:
        raise GeometryError("linear-space generators support 1 <= N <= 4")
    if kind == "line":
        obj = fan_linear_space([0] * args.N, 1, args.N)
        payload = canonical_json(obj.to_json())
    elif kind == "plane":
        if args.N < 3:
            raise GeometryError("a plane needs N >= 3")
        obj = fan_linear_space([0] * args.N, 2, args.N)
        payload = canonical_json(obj.to_json())
    elif kind == "linear":
        obj = fan_linear_space([0] * args.N, args.k, args.N)
        payload = canonical_json(obj.to_json())
    elif kind == "curve":
        if not 1 <= args.d <= 6:
            raise HeightError("curve generator supports 1 <= d <= 6")
        hf = smooth_heights(2, args.d)
        payload = canonical_json(hf.to_json())
    elif kind == "surface":
        if not 1 <= args.d <= 4:
            raise HeightError("surface generator supports 1 <= d <= 4")
        hf = smooth_heights(3, args.d)
        payload = canonical_json(hf.to_json())
    elif kind == "bergman":
        if not args.matroid:
            raise HeightError("gen bergman needs --matroid")
        m = load_matroid(args.matroid)
        obj = bergman_complex(m)
        payload = canonical_json(obj.to_json())
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(kind)
    _emit(payload, args.out)
    if args.out:
        print(f"wrote {kind} to {args.out}")
    return 0


def cmd_hypersurface(args) -> int:
    hf = _load_heights(args.heights)
    x = build_hypersurface(hf)
    _emit(canonical_json(x.to_json()), args.out)
    counts = {}
    for i in range(len(x.faces)):
        counts[x.face_dim(i)] = counts.get(x.face_dim(i), 0) + 1
    census = ", ".join(f"{counts[q]} of dim {q}" for q in sorted(counts))
    print(f"degree {hf.d} hypersurface in TP^{hf.N}: {census}")
    return 0


def cmd_homology(args) -> int:
    x = _load_complex(args.complex)
    if args.p is not None:
        from .homology import homology_dims

        dims = homology_dims(x, args.p)
        report = {"n": x.dim(), "p": args.p, "h": dims,
                  "chi_p": sum((-1) ** q * d for q, d in enumerate(dims))}
        if args.format == "json":
            _emit(canonical_json(report), args.out)
        else:
            _emit(f"h[{args.p}][q] = {dims}, chi_{args.p} = {report['chi_p']}\n", args.out)
        return 0
    report = homology_report(x)
    if args.format == "json":
        _emit(canonical_json(report), args.out)
    else:
        table = hodge_table(x)
        text = hodge_text_table(table)
        text += f"\nchi: {report['chi']}\nchi_y: {report['chi_y']}\nE: {report['E']}\n"
        _emit(text, args.out)
    return 0


def cmd_chi(args) -> int:
    x = _load_complex(args.complex)
    report = homology_report(x)
    if args.format == "json":
        _emit(canonical_json({"chi": report["chi"], "chi_y": report["chi_y"]}), args.out)
    else:
        _emit(f"chi: {report['chi']}\nchi_y: {report['chi_y']}\n", args.out)
    return 0


def cmd_epoly(args) -> int:
    x = _load_complex(args.complex)
    report = homology_report(x)
    if args.format == "json":
        _emit(canonical_json({"E": report["E"], "chi": report["chi"]}), args.out)
    else:
        _emit(f"E = {report['E']}\n", args.out)
    return 0


def cmd_check(args) -> int:
    results: list[tuple[str, bool, str]] = []
    explicit = args.balanced or args.smooth or args.unimodular
    if args.heights:
        hf = _load_heights(args.heights)
        if args.smooth or args.unimodular or not explicit:
            ok = is_smooth(hf)
            results.append(("unimodular dual subdivision", ok, ""))
        if args.balanced or not explicit:
            x = build_hypersurface(hf)
            ok, bad = is_balanced(x)
            results.append(("balanced", ok, f"face {bad[0]}" if bad else ""))
    elif args.complex:
        x = _load_complex(args.complex)
        if args.balanced or not explicit:
            ok, bad = is_balanced(x)
            results.append(("balanced", ok, f"face {bad[0]}" if bad else ""))
            for p in range(x.dim() + 1):
                okd = chain_complex(x, p).verify_dd_zero()
                results.append((f"boundary squares to zero (p={p})", okd, ""))
            results.append(("euler characteristic consistency", euler_check(x), ""))
        if args.smooth:
            n = x.dim()
            cert = Matroid.uniform(n + 1, x.N + 1)
            bad_v = None
            for fid in range(len(x.faces)):
                if x.face_dim(fid) == 0 and not x.faces[fid].sed:
                    if not is_smooth_at(x, fid, cert):
                        bad_v = fid
                        break
            results.append(("smooth at mobile vertices (uniform certificate)",
                            bad_v is None, f"face {bad_v}" if bad_v is not None else ""))
    else:
        raise HeightError("check needs --complex or --heights")
    failed = False
    for name, ok, detail in results:
        status = "PASS" if ok else "FAIL"
        suffix = f" ({detail})" if detail and not ok else ""
        print(f"{name}: {status}{suffix}")
        failed = failed or not ok
    return 1 if failed else 0


def cmd_bergman(args) -> int:
    m = load_matroid(args.matroid)
    x = bergman_complex(m)
    _emit(canonical_json(x.to_json()), args.out)
    if args.out:
        print(f"wrote Bergman closure to {args.out}")
    return 0


def cmd_degree(args) -> int:
    x = _load_complex(args.complex)
    d = degree(x, seed=args.seed)
    if args.format == "json":
        _emit(canonical_json({"degree": d, "seed": args.seed}), args.out)
    else:
        _emit(f"degree: {d}\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="trophomology",
        description="Exact tropical (p,q)-homology of projective tropical varieties.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, complex_=False, heights=False, matroid=False):
        if complex_:
            p.add_argument("--complex", help="complex JSON file")
        if heights:
            p.add_argument("--heights", help="heights JSON file")
        if matroid:
            p.add_argument("--matroid", help="matroid JSON file")
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--format", choices=["json", "text"], default="text")
        p.add_argument("--seed", type=int, default=0)

    g = sub.add_parser("gen", help="generate canonical examples")
    g.add_argument("kind", choices=["line", "plane", "linear", "curve", "surface", "bergman"])
    g.add_argument("--N", type=int, default=2)
    g.add_argument("--d", type=int, default=1)
    g.add_argument("--k", type=int, default=1)
    common(g, matroid=True)
    g.set_defaults(func=cmd_gen)

    h = sub.add_parser("hypersurface", help="build the hypersurface of a height function")
    common(h, heights=True)
    h.set_defaults(func=cmd_hypersurface)

    hm = sub.add_parser("homology", help="Hodge table, chi list, chi_y and E polynomial")
    common(hm, complex_=True)
    hm.add_argument("--p", type=int, default=None)
    hm.set_defaults(func=cmd_homology)

    c = sub.add_parser("chi", help="chi_p invariants")
    common(c, complex_=True)
    c.set_defaults(func=cmd_chi)

    e = sub.add_parser("epoly", help="diagonal E-polynomial")
    common(e, complex_=True)
    e.set_defaults(func=cmd_epoly)

    k = sub.add_parser("check", help="validation report")
    common(k, complex_=True, heights=True)
    k.add_argument("--balanced", action="store_true")
    k.add_argument("--smooth", action="store_true")
    k.add_argument("--unimodular", action="store_true")
    k.set_defaults(func=cmd_check)

    b = sub.add_parser("bergman", help="Bergman fan closure of a matroid")
    common(b, matroid=True)
    b.set_defaults(func=cmd_bergman)

    d = sub.add_parser("degree", help="degree by stable intersection")
    common(d, complex_=True)
    d.set_defaults(func=cmd_degree)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (HeightError, MatroidError, GeometryError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NonTransversalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
