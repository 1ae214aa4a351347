"""Command-line entry point.

Verbs: build a catalog object, verify one theorem id, run the whole default
verification grid, list known ids, and take tensor products / quotients of
catalog modules.  Machine output is stable JSON (sorted keys, no timestamps)
so verify-all runs are byte-identical across invocations of the same version.

Exit codes: 0 success/verified, 1 refuted, 2 usage error, 3 not-certifiable.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .catalog import CATALOG_IDS, catalog_build
from .graded import kill_generator, normalize, tensor_product
from .km import gr_geometric, localize_v, to_chow
from .kunneth import THEOREM_IDS, default_grid, verify_theorem
from .omega import chow_collapse
from .report import NOT_CERTIFIABLE, REFUTED, VERIFIED


def _add_params(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--p", type=int, default=None)
    sub.add_argument("--n", type=int, default=None)
    sub.add_argument("--m", type=int, default=None)
    sub.add_argument("--s", type=int, default=None)
    sub.add_argument("--d", type=int, default=None)
    sub.add_argument("--n1", type=int, default=None)
    sub.add_argument("--n2", type=int, default=None)
    sub.add_argument(
        "--di",
        type=str,
        default=None,
        help="comma-separated torsion cutoffs for the excellent quadric",
    )


def _add_output(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=("json", "text"), default="json")
    sub.add_argument("--out", type=str, default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="rostcalc",
        description="exact graded-ring computations for twisted-form motives",
    )
    ap.add_argument("--version", action="version", version=__version__)
    sp = ap.add_subparsers(dest="verb", required=True)

    b = sp.add_parser("build", help="construct a catalog object")
    b.add_argument("id", choices=CATALOG_IDS)
    _add_params(b)
    _add_output(b)

    v = sp.add_parser("verify", help="verify one theorem id")
    v.add_argument("id", choices=THEOREM_IDS)
    _add_params(v)
    v.add_argument("--image", choices=("versal", "product", "none"), default=None)
    _add_output(v)

    va = sp.add_parser("verify-all", help="run the default verification grid")
    _add_output(va)

    ls = sp.add_parser("list", help="list catalog and theorem ids")
    _add_output(ls)

    t = sp.add_parser("tensor", help="tensor product of two catalog modules")
    t.add_argument("left", choices=CATALOG_IDS)
    t.add_argument("right", choices=CATALOG_IDS)
    _add_params(t)
    _add_output(t)

    q = sp.add_parser("quotient", help="kill named generators of a catalog module")
    q.add_argument("id", choices=CATALOG_IDS)
    q.add_argument("--kill", action="append", default=[], metavar="NAME")
    _add_params(q)
    _add_output(q)
    return ap


def _params_from(args: argparse.Namespace) -> dict:
    out = {}
    for key in ("p", "n", "m", "s", "d", "n1", "n2"):
        val = getattr(args, key, None)
        if val is not None:
            out[key] = val
    di = getattr(args, "di", None)
    if di:
        out["di"] = [int(x) for x in di.split(",") if x.strip()]
    img = getattr(args, "image", None)
    if img is not None:
        out["image"] = img
    return out


def _build_normal_form(id: str, params: dict) -> dict:
    obj = catalog_build(id, params)
    if id == "omega_image_rost":
        return normalize(chow_collapse(obj.omega).module()).to_json()
    if id == "km_rost":
        return {
            "to_chow": normalize(to_chow(obj.km)).to_json(),
            "gr_geometric": normalize(gr_geometric(obj.km)).to_json(),
            "localized": localize_v(obj.km).to_json(),
        }
    return normalize(obj.module()).to_json()


def _fmt_normal_form(data: dict) -> str:
    lines = []
    degrees = data.get("degrees", {})
    p = data.get("p")
    for d in sorted(degrees, key=int):
        piece = degrees[d]
        parts = []
        if piece["free"]:
            fr = piece["free"]
            parts.append(f"Z^{fr}" if fr > 1 else "Z")
        parts.extend(f"Z/{p**e}" for e in piece["torsion"])
        lines.append(f"degree {d}: {' + '.join(parts)}")
    return "\n".join(lines) if lines else "0"


def _emit(args: argparse.Namespace, data: dict, text: str | None = None) -> None:
    if args.format == "json":
        payload = json.dumps(data, sort_keys=True, indent=2)
    else:
        payload = text if text is not None else json.dumps(data, sort_keys=True, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(payload + "\n")
    else:
        print(payload)


_VERDICT_EXIT = {VERIFIED: 0, REFUTED: 1, NOT_CERTIFIABLE: 3}


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.verb == "build":
            data = _build_normal_form(args.id, _params_from(args))
            _emit(args, data, _fmt_normal_form(data) if "degrees" in data else None)
            return 0
        if args.verb == "verify":
            report = verify_theorem(args.id, _params_from(args))
            data = report.to_json()
            text = f"{report.id} {json.dumps(report.params, sort_keys=True)}: {report.verdict}"
            _emit(args, data, text)
            return _VERDICT_EXIT[report.verdict]
        if args.verb == "verify-all":
            reports = [verify_theorem(id_, prm) for id_, prm in default_grid()]
            data = {
                "version": __version__,
                "reports": [r.to_json() for r in reports],
                "summary": {
                    "total": len(reports),
                    "verified": sum(r.verdict == VERIFIED for r in reports),
                    "refuted": sum(r.verdict == REFUTED for r in reports),
                    "not_certifiable": sum(
                        r.verdict == NOT_CERTIFIABLE for r in reports
                    ),
                },
            }
            text = "\n".join(
                f"{r.id} {json.dumps(r.params, sort_keys=True)}: {r.verdict}"
                for r in reports
            )
            _emit(args, data, text)
            if any(r.verdict == REFUTED for r in reports):
                return 1
            if any(r.verdict == NOT_CERTIFIABLE for r in reports):
                return 3
            return 0
        if args.verb == "list":
            data = {"catalog": list(CATALOG_IDS), "theorems": list(THEOREM_IDS)}
            text = "\n".join(["catalog:", *CATALOG_IDS, "", "theorems:", *THEOREM_IDS])
            _emit(args, data, text)
            return 0
        if args.verb == "tensor":
            params = _params_from(args)
            left = catalog_build(args.left, params).module()
            right = catalog_build(args.right, params).module()
            data = normalize(tensor_product(left, right)).to_json()
            _emit(args, data, _fmt_normal_form(data))
            return 0
        if args.verb == "quotient":
            params = _params_from(args)
            mod = catalog_build(args.id, params).module()
            for name in args.kill:
                mod = kill_generator(mod, name)
            data = normalize(mod).to_json()
            _emit(args, data, _fmt_normal_form(data))
            return 0
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable verb")


if __name__ == "__main__":
    sys.exit(main())
