"""Command-line surface.

Twelve subcommands over the library: inspect images, check continuity,
search homotopies, compute category and higher complexity with their
witnesses, test and enumerate group structures, and re-derive the
bundled reference results. Verdict-style commands exit 0 for yes, 2 for
no; errors exit 1; running out of search budget is reported inside the
output and still exits 0.
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import Optional

from .category import cat_bounds, cat_exact
from .complexity import (CoverImpossible, TheoremViolation, schwarz_genus,
                         tc_n)
from .corpus import get_image, get_map, get_table, get_window_group, loop_cover
from .fileio import (ParseError, load_group, load_image, load_map,
                     serialize_cover, serialize_group, serialize_homotopy,
                     serialize_image, serialize_map, serialize_sections)
from .groups import (CayleyTable, WindowGroup, is_top_homomorphism,
                     is_top_isomorphism, is_topological_group,
                     scan_group_structures, product_group, verify_cayley,
                     window_group_report, window_hom_report)
from .homotopy import BudgetExhausted, are_homotopic, contraction
from .images import CK, DigitalImage, Explicit, interval_image
from .knownvalues import run_reference_rows
from .maps import DigitalMap, continuity_violation
from .pathspace import EndpointFibration
from .report import Report, digest_file, digest_text

# window-group homomorphisms need a rule for every point the operations
# can reach, not just a finite table of pairs; the built-in ones live here
WINDOW_FUNCTIONS = {
    "proj1": lambda p: (p[0],),
}


def _product_mode(mode: Optional[str]) -> str:
    return "strong" if mode == "strong" else "min"


def _adjacency_word(img: DigitalImage) -> str:
    adj = img.adjacency
    if isinstance(adj, CK):
        return f"c{adj.k}"
    if isinstance(adj, Explicit):
        return f"explicit ({len(adj.edges)} edges)"
    return type(adj).__name__


def _as_explicit(img: DigitalImage) -> DigitalImage:
    """A serializable copy: product adjacencies become explicit edges."""
    if isinstance(img.adjacency, (CK, Explicit)):
        return img
    return DigitalImage(img.points, Explicit.of(img.edges()))


def _image_from_ref(ref: str) -> tuple[DigitalImage, str]:
    if ref.startswith("corpus:"):
        img = get_image(ref[len("corpus:"):])
        return img, digest_text(serialize_image(_as_explicit(img)))
    return load_image(ref), digest_file(ref)


def _map_from_ref(ref: str) -> tuple[DigitalMap, str]:
    if ref.startswith("corpus:"):
        dm = get_map(ref[len("corpus:"):])
        return dm, digest_text(serialize_map(dm, ref, ref))
    return load_map(ref), digest_file(ref)


def _group_from_ref(ref: str):
    """A finite table or a window group, with its digest."""
    if ref.startswith("corpus:"):
        name = ref[len("corpus:"):]
        try:
            table = get_table(name)
            return table, digest_text(serialize_group(table, ref))
        except KeyError:
            pass
        wg = get_window_group(name)
        return wg, digest_text(wg.label + "\n"
                               + serialize_image(wg.window))
    return load_group(ref), digest_file(ref)


def _point(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.replace(",", " ").split())


# ---- commands ----

def cmd_image_info(args) -> tuple[Report, int]:
    img, dig = _image_from_ref(args.image)
    rep = Report(command=_echo(args), inputs={args.image: dig})
    rep.results["points"] = len(img.points)
    rep.results["dim"] = img.dim
    rep.results["adjacency"] = _adjacency_word(img)
    rep.results["edges"] = len(list(img.edges()))
    rep.results["connected"] = img.is_connected
    rep.results["components"] = len(img.components)
    if img.is_connected:
        rep.results["diameter"] = img.diameter
    return rep, 0


def cmd_check_continuity(args) -> tuple[Report, int]:
    dm, dig = _map_from_ref(args.map)
    rep = Report(command=_echo(args), inputs={args.map: dig})
    bad = continuity_violation(dm)
    rep.results["continuous"] = bad is None
    if bad is None:
        return rep, 0
    a, b = bad
    rep.results["violation_edge"] = f"{a} ~ {b}"
    rep.results["violation_images"] = f"{dm(a)} vs {dm(b)}"
    return rep, 2


def cmd_homotopic(args) -> tuple[Report, int]:
    f, dig1 = _map_from_ref(args.map1)
    g, dig2 = _map_from_ref(args.map2)
    rep = Report(command=_echo(args),
                 inputs={args.map1: dig1, args.map2: dig2},
                 settings={"budget": args.budget})
    if f.domain != g.domain or f.codomain != g.codomain:
        raise ValueError("the two maps must share domain and codomain")
    try:
        w = are_homotopic(f, g, node_budget=args.budget)
    except BudgetExhausted as err:
        rep.results["homotopic"] = "unknown"
        rep.notes.append(f"budget exhausted: {err}")
        return rep, 0
    rep.results["homotopic"] = w is not None
    if w is None:
        return rep, 2
    rep.results["steps"] = len(w.stages) - 1
    rep.witnesses["domain.img"] = serialize_image(_as_explicit(f.domain))
    rep.witnesses["codomain.img"] = serialize_image(_as_explicit(f.codomain))
    rep.witnesses["homotopy"] = serialize_homotopy(w, "domain.img",
                                                   "codomain.img")
    return rep, 0


def cmd_contractible(args) -> tuple[Report, int]:
    img, dig = _image_from_ref(args.image)
    rep = Report(command=_echo(args), inputs={args.image: dig},
                 settings={"budget": args.budget})
    try:
        w = contraction(img, node_budget=args.budget)
    except BudgetExhausted as err:
        rep.results["contractible"] = "unknown"
        rep.notes.append(f"budget exhausted: {err}")
        return rep, 0
    rep.results["contractible"] = w is not None
    if w is None:
        return rep, 2
    rep.results["stages"] = len(w.stages)
    rep.results["rest_point"] = str(w.stages[-1].values[0])
    rep.witnesses["image.img"] = serialize_image(_as_explicit(img))
    rep.witnesses["contraction"] = serialize_homotopy(w, "image.img",
                                                      "image.img")
    return rep, 0


def cmd_cat(args) -> tuple[Report, int]:
    img, dig = _image_from_ref(args.image)
    rep = Report(command=_echo(args), inputs={args.image: dig},
                 settings={"convention": "k-sets", "budget": args.budget})
    if args.precision == "bounds":
        r = cat_bounds(img, node_budget=args.budget)
        rep.results["cat_lower"] = r.lower
        rep.results["cat_upper"] = r.upper if r.upper is not None else "?"
        rep.notes.extend(r.notes)
        if r.witness:
            rep.witnesses["cover"] = serialize_cover(list(r.witness))
        return rep, 0
    try:
        w = cat_exact(img, node_budget=args.budget)
    except BudgetExhausted as err:
        rep.results["cat"] = "unknown"
        rep.notes.append(f"budget exhausted: {err}")
        return rep, 0
    rep.results["cat"] = w.size
    rep.witnesses["image.img"] = serialize_image(_as_explicit(img))
    rep.witnesses["cover"] = serialize_cover(
        [piece.points for piece in w.pieces])
    for k, piece in enumerate(w.pieces):
        sub = _as_explicit(img.induced(piece.points))
        rep.witnesses[f"piece{k}.img"] = serialize_image(sub)
        rep.witnesses[f"piece{k}.contraction"] = serialize_homotopy(
            piece.contraction, f"piece{k}.img", "image.img")
    return rep, 0


def _loop_extras(args, img: DigitalImage):
    """corpus:H carries its own group table and preferred cover."""
    if args.image == "corpus:H":
        return get_table("Hrot"), loop_cover()
    return None, None


def cmd_tc(args) -> tuple[Report, int]:
    img, dig = _image_from_ref(args.image)
    table, cover = _loop_extras(args, img)
    mode = args.mode or "pointwise"
    rep = Report(command=_echo(args), inputs={args.image: dig},
                 settings={"convention": "k-sets", "mode": mode,
                           "m": args.m if args.m is not None else "auto",
                           "n": args.n, "budget": args.budget})
    try:
        r = tc_n(img, args.n, table=table, cover=cover, m=args.m, mode=mode,
                 node_budget=args.budget)
    except BudgetExhausted as err:
        rep.results["tc"] = "unknown"
        rep.notes.append(f"budget exhausted: {err}")
        return rep, 0
    rep.notes.extend(r.notes)
    if r.exact:
        rep.results["tc"] = r.value
    else:
        rep.results["tc_lower"] = r.lower
        rep.results["tc_upper"] = r.upper if r.upper is not None else "?"
        if args.precision == "exact":
            raise ValueError(
                f"exact value not settled: bounds [{r.lower}, "
                f"{r.upper if r.upper is not None else '?'}]")
    if r.witness:
        wits = list(r.witness)
        arms = len(wits[0].wedges[0])
        length = len(wits[0].wedges[0][0]) - 1
        rep.results["pieces"] = len(wits)
        rep.settings["m"] = length
        rep.witnesses["sections"] = serialize_sections(wits, arms, length)
    return rep, 0


def cmd_genus(args) -> tuple[Report, int]:
    img, dig = _image_from_ref(args.image)
    mode = args.mode or "pointwise"
    m = args.m if args.m is not None else img.diameter
    rep = Report(command=_echo(args), inputs={args.image: dig},
                 settings={"mode": mode, "m": m, "n": args.n,
                           "budget": args.budget})
    if args.m is None:
        rep.notes.append(f"arm length defaulted to the diameter {m}")
    fib = EndpointFibration(img, args.n, m, mode)
    try:
        k, wits = schwarz_genus(fib)
    except CoverImpossible as err:
        rep.results["genus"] = "impossible"
        rep.notes.append(str(err))
        return rep, 2
    except BudgetExhausted as err:
        rep.results["genus"] = "unknown"
        rep.notes.append(f"budget exhausted: {err}")
        return rep, 0
    rep.results["genus"] = k
    rep.witnesses["sections"] = serialize_sections(wits, args.n, m)
    return rep, 0


def cmd_group_check(args) -> tuple[Report, int]:
    obj, dig = _group_from_ref(args.group)
    mode = _product_mode(args.mode)
    rep = Report(command=_echo(args), inputs={args.group: dig},
                 settings={"product": mode})
    if isinstance(obj, WindowGroup):
        r = window_group_report(obj, mode)
        rep.results["window"] = r.label
        rep.results["ok_on_window"] = r.ok_on_window
        rep.results["alpha_checked"] = r.alpha_checked
        if r.alpha_skipped:
            rep.results["alpha_skipped"] = r.alpha_skipped
        if r.alpha_violation:
            a, b = r.alpha_violation
            rep.results["alpha_violation"] = f"{a} ~ {b}"
        if r.beta_violation:
            a, b = r.beta_violation
            rep.results["beta_violation"] = f"{a} ~ {b}"
        if r.inverse_missing:
            rep.results["inverse_missing"] = ", ".join(
                str(p) for p in r.inverse_missing)
        rep.notes.extend(r.notes)
        return rep, 0 if r.ok_on_window else 2
    v = is_topological_group(obj, mode)
    rep.results["group_axioms"] = not verify_cayley(obj)
    rep.results["topological"] = v.ok
    if v.failures:
        rep.results["failures"] = "; ".join(v.failures)
    if v.alpha_edge:
        a, b = v.alpha_edge
        rep.results["alpha_violation"] = f"{a} ~ {b}"
    if v.beta_edge:
        a, b = v.beta_edge
        rep.results["beta_violation"] = f"{a} ~ {b}"
    return rep, 0 if v.ok else 2


def cmd_group_scan(args) -> tuple[Report, int]:
    if args.p is not None:
        img = interval_image(0, args.p - 1)
        ref = f"interval:0:{args.p - 1}"
        dig = digest_text(serialize_image(img))
    elif args.image:
        img, dig = _image_from_ref(args.image)
        ref = args.image
    else:
        raise ValueError("group-scan wants -p <points> or an image")
    mode = _product_mode(args.mode)
    rep = Report(command=_echo(args), inputs={ref: dig},
                 settings={"product": mode})
    res = scan_group_structures(img, mode=mode)
    rep.results["structures"] = res.total
    rep.results["topological"] = res.topological_count
    rep.results["summary"] = (f"{res.total} structures, "
                              f"{res.topological_count} topological")
    for k, table in enumerate(res.topological):
        rep.witnesses[f"group{k}"] = serialize_group(table, ref)
    for table, verdict in res.rejected:
        note = f"identity {table.identity}: "
        if verdict.alpha_edge:
            a, b = verdict.alpha_edge
            note += f"multiplication breaks at {a} ~ {b}"
        elif verdict.beta_edge:
            a, b = verdict.beta_edge
            note += f"inversion breaks at {a} ~ {b}"
        else:
            note += verdict.failures[0] if verdict.failures else "rejected"
        rep.notes.append(note)
    return rep, 0


def cmd_group_product(args) -> tuple[Report, int]:
    a, dig1 = _group_from_ref(args.group1)
    b, dig2 = _group_from_ref(args.group2)
    if isinstance(a, WindowGroup) or isinstance(b, WindowGroup):
        raise ValueError("group-product works on finite tables, not windows")
    mode = _product_mode(args.mode)
    rep = Report(command=_echo(args),
                 inputs={args.group1: dig1, args.group2: dig2},
                 settings={"product": mode})
    prod = product_group(a, b, mode)
    v = is_topological_group(prod, mode)
    rep.results["points"] = len(prod.image.points)
    rep.results["topological"] = v.ok
    if v.failures:
        rep.results["failures"] = "; ".join(v.failures)
    carrier = _as_explicit(prod.image)
    fixed = CayleyTable(carrier, prod.identity, prod.entries, prod.label)
    rep.witnesses["product.img"] = serialize_image(carrier)
    rep.witnesses["product.group"] = serialize_group(fixed, "product.img")
    return rep, 0 if v.ok else 2


def cmd_hom_check(args) -> tuple[Report, int]:
    src, dig1 = _group_from_ref(args.source)
    dst, dig2 = _group_from_ref(args.target)
    rep = Report(command=_echo(args),
                 inputs={args.source: dig1, args.target: dig2})
    windows = isinstance(src, WindowGroup) or isinstance(dst, WindowGroup)
    if windows:
        if not (isinstance(src, WindowGroup) and isinstance(dst, WindowGroup)):
            raise ValueError("mixing a window group with a finite table "
                             "is not supported")
        name = args.map
        if name.startswith("corpus:"):
            name = name[len("corpus:"):]
        fn = WINDOW_FUNCTIONS.get(name)
        if fn is None:
            raise ValueError(
                f"window groups need a built-in rule; known: "
                f"{', '.join(sorted(WINDOW_FUNCTIONS))}")
        rep.inputs[args.map] = digest_text(f"window function {name}")
        r = window_hom_report(src, dst, fn, name)
        rep.results["pairs_checked"] = r.pairs_checked
        rep.results["homomorphism"] = r.is_homomorphism
        rep.results["injective_on_window"] = r.injective_on_window
        if r.algebra_violation:
            rep.results["algebra_violation"] = str(r.algebra_violation)
        if r.continuity_violation:
            rep.results["continuity_violation"] = str(r.continuity_violation)
        if r.collision:
            a, b = r.collision
            rep.results["collision"] = f"{a} and {b} share an image"
            rep.notes.append("not an isomorphism: not injective")
        return rep, 0 if r.is_homomorphism else 2
    dm, dig3 = _map_from_ref(args.map)
    rep.inputs[args.map] = dig3
    ok, why = is_top_homomorphism(dm, src, dst)
    rep.results["homomorphism"] = ok
    if not ok:
        rep.results["reason"] = why
        return rep, 2
    iso, why = is_top_isomorphism(dm, src, dst)
    rep.results["isomorphism"] = iso
    if not iso:
        rep.notes.append(f"not an isomorphism: {why}")
    if dm.is_bijective():
        bad = continuity_violation(dm.inverse())
        rep.results["inverse_continuous"] = bad is None
        if bad is not None:
            a, b = bad
            rep.results["inverse_violation"] = f"{a} ~ {b}"
    return rep, 0


def cmd_verify_paper(args) -> tuple[Report, int]:
    rows = run_reference_rows(node_budget=args.budget)
    rep = Report(command=_echo(args), settings={"budget": args.budget})
    width = max(len(r.name) for r in rows)
    bad = 0
    for r in rows:
        rep.notes.append(f"{r.name:<{width}}  expected {r.expected}; "
                         f"got {r.computed}  [{r.status}]")
        if not r.ok and not r.status.startswith("inconclusive"):
            bad += 1
    rep.results["rows"] = len(rows)
    rep.results["matched"] = sum(r.status == "match" for r in rows)
    rep.results["within_bound"] = sum(
        r.status == "within paper bound" for r in rows)
    rep.results["inconclusive"] = sum(
        r.status.startswith("inconclusive") for r in rows)
    rep.results["mismatched"] = bad
    return rep, 0 if bad == 0 else 2


def _echo(args) -> str:
    return " ".join(args._argv)


COMMANDS = {
    "image-info": cmd_image_info,
    "check-continuity": cmd_check_continuity,
    "homotopic": cmd_homotopic,
    "contractible": cmd_contractible,
    "cat": cmd_cat,
    "tc": cmd_tc,
    "genus": cmd_genus,
    "group-check": cmd_group_check,
    "group-scan": cmd_group_scan,
    "group-product": cmd_group_product,
    "hom-check": cmd_hom_check,
    "verify-paper": cmd_verify_paper,
}


class _Parser(argparse.ArgumentParser):
    """Usage mistakes exit 1; code 2 is reserved for negative verdicts."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(
        prog="ditop",
        description="exact computations over finite digital images")
    sub = top.add_subparsers(dest="command", required=True,
                             parser_class=_Parser)

    def common(p, budget=True):
        p.add_argument("--json", action="store_true",
                       help="print the structured report instead of text")
        p.add_argument("--out", metavar="PATH",
                       help="also write the structured report to a file")
        if budget:
            p.add_argument("--budget", type=int, default=2_000_000,
                           help="node budget for searches")

    def precision(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--exact", dest="precision", action="store_const",
                       const="exact", help="insist on an exact value")
        g.add_argument("--bounds", dest="precision", action="store_const",
                       const="bounds", help="settle for cheap bounds")
        p.set_defaults(precision=None)

    p = sub.add_parser("image-info", help="points, adjacency, connectivity")
    p.add_argument("image", help="corpus:<name> or an image file")
    common(p, budget=False)

    p = sub.add_parser("check-continuity", help="is a digital map continuous")
    p.add_argument("map", help="corpus:<name> or a map file")
    common(p, budget=False)

    p = sub.add_parser("homotopic", help="are two maps digitally homotopic")
    p.add_argument("map1")
    p.add_argument("map2")
    common(p)

    p = sub.add_parser("contractible", help="does the identity contract")
    p.add_argument("image")
    common(p)

    p = sub.add_parser("cat", help="digital Lusternik-Schnirelmann category")
    p.add_argument("image")
    precision(p)
    common(p)

    p = sub.add_parser("tc", help="higher topological complexity TC_n")
    p.add_argument("image")
    p.add_argument("-n", type=int, default=2, help="number of stops")
    p.add_argument("--m", type=int, default=None, help="arm length")
    p.add_argument("--mode", choices=["pointwise", "strong"],
                   default=None, help="wedge step relation")
    precision(p)
    common(p)

    p = sub.add_parser("genus", help="section count of the endpoint map")
    p.add_argument("image")
    p.add_argument("-n", type=int, default=2, help="number of arms")
    p.add_argument("--m", type=int, default=None, help="arm length")
    p.add_argument("--mode", choices=["pointwise", "strong"], default=None)
    common(p)

    p = sub.add_parser("group-check",
                       help="group axioms and continuity of one structure")
    p.add_argument("group", help="corpus:<name> or a group file")
    p.add_argument("--mode", choices=["pointwise", "strong"], default=None,
                   help="product adjacency for the multiplication")
    common(p, budget=False)

    p = sub.add_parser("group-scan",
                       help="enumerate group structures on a carrier")
    p.add_argument("image", nargs="?", default=None)
    p.add_argument("-p", type=int, default=None,
                   help="scan the integer interval with this many points")
    p.add_argument("--mode", choices=["pointwise", "strong"], default=None)
    common(p, budget=False)

    p = sub.add_parser("group-product", help="product of two finite groups")
    p.add_argument("group1")
    p.add_argument("group2")
    p.add_argument("--mode", choices=["pointwise", "strong"], default=None)
    common(p, budget=False)

    p = sub.add_parser("hom-check",
                       help="is a map a (topological) group homomorphism")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("map", help="corpus:<name>, a map file, or a built-in "
                               "rule name for window groups")
    common(p, budget=False)

    p = sub.add_parser("verify-paper",
                       help="re-derive the bundled reference results")
    common(p)

    return top


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args._argv = argv
    started = time.monotonic()
    try:
        rep, code = COMMANDS[args.command](args)
    except (ParseError, FileNotFoundError, KeyError, ValueError,
            TheoremViolation, NotImplementedError) as err:
        if isinstance(err, KeyError) and err.args:
            msg = str(err.args[0])
        else:
            msg = str(err) or type(err).__name__
        print(f"error: {msg}", file=sys.stderr)
        return 1
    elapsed = time.monotonic() - started
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(rep.to_json())
    if getattr(args, "json", False):
        sys.stdout.write(rep.to_json())
    else:
        sys.stdout.write(rep.to_text())
    print(f"# elapsed {elapsed:.2f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
