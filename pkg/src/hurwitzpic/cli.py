"""Command-line front end.

    hurwitzpic pic --k 4 --g 2
    hurwitzpic verify --gmax 40
    hurwitzpic table --k 3 --g-range 2..12 --format md

Exit codes: 0 success, 1 verification or rank failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .abelian import AbelianGroup, render_cyclic
from .hurwitz import HurwitzError, HurwitzInstance, PicResult, pic_hurwitz, pic_simply_branched
from .hurwitz.instance import DEGREES
from .verify import report_dict, run_checks

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass(frozen=True)
class OutputRecord:
    """The serializable face of a ``PicResult``."""

    k: int
    g: int
    simple_branching: bool
    free_rank: int
    invariant_factors: tuple[int, ...]
    generators: tuple[str, ...] = ()
    relations: tuple[tuple[str, str, str], ...] = field(default=())

    @property
    def display_form(self) -> str:
        return AbelianGroup(self.free_rank, self.invariant_factors).render()

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "g": self.g,
            "simple_branching": self.simple_branching,
            "group": {
                "free_rank": self.free_rank,
                "invariant_factors": list(self.invariant_factors),
                "display_form": self.display_form,
            },
            "generators": list(self.generators),
            "relations": [{"name": n, "class": c, "provenance": p} for n, c, p in self.relations],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "OutputRecord":
        grp = d["group"]
        rec = cls(
            d["k"], d["g"], d["simple_branching"], grp["free_rank"],
            tuple(grp["invariant_factors"]), tuple(d["generators"]),
            tuple((r["name"], r["class"], r["provenance"]) for r in d["relations"]),
        )
        if rec.display_form != grp["display_form"]:
            raise ValueError(f"display form {grp['display_form']!r} does not match the invariant factors")
        return rec

    @classmethod
    def from_result(cls, res: PicResult) -> "OutputRecord":
        return cls(
            res.instance.k, res.instance.g, res.simple_branching,
            res.group.free_rank, res.group.torsion, res.generator_labels,
            tuple((r.name, str(r.class_expr), r.provenance) for r in res.relations_used),
        )


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def compute(k: int, g: int, simple: bool) -> PicResult:
    inst = HurwitzInstance(k, g)
    return pic_simply_branched(inst) if simple else pic_hurwitz(inst)


def _group_text(res: PicResult, coprime: bool) -> str:
    if coprime:
        form = res.coprime_form()
        if form is not None:
            return render_cyclic(form)
    return res.group.render()


def _matrix_lines(m, indent="  ") -> list[str]:
    return [indent + line for line in str(m).splitlines()] if m.rows else [indent + "(empty)"]


def render_pic_text(res: PicResult, explain=False, coprime=False, quiet=False) -> str:
    lines = [_group_text(res, coprime)]
    if quiet:
        return lines[0] + "\n"
    orders = res.group.cyclic_orders
    gens = ", ".join(f"{lab} ({render_cyclic([d])})" for lab, d in zip(res.generator_labels, orders))
    lines.append(f"generators: {gens or 'none'}")
    if not explain:
        return "\n".join(lines) + "\n"
    base = res.base
    lines.append(f"eps = {res.eps}; labels written on {', '.join(res.display_basis)}")
    lines.append(f"base basis: {', '.join(_base_names(res))}")
    lines.append("relations:")
    for rec, row in zip(res.relations_used, res.relation_matrix.tolist()):
        lines.append(f"  {rec.name} = {rec.class_expr}  -> {row}")
        lines.append(f"      {rec.provenance}")
    if base.torsor is not None:
        lines.append(f"torsor class killed in the base: {base.torsor} on {', '.join(base.ambient)}")
    dec = res.qmap.smith
    lines.append("smith witness U * A * V = S:")
    for name, m in (("A", res.relation_matrix), ("U", dec.u), ("V", dec.v), ("S", dec.s)):
        lines.append(f" {name} =")
        lines.extend(_matrix_lines(m))
    lines.append(f" check: {dec.check(res.relation_matrix)}")
    return "\n".join(lines) + "\n"


def _base_names(res: PicResult) -> list[str]:
    head = "a1" if res.eps == 1 else f"{res.eps}*a1"
    return [head] + list(res.base.labels[1:])


def render_table(k: int, results: list[PicResult], fmt: str, simple: bool, coprime=False) -> str:
    title = f"Pic(H^s_{{{k},g}})" if simple else f"Pic(H_{{{k},g}})"
    if fmt == "json":
        return dumps([OutputRecord.from_result(r).to_dict() for r in results])
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["g", "free_rank", "invariant_factors", "group"])
        for r in results:
            w.writerow([r.instance.g, r.group.free_rank, ";".join(map(str, r.group.torsion)),
                        _group_text(r, coprime)])
        return buf.getvalue()
    lines = [f"| g | {title} |", "|---|---|"]
    lines += [f"| {r.instance.g} | {_group_text(r, coprime)} |" for r in results]
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _g_range(s: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in s.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {s!r}") from None
    return a, b


def _compute_args(args):
    return compute(*args)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hurwitzpic",
        description="Integral Picard groups of degree 3, 4, 5 Hurwitz stacks.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pic", help="compute one Picard group")
    p.add_argument("--k", type=int, required=True, choices=DEGREES)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--simple", action="store_true", help="simply branched locus")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--explain", action="store_true", help="show relations, provenance and Smith witness")
    p.add_argument("--coprime", action="store_true", help="show a diagonal presentation when one exists")
    p.add_argument("--quiet", action="store_true", help="print the group only")
    p.add_argument("--out", help="write to this file instead of stdout")

    v = sub.add_parser("verify", help="run every reproduction check up to a genus bound")
    v.add_argument("--gmax", type=int, required=True)
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--out")

    t = sub.add_parser("table", help="tabulate Picard groups over a genus range")
    t.add_argument("--k", type=int, required=True, choices=DEGREES)
    t.add_argument("--g-range", type=_g_range, required=True, metavar="A..B")
    t.add_argument("--simple", action="store_true")
    t.add_argument("--coprime", action="store_true")
    t.add_argument("--format", choices=("md", "csv", "json"), default="md")
    t.add_argument("--jobs", type=int, default=1)
    t.add_argument("--out")
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)

    if args.command == "pic":
        if args.g < 2:
            ap.error("--g must be at least 2")
        try:
            res = compute(args.k, args.g, args.simple)
        except HurwitzError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_FAIL
        if args.format == "json":
            text = dumps(OutputRecord.from_result(res).to_dict())
        else:
            text = render_pic_text(res, args.explain, args.coprime, args.quiet)
        _emit(text, args.out)
        return EXIT_OK

    if args.command == "verify":
        if args.gmax < 2:
            ap.error("--gmax must be at least 2")
        results = run_checks(args.gmax, max(args.jobs, 1))
        if args.format == "json":
            text = dumps(report_dict(args.gmax, results))
        else:
            lines = [r.line() for r in results]
            npass = sum(r.passed for r in results)
            lines.append(f"{npass}/{len(results)} checks passed for g in [2,{args.gmax}]")
            text = "\n".join(lines) + "\n"
        _emit(text, args.out)
        return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL

    lo, hi = args.g_range
    if lo < 2 or lo > hi:
        ap.error(f"--g-range needs 2 <= A <= B, got {lo}..{hi}")
    tasks = [(args.k, g, args.simple) for g in range(lo, hi + 1)]
    try:
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(_compute_args, tasks))
        else:
            results = [compute(*t) for t in tasks]
    except HurwitzError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _emit(render_table(args.k, results, args.format, args.simple, args.coprime), args.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
