"""``apexctl`` command line front end.

One JSON document per invocation on stdout (schema 1).  Exit codes:
0 predicate true / success, 1 predicate false, 2 verification failure,
64 usage error, 65 graph6 parse error.
"""

from __future__ import annotations

import json
import sys
from typing import Iterator

import click

from . import __version__
from .apex import is_n_apex
from .enumeration import Constraints, default_jobs, generate, search_obstructions
from .families import heawood_family, identify, petersen_family
from .graphs import (
    CapacityError,
    Graph,
    Graph6ParseError,
    GraphError,
    from_graph6,
    simplify,
    to_graph6,
)
from .minors import minor_model, nearness
from .planarity import is_planar, planar_bool
from .verify import TAGS, run_pipeline

EXIT_FALSE = 1
EXIT_VERIFY_FAIL = 2
EXIT_USAGE = 64
EXIT_PARSE = 65


class CliFalse(Exception):
    """Predicate evaluated to false; carries the already-printed payload."""


def _emit(payload: dict) -> None:
    payload = {"schema": 1, **payload}
    click.echo(json.dumps(payload, sort_keys=True))


def _inputs(graph6: tuple[str, ...], batch: bool) -> Iterator[Graph]:
    if batch:
        for line in sys.stdin:
            line = line.strip()
            if line:
                yield from_graph6(line)
    for text in graph6:
        yield from_graph6(text)


@click.group(name="apexctl")
@click.version_option(__version__)
def cli() -> None:
    """Planarity, apex numbers, minors, and obstruction-set verification."""


@cli.command()
@click.argument("graph6", nargs=-1)
@click.option("--batch", is_flag=True, help="also read graph6 lines from stdin")
def planar(graph6: tuple[str, ...], batch: bool) -> None:
    """Decide planarity; emits embedding or Kuratowski witness."""
    results = []
    all_planar = True
    for g in _inputs(graph6, batch):
        res = is_planar(g)
        entry: dict = {"graph6": to_graph6(g), "planar": res.planar}
        if res.planar:
            entry["embedding"] = [list(r) for r in res.embedding]
        else:
            w = res.witness
            entry["witness"] = {
                "kind": w.kind,
                "branch_vertices": list(w.branch_vertices),
                "paths": [list(p) for p in w.paths],
                "edges": [list(e) for e in w.edges],
            }
            all_planar = False
        results.append(entry)
    if not results:
        raise click.UsageError("no graphs given")
    _emit({"command": "planar", "results": results})
    if not all_planar:
        raise CliFalse()


@cli.command()
@click.argument("graph6", nargs=-1)
@click.option("--n", "budget", type=int, required=True, help="apex budget (0..4)")
@click.option("--witness", "want_witness", is_flag=True, help="include the deletion set")
@click.option("--batch", is_flag=True)
def apex(graph6: tuple[str, ...], budget: int, want_witness: bool, batch: bool) -> None:
    """Decide n-apexness."""
    if not 0 <= budget <= 4:
        raise click.UsageError("--n must be between 0 and 4")
    results = []
    all_true = True
    for g in _inputs(graph6, batch):
        v = is_n_apex(g, budget)
        entry = {"graph6": to_graph6(g), "n": budget, "is_n_apex": v.is_n_apex}
        if v.is_n_apex and want_witness:
            entry["witness"] = list(v.witness)
        if not v.is_n_apex:
            entry["refuted_subsets"] = v.refuted
            all_true = False
        results.append(entry)
    if not results:
        raise click.UsageError("no graphs given")
    _emit({"command": "apex", "results": results})
    if not all_true:
        raise CliFalse()


@cli.command(name="simplify")
@click.argument("graph6", nargs=-1)
@click.option("--batch", is_flag=True)
@click.option("--json", "as_json", is_flag=True, help="emit JSON with the branch map")
def simplify_cmd(graph6: tuple[str, ...], batch: bool, as_json: bool) -> None:
    """Simplification (graph6 per line, or JSON with --json)."""
    results = []
    for g in _inputs(graph6, batch):
        r = simplify(g)
        if as_json:
            results.append(
                {
                    "graph6": to_graph6(g),
                    "simplified": to_graph6(r.simplified),
                    "branch_map": list(r.branch_map),
                }
            )
        else:
            click.echo(to_graph6(r.simplified))
    if as_json:
        _emit({"command": "simplify", "results": results})


@cli.command()
@click.argument("host")
@click.argument("pattern")
@click.option("--model", "want_model", is_flag=True, help="include the branch sets")
def minor(host: str, pattern: str, want_model: bool) -> None:
    """Decide whether PATTERN is a minor of HOST."""
    h = from_graph6(host)
    p = from_graph6(pattern)
    m = minor_model(h, p)
    payload: dict = {"command": "minor", "host": host, "pattern": pattern, "has_minor": m is not None}
    if m is not None and want_model:
        payload["model"] = [list(s) for s in m.branch_sets]
    _emit(payload)
    if m is None:
        raise CliFalse()


@cli.command()
@click.argument("graph6")
@click.argument("vertex", type=int)
def near(graph6: str, vertex: int) -> None:
    """Nearness report of VERTEX against the simplification of g - VERTEX."""
    g = from_graph6(graph6)
    rep = nearness(g, vertex)
    _emit(
        {
            "command": "near",
            "graph6": graph6,
            "vertex": vertex,
            "kind": rep.kind,
            "branch_vertices": list(rep.branch),
            "near_vertices": list(rep.near_vertices),
            "near_edges": [list(e) for e in rep.near_edges],
            "near_all": rep.near_all,
        }
    )
    if not rep.near_all:
        raise CliFalse()


@cli.command()
@click.argument("which", type=click.Choice(["petersen", "heawood", "ks"]))
@click.option("--names", "with_names", is_flag=True, help="tab-separated name column")
@click.option("--g6", "plain", is_flag=True, help="bare graph6 lines")
def family(which: str, with_names: bool, plain: bool) -> None:
    """Print a family catalog."""
    from .families import ks_graphs

    entries = {"petersen": petersen_family, "heawood": heawood_family, "ks": ks_graphs}[which]()
    if plain and not with_names:
        for e in entries:
            click.echo(e.graph6)
    else:
        for e in entries:
            click.echo(f"{e.graph6}\t{e.name}")


@cli.command()
@click.option("--vertices", required=True, help="order (exact like 8, or range 4-10)")
@click.option("--edges", default=None, help="size (exact or range lo-hi)")
@click.option("--min-degree", type=int, default=0)
@click.option("--regular", type=int, default=None)
@click.option("--connected", is_flag=True)
@click.option("--nonplanar", is_flag=True, help="keep only non-planar graphs")
def enumerate(vertices, edges, min_degree, regular, connected, nonplanar) -> None:
    """Stream one graph6 line per isomorphism class."""

    def parse_range(text):
        if text is None:
            return None
        if "-" in text:
            lo, hi = text.split("-", 1)
            return (int(lo), int(hi))
        return int(text)

    try:
        c = Constraints(
            order=parse_range(vertices),
            size=parse_range(edges),
            min_degree=min_degree,
            regular=regular,
            connected=connected,
        )
        c.validate()
    except ValueError as e:
        raise click.UsageError(str(e))
    for g in generate(c):
        if nonplanar and planar_bool(g):
            continue
        click.echo(to_graph6(g))


@cli.command()
@click.option("--property", "prop", type=click.Choice(["na", "n2a"]), required=True)
@click.option("--max-edges", type=int, required=True)
@click.option("--order", default=None, help="restrict candidate order (exact or lo-hi)")
@click.option("--degree-sequence", "degseq", default=None, help="comma-separated, e.g. 3,3,3,4")
@click.option("--regular", type=int, default=None)
@click.option("--jobs", type=int, default=None, help="worker count (APEXCTL_JOBS)")
@click.option("--report", "report_path", type=click.Path(), default=None)
@click.option("--full", is_flag=True, help="unbounded full-scope search (no time bound)")
def search(prop, max_edges, order, degseq, regular, jobs, report_path, full) -> None:
    """Exhaustive minor-minimal obstruction search within scope."""
    scope = None
    if order or degseq or regular:
        if "-" in (order or ""):
            lo, hi = order.split("-", 1)
            order_val = (int(lo), int(hi))
        elif order:
            order_val = int(order)
        else:
            order_val = (4, (2 * max_edges) // 3)
        seq = tuple(sorted(int(x) for x in degseq.split(","))) if degseq else None
        scope = Constraints(order=order_val, min_degree=3, regular=regular, degree_sequence=seq)
    elif full:
        scope = Constraints(order=(4, (2 * max_edges) // 3), min_degree=3)
    try:
        report = search_obstructions(prop, max_edges, scope=scope, jobs=jobs)
    except ValueError as e:
        raise click.UsageError(str(e))
    payload = {"schema": 1, "command": "search", **report.to_dict()}
    text = json.dumps(payload, sort_keys=True)
    if report_path:
        with open(report_path, "w") as fh:
            fh.write(text + "\n")
    click.echo(text)


@cli.command()
@click.argument("tag")
@click.option("--jobs", type=int, default=None)
@click.option("--report", "report_path", type=click.Path(), default=None)
def verify(tag: str, jobs, report_path) -> None:
    """Run a named verification pipeline; exit 0 on pass, 2 on fail."""
    if tag not in TAGS:
        raise click.UsageError(f"unknown tag {tag!r}; choose from {', '.join(TAGS)}")
    report = run_pipeline(tag, jobs)
    text = json.dumps(report.to_dict(), sort_keys=True)
    if report_path:
        with open(report_path, "w") as fh:
            fh.write(text + "\n")
    click.echo(text)
    if not report.passed:
        sys.exit(EXIT_VERIFY_FAIL)


def main(argv: list[str] | None = None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except CliFalse:
        return EXIT_FALSE
    except (Graph6ParseError, CapacityError) as e:
        click.echo(f"apexctl: {e}", err=True)
        return EXIT_PARSE
    except GraphError as e:
        click.echo(f"apexctl: {e}", err=True)
        return EXIT_USAGE
    except click.UsageError as e:
        click.echo(f"apexctl: {e.format_message()}", err=True)
        return EXIT_USAGE
    except click.exceptions.Exit as e:
        return e.exit_code
    except SystemExit as e:  # verify failure path
        return int(e.code or 0)


if __name__ == "__main__":
    sys.exit(main())
