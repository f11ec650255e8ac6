"""Command-line front end.

JSON diagrams in, JSON or aligned-table reports out.  Exit codes: 0 when
every verdict in the report is decided, 2 when some verdict is Undecided,
1 on input or usage errors.  All numbers in reports are exact fraction
strings "p/q" (or integers); no floats.
"""

import json
import sys
from fractions import Fraction

import click

from .errors import AdicError
from .verdict import Verdict
from . import matrixseq
from .diagram import BratteliDiagram, cylinder
from .frobenius import stream_decompose, frobenius_form
from .cones import extreme_count
from .measures import classify_measures, canonical_cover, CentralMeasure
from . import vershik
from . import gallery

DEFAULT_DEPTH = 64
DEFAULT_BOUND = 10 ** 18


def _frac(x):
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return "%d/%d" % (x.numerator, x.denominator)
    return x


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return _frac(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _load_diagram(path):
    with open(path) as fh:
        obj = json.load(fh)
    return BratteliDiagram.from_json(obj)


def _flatten(report, prefix=""):
    for k, v in report.items():
        key = prefix + str(k)
        if isinstance(v, dict):
            for line in _flatten(v, key + "."):
                yield line
        else:
            yield (key, v)


def _output(report, as_json, emit=None):
    payload = _jsonable(report)
    text = json.dumps(payload, indent=2, sort_keys=True)
    if emit:
        with open(emit, "w") as fh:
            fh.write(text + "\n")
    if as_json:
        click.echo(text)
    else:
        rows = list(_flatten(payload))
        width = max((len(k) for k, _ in rows), default=0)
        for k, v in rows:
            click.echo("%-*s  %s" % (width, k, json.dumps(v, sort_keys=True)
                                     if isinstance(v, list) else v))


def _finish(report, as_json, emit=None, undecided=False):
    _output(report, as_json, emit)
    sys.exit(2 if undecided else 0)


def _edge_token(tok, level):
    """Parse an edge token "a>b.i" at the given level."""
    src, rest = tok.split(">", 1)
    tgt, idx = rest.rsplit(".", 1)
    return (level, src, tgt, int(idx))


def parse_path(diagram, spec):
    """Path specs: comma-separated edge tokens "a>b.i", optionally followed
    by "|min", "|max", "|min@vertex" / "|max@vertex" (for an empty prefix),
    or "|cycle:tok,tok,..." for an explicit periodic tail."""
    spec = spec.strip()
    tail = None
    start_vertex = None
    if "|" in spec:
        head, tailspec = spec.split("|", 1)
    else:
        head, tailspec = spec, ""
    edges = []
    head = head.strip()
    if head:
        for k, tok in enumerate(head.split(",")):
            edges.append(_edge_token(tok.strip(), k))
    if tailspec:
        if tailspec.startswith("cycle:"):
            cyc = []
            for j, tok in enumerate(tailspec[len("cycle:"):].split(",")):
                cyc.append(_edge_token(tok.strip(), len(edges) + j))
            return vershik.LazyPath(diagram, edges, cyc)
        rule = tailspec
        if "@" in tailspec:
            rule, start_vertex = tailspec.split("@", 1)
        if rule not in ("min", "max"):
            raise AdicError("unknown tail rule %r" % rule)
        return vershik.LazyPath(diagram, edges, tail=rule,
                                start_vertex=start_vertex)
    return vershik.LazyPath(diagram, edges)


def _edge_str(e):
    return "%s>%s.%d" % (e[1], e[2], e[3])


def _path_json(p, levels=6):
    out = {"prefix": [_edge_str(e) for e in p.prefix_edges]}
    if p.tail_cycle is not None:
        out["tail_cycle"] = [_edge_str(e) for e in p.tail_cycle]
    out["first_levels"] = [_edge_str(p.edge(k))
                           for k in range(p.start,
                                          min(p.start + levels,
                                              p.tail_start + levels))][:levels]
    return out


@click.group()
def cli():
    """Exact-arithmetic analysis of layered multigraph diagrams and their
    successor dynamics."""


@cli.command()
@click.argument("diagram", type=click.Path(exists=True))
@click.option("--depth", default=DEFAULT_DEPTH, show_default=True)
@click.option("--json", "as_json", is_flag=True)
@click.option("--emit", type=click.Path())
def decompose(diagram, depth, as_json, emit):
    """Stream decomposition: streams, pool, and block matrices."""
    d = _load_diagram(diagram)
    dec = stream_decompose(d.seq)
    K = dec.valid_from
    certs = dec.certificates.get("streams", {})
    report = {
        "command": "decompose",
        "streams": [
            {"index": s.index,
             "members_at_%d" % K: sorted(s.members_at(K)),
             "primitive": certs[s.index].to_json()
             if s.index in certs else None}
            for s in dec.streams
        ],
        "pool_at_%d" % K: sorted(dec.pool_members_at(K)),
        "block_matrices": [dec.block_matrix(k).to_lists()
                           for k in range(K, K + dec.lcm_period + 1)],
        "valid_from": K,
        "provisional": dec.provisional,
    }
    undecided = dec.provisional or any(
        not v.is_decided() for v in certs.values())
    report["undecided"] = undecided
    if emit:
        form = frobenius_form(d.seq)
        payload = matrixseq.to_json(form.form)
        payload["permutation"] = _jsonable(form.permutations)
        payload["gathering_times"] = list(form.gathering_times)
        with open(emit, "w") as fh:
            fh.write(json.dumps(_jsonable(payload), indent=2, sort_keys=True)
                     + "\n")
    _finish(report, as_json, undecided=undecided)


@cli.command()
@click.argument("diagram", type=click.Path(exists=True))
@click.option("--depth", default=DEFAULT_DEPTH, show_default=True)
@click.option("--bound", default=DEFAULT_BOUND, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def classify(diagram, depth, bound, as_json):
    """Ergodic measure classification: rays and Finite/Infinite verdicts."""
    d = _load_diagram(diagram)
    cls = classify_measures(d.seq)
    entries = []
    for m in cls.measures:
        entry = {
            "stream": m.stream.index,
            "verdict": ("Finite" if m.verdict.is_yes() else
                        "Infinite" if m.verdict.is_no() else "Undecided"),
            "atomic": m.atomic,
        }
        if m.ray is not None:
            entry["ray"] = {a: _frac(v) for a, v in sorted(m.ray.ray0.items())}
        if m.verdict.value == Verdict.UNDECIDED:
            entry["horizon"] = m.verdict.horizon
        if m.atomic and m.atom:
            entry["atom"] = _jsonable(m.atom)
        entries.append(entry)
    report = {
        "command": "classify",
        "depth": depth,
        "bound": bound,
        "measures": entries,
        "finite": cls.finite_count,
        "infinite": cls.infinite_count,
        "undecided": sum(1 for m in cls.measures
                         if not m.verdict.is_decided()),
    }
    _finish(report, as_json, undecided=report["undecided"] > 0)


@cli.command()
@click.argument("base", type=click.Path(exists=True))
@click.argument("ambient", type=click.Path(exists=True))
@click.option("--json", "as_json", is_flag=True)
@click.option("--emit", type=click.Path())
def cover(base, ambient, as_json, emit):
    """Canonical cover of a nested pair: the doubled diagram."""
    b = _load_diagram(base)
    a = _load_diagram(ambient)
    cov = canonical_cover(b.seq, a.seq)
    payload = matrixseq.to_json(cov.cover)
    if emit:
        with open(emit, "w") as fh:
            fh.write(json.dumps(_jsonable(payload), indent=2, sort_keys=True)
                     + "\n")
    report = {"command": "cover", "cover": payload}
    _finish(report, as_json)


@cli.command()
@click.argument("diagram", type=click.Path(exists=True))
@click.option("--ray", "ray_index", default=0, show_default=True,
              help="Index of the ergodic measure, in classification order.")
@click.option("--cylinder", "cyl", default="",
              help="Edge word 'a>b.i,a>b.i,...' from level 0.")
@click.option("--depth", default=DEFAULT_DEPTH, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def measure(diagram, ray_index, cyl, depth, as_json):
    """Cylinder mass under one of the ergodic measures."""
    d = _load_diagram(diagram)
    cls = classify_measures(d.seq)
    if not 0 <= ray_index < len(cls.measures):
        raise AdicError("no measure with index %d" % ray_index)
    m = cls.measures[ray_index]
    if m.ray is None:
        raise AdicError("measure %d has no exact ray" % ray_index)
    cm = CentralMeasure(d.seq, m.ray)
    report = {
        "command": "measure",
        "ray": {a: _frac(v) for a, v in sorted(m.ray.ray0.items())},
        "verdict": ("Finite" if m.verdict.is_yes() else
                    "Infinite" if m.verdict.is_no() else "Undecided"),
    }
    if cyl:
        word = [_edge_token(tok.strip(), k)
                for k, tok in enumerate(cyl.split(","))]
        report["cylinder"] = [_edge_str(e) for e in word]
        report["mass"] = _frac(cm.cylinder_mass(tuple(word)))
    _finish(report, as_json, undecided=not m.verdict.is_decided())


@cli.command("count-ergodic")
@click.argument("diagram", type=click.Path(exists=True))
@click.option("--depth", default=DEFAULT_DEPTH, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def count_ergodic(diagram, depth, as_json):
    """Number of ergodic finite invariant measures (exact for eventually
    periodic diagrams; a depth-limited bound otherwise)."""
    d = _load_diagram(diagram)
    if d.seq.horizon is not None:
        depth = min(depth, d.seq.horizon - 1)
    count, info = extreme_count(d.seq, depth)
    report = {"command": "count-ergodic", "count": count}
    report.update(_jsonable(info))
    _finish(report, as_json,
            undecided=not d.seq.is_eventually_periodic)


@cli.command()
@click.argument("diagram", type=click.Path(exists=True))
@click.option("--path", "path_spec", required=True)
@click.option("-n", "count", default=1, show_default=True)
@click.option("--json", "as_json", is_flag=True)
def successor(diagram, path_spec, count, as_json):
    """Apply the successor map n times to a path."""
    d = _load_diagram(diagram)
    p = parse_path(d, path_spec)
    steps = []
    cur = p
    for _ in range(count):
        nxt = vershik.successor(cur)
        if nxt is None:
            steps.append("NoSuccessor")
            break
        cur = nxt
        steps.append(_path_json(cur))
    report = {"command": "successor", "input": _path_json(p),
              "steps": steps}
    _finish(report, as_json)


@cli.command()
@click.argument("diagram", type=click.Path(exists=True))
@click.option("--path", "path_spec", required=True)
@click.option("--steps", default=100, show_default=True)
@click.option("--depth", default=3, show_default=True,
              help="Cylinder depth for visit statistics.")
@click.option("--json", "as_json", is_flag=True)
@click.option("--emit", type=click.Path())
def simulate(diagram, path_spec, steps, depth, as_json, emit):
    """Iterate the successor map and report exact visit frequencies."""
    d = _load_diagram(diagram)
    p = parse_path(d, path_spec)
    stats = vershik.simulate_orbit(p, steps, depth=depth)
    report = {
        "command": "simulate",
        "steps_performed": stats["steps_performed"],
        "frequencies": {",".join(_edge_str(e) for e in w): _frac(f)
                        for w, f in sorted(stats["frequencies"].items())},
        "change_levels": {str(k): v
                          for k, v in sorted(stats["change_levels"].items())},
        "truncated": stats["steps_performed"] < steps,
    }
    _finish(report, as_json, emit)


@cli.command()
@click.argument("name")
@click.option("--json", "as_json", is_flag=True)
@click.option("--emit", type=click.Path())
def example(name, as_json, emit):
    """Write a built-in example diagram (see `adic example list`)."""
    if name == "list":
        _finish({"command": "example", "available": sorted(gallery.EXAMPLES)},
                as_json)
    if name not in gallery.EXAMPLES:
        raise AdicError("unknown example %r; try `adic example list`" % name)
    obj = gallery.EXAMPLES[name]()
    if isinstance(obj, vershik.SubdiagramEmbedding):
        payload = {
            "ambient": obj.ambient.to_json(),
            "base": matrixseq.to_json(obj.base_seq),
            "base_edge_indices": {str(k): v
                                  for k, v in obj.index_map.items()},
        }
    else:
        payload = obj.to_json()
    report = {"command": "example", "name": name, "diagram": payload}
    if getattr(obj, "expected", None):
        report["expected"] = _jsonable(obj.expected)
    if emit:
        with open(emit, "w") as fh:
            fh.write(json.dumps(_jsonable(payload), indent=2, sort_keys=True)
                     + "\n")
    _finish(report, as_json)


def main():
    try:
        cli.main(standalone_mode=False)
    except SystemExit:
        raise
    except click.exceptions.Exit as exc:  # --help and friends
        sys.exit(exc.exit_code)
    except click.ClickException as exc:
        exc.show()
        sys.exit(1)
    except click.Abort:
        sys.exit(1)
    except (AdicError, OSError, ValueError, KeyError) as exc:
        click.echo("error: %s" % exc, err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
