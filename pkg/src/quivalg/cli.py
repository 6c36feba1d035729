"""Command-line surface over the whole package.

Every subcommand prints one machine-readable payload to stdout: JSON with
sorted keys by default, or DOT for the quiver-producing subcommands when
`--dot` is passed.  Exit codes: 0 on success, 1 when the input is
well-formed but the requested analysis refuses it (a recognizer refusal,
a non-monomial presentation handed to `cover`, and so on), 2 on malformed
input or bad arguments.

Subcommands reading a presentation accept either the line-oriented quiver
file format or the JSON emitted by `gen`, `glue` and `separate` (an object
carrying the file text under the "presentation" key), so outputs pipe
straight back in.  A missing file argument, or `-`, reads stdin.
"""

import argparse
import json
import sys

from .algebra import build_algebra
from .covers import expand_cover, find_critical_line, find_euclidean_convex, \
    relation_free_lines
from .errors import (ExplosionGuardError, GlueingError, MonotonicityError,
                     NonMonomialError, NotBiserialError,
                     PossiblyInfiniteDimensionalError, QuivalgError,
                     QuiverStructureError)
from .families import dimension, enumerate_dimension, gen_family
from .fields import field_by_name
from .glueing import census_glueings, glue, separate
from .quiver import (emit_quiver_file, graph_shape, parse_quiver_file,
                     separated_quiver, to_dot)
from .recognize import Refusal, recognize
from .lattice import trichotomy
from .strings import enumerate_bands, enumerate_strings

REFUSALS = (GlueingError, NonMonomialError, NotBiserialError,
            PossiblyInfiniteDimensionalError, ExplosionGuardError,
            MonotonicityError)


def _emit(payload):
    print(json.dumps(payload, indent=2, sort_keys=True))


def _refuse(stage, reason):
    _emit({"refusal": {"stage": stage, "reason": reason}})
    return 1


def _read_text(path):
    if path in (None, "-"):
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_presentation(path):
    """Quiver file text, or a JSON wrapper holding one under
    "presentation"."""
    text = _read_text(path)
    if text.lstrip().startswith("{"):
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as e:
            raise QuivalgError("input looks like JSON but does not parse: %s"
                               % e)
        if not isinstance(payload, dict) or "presentation" not in payload:
            raise QuivalgError('JSON input needs a "presentation" key')
        text = payload["presentation"]
    return parse_quiver_file(text)


def _load_algebra(args):
    quiver, relations = _load_presentation(args.file)
    return build_algebra(quiver, relations, field=field_by_name(args.field))


def _presentation_payload(algebra, extra=None):
    payload = {"dim": algebra.dim,
               "presentation": emit_quiver_file(algebra.quiver,
                                                algebra.relations)}
    payload.update(extra or {})
    return payload


def _instance_entry(inst):
    return {"family": inst.family, "params": list(inst.params),
            "glued": inst.glued, "dim": inst.algebra.dim}


def _word_entry(word):
    return {"source": word.source, "target": word.target,
            "letters": [[name, sign] for name, sign in word.letters]}


# ------------------------------------------------------------- subcommands


def _cmd_classify(args):
    algebra = _load_algebra(args)
    match = recognize(algebra)
    if isinstance(match, Refusal):
        return _refuse(match.stage, match.reason)
    report = trichotomy(algebra)
    pair = None
    if report.critical_pair is not None:
        pair = {"source": report.critical_pair.source,
                "target": report.critical_pair.target,
                "index": report.critical_pair.index}
    _emit({"family": match.family, "params": list(match.params),
           "glued": match.glued, "verdict": report.verdict,
           "socle_dim": report.socle_dim, "critical_pair": pair,
           "vertex_map": match.vertex_map})
    return 0


def _cmd_gen(args):
    inst = gen_family(args.family, tuple(args.params), glued=args.glued,
                      field=field_by_name(args.field))
    if args.dot:
        sys.stdout.write(to_dot(inst.algebra.quiver))
        return 0
    _emit(_presentation_payload(inst.algebra, _instance_entry(inst)))
    return 0


def _cmd_enumerate(args):
    entries = enumerate_dimension(args.dim, field=field_by_name(args.field),
                                  jobs=args.jobs)
    _emit({"dim": args.dim, "count": len(entries),
           "entries": [_instance_entry(i) for i in entries]})
    return 0


def _cmd_dim(args):
    _emit({"family": args.family, "params": list(args.params),
           "glued": args.glued,
           "dim": dimension(args.family, tuple(args.params),
                            glued=args.glued)})
    return 0


def _cmd_glue(args):
    glued = glue(_load_algebra(args), args.source, args.sink)
    if args.dot:
        sys.stdout.write(to_dot(glued.quiver))
        return 0
    _emit(_presentation_payload(glued))
    return 0


def _cmd_separate(args):
    split = separate(_load_algebra(args), args.point)
    if args.dot:
        sys.stdout.write(to_dot(split.quiver))
        return 0
    _emit(_presentation_payload(split))
    return 0


def _cmd_glueings(args):
    census = census_glueings(_load_algebra(args),
                             max_vertices=args.max_vertices, jobs=args.jobs)
    reps = [{"partition": [list(b) for b in part.blocks], "dim": alg.dim}
            for part, alg in census.representatives]
    _emit({"classes": census.classes, "proper": census.proper_count,
           "improper": census.improper_count, "representatives": reps})
    return 0


def _cmd_strings(args):
    algebra = _load_algebra(args)
    bands = enumerate_bands(algebra, args.max_len)
    payload = {"max_len": args.max_len,
               "bands": [_word_entry(w) for w in bands]}
    if not args.bands_only:
        strings = enumerate_strings(algebra, args.max_len)
        payload["strings"] = [_word_entry(w) for w in strings]
    _emit(payload)
    return 0


def _cmd_cover(args):
    algebra = _load_algebra(args)
    try:
        ts = expand_cover(algebra, args.base, args.radius)
    except ValueError as e:
        raise QuivalgError(str(e))
    if args.search == "euclidean":
        patches = find_euclidean_convex(ts)
        _emit({"base": args.base, "radius": args.radius,
               "patches": [{"shape": p.shape, "vertices": list(p.vertices)}
                           for p in patches]})
        return 0
    if args.search == "lines":
        lines = relation_free_lines(ts)
        found = find_critical_line(ts)
        critical = None
        if found is not None:
            critical = {"vertices": list(found.vertices),
                        "steps": [[name, sign] for name, sign in found.steps],
                        "sources": list(found.sources),
                        "sinks": list(found.sinks)}
        _emit({"base": args.base, "radius": args.radius,
               "lines": len(lines),
               "longest": max((l.length for l in lines), default=0),
               "critical": critical})
        return 0
    if args.dot:
        sys.stdout.write(to_dot(ts.quiver))
        return 0
    _emit({"base": args.base, "radius": args.radius,
           "vertices": list(ts.quiver.vertices),
           "arrows": [[a.name, a.source, a.target] for a in ts.quiver.arrows],
           "vertex_map": dict(ts.vertex_map),
           "arrow_map": dict(ts.arrow_map),
           "lifted": [list(p.arrows) for p in ts.lifted]})
    return 0


def _cmd_separated(args):
    quiver, _ = _load_presentation(args.file)
    split = separated_quiver(quiver)
    if args.dot:
        sys.stdout.write(to_dot(split))
        return 0
    _emit({"presentation": emit_quiver_file(split),
           "vertices": list(split.vertices)})
    return 0


def _cmd_shape(args):
    quiver, _ = _load_presentation(args.file)
    try:
        shape = graph_shape(quiver)
    except QuiverStructureError as e:
        # a well-formed but disconnected quiver has no single shape
        return _refuse("shape", str(e))
    _emit({"kind": shape.kind, "letter": shape.letter, "rank": shape.rank,
           "label": shape.label})
    return 0


# ------------------------------------------------------------------ parser


def _add_input(sub, dot=False):
    sub.add_argument("file", nargs="?", default="-",
                     help="presentation file; - or omitted reads stdin")
    sub.add_argument("--field", default="q", choices=["q", "f2", "f3"],
                     help="coefficient field (default q)")
    if dot:
        sub.add_argument("--dot", action="store_true",
                         help="emit DOT instead of JSON")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="quivalg",
        description="Exact computations with bound quiver algebras.")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("classify",
                          help="recognize a presentation and report its type")
    _add_input(sub)
    sub.set_defaults(fn=_cmd_classify)

    sub = subs.add_parser("gen", help="generate a standard family member")
    sub.add_argument("family", choices=["A", "B", "C", "D", "E"])
    sub.add_argument("params", nargs="+", type=int)
    sub.add_argument("--glued", action="store_true")
    sub.add_argument("--field", default="q", choices=["q", "f2", "f3"])
    sub.add_argument("--dot", action="store_true")
    sub.set_defaults(fn=_cmd_gen)

    sub = subs.add_parser("enumerate",
                          help="list family members of a given dimension")
    sub.add_argument("--dim", type=int, required=True)
    sub.add_argument("--field", default="q", choices=["q", "f2", "f3"])
    sub.add_argument("--jobs", type=int, default=None)
    sub.set_defaults(fn=_cmd_enumerate)

    sub = subs.add_parser("dim", help="dimension of a family member")
    sub.add_argument("family", choices=["A", "B", "C", "D", "E"])
    sub.add_argument("params", nargs="+", type=int)
    sub.add_argument("--glued", action="store_true")
    sub.set_defaults(fn=_cmd_dim)

    sub = subs.add_parser("glue", help="merge a source and a sink")
    _add_input(sub, dot=True)
    sub.add_argument("--source", required=True)
    sub.add_argument("--sink", required=True)
    sub.set_defaults(fn=_cmd_glue)

    sub = subs.add_parser("separate", help="split a node back apart")
    _add_input(sub, dot=True)
    sub.add_argument("--point", required=True)
    sub.set_defaults(fn=_cmd_separate)

    sub = subs.add_parser("glueings",
                          help="census of proper glueings up to isomorphism")
    _add_input(sub)
    sub.add_argument("--max-vertices", type=int, default=8)
    sub.add_argument("--jobs", type=int, default=None)
    sub.set_defaults(fn=_cmd_glueings)

    sub = subs.add_parser("strings",
                          help="strings and bands of a biserial presentation")
    _add_input(sub)
    sub.add_argument("--max-len", type=int, required=True)
    sub.add_argument("--bands-only", action="store_true")
    sub.set_defaults(fn=_cmd_strings)

    sub = subs.add_parser("cover", help="bounded tree unfolding and searches")
    _add_input(sub, dot=True)
    sub.add_argument("--base", required=True)
    sub.add_argument("--radius", type=int, required=True)
    sub.add_argument("--search", choices=["euclidean", "lines"])
    sub.set_defaults(fn=_cmd_cover)

    sub = subs.add_parser("separated", help="separated quiver of the input")
    _add_input(sub, dot=True)
    sub.set_defaults(fn=_cmd_separated)

    sub = subs.add_parser("shape", help="underlying graph shape")
    _add_input(sub)
    sub.set_defaults(fn=_cmd_shape)

    return parser


def run(argv):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        return args.fn(args)
    except REFUSALS as e:
        return _refuse(type(e).__name__, str(e))
    except (QuivalgError, ValueError) as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except OSError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
