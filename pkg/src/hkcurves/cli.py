"""`hkc` command line: batch analysis of power-series parametrizations.

    hkc <command> [--json] [--precision N] [--max-precision N]
        [--file PATH | inline generators]

Commands: analyze, hk, semigroup, member SERIES, equal OTHERFILE, truncate,
normalize, extend, torsion.  Input files hold one parametrization per line in
the series grammar.  Exit codes: 0 success, 1 usage or parse error,
2 mathematical error (gcd > 1, insufficient precision, failed hypotheses).
"""

import argparse
import json
import sys

from hkcurves.engine import DEFAULT_MAX_PRECISION, analyze_ring, ring_member
from hkcurves.errors import HKError, MathError, ParseError
from hkcurves.invariants import ring_report
from hkcurves.parsing import parse_generators, parse_series
from hkcurves.series import format_series
from hkcurves.transforms import (
    drop_redundant,
    extend_by_conductor,
    hk_generators,
    normalize_parameter,
    rings_equal,
    torsion_witness,
    truncate_parametrization,
)

COMMANDS = ("analyze", "hk", "semigroup", "member", "equal", "truncate", "normalize", "extend", "torsion")


class CliUsageError(HKError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliUsageError(message)


def _build_parser():
    parser = _Parser(prog="hkc", description="Valuation invariants of curve branches R = k[[y1,...,yn]] in k[[t]].")
    sub = parser.add_subparsers(dest="command", metavar="command")
    for name in COMMANDS:
        p = sub.add_parser(name, add_help=True)
        if name == "member":
            p.add_argument("series", help="series to test for membership")
        if name == "equal":
            p.add_argument("other", help="file with the parametrization to compare against")
        p.add_argument("generators", nargs="?", default=None, help="inline comma-separated generators")
        p.add_argument("--json", action="store_true", dest="as_json")
        p.add_argument("--precision", type=int, default=None, metavar="N")
        p.add_argument("--max-precision", type=int, default=DEFAULT_MAX_PRECISION, metavar="N")
        p.add_argument("--file", default=None, metavar="PATH", help="input file, one parametrization per line")
    return parser


def _load_inputs(args):
    if args.file is not None and args.generators is not None:
        raise CliUsageError("give either --file or inline generators, not both")
    if args.file is not None:
        with open(args.file) as fh:
            lines = [ln.strip() for ln in fh]
        texts = [ln for ln in lines if ln and not ln.startswith("#")]
        if not texts:
            raise CliUsageError("no parametrizations in %s" % args.file)
        return texts
    if args.generators is None:
        raise CliUsageError("missing input: pass inline generators or --file")
    return [args.generators]


def _rat(q):
    return str(q)


def _semigroup_json(sg):
    return {
        "min_generators": list(sg.min_generators),
        "conductor": sg.conductor,
        "genus": sg.genus,
    }


def _witness_json(w):
    if w is None:
        return None
    return {
        "a1": w.a1,
        "an": w.an,
        "x1": format_series(w.x1),
        "xn": format_series(w.xn),
        "omega": w.omega_text,
        "image": format_series(w.image_in_normalization),
    }


def _extension_json(ext):
    if ext is None:
        return None
    return {
        "b_list": list(ext.b_list),
        "s": ext.s,
        "c_S": ext.c_S,
        "hk_S": list(ext.hk_S.sequence),
        "i0": ext.i0,
        "S_generators": ext.S_gens.texts(),
        "chosen_generators": [format_series(g) for g in ext.chosen_generators],
    }


def _analyze_payload(p, precision, max_precision):
    report = ring_report(p, precision, max_precision)
    witness = None
    extension = None
    if report.hk.sequence[-1] >= report.conductor_degree:
        witness = torsion_witness(p)
    else:
        extension = extend_by_conductor(p)
    limit = max(report.conductor_degree + report.multiplicity, report.hk.sequence[-1] + 1)
    return report, witness, extension, limit


def _analyze_json(p, args):
    report, witness, extension, limit = _analyze_payload(p, args.precision, args.max_precision)
    return {
        "generators": p.texts(),
        "multiplicity": report.multiplicity,
        "value_semigroup": _semigroup_json(report.value_semigroup),
        "hk_sequence": list(report.hk.sequence),
        "hk_generators": [format_series(g, display_limit=limit) for g in report.hk.generators],
        "hk_display_truncated_at": limit,
        "embedding_dimension": report.embedding_dimension,
        "conductor_degree": report.conductor_degree,
        "conductor_in_m2": report.conductor_in_m2,
        "reduced_type": report.reduced_type_s,
        "torsion_witness": _witness_json(witness),
        "extension": _extension_json(extension),
        "precision_used": report.precision_used,
    }


def _analyze_text(p, args):
    report, witness, extension, limit = _analyze_payload(p, args.precision, args.max_precision)
    sg = report.value_semigroup
    lines = [
        "generators:           %s" % ", ".join(p.texts()),
        "multiplicity:         %d" % report.multiplicity,
        "value semigroup:      %s   (conductor %d, genus %d)" % (sg, sg.conductor, sg.genus),
        "Herzog-Kunz sequence: %s" % " < ".join(str(a) for a in report.hk.sequence),
        "HK generators:        %s   (display truncated at t^%d)"
        % (", ".join(format_series(g, display_limit=limit) for g in report.hk.generators), limit),
        "embedding dimension:  %d" % report.embedding_dimension,
        "conductor degree:     %d" % report.conductor_degree,
        "conductor in m^2:     %s"
        % (
            "yes: conductor ideal contained in m^2 (a_n < c_R)"
            if report.conductor_in_m2
            else "no: conductor ideal not contained in m^2 (a_n >= c_R)"
        ),
        "reduced type:         %d" % report.reduced_type_s,
    ]
    if len(p.gens) > report.embedding_dimension:
        lines.insert(
            1,
            "note:                 %d generators given, embedding dimension %d (redundant)"
            % (len(p.gens), report.embedding_dimension),
        )
    if witness is not None:
        lines.append(
            "torsion witness:      omega = %s   (image in k[[t]]dt: %s)"
            % (witness.omega_text, format_series(witness.image_in_normalization))
        )
    if extension is not None:
        lines.append(
            "conductor extension:  b = %s, c_S = %d, hk(S) = %s"
            % (list(extension.b_list), extension.c_S, list(extension.hk_S.sequence))
        )
    lines.append("precision used:       %d" % report.precision_used)
    return "\n".join(lines)


def _run_one(command, text, args):
    p = parse_generators(text)
    precision = args.precision
    maxp = args.max_precision
    if command == "analyze":
        if args.as_json:
            return _analyze_json(p, args)
        return _analyze_text(p, args)
    if command == "semigroup":
        report = ring_report(p, precision, maxp)
        sg = report.value_semigroup
        if args.as_json:
            return {"generators": p.texts(), "value_semigroup": _semigroup_json(sg)}
        return "value semigroup:      %s   (conductor %d, genus %d)" % (sg, sg.conductor, sg.genus)
    if command == "hk":
        minimal = drop_redundant(p, max_precision=maxp)
        profile = hk_generators(minimal)
        payload = {
            "generators": p.texts(),
            "minimal_generators": minimal.texts(),
            "hk_sequence": list(profile.sequence),
            "hk_generators": [format_series(g) for g in profile.generators],
            "certificates": [z.text() for z in profile.certificates],
        }
        if args.as_json:
            return payload
        lines = ["Herzog-Kunz sequence: %s" % " < ".join(str(a) for a in profile.sequence)]
        for i, (x, z) in enumerate(zip(profile.generators, profile.certificates), start=1):
            lines.append("x%d = %s   (z%d = %s)" % (i, format_series(x), i, z.text()))
        return "\n".join(lines)
    if command == "member":
        f = parse_series(args.series)
        basis, conductor, _ = analyze_ring(p, precision, maxp)
        member = ring_member(f, basis, conductor)
        if args.as_json:
            return {"series": format_series(f), "member": member}
        return "%s is %sa member" % (format_series(f), "" if member else "not ")
    if command == "equal":
        with open(args.other) as fh:
            other_lines = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
        if not other_lines:
            raise CliUsageError("no parametrization in %s" % args.other)
        q = parse_generators(other_lines[0])
        same = rings_equal(p, q)
        if args.as_json:
            return {"equal": same}
        return "rings are %s" % ("equal" if same else "different")
    if command == "truncate":
        report = ring_report(p, precision, maxp)
        out, d = truncate_parametrization(p, report.hk, report.conductor_degree)
        if args.as_json:
            return {"d": d, "generators": out.texts()}
        return "truncation degree d = %d\ngenerators: %s" % (d, ", ".join(out.texts()))
    if command == "normalize":
        out, subst = normalize_parameter(p)
        if args.as_json:
            return {"substitution": format_series(subst), "generators": out.texts()}
        return "substitution s = %s\ngenerators: %s" % (format_series(subst), ", ".join(out.texts()))
    if command == "extend":
        ext = extend_by_conductor(p)
        if args.as_json:
            return _extension_json(ext)
        return (
            "b_list = %s, s = %d\nS generators: %s\nc_S = %d, hk(S) = %s, i0 = %d"
            % (
                list(ext.b_list),
                ext.s,
                ", ".join(ext.S_gens.texts()),
                ext.c_S,
                list(ext.hk_S.sequence),
                ext.i0,
            )
        )
    if command == "torsion":
        w = torsion_witness(p)
        if args.as_json:
            return {"torsion_witness": _witness_json(w)}
        if w is None:
            return "no witness: conductor ideal is contained in m^2 (or the ring is regular)"
        return "omega = %s   (image in k[[t]]dt: %s)" % (w.omega_text, format_series(w.image_in_normalization))
    raise CliUsageError("unknown command %r" % command)


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise CliUsageError("missing command (one of: %s)" % ", ".join(COMMANDS))
        texts = _load_inputs(args)
        results = [_run_one(args.command, text, args) for text in texts]
        if args.as_json:
            payload = results[0] if len(results) == 1 else results
            print(json.dumps(payload, sort_keys=True, indent=2))
        else:
            print("\n\n".join(str(r) for r in results))
        return 0
    except CliUsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 1
    except ParseError as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return 1
    except MathError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
