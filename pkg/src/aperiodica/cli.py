"""Single command line entry point for every pipeline.

Exit codes: 0 success, 1 domain verdict failure (golden mismatch,
non-primitive rule, method disagreement), 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import modelset, rudin_shapiro, spectral, substitution, words


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return value


def _json_text(payload):
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _f15(x):
    return format(float(x), ".15g")


def _emit(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_json(path):
    with open(path) as fh:
        return json.load(fh)


def _load_rule(path):
    data = _load_json(path)
    if not isinstance(data, dict):
        raise ValueError(f"rule file {path} must hold a JSON object")
    return substitution.rule_from_dict(data)


def _require_primitive(rule):
    if substitution.is_primitive(substitution.matrix(rule)) is not None:
        return None
    return (
        "rule is not primitive: no power up to the Wielandt bound "
        f"{substitution.primitivity_bound(rule)} of the substitution matrix is strictly positive"
    )


def _max_prefix():
    raw = os.environ.get("APERIODICA_MAX_PREFIX")
    return int(raw) if raw else None


def _atlas_payload(alphabet, atlas):
    return {
        "N": atlas.length,
        "count": len(atlas.words),
        "words": [alphabet.text(w) for w in atlas.sorted_words()],
    }


def cmd_atlas(args):
    rule, seed = _load_rule(args.rule)
    problem = _require_primitive(rule)
    if problem:
        print(problem, file=sys.stderr)
        return 1
    by_induction = by_window = None
    if args.method in ("induction", "both"):
        by_induction = substitution.atlas_by_induction(rule, args.n, seed)
    if args.method in ("window", "both"):
        by_window = substitution.atlas_by_window(rule, args.n, seed, max_prefix=_max_prefix())
    payload = _atlas_payload(rule.alphabet, by_induction or by_window)
    agree = True
    if args.method == "both":
        agree = by_induction.words == by_window.words
        payload["methods_agree"] = agree
    _emit(_json_text(payload), args.output)
    return 0 if agree else 1


def _verdict_payload(verdict):
    return {
        "lengths_with_palindromes": sorted(verdict.lengths_with_palindromes),
        "first_excluding_pair": verdict.first_excluding_pair,
        "status": verdict.status,
    }


def cmd_exclude(args):
    rule, seed = _load_rule(args.rule)
    problem = _require_primitive(rule)
    if problem:
        print(problem, file=sys.stderr)
        return 1
    if args.phi and rule.alphabet.symbols != ("a", "b", "c", "d"):
        raise ValueError("--phi needs the four-letter alphabet a, b, c, d")
    chain = substitution.atlas_chain(rule, args.nmax, seed)
    if args.phi:
        atlases = {a.length: frozenset(rudin_shapiro.phi(w) for w in a.words) for a in chain}
    else:
        atlases = {a.length: a.words for a in chain}
    payload = {"nmax": args.nmax, "projection": "phi" if args.phi else None}
    payload.update(_verdict_payload(words.exclusion_verdict(atlases)))
    _emit(_json_text(payload), args.output)
    return 0


def _table_tsv(rows):
    lines = ["n\tcount4\tpal4\tcount2\tpal2"]
    for r in rows:
        lines.append(f"{r.n}\t{r.count4}\t{r.pal4}\t{r.count2}\t{r.pal2}")
    return "\n".join(lines) + "\n"


def cmd_rs_table(args):
    rows = rudin_shapiro.table1(args.nmax)
    if args.format == "tsv":
        text = _table_tsv(rows)
    else:
        verdict4, verdict2 = rudin_shapiro.palindrome_verdicts(args.nmax)
        text = _json_text(
            {
                "rows": [
                    {"n": r.n, "count4": r.count4, "pal4": r.pal4, "count2": r.count2, "pal2": r.pal2}
                    for r in rows
                ],
                "exclusion_verdicts": {
                    "quaternary": _verdict_payload(verdict4),
                    "binary": _verdict_payload(verdict2),
                },
            }
        )
    _emit(text, args.output)
    if args.golden:
        golden = rudin_shapiro.golden_table1()
        depth = min(len(rows), len(golden))
        bad = []
        for computed, expected in zip(rows[:depth], golden[:depth]):
            for cell in ("n", "count4", "pal4", "count2", "pal2"):
                got, want = getattr(computed, cell), getattr(expected, cell)
                if got != want:
                    bad.append(f"row {expected.n} {cell}: got {got!r}, expected {want!r}")
        if bad:
            print("golden mismatch:", file=sys.stderr)
            for line in bad:
                print("  " + line, file=sys.stderr)
            return 1
    return 0


def _parse_field_value(field, raw):
    if isinstance(raw, str):
        return field.element(Fraction(raw))
    if isinstance(raw, int):
        return field.element(raw)
    if isinstance(raw, dict):
        return field.element(Fraction(raw.get("p", 0)), Fraction(raw.get("q", 0)))
    raise ValueError(f"bad field value {raw!r}: use 'p/q' or {{'p': ..., 'q': ...}}")


def _load_modelset_spec(path, r_override):
    data = _load_json(path)
    field = modelset.QuadField(int(data["d"]), data.get("omega", modelset.OMEGA_SQRT))
    lattice = modelset.LatticeSpec(field)
    window = modelset.Window(
        _parse_field_value(field, data["window"]["lo"]),
        _parse_field_value(field, data["window"]["hi"]),
    )
    radius = Fraction(r_override if r_override is not None else data.get("R", "100"))
    return lattice, window, radius


def _element_payload(lattice, z):
    payload = {"value": _f15(z)}
    mn = lattice.coords(z)
    if mn is not None:
        payload["m"], payload["n"] = mn
    return payload


def cmd_modelset(args):
    lattice, window, radius = _load_modelset_spec(args.spec, args.radius)
    report = modelset.check_generic(window, lattice)
    suggestion = None if report.w4 else modelset.genericity_shift(window, lattice)
    if args.action == "check-window":
        payload = {
            "W1": report.w1,
            "W2": report.w2,
            "W3": report.w3,
            "W4": report.w4,
            "witnesses": [str(e) for e in report.boundary_hits],
            "suggested_shift": str(suggestion) if suggestion is not None else None,
        }
        _emit(_json_text(payload), args.output)
        return 0
    payload = {
        "d": lattice.field.d,
        "omega": lattice.field.omega_style,
        "window": {"lo": str(window.lo), "hi": str(window.hi)},
        "R": str(radius),
    }
    if not report.w4:
        payload["warning"] = "window is not generic: " + ", ".join(
            str(e) for e in report.boundary_hits
        )
        payload["suggested_shift"] = str(suggestion) if suggestion is not None else None
    patch = modelset.enumerate_patch(lattice, window, radius)
    if args.action == "generate":
        seq = modelset.gaps_to_letters(patch) if len(patch) >= 2 else None
        payload["count"] = len(patch)
        payload["points"] = [
            {"m": m, "n": n, "value": _f15(v)} for (m, n), v in zip(patch.coords, patch.values)
        ]
        if seq is not None:
            payload["legend"] = [
                {"letter": seq.alphabet.symbols[i], **_element_payload(lattice, gap)}
                for i, gap in enumerate(seq.gaps)
            ]
            payload["sequence"] = seq.alphabet.text(seq.letters)
        _emit(_json_text(payload), args.output)
        return 0
    if args.action == "symmetry":
        witness = modelset.inversion_witness(patch)
        payload["count"] = len(patch)
        payload["centro_symmetry_center"] = str(modelset.centro_symmetry_center(window))
        payload["inversion_witness"] = (
            _element_payload(lattice, witness) if witness is not None else None
        )
        _emit(_json_text(payload), args.output)
        return 0
    seq = modelset.gaps_to_letters(patch)
    scan = modelset.palindrome_scan(seq.letters)
    payload["sequence_length"] = len(seq.letters)
    payload["max_palindrome_length"] = scan[0][1] if scan else 0
    payload["palindromes"] = [
        {"center2": c2, "length": length} for c2, length in scan[: args.top]
    ]
    _emit(_json_text(payload), args.output)
    return 0


def _parse_values(text, alphabet):
    mapping = {}
    for part in text.split(","):
        sym, eq, val = part.partition("=")
        if not eq:
            raise ValueError(f"bad --values entry {part!r}: use letter=value")
        mapping[alphabet.index(sym.strip())] = float(val)
    missing = [s for i, s in enumerate(alphabet.symbols) if i not in mapping]
    if missing:
        raise ValueError(f"--values assigns nothing to {missing}")
    if len(set(mapping.values())) != len(mapping):
        raise ValueError("potential values must be pairwise different")
    return mapping


def cmd_spectrum(args):
    if args.rule:
        rule, seed = _load_rule(args.rule)
        problem = _require_primitive(rule)
        if problem:
            print(problem, file=sys.stderr)
            return 1
        if not args.values:
            raise ValueError("--values is required together with --rule")
        mapping = _parse_values(args.values, rule.alphabet)
        prefix = substitution.FixedPointStream(rule, seed).prefix(args.size)
        op = spectral.build_finite(prefix, mapping, args.coupling, boundary=args.boundary)
    else:
        op = spectral.TridiagonalOperator((0.0,) * args.size)
    eigs = spectral.eigenvalues(op, tol=args.tol)
    lo, hi = eigs[0] - 0.5, eigs[-1] + 0.5
    grid = [lo + (hi - lo) * i / 200 for i in range(201)]
    table = [(e, spectral.ids(eigs, e)) for e in grid]
    if args.format == "tsv":
        lines = ["E\tids"] + [f"{_f15(e)}\t{_f15(v)}" for e, v in table]
        text = "\n".join(lines) + "\n"
    else:
        text = _json_text(
            {
                "size": op.size,
                "lambda": args.coupling,
                "boundary": args.boundary,
                "eigenvalues": eigs,
                "ids": [[e, v] for e, v in table],
            }
        )
    _emit(text, args.output)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="aperiodica",
        description="Factor atlases, palindrome exclusion, Rudin-Shapiro tables, "
        "cut-and-project model sets and finite tight-binding probes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_atlas = sub.add_parser("atlas", help="factor atlas of a substitution rule")
    p_atlas.add_argument("--rule", required=True, help="rule JSON file")
    p_atlas.add_argument("-N", dest="n", type=_positive_int, required=True)
    p_atlas.add_argument("--method", choices=("induction", "window", "both"), default="induction")
    p_atlas.add_argument("-o", "--output")
    p_atlas.set_defaults(func=cmd_atlas)

    p_excl = sub.add_parser("exclude", help="palindrome exclusion verdict")
    p_excl.add_argument("--rule", required=True)
    p_excl.add_argument("--nmax", type=_positive_int, required=True)
    p_excl.add_argument("--phi", action="store_true", help="collapse a,b->0 and c,d->1 first")
    p_excl.add_argument("-o", "--output")
    p_excl.set_defaults(func=cmd_exclude)

    p_table = sub.add_parser("rs-table", help="Rudin-Shapiro complexity/palindrome table")
    p_table.add_argument("--nmax", type=_positive_int, default=20)
    p_table.add_argument("--golden", action="store_true", help="compare against the stored table")
    p_table.add_argument("--format", choices=("json", "tsv"), default="json")
    p_table.add_argument("-o", "--output")
    p_table.set_defaults(func=cmd_rs_table)

    p_model = sub.add_parser("modelset", help="cut-and-project pipelines")
    p_model.add_argument("--spec", required=True, help="model set JSON file")
    p_model.add_argument(
        "--action",
        choices=("generate", "check-window", "symmetry", "palindromes"),
        default="generate",
    )
    p_model.add_argument("-R", dest="radius", help="override the spec's radius (rational)")
    p_model.add_argument("--top", type=_positive_int, default=100, help="palindrome rows to emit")
    p_model.add_argument("-o", "--output")
    p_model.set_defaults(func=cmd_modelset)

    p_spec = sub.add_parser("spectrum", help="finite-section eigenvalues and IDS")
    p_spec.add_argument("--rule", help="substitution rule supplying the potential letters")
    p_spec.add_argument("--values", help="letter values, e.g. a=0,b=1")
    p_spec.add_argument("--lambda", dest="coupling", type=float, default=1.0)
    p_spec.add_argument("--size", type=_positive_int, required=True)
    p_spec.add_argument("--tol", type=float, default=1e-12)
    p_spec.add_argument(
        "--boundary",
        choices=(spectral.BOUNDARY_DIRICHLET, spectral.BOUNDARY_NEUMANN),
        default=spectral.BOUNDARY_DIRICHLET,
    )
    p_spec.add_argument("--format", choices=("json", "tsv"), default="json")
    p_spec.add_argument("-o", "--output")
    p_spec.set_defaults(func=cmd_spectrum)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        OSError,
        json.JSONDecodeError,
        ValueError,
        KeyError,
        substitution.PrefixLimitError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console_main():
    sys.exit(main())


if __name__ == "__main__":
    console_main()
