"""Command-line entry point: ``aspforge <subcommand> ...``.

Exit status is 0 on success, 1 on a domain error (bad program, failed
generation, unknown sample id, ...) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path

import yaml

from . import evaluator, samplegen
from .core import AspError, canonicalize, format_literal_set
from .parser import ParseError, parse_atom, parse_literal_set, parse_program
from .solver import DEFAULT_MAX_LITERALS, classify, entail, enumerate_answer_sets, verify
from .textualizer import textualize_program

CONFIG_ENV = "ASPFORGE_CONFIG"


class UsageError(Exception):
    pass


FORMATS = """\
file formats:
  .lp          DLV-style program text: `h1 | h2 :- b1, not -b2.`, `% comment`
  candidate    JSON list of literal strings, or text like {p("a"), -q}
  samples      JSONL, one record per line (id, task, program_symbolic,
               program_textual, query, candidate, label, answer_sets, metadata)
  predictions  JSONL, {"id", "task", "label"} or {"id", "task", "answer_sets"}
  config       YAML or JSON mapping of generation settings (see --show-config)
"""


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _load_program(args) -> object:
    return parse_program(_read(args.program), strict_arity=not args.lenient_arity, source=args.program)


def _load_jsonl(path: str) -> list[dict]:
    out = []
    for n, line in enumerate(_read(path).splitlines(), 1):
        if line.strip():
            try:
                out.append(json.loads(line))
            except json.JSONDecodeError as e:
                raise AspError(f"{path}:{n}: invalid JSON: {e.msg}") from None
    return out


def _write(path: str | None, text: str, force: bool = True) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    p = Path(path)
    if p.exists() and not force:
        raise UsageError(f"{path} exists; pass --force to overwrite")
    p.write_text(text, encoding="utf-8")


# ---------------------------------------------------------------- generate


def load_config(path: str | None) -> dict:
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return {}
    data = yaml.safe_load(_read(path)) or {}
    if not isinstance(data, dict):
        raise UsageError(f"config {path} must be a key-value mapping")
    return data


def _config_from_args(args) -> samplegen.SampleConfig:
    values = load_config(args.config)
    overrides = {
        "max_literals": args.max_literals,
        "p_strong_neg": args.p_strong_neg,
        "p_default_neg": args.p_default_neg,
        "max_body_predicates": args.max_body_predicates,
        "n_rules": args.n_rules,
        "arity": args.arity,
        "styles": args.styles,
        "lexicon": args.lexicon,
        "min_answer_sets": args.min_answer_sets,
    }
    values.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return samplegen.SampleConfig.from_dict(values)
    except (TypeError, ValueError) as e:
        raise UsageError(f"bad configuration: {e}") from None


def cmd_generate(args) -> int:
    config = _config_from_args(args)
    if args.show_config:
        print(json.dumps(config.to_dict(), indent=2))
        return 0
    if args.task is None or args.num is None:
        raise UsageError("generate needs --task and --num")
    if args.num < 0 or args.jobs < 1:
        raise UsageError("--num must be >= 0 and --jobs >= 1")
    seed = args.seed if args.seed is not None else random.SystemRandom().randrange(2**31)
    print(f"seed: {seed}", file=sys.stderr)
    if args.output not in (None, "-") and Path(args.output).exists() and not args.force:
        raise UsageError(f"{args.output} exists; pass --force to overwrite")
    recs = samplegen.generate_batch(args.task, args.num, seed, config, jobs=args.jobs)
    text = "".join(json.dumps(r.to_json(), ensure_ascii=False) + "\n" for r in recs)
    _write(args.output, text)
    return 0


# ---------------------------------------------------------------- reasoning


def cmd_solve(args) -> int:
    program = _load_program(args)
    limit = args.limit if args.all else 1
    sets = enumerate_answer_sets(program, limit=limit, max_literals=args.max_literals)
    if args.text:
        for s in sets:
            print(format_literal_set(s))
        if not sets:
            print("no answer set")
    else:
        print(json.dumps([[str(x) for x in canonicalize(s)] for s in sets]))
    return 0


def _load_candidate(text: str):
    text = text.strip()
    if text.startswith("["):
        items = json.loads(text)
        return parse_literal_set(", ".join(items)) if items else []
    return parse_literal_set(text)


def cmd_verify(args) -> int:
    program = _load_program(args)
    if (args.candidate is None) == (args.candidate_text is None):
        raise UsageError("give exactly one of --candidate FILE or --candidate-text TEXT")
    cand = _load_candidate(args.candidate_text if args.candidate is None else _read(args.candidate))
    d = verify(program, cand, max_literals=args.max_literals)
    if d.verdict:
        print("answer set")
    else:
        extra = f"; witness {format_literal_set(d.witness)}" if d.witness is not None else ""
        print(f"not an answer set ({d.failure.value}{extra})")
    return 0


def cmd_entail(args) -> int:
    program = _load_program(args)
    print(entail(program, parse_atom(args.query), max_literals=args.max_literals).value)
    return 0


def cmd_classify(args) -> int:
    r = classify(_load_program(args))
    print(json.dumps({"positive": r.positive, "stratified": r.stratified, "head_cycle_free": r.head_cycle_free}))
    return 0


def cmd_textualize(args) -> int:
    for line in textualize_program(_load_program(args)):
        print(line)
    return 0


# ---------------------------------------------------------------- scoring


def cmd_eval(args) -> int:
    golds = _load_jsonl(args.gold)
    preds = _load_jsonl(args.pred)
    reports = evaluator.evaluate(golds, preds)
    for rep in reports.values():
        print(rep.table())
    if args.report:
        text = json.dumps({t: r.to_json() for t, r in reports.items()}, indent=2, sort_keys=True) + "\n"
        _write(args.report, text, force=args.force)
    return 0


def cmd_stats(args) -> int:
    stats = evaluator.dataset_stats(_load_jsonl(args.samples))
    if args.json:
        _write(args.output, json.dumps(stats, indent=2, sort_keys=True) + "\n", force=args.force)
    else:
        _write(args.output, evaluator.stats_table(stats) + "\n", force=args.force)
    return 0


# ---------------------------------------------------------------- parser


def _range(text: str) -> list[int]:
    try:
        lo, _, hi = text.partition(",")
        return [int(lo), int(hi or lo)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO,HI but got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="aspforge",
        description="Answer set programming reference engine and benchmark generator.",
        epilog=FORMATS,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def program_cmd(name: str, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_, description=help_, epilog=FORMATS,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        p.add_argument("program", help=".lp file ('-' for stdin)")
        p.add_argument("--max-literals", type=int, default=DEFAULT_MAX_LITERALS,
                       help="bound on derivable ground literals (default %(default)s)")
        p.add_argument("--lenient-arity", action="store_true",
                       help="treat one name used with several arities as several predicates")
        return p

    g = sub.add_parser("generate", help="generate benchmark samples as JSONL", epilog=FORMATS,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    g.add_argument("--task", type=str.upper, choices=samplegen.TASKS, help="ase, asv or asc")
    g.add_argument("--num", type=int, help="number of samples")
    g.add_argument("--seed", type=int, help="master seed (random if omitted; always echoed to stderr)")
    g.add_argument("-o", "--output", help="output JSONL path (default stdout)")
    g.add_argument("--force", action="store_true", help="overwrite an existing output file")
    g.add_argument("--jobs", type=int, default=1, help="worker processes; output does not depend on it")
    g.add_argument("--config", help=f"YAML/JSON settings file (default: ${CONFIG_ENV})")
    g.add_argument("--show-config", action="store_true", help="print the effective settings and exit")
    g.add_argument("--max-literals", type=int, help="ground-size bound per program")
    g.add_argument("--p-strong-neg", type=float, help="strong-negation probability per predicate")
    g.add_argument("--p-default-neg", type=float, help="default-negation probability per predicate")
    g.add_argument("--max-body-predicates", type=int, help="max predicates in one rule body")
    g.add_argument("--n-rules", type=_range, metavar="LO,HI", help="range of rule-node counts")
    g.add_argument("--arity", type=_range, metavar="LO,HI", help="predicate arity range")
    g.add_argument("--styles", nargs="+", choices=samplegen.STYLES, help="predicate styles to draw from")
    g.add_argument("--lexicon", help="TSV triple file head<TAB>relation<TAB>tail")
    g.add_argument("--min-answer-sets", type=int, help="ASC: minimum answer sets per program")
    g.set_defaults(func=cmd_generate)

    s = program_cmd("solve", "print answer sets as a JSON array")
    s.add_argument("--all", action="store_true", help="all answer sets instead of the first")
    s.add_argument("--limit", type=int, help="with --all, stop after this many")
    s.add_argument("--text", action="store_true", help="one {..} set per line instead of JSON")
    s.set_defaults(func=cmd_solve)

    v = program_cmd("verify", "check whether a candidate is an answer set")
    v.add_argument("--candidate", help="candidate file (JSON list or {..} text)")
    v.add_argument("--candidate-text", help="candidate given inline")
    v.set_defaults(func=cmd_verify)

    e = program_cmd("entail", "truth state of a ground query in the unique answer set")
    e.add_argument("--query", required=True, help="ground atom, e.g. 'p(\"a\")'")
    e.set_defaults(func=cmd_entail)

    program_cmd("classify", "positive / stratified / head-cycle-free flags as JSON").set_defaults(func=cmd_classify)
    program_cmd("textualize", "render the program as sentences").set_defaults(func=cmd_textualize)

    ev = sub.add_parser("eval", help="score predictions against gold samples", epilog=FORMATS,
                        formatter_class=argparse.RawDescriptionHelpFormatter)
    ev.add_argument("--gold", required=True, help="gold samples JSONL")
    ev.add_argument("--pred", required=True, help="predictions JSONL")
    ev.add_argument("--report", help="write the JSON report here")
    ev.add_argument("--force", action="store_true", help="overwrite an existing report")
    ev.set_defaults(func=cmd_eval)

    st = sub.add_parser("stats", help="dataset statistics of a samples file", epilog=FORMATS,
                        formatter_class=argparse.RawDescriptionHelpFormatter)
    st.add_argument("samples", help="samples JSONL")
    st.add_argument("--json", action="store_true", help="JSON instead of a table")
    st.add_argument("-o", "--output", help="write here instead of stdout")
    st.add_argument("--force", action="store_true", help="overwrite an existing output file")
    st.set_defaults(func=cmd_stats)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"aspforge: error: {e}", file=sys.stderr)
        return 2
    except ParseError as e:
        print(str(e), file=sys.stderr)
        return 1
    except (AspError, OSError, json.JSONDecodeError, yaml.YAMLError) as e:
        print(f"aspforge: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
