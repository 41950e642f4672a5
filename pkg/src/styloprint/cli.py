"""Command-line interface.

Exit status: 0 on success, 1 on usage errors, 2 on data errors.
"""
import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .attribute_filter import AttributeCatalog, correlation_matrix, prune_dependent
from .bistats import genre_report
from .clusgen import GaParams, MedianModel, evaluate, loo_evaluate, train
from .cluster import cluster_report
from .corpus import load_corpus, tokenize
from .features import (
    DEFAULT_ENTROPY_WINDOW,
    extract_features,
    read_feature_csv,
    write_feature_csv,
)
from .lexicon import Lexica
from .plots import ring_chart, scatter_matrix

USAGE_ERROR = 1
DATA_ERROR = 2


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _write_json(path, obj):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, ensure_ascii=False)
        fh.write("\n")


def _outdir(args):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _echo_config(args, out):
    cfg = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    cfg["version"] = __version__
    _write_json(out / "run_config.json", cfg)


def _lexica(args):
    return Lexica.load(args.stopwords, args.freq_table, args.pos_lexicon, args.suffix_rules)


def _ga_params(args):
    return GaParams(
        population_size=args.population,
        generations=args.generations,
        crossover_rate=args.crossover_rate,
        mutation_rate=args.mutation_rate,
        mutation_sigma=args.mutation_sigma,
        elitism_count=args.elitism,
        seed=args.seed,
    )


def _load_table(args):
    table = read_feature_csv(args.features)
    if getattr(args, "catalog", None):
        kept = AttributeCatalog.from_csv(args.catalog).kept
        table = table.select([n for n in table.names if n in kept])
    if getattr(args, "genre", None):
        table = table.subset([g == args.genre for g in table.genres])
        if not table.ids:
            raise ValueError(f"no documents of genre {args.genre!r}")
    return table


# ---------------------------------------------------------------------------
# subcommands


def cmd_ingest(args):
    docs = load_corpus(args.corpus)
    authors = sorted({d.author for d in docs})
    genres = sorted({d.genre for d in docs})
    print(f"{len(docs)} documents, {len(authors)} authors, {len(genres)} genres")
    for g in genres:
        print(f"  {g}: {sum(d.genre == g for d in docs)}")


def _extract(args, out):
    docs = load_corpus(args.corpus)
    lex = _lexica(args)
    vectors = [extract_features(d, tokenize(d.text), lex, args.entropy_window) for d in docs]
    path = out / "features.csv"
    write_feature_csv(path, docs, vectors)
    return path


def cmd_extract(args):
    out = _outdir(args)
    path = _extract(args, out)
    _echo_config(args, out)
    print(path)


def _filter(args, out, table):
    corr = correlation_matrix(table.X, table.names)
    priority = None
    if args.priority == "chi2":
        genre = args.genre or sorted(set(table.genres))[0]
        full = read_feature_csv(args.features) if args.genre else table
        full = full.select(table.names)
        priority = genre_report(full.X, full.genres, genre, full.names, args.bins).ranking()
    catalog = prune_dependent(corr, args.threshold, priority)
    catalog.to_csv(out / "catalog.csv")
    kept = catalog.kept or list(table.names[:1])
    (out / "scatter.svg").write_text(scatter_matrix(table.X, table.names, kept, table.authors), encoding="utf-8")
    return catalog


def cmd_filter(args):
    out = _outdir(args)
    table = _load_table(args)
    catalog = _filter(args, out, table)
    _echo_config(args, out)
    print(f"kept {len(catalog.kept)} of {len(catalog.entries)} attributes")


def _stats(args, out, table):
    genres = [args.genre] if args.genre else sorted(set(table.genres))
    reports = {g: genre_report(table.X, table.genres, g, table.names, args.bins) for g in genres}
    doc = {
        "genre_shares": next(iter(reports.values())).genre_shares,
        "bins": args.bins,
        "genres": {g: r.to_dict()["attributes"] for g, r in reports.items()},
    }
    _write_json(out / "genre_report.json", doc)
    if args.svg:
        for g, rep in reports.items():
            d = out / "rings" / g
            d.mkdir(parents=True, exist_ok=True)
            for s in rep.per_attribute:
                svg = ring_chart(f"{s.attribute} / {g}", s.within_genre_hist, s.population_hist, s.bins.labels())
                (d / f"{s.attribute}.svg").write_text(svg, encoding="utf-8")
    return doc


def cmd_stats(args):
    out = _outdir(args)
    table = read_feature_csv(args.features)
    _stats(args, out, table)
    _echo_config(args, out)
    print(out / "genre_report.json")


def _cluster(args, out, table):
    rep = cluster_report(table.X, table.names, table.ids, table.authors, table.genres,
                         args.alpha, args.passes, args.seed)
    _write_json(out / "clusters.json", rep)
    return rep


def cmd_cluster(args):
    out = _outdir(args)
    rep = _cluster(args, out, _load_table(args))
    _echo_config(args, out)
    print(f"{rep['n_clusters']} clusters (converged={rep['converged']})")


def cmd_train(args):
    out = _outdir(args)
    table = _load_table(args)
    model = train(table.X, table.authors, _ga_params(args), table.names)
    model.save(out / "model.json")
    _echo_config(args, out)
    print(f"leave-one-out fitness {model.fitness['loo_accuracy']:.3f}")


def cmd_classify(args):
    model = MedianModel.load(args.model)
    lex = _lexica(args)
    for path in args.documents:
        text = Path(path).read_bytes().decode("utf-8")
        fv = extract_features(text, tokenize(text), lex, args.entropy_window)
        row = np.array([[getattr(fv, a) for a in model.input_attributes]], dtype=float)
        print(f"{path}\t{model.predict(row)[0]}")


def cmd_evaluate(args):
    out = _outdir(args)
    table = _load_table(args)
    if args.model:
        model = MedianModel.load(args.model)
        X = table.select(model.input_attributes).X
        report = evaluate(model, X, table.authors, table.genres, table.ids)
        report["protocol"] = "holdout"
    else:
        report = loo_evaluate(table.X, table.authors, table.genres, _ga_params(args), table.names, table.ids)
    _write_json(out / "rates.json", report)
    _echo_config(args, out)
    print(f"overall accuracy {report['overall_accuracy']:.3f}")


def cmd_report(args):
    out = _outdir(args)
    features = _extract(args, out)
    table = read_feature_csv(features)
    catalog = _filter(args, out, table)
    _stats(args, out, table)
    _cluster(args, out, table)
    train_table = table.select(catalog.kept) if args.use_kept else table
    model = train(train_table.X, train_table.authors, _ga_params(args), train_table.names)
    model.save(out / "model.json")
    rates = loo_evaluate(train_table.X, train_table.authors, train_table.genres, _ga_params(args),
                         train_table.names, train_table.ids)
    _write_json(out / "rates.json", rates)
    _echo_config(args, out)
    print(f"report written to {out}; leave-one-out accuracy {rates['overall_accuracy']:.3f}")


# ---------------------------------------------------------------------------
# parser


def _add_out(p):
    p.add_argument("--out", required=True, help="output directory")


def _add_lexica(p):
    g = p.add_argument_group("lexica")
    g.add_argument("--stopwords", help="stop word list (one per line)")
    g.add_argument("--freq-table", help="frequency table TSV token<TAB>count")
    g.add_argument("--pos-lexicon", help="POS lexicon TSV token<TAB>class")
    g.add_argument("--suffix-rules", help="suffix rules TSV suffix<TAB>class")
    g.add_argument("--entropy-window", type=int, default=DEFAULT_ENTROPY_WINDOW)


def _add_filter(p):
    p.add_argument("--threshold", type=float, default=0.7, help="|r| at which attributes are dependent")
    p.add_argument("--priority", choices=("input", "chi2"), default="input",
                   help="visit order: input column order or descending chi-square")


def _add_bins(p):
    p.add_argument("--bins", type=int, default=5, help="equal-frequency bins per attribute")


def _add_cluster(p):
    p.add_argument("--alpha", type=float, default=0.5, help="similarity tolerance in standard deviations")
    p.add_argument("--passes", type=int, default=10, help="maximum clustering passes")


def _add_ga(p):
    g = p.add_argument_group("genetic algorithm")
    d = GaParams()
    g.add_argument("--population", type=int, default=d.population_size)
    g.add_argument("--generations", type=int, default=d.generations)
    g.add_argument("--crossover-rate", type=float, default=d.crossover_rate)
    g.add_argument("--mutation-rate", type=float, default=d.mutation_rate)
    g.add_argument("--mutation-sigma", type=float, default=d.mutation_sigma)
    g.add_argument("--elitism", type=int, default=d.elitism_count)


def _add_seed(p):
    p.add_argument("--seed", type=int, default=42)


def _add_config(p):
    p.add_argument("--config", help="key=value config file; command-line flags take precedence")


def build_parser():
    parser = Parser(prog="styloprint", description="Stylometric author profiling.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=Parser)
    sub.required = True

    p = sub.add_parser("ingest", help="validate a corpus manifest")
    p.add_argument("--corpus", required=True)
    _add_config(p)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("extract", help="write the per-document feature CSV")
    p.add_argument("--corpus", required=True)
    _add_out(p)
    _add_lexica(p)
    _add_config(p)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("filter", help="prune dependent attributes; write catalog CSV and scatter SVG")
    p.add_argument("--features", required=True)
    p.add_argument("--genre", help="restrict to documents of this genre")
    _add_out(p)
    _add_filter(p)
    _add_bins(p)
    _add_config(p)
    p.set_defaults(func=cmd_filter)

    p = sub.add_parser("stats", help="chi-square ranking of attributes against genre")
    p.add_argument("--features", required=True)
    p.add_argument("--genre", help="report only this genre")
    p.add_argument("--svg", action="store_true", help="also write inner/outer ring charts")
    _add_out(p)
    _add_bins(p)
    _add_config(p)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("cluster", help="demographic clustering report")
    p.add_argument("--features", required=True)
    p.add_argument("--catalog", help="use only attributes kept in this catalog CSV")
    p.add_argument("--genre", help="restrict to documents of this genre")
    _add_out(p)
    _add_cluster(p)
    _add_seed(p)
    _add_config(p)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("train", help="train the median-vector classifier")
    p.add_argument("--features", required=True)
    p.add_argument("--catalog", help="use only attributes kept in this catalog CSV")
    _add_out(p)
    _add_ga(p)
    _add_seed(p)
    _add_config(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("classify", help="print the predicted author of text files")
    p.add_argument("--model", required=True)
    p.add_argument("documents", nargs="+", help="UTF-8 text files")
    _add_lexica(p)
    _add_config(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("evaluate", help="classification rates (holdout with --model, else leave-one-out)")
    p.add_argument("--features", required=True)
    p.add_argument("--model", help="trained model; omit for leave-one-out retraining")
    p.add_argument("--catalog", help="use only attributes kept in this catalog CSV")
    _add_out(p)
    _add_ga(p)
    _add_seed(p)
    _add_config(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("report", help="run the whole pipeline into one directory")
    p.add_argument("--corpus", required=True)
    p.add_argument("--use-kept", action="store_true", help="train on the filtered attributes only")
    p.add_argument("--svg", action="store_true", help="also write ring charts")
    _add_out(p)
    _add_lexica(p)
    _add_filter(p)
    _add_bins(p)
    _add_cluster(p)
    _add_ga(p)
    _add_seed(p)
    _add_config(p)
    p.set_defaults(func=cmd_report, genre=None, features=None)
    return parser


_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def read_config(path):
    cfg = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            cfg[key.replace("-", "_")] = value
    return cfg


def _config_path(argv):
    for i, tok in enumerate(argv):
        if tok == "--config" and i + 1 < len(argv):
            return argv[i + 1]
        if tok.startswith("--config="):
            return tok.split("=", 1)[1]
    return None


def _apply_config(parser, argv):
    """Install config-file values as defaults of the chosen subcommand."""
    path = _config_path(argv)
    if path is None:
        return
    sub_action = parser._subparsers._group_actions[0]
    command = next((a for a in argv if a in sub_action.choices), None)
    if command is None:
        return
    sub = sub_action.choices[command]
    actions = {a.dest: a for a in sub._actions}
    defaults = {}
    for key, value in read_config(path).items():
        action = actions.get(key)
        if action is None or key in ("config", "help", "func"):
            raise UsageError(f"config key {key!r} is not an option of {command!r}")
        if isinstance(action, argparse._StoreTrueAction):
            low = value.lower()
            if low not in _TRUE | _FALSE:
                raise UsageError(f"config key {key!r} expects a boolean")
            defaults[key] = low in _TRUE
        else:
            defaults[key] = value
        action.required = False
    sub.set_defaults(**defaults)


def main(argv=None):
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        _apply_config(parser, argv)
        args = parser.parse_args(argv)
        args.func(args)
    except UsageError as exc:
        print(f"styloprint: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    except (ValueError, OSError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"styloprint: error: {msg}", file=sys.stderr)
        return DATA_ERROR
    return 0


if __name__ == "__main__":
    sys.exit(main())
