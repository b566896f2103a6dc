"""Command-line entry point: extract, evaluate, compare, neighbors.

Exit codes: 0 on success, 1 for input/output failures, 2 for usage or
configuration errors. All commands are deterministic for a fixed input
and configuration, including under ``--jobs`` parallelism.
"""

import argparse
import dataclasses
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from types import SimpleNamespace
from typing import Optional

from .baselines import CorpusStats, build_corpus_stats
from .config import METHOD_NAMES, RunConfig
from .embeddings import (
    EmbeddingLoadError,
    EmbeddingStore,
    UndefinedSimilarityError,
    cosine_similarity,
    load_word2vec_binary,
    load_word2vec_text,
    phrase_vector,
)
from .evaluation import (
    aggregate_scores,
    filter_present_gold,
    load_dataset,
    score_document,
)
from .pipeline import COMPOSITE_COMPONENTS, extract_keyphrases
from .textproc import Document, parse_pretagged, pos_tag, tokenize

EMBEDDINGS_ENV = "PHRASERANK_EMBEDDINGS"

# Methods whose scores come from document-frequency statistics.
_CORPUS_METHODS = ("tfidf", "ensemble-tfidf", "kemeny")
# Methods that walk the embedding-weighted phrase graph.
_EMBEDDING_METHODS = ("neighborhood", "ensemble-tfidf", "kemeny")

_UNSET = object()


class CliError(Exception):
    def __init__(self, exit_code: int, message: str):
        super().__init__(message)
        self.exit_code = exit_code


def _threshold(text: str):
    if text.lower() in ("na", "none"):
        return None
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected a number or 'na', got {text!r}"
        ) from None


def _add_config_options(sub: argparse.ArgumentParser, with_method=True):
    sub.add_argument(
        "--window", type=int, default=_UNSET, metavar="W",
        help="co-occurrence window in tokens",
    )
    sub.add_argument(
        "--top", type=int, default=_UNSET, metavar="M",
        help="number of keyphrases to keep",
    )
    sub.add_argument(
        "--t1", type=_threshold, default=_UNSET, metavar="T",
        help="similarity threshold for edge neighborhoods ('na' disables)",
    )
    sub.add_argument(
        "--t2", type=_threshold, default=_UNSET, metavar="T",
        help="similarity threshold for the jump prior ('na' disables)",
    )
    sub.add_argument(
        "--damping", type=float, default=_UNSET, metavar="D",
        help="random-walk damping factor",
    )
    sub.add_argument(
        "--tolerance", type=float, default=_UNSET, metavar="EPS",
        help="L1 convergence tolerance",
    )
    sub.add_argument(
        "--max-iterations", type=int, default=_UNSET, metavar="N",
        help="power-iteration cap",
    )
    sub.add_argument(
        "--embeddings", default=None, metavar="FILE",
        help=f"word vector file (default: ${EMBEDDINGS_ENV})",
    )
    sub.add_argument(
        "--no-single-word-filter", dest="single_word_filter",
        action="store_false", default=True,
        help="keep single words covered by a longer kept phrase",
    )
    if with_method:
        sub.add_argument(
            "--method", choices=METHOD_NAMES, default=_UNSET,
            help="ranking method",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phraserank",
        description="Keyphrase extraction via embedding-weighted random walks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_extract = sub.add_parser(
        "extract", help="rank keyphrases for one or more documents"
    )
    p_extract.add_argument(
        "inputs", nargs="+", metavar="FILE",
        help="document files ('-' reads standard input; .pos files are pretagged)",
    )
    _add_config_options(p_extract)
    p_extract.add_argument(
        "--corpus", metavar="DIR", default=None,
        help="directory of documents for tf-idf statistics",
    )
    p_extract.add_argument(
        "--format", choices=("plain", "tsv", "json"), default="plain"
    )
    p_extract.add_argument("--jobs", type=int, default=1, metavar="N")
    p_extract.set_defaults(handler=cmd_extract)

    p_eval = sub.add_parser(
        "evaluate", help="score one method against a gold-keyed dataset"
    )
    p_eval.add_argument("dataset", metavar="DIR")
    _add_config_options(p_eval)
    p_eval.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p_eval.add_argument("--jobs", type=int, default=1, metavar="N")
    p_eval.add_argument(
        "--macro", action="store_true", default=False,
        help="average per-document precision/recall instead of pooling counts",
    )
    p_eval.add_argument(
        "--keep-absent-gold", action="store_true", default=False,
        help="score against all gold phrases, not just those present in the text",
    )
    p_eval.set_defaults(handler=cmd_evaluate)

    p_cmp = sub.add_parser(
        "compare", help="score several methods side by side"
    )
    p_cmp.add_argument("dataset", metavar="DIR")
    _add_config_options(p_cmp, with_method=False)
    p_cmp.add_argument(
        "--methods", default=",".join(METHOD_NAMES), metavar="A,B,...",
        help="comma-separated method names",
    )
    p_cmp.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p_cmp.add_argument("--jobs", type=int, default=1, metavar="N")
    p_cmp.add_argument("--macro", action="store_true", default=False)
    p_cmp.add_argument("--keep-absent-gold", action="store_true", default=False)
    p_cmp.set_defaults(handler=cmd_compare)

    p_nb = sub.add_parser(
        "neighbors", help="list candidate phrases similar to a query phrase"
    )
    p_nb.add_argument("phrase", metavar="PHRASE")
    p_nb.add_argument(
        "--candidates", required=True, metavar="FILE",
        help="file with one candidate phrase per line",
    )
    p_nb.add_argument(
        "--t1", type=_threshold, default=_UNSET, metavar="T",
        help="minimum similarity to report ('na' reports all)",
    )
    p_nb.add_argument(
        "--embeddings", default=None, metavar="FILE",
        help=f"word vector file (default: ${EMBEDDINGS_ENV})",
    )
    p_nb.set_defaults(handler=cmd_neighbors)

    return parser


def _build_config(args: argparse.Namespace) -> RunConfig:
    overrides = {}
    for field, attr in (
        ("w", "window"),
        ("m", "top"),
        ("t1", "t1"),
        ("t2", "t2"),
        ("d", "damping"),
        ("tolerance", "tolerance"),
        ("max_iterations", "max_iterations"),
        ("method", "method"),
    ):
        value = getattr(args, attr, _UNSET)
        if value is not _UNSET:
            overrides[field] = value
    overrides["embeddings_path"] = args.embeddings or os.environ.get(
        EMBEDDINGS_ENV
    )
    overrides["macro"] = getattr(args, "macro", False)
    overrides["filter_single_words"] = getattr(args, "single_word_filter", True)
    try:
        return RunConfig(**overrides)
    except ValueError as exc:
        raise CliError(2, str(exc)) from exc


def _load_store(config: RunConfig) -> EmbeddingStore:
    path = config.embeddings_path
    if not path:
        raise CliError(
            2,
            f"method {config.method!r} requires word vectors; "
            f"pass --embeddings or set ${EMBEDDINGS_ENV}",
        )
    loader = (
        load_word2vec_binary if path.endswith(".bin") else load_word2vec_text
    )
    try:
        return loader(path)
    except EmbeddingLoadError as exc:
        raise CliError(1, f"{path}: {exc}") from exc


def _needs_store(config: RunConfig, methods) -> bool:
    if config.t1 is None and config.t2 is None:
        return False
    return any(m in _EMBEDDING_METHODS for m in methods)


def _parse_document(text: str, source_id: str, pretagged: bool) -> Document:
    if pretagged:
        try:
            return parse_pretagged(text, source_id=source_id)
        except ValueError as exc:
            raise CliError(1, f"{source_id}: {exc}") from exc
    return pos_tag(tokenize(text, source_id=source_id))


def _load_input(spec: str) -> Document:
    if spec == "-":
        return _parse_document(sys.stdin.read(), "stdin", pretagged=False)
    path = Path(spec)
    return _parse_document(
        path.read_text(encoding="utf-8"), path.stem, path.suffix == ".pos"
    )


def _load_corpus_documents(directory: str) -> list[Document]:
    root = Path(directory)
    if not root.is_dir():
        raise CliError(1, f"corpus directory not found: {root}")
    chosen: dict[str, Path] = {}
    for path in sorted(root.iterdir()):
        if path.suffix == ".pos":
            chosen[path.stem] = path
    for path in sorted(root.iterdir()):
        if path.suffix == ".txt":
            chosen.setdefault(path.stem, path)
    documents = [
        _parse_document(
            chosen[sid].read_text(encoding="utf-8"),
            sid,
            chosen[sid].suffix == ".pos",
        )
        for sid in sorted(chosen)
    ]
    if not documents:
        raise CliError(1, f"no .pos or .txt documents under {root}")
    return documents


def _parallel_map(fn, items, jobs: int) -> list:
    if jobs < 1:
        raise CliError(2, "--jobs must be at least 1")
    if jobs == 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _config_header(config: RunConfig) -> str:
    return "# config\t" + json.dumps(config.as_dict())


def cmd_extract(args: argparse.Namespace) -> int:
    config = _build_config(args)
    store = (
        _load_store(config) if _needs_store(config, (config.method,)) else None
    )
    stats: Optional[CorpusStats] = None
    if config.method in _CORPUS_METHODS:
        if not args.corpus:
            raise CliError(
                2,
                f"method {config.method!r} needs --corpus for "
                "document-frequency statistics",
            )
        stats = build_corpus_stats(_load_corpus_documents(args.corpus))
    documents = [_load_input(spec) for spec in args.inputs]

    def run(document: Document):
        return extract_keyphrases(document, config, store=store, stats=stats)

    rankings = _parallel_map(run, documents, args.jobs)

    if args.format == "plain":
        single = len(documents) == 1
        for document, ranked in zip(documents, rankings):
            for phrase, _ in ranked.entries:
                line = phrase if single else f"{document.source_id}\t{phrase}"
                print(line)
    elif args.format == "tsv":
        print(_config_header(config))
        for document, ranked in zip(documents, rankings):
            for phrase, score in ranked.entries:
                print(f"{document.source_id}\t{phrase}\t{score!r}")
    else:
        payload = {
            "config": config.as_dict(),
            "documents": [
                {
                    "source_id": document.source_id,
                    "method": ranked.method_name,
                    "keyphrases": [
                        {"phrase": phrase, "score": score}
                        for phrase, score in ranked.entries
                    ],
                }
                for document, ranked in zip(documents, rankings)
            ],
        }
        print(json.dumps(payload, indent=2))
    return 0


def _evaluate_method(
    method: str,
    config: RunConfig,
    dataset,
    store,
    stats,
    jobs: int,
    keep_absent: bool,
):
    method_config = dataclasses.replace(config, method=method)

    def run(pair):
        document, gold = pair
        target = gold if keep_absent else filter_present_gold(gold, document)
        ranked = extract_keyphrases(
            document, method_config, store=store, stats=stats
        )
        predicted = [phrase for phrase, _ in ranked.entries]
        return (gold.document_id, *score_document(predicted, target))

    rows = _parallel_map(run, dataset, jobs)
    return aggregate_scores(rows, macro=config.macro)


def _method_rows(methods, config, dataset, store, stats, args):
    rows = []
    for method in methods:
        result = _evaluate_method(
            method,
            config,
            dataset,
            store if _needs_store(config, (method,)) else None,
            stats if method in _CORPUS_METHODS else None,
            args.jobs,
            args.keep_absent_gold,
        )
        rows.append((method, result))
    return rows


def _print_rows(dataset_name, rows, config, fmt):
    if fmt == "tsv":
        print(_config_header(config))
        t1 = "na" if config.t1 is None else repr(config.t1)
        t2 = "na" if config.t2 is None else repr(config.t2)
        for method, result in rows:
            print(
                f"{dataset_name}\t{method}\t{config.m}\t{config.w}\t{t1}\t{t2}"
                f"\t{result.precision:.4f}\t{result.recall:.4f}"
                f"\t{result.f_score:.4f}"
            )
    else:
        payload = {
            "config": config.as_dict(),
            "dataset": dataset_name,
            "rows": [
                {
                    "method": method,
                    "precision": result.precision,
                    "recall": result.recall,
                    "f_score": result.f_score,
                }
                for method, result in rows
            ],
        }
        print(json.dumps(payload, indent=2))


def _load_eval_inputs(args, methods):
    config = _build_config(args)
    dataset = load_dataset(args.dataset)
    if not dataset:
        raise CliError(1, f"no document/key pairs under {args.dataset}")
    store = (
        _load_store(config) if _needs_store(config, methods) else None
    )
    stats = None
    if any(m in _CORPUS_METHODS for m in methods):
        stats = build_corpus_stats([document for document, _ in dataset])
    return config, dataset, store, stats


def cmd_evaluate(args: argparse.Namespace) -> int:
    method = args.method if args.method is not _UNSET else "neighborhood"
    methods = list(COMPOSITE_COMPONENTS.get(method, ())) + [method]
    config, dataset, store, stats = _load_eval_inputs(args, methods)
    rows = _method_rows(methods, config, dataset, store, stats, args)
    _print_rows(Path(args.dataset).name, rows, config, args.format)
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    if not methods:
        raise CliError(2, "--methods list is empty")
    for method in methods:
        if method not in METHOD_NAMES:
            raise CliError(
                2,
                f"unknown method {method!r}; valid: {', '.join(METHOD_NAMES)}",
            )
    # Composites pull in their components' requirements.
    closure = set(methods)
    for method in methods:
        closure.update(COMPOSITE_COMPONENTS.get(method, ()))
    config, dataset, store, stats = _load_eval_inputs(args, closure)
    rows = _method_rows(methods, config, dataset, store, stats, args)
    _print_rows(Path(args.dataset).name, rows, config, args.format)
    return 0


def _as_phrase(text: str):
    surfaces = tuple(text.split())
    return SimpleNamespace(
        words=tuple(word.lower() for word in surfaces), surfaces=surfaces
    )


def cmd_neighbors(args: argparse.Namespace) -> int:
    # The listing cutoff only filters output, so unlike the graph
    # thresholds it may exceed 1 (yielding an empty listing).
    threshold = 0.7 if args.t1 is _UNSET else args.t1
    args.t1 = _UNSET
    args.method = "neighborhood"
    config = _build_config(args)
    store = _load_store(config)
    query = phrase_vector(store, _as_phrase(args.phrase))
    if query is None:
        print("no embedding")
        return 0

    seen = set()
    pairs = []
    for raw_line in Path(args.candidates).read_text(encoding="utf-8").splitlines():
        candidate = raw_line.strip()
        key = candidate.lower()
        if not candidate or key in seen:
            continue
        seen.add(key)
        if key == args.phrase.lower():
            continue
        vector = phrase_vector(store, _as_phrase(candidate))
        if vector is None:
            continue
        try:
            similarity = cosine_similarity(query, vector)
        except UndefinedSimilarityError:
            continue
        if threshold is None or similarity >= threshold:
            pairs.append((candidate, similarity))

    pairs.sort(key=lambda pair: (-pair[1], pair[0]))
    for candidate, similarity in pairs:
        print(f"{candidate}\t{similarity:.6f}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except CliError as exc:
        print(f"phraserank: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"phraserank: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
