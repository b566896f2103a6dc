"""Run the method comparison on a gold-keyed dataset, with timings.

Defaults reproduce the published configuration (w=10, m=8, t1=t2=0.7,
d=0.85). Point --embeddings at a word2vec file covering the corpus
vocabulary, such as the pretrained news vectors (about 3.5 GB, not
shipped with this repository).

Example:
    python3 scripts/run_benchmark.py /data/inspec \
        --embeddings ~/vectors/news.bin --methods neighborhood,tfidf
"""

import argparse
import json
import sys
import time

from phraserank.baselines import build_corpus_stats
from phraserank.cli import (
    _CORPUS_METHODS,
    CliError,
    _evaluate_method,
    _load_store,
    _needs_store,
    _threshold,
)
from phraserank.config import METHOD_NAMES, RunConfig
from phraserank.evaluation import load_dataset
from phraserank.pipeline import COMPOSITE_COMPONENTS


def parse_args(argv):
    parser = argparse.ArgumentParser(
        description="Score ranking methods against a dataset's gold keys."
    )
    parser.add_argument("dataset", help="directory of .txt/.pos and .key files")
    parser.add_argument("--embeddings", default=None, metavar="FILE")
    parser.add_argument(
        "--methods", default=",".join(METHOD_NAMES), metavar="A,B,..."
    )
    parser.add_argument("--top", type=int, default=8, metavar="M")
    parser.add_argument("--window", type=int, default=10, metavar="W")
    parser.add_argument("--t1", type=_threshold, default=0.7, metavar="T")
    parser.add_argument("--t2", type=_threshold, default=0.7, metavar="T")
    parser.add_argument("--jobs", type=int, default=1, metavar="N")
    parser.add_argument("--macro", action="store_true")
    parser.add_argument("--keep-absent-gold", action="store_true")
    return parser.parse_args(argv)


def run(argv=None) -> int:
    args = parse_args(argv)
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    unknown = [m for m in methods if m not in METHOD_NAMES]
    if not methods or unknown:
        print(
            f"unknown methods {unknown}; valid: {', '.join(METHOD_NAMES)}",
            file=sys.stderr,
        )
        return 2

    config = RunConfig(
        w=args.window,
        m=args.top,
        t1=args.t1,
        t2=args.t2,
        embeddings_path=args.embeddings,
        macro=args.macro,
    )
    dataset = load_dataset(args.dataset)
    if not dataset:
        print(f"no document/key pairs under {args.dataset}", file=sys.stderr)
        return 1

    closure = set(methods)
    for method in methods:
        closure.update(COMPOSITE_COMPONENTS.get(method, ()))
    store = _load_store(config) if _needs_store(config, closure) else None
    stats = None
    if any(m in _CORPUS_METHODS for m in closure):
        stats = build_corpus_stats([document for document, _ in dataset])

    print("# config\t" + json.dumps(config.as_dict()))
    print("method\tprecision\trecall\tf_score\tseconds")
    for method in methods:
        started = time.monotonic()
        result = _evaluate_method(
            method,
            config,
            dataset,
            store if _needs_store(config, (method,)) else None,
            stats if method in _CORPUS_METHODS else None,
            args.jobs,
            args.keep_absent_gold,
        )
        elapsed = time.monotonic() - started
        print(
            f"{method}\t{result.precision:.4f}\t{result.recall:.4f}"
            f"\t{result.f_score:.4f}\t{elapsed:.2f}"
        )
    return 0


if __name__ == "__main__":
    try:
        sys.exit(run())
    except CliError as exc:
        print(f"run_benchmark: {exc}", file=sys.stderr)
        sys.exit(exc.exit_code)
    except OSError as exc:
        print(f"run_benchmark: {exc}", file=sys.stderr)
        sys.exit(1)
