"""Print UMass coherence for K = k_min..k_max on one repository and source.

    python3 scripts/coherence_sweep.py tests/fixtures/corpus/repos.txt acme/widgets issues

Useful for checking whether a pinned topic count is reasonable for a corpus.
"""

from __future__ import annotations

import argparse
import sys
from datetime import date
from pathlib import Path

from docmine.lda import LdaConfig, best_of, sweep_topic_counts
from docmine.pipeline import RunConfig, _Context, derive_seed, gather_documents, parse_repo_list
from docmine.scanner import scan_repo
from docmine.taxonomy import Source
from docmine.text import TokenizedDocument, build_corpus, tokenize


def main(argv: list[str] | None = None) -> int:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("repos", type=Path)
    p.add_argument("repo_id")
    p.add_argument("source", choices=[s.value for s in Source])
    p.add_argument("--anchor-date", type=date.fromisoformat, default=date(2021, 1, 1))
    p.add_argument("--k-min", type=int, default=2)
    p.add_argument("--k-max", type=int, default=20)
    p.add_argument("--iterations", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    config = RunConfig(repos=args.repos, anchor_date=args.anchor_date, seed=args.seed)
    config.validate()
    ctx = _Context(config)
    entry = next((e for e in parse_repo_list(args.repos) if e.repo_id == args.repo_id), None)
    if entry is None:
        p.error(f"{args.repo_id} is not in {args.repos}")
    snapshot = scan_repo(entry.path, entry.repo_id, entry.language)
    source = Source(args.source)
    texts = gather_documents(entry, snapshot, ctx, [])[source]
    corpus = build_corpus(TokenizedDocument(source, entry.repo_id, tuple(tokenize(t, ctx.stopwords))) for t in texts)

    lda = LdaConfig(iterations=args.iterations, burn_in=min(200, args.iterations - 1),
                    seed=derive_seed(args.seed, entry.repo_id, source.value))
    results = sweep_topic_counts(corpus, args.k_min, args.k_max, lda)
    print(f"{entry.repo_id} {source.value}: {len(corpus.docs)} docs, {corpus.num_tokens} tokens")
    for k, score, _ in results:
        print(f"k={k:3d}  coherence={score:10.4f}")
    print(f"best k = {best_of(results)[0]}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
