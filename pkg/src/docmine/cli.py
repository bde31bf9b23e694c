"""Command-line entry point: ``docmine run|scan|comments|capture``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from datetime import date
from pathlib import Path

from docmine.lda import LdaConfig
from docmine.pipeline import DEFAULT_PINNED_K, RunConfig, run
from docmine.reporting import emit_reports
from docmine.taxonomy import Language, Source

K_FLAGS = {
    Source.SOURCE_CODE_COMMENTS: "k_comments",
    Source.TEXTUAL_DOCS: "k_textual",
    Source.COMMITS: "k_commits",
    Source.ISSUES: "k_issues",
    Source.PULL_REQUESTS: "k_pulls",
}


def _date(value: str) -> date:
    try:
        return date.fromisoformat(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an ISO date: {value!r}") from None


def _on_off(value: str) -> bool:
    if value not in ("on", "off"):
        raise argparse.ArgumentTypeError("expected 'on' or 'off'")
    return value == "on"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="docmine", description=__doc__)
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="analyse every repository in a list and write reports")
    p.add_argument("--repos", type=Path, required=True, help="lines of '<repo_id> <local_path> <language>'")
    p.add_argument("--artifacts", choices=("api", "dump"), default="dump")
    p.add_argument("--dump-dir", type=Path, help="offline dumps; defaults to <repos dir>/dumps")
    p.add_argument("--anchor-date", type=_date, default=date.today())
    p.add_argument("--span-years", type=int, default=3)
    p.add_argument("--k-mode", choices=("sweep", "pinned"), default="pinned")
    for source, dest in K_FLAGS.items():
        p.add_argument("--" + dest.replace("_", "-"), dest=dest, type=int, default=DEFAULT_PINNED_K[source])
    p.add_argument("--k-min", type=int, default=2)
    p.add_argument("--k-max", type=int, default=20)
    p.add_argument("--alpha", type=float, default=None, help="document-topic prior (default 50/K)")
    p.add_argument("--beta", type=float, default=0.01)
    p.add_argument("--iterations", type=int, default=1000)
    p.add_argument("--burn-in", type=int, default=200)
    p.add_argument("--average-samples", action="store_true", help="average counts over post-burn-in sweeps")
    p.add_argument("--lexicon", type=Path)
    p.add_argument("--stopwords", type=Path)
    p.add_argument("--out", type=Path, default=Path("out"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--min-df", type=int, default=1)
    p.add_argument("--docstrings", type=_on_off, default=True, metavar="on|off")
    p.add_argument("--stem", action="store_true")
    p.add_argument("--tie-eps", type=float, default=0.05)
    p.add_argument("--similarity", choices=("overlap", "cosine"), default="overlap")
    p.add_argument("--top-n", type=int, default=10)
    p.add_argument("--uniform-topic-weight", action="store_true")
    p.add_argument("--weight-by-mass", action="store_true")

    p = sub.add_parser("scan", help="print a repository snapshot as JSON")
    p.add_argument("root", type=Path)
    p.add_argument("--repo-id", required=True)
    p.add_argument("--language", required=True)

    p = sub.add_parser("comments", help="print the comments of one source file as JSON")
    p.add_argument("file", type=Path)
    p.add_argument("--language", help="defaults to the file extension")
    p.add_argument("--docstrings", type=_on_off, default=True, metavar="on|off")

    p = sub.add_parser("capture", help="fetch artifacts from the GitHub API into an offline dump")
    p.add_argument("--repo-id", required=True)
    p.add_argument("--dump-dir", type=Path, required=True)
    p.add_argument("--anchor-date", type=_date, default=date.today())
    p.add_argument("--span-years", type=int, default=3)
    return parser


def run_config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        repos=args.repos,
        artifacts=args.artifacts,
        dump_dir=args.dump_dir,
        anchor_date=args.anchor_date,
        span_years=args.span_years,
        k_mode=args.k_mode,
        pinned_k={source: getattr(args, dest) for source, dest in K_FLAGS.items()},
        k_min=args.k_min,
        k_max=args.k_max,
        lda=LdaConfig(
            alpha=args.alpha,
            beta=args.beta,
            iterations=args.iterations,
            burn_in=args.burn_in,
            average_samples=args.average_samples,
        ),
        lexicon=args.lexicon,
        stopwords=args.stopwords,
        out=args.out,
        jobs=args.jobs,
        seed=args.seed,
        min_df=args.min_df,
        docstrings=args.docstrings,
        stem=args.stem,
        tie_eps=args.tie_eps,
        similarity=args.similarity,
        top_n=args.top_n,
        uniform_topic_weight=args.uniform_topic_weight,
        weight_by_mass=args.weight_by_mass,
    )


def _dispatch(args: argparse.Namespace) -> None:
    if args.command == "run":
        result = run(run_config(args))
        for path in emit_reports(result.report, args.out):
            print(path)
    elif args.command == "scan":
        from docmine.scanner import scan_repo

        print(scan_repo(args.root, args.repo_id, Language.parse(args.language)).to_json())
    elif args.command == "comments":
        from docmine.comments import extract_comments
        from docmine.scanner import read_text, source_language

        language = Language.parse(args.language) if args.language else source_language(args.file.name)
        if language is None:
            raise ValueError(f"cannot infer a supported language for {args.file}")
        spans = extract_comments(
            read_text(args.file), language, file=args.file.as_posix(), include_docstrings=args.docstrings
        )
        print(json.dumps([s.to_dict() for s in spans], indent=2))
    elif args.command == "capture":
        from docmine.artifacts import GitHubProvider, RecencyWindow, capture

        capture(GitHubProvider(), args.repo_id, RecencyWindow(args.anchor_date, args.span_years), args.dump_dir)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        _dispatch(args)
    except Exception as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
