"""Command-line interface.

    clinicalqa index         --config CFG
    clinicalqa train         --config CFG
    clinicalqa classify-docs --config CFG [--out FILE]
    clinicalqa ask           --config CFG [--top-k N] [--json] QUESTION
    clinicalqa eval          --config CFG [--out FILE]
    clinicalqa serve         --config CFG [--host H] [--port P]

Every verb exits 0 on success and nonzero with a message on stderr
otherwise.  The CLINICALQA_PORT environment variable overrides the serve
port.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from clinicalqa import evalkit, pipeline as pipelinemod
from clinicalqa.config import ConfigError, load_config

PORT_ENV_VAR = "CLINICALQA_PORT"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clinicalqa",
        description="Clinical question answering over medical abstracts.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def with_config(p: argparse.ArgumentParser) -> argparse.ArgumentParser:
        p.add_argument("--config", required=True, help="path to the JSON config file")
        return p

    with_config(sub.add_parser("index", help="build and persist the full-corpus index"))
    with_config(sub.add_parser("train", help="train stage models and the evidence index"))

    p = with_config(sub.add_parser("classify-docs",
                                   help="classify every document, emit TSV"))
    p.add_argument("--out", help="write the TSV here instead of stdout")

    p = with_config(sub.add_parser("ask", help="answer one question"))
    p.add_argument("question", help="the clinical question text")
    p.add_argument("--top-k", type=int, default=None, help="override candidate count")
    p.add_argument("--json", action="store_true", help="emit the raw JSON payload")

    p = with_config(sub.add_parser("eval", help="score the pipeline against the gold file"))
    p.add_argument("--out", help="write the report here (default: workdir/eval_report.txt)")

    p = with_config(sub.add_parser("serve", help="run the HTTP service"))
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return parser


def _render_answer(payload: dict) -> str:
    lines = [f"question: {payload['question']}"]
    if not payload["answerable"]:
        lines.append("answerable: no")
        lines.append(f"reason: {payload['reason']}")
        return "\n".join(lines) + "\n"
    lines.append("answerable: yes")
    lines.append(f"focus class: {payload['class_number']} "
                 f"({', '.join(payload['focus_tags'])})")
    if payload["retrieval_fallback"]:
        lines.append("note: no document matched both phrase and tag vectors; "
                     "showing single-vector matches")
    if not payload["results"]:
        lines.append("no matching abstracts")
        return "\n".join(lines) + "\n"
    for position, abstract in enumerate(payload["results"], start=1):
        lines.append("")
        lines.append(f"#{position}  [{abstract['doc_id']}]  {abstract['title']}")
        lines.append(f"    abstract score: {abstract['abstract_score'] * 100:.1f}%")
        for sentence in abstract["sentences"]:
            if sentence["highlighted"]:
                lines.append(f"    >> {sentence['text']}")
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        if args.verb == "index":
            bundle = pipelinemod.cmd_index(config)
            print(f"indexed {bundle.phrase.n_docs} documents "
                  f"({bundle.phrase.n_terms} phrases, {bundle.tag.n_terms} tags) "
                  f"-> {config.index_path}")
        elif args.verb == "train":
            summary = pipelinemod.cmd_train(config)
            print(f"trained on {summary.n_docs} documents; "
                  f"{summary.n_evidence} kept as evidence"
                  + (" (fallback: none were evidence)" if summary.evidence_fallback else ""))
            print(f"questions: {summary.n_questions} total, "
                  f"{summary.n_answerable} answerable")
            print(f"artifacts in {config.workdir}")
        elif args.verb == "classify-docs":
            tsv = pipelinemod.cmd_classify_docs(config)
            if args.out:
                with open(args.out, "w", encoding="utf-8") as fh:
                    fh.write(tsv)
                print(f"wrote {args.out}")
            else:
                sys.stdout.write(tsv)
        elif args.verb == "ask":
            if args.top_k is not None and args.top_k < 1:
                print("--top-k must be >= 1", file=sys.stderr)
                return 2
            pipe = pipelinemod.load_pipeline(config)
            payload = pipe.ask(args.question, top_k=args.top_k)
            if args.json:
                print(json.dumps(payload, ensure_ascii=False))
            else:
                sys.stdout.write(_render_answer(payload))
        elif args.verb == "eval":
            report = pipelinemod.cmd_eval(config, out_path=args.out)
            target = args.out if args.out else config.report_path
            print(f"evaluated {len(report.rows)} questions: "
                  f"MRR {report.mrr:.5f}, answered {report.answered_fraction * 100:.1f}%")
            print(f"report written to {target}")
        elif args.verb == "serve":
            import uvicorn

            from clinicalqa.service import create_app

            port = int(os.environ.get(PORT_ENV_VAR, args.port))
            app = create_app(config)
            uvicorn.run(app, host=args.host, port=port, log_level="warning")
        else:  # pragma: no cover - argparse enforces the verb set
            raise AssertionError(f"unhandled verb {args.verb!r}")
    except (ConfigError, pipelinemod.PipelineError, evalkit.GoldFileError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
