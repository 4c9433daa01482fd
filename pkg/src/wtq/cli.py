"""Command-line front end.

Exit codes: 0 success, 1 usage or parameter error, 2 ``--check`` mismatch,
3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import oracle
from .bench import run_bench
from .doclist import DocIndex, load_index
from .wavelet_tree import EmptySequenceError, WaveletTree

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class CheckMismatch(Exception):
    pass


class BadIndexFile(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _sigma_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}")
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("sigma values must be positive")
    return values


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="wtq", description="wavelet-tree range quantile and document listing queries")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    b = sub.add_parser("build", help="build an index file")
    b.add_argument("inputs", nargs="+", type=Path, metavar="INPUT")
    b.add_argument("-o", "--output", required=True, type=Path, help="index file to write")
    b.add_argument("--doclist", action="store_true",
                   help="treat inputs as a document corpus (one document per file)")
    b.add_argument("--delimiter", help="with --doclist and one input: split documents on this line")

    def add_index(sp):
        sp.add_argument("index", type=Path)

    def add_range(sp):
        sp.add_argument("-l", type=int, required=True, dest="l", help="left end (1-based)")
        sp.add_argument("-r", type=int, required=True, dest="r", help="right end (inclusive)")

    def add_check(sp):
        sp.add_argument("--check", action="store_true", help="compare against the brute-force oracle")

    q = sub.add_parser("quantile", help="k-th smallest value in s[l..r]")
    add_index(q)
    q.add_argument("-k", type=int, required=True)
    add_range(q)
    q.add_argument("--trace", action="store_true", help="print (k, l, r) at every level")
    add_check(q)

    m = sub.add_parser("median", help="lower median of s[l..r]")
    add_index(m)
    add_range(m)
    m.add_argument("--trace", action="store_true")
    add_check(m)

    d = sub.add_parser("distinct", help="distinct values of s[l..r] with multiplicities")
    add_index(d)
    add_range(d)
    add_check(d)

    c = sub.add_parser("count", help="number of values in [lo, hi] within s[l..r]")
    add_index(c)
    add_range(c)
    c.add_argument("--lo", type=int, required=True)
    c.add_argument("--hi", type=int, required=True)
    add_check(c)

    dl = sub.add_parser("doclist", help="documents containing a pattern")
    add_index(dl)
    dl.add_argument("--pattern", required=True)
    add_check(dl)

    bn = sub.add_parser("bench", help="mean quantile latency per alphabet size")
    bn.add_argument("--n", type=int, default=1_000_000)
    bn.add_argument("--sigma", type=_sigma_list, default=[2, 16, 256, 4096], help="comma-separated list")
    bn.add_argument("--queries", type=int, default=10_000)
    bn.add_argument("--seed", type=int, default=0)
    return p


# -- helpers ---------------------------------------------------------------

def _read_sequence(path: Path) -> list[int]:
    values = []
    for tok in path.read_text().split():
        try:
            v = int(tok)
        except ValueError:
            raise UsageError(f"{path}: malformed integer {tok!r}")
        if v < 0:
            raise UsageError(f"{path}: negative value {v}")
        values.append(v)
    return values


def _read_corpus(paths: list[Path], delimiter: str | None) -> list[bytes]:
    if delimiter is None:
        return [p.read_bytes() for p in paths]
    if len(paths) != 1:
        raise UsageError("--delimiter takes exactly one input file")
    docs, cur = [], []
    for line in paths[0].read_bytes().splitlines(keepends=True):
        if line.rstrip(b"\r\n") == delimiter.encode():
            docs.append(b"".join(cur))
            cur = []
        else:
            cur.append(line)
    docs.append(b"".join(cur))
    return docs


def _load(path: Path):
    try:
        return load_index(path)
    except ValueError as exc:
        raise BadIndexFile(f"{path}: {exc}")


def _load_tree(path: Path) -> WaveletTree:
    idx = _load(path)
    if isinstance(idx, DocIndex):
        raise UsageError(f"{path} is a document index; use the doclist command")
    return idx


def _compare(name, got, expected):
    if got != expected:
        raise CheckMismatch(f"{name} mismatch: index gave {got!r}, oracle gave {expected!r}")
    print(f"check: ok ({name})", file=sys.stderr)


# -- commands --------------------------------------------------------------

def cmd_build(args) -> int:
    if args.doclist:
        idx = DocIndex(_read_corpus(args.inputs, args.delimiter))
        idx.save(args.output)
        t = idx.e_tree
        print(f"documents={idx.doc_count} n={idx.n} sigma={t.sigma} depth={t.depth} bits={t.stored_bits()}")
        return EXIT_OK
    if len(args.inputs) != 1 or args.delimiter is not None:
        raise UsageError("sequence mode takes exactly one input file and no --delimiter")
    wt = WaveletTree(_read_sequence(args.inputs[0]))
    wt.save(args.output)
    print(f"n={wt.n} sigma={wt.sigma} depth={wt.depth} bits={wt.stored_bits()}")
    return EXIT_OK


def _run_quantile(args, k) -> int:
    wt = _load_tree(args.index)
    if args.trace:
        value, trace = wt.quantile_trace(k, args.l, args.r)
    else:
        value, trace = wt.quantile(k, args.l, args.r), []
    print(value)
    for step in trace:
        print(f"k={step.k} l={step.l} r={step.r}")
    if args.check:
        _compare("quantile", value, oracle.naive_quantile(wt.to_list(), k, args.l, args.r))
    return EXIT_OK


def cmd_quantile(args) -> int:
    return _run_quantile(args, args.k)


def cmd_median(args) -> int:
    return _run_quantile(args, (args.r - args.l + 2) // 2)


def cmd_distinct(args) -> int:
    wt = _load_tree(args.index)
    items = wt.range_distinct(args.l, args.r)
    for value, mult in items:
        print(f"{value}\t{mult}")
    if args.check:
        _compare("distinct", [tuple(x) for x in items], oracle.naive_distinct(wt.to_list(), args.l, args.r))
    return EXIT_OK


def cmd_count(args) -> int:
    wt = _load_tree(args.index)
    n = wt.range_count(args.l, args.r, args.lo, args.hi)
    print(n)
    if args.check:
        _compare("count", n, oracle.naive_range_count(wt.to_list(), args.l, args.r, args.lo, args.hi))
    return EXIT_OK


def cmd_doclist(args) -> int:
    idx = _load(args.index)
    if not isinstance(idx, DocIndex):
        raise UsageError(f"{args.index} is a sequence index, not a document index")
    pattern = args.pattern.encode()
    docs = idx.list_documents(pattern)
    for doc, count in docs:
        print(f"{doc}\t{count}")
    if args.check:
        _compare("doclist", docs, oracle.naive_doclist(idx.documents(), pattern))
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.n < 1 or args.queries < 0:
        raise UsageError("--n must be positive and --queries non-negative")
    for sigma, mean_ns in run_bench(args.n, args.sigma, args.queries, args.seed):
        print(f"{sigma}\t{mean_ns:.1f}", flush=True)
    return EXIT_OK


COMMANDS = {
    "build": cmd_build,
    "quantile": cmd_quantile,
    "median": cmd_median,
    "distinct": cmd_distinct,
    "count": cmd_count,
    "doclist": cmd_doclist,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except CheckMismatch as exc:
        print(f"wtq: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (OSError, BadIndexFile) as exc:
        print(f"wtq: {exc}", file=sys.stderr)
        return EXIT_IO
    except (UsageError, EmptySequenceError, ValueError, IndexError) as exc:
        print(f"wtq: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
