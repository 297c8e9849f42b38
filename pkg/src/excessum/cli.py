"""Command-line front end: ``excessum <subcommand> ...``.

Exact values are printed as strings ("p/q"), floats as JSON numbers.  Exit
status is 0 on success, 2 on a usage error and 1 when a computation fails.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Callable, Dict, List, Sequence

import numpy as np

from . import asymptotics as asy
from . import evolving as evo
from . import greedy as gr
from .counts import FAMILIES, CountQuery, count, count_hypercycles_closed, count_hypercycles_corrected
from .exact import rational_to_str
from .hypergraphs import (
    ENUM_CAP,
    ForestCode,
    Hypergraph,
    components,
    decode,
    encode,
    excess,
    is_connected,
    iter_hypergraphs,
    random_code,
)
from .recurrence import compute_f, smooth_series, to_comb_form
from .species import compose_with_T, solve_T


class UsageError(Exception):
    """Bad or inconsistent flags."""


class IncompatibleSize(UsageError):
    """n, s and the excess violate a congruence."""


class CapExceeded(RuntimeError):
    """An oracle would exceed its size cap."""


class Output:
    """A JSON payload plus, optionally, a table used for CSV."""

    def __init__(self, payload: dict, header: Sequence[str] | None = None, rows: List[Sequence] | None = None):
        self.payload = payload
        self.header = header
        self.rows = rows

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.payload, separators=(",", ":")) + "\n"
        buf = io.StringIO()
        w = csv.writer(buf)
        if self.rows is not None:
            w.writerow(self.header)
            w.writerows(self.rows)
        else:
            w.writerow(list(self.payload))
            w.writerow([v if isinstance(v, (str, int, float)) else json.dumps(v, separators=(",", ":")) for v in self.payload.values()])
        return buf.getvalue()


def _q(x) -> str:
    return rational_to_str(x)


def _need_seed(args) -> int:
    if args.seed is None:
        raise UsageError("--seed is required for randomized commands")
    return args.seed


def _read_json(path: str | None) -> dict:
    text = sys.stdin.read() if path in (None, "-") else open(path, encoding="utf-8").read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"input is not valid JSON: {exc}") from exc


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def cmd_count(args) -> Output:
    q = CountQuery(args.b, args.family, args.s, args.n, args.k, args.ell)
    try:
        q = q.resolved()
    except ValueError as exc:
        raise IncompatibleSize(str(exc)) from exc
    payload = {"count": str(count(q))}
    if args.closed:
        if q.family != "hypercycle":
            raise UsageError("--closed applies to --family hypercycle")
        payload["closedPrinted"] = _q(count_hypercycles_closed(q.b, q.s))
        payload["closedCorrected"] = _q(count_hypercycles_corrected(q.b, q.s))
    if args.oracle:
        if math.comb(q.n, q.b) > ENUM_CAP:
            raise CapExceeded(f"C({q.n},{q.b}) exceeds the enumeration cap {ENUM_CAP}")
        payload["oracle"] = str(_oracle_count(q))
    return Output(payload)


def _oracle_count(q: CountQuery) -> int:
    if q.family == "forest":
        # each tree of the forest carries one root
        tot = 0
        for H in iter_hypergraphs(q.b, q.n):
            if H.s != q.s:
                continue
            comps = components(H)
            if len(comps) == q.k + 1 and all(excess(C) == -1 for C in comps):
                tot += math.prod(len(C.vertices) for C in comps)
        return tot
    hits = sum(1 for H in iter_hypergraphs(q.b, q.n) if excess(H) == q.ell and is_connected(H))
    return hits * q.n if q.family == "rooted-hypertree" else hits


def cmd_series(args) -> Output:
    K = args.K
    if args.what == "T":
        ser = solve_T(args.b, K)
    elif args.what == "H":
        ser = compose_with_T(smooth_series(args.ell, args.b), args.b, K)
    else:
        ser = gr.mean_series_hypertrees(args.b, K)
    coeffs = [_q(c) for c in ser.coeffs]
    egf = [_q(c * math.factorial(i)) for i, c in enumerate(ser.coeffs)]
    payload = {"b": args.b, "what": args.what, "K": K, "coeffs": coeffs, "egfCounts": egf}
    if args.what == "H":
        payload["ell"] = args.ell
    rows = [[i, c, e] for i, (c, e) in enumerate(zip(coeffs, egf))]
    return Output(payload, ["degree", "coeff", "nFactorialCoeff"], rows)


def cmd_hl(args) -> Output:
    if args.ell < 1:
        raise UsageError("--ell must be >= 1")
    f = compute_f(args.ell, args.b)
    form = to_comb_form(f, args.ell, args.b)
    payload = {"b": args.b, "ell": args.ell, "f": f.to_json(), "comb": form.to_json()}
    rows = [[d, _q(c)] for d, c in sorted(f.items())]
    return Output(payload, ["degree", "coeff"], rows)


def cmd_asympt(args) -> Output:
    b, fam = args.b, args.family
    if fam == "sandwich":
        if args.n is None:
            raise UsageError("--family sandwich needs --n")
        try:
            return Output(asy.wright_bounds(b, args.ell, args.n).to_json())
        except ValueError as exc:
            raise IncompatibleSize(str(exc)) from exc
    if args.s is None:
        raise UsageError(f"--family {fam} needs --s")
    s = args.s
    if fam == "rooted-hypertree":
        est = asy.asympt_rooted_hypertrees(b, s)
        exact: Callable = lambda: count(CountQuery(b, fam, s=s))  # noqa: E731
    elif fam == "hypertree":
        est = asy.asympt_hypertrees(b, s)
        exact = lambda: count(CountQuery(b, fam, s=s))  # noqa: E731
    elif fam == "hypercycle":
        est = asy.asympt_hypercycles(b, s)
        exact = lambda: count(CountQuery(b, fam, s=s))  # noqa: E731
    elif fam == "component":
        est = asy.asympt_components(b, args.ell, s)
        exact = lambda: count(CountQuery(b, fam, s=s, ell=args.ell))  # noqa: E731
    elif fam == "chain":
        est = asy.chain_coeff_asympt(b, args.ell, args.m, s)
        exact = lambda: asy.chain_coeff_exact(b, args.ell, args.m, s)  # noqa: E731
    else:  # pragma: no cover
        raise UsageError(f"unknown family {fam}")
    payload = {"estimate": est.value, "logEstimate": est.log_value, "error": est.error_order}
    if args.compare_exact:
        ex = exact()
        payload.update({"exact": _q(ex), "ratio": est.ratio_to(ex)})
    return Output(payload)


def cmd_sample(args) -> Output:
    seed = _need_seed(args)
    rng = np.random.default_rng(seed)
    code = random_code(args.b, args.s, args.k, rng)
    n = args.s * (args.b - 1) + args.k + 1
    F = decode(code, args.b, n)
    payload = F.to_json()
    if args.code:
        payload["code"] = code.to_json()
    rows = [list(e) for e in F.edges]
    return Output(payload, [f"v{i + 1}" for i in range(args.b)], rows)


def cmd_encode(args) -> Output:
    data = _read_json(args.input)
    try:
        F = Hypergraph.from_json(data)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"not a hypergraph document: {exc}") from exc
    return Output(encode(F).to_json())


def cmd_decode(args) -> Output:
    data = _read_json(args.input)
    try:
        code = ForestCode.from_json(data)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"not a forest code document: {exc}") from exc
    b = args.b if args.b is not None else (len(code.P[0]) + 1 if code.P else None)
    if b is None:
        raise UsageError("a code without blocks needs --b")
    n = len(code.R) + sum(len(p) for p in code.P)
    return Output(decode(code, b, n).to_json())


def _excess_support(b: int, n: int, ell: int) -> List[Hypergraph]:
    if math.comb(n, b) > ENUM_CAP:
        raise CapExceeded(f"C({n},{b}) exceeds the enumeration cap {ENUM_CAP}")
    return [H for H in iter_hypergraphs(b, n) if excess(H) == ell and is_connected(H)]


def cmd_match(args) -> Output:
    b, n, ell = args.b, args.n, args.ell
    if (n + ell) % (b - 1) or n < 1:
        raise IncompatibleSize(f"no connected excess-{ell} structure on n={n} vertices at b={b}")
    payload: Dict[str, object] = {}
    if args.runs:
        seed = _need_seed(args)
        if ell == -1:
            mc = gr.monte_carlo_mean(b, n, args.runs, seed, args.workers)
        else:
            support = _excess_support(b, n, ell)
            if not support:
                raise IncompatibleSize(f"no connected excess-{ell} structure on n={n} vertices at b={b}")
            mc = _match_on_support(support, args.runs, seed, args.workers)
        payload.update({"mean": mc.mean, "stderr": mc.stderr, "runs": mc.runs})
    if args.exact:
        support = _excess_support(b, n, ell)
        if not support:
            raise IncompatibleSize(f"no connected excess-{ell} structure on n={n} vertices at b={b}")
        payload["exact"] = _q(sum((gr.exact_expectation(H) for H in support), gr.Fraction(0)) / len(support))
    if args.series:
        if ell != -1:
            raise UsageError("--series is available for --ell -1 only")
        payload["series"] = _q(gr.exact_mean_hypertrees(b, n))
    payload["theory"] = gr.asympt_mean(b, ell, n)
    return Output(payload)


def _match_on_support(support: List[Hypergraph], runs: int, seed: int, workers) -> gr.MonteCarloResult:
    from .parallel import chunk_rng, chunk_sizes, map_chunks, mean_stderr

    def chunk(idx: int, size: int):
        rng = chunk_rng(seed, idx)
        tot = sq = 0
        for _ in range(size):
            H = support[int(rng.integers(len(support)))]
            y = len(gr._greedy_edges(H.edges, rng.permutation(len(H.edges))))
            tot += y
            sq += y * y
        return tot, sq

    parts = map_chunks(chunk, chunk_sizes(runs, gr.MC_CHUNK), workers)
    mean, se = mean_stderr(sum(p[0] for p in parts), sum(p[1] for p in parts), runs)
    return gr.MonteCarloResult(mean, se, runs)


def cmd_evolve(args) -> Output:
    b, n = args.b, args.n
    if n <= b:
        raise IncompatibleSize(f"need n > b, got n={n}, b={b}")
    payload: Dict[str, object] = {}
    ref = None
    if args.exact:
        e = evo.exact_mean(b, n)
        payload["exactMean"] = _q(e)
        ref = float(e)
    if args.runs:
        mc = evo.monte_carlo_mean(b, n, args.runs, _need_seed(args), args.workers)
        payload.update({"mcMean": mc.mean, "mcStderr": mc.stderr})
        if ref is None:
            ref = mc.mean
    if args.asympt:
        a = evo.asympt_mean_evolving(b, n)
        payload["asympt"] = a
        if ref is not None:
            payload["ratio"] = ref / a
    if not payload:
        raise UsageError("choose at least one of --exact, --runs, --asympt")
    return Output(payload)


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--workers", type=int, default=None, help="worker threads (capped by EXCESSUM_THREADS)")

    p = _Parser(prog="excessum", description="Exact and asymptotic enumeration of uniform hypergraphs by excess.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("count", parents=[common], help="exact counts")
    c.add_argument("--b", type=int, required=True)
    c.add_argument("--family", choices=FAMILIES, required=True)
    c.add_argument("--s", type=int)
    c.add_argument("--n", type=int)
    c.add_argument("--k", type=int, default=0)
    c.add_argument("--ell", type=int, default=0)
    c.add_argument("--closed", action="store_true", help="also print the closed hypercycle sums")
    c.add_argument("--oracle", action="store_true", help="also count by brute force (small n)")
    c.set_defaults(func=cmd_count)

    s = sub.add_parser("series", parents=[common], help="EGF coefficients")
    s.add_argument("--b", type=int, required=True)
    s.add_argument("--K", type=int, required=True)
    s.add_argument("--what", choices=("T", "H", "matching"), default="T")
    s.add_argument("--ell", type=int, default=-1)
    s.set_defaults(func=cmd_series)

    h = sub.add_parser("hl", parents=[common], help="smooth series f_ell and its combinatorial form")
    h.add_argument("--b", type=int, required=True)
    h.add_argument("--ell", type=int, required=True)
    h.set_defaults(func=cmd_hl)

    a = sub.add_parser("asympt", parents=[common], help="asymptotic estimates and bounds")
    a.add_argument("--b", type=int, required=True)
    a.add_argument("--family", choices=("rooted-hypertree", "hypertree", "hypercycle", "component", "chain", "sandwich"), required=True)
    a.add_argument("--s", type=int)
    a.add_argument("--n", type=int)
    a.add_argument("--ell", type=int, default=1)
    a.add_argument("--m", type=int, default=2)
    a.add_argument("--compare-exact", action="store_true")
    a.set_defaults(func=cmd_asympt)

    sm = sub.add_parser("sample", parents=[common], help="uniform random forest of rooted hypertrees")
    sm.add_argument("--b", type=int, required=True)
    sm.add_argument("--s", type=int, required=True)
    sm.add_argument("--k", type=int, default=0)
    sm.add_argument("--seed", type=int)
    sm.add_argument("--code", action="store_true", help="include the forest code")
    sm.set_defaults(func=cmd_sample)

    e = sub.add_parser("encode", parents=[common], help="forest JSON -> code JSON")
    e.add_argument("--input", help="file (default stdin)")
    e.add_argument("--seed", type=int, help="accepted for uniformity; encoding is deterministic")
    e.set_defaults(func=cmd_encode)

    d = sub.add_parser("decode", parents=[common], help="code JSON -> forest JSON")
    d.add_argument("--input", help="file (default stdin)")
    d.add_argument("--b", type=int)
    d.add_argument("--seed", type=int, help="accepted for uniformity; decoding is deterministic")
    d.set_defaults(func=cmd_decode)

    m = sub.add_parser("match", parents=[common], help="greedy hypermatching")
    m.add_argument("--b", type=int, required=True)
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--ell", type=int, default=-1)
    m.add_argument("--runs", type=int, default=0)
    m.add_argument("--seed", type=int)
    m.add_argument("--exact", action="store_true", help="brute-force oracle average (small n)")
    m.add_argument("--series", action="store_true", help="exact mean from the series (ell = -1)")
    m.set_defaults(func=cmd_match)

    ev = sub.add_parser("evolve", parents=[common], help="evolving process up to the first cycle")
    ev.add_argument("--b", type=int, required=True)
    ev.add_argument("--n", type=int, required=True)
    ev.add_argument("--runs", type=int, default=0)
    ev.add_argument("--seed", type=int)
    ev.add_argument("--exact", action="store_true")
    ev.add_argument("--asympt", action="store_true")
    ev.set_defaults(func=cmd_evolve)
    return p


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "b", None) is not None and args.b < 2:
            raise UsageError("--b must be >= 2")
        if args.workers is not None and args.workers < 1:
            raise UsageError("--workers must be >= 1")
        out = args.func(args)
    except UsageError as exc:
        print(f"excessum: usage error: {exc}", file=stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except Exception as exc:  # noqa: BLE001
        print(f"excessum: error: {exc}", file=stderr)
        return 1
    stdout.write(out.render(args.format))
    return 0


def main() -> None:
    sys.exit(run())
