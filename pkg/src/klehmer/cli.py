"""Command-line front end with machine-readable output.

Subcommands: classify, count, list, alpha, alpha-verify, chernick,
semiprime, pseudo-base.  JSON is the default format (csv everywhere,
bfile for list).  Value fields that can exceed 64 bits are emitted as
decimal strings so downstream JSON consumers cannot lose precision;
small structural fields (k, exponents, counts, indexes) stay numeric.

Exit codes: 0 success, 1 usage error, 2 bound or memory budget exceeded,
3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

from .arith import (
    _as_natural,
    carmichael_lambda,
    euler_phi,
    factorize,
    radical,
)
from .carmichael import chernick, korselt_test, pseudoprime_base, fermat_test
from .lehmer import (
    LehmerIndex,
    lehmer_index,
    in_Lk,
    semiprime_decompose,
    semiprime_in_Lk,
)
from .sieve import (
    LARGE_MAX_LIMIT,
    LimitExceededError,
    VerificationFailure,
    alpha_search,
    AlphaNotFound,
    count_table,
    enumerate_carmichael,
    enumerate_Lk_composites,
    verify_alpha_entry,
)

__all__ = [
    "ClassificationReport",
    "RunConfig",
    "classification_report",
    "emit_bfile",
    "main",
    "console_main",
]


@dataclass(frozen=True)
class ClassificationReport:
    """Everything the library knows about a single n."""

    n: int
    factorization: tuple[tuple[int, int], ...]
    phi: int
    lam: int
    rad_phi: int
    lehmer_index: LehmerIndex
    is_carmichael: bool
    pseudoprime_base: int | None
    base_degenerate: bool

    def to_dict(self) -> dict:
        out = {
            "n": str(self.n),
            "factorization": [[str(p), e] for p, e in self.factorization],
            "phi": str(self.phi),
            "lambda": str(self.lam),
            "rad_phi": str(self.rad_phi),
            "lehmer_index": _index_json(self.lehmer_index),
            "is_carmichael": self.is_carmichael,
        }
        if self.pseudoprime_base is not None:
            out["pseudoprime_base"] = str(self.pseudoprime_base)
        out["base_degenerate"] = self.base_degenerate
        return out


@dataclass(frozen=True)
class RunConfig:
    """Validated options of a bulk (sieving) command."""

    limit: int
    ks: tuple
    fmt: str
    segment_size: int | None
    workers: int
    allow_large: bool
    prime_cache: str | None

    def __post_init__(self):
        if self.fmt not in ("json", "csv", "bfile"):
            raise ValueError(f"unknown format {self.fmt!r}")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")
        if self.segment_size is not None and self.segment_size < 1:
            raise ValueError("segment size must be positive")

    @property
    def max_limit(self) -> int | None:
        return LARGE_MAX_LIMIT if self.allow_large else None


def classification_report(n) -> ClassificationReport:
    n = _as_natural(n, minimum=1)
    f = factorize(n)
    phi = euler_phi(f)
    idx = lehmer_index(n)
    base = None
    degenerate = False
    if f.is_composite and idx.is_finite:
        base = pseudoprime_base(n)
        degenerate = base in (1, n - 1)
    return ClassificationReport(
        n=n,
        factorization=f.factors,
        phi=phi,
        lam=carmichael_lambda(f),
        rad_phi=radical(factorize(phi)),
        lehmer_index=idx,
        is_carmichael=korselt_test(n),
        pseudoprime_base=base,
        base_degenerate=degenerate,
    )


def emit_bfile(sequence, offset: int = 1) -> str:
    """OEIS b-file text: one "index value" line per term, from ``offset``."""
    values = [int(v) for v in sequence]
    for a, b in zip(values, values[1:]):
        if b <= a:
            raise ValueError("sequence must be strictly ascending")
    return "".join(f"{offset + i} {v}\n" for i, v in enumerate(values))


def _index_json(idx: LehmerIndex | None):
    if idx is None:
        return None
    return idx.k if idx.is_finite else "none"


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return "" if value is None else str(value)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows([[_csv_cell(v) for v in row] for row in rows])
    return buf.getvalue()


def _parse_int(text: str, name: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {text!r}")


def _parse_limit(text: str) -> int:
    """Accept plain integers and scientific notation like 1e6."""
    try:
        return int(text)
    except ValueError:
        pass
    try:
        x = float(text)
    except ValueError:
        raise ValueError(f"invalid limit {text!r}")
    if not x.is_integer() or abs(x) > 1e18:
        raise ValueError(f"invalid limit {text!r}")
    return int(x)


def _parse_ks(text: str) -> tuple:
    ks = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if part == "inf":
            ks.append(math.inf)
        else:
            ks.append(_parse_int(part, "k"))
    if not ks:
        raise ValueError("empty k list")
    return tuple(ks)


def _fmt_k(k) -> str | int:
    return "inf" if k == math.inf else int(k)


class _Parser(argparse.ArgumentParser):
    # The interface contract reserves exit status 2 for exceeded bounds,
    # so usage problems must leave with status 1 instead of argparse's 2.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_format(p: argparse.ArgumentParser, choices=("json", "csv")) -> None:
    p.add_argument("--format", choices=choices, default="json")


def _add_bulk_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--segment-size", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--allow-large", action="store_true",
                   help="raise the limit ceiling from 1e7 to 1e8")
    p.add_argument("--prime-cache", default=None,
                   help="path of an on-disk base-prime cache")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="klehmer", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="full report for a single n")
    p.add_argument("n")
    _add_format(p)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("count", help="counting table C_k(10^j)")
    p.add_argument("--limit", required=True)
    p.add_argument("--k", default="2,3,4,5,inf")
    _add_format(p)
    _add_bulk_options(p)
    p.set_defaults(handler=_cmd_count)

    p = sub.add_parser("list", help="enumerate a membership set")
    p.add_argument("--set", required=True, dest="set_name",
                   help="l2-composites | lk-composites:<k> | carmichael")
    p.add_argument("--limit", required=True)
    _add_format(p, choices=("json", "csv", "bfile"))
    _add_bulk_options(p)
    p.set_defaults(handler=_cmd_list)

    p = sub.add_parser("alpha", help="search the least Carmichael number outside L_k")
    p.add_argument("--k", required=True, type=int)
    p.add_argument("--limit", required=True)
    _add_format(p)
    _add_bulk_options(p)
    p.set_defaults(handler=_cmd_alpha)

    p = sub.add_parser("alpha-verify", help="verify a claimed alpha(k) value")
    p.add_argument("--k", required=True, type=int)
    p.add_argument("--n", required=True)
    _add_format(p)
    p.set_defaults(handler=_cmd_alpha_verify)

    p = sub.add_parser("chernick", help="build Chernick candidates U_k(m)")
    p.add_argument("--k", required=True, type=int)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--m")
    group.add_argument("--m-max")
    _add_format(p)
    p.set_defaults(handler=_cmd_chernick)

    p = sub.add_parser("semiprime", help="decompose p*q and test L_k membership")
    p.add_argument("p")
    p.add_argument("q")
    p.add_argument("--k", type=int, default=None)
    _add_format(p)
    p.set_defaults(handler=_cmd_semiprime)

    p = sub.add_parser("pseudo-base", help="Fermat-pseudoprime base for n in L_inf")
    p.add_argument("n")
    _add_format(p)
    p.set_defaults(handler=_cmd_pseudo_base)

    return parser


def _cmd_classify(args) -> str:
    report = classification_report(int(args.n))
    if args.format == "csv":
        fact = " ".join(f"{p}^{e}" for p, e in report.factorization)
        row = [
            report.n, fact, report.phi, report.lam, report.rad_phi,
            _index_json(report.lehmer_index), report.is_carmichael,
            "" if report.pseudoprime_base is None else report.pseudoprime_base,
            report.base_degenerate,
        ]
        return _csv_text(
            ["n", "factorization", "phi", "lambda", "rad_phi", "lehmer_index",
             "is_carmichael", "pseudoprime_base", "base_degenerate"],
            [row],
        )
    return _json_text(report.to_dict())


def _bulk_config(args, ks=()) -> RunConfig:
    return RunConfig(
        limit=_parse_limit(args.limit),
        ks=ks,
        fmt=args.format,
        segment_size=args.segment_size,
        workers=args.workers,
        allow_large=args.allow_large,
        prime_cache=args.prime_cache,
    )


def _cmd_count(args) -> str:
    cfg = _bulk_config(args, ks=_parse_ks(args.k))
    table = count_table(
        cfg.limit,
        cfg.ks,
        segment_size=cfg.segment_size,
        workers=cfg.workers,
        max_limit=cfg.max_limit,
        prime_cache=cfg.prime_cache,
    )
    rows = [
        (_fmt_k(k), power, table.count(k, power))
        for k in table.ks
        for power in table.powers
    ]
    if cfg.fmt == "csv":
        return _csv_text(["k", "X", "count"], rows)
    return _json_text({
        "limit": table.limit,
        "rows": [{"k": k, "X": x, "count": c} for k, x, c in rows],
    })


def _parse_set(name: str):
    if name == "l2-composites":
        return ("lk", 2)
    if name.startswith("lk-composites:"):
        return ("lk", _parse_int(name.split(":", 1)[1], "k"))
    if name == "carmichael":
        return ("carmichael", None)
    raise ValueError(f"unknown set {name!r}")


def _cmd_list(args) -> str:
    cfg = _bulk_config(args)
    kind, k = _parse_set(args.set_name)
    common = dict(
        segment_size=cfg.segment_size,
        workers=cfg.workers,
        max_limit=cfg.max_limit,
    )
    if kind == "lk":
        values = enumerate_Lk_composites(cfg.limit, k, **common)
    else:
        values = enumerate_carmichael(cfg.limit, **common)
    if cfg.fmt == "bfile":
        return emit_bfile(values)
    if cfg.fmt == "csv":
        return _csv_text(["n"], [(v,) for v in values])
    return _json_text({
        "set": args.set_name,
        "limit": cfg.limit,
        "count": len(values),
        "values": [str(v) for v in values],
    })


def _alpha_payload(record) -> dict:
    if isinstance(record, AlphaNotFound):
        return {"k": record.k, "found": False, "bound": str(record.bound)}
    return {
        "k": record.k,
        "found": True,
        "n": str(record.n),
        "omega": record.omega,
        "in_next": record.in_next,
        "bound": str(record.bound),
    }


def _alpha_text(record, fmt: str) -> str:
    payload = _alpha_payload(record)
    if fmt == "csv":
        header = ["k", "found", "n", "omega", "in_next", "bound"]
        row = [payload["k"], payload["found"], payload.get("n", ""),
               payload.get("omega", ""), payload.get("in_next", ""),
               payload["bound"]]
        return _csv_text(header, [row])
    return _json_text(payload)


def _cmd_alpha(args) -> str:
    cfg = _bulk_config(args)
    record = alpha_search(
        args.k,
        cfg.limit,
        segment_size=cfg.segment_size,
        workers=cfg.workers,
        max_limit=cfg.max_limit,
    )
    return _alpha_text(record, cfg.fmt)


def _cmd_alpha_verify(args) -> str:
    record = verify_alpha_entry(args.k, int(args.n))
    return _alpha_text(record, args.format)


def _candidate_payload(cand) -> dict:
    return {
        "k": cand.k,
        "m": str(cand.m),
        "factors": [str(f) for f in cand.factors],
        "value": str(cand.value),
        "all_prime": cand.all_prime,
        "divisibility_ok": cand.divisibility_ok,
        "is_carmichael": cand.is_carmichael,
        "guaranteed_index_k": cand.guaranteed_index_k,
        "observed_index": _index_json(cand.observed_index),
    }


def _cmd_chernick(args) -> str:
    if args.m is not None:
        candidates = [chernick(args.k, _parse_limit(args.m))]
    else:
        m_max = _parse_limit(args.m_max)
        _as_natural(m_max, minimum=1, name="m-max")
        candidates = [chernick(args.k, m) for m in range(1, m_max + 1)]
    payloads = [_candidate_payload(c) for c in candidates]
    if args.format == "csv":
        header = ["k", "m", "value", "factors", "all_prime", "divisibility_ok",
                  "is_carmichael", "guaranteed_index_k", "observed_index"]
        rows = [
            (p["k"], p["m"], p["value"], " ".join(p["factors"]), p["all_prime"],
             p["divisibility_ok"], p["is_carmichael"], p["guaranteed_index_k"],
             p["observed_index"])
            for p in payloads
        ]
        return _csv_text(header, rows)
    if args.m is not None:
        return _json_text(payloads[0])
    return _json_text({"k": args.k, "candidates": payloads})


def _cmd_semiprime(args) -> str:
    dec = semiprime_decompose(int(args.p), int(args.q))
    payload = {
        "p": str(dec.p),
        "q": str(dec.q),
        "a": dec.a,
        "b": dec.b,
        "d": str(dec.d),
        "alpha": str(dec.alpha),
        "beta": str(dec.beta),
    }
    if args.k is not None:
        payload["k"] = args.k
        payload["criterion"] = semiprime_in_Lk(dec, args.k)
        payload["direct"] = in_Lk(dec.p * dec.q, args.k)
    if args.format == "csv":
        header = list(payload.keys())
        return _csv_text(header, [[payload[h] for h in header]])
    return _json_text(payload)


def _cmd_pseudo_base(args) -> str:
    n = int(args.n)
    base = pseudoprime_base(n)
    payload = {
        "n": str(n),
        "base": str(base),
        "degenerate": base in (1, n - 1),
        "fermat_to_base": fermat_test(n, base),
    }
    if args.format == "csv":
        header = list(payload.keys())
        return _csv_text(header, [[payload[h] for h in header]])
    return _json_text(payload)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = args.handler(args)
    except (LimitExceededError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except VerificationFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(text)
    return 0


def console_main() -> None:
    raise SystemExit(main())
