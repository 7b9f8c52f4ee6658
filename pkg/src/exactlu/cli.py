"""Command line front end.

The CLI is a thin client of the HTTP service: every command builds a
request, sends it (in process by default, to a remote service with
``--server``) and renders the structured response.  Exit codes: 0 the
requested factorization exists or was verified, 1 it does not exist
(diagnostics are still printed), 2 usage or parse error, 3 internal
invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys

FACTOR_VERBS = ("lu", "kw", "hv", "ulu", "lul", "plu", "lup")
_OK_VERDICTS = {"lu-exists", "factored", "verified", "passed"}
_REPORT_HEADERS = (
    "k",
    "rank A[{1..k}]",
    "rank A[{1..k},{1..n}]",
    "rank A[{1..n},{1..k}]",
    "deficiency",
)


def _nonnegative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="exactlu",
        description="Exact LU and almost-LU factorization over Q and GF(p).",
    )
    parser.add_argument(
        "--server",
        metavar="URL",
        help="send requests to a running exactlu service instead of computing in process",
    )
    commands = parser.add_subparsers(dest="verb", required=True, metavar="command")

    def add_matrix_command(name, help_text, trace=False, extra=False):
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument("input", help="matrix file ('-' for stdin)")
        if extra:
            sub.add_argument(
                "--extra",
                type=_nonnegative_int,
                required=True,
                help="number of extra diagonals (kw) or extra columns/rows (hv)",
            )
        if trace:
            sub.add_argument(
                "--trace", action="store_true", help="print one pivot line per step"
            )
        sub.add_argument("--json", action="store_true", help="structured output")
        return sub

    add_matrix_command("check", "evaluate the leading-rank conditions")
    add_matrix_command("lu", "LU factorization (or diagnostics)", trace=True)
    add_matrix_command("kw", "almost-LU with extra diagonals", trace=True, extra=True)
    add_matrix_command("hv", "almost-LU with extra columns and rows", trace=True, extra=True)
    add_matrix_command("ulu", "upper * lower * upper decomposition")
    add_matrix_command("lul", "lower * upper * lower decomposition")
    add_matrix_command("plu", "permutation * lower * upper decomposition")
    add_matrix_command("lup", "lower * upper * permutation decomposition")

    verify = commands.add_parser("verify", help="re-multiply factor blocks against a matrix")
    verify.add_argument("input", help="original matrix file ('-' for stdin)")
    verify.add_argument("factors", help="factor block file ('-' for stdin)")
    verify.add_argument("--json", action="store_true", help="structured output")

    selftest = commands.add_parser("selftest", help="run the exhaustive oracle sweeps")
    selftest.add_argument("--json", action="store_true", help="structured output")

    serve = commands.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _post_local(path: str, payload: dict):
    import asyncio

    import httpx

    from .service import app

    async def go():
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://exactlu.local"
        ) as client:
            response = await client.post(path, json=payload)
            return response.status_code, response.json()

    return asyncio.run(go())


def _post_remote(server: str, path: str, payload: dict):
    import httpx

    try:
        response = httpx.post(server.rstrip("/") + path, json=payload, timeout=600.0)
    except httpx.HTTPError as exc:
        raise OSError(f"cannot reach {server}: {exc}") from exc
    return response.status_code, response.json()


def _post(server, path, payload):
    if server:
        return _post_remote(server, path, payload)
    return _post_local(path, payload)


def _render_report_table(n, per_k, out):
    widths = [max(len(h), 2) for h in _REPORT_HEADERS]
    widths[0] = max(widths[0], len(str(n)))
    out.write(" | ".join(h.rjust(w) for h, w in zip(_REPORT_HEADERS, widths)) + "\n")
    for row in per_k:
        cells = (
            row["k"],
            row["rank_leading"],
            row["rank_row_block"],
            row["rank_col_block"],
            row["deficiency"],
        )
        out.write(" | ".join(str(c).rjust(w) for c, w in zip(cells, widths)) + "\n")


def _render_check(body, out):
    _render_report_table(body["n"], body["per_k"], out)
    if body["verdict"] == "lu-exists":
        out.write("verdict: LU factorization exists\n")
    else:
        out.write("verdict: no LU factorization\n")
    out.write(f"failure degree: {body['failure_degree']}\n")


def _permutation_entries(mapping):
    n = len(mapping)
    return [["1" if mapping[i] == j + 1 else "0" for j in range(n)] for i in range(n)]


def _render_trace(trace, out):
    for step in trace:
        pivot = step.get("pivot")
        if pivot is None:
            out.write(f"k={step['k']} pivot=none\n")
        else:
            i, j = pivot
            out.write(f"k={step['k']} pivot=({i},{j}) priority={step['priority']}\n")


def _render_factor_blocks(factors, out):
    parts = []
    for block in factors:
        if block["kind"] == "permutation":
            parts.append("[" + " ".join(str(v) for v in block["mapping"]) + "]")
        else:
            body = "\n".join(" ".join(row) for row in block["entries"])
            parts.append(f"{block['rows']} {block['cols']} {block['field']}\n{body}")
    out.write("\n---\n".join(parts) + "\n")


def _render_factor(body, out):
    if body["verdict"] == "factored":
        if body.get("trace"):
            _render_trace(body["trace"], out)
        _render_factor_blocks(body["factors"], out)
        return
    n = len(body["per_k"])
    _render_report_table(n, body["per_k"], out)
    out.write("verdict: no factorization\n")
    out.write(f"failure degree: {body['failure_degree']}\n")
    if body.get("extra_lower") is not None:
        out.write(
            f"extra diagonals produced: lower={body['extra_lower']}, "
            f"upper={body['extra_upper']}\n"
        )


def _render_verify(body, out):
    if body["verdict"] == "verified":
        out.write("verified\n")
    else:
        m = body["first_mismatch"]
        out.write(
            f"mismatch at ({m['row']},{m['col']}): "
            f"expected {m['expected']}, actual {m['actual']}\n"
        )


def _render_selftest(body, out):
    for sweep in body["sweeps"]:
        out.write(f"{sweep['name']}: {sweep['cases']} cases, {sweep['failures']} failures\n")
        if sweep.get("first_counterexample"):
            out.write(f"  first counterexample: {sweep['first_counterexample']}\n")
    out.write(f"selftest: {body['verdict']}\n")


def _spec_json(verb, body):
    """Project the service response onto the documented JSON output object."""
    out = {"verdict": body["verdict"]}
    if verb == "check":
        out["failure_degree"] = body["failure_degree"]
        out["per_k"] = body["per_k"]
    elif verb in FACTOR_VERBS:
        if body["verdict"] == "factored":
            factors = []
            for block in body["factors"]:
                if block["kind"] == "permutation":
                    factors.append(_permutation_entries(block["mapping"]))
                else:
                    factors.append(block["entries"])
            out["factors"] = factors
            if body.get("trace") is not None:
                out["trace"] = [
                    {
                        "k": step["k"],
                        "pivot": step.get("pivot"),
                        "priority": step.get("priority"),
                    }
                    for step in body["trace"]
                ]
        else:
            out["failure_degree"] = body["failure_degree"]
            out["per_k"] = body["per_k"]
    elif verb == "verify":
        if body.get("first_mismatch") is not None:
            out["first_mismatch"] = body["first_mismatch"]
    elif verb == "selftest":
        out["sweeps"] = body["sweeps"]
    return out


def _exit_code(verdict: str) -> int:
    if verdict in _OK_VERDICTS:
        return 0
    if verdict == "failed":  # a failing selftest means the library is broken
        return 3
    return 1


def run_command(args) -> int:
    verb = args.verb
    if verb == "serve":
        import uvicorn

        from .service import app

        uvicorn.run(app, host=args.host, port=args.port)
        return 0

    if verb == "check":
        payload = {"matrix": _read_input(args.input)}
        path = "/check"
    elif verb in FACTOR_VERBS:
        payload = {"matrix": _read_input(args.input)}
        if getattr(args, "extra", None) is not None:
            payload["extra"] = args.extra
        if getattr(args, "trace", False):
            payload["trace"] = True
        path = f"/factor/{verb}"
    elif verb == "verify":
        payload = {"matrix": _read_input(args.input), "factors": _read_input(args.factors)}
        path = "/verify"
    else:
        payload = {}
        path = "/selftest"

    status, body = _post(args.server, path, payload)

    if status == 422:
        detail = body.get("detail", "invalid input") if isinstance(body, dict) else body
        print(f"error: {detail}", file=sys.stderr)
        return 2
    if status != 200:
        detail = body.get("detail", "internal error") if isinstance(body, dict) else body
        print(f"internal error: {detail}", file=sys.stderr)
        return 3

    if getattr(args, "json", False):
        print(json.dumps(_spec_json(verb, body), indent=2))
    else:
        out = sys.stdout
        if verb == "check":
            _render_check(body, out)
        elif verb in FACTOR_VERBS:
            _render_factor(body, out)
        elif verb == "verify":
            _render_verify(body, out)
        else:
            _render_selftest(body, out)
    return _exit_code(body["verdict"])


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run_command(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KeyboardInterrupt:
        raise
    except Exception as exc:  # anything unexpected is an internal failure
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
