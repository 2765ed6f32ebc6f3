"""Command-line front end.

A thin client over the service layer: by default the pydantic handlers run
in-process; with --url the same payloads are POSTed to a running server.
Exit codes: 0 success/unique, 1 theorem-contradicting outcome, 2 usage
error, 3 inconclusive.
"""
from __future__ import annotations

import json
import sys
import time

import click
from pydantic import BaseModel, ValidationError

from . import service
from .engine import EliminationMismatch, SearchExhausted, UniquenessFailure
from .multfunc import Conflict
from .triangular import GaussViolation, LemmaViolation

EXIT_OK = 0
EXIT_FALSIFIED = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3

_FALSIFYING = (
    UniquenessFailure,
    LemmaViolation,
    GaussViolation,
    SearchExhausted,
    EliminationMismatch,
    Conflict,
)


class _RemoteFalsified(Exception):
    pass


@click.group()
@click.option(
    "--url",
    default=None,
    metavar="URL",
    help="Base URL of a running addunique service; default runs in-process.",
)
@click.pass_context
def main(ctx: click.Context, url: str | None) -> None:
    """Certify that k-additivity on positive triangular numbers forces a
    multiplicative function to be the identity."""
    ctx.obj = {"url": url}


def _call(ctx, endpoint, handler, request_model, response_model, payload):
    url = ctx.obj.get("url")
    if url is None:
        return handler(request_model(**payload))
    import httpx

    resp = httpx.post(url.rstrip("/") + endpoint, json=payload, timeout=600.0)
    if resp.status_code == 409:
        detail = resp.json().get("detail", {})
        raise _RemoteFalsified(f"{detail.get('error')}: {detail.get('message')}")
    if resp.status_code >= 400:
        raise ValueError(f"service rejected the request: {resp.text}")
    return response_model.model_validate(resp.json())


def _run(ctx, fn):
    try:
        return fn()
    except _FALSIFYING as exc:
        click.echo(f"FALSIFIED ({type(exc).__name__}): {exc}", err=True)
        sys.exit(EXIT_FALSIFIED)
    except _RemoteFalsified as exc:
        click.echo(f"FALSIFIED: {exc}", err=True)
        sys.exit(EXIT_FALSIFIED)
    except (ValueError, ValidationError) as exc:
        click.echo(f"usage error: {exc}", err=True)
        sys.exit(EXIT_USAGE)


def _write_json(model: BaseModel, path: str | None) -> None:
    if path is None:
        return
    text = json.dumps(model.model_dump(), indent=2) + "\n"
    with open(path, "w") as fh:
        fh.write(text)


def _fmt_rational(r: service.RationalModel) -> str:
    return r.num if r.den == "1" else f"{r.num}/{r.den}"


def _fmt_seed(seed: service.SeedModel | None) -> str:
    if seed is None:
        return "(no seed)"
    return (
        f"f(2)={_fmt_rational(seed.f2)}, "
        f"f(3)={_fmt_rational(seed.f3)}, "
        f"f(5)={_fmt_rational(seed.f5)}"
    )


@main.command()
@click.option("--k", type=int, required=True, help="number of summands (>= 3)")
@click.option("--bound", type=int, default=1000, show_default=True)
@click.option(
    "--strategy",
    type=click.Choice(["directed", "generic"]),
    default="directed",
    show_default=True,
)
@click.option(
    "--identity-bound",
    type=int,
    default=None,
    help="identity generation bound for the generic strategy (default 3 x bound)",
)
@click.option("--json", "json_path", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def certify(ctx, k, bound, strategy, identity_bound, json_path):
    """Certify f(n) = n for all n up to the bound."""
    started = time.monotonic()
    resp: service.CertifyResponse = _run(
        ctx,
        lambda: _call(
            ctx,
            "/certify",
            service.handle_certify,
            service.CertifyRequest,
            service.CertifyResponse,
            {
                "k": k,
                "bound": bound,
                "strategy": strategy,
                "identity_bound": identity_bound,
            },
        ),
    )
    elapsed = (time.monotonic() - started) * 1000.0
    click.echo(f"k={resp.k} bound={resp.bound} strategy={resp.strategy}")
    for branch in resp.branches:
        line = f"  branch {_fmt_seed(branch.seed)}: {branch.status}"
        ev = branch.evidence
        if ev is not None and ev.kind == "contradiction":
            line += (
                f" (identity total {ev.identity.total}: "
                f"{_fmt_rational(ev.lhs)} vs {_fmt_rational(ev.rhs)})"
            )
        click.echo(line)
    click.echo(f"verdict: {resp.verdict}")
    if resp.verdict == "unique":
        click.echo(f"f(n) = n for all n <= {resp.bound}")
    click.echo(f"elapsed: {elapsed:.0f} ms", err=True)
    _write_json(resp, json_path)
    if resp.verdict == "unique":
        sys.exit(EXIT_OK)
    if resp.verdict == "inconclusive":
        sys.exit(EXIT_INCONCLUSIVE)
    sys.exit(EXIT_FALSIFIED)


@main.command()
@click.option("--k", type=int, required=True)
@click.option("--json", "json_path", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def seeds(ctx, k, json_path):
    """Solve the seed system for f(2), f(3), f(5)."""
    resp: service.SeedsResponse = _run(
        ctx,
        lambda: _call(
            ctx, "/seeds", service.handle_seeds, service.SeedsRequest,
            service.SeedsResponse, {"k": k},
        ),
    )
    click.echo(f"seed solutions for k={resp.k}: {len(resp.solutions)}")
    for sol in resp.solutions:
        click.echo(f"  {_fmt_seed(sol)}")
    _write_json(resp, json_path)
    sys.exit(EXIT_OK)


@main.command()
@click.option("--k", type=int, required=True, help="number of summands (>= 4)")
@click.option("--bound", type=int, default=100000, show_default=True)
@click.option("--json", "json_path", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def lemma(ctx, k, bound, json_path):
    """Compute the integers up to the bound that are not sums of k positive
    triangular numbers, and check them against {1..k-1, k+1, k+3}."""
    resp: service.LemmaResponse = _run(
        ctx,
        lambda: _call(
            ctx, "/lemma", service.handle_lemma, service.LemmaRequest,
            service.LemmaResponse, {"k": k, "bound": bound},
        ),
    )
    members = ", ".join(str(m) for m in resp.exceptional)
    click.echo(f"not a sum of {resp.k} positive triangulars (up to {resp.bound}): {{{members}}}")
    _write_json(resp, json_path)
    sys.exit(EXIT_OK)


@main.command("repr")
@click.option("--n", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--count-only", is_flag=True, default=False)
@click.option("--json", "json_path", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def repr_cmd(ctx, n, k, count_only, json_path):
    """List the representations of n as a sum of k positive triangulars."""
    resp: service.ReprResponse = _run(
        ctx,
        lambda: _call(
            ctx, "/representations", service.handle_repr, service.ReprRequest,
            service.ReprResponse, {"n": n, "k": k, "count_only": count_only},
        ),
    )
    click.echo(f"{resp.n} has {resp.count} representations as a sum of {resp.k} positive triangulars")
    for parts in resp.representations or []:
        click.echo("  " + " + ".join(str(p) for p in parts))
    _write_json(resp, json_path)
    sys.exit(EXIT_OK)


@main.command()
@click.option("--n", type=int, required=True)
@click.option("--json", "json_path", type=click.Path(dir_okay=False), default=None)
@click.pass_context
def gauss(ctx, n, json_path):
    """Decompose n into three triangular numbers (zeros allowed)."""
    resp: service.GaussResponse = _run(
        ctx,
        lambda: _call(
            ctx, "/gauss", service.handle_gauss, service.GaussRequest,
            service.GaussResponse, {"n": n},
        ),
    )
    click.echo(f"{resp.n} = " + " + ".join(str(t) for t in resp.triple))
    _write_json(resp, json_path)
    sys.exit(EXIT_OK)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run(service.app, host=host, port=port)


if __name__ == "__main__":
    main()
