"""FastAPI service exposing the factorization operations.

All endpoints are pure: they parse the request, run the exact-arithmetic
operation and return a structured result.  Domain failures (a requested
factorization that does not exist, a verify mismatch) are 200 responses
with a negative verdict; only malformed input (422) and internal
invariant violations (500) map to error statuses.
"""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from ..conditions import ConditionReport, condition_report
from ..decompositions import Permutation, lul, lup, multiply_factors, plu, ulu
from ..errors import InvariantViolation, ParseError
from ..factor import (
    FactorPair,
    NoFactorization,
    RectangularFactorization,
    almost_lu,
    bordered_lu,
    lu,
)
from ..matio import parse_factor_blocks, parse_matrix_text
from ..matrix import Matrix
from ..oracle import run_selftest
from . import schemas

app = FastAPI(
    title="exactlu",
    description="Exact LU and almost-LU factorization of matrices over Q and GF(p)",
    version="0.1.0",
)


@app.exception_handler(ParseError)
async def _parse_error(request, exc: ParseError):
    return JSONResponse(
        status_code=422,
        content={"detail": str(exc), "line": exc.line, "column": exc.column},
    )


@app.exception_handler(ValueError)
async def _usage_error(request, exc: ValueError):
    return JSONResponse(status_code=422, content={"detail": str(exc)})


@app.exception_handler(InvariantViolation)
async def _invariant_error(request, exc: InvariantViolation):
    return JSONResponse(status_code=500, content={"detail": str(exc)})


def _per_k(report: ConditionReport) -> list[schemas.PerKRecord]:
    return [
        schemas.PerKRecord(
            k=row.k,
            rank_leading=row.rank_leading,
            rank_row_block=row.rank_row_block,
            rank_col_block=row.rank_col_block,
            deficiency=row.deficiency,
        )
        for row in report.per_k
    ]


def _matrix_block(m: Matrix) -> schemas.FactorBlock:
    return schemas.FactorBlock(
        kind="matrix",
        field=m.field.token,
        rows=m.rows,
        cols=m.cols,
        entries=m.to_token_rows(),
    )


def _factor_block(factor) -> schemas.FactorBlock:
    if isinstance(factor, Permutation):
        return schemas.FactorBlock(kind="permutation", mapping=list(factor.mapping))
    return _matrix_block(factor)


def _trace_steps(pivot_trace) -> list[schemas.TraceStep]:
    return [
        schemas.TraceStep(k=step.k, pivot=step.position, priority=step.priority)
        for step in pivot_trace
    ]


@app.get("/health", response_model=schemas.HealthResponse)
def health() -> schemas.HealthResponse:
    return schemas.HealthResponse(status="ok")


@app.post("/check", response_model=schemas.CheckResponse)
def check(request: schemas.CheckRequest) -> schemas.CheckResponse:
    report = condition_report(parse_matrix_text(request.matrix))
    return schemas.CheckResponse(
        verdict="lu-exists" if report.satisfies else "no-lu-factorization",
        n=report.n,
        failure_degree=report.failure_degree,
        per_k=_per_k(report),
    )


def _no_factorization(result: NoFactorization, trace: bool) -> schemas.FactorResponse:
    response = schemas.FactorResponse(
        verdict="no-factorization",
        failure_degree=result.report.failure_degree,
        per_k=_per_k(result.report),
    )
    if result.attempt is not None:
        response.extra_lower = result.attempt.extra_lower
        response.extra_upper = result.attempt.extra_upper
        if trace:
            response.trace = _trace_steps(result.attempt.pivot_trace)
    return response


@app.post("/factor/{verb}", response_model=schemas.FactorResponse, response_model_exclude_none=True)
def factor(verb: schemas.FactorVerb, request: schemas.FactorRequest) -> schemas.FactorResponse:
    takes_extra = verb in (schemas.FactorVerb.kw, schemas.FactorVerb.hv)
    if takes_extra and request.extra is None:
        raise ValueError(f"'{verb.value}' requires the extra option")
    if not takes_extra and request.extra is not None:
        raise ValueError(f"'{verb.value}' does not accept the extra option")
    matrix = parse_matrix_text(request.matrix)

    if verb is schemas.FactorVerb.lu:
        result = lu(matrix)
    elif verb is schemas.FactorVerb.kw:
        result = almost_lu(matrix, request.extra)
    elif verb is schemas.FactorVerb.hv:
        result = bordered_lu(matrix, request.extra)
    elif verb is schemas.FactorVerb.ulu:
        result = ulu(matrix)
    elif verb is schemas.FactorVerb.lul:
        result = lul(matrix)
    elif verb is schemas.FactorVerb.plu:
        result = plu(matrix)
    else:
        result = lup(matrix)

    if isinstance(result, NoFactorization):
        return _no_factorization(result, request.trace)

    if isinstance(result, FactorPair):
        factors = [result.lower, result.upper]
        pivot_trace = result.pivot_trace
        extra_lower, extra_upper = result.extra_lower, result.extra_upper
    elif isinstance(result, RectangularFactorization):
        factors = [result.left, result.right]
        pivot_trace = result.pivot_trace
        extra_lower = extra_upper = None
    else:
        factors = list(result.factors)
        pivot_trace = None
        extra_lower = extra_upper = None

    return schemas.FactorResponse(
        verdict="factored",
        factors=[_factor_block(f) for f in factors],
        extra_lower=extra_lower,
        extra_upper=extra_upper,
        trace=_trace_steps(pivot_trace) if request.trace and pivot_trace else None,
    )


@app.post("/verify", response_model=schemas.VerifyResponse, response_model_exclude_none=True)
def verify(request: schemas.VerifyRequest) -> schemas.VerifyResponse:
    original = parse_matrix_text(request.matrix)
    product = multiply_factors(parse_factor_blocks(request.factors))
    if isinstance(product, Permutation):
        product = product.matrix(original.field)
    if product.field != original.field:
        raise ValueError(
            f"factors are over {product.field.token}, matrix over {original.field.token}"
        )
    if (product.rows, product.cols) != (original.rows, original.cols):
        raise ValueError(
            f"product is {product.rows}x{product.cols}, "
            f"matrix is {original.rows}x{original.cols}"
        )
    if product == original:
        return schemas.VerifyResponse(verdict="verified")
    for i in range(1, original.rows + 1):
        for j in range(1, original.cols + 1):
            expected, actual = original.entry(i, j), product.entry(i, j)
            if expected != actual:
                return schemas.VerifyResponse(
                    verdict="mismatch",
                    first_mismatch=schemas.Mismatch(
                        row=i, col=j, expected=str(expected), actual=str(actual)
                    ),
                )
    raise InvariantViolation("matrices differ but no differing entry found")


@app.post("/selftest", response_model=schemas.SelftestResponse)
def selftest() -> schemas.SelftestResponse:
    result = run_selftest()
    return schemas.SelftestResponse(
        verdict="passed" if result.passed else "failed",
        sweeps=[
            schemas.SweepReport(
                name=s.name,
                cases=s.cases,
                failures=s.failures,
                first_counterexample=s.first_counterexample,
            )
            for s in result.sweeps
        ],
    )
