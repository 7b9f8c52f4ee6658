"""Pydantic request and response models for the HTTP service."""

from __future__ import annotations

from enum import Enum

from pydantic import BaseModel, Field


class FactorVerb(str, Enum):
    lu = "lu"
    kw = "kw"
    hv = "hv"
    ulu = "ulu"
    lul = "lul"
    plu = "plu"
    lup = "lup"


class CheckRequest(BaseModel):
    matrix: str = Field(description="matrix in the text file format")


class PerKRecord(BaseModel):
    k: int
    rank_leading: int
    rank_row_block: int
    rank_col_block: int
    deficiency: int


class CheckResponse(BaseModel):
    verdict: str
    n: int
    failure_degree: int
    per_k: list[PerKRecord]


class FactorRequest(BaseModel):
    matrix: str
    extra: int | None = Field(default=None, description="extra diagonals/columns, kw and hv only")
    trace: bool = False


class FactorBlock(BaseModel):
    kind: str  # "matrix" or "permutation"
    field: str | None = None
    rows: int | None = None
    cols: int | None = None
    entries: list[list[str]] | None = None
    mapping: list[int] | None = None


class TraceStep(BaseModel):
    k: int
    pivot: tuple[int, int] | None
    priority: int | None


class FactorResponse(BaseModel):
    verdict: str
    factors: list[FactorBlock] | None = None
    extra_lower: int | None = None
    extra_upper: int | None = None
    failure_degree: int | None = None
    per_k: list[PerKRecord] | None = None
    trace: list[TraceStep] | None = None


class VerifyRequest(BaseModel):
    matrix: str
    factors: str


class Mismatch(BaseModel):
    row: int
    col: int
    expected: str
    actual: str


class VerifyResponse(BaseModel):
    verdict: str
    first_mismatch: Mismatch | None = None


class SweepReport(BaseModel):
    name: str
    cases: int
    failures: int
    first_counterexample: str | None = None


class SelftestResponse(BaseModel):
    verdict: str
    sweeps: list[SweepReport]


class HealthResponse(BaseModel):
    status: str
