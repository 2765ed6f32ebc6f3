"""FastAPI service wrapping the certification engine.

The pydantic models double as the wire format: the CLI is a thin client
that either calls the handler functions in-process or POSTs the same
payloads to a running server.  Response field order matches the canonical
JSON report layout, so serialized reports are byte-reproducible.
"""
from __future__ import annotations

from typing import Literal

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import engine
from .engine import (
    EliminationMismatch,
    SearchExhausted,
    UniquenessFailure,
)
from .triangular import (
    GaussViolation,
    LemmaViolation,
    enumerate_k_representations,
    exceptional_set,
    gauss_three_decomposition,
)


class RationalModel(BaseModel):
    num: str
    den: str


class SeedModel(BaseModel):
    f2: RationalModel
    f3: RationalModel
    f5: RationalModel


class AtomModel(BaseModel):
    p: int
    e: int


class IdentityModel(BaseModel):
    k: int
    parts: list[int]
    total: int


class StepModel(BaseModel):
    identity: IdentityModel
    kind: str
    atom: AtomModel | None = None
    value: RationalModel | None = None
    lhs: RationalModel | None = None
    rhs: RationalModel | None = None


class BranchModel(BaseModel):
    seed: SeedModel | None = None
    status: str
    evidence: StepModel | None = None


class CertifyRequest(BaseModel):
    k: int = Field(ge=3)
    bound: int = Field(default=1000, ge=1)
    strategy: Literal["directed", "generic"] = "directed"
    identity_bound: int | None = None


class CertifyResponse(BaseModel):
    k: int
    bound: int
    strategy: str
    verdict: str
    branches: list[BranchModel]
    steps: list[StepModel]


class SeedsRequest(BaseModel):
    k: int = Field(ge=3)


class SeedsResponse(BaseModel):
    k: int
    solutions: list[SeedModel]


class LemmaRequest(BaseModel):
    k: int = Field(ge=4)
    bound: int


class LemmaResponse(BaseModel):
    k: int
    bound: int
    exceptional: list[int]


class ReprRequest(BaseModel):
    n: int = Field(ge=1)
    k: int = Field(ge=1)
    count_only: bool = False


class ReprResponse(BaseModel):
    n: int
    k: int
    count: int
    representations: list[list[int]] | None = None


class GaussRequest(BaseModel):
    n: int = Field(ge=1)


class GaussResponse(BaseModel):
    n: int
    triple: list[int]


def handle_certify(req: CertifyRequest) -> CertifyResponse:
    if req.strategy == "directed":
        report = engine.directed_certify(req.k, req.bound)
    else:
        report = engine.generic_certify(req.k, req.bound, req.identity_bound)
    return CertifyResponse.model_validate(engine.report_json(report))


def handle_seeds(req: SeedsRequest) -> SeedsResponse:
    solutions = engine.seed_solutions(req.k)
    return SeedsResponse(
        k=req.k,
        solutions=[SeedModel.model_validate(engine.seed_json(s)) for s in solutions],
    )


def handle_lemma(req: LemmaRequest) -> LemmaResponse:
    members = exceptional_set(req.k, req.bound)
    return LemmaResponse(k=req.k, bound=req.bound, exceptional=sorted(members))


def handle_repr(req: ReprRequest) -> ReprResponse:
    reps = enumerate_k_representations(req.n, req.k)
    return ReprResponse(
        n=req.n,
        k=req.k,
        count=len(reps),
        representations=None if req.count_only else [list(r.parts) for r in reps],
    )


def handle_gauss(req: GaussRequest) -> GaussResponse:
    return GaussResponse(n=req.n, triple=list(gauss_three_decomposition(req.n)))


app = FastAPI(
    title="addunique",
    description="Certifies that k-additivity on positive triangular numbers "
    "forces a multiplicative function to be the identity.",
)


def _guarded(handler, req):
    try:
        return handler(req)
    except (UniquenessFailure, LemmaViolation, GaussViolation, SearchExhausted, EliminationMismatch) as exc:
        # a detector that would falsify the certified statement fired
        raise HTTPException(
            status_code=409,
            detail={"error": type(exc).__name__, "message": str(exc)},
        ) from exc
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/certify", response_model=CertifyResponse)
def certify(req: CertifyRequest) -> CertifyResponse:
    return _guarded(handle_certify, req)


@app.post("/seeds", response_model=SeedsResponse)
def seeds(req: SeedsRequest) -> SeedsResponse:
    return _guarded(handle_seeds, req)


@app.post("/lemma", response_model=LemmaResponse)
def lemma(req: LemmaRequest) -> LemmaResponse:
    return _guarded(handle_lemma, req)


@app.post("/representations", response_model=ReprResponse)
def representations(req: ReprRequest) -> ReprResponse:
    return _guarded(handle_repr, req)


@app.post("/gauss", response_model=GaussResponse)
def gauss(req: GaussRequest) -> GaussResponse:
    return _guarded(handle_gauss, req)
