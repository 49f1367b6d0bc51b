"""HTTP application exposing evaluation, inversion, and verification.

Endpoints are synchronous pure functions over the core numerics; the app
holds no state, so a single factory is enough and tests can spin up fresh
instances freely. Domain failures surface as HTTP 400 with a stable error
code the CLI maps onto exit codes:

    usage                    bad combination or out-of-domain inputs
    value_out_of_range       observation no eigenfunction can produce
    inconsistent_observations  two observations that contradict each other
    convergence              quadrature or bisection missed its tolerance
    integration              ODE integration broke down
    zero_observation         the observed average was exactly zero
    second_radius_required   radius outside the one-radius window; the
                             payload carries required_r0
"""

from __future__ import annotations

import math

import numpy as np
from fastapi import FastAPI, Request
from fastapi.encoders import jsonable_encoder
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from .. import checks, eigenfn, inversion
from ..errors import (
    ConvergenceError,
    DomainError,
    HypereigError,
    InconsistentObservationError,
    IntegrationError,
    RadiusTooLargeError,
    UsageError,
    ValueOutOfRangeError,
    ZeroObservationError,
)
from ..geometry import HyperbolicSpace
from ..quadrature import QuadratureConfig
from .schemas import (
    CheckResult,
    EvalRequest,
    EvalResponse,
    EvalRow,
    InvertRequest,
    InvertResponse,
    VerifyRequest,
    VerifyResponse,
)

__all__ = ["create_app"]

_ERROR_CODES = (
    (ZeroObservationError, "zero_observation"),
    (RadiusTooLargeError, "second_radius_required"),
    (InconsistentObservationError, "inconsistent_observations"),
    (ValueOutOfRangeError, "value_out_of_range"),
    (ConvergenceError, "convergence"),
    (IntegrationError, "integration"),
    (UsageError, "usage"),
    (DomainError, "usage"),
)


def _error_payload(exc: HypereigError) -> dict:
    code = "internal"
    for cls, name in _ERROR_CODES:
        if isinstance(exc, cls):
            code = name
            break
    error: dict = {"code": code, "message": str(exc)}
    if isinstance(exc, RadiusTooLargeError):
        error["required_r0"] = exc.required_r0
    if isinstance(exc, ConvergenceError) and exc.achieved is not None:
        error["achieved"] = exc.achieved
        error["requested"] = exc.requested
    return {"error": error}


def _finite(x: float) -> float:
    # JSON has no inf/nan; saturate diagnostics that blew past float range.
    if math.isfinite(x):
        return float(x)
    if math.isnan(x):
        return 0.0
    return math.copysign(1e308, x)


def _json_safe(obj):
    """Scrub non-finite floats from a structure about to be JSON-encoded."""
    if isinstance(obj, float):
        return _finite(obj)
    if isinstance(obj, dict):
        return {key: _json_safe(value) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(value) for value in obj]
    return obj


def create_app() -> FastAPI:
    app = FastAPI(title="hypereig", version="0.1.0")

    @app.exception_handler(HypereigError)
    async def _domain_error(request: Request, exc: HypereigError):
        return JSONResponse(status_code=400, content=_error_payload(exc))

    @app.exception_handler(RequestValidationError)
    async def _invalid_request(request: Request, exc: RequestValidationError):
        # Python's JSON parser admits Infinity/NaN literals, and the default
        # handler echoes the offending input back, so the echo must be
        # scrubbed or the 422 itself would fail to serialize.
        detail = _json_safe(jsonable_encoder(exc.errors()))
        return JSONResponse(status_code=422, content={"detail": detail})

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/eval", response_model=EvalResponse)
    def eval_grid(req: EvalRequest) -> EvalResponse:
        space = HyperbolicSpace(rho=req.space.rho, k=req.space.k)
        cfg = QuadratureConfig(**req.quadrature.model_dump())
        param = eigenfn.spectral_from_lambda(space, req.lam)
        radii = np.linspace(req.r_min, req.r_max, req.steps)
        rows = [
            EvalRow(
                r=float(r),
                phi=_finite(eigenfn.phi(space, req.lam, float(r), cfg)),
                branch=param.kind.value,
                V=eigenfn.separator_V(space, float(r), cfg),
            )
            for r in radii
        ]
        return EvalResponse(rows=rows)

    @app.post("/invert", response_model=InvertResponse)
    def invert(req: InvertRequest) -> InvertResponse:
        space = HyperbolicSpace(rho=req.space.rho, k=req.space.k)
        cfg = QuadratureConfig(**req.quadrature.model_dump())
        obs = inversion.Observation(r=req.obs.r, value=req.obs.value)
        obs2 = None
        if req.obs2 is not None:
            obs2 = inversion.Observation(r=req.obs2.r, value=req.obs2.value)
        sampler = None
        if req.auto_sample:
            if obs2 is not None:
                raise UsageError("auto_sample and obs2 are mutually exclusive")
            if req.lam is None:
                raise UsageError(
                    "auto_sample needs lambda to know which eigenfunction "
                    "to sample for the second observation")
            lam_true = req.lam

            def sampler(r: float) -> float:
                return eigenfn.phi(space, lam_true, r, cfg)

        result = inversion.recover(space, obs, cfg, obs2=obs2, sampler=sampler)
        return InvertResponse(
            lam=result.lam,
            branch=result.branch.value,
            radii_used=result.radii_used,
            b_bound=result.b_bound,
            residual=result.residual,
            iterations=result.iterations,
        )

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest) -> VerifyResponse:
        results = checks.run_suites(req.suites, seed=req.seed)
        out = [
            CheckResult(name=c.name, passed=c.passed, worst=_finite(c.worst),
                        tol=c.tol, detail=c.detail)
            for c in results
        ]
        return VerifyResponse(results=out,
                              all_passed=all(c.passed for c in results))

    return app
