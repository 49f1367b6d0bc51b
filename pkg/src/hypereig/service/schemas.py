"""Request and response models for the HTTP surface.

Wire names follow the JSON contract: the eigenvalue travels as "lambda"
(a Python keyword, hence the lam/alias pairing), and recovery responses
expose exactly lambda, branch, radii_used, b_bound, residual, iterations
in that order.
"""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

_FLOAT = {"allow_inf_nan": False}


class SpaceParams(BaseModel):
    """Curvature radius and boundary sphere dimension of the ball model."""

    rho: float = Field(gt=0, **_FLOAT)
    k: int = Field(ge=1)


class QuadratureParams(BaseModel):
    abs_tol: float = Field(default=1e-12, gt=0, **_FLOAT)
    rel_tol: float = Field(default=1e-10, gt=0, **_FLOAT)
    max_panels: int = Field(default=4096, ge=1)
    base_panels_per_oscillation: int = Field(default=8, ge=1)


class EvalRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    space: SpaceParams
    lam: float = Field(alias="lambda", **_FLOAT)
    r_min: float = Field(ge=0, **_FLOAT)
    r_max: float = Field(ge=0, **_FLOAT)
    steps: int = Field(ge=1)
    quadrature: QuadratureParams = QuadratureParams()

    @model_validator(mode="after")
    def _ordered_range(self):
        if self.r_max < self.r_min:
            raise ValueError("r_max must be >= r_min")
        return self


class EvalRow(BaseModel):
    r: float
    phi: float
    branch: str
    V: float


class EvalResponse(BaseModel):
    rows: list[EvalRow]


class ObservationParams(BaseModel):
    r: float = Field(gt=0, **_FLOAT)
    value: float = Field(**_FLOAT)


class InvertRequest(BaseModel):
    """One or two sphere averages, or one plus permission to sample a second.

    auto_sample asks the server to draw the second observation itself at
    the radius the bound dictates, which requires the true eigenvalue
    (lambda) to sample from; it is mutually exclusive with obs2.
    """

    model_config = ConfigDict(populate_by_name=True)

    space: SpaceParams
    obs: ObservationParams
    obs2: Optional[ObservationParams] = None
    auto_sample: bool = False
    lam: Optional[float] = Field(default=None, alias="lambda", **_FLOAT)
    quadrature: QuadratureParams = QuadratureParams()


class InvertResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    lam: float = Field(alias="lambda")
    branch: str
    radii_used: int
    b_bound: Optional[float]
    residual: float
    iterations: int


class VerifyRequest(BaseModel):
    suites: list[str] = ["all"]
    seed: int = Field(default=0, ge=0)


class CheckResult(BaseModel):
    name: str
    passed: bool
    worst: float
    tol: float
    detail: str


class VerifyResponse(BaseModel):
    results: list[CheckResult]
    all_passed: bool
