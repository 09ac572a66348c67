"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, Field


class PolynomialRequest(BaseModel):
    polynomial: str = Field(..., description="Term expression, e.g. '1+z+w'")
    resolution: int = Field(256, ge=128, le=2048)
    angle_samples: int = Field(128, ge=16, le=1024)
    window: str = Field("auto", description="'auto' or 'x0,x1,y0,y1'")


class TropicalResponse(BaseModel):
    curve: dict
    subdivision: dict
    balanced: bool
    violations: list[dict]


class ComponentResponse(BaseModel):
    total: int
    components: list[dict]
    solid: bool | None = None
    maximally_sparse: bool | None = None


class SpineRequest(PolynomialRequest):
    quad_n: int = Field(256, ge=32, le=4096)


class SpineResponse(BaseModel):
    constants: list[dict]
    curve: dict


class DeformRequest(PolynomialRequest):
    t_schedule: str = Field("e-1,e-2,e-3,e-4")


class DeformResponse(BaseModel):
    rows: list[dict]


class CoamoebaResponse(BaseModel):
    volume: float
    samples_used: int


class StandardModelResponse(BaseModel):
    n: int
    volume: float
    polyhedra: list[dict]


class TransformRequest(BaseModel):
    polynomial: str | None = None
    matrix: list[list[int]] | None = None
    translation: list[float] = [0.0, 0.0]
    resolution: int = Field(256, ge=128, le=2048)


class TransformResponse(BaseModel):
    transform: dict
    volume: float


class ExtraPiecesRequest(BaseModel):
    sparse: str
    deformed: str
    resolution: int = Field(256, ge=128, le=2048)


class ExtraPiecesResponse(BaseModel):
    extra_area: float
    piece_count: int
    pieces: list[dict]


class PuiseuxRequest(BaseModel):
    k: int = Field(..., ge=1)
    terms: list[dict] = Field(..., description="[{exponent: '1/2', re: 1, im: 0}]")


class PuiseuxResponse(BaseModel):
    val: float
    roots: list[list[float]]
