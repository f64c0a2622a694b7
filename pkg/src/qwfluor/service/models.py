"""Pydantic request/response models shared by the HTTP service and the CLI."""

from __future__ import annotations

from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, Field

from ..observables import SourceToggle
from ..params import SystemParams


class ParamsModel(BaseModel):
    g: float = 5.0
    kappa: float = 1.2
    gamma: float = 1.0
    delta: float = 0.0
    epsilon: float = 0.0
    r: float = 0.0

    def to_params(self) -> SystemParams:
        return SystemParams(
            g=self.g,
            kappa=self.kappa,
            gamma=self.gamma,
            delta=self.delta,
            epsilon=self.epsilon,
            r=self.r,
        )

    @classmethod
    def from_params(cls, p: SystemParams) -> "ParamsModel":
        return cls(**p.as_dict())


class GridModel(BaseModel):
    start: float = 0.0
    stop: float = 10.0
    count: int = Field(default=401, ge=2, le=200001)

    def values(self) -> np.ndarray:
        if not self.stop > self.start:
            raise ValueError("grid stop must exceed start")
        return np.linspace(self.start, self.stop, self.count)


class TogglesModel(BaseModel):
    drive: bool = True
    squeezing: bool = True

    def to_toggle(self) -> SourceToggle:
        return SourceToggle(drive=self.drive, squeezing=self.squeezing)


class DatasetModel(BaseModel):
    meta: dict[str, str]
    columns: list[str]
    rows: list[list[float]]


class DeriveRequest(BaseModel):
    params: ParamsModel


class DerivedResponse(BaseModel):
    Gamma: float
    mu: float
    N: float
    M: float
    chi_plus: float
    chi_minus: float


class ValidateRequest(BaseModel):
    params: ParamsModel


class ValidationResponse(BaseModel):
    strong_coupling_ratio: Optional[float] = None  # None when not computable
    warnings: list[str]
    errors: list[str]
    fatal: bool


class IntensityRequest(BaseModel):
    params: ParamsModel
    grid: GridModel = GridModel()
    toggles: TogglesModel = TogglesModel()
    source: Literal["analytic", "oracle"] = "analytic"
    unit: float = Field(default=1.0, gt=0.0)


class EnvelopesRequest(BaseModel):
    params: ParamsModel
    grid: GridModel = GridModel()
    unit: float = Field(default=1.0, gt=0.0)


class SpectrumRequest(BaseModel):
    params: ParamsModel
    grid: Optional[GridModel] = None  # None: auto window around the peaks
    source: Literal["analytic", "oracle"] = "analytic"
    unit: float = Field(default=1.0, gt=0.0)


class G2Request(BaseModel):
    params: ParamsModel
    grid: GridModel = GridModel()
    paper_literal: bool = False
    source: Literal["analytic", "oracle"] = "analytic"
    unit: float = Field(default=1.0, gt=0.0)


class VarianceRequest(BaseModel):
    params: ParamsModel
    grid: GridModel = GridModel()
    sign: Literal["plus", "minus", "both"] = "both"
    paper_literal: bool = False
    source: Literal["analytic", "oracle"] = "analytic"
    unit: float = Field(default=1.0, gt=0.0)


class DressedRequest(BaseModel):
    params: ParamsModel
    n: Literal[1, 2] = 1


class DressedResponse(BaseModel):
    n: int
    basis: list[str]
    eigenvalues: list[float]
    eigenvectors_re: list[list[float]]  # eigenvectors_re[k] is the k-th eigenvector
    eigenvectors_im: list[list[float]]
    residual: float


class VerifyRequest(BaseModel):
    params: ParamsModel
    tolerance: float = Field(default=0.02, gt=0.0)
    paper_literal: bool = False


class VerifyEntryModel(BaseModel):
    observable: str
    max_rel_error: float
    tolerance: float
    passed: bool
    note: str = ""


class VerifyResponse(BaseModel):
    params: ParamsModel
    tolerance: float
    variant: str
    passed: bool
    entries: list[VerifyEntryModel]


class FigureInfo(BaseModel):
    name: str
    description: str


class NamedDataset(BaseModel):
    label: str
    dataset: DatasetModel


class FigureResponse(BaseModel):
    name: str
    description: str
    datasets: list[NamedDataset]


class HealthResponse(BaseModel):
    status: str
    version: str
