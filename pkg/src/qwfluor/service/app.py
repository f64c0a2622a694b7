"""FastAPI application exposing the calculations over HTTP.

Run with ``qwfluor serve`` or ``uvicorn qwfluor.service.app:app``.
Inadmissible parameters surface as 422 with the full validation report;
unknown figure presets as 404.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..observables import ZeroIntensityError
from ..oracle import WindowError
from ..params import ParameterError
from . import handlers, models


def create_app() -> FastAPI:
    app = FastAPI(
        title="qwfluor",
        version=__version__,
        description=(
            "Fluorescence, spectra, photon statistics and squeezing for a driven "
            "quantum-well microcavity coupled to a squeezed vacuum reservoir."
        ),
    )

    @app.exception_handler(ParameterError)
    async def _parameter_error(request: Request, exc: ParameterError):
        return JSONResponse(status_code=422, content={"detail": exc.report.as_dict()})

    @app.exception_handler(ZeroIntensityError)
    async def _zero_intensity(request: Request, exc: ZeroIntensityError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.exception_handler(WindowError)
    async def _window_error(request: Request, exc: WindowError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.exception_handler(KeyError)
    async def _key_error(request: Request, exc: KeyError):
        return JSONResponse(status_code=404, content={"detail": str(exc)})

    @app.get("/health", response_model=models.HealthResponse)
    async def health() -> models.HealthResponse:
        return models.HealthResponse(status="ok", version=__version__)

    @app.post("/params/derive", response_model=models.DerivedResponse)
    async def params_derive(req: models.DeriveRequest) -> models.DerivedResponse:
        return handlers.handle_derive(req)

    @app.post("/params/validate", response_model=models.ValidationResponse)
    async def params_validate(req: models.ValidateRequest) -> models.ValidationResponse:
        return handlers.handle_validate(req)

    @app.post("/envelopes", response_model=models.DatasetModel)
    async def envelopes(req: models.EnvelopesRequest) -> models.DatasetModel:
        return handlers.handle_envelopes(req)

    @app.post("/intensity", response_model=models.DatasetModel)
    async def intensity(req: models.IntensityRequest) -> models.DatasetModel:
        return handlers.handle_intensity(req)

    @app.post("/spectrum", response_model=models.DatasetModel)
    async def spectrum(req: models.SpectrumRequest) -> models.DatasetModel:
        return handlers.handle_spectrum(req)

    @app.post("/g2", response_model=models.DatasetModel)
    async def g2(req: models.G2Request) -> models.DatasetModel:
        return handlers.handle_g2(req)

    @app.post("/variance", response_model=models.DatasetModel)
    async def variance(req: models.VarianceRequest) -> models.DatasetModel:
        return handlers.handle_variance(req)

    @app.post("/dressed", response_model=models.DressedResponse)
    async def dressed(req: models.DressedRequest) -> models.DressedResponse:
        return handlers.handle_dressed(req)

    @app.post("/verify", response_model=models.VerifyResponse)
    async def verify(req: models.VerifyRequest) -> models.VerifyResponse:
        return handlers.handle_verify(req)

    @app.get("/figures", response_model=list[models.FigureInfo])
    async def figures() -> list[models.FigureInfo]:
        return handlers.list_figures()

    @app.post("/figures/{name}", response_model=models.FigureResponse)
    async def figure(name: str) -> models.FigureResponse:
        return handlers.handle_figure(name)

    return app


app = create_app()
