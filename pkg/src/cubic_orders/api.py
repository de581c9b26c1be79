"""
Read-only JSON service over the counting, enumeration and census commands.

Every endpoint answers with the same document the CLI writes for ``--format json``.
"""

import logging

from fastapi import FastAPI, Query, Request, status
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field
from slowapi.errors import RateLimitExceeded

from . import __version__
from .cli import RunConfig, cmd_count, cmd_enumerate, cmd_monogenic, cmd_thue_mahler
from .config import settings
from .exceptions import ConsistencyError, InputError
from .log import configure_logging
from .order_enum import METHODS
from .rate_limiter import RATE_LIMITS, limiter, rate_limit_exceeded_handler
from .reporting import ReportDocument, to_document

configure_logging()
logger = logging.getLogger(__name__)

app = FastAPI(
    title="cubic-orders",
    description="Orders of prime-power index in pure cubic fields",
    version=__version__,
    docs_url="/api/docs" if settings.DEBUG else None,
    redoc_url="/api/redoc" if settings.DEBUG else None,
    openapi_url="/api/openapi.json" if settings.DEBUG else None,
)

app.state.limiter = limiter
app.add_exception_handler(RateLimitExceeded, rate_limit_exceeded_handler)


class HealthCheckResponse(BaseModel):
    """Response model for health check endpoint."""
    status: str = Field(..., description="Service status")
    version: str = Field(..., description="API version")
    environment: str = Field(..., description="Current environment")


@app.exception_handler(InputError)
async def input_error_handler(request: Request, exc: InputError):
    return JSONResponse(
        status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
        content={"detail": str(exc), "error": type(exc).__name__},
    )


@app.exception_handler(ConsistencyError)
async def consistency_error_handler(request: Request, exc: ConsistencyError):
    logger.error(f"Consistency check failed on {request.url.path}: {exc}")
    return JSONResponse(
        status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
        content={"detail": str(exc), "error": type(exc).__name__},
    )


@app.exception_handler(Exception)
async def global_exception_handler(request: Request, exc: Exception):
    """Handle all other exceptions with a 500 status code."""
    logger.error(f"Unhandled exception: {str(exc)}", exc_info=True)
    return JSONResponse(
        status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
        content={"detail": "An unexpected error occurred."},
    )


@app.middleware("http")
async def log_requests(request: Request, call_next):
    logger.info(f"Request: {request.method} {request.url}")
    response = await call_next(request)
    logger.info(f"Response: {request.method} {request.url.path} - {response.status_code}")
    return response


def _document(result) -> ReportDocument:
    return to_document(result.command, result.tables, result.metadata)


@app.get("/api/health", response_model=HealthCheckResponse, tags=["system"])
async def health_check():
    return HealthCheckResponse(status="ok", version=__version__, environment=settings.ENVIRONMENT)


@app.get("/api/count", response_model=ReportDocument, tags=["orders"])
@limiter.limit(RATE_LIMITS["default"])
def count(
    request: Request,
    m: int,
    p: int,
    n: int = Query(..., ge=0, le=settings.API_MAX_N),
    verify_scan: bool = False,
    method: str = Query("oracle", pattern="^(" + "|".join(METHODS) + ")$"),
):
    """Orders of index p^t for t <= n, with the running total."""
    config = RunConfig(command="count", m=m, p=p, n=n, verify_scan=verify_scan, method=method, format="json")
    return _document(cmd_count(config))


@app.get("/api/enumerate", response_model=ReportDocument, tags=["orders"])
@limiter.limit(RATE_LIMITS["default"])
def enumerate_(
    request: Request,
    m: int,
    p: int,
    n: int = Query(..., ge=0, le=settings.API_MAX_N),
):
    """Orders of index p^n with their index-form coefficients."""
    config = RunConfig(command="enumerate", m=m, p=p, n=n, method="fast", format="json")
    return _document(cmd_enumerate(config))


@app.get("/api/monogenic", response_model=ReportDocument, tags=["monogenicity"])
@limiter.limit(RATE_LIMITS["strict"])
def monogenic(
    request: Request,
    m: int,
    p: int,
    n_max: int = Query(..., ge=0, le=settings.API_MAX_N),
    search_bound: int = Query(settings.SEARCH_BOUND, ge=0),
    tm_height: int = Query(settings.TM_HEIGHT, ge=0),
    tm_nmax: int = Query(settings.TM_NMAX, ge=0),
):
    """Monogenicity census with the linked primitive solutions."""
    config = RunConfig(
        command="monogenic", m=m, p=p, n_max=n_max, search_bound=search_bound,
        tm_height=tm_height, tm_nmax=tm_nmax, format="json",
    )
    return _document(cmd_monogenic(config))


@app.get("/api/thue-mahler", response_model=ReportDocument, tags=["monogenicity"])
@limiter.limit(RATE_LIMITS["strict"])
def thue_mahler(
    request: Request,
    m: int,
    p: int,
    tm_height: int = Query(settings.TM_HEIGHT, ge=0),
    tm_nmax: int = Query(settings.TM_NMAX, ge=0),
):
    """Primitive solutions of kU^3 - hV^3 = +-p^N in the searched box."""
    config = RunConfig(command="thue-mahler", m=m, p=p, tm_height=tm_height, tm_nmax=tm_nmax, format="json")
    return _document(cmd_thue_mahler(config))
