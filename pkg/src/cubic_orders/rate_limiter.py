"""
Rate limiting for the HTTP API.

Uses slowapi with the storage backend named by ``RATE_LIMIT_STORAGE_URI``
(in-memory by default).
"""

import logging

from fastapi import Request, status
from fastapi.responses import JSONResponse
from slowapi import Limiter
from slowapi.errors import RateLimitExceeded
from slowapi.util import get_remote_address

from .config import settings

logger = logging.getLogger(__name__)

limiter = Limiter(
    key_func=get_remote_address,  # Rate limit by client address
    default_limits=[settings.RATE_LIMIT],
    storage_uri=settings.RATE_LIMIT_STORAGE_URI,
)

RATE_LIMITS = {
    "default": settings.RATE_LIMIT,
    "strict": settings.RATE_LIMIT_STRICT,
}


def rate_limit_exceeded_handler(request: Request, exc: RateLimitExceeded) -> JSONResponse:
    """Answer 429 with the limit that was hit."""
    client = request.client.host if request.client else "unknown"
    logger.warning(f"Rate limit exceeded for {client} on {request.url.path}")
    return JSONResponse(
        status_code=status.HTTP_429_TOO_MANY_REQUESTS,
        content={"detail": f"Rate limit exceeded: {exc.detail}"},
    )
