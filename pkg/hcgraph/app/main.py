# app/main.py - API hcgraph
import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .api import routes_colorings, routes_generate, routes_graphs, routes_health
from .core.config import settings
from .core.errors import DomainError, InputError, OracleCapExceeded

# Configure logging
logging.basicConfig(
    level=getattr(logging, settings.LOG_LEVEL, logging.INFO),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Application lifespan management"""
    logger.info("🚀 hcgraph API starting up...")
    logger.info(f"✅ Oracle caps: {settings.as_dict()}")
    yield
    logger.info("👋 hcgraph API shutdown completed")


# Create FastAPI app
app = FastAPI(
    title="hcgraph API",
    description="Décomposition modulaire, cotrees et colorations hiérarchiques",
    version="1.0.0",
    lifespan=lifespan
)

# CORS middleware
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


def _error(status: int, kind: str, exc: Exception, request: Request) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"error": kind, "detail": str(exc), "path": str(request.url.path)},
    )


@app.exception_handler(InputError)
async def input_error_handler(request: Request, exc: InputError):
    logger.warning(f"⚠️ Invalid input on {request.url.path}: {exc}")
    return _error(422, "Invalid input", exc, request)


@app.exception_handler(DomainError)
async def domain_error_handler(request: Request, exc: DomainError):
    logger.warning(f"⚠️ Precondition failed on {request.url.path}: {exc}")
    return _error(409, "Precondition failed", exc, request)


@app.exception_handler(OracleCapExceeded)
async def oracle_cap_handler(request: Request, exc: OracleCapExceeded):
    logger.warning(f"⚠️ Oracle refused on {request.url.path}: {exc}")
    return _error(413, "Instance too large", exc, request)


# Global exception handler
@app.exception_handler(Exception)
async def global_exception_handler(request: Request, exc: Exception):
    """Global exception handler"""
    logger.error(f"❌ Global exception on {request.url}: {exc}")
    return JSONResponse(
        status_code=500,
        content={
            "error": "Internal server error",
            "detail": "An unexpected error occurred",
            "path": str(request.url.path)
        }
    )

# Include routers
app.include_router(routes_health.router)
app.include_router(routes_graphs.router, prefix="/api/v1")
app.include_router(routes_colorings.router, prefix="/api/v1")
app.include_router(routes_generate.router, prefix="/api/v1")


# Root endpoint
@app.get("/")
async def root():
    """API root endpoint"""
    return {
        "message": "hcgraph API",
        "version": "1.0.0",
        "status": "operational",
        "docs": "/docs",
        "health": "/health"
    }
