from datetime import datetime, timezone

from fastapi import APIRouter

from ..core.config import settings

router = APIRouter(tags=["health"])


@router.get("/health")
async def health_check():
    """Health check basique"""
    return {
        "status": "ok",
        "message": "hcgraph API is running",
        "timestamp": datetime.now(timezone.utc),
    }


@router.get("/health/detailed")
async def detailed_health_check():
    """Health check détaillé: limites actives des oracles"""
    return {
        "status": "ok",
        "settings": settings.as_dict(),
        "timestamp": datetime.now(timezone.utc),
    }
