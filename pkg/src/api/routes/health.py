"""
Health Routes - liveness and service defaults, no API key needed
"""
from fastapi import APIRouter

from src.api.controllers.health_controller import HealthController
from src.api.schemas.responses import APIResponse, HealthResponse

router = APIRouter(prefix="/health", tags=["Health"])


@router.get("/", response_model=HealthResponse)
def health_check():
    return HealthController.health_check()


@router.get("/detailed", response_model=APIResponse)
def detailed_health_check():
    """Default fitting controls, display options, palettes, figure size and upload limit"""
    return HealthController.detailed_health_check()
