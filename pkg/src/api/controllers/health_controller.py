"""
Health Controller - liveness and the defaults a client can rely on
"""
from datetime import datetime

from src.app.services.tree_service import tree_service
from src.config.settings import settings


class HealthController:

    @staticmethod
    def health_check():
        status = tree_service.get_health_status()
        return {
            "status": status["status"],
            "version": settings.API_VERSION,
            "timestamp": datetime.now(),
        }

    @staticmethod
    def detailed_health_check():
        """
        Liveness plus default controls, display options, palettes and limits
        """
        status = tree_service.get_health_status()
        return {
            "success": True,
            "message": f"{settings.API_TITLE} is {status['api_status']}",
            "data": {
                "version": settings.API_VERSION,
                "default_svg_size": status["svg_size"],
                "max_upload_size": status["max_upload_size"],
                "default_controls": status["default_controls"],
                "default_render_options": status["default_render_options"],
                "palettes": status["palettes"],
            },
        }
