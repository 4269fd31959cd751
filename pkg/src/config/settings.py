"""
Configuration settings for the subgroup tree API
Environment variables (optionally from a .env file) override the defaults
"""
import os
from typing import List
from dotenv import load_dotenv

load_dotenv()


def _flag(name: str, default: str) -> bool:
    return os.getenv(name, default).strip().lower() in ("1", "true", "yes", "on")


class Settings:
    """
    Application settings class
    The command line reads none of these; they configure the HTTP server
    """

    # Server
    API_HOST: str = os.getenv("API_HOST", "0.0.0.0")
    API_PORT: int = int(os.getenv("API_PORT", "7079"))
    API_RELOAD: bool = _flag("API_RELOAD", "false")
    API_KEY: str = os.getenv("API_KEY", "default-api-key")
    ALLOWED_ORIGINS: List[str] = os.getenv("ALLOWED_ORIGINS", "http://localhost").split(",")

    # CSV uploads
    MAX_UPLOAD_SIZE: int = int(os.getenv("MAX_UPLOAD_SIZE", str(20 * 1024 * 1024)))  # 20MB
    ALLOWED_DATA_TYPES: List[str] = [
        "text/csv",
        "application/csv",
        "application/vnd.ms-excel",
        "text/plain",
        "application/octet-stream",
    ]

    # Default canvas of rendered figures, in pixels
    SVG_WIDTH: int = int(os.getenv("SVG_WIDTH", "1200"))
    SVG_HEIGHT: int = int(os.getenv("SVG_HEIGHT", "900"))

    API_TITLE: str = "Subgroup Tree API"
    API_DESCRIPTION: str = "Fit conditional inference trees and render terminal-node subgroups as SVG"
    API_VERSION: str = "1.0.0"


settings = Settings()
