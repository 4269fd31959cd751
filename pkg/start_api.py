#!/usr/bin/env python3
"""
API Startup Script
Starts the subgroup tree HTTP server with uvicorn
"""
import sys
import os
import uvicorn

# Add the project root to Python path so imports work
project_root = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, project_root)

from src.config.settings import settings


def main():
    print(f"🌳 {settings.API_TITLE} on http://{settings.API_HOST}:{settings.API_PORT}")
    print(f"🔑 Send 'Authorization: Bearer <API_KEY>' to the /api endpoints")
    print(f"📦 CSV uploads up to {settings.MAX_UPLOAD_SIZE // (1024 * 1024)}MB")
    print("=" * 50)

    uvicorn.run(
        "src.api.main:app",
        host=settings.API_HOST,
        port=settings.API_PORT,
        reload=settings.API_RELOAD,
        log_level="info",
    )


if __name__ == "__main__":
    main()
