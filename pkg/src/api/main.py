"""
Main FastAPI application
Entry point for the subgroup tree API server
"""
from contextlib import asynccontextmanager

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from src.api.routes import router
from src.app.errors import SubgroupTreeError
from src.config.settings import settings


@asynccontextmanager
async def lifespan(app: FastAPI):
    print(f"🚀 Starting {settings.API_TITLE} v{settings.API_VERSION}")
    print(f"📝 API Documentation available at: http://{settings.API_HOST}:{settings.API_PORT}/docs")
    print(f"📐 Figures default to {settings.SVG_WIDTH}x{settings.SVG_HEIGHT} pixels")
    yield
    print("🛑 Shutting down API...")


app = FastAPI(
    title=settings.API_TITLE,
    description=settings.API_DESCRIPTION,
    version=settings.API_VERSION,
    docs_url="/docs",
    redoc_url="/redoc",
    lifespan=lifespan,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.ALLOWED_ORIGINS,
    allow_credentials=True,
    allow_methods=["GET", "POST"],
    allow_headers=["*"],
)

app.include_router(router)


@app.get("/")
async def root():
    """
    Basic API information and the tree endpoints
    """
    return {
        "message": f"{settings.API_TITLE} is running",
        "version": settings.API_VERSION,
        "endpoints": ["POST /api/fit", "POST /api/print", "POST /api/render"],
        "docs": "/docs",
    }


@app.exception_handler(SubgroupTreeError)
async def subgroup_tree_error_handler(request: Request, exc: SubgroupTreeError):
    """
    Library errors that escape a controller are client errors
    """
    print(f"❌ {exc.code}: {exc.message}")
    return JSONResponse(
        status_code=400,
        content={"success": False, "message": exc.message, "error": exc.code, "field": exc.field},
    )


@app.exception_handler(Exception)
async def global_exception_handler(request: Request, exc: Exception):
    """
    Catch any unhandled errors and return a consistent JSON response
    """
    print(f"❌ Unhandled error: {str(exc)}")
    return JSONResponse(
        status_code=500,
        content={
            "success": False,
            "message": "Internal server error",
            "error": "INTERNAL_ERROR",
        },
    )


if __name__ == "__main__":
    import uvicorn

    uvicorn.run("src.api.main:app", host=settings.API_HOST, port=settings.API_PORT, reload=settings.API_RELOAD)
