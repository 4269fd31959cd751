"""
Routes Package - every module here that defines a `router` is mounted
"""
import importlib
import pkgutil

from fastapi import APIRouter


def collect_routers() -> APIRouter:
    """
    Import the route modules of this package in name order and include
    their routers; a module that fails to import stops the server start
    """
    main_router = APIRouter()
    for module_info in sorted(pkgutil.iter_modules(__path__), key=lambda info: info.name):
        if module_info.name.startswith("_"):
            continue
        module = importlib.import_module(f"{__name__}.{module_info.name}")
        module_router = getattr(module, "router", None)
        if module_router is None:
            print(f"⚠️  No router found in: {module_info.name}.py")
            continue
        main_router.include_router(module_router)
        paths = ", ".join(sorted({route.path for route in module_router.routes}))
        print(f"✅ Registered {module_info.name} routes: {paths}")
    return main_router


router = collect_routers()

__all__ = ["router"]
