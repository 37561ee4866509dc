"""Fredholm module catalog endpoints."""
from fastapi import APIRouter, HTTPException

from services.errors import NCGError, status_for
from services.fredholm import catalog, catalog_names

router = APIRouter()


@router.get("/catalog")
async def list_catalog():
    """All catalog modules with parity, algebra and representation."""
    modules = [catalog(name).summary() for name in catalog_names()]
    return {"count": len(modules), "modules": modules}


@router.get("/catalog/{name}")
async def get_module(name: str):
    try:
        return catalog(name).summary()
    except NCGError as e:
        raise HTTPException(status_code=status_for(e), detail=str(e))
