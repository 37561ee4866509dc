"""Pairing table, index and single-pairing endpoints."""
from typing import Optional

from fastapi import APIRouter, HTTPException, Query

from models.schemas import IndexRequest, PairRequest, PairingResponse
from services.errors import NCGError, NonStabilizedError, status_for
from services.fredholm import Parity, catalog, even_pairing, odd_pairing
from services.kclasses import pairing_table, resolve_element
from services.settings import get_settings

router = APIRouter()


@router.get("/table/{algebra}")
async def get_table(algebra: str, window: Optional[int] = Query(default=None, ge=8),
                    degree: Optional[int] = Query(default=None, ge=2)):
    """Pairing table of the generating modules against the standard classes."""
    settings = get_settings()
    try:
        table = pairing_table(algebra, N=window or settings.default_window, n_max=degree or settings.default_degree)
        return table.to_dict()
    except HTTPException:
        raise
    except NonStabilizedError as e:
        raise HTTPException(status_code=422, detail={"message": str(e), "values": e.values})
    except (NCGError, ValueError) as e:
        raise HTTPException(status_code=status_for(e), detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Pairing table failed: {str(e)}")


@router.post("/index", response_model=PairingResponse, response_model_by_alias=True)
async def compute_index(request: IndexRequest):
    """Index of the compression E π(u) E for an odd module."""
    try:
        module = catalog(request.module)
        u = resolve_element(request.unitary, module.algebra)
        result = odd_pairing(module, u, N=request.window, label=request.unitary)
        return PairingResponse(**result.to_dict())
    except HTTPException:
        raise
    except (NCGError, ValueError) as e:
        raise HTTPException(status_code=status_for(e), detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Index computation failed: {str(e)}")


@router.post("/pair", response_model=PairingResponse, response_model_by_alias=True)
async def compute_pairing(request: PairRequest):
    """Pair a catalog module with a projection (even) or a unitary (odd)."""
    try:
        module = catalog(request.module)
        element = resolve_element(request.element, module.algebra)
        label = request.element if isinstance(request.element, str) else None
        backend = None if request.backend == "auto" else request.backend
        if module.parity == Parity.EVEN:
            result = even_pairing(module, element, n_max=request.degree, N=request.window,
                                  backend=backend, label=label)
        else:
            result = odd_pairing(module, element, N=request.window, backend=backend, label=label)
        return PairingResponse(**result.to_dict())
    except HTTPException:
        raise
    except NonStabilizedError as e:
        raise HTTPException(status_code=422, detail={"message": str(e), "values": e.values})
    except (NCGError, ValueError) as e:
        raise HTTPException(status_code=status_for(e), detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Pairing failed: {str(e)}")
