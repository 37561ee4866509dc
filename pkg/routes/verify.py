"""Module axiom and homotopy verification endpoints."""
from fractions import Fraction

from fastapi import APIRouter, HTTPException, Query

from models.schemas import HomotopyRequest, ModuleReportResponse
from services.errors import NCGError, status_for
from services.fredholm import catalog, homotopy_check, verify_module

router = APIRouter()


@router.get("/verify/{module}", response_model=ModuleReportResponse)
async def verify(module: str, window: int = Query(default=16, ge=8)):
    """F = F*, F² = 1, grading relations and commutator compactness."""
    try:
        return verify_module(catalog(module), N=window).to_dict()
    except HTTPException:
        raise
    except (NCGError, ValueError) as e:
        raise HTTPException(status_code=status_for(e), detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Verification failed: {str(e)}")


@router.post("/homotopy", response_model=ModuleReportResponse)
async def homotopy(request: HomotopyRequest):
    """Check the path y_t between i*(d1z1_B) and a degenerate module."""
    try:
        t_grid = [Fraction(t) for t in request.t_grid]
        return homotopy_check(N=request.window, t_grid=t_grid).to_dict()
    except HTTPException:
        raise
    except (NCGError, ValueError, ZeroDivisionError) as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Homotopy check failed: {str(e)}")
