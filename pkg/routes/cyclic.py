"""Cyclic cohomology verification endpoints."""
from fastapi import APIRouter, HTTPException

from models.schemas import CyclicRequest
from services.cyclic import run_suite
from services.errors import NCGError, status_for

router = APIRouter()


@router.post("/cyclic/{subcommand}")
async def run_cyclic(subcommand: str, request: CyclicRequest):
    """Run one of verify-0, verify-1, solve-1, solve-2, duality."""
    try:
        suite = run_suite(subcommand, seed=request.seed, bound=request.bound, count=request.count,
                          k=request.k, c_k=request.c_k)
        return suite.to_dict()
    except HTTPException:
        raise
    except (NCGError, ValueError) as e:
        raise HTTPException(status_code=status_for(e), detail=str(e))
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Cyclic suite failed: {str(e)}")
