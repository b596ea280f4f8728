import logging
from typing import Any, Dict, List

from fastapi import APIRouter, HTTPException

from app.core.errors import InputError, StructuralError, UnknownCheckError
from app.models.params import Profile
from app.models.reports import CheckInfo, RunCheckRequest, SuiteRequest
from app.services.check_catalogue import registry

router = APIRouter()
logger = logging.getLogger(__name__)


@router.get("/", response_model=List[CheckInfo])
def list_checks():
    """Catalogue of every registered check."""
    return registry.catalogue()


@router.post("/run/{name}", response_model=Dict[str, Any])
def run_check(name: str, request: RunCheckRequest):
    try:
        report = registry.run_check(name, request.params, request.seed)
        return report.payload()
    except UnknownCheckError as e:
        raise HTTPException(status_code=404, detail=str(e))
    except InputError as e:
        raise HTTPException(status_code=422, detail=str(e))
    except StructuralError as e:
        logger.error(f"❌ {name} failed structurally: {e}")
        raise HTTPException(status_code=500, detail=f"Structural failure: {e}")


@router.post("/suite/{profile}", response_model=Dict[str, Any])
def run_suite(profile: Profile, request: SuiteRequest = SuiteRequest()):
    logger.info(f"🚀 Suite {profile.value} requested over HTTP")
    return registry.run_suite(profile, request.seed).payload()


@router.get("/health")
def health_check():
    return {"status": "healthy", "checks": len(registry.names)}
