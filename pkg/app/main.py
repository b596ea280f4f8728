from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from app.core.config import configure_logging, settings
from app.routers import checks

configure_logging()

app = FastAPI(title=settings.APP_NAME)

app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.CORS_ORIGINS,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.get("/")
def read_root():
    return {"message": f"{settings.APP_NAME} is live!", "schema": settings.REPORT_SCHEMA_VERSION}


app.include_router(checks.router, prefix="/checks")
