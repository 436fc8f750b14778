import logging

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from fastapi.middleware.cors import CORSMiddleware
import uvicorn

from app.config import get_settings
from app.routers import cycles

logger = logging.getLogger(__name__)

# Create FastAPI app
app = FastAPI(
    title="de Bruijn Cycle API",
    description="Construct and verify de Bruijn cycles of words, weight-range words and poset assignments",
    version="1.0.0",
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(cycles.router)


@app.get("/")
async def root():
    """Root endpoint with API information"""
    return {
        "message": "de Bruijn Cycle API",
        "version": "1.0.0",
        "documentation": "/docs",
    }


@app.exception_handler(Exception)
async def global_exception_handler(request: Request, exc: Exception):
    logger.exception("unhandled error on %s", request.url.path)
    return JSONResponse(
        status_code=500,
        content={"message": f"An unexpected error occurred: {str(exc)}"},
    )


if __name__ == "__main__":
    settings = get_settings()
    logging.basicConfig(level=logging.INFO)
    uvicorn.run("app.main:app", host=settings.host, port=settings.port, reload=True)
