"""FastAPI main application — dihedral-ncg."""
from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from routes import catalog, cyclic, pairings, verify
from services.fredholm import catalog_names
from services.settings import configure_logging

configure_logging()

description = "Exact K-theory / K-homology pairings and cyclic cohomology for C*(Z⋊Z₂) and C*(Z⋊Z)."

tags_metadata = [
    {"name": "Catalog",  "description": "Fredholm modules over C(T), A = C*(Z⋊Z₂) and B = C*(Z⋊Z): parity, algebra, representation."},
    {"name": "Pairings", "description": "Chern-character pairings: stabilized trace for even modules, compression index for odd modules, full tables."},
    {"name": "Verify",   "description": "Module axioms (F = F*, F² = 1, grading, compact commutators) and the y_t homotopy check."},
    {"name": "Cyclic",   "description": "Cyclic cohomology of CΓ: b∘b = 0, cocycle checks, coboundary solvers, duality with K-theory."},
]

app = FastAPI(
    title="dihedral-ncg API",
    description=description,
    version="1.0.0",
    openapi_tags=tags_metadata,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(catalog.router,  prefix="/api", tags=["Catalog"])
app.include_router(pairings.router, prefix="/api", tags=["Pairings"])
app.include_router(verify.router,   prefix="/api", tags=["Verify"])
app.include_router(cyclic.router,   prefix="/api", tags=["Cyclic"])


@app.get("/")
def root():
    return {"status": "ok", "service": "dihedral-ncg", "version": "1.0.0", "docs": "/docs"}


@app.get("/health")
def health():
    return {"status": "healthy", "modules": len(catalog_names())}
