import logging
from typing import Any, Optional

from fastapi import APIRouter, Depends, File, Form, HTTPException, UploadFile
from pydantic import ValidationError

from app.config import Settings, get_settings
from app.models.schemas import (
    CountResponse,
    CountRow,
    Cycle,
    CycleReport,
    CycleResponse,
    PosetCycleResponse,
    TextFormat,
    VerifyWeightRangeRequest,
    WalkReport,
    WeightRangeParams,
)
from app.services.counting import count_range, count_table
from app.services.exceptions import CapExceededError, DeBruijnError, ParameterError
from app.services.poset_cycles import PosetCycles
from app.services.verification import CycleVerifier
from app.services.weight_range import CycleGenerator, OverlapDigraph
from app.utils.helpers import error_message, parse_letters, parse_poset, render_letters

logger = logging.getLogger(__name__)

router = APIRouter(
    prefix="/cycles",
    tags=["cycles"],
    responses={404: {"description": "Not found"}},
)


def get_generator(settings: Settings = Depends(get_settings)) -> CycleGenerator:
    return CycleGenerator(settings)


def get_poset_cycles(settings: Settings = Depends(get_settings)) -> PosetCycles:
    return PosetCycles(settings)


def get_verifier(settings: Settings = Depends(get_settings)) -> CycleVerifier:
    return CycleVerifier(settings)


def _http_error(exc: Exception) -> HTTPException:
    """400 for bad input, 413 for instances over a cap, 500 otherwise"""
    if isinstance(exc, CapExceededError):
        return HTTPException(status_code=413, detail=str(exc))
    if isinstance(exc, (ValidationError, ParameterError)):
        return HTTPException(status_code=400, detail=error_message(exc))
    logger.error("construction failed: %s", exc)
    return HTTPException(status_code=500, detail=f"Error building cycle: {exc}")


def _params(n: int, k: int, s: int, t: int) -> WeightRangeParams:
    try:
        return WeightRangeParams(n=n, k=k, s=s, t=t)
    except ValidationError as exc:
        raise _http_error(exc)


def _cycle_response(cycle: Cycle, fmt: TextFormat) -> CycleResponse:
    return CycleResponse(
        cycle=render_letters(cycle.letters, cycle.alphabet_size, fmt),
        length=cycle.length,
        alphabet_size=cycle.alphabet_size,
        window_length=cycle.window_length,
    )


@router.get("/debruijn", response_model=CycleResponse)
async def debruijn_cycle(
    k: int,
    n: int,
    format: TextFormat = TextFormat.AUTO,
    generator: CycleGenerator = Depends(get_generator),
) -> Any:
    """Classic de Bruijn cycle of all k^n words"""
    try:
        return _cycle_response(generator.generate_full(k, n), format)
    except DeBruijnError as exc:
        raise _http_error(exc)


@router.get("/weight-range", response_model=CycleResponse)
async def weight_range_cycle(
    n: int,
    k: int,
    s: int,
    t: int,
    format: TextFormat = TextFormat.AUTO,
    generator: CycleGenerator = Depends(get_generator),
) -> Any:
    """
    de Bruijn cycle of the n-letter words over k letters with weight in [s, t]

    Requires n >= 2, k >= 2, 0 <= s, s+k-1 <= t <= n(k-1).
    """
    params = _params(n, k, s, t)
    try:
        return _cycle_response(generator.eulerian_cycle(params), format)
    except DeBruijnError as exc:
        raise _http_error(exc)


@router.post("/poset", response_model=PosetCycleResponse)
async def poset_cycle(
    poset_file: UploadFile = File(...),
    n: int = Form(...),
    format: TextFormat = Form(TextFormat.AUTO),
    builder: PosetCycles = Depends(get_poset_cycles),
) -> Any:
    """
    de Bruijn cycle of all assignments of [n] to an uploaded poset

    - **poset_file**: `elements:` and `cover:` lines
    - **n**: size of the ground set

    The legend maps every letter to its antichain.
    """
    content = await poset_file.read()
    try:
        poset = parse_poset(content.decode("utf-8"))
        cycle = builder.poset_cycle(poset, n)
        legend = {letter: list(members) for letter, members in enumerate(builder.antichains(poset))}
    except UnicodeDecodeError:
        raise HTTPException(status_code=400, detail="Poset file must be UTF-8 text")
    except DeBruijnError as exc:
        raise _http_error(exc)
    base = _cycle_response(cycle, format)
    return PosetCycleResponse(**base.model_dump(), legend=legend)


@router.get("/counts", response_model=CountResponse)
async def counts(
    n: int,
    k: int,
    s: Optional[int] = None,
    t: Optional[int] = None,
    j: Optional[int] = None,
) -> Any:
    """A(n, k, j) for one j, for j in [s, t], or for every weight"""
    if n < 1 or k < 2:
        raise HTTPException(status_code=400, detail=f"requires n >= 1 and k >= 2 (got n={n}, k={k})")
    top = n * (k - 1)
    low, high = (j, j) if j is not None else (0 if s is None else s, top if t is None else t)
    if not 0 <= low <= high <= top:
        raise HTTPException(status_code=400, detail=f"weights must lie in 0..{top} (got {low}..{high})")
    table = count_table(n, k).counts
    rows = [CountRow(j=weight, count=table[weight]) for weight in range(low, high + 1)]
    return CountResponse(n=n, k=k, rows=rows, total=count_range(n, k, low, high))


@router.post("/verify/weight-range", response_model=CycleReport)
async def verify_weight_range(
    request: VerifyWeightRangeRequest,
    verifier: CycleVerifier = Depends(get_verifier),
) -> Any:
    """Exhaustive check of a submitted cycle; FAIL reports carry the first counterexample"""
    params = _params(request.n, request.k, request.s, request.t)
    try:
        letters = parse_letters(request.cycle, params.k)
        cycle = Cycle(letters=tuple(letters), alphabet_size=params.k, window_length=params.n)
        return verifier.verify_universal_cycle(cycle, params)
    except (DeBruijnError, ValidationError) as exc:
        raise _http_error(exc)


@router.get("/path", response_model=WalkReport)
async def path_to_sink(
    n: int,
    k: int,
    s: int,
    t: int,
    start: str,
    verifier: CycleVerifier = Depends(get_verifier),
) -> Any:
    """Walk from `start` to the sink vertex, with weights and danger flags per row"""
    params = _params(n, k, s, t)
    try:
        vertex = tuple(parse_letters(start, params.k))
        walk = OverlapDigraph(params).path_to_sink(vertex)
    except DeBruijnError as exc:
        raise _http_error(exc)
    return verifier.verify_walk(walk, params)
