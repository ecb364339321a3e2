from fastapi import FastAPI, HTTPException, Query
from fastapi.responses import PlainTextResponse
from pydantic import BaseModel, Field
from typing import Optional
import asyncio
import logging
from contextlib import asynccontextmanager

import config
from icl.appendix import errata_as_expected, find_mismatches
from icl.classifier import census
from icl.enumeration import canonical_suite, enumerate_rmodels, find_countermodel
from icl.formula import FormulaSyntaxError, parse_formula, parse_nword, render, variables_of
from icl.kripke import ModelSpec, validate_model
from icl.poset import build_poset, emit_dot, poset_json
from reporting import census_records, classify_report, countermodel_record, eval_report, validity_table
from verification import VerifyOptions, run_verification

logging.basicConfig(level=config.LOG_LEVEL)
logger = logging.getLogger(__name__)


class EvalRequest(BaseModel):
    model: ModelSpec
    formula: str


class SearchRequest(BaseModel):
    formula: str
    max_worlds: Optional[int] = Field(None, ge=1, le=config.MAX_SEARCH_WORLDS)
    max_height: Optional[int] = None


class VerifyRequest(BaseModel):
    max_len: Optional[int] = None
    max_worlds: Optional[int] = Field(None, ge=1, le=config.MAX_SEARCH_WORLDS)
    max_height: Optional[int] = None
    suites: Optional[list[str]] = None


def warm_up():
    """Build the evaluation contexts and the length-5 census once."""
    suite = canonical_suite()
    classes = census(5)
    logger.info(f"warmed up {len(suite)} contexts and {len(classes)} classes")


@asynccontextmanager
async def lifespan(app: FastAPI):
    # Startup
    loop = asyncio.get_event_loop()
    await loop.run_in_executor(None, warm_up)
    yield


app = FastAPI(
    title="ICL Negation-Word API",
    description="Forcing in Kripke r-models, countermodel search, the fifteen classes of negation-words, their poset and the appendix audit",
    version="1.0.0",
    lifespan=lifespan
)


def _parse(text: str):
    try:
        return parse_formula(text)
    except FormulaSyntaxError as e:
        raise HTTPException(status_code=400, detail=f"Invalid formula: {str(e)}")


def _bound(max_worlds: Optional[int], max_height: Optional[int]):
    try:
        return config.bound_from(max_worlds, max_height)
    except ValueError as e:
        raise HTTPException(status_code=400, detail=f"Invalid bound: {str(e)}")


@app.get("/health")
def health():
    bound = config.default_bound()
    return {"status": "ok", "max_worlds": bound.max_worlds, "max_height": bound.max_height}


@app.post("/eval")
def eval_formula(data: EvalRequest):
    """Forcing report for every world of the given model."""
    try:
        model = validate_model(data.model)
        if isinstance(model, list):
            raise HTTPException(status_code=422, detail=[d.to_dict() for d in model])
        return eval_report(model, _parse(data.formula))
    except HTTPException:
        raise
    except Exception as e:
        logger.error(f"Error evaluating {data.formula!r}: {str(e)}")
        raise HTTPException(status_code=500, detail=f"Error evaluating formula: {str(e)}")


@app.post("/valid")
def valid_formula(data: SearchRequest):
    """Bounded validity: no enumerated model refutes the formula."""
    try:
        f = _parse(data.formula)
        bound = _bound(data.max_worlds, data.max_height)
        found = find_countermodel(f, bound)
        return {
            "formula": render(f),
            "valid": found is None,
            "models_checked": sum(1 for _ in enumerate_rmodels(bound, max(variables_of(f), default=1))),
            "max_worlds": bound.max_worlds,
            "max_height": bound.max_height,
        }
    except HTTPException:
        raise
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error checking validity: {str(e)}")


@app.post("/countermodel")
def countermodel(data: SearchRequest):
    """The smallest enumerated countermodel, or null."""
    try:
        found = find_countermodel(_parse(data.formula), _bound(data.max_worlds, data.max_height))
        return None if found is None else countermodel_record(*found)
    except HTTPException:
        raise
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error searching for a countermodel: {str(e)}")


@app.get("/classify")
def classify(word: str = Query(..., description="Negation-word such as !~~!~p")):
    try:
        return classify_report(parse_nword(word))
    except FormulaSyntaxError as e:
        raise HTTPException(status_code=400, detail=f"Invalid negation-word: {str(e)}")
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error classifying word: {str(e)}")


@app.get("/census")
def get_census(max_len: int = Query(config.TABLE_MAX_LEN, ge=0, le=12)):
    try:
        classes = census(max_len)
        return {"max_len": max_len, "count": len(classes), "classes": census_records(classes)}
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error computing census: {str(e)}")


@app.get("/table")
def get_table(max_len: int = Query(config.TABLE_MAX_LEN, ge=0, le=8)):
    """Validity table rows keyed by the ASCII context ids."""
    try:
        frame = validity_table(max_len)
        return {"max_len": max_len, "rows": frame.reset_index().to_dict(orient="records")}
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error computing table: {str(e)}")


@app.get("/errata")
def get_errata():
    try:
        mismatches = find_mismatches()
        return {
            "count": len(mismatches),
            "as_expected": errata_as_expected(mismatches),
            "mismatches": [m.to_dict() for m in mismatches],
        }
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error auditing the tables: {str(e)}")


@app.get("/poset")
def get_poset(constants: bool = False, format: str = Query("json", pattern="^(json|dot)$")):
    try:
        poset = build_poset(constants, config.default_bound())
        if format == "dot":
            return PlainTextResponse(emit_dot(poset))
        return poset_json(poset)
    except Exception as e:
        raise HTTPException(status_code=500, detail=f"Error building poset: {str(e)}")


@app.post("/verify")
async def verify(data: VerifyRequest):
    """Run the verification suites in a worker thread."""
    try:
        opts = VerifyOptions.from_config(max_len=data.max_len, bound=_bound(data.max_worlds, data.max_height))
        loop = asyncio.get_event_loop()
        report = await loop.run_in_executor(None, run_verification, opts, data.suites)
        return report.to_dict()
    except HTTPException:
        raise
    except Exception as e:
        logger.error(f"Error running verification: {str(e)}")
        raise HTTPException(status_code=500, detail=f"Error running verification: {str(e)}")
