import logging

from flask import jsonify, request
from werkzeug.exceptions import BadRequest, HTTPException

from app import app, db
from models import CountTableRecord, VerificationRun
from utils.bijections import BIJECTIONS, apply_bijection, bijection_trace
from utils.core import CombinatoricsError
from utils.counting import COUNT_TABLES, ceil_half
from utils.generation import PARTITION_CLASSES, generate_partitions, generate_rsp, oracle_rsp
from utils.limits import COUNT_MAX_N, check_limit
from utils.series import egf_rhs
from utils.text_format import PARSERS, parse_target, to_json
from utils.verification import SUITE_ORDER, run_suite

# Configure logging
logger = logging.getLogger(__name__)

def int_arg(name, required=True, default=None):
    """Read an integer query parameter, rejecting malformed values with 400"""
    raw = request.args.get(name)
    if raw is None or raw == "":
        if required:
            raise BadRequest(f"missing query parameter {name!r}")
        return default
    try:
        return int(raw)
    except ValueError:
        raise BadRequest(f"query parameter {name!r} must be an integer, got {raw!r}")

def check_api_size(n):
    check_limit("n", n, app.config["RUNSORT_API_MAX_N"])

@app.route('/')
def index():
    """List the API endpoints"""
    return jsonify({
        "endpoints": [
            "/api/count/<table>?n=",
            "/api/gen/rsp?n=&k=&engine=",
            "/api/gen/partitions?n=&class=&k=",
            "/api/map/<bijection>?input=&i=&target=",
            "/api/series?nx=&ny=&nz=",
            "/api/verify",
        ],
        "tables": sorted(COUNT_TABLES),
        "bijections": list(BIJECTIONS),
        "suites": ["all", *SUITE_ORDER],
    })

@app.route('/api/count/<table>', methods=['GET'])
def get_count_table(table):
    """Count table up to n, served from the cache when it was built before"""
    if table not in COUNT_TABLES:
        return jsonify({"error": f"unknown table {table!r}"}), 404
    n = int_arg("n")
    check_limit("n", n, COUNT_MAX_N[table])

    record = CountTableRecord.query.filter_by(kind=table, nmax=n).first()
    if record is not None:
        logger.debug(f"Count table {table} n<={n} served from cache")
        return jsonify({"table": table, "n": n, "cached": True, **record.values})

    values = COUNT_TABLES[table](n).to_jsonable()
    db.session.add(CountTableRecord(kind=table, nmax=n, values=values))
    db.session.commit()
    logger.info(f"Count table {table} n<={n} cached")
    return jsonify({"table": table, "n": n, "cached": False, **values})

@app.route('/api/gen/rsp', methods=['GET'])
def get_rsp():
    """Run-sorted permutations of [n], bucketed by runs"""
    n = int_arg("n")
    k = int_arg("k", required=False)
    engine = request.args.get("engine", "dp")
    if engine not in ("dp", "oracle"):
        raise BadRequest(f"unknown engine {engine!r}")
    check_api_size(n)

    family = generate_rsp(n) if engine == "dp" else oracle_rsp(n)
    if k is not None:
        return jsonify({"n": n, "k": k, "permutations": [to_json(pi) for pi in family.cell(k)]})
    cells = {str(j): [to_json(pi) for pi in family.cell(j)] for j in range(1, ceil_half(n) + 1)}
    return jsonify({"n": n, "engine": engine, "cells": cells})

@app.route('/api/gen/partitions', methods=['GET'])
def get_partitions():
    """Set partitions of [n] in a class, optionally with k blocks"""
    n = int_arg("n")
    k = int_arg("k", required=False)
    partition_class = request.args.get("class", "all")
    if partition_class not in PARTITION_CLASSES:
        raise BadRequest(f"unknown partition class {partition_class!r}")
    check_api_size(n)

    partitions = [p for p in generate_partitions(n, partition_class) if k is None or p.k == k]
    return jsonify({"n": n, "class": partition_class, "partitions": [to_json(p) for p in partitions]})

@app.route('/api/map/<bijection>', methods=['GET'])
def map_object(bijection):
    """Apply a bijection to the object given in ?input="""
    if bijection not in BIJECTIONS:
        return jsonify({"error": f"unknown bijection {bijection!r}"}), 404
    text = request.args.get("input")
    if text is None:
        raise BadRequest("missing query parameter 'input'")
    target = request.args.get("target")

    obj = PARSERS[BIJECTIONS[bijection][0]](text)
    result = apply_bijection(
        bijection,
        obj,
        i=int_arg("i", required=False),
        target=parse_target(target) if target is not None else None,
    )

    payload = {"bijection": bijection, "input": text}
    if isinstance(result, tuple):
        payload["i"], image = result
        payload["output"] = to_json(image)
        payload["text"] = str(image)
    else:
        payload["output"] = to_json(result)
        payload["text"] = str(result)
    if bijection == "alpha" and request.args.get("trace") == "1":
        vectors = bijection_trace(obj)
        payload["trace"] = {
            "u": list(vectors.u),
            "delta": list(vectors.delta),
            "v": list(vectors.v),
            "delta_prime": list(vectors.delta_prime),
        }
    return jsonify(payload)

@app.route('/api/series', methods=['GET'])
def get_series():
    """Generating-function coefficients multiplied by m!"""
    nx, ny, nz = int_arg("nx"), int_arg("ny"), int_arg("nz")
    expansion = egf_rhs(nx, ny, nz)
    terms = [[m, k, r, str(expansion.egf_coeff(m, k, r))] for (m, k, r) in sorted(expansion.terms())]
    return jsonify({"bounds": [nx, ny, nz], "scaled": True, "terms": terms})

@app.route('/api/verify', methods=['POST'])
def create_verification_run():
    """Run a verification suite and store the outcome"""
    body = request.get_json(silent=True) or {}
    suite = body.get("suite", "all")
    nmax = body.get("nmax", 6)

    results = run_suite(suite, nmax)
    run = VerificationRun(
        suite=suite,
        nmax=nmax,
        passed=all(result.passed for result in results),
        results=[result.to_jsonable() for result in results],
    )
    db.session.add(run)
    db.session.commit()
    logger.info(f"Verification run {run.id}: suite={suite} nmax={nmax} passed={run.passed}")
    return jsonify(run.to_dict()), 201

@app.route('/api/verify/<int:run_id>', methods=['GET'])
def get_verification_run(run_id):
    run = db.get_or_404(VerificationRun, run_id)
    return jsonify(run.to_dict())

@app.route('/api/verify', methods=['GET'])
def list_verification_runs():
    """Most recent verification runs first"""
    runs = VerificationRun.query.order_by(VerificationRun.created_at.desc()).limit(50).all()
    return jsonify([run.to_dict() for run in runs])

@app.errorhandler(CombinatoricsError)
def domain_error(e):
    logger.warning(f"Rejected request {request.path}: {e}")
    return jsonify({"error": str(e)}), 400

@app.errorhandler(HTTPException)
def http_error(e):
    return jsonify({"error": e.description}), e.code

@app.errorhandler(500)
def internal_server_error(e):
    logger.error(f"Unhandled error on {request.path}: {e}")
    return jsonify({"error": "internal server error"}), 500
