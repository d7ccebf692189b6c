"""Flask REST API for the spectral volatility toolkit."""

import logging
from typing import Any, Optional

from dotenv import load_dotenv
from flask import Flask, Response, jsonify, request
from werkzeug.exceptions import HTTPException

from estimators.config import DEFAULT_SPOT_BANDWIDTH, EstimatorConfig
from estimators.iv import default_cutoff, estimate_from_observations
from fisher.efficiency import efficiency_table
from fisher.information import fisher_report, series_identity
from model.curve_spec import format_curve_spec, parse_curve_spec
from model.curves import eval_sigma2, sigma_max
from model.errors import ConfigurationError, DomainError
from model.schemas import ObservationSeries, VolatilityCurve
from settings import configure_logging, get_settings
from spectral.grid import BlockGrid

# Load environment variables
load_dotenv()

logger = logging.getLogger(__name__)

app = Flask(__name__)
app.config["MAX_CONTENT_LENGTH"] = 32 * 1024 * 1024

# Per-request limits; MAX_SPECTRAL_CELLS bounds J·n
MAX_OBSERVATIONS = 1_000_000
MAX_SERIES_TERMS = 1_000_000
MAX_SPECTRAL_CELLS = 50_000_000


def _error(message: str, status: int) -> tuple[Response, int]:
    return jsonify({"error": message}), status


def _float_arg(name: str) -> float:
    raw = request.args.get(name)
    if raw is None:
        raise ConfigurationError(f"Missing '{name}' parameter")
    try:
        return float(raw)
    except ValueError as e:
        raise ConfigurationError(f"'{name}' must be a number, got '{raw}'") from e


def _optional_int_arg(name: str) -> Optional[int]:
    raw = request.args.get(name)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError as e:
        raise ConfigurationError(f"'{name}' must be an integer, got '{raw}'") from e


def _bounded_int_arg(name: str, limit: int) -> Optional[int]:
    value = _optional_int_arg(name)
    if value is not None and value > limit:
        raise ConfigurationError(f"'{name}' must not exceed {limit}, got {value}")
    return value


def _request_curve(spec: Any) -> VolatilityCurve:
    if not isinstance(spec, str):
        raise ConfigurationError("'curve' must be a curve spec string")
    return parse_curve_spec(spec, allow_tables=False)


@app.errorhandler(ConfigurationError)
@app.errorhandler(DomainError)
def handle_validation_error(e: Exception) -> tuple[Response, int]:
    return _error(str(e), 400)


@app.errorhandler(Exception)
def handle_internal_error(e: Exception) -> tuple[Response, int]:
    if isinstance(e, HTTPException):
        return _error(e.description or e.name, e.code or 500)
    logger.exception("Request failed")
    return _error(f"Internal server error: {str(e)}", 500)


@app.route("/health", methods=["GET"])
def health_check() -> tuple[Response, int]:
    """Health check endpoint."""
    return jsonify({"status": "healthy", "service": "spectral-volatility"}), 200


@app.route("/api/curve", methods=["GET"])
def get_curve() -> tuple[Response, int]:
    """
    Describe a volatility curve.

    Query params:
        spec: Curve specification such as quartic:0.02,0.2,0.5
        t: Optional time in [0, 1] at which to evaluate σ²

    Returns:
        Canonical spec, kind, moments, grid maximum of σ and the tuning ratio
    """
    spec = request.args.get("spec")
    if not spec:
        return _error("Missing 'spec' parameter", 400)
    curve = _request_curve(spec)
    response: dict[str, Any] = {
        "spec": format_curve_spec(curve),
        "kind": curve.kind.value,
        "sigma_max": sigma_max(curve),
        **efficiency_table(curve),
    }
    if "t" in request.args:
        t = _float_arg("t")
        response["t"] = t
        response["sigma2"] = eval_sigma2(curve, t)
    return jsonify(response), 200


@app.route("/api/fisher", methods=["GET"])
def get_fisher() -> tuple[Response, int]:
    """
    Fisher information of the single-block Gaussian experiment.

    Query params:
        theta: Variance parameter
        h0: Spectral scale
        J: Optional truncation for the partial sum
    """
    J = _bounded_int_arg("J", MAX_SERIES_TERMS)
    report = fisher_report(_float_arg("theta"), _float_arg("h0"), J)
    return jsonify(report.to_dict()), 200


@app.route("/api/series", methods=["GET"])
def get_series() -> tuple[Response, int]:
    """
    Truncated series against its closed form.

    Query params:
        lambda: λ > 0
        J: Truncation, default 10000
    """
    J = _bounded_int_arg("J", MAX_SERIES_TERMS) or 10_000
    return jsonify(series_identity(_float_arg("lambda"), J).to_dict()), 200


@app.route("/api/estimate/iv", methods=["POST"])
def post_estimate_iv() -> tuple[Response, int]:
    """
    Estimate integrated volatility from posted observations.

    Request body:
        {
            "values": [Y_1, ..., Y_n],
            "delta": noise level,
            "blocks": number of blocks,
            "J": cut-off (optional when "curve" is given),
            "weights": "adaptive" | "oracle" | "mle" (optional),
            "curve": true curve spec (optional),
            "bias_correction": "paper" | "exact" (optional),
            "spot_bandwidth": float (optional),
            "spot_kernel": "box" | "local-linear" (optional)
        }

    Returns:
        IvEstimate as JSON
    """
    data = request.get_json(silent=True)
    if not isinstance(data, dict):
        return _error("Missing request body", 400)

    missing = [key for key in ("values", "delta", "blocks") if key not in data]
    if missing:
        return _error(f"Missing required fields: {', '.join(missing)}", 400)

    values = data["values"]
    if not isinstance(values, list):
        return _error("'values' must be a list of numbers", 400)
    if len(values) > MAX_OBSERVATIONS:
        return _error(f"at most {MAX_OBSERVATIONS} observations per request", 400)
    try:
        delta = float(data["delta"])
        blocks = int(data["blocks"])
        J = None if data.get("J") is None else int(data["J"])
        spot_bandwidth = float(data.get("spot_bandwidth", DEFAULT_SPOT_BANDWIDTH))
    except (TypeError, ValueError):
        return _error(
            "'delta' and 'spot_bandwidth' must be numbers, 'blocks' and 'J' integers", 400
        )

    try:
        obs = ObservationSeries(n=len(values), delta=delta, values=values)
    except (TypeError, ValueError) as e:
        return _error(str(e), 400)
    grid = BlockGrid(n=obs.n, blocks=blocks)
    curve = _request_curve(data["curve"]) if data.get("curve") else None

    if J is None:
        if curve is None:
            return _error("'J' is required unless 'curve' is given", 400)
        J = default_cutoff(curve, grid, delta)
    if J * obs.n > MAX_SPECTRAL_CELLS:
        return _error(f"J·n must not exceed {MAX_SPECTRAL_CELLS}", 400)

    config = EstimatorConfig(
        grid=grid,
        J=J,
        delta=delta,
        weight_mode=data.get("weights", "adaptive"),
        bias_correction=data.get("bias_correction", "paper"),
        spot_bandwidth=spot_bandwidth,
        spot_kernel=data.get("spot_kernel", "box"),
    )
    return jsonify(estimate_from_observations(obs, config, curve).to_dict()), 200


if __name__ == "__main__":
    settings = get_settings()
    configure_logging(settings.log_level, default="INFO")
    debug = settings.python_env == "development"
    app.run(host="0.0.0.0", port=settings.port, debug=debug)
