"""Textual curve specifications such as ``quartic:0.02,0.2,0.5``."""

import math

from model.errors import CurveSpecError
from model.schemas import CurveKind, VolatilityCurve

_PREFIXES = {
    "const": CurveKind.CONSTANT,
    "quartic": CurveKind.SHIFTED_QUARTIC,
    "cos": CurveKind.COSINE_PERTURBATION,
    "sin": CurveKind.SINUSOID,
    "table": CurveKind.TABULATED,
}

_FIELD_COUNTS = {
    CurveKind.CONSTANT: 1,
    CurveKind.SHIFTED_QUARTIC: 3,
    CurveKind.COSINE_PERTURBATION: 2,
    CurveKind.SINUSOID: 3,
}

GRAMMAR = "const:<s> | quartic:<a>,<b>,<c> | cos:<n>,<alpha> | sin:<a>,<b>,<f> | table:<path>"


def _parse_fields(body: str, offset: int, count: int) -> list[float]:
    fields: list[float] = []
    position = offset
    for raw in body.split(","):
        token = raw.strip()
        try:
            value = float(token)
        except ValueError as e:
            raise CurveSpecError(f"expected a number, got '{token}'", position) from e
        if not math.isfinite(value):
            raise CurveSpecError(f"expected a finite number, got '{token}'", position)
        fields.append(value)
        position += len(raw) + 1
    if len(fields) != count:
        raise CurveSpecError(
            f"expected {count} comma-separated fields, got {len(fields)}", offset + len(body)
        )
    return fields


def parse_curve_spec(text: str, allow_tables: bool = True) -> VolatilityCurve:
    """
    Parse a curve specification into a validated curve.

    Grammar: ``const:<s> | quartic:<a>,<b>,<c> | cos:<n>,<alpha> | sin:<a>,<b>,<f> |
    table:<path>`` where ``table`` reads a CSV with header ``t,sigma``.

    Args:
        text: Curve specification
        allow_tables: Accept ``table:<path>`` specs, which read a file

    Returns:
        VolatilityCurve

    Raises:
        CurveSpecError: On syntax errors, carrying the offending character position
        DomainError: When the curve is not strictly positive
    """
    prefix, sep, body = text.partition(":")
    if not sep:
        raise CurveSpecError(f"missing ':' in curve spec, expected {GRAMMAR}", len(text))
    kind = _PREFIXES.get(prefix.strip())
    if kind is None:
        raise CurveSpecError(f"unknown curve kind '{prefix}', expected {GRAMMAR}", 0)
    offset = len(prefix) + 1

    if kind is CurveKind.TABULATED:
        if not allow_tables:
            raise CurveSpecError("table curves are not accepted here", 0)
        from storage.csv_store import read_curve_table

        path = body.strip()
        if not path:
            raise CurveSpecError("table spec needs a CSV path", offset)
        knots, sigmas = read_curve_table(path)
        return VolatilityCurve.tabulated(knots, sigmas, source=path)

    fields = _parse_fields(body, offset, _FIELD_COUNTS[kind])
    if kind is CurveKind.CONSTANT:
        return VolatilityCurve.constant(fields[0])
    if kind is CurveKind.SHIFTED_QUARTIC:
        return VolatilityCurve.shifted_quartic(*fields)
    if kind is CurveKind.SINUSOID:
        return VolatilityCurve.sinusoid(*fields)

    n_freq, alpha = fields
    if not n_freq.is_integer():
        raise CurveSpecError(f"frequency must be an integer, got {n_freq:g}", offset)
    return VolatilityCurve.cosine_perturbation(int(n_freq), alpha)


def format_curve_spec(curve: VolatilityCurve) -> str:
    """
    Render a curve back into the specification grammar.

    Floats use their shortest round-trip representation, so parsing the result rebuilds an
    identical curve.
    """
    if curve.kind is CurveKind.TABULATED:
        if curve.source is None:
            raise CurveSpecError("tabulated curve has no source path to format", 0)
        return f"table:{curve.source}"
    prefix = next(key for key, kind in _PREFIXES.items() if kind is curve.kind)
    if curve.kind is CurveKind.COSINE_PERTURBATION:
        n_freq, alpha = curve.params
        return f"{prefix}:{int(n_freq)},{alpha!r}"
    return f"{prefix}:" + ",".join(repr(p) for p in curve.params)
