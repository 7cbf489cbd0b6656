"""Canonical JSON input/output for every object the CLI exchanges.

Canonical form: object keys sorted, no whitespace, floats rendered with
repr-faithful precision via format(x, ".17g"), negative infinity encoded
as the string "-inf" (it only ever appears in result values). Two runs on
the same inputs must produce byte-identical result documents, so nothing
locale- or hash-order-dependent is allowed here.
"""

import json
import math
from typing import Any

from .capacity import Capacity, CapacityEntropyReport
from .discrete import DivergenceResult, ProbabilityVector
from .errors import InvalidInputError
from .families import (
    Beta,
    ContinuousGrading,
    PiecewiseLinearCdf,
    Power,
    Triangular,
    TruncatedNormal,
    Uniform,
)
from .ordered import GradingSample
from .quadrature import QuadratureSpec

__all__ = [
    "canonical_dumps",
    "load_json",
    "detect_schema",
    "parse_document",
    "grading_sample_from_doc",
    "grading_sample_to_doc",
    "weights_from_doc",
    "weights_to_doc",
    "masses_from_doc",
    "masses_to_doc",
    "capacity_from_doc",
    "capacity_to_doc",
    "continuous_grading_from_doc",
    "continuous_grading_to_doc",
    "quadrature_spec_from_doc",
    "quadrature_spec_to_doc",
    "divergence_result_to_doc",
    "capacity_report_to_doc",
]


# ---------------------------------------------------------------- writing


def _format_float(x: float) -> str:
    if not math.isfinite(x):
        raise InvalidInputError(
            f"non-finite number {x!r} cannot be serialized as a JSON float"
        )
    if x == 0.0:
        x = 0.0  # normalize -0.0
    return format(x, ".17g")


def canonical_dumps(obj: Any) -> str:
    """Serialize to the canonical byte form described in the module docstring."""
    out: list[str] = []
    _write(obj, out)
    return "".join(out)


def _write(obj: Any, out: list[str]) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=True))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(_format_float(obj))
    elif isinstance(obj, dict):
        out.append("{")
        for i, key in enumerate(sorted(obj)):
            if not isinstance(key, str):
                raise InvalidInputError(f"object keys must be strings, got {key!r}")
            if i:
                out.append(",")
            out.append(json.dumps(key, ensure_ascii=True))
            out.append(":")
            _write(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(",")
            _write(item, out)
        out.append("]")
    else:
        raise InvalidInputError(f"cannot serialize {type(obj).__name__} to JSON")


# ---------------------------------------------------------------- reading


def _reject_constant(token: str) -> float:
    raise InvalidInputError(f"non-finite JSON literal {token!r} is not accepted")


def _pairs_without_duplicates(pairs: list[tuple[str, Any]]) -> dict:
    doc: dict = {}
    for key, value in pairs:
        if key in doc:
            raise InvalidInputError(f"duplicate object key {key!r}")
        doc[key] = value
    return doc


def load_json(text: str) -> Any:
    try:
        return json.loads(
            text,
            parse_constant=_reject_constant,
            object_pairs_hook=_pairs_without_duplicates,
        )
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"malformed JSON: {exc}") from exc


def _require_keys(
    doc: dict, required: frozenset, optional: frozenset = frozenset(), schema: str = ""
) -> None:
    if not isinstance(doc, dict):
        raise InvalidInputError(f"{schema} document must be a JSON object")
    keys = set(doc)
    missing = sorted(required - keys)
    extra = sorted(keys - required - set(optional))
    if missing:
        raise InvalidInputError(f"{schema} document is missing keys {missing}")
    if extra:
        raise InvalidInputError(f"{schema} document has unknown keys {extra}")


def _number(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InvalidInputError(f"{where} must be a number, got {value!r}")
    return float(value)


def _number_list(value: Any, where: str) -> list[float]:
    if not isinstance(value, list):
        raise InvalidInputError(f"{where} must be an array of numbers")
    return [_number(v, f"{where}[{i}]") for i, v in enumerate(value)]


def _integer(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidInputError(f"{where} must be an integer, got {value!r}")
    return value


# ---------------------------------------------------------------- schemas


def grading_sample_from_doc(doc: dict) -> GradingSample:
    _require_keys(doc, frozenset({"grades"}), frozenset({"labels"}), "grading_sample")
    grades = tuple(_number_list(doc["grades"], "grades"))
    labels = None
    if "labels" in doc:
        raw = doc["labels"]
        if not isinstance(raw, list) or any(not isinstance(s, str) for s in raw):
            raise InvalidInputError("labels must be an array of strings")
        labels = tuple(raw)
    return GradingSample(grades=grades, labels=labels)


def grading_sample_to_doc(sample: GradingSample) -> dict:
    doc: dict = {"grades": list(sample.grades)}
    if sample.labels is not None:
        doc["labels"] = list(sample.labels)
    return doc


def weights_from_doc(doc: dict) -> ProbabilityVector:
    _require_keys(doc, frozenset({"weights"}), schema="weights")
    return ProbabilityVector(tuple(_number_list(doc["weights"], "weights")))


def weights_to_doc(vector: ProbabilityVector) -> dict:
    return {"weights": list(vector.weights)}


def masses_from_doc(doc: dict) -> tuple[float, ...]:
    _require_keys(doc, frozenset({"masses"}), schema="masses")
    return tuple(_number_list(doc["masses"], "masses"))


def masses_to_doc(masses: tuple[float, ...]) -> dict:
    return {"masses": list(masses)}


def _subset_mask(key: str, ground_size: int) -> int:
    if key == "":
        return 0
    mask = 0
    previous = 0
    for part in key.split(","):
        try:
            element = int(part)
        except ValueError:
            element = -1
        if element < 1 or str(element) != part:
            raise InvalidInputError(
                f"subset key {key!r} is not a comma-separated list of elements"
            )
        if element <= previous:
            raise InvalidInputError(
                f"subset key {key!r} must list elements in strictly increasing order"
            )
        if element > ground_size:
            raise InvalidInputError(
                f"subset key {key!r} names element {element} beyond ground size {ground_size}"
            )
        mask |= 1 << (element - 1)
        previous = element
    return mask


def _mask_key(mask: int) -> str:
    elements = []
    element = 1
    while mask:
        if mask & 1:
            elements.append(str(element))
        mask >>= 1
        element += 1
    return ",".join(elements)


def capacity_from_doc(doc: dict) -> Capacity:
    _require_keys(doc, frozenset({"ground_size", "values"}), schema="capacity")
    n = _integer(doc["ground_size"], "ground_size")
    if n < 1:
        raise InvalidInputError(f"ground_size must be >= 1, got {n}")
    raw = doc["values"]
    if not isinstance(raw, dict):
        raise InvalidInputError("values must be an object keyed by subset")
    size = 1 << n
    values: list = [None] * size
    for key, value in raw.items():
        mask = _subset_mask(key, n)
        if values[mask] is not None:
            raise InvalidInputError(f"subset key {key!r} repeats an earlier subset")
        values[mask] = _number(value, f"values[{key!r}]")
    missing = [_mask_key(m) or '""' for m in range(size) if values[m] is None]
    if missing:
        shown = ", ".join(missing[:4]) + (", ..." if len(missing) > 4 else "")
        raise InvalidInputError(
            f"values must cover every subset; {len(missing)} missing ({shown})"
        )
    return Capacity(ground_size=n, values=tuple(values))


def capacity_to_doc(mu: Capacity) -> dict:
    return {
        "ground_size": mu.ground_size,
        "values": {_mask_key(m): v for m, v in enumerate(mu.values)},
    }


_FAMILY_PARAM_KEYS = {
    "uniform": frozenset(),
    "triangular": frozenset({"c"}),
    "beta": frozenset({"alpha", "beta"}),
    "truncated_normal": frozenset({"mu", "sigma"}),
    "power": frozenset({"p"}),
    "piecewise_linear_cdf": frozenset({"knots"}),
}


def continuous_grading_from_doc(doc: dict) -> ContinuousGrading:
    _require_keys(
        doc, frozenset({"family", "params", "support"}), schema="continuous_grading"
    )
    family = doc["family"]
    if family not in _FAMILY_PARAM_KEYS:
        known = ", ".join(sorted(_FAMILY_PARAM_KEYS))
        raise InvalidInputError(f"unknown family {family!r} (known: {known})")
    support = _number_list(doc["support"], "support")
    if len(support) != 2:
        raise InvalidInputError("support must be an array [a, b]")
    a, b = support
    params = doc["params"]
    _require_keys(params, _FAMILY_PARAM_KEYS[family], schema=f"{family} params")
    if family == "uniform":
        return Uniform(a, b)
    if family == "triangular":
        return Triangular(a, _number(params["c"], "params.c"), b)
    if family == "beta":
        return Beta(
            _number(params["alpha"], "params.alpha"),
            _number(params["beta"], "params.beta"),
            a,
            b,
        )
    if family == "truncated_normal":
        return TruncatedNormal(
            _number(params["mu"], "params.mu"),
            _number(params["sigma"], "params.sigma"),
            a,
            b,
        )
    if family == "power":
        return Power(_number(params["p"], "params.p"), a, b)
    raw_knots = params["knots"]
    if not isinstance(raw_knots, list):
        raise InvalidInputError("params.knots must be an array of [x, y] pairs")
    knots = []
    for i, pair in enumerate(raw_knots):
        coords = _number_list(pair, f"params.knots[{i}]")
        if len(coords) != 2:
            raise InvalidInputError(f"params.knots[{i}] must be a pair [x, y]")
        knots.append((coords[0], coords[1]))
    grading = PiecewiseLinearCdf(tuple(knots))
    if grading.support != (a, b):
        raise InvalidInputError(
            f"support {support!r} disagrees with knot endpoints {grading.support!r}"
        )
    return grading


def continuous_grading_to_doc(F: ContinuousGrading) -> dict:
    a, b = F.support
    return {"family": F.family, "params": F.shape_params(), "support": [a, b]}


_QUAD_KEYS = frozenset({"abs_tol", "rel_tol", "max_depth", "endpoint_margin"})


def quadrature_spec_from_doc(doc: dict) -> QuadratureSpec:
    _require_keys(doc, frozenset(), _QUAD_KEYS, "quadrature_spec")
    defaults = QuadratureSpec()
    return QuadratureSpec(
        abs_tol=_number(doc["abs_tol"], "abs_tol") if "abs_tol" in doc else defaults.abs_tol,
        rel_tol=_number(doc["rel_tol"], "rel_tol") if "rel_tol" in doc else defaults.rel_tol,
        max_depth=_integer(doc["max_depth"], "max_depth") if "max_depth" in doc else defaults.max_depth,
        endpoint_margin=_number(doc["endpoint_margin"], "endpoint_margin")
        if "endpoint_margin" in doc
        else defaults.endpoint_margin,
    )


def quadrature_spec_to_doc(spec: QuadratureSpec) -> dict:
    return {
        "abs_tol": spec.abs_tol,
        "rel_tol": spec.rel_tol,
        "max_depth": spec.max_depth,
        "endpoint_margin": spec.endpoint_margin,
    }


# ---------------------------------------------------------------- results


def divergence_result_to_doc(result: DivergenceResult) -> dict:
    # error_estimate stays a library-level diagnostic; the wire form is the
    # four-field document
    return {
        "value": "-inf" if result.value == -math.inf else result.value,
        "terms_used": result.terms_used,
        "dropped_mass": result.dropped_mass,
        "flags": sorted(result.flags),
    }


def capacity_report_to_doc(report: CapacityEntropyReport) -> dict:
    return {
        "entropy": report.entropy,
        "argmin_chain": list(report.argmin_chain.order),
        "chains_examined": report.chains_examined,
        "method": report.method,
    }


# ---------------------------------------------------------------- dispatch

_PARSERS = {
    "grading_sample": (grading_sample_from_doc, grading_sample_to_doc),
    "weights": (weights_from_doc, weights_to_doc),
    "masses": (masses_from_doc, masses_to_doc),
    "capacity": (capacity_from_doc, capacity_to_doc),
    "continuous_grading": (continuous_grading_from_doc, continuous_grading_to_doc),
    "quadrature_spec": (quadrature_spec_from_doc, quadrature_spec_to_doc),
}


def detect_schema(doc: Any) -> str:
    """Name the input schema a JSON document is written in."""
    if not isinstance(doc, dict):
        raise InvalidInputError("document must be a JSON object")
    if "grades" in doc:
        return "grading_sample"
    if "weights" in doc:
        return "weights"
    if "masses" in doc:
        return "masses"
    if "ground_size" in doc or "values" in doc:
        return "capacity"
    if "family" in doc:
        return "continuous_grading"
    if doc and set(doc) <= _QUAD_KEYS:
        return "quadrature_spec"
    known = ", ".join(sorted(_PARSERS))
    raise InvalidInputError(f"document matches no known schema (known: {known})")


def parse_document(doc: Any) -> tuple[str, Any]:
    """Detect the schema, parse, and return (schema name, parsed object)."""
    schema = detect_schema(doc)
    parser, _ = _PARSERS[schema]
    return schema, parser(doc)


def document_for(schema: str, obj: Any) -> dict:
    _, serializer = _PARSERS[schema]
    return serializer(obj)
