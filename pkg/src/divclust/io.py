"""Instance (de)serialisation: JSON documents and CSV point files.

JSON schema (one object)::

    {
      "k": 2,
      "objective": "median",            # median | means | supplier
      "distances": [[...], ...],        # or "points": [[x1, ..., xd], ...]
      "clients": [0, 1, 2, 3, 4],       # optional, default: every point
      "facilities": [0, 1, 2, 3, 4],    # optional, default: every point
      "groups": [[0, 1], [3, 4]],
      "requirements": [1, 1],
      "validate": true                  # optional metric validation switch
    }

CSV points: header ``id,x1,...,xd,is_client,is_facility,groups`` where
``groups`` is a ``;``-separated list of group indices (may be empty).
Requirements, k and the objective come from the caller.  Coordinates give
Euclidean distances; the means objective squares them inside ``cost``.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .errors import DivClustError, MetricViolation, ParseError, SchemaError
from .instance import DiversityInstance
from .metric import DistanceMatrix

REQUIRED_JSON = ("k", "groups", "requirements")


def instance_from_dict(doc, objective=None):
    if not isinstance(doc, dict):
        raise SchemaError("instance document must be a JSON object")
    missing = [key for key in REQUIRED_JSON if key not in doc]
    if missing:
        raise SchemaError(f"missing field(s): {', '.join(missing)}", missing[0])
    if ("distances" in doc) == ("points" in doc):
        raise SchemaError("exactly one of 'distances' or 'points' is required", "distances")
    validate = doc.get("validate")
    try:
        if "distances" in doc:
            d = np.asarray(doc["distances"], dtype=float)
            metric = DistanceMatrix(d, doc.get("clients"), doc.get("facilities"), validate=validate)
        else:
            metric = DistanceMatrix.from_points(
                doc["points"], doc.get("clients"), doc.get("facilities"), validate=bool(validate)
            )
    except MetricViolation:
        raise
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"bad distance data: {exc}", "distances") from None
    except DivClustError as exc:
        raise SchemaError(str(exc), "clients/facilities") from None
    return DiversityInstance(
        metric,
        tuple(doc["groups"]),
        tuple(doc["requirements"]),
        doc["k"],
        objective or doc.get("objective", "median"),
    )


def instance_to_dict(inst, validate=None):
    doc = {
        "k": inst.k,
        "objective": inst.objective,
        "distances": inst.metric.entries.tolist(),
        "clients": inst.metric.client_ids.tolist(),
        "facilities": inst.metric.facility_ids.tolist(),
        "groups": [sorted(g) for g in inst.groups],
        "requirements": list(inst.requirements),
    }
    if validate is not None:
        doc["validate"] = validate
    return doc


def dumps_instance(inst, validate=None):
    return json.dumps(instance_to_dict(inst, validate), sort_keys=True)


def save_instance(inst, path, validate=None):
    Path(path).write_text(dumps_instance(inst, validate) + "\n")


def _read_csv_points(path, k, requirements, objective):
    rows = []
    try:
        with open(path, newline="") as fh:
            reader = csv.DictReader(fh)
            header = reader.fieldnames or []
            coords = [h for h in header if h.startswith("x")]
            for col in ("id", "is_client", "is_facility"):
                if col not in header:
                    raise SchemaError(f"missing column {col!r}", col)
            if not coords:
                raise SchemaError("no coordinate columns (x1, x2, ...)", "x1")
            for row in reader:
                rows.append(row)
    except csv.Error as exc:
        raise ParseError(str(exc)) from None
    ids = [row["id"] for row in rows]
    if len(set(ids)) != len(ids):
        dup = next(i for i in ids if ids.count(i) > 1)
        raise SchemaError(f"duplicate point id {dup!r}", "id")
    try:
        points = np.array([[float(row[c]) for c in coords] for row in rows])
        is_client = [bool(int(row["is_client"])) for row in rows]
        is_facility = [bool(int(row["is_facility"])) for row in rows]
        tags = [
            [int(x) for x in (row.get("groups") or "").split(";") if x.strip()] for row in rows
        ]
    except ValueError as exc:
        raise ParseError(f"bad CSV value: {exc}") from None
    t = len(requirements) if requirements is not None else 1 + max((max(g) for g in tags if g), default=0)
    groups = [[i for i, g in enumerate(tags) if j in g] for j in range(t)]
    metric = DistanceMatrix.from_points(
        points,
        [i for i, c in enumerate(is_client) if c],
        [i for i, f in enumerate(is_facility) if f],
    )
    if k is None or requirements is None:
        raise SchemaError("csv-points instances need k and requirements from the caller", "k")
    return DiversityInstance(metric, tuple(groups), tuple(requirements), k, objective or "median")


def load_instance(path, format="json", *, objective=None, k=None, requirements=None):
    """Read a DiversityInstance from ``path`` (``format`` is ``json`` or ``csv-points``)."""
    if format == "json":
        try:
            doc = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from None
        return instance_from_dict(doc, objective)
    if format == "csv-points":
        return _read_csv_points(path, k, requirements, objective)
    raise ParseError(f"unknown format {format!r}")
