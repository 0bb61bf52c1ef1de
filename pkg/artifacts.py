"""
JSON artifact files for arrangements, codes, resolving sets and search templates
"""

import json
import logging
import os

import numpy as np

from higgledy_core import verify_strong_blocking
from models.arrangement import Arrangement, Certificate
from models.galois_field import field_from_dict
from models.linear_code import LinearCode
from models.projective_space import ProjSpace, Subspace
from resolving import load_vertices
from search_engine import FixedElements, SearchTemplate
from utils.constants import SCHEMA_VERSION
from utils.exceptions import ArtifactError, HPForgeError

logger = logging.getLogger(__name__)


def _default(value):
    """Encode numpy scalars and arrays left in reports"""
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    return str(value)


def dumps(data):
    return json.dumps(data, indent=4, ensure_ascii=False, default=_default)


def save_json(data, path):
    """Write one artifact; returns False if the file could not be written"""
    try:
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(data, f, indent=4, ensure_ascii=False, default=_default)
        return True
    except OSError as e:
        logger.error("Error saving %s: %s", path, e)
        return False


def load_json(path):
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except FileNotFoundError as e:
        raise ArtifactError(f"no such file: {path}") from e
    except json.JSONDecodeError as e:
        raise ArtifactError(f"{path} is not valid JSON: {e}") from e


def _check_format(data, what):
    if not isinstance(data, dict):
        raise ArtifactError(f"{what} file must hold a JSON object")
    if data.get("format") != SCHEMA_VERSION:
        raise ArtifactError(f"unsupported {what} format {data.get('format')!r}, expected {SCHEMA_VERSION}")


# Arrangements

def arrangement_to_dict(arr):
    data = {
        "format": SCHEMA_VERSION,
        "field": arr.space.field.to_dict(),
        "N": arr.N,
        "k": arr.k,
        "elements": [e.wire() for e in arr.elements],
        "labels": list(arr.labels),
        "provenance": arr.provenance,
    }
    if arr.certificate is not None:
        data["certificate"] = arr.certificate.to_dict()
    return data


def certificate_holds(arr, workers=None):
    """Witness check for NotHigPig; a full strong scan for HigPig"""
    certificate = arr.certificate
    if certificate.is_higgledy_piggledy:
        return certificate.witness is None and verify_strong_blocking(arr, workers).is_higgledy_piggledy
    return certificate.reverify(arr)


def arrangement_from_dict(data, check=True):
    """Rebuild an arrangement; a stored certificate must re-verify when check is set"""
    _check_format(data, "arrangement")
    try:
        space = ProjSpace(int(data["N"]), field_from_dict(data["field"]))
        elements = [Subspace.from_rows(space, rows) for rows in data["elements"]]
        arr = Arrangement(space, int(data["k"]), elements,
                          labels=data.get("labels", []), provenance=data.get("provenance", {}))
    except KeyError as e:
        raise ArtifactError(f"arrangement file misses {e}") from e
    except (TypeError, ValueError) as e:
        raise ArtifactError(f"malformed arrangement: {e}") from e
    except HPForgeError as e:
        if isinstance(e, ArtifactError):
            raise
        raise ArtifactError(f"invalid arrangement: {e}") from e
    if data.get("certificate"):
        arr.certificate = Certificate.from_dict(data["certificate"], space)
        if check and not certificate_holds(arr):
            raise ArtifactError(f"stored {arr.certificate.verdict} certificate does not re-verify")
    return arr


def save_arrangement(arr, path):
    return save_json(arrangement_to_dict(arr), path)


def load_arrangement(path, check=True):
    return arrangement_from_dict(load_json(path), check)


# Codes

def save_code(code, path):
    return save_json(code.to_dict(), path)


def load_code(path):
    data = load_json(path)
    _check_format(data, "code")
    try:
        return LinearCode.from_dict(data)
    except HPForgeError as e:
        if isinstance(e, ArtifactError):
            raise
        raise ArtifactError(f"invalid code: {e}") from e


# Resolving sets

def save_resolving(result, path):
    return save_json(result.to_dict(), path)


def load_resolving(path):
    """Returns (space, vertices, augmentations)"""
    data = load_json(path)
    _check_format(data, "resolving set")
    try:
        space = ProjSpace(int(data["N"]), field_from_dict(data["field"]))
        return space, load_vertices(data["vertices"], space), int(data.get("augmentations", 0))
    except KeyError as e:
        raise ArtifactError(f"resolving file misses {e}") from e


# Search templates

def save_template(template, path):
    return save_json(template.to_dict(), path)


def load_template(path):
    """Template file; a top-level "elements" list becomes a FixedElements constraint"""
    data = load_json(path)
    _check_format(data, "template")
    try:
        template = SearchTemplate.from_dict(data)
        if data.get("elements"):
            fixed = FixedElements(tuple(Subspace.from_rows(template.space, rows) for rows in data["elements"]))
            template.constraints = (fixed,) + template.constraints
            template.validate()
        return template
    except HPForgeError as e:
        if isinstance(e, ArtifactError):
            raise
        raise ArtifactError(f"invalid template: {e}") from e
