"""Isometric embeddings of simplices into regular polygonal tori.

Polygon orders and vertex indices are Python ints of arbitrary size.
Certificates are plain dicts with the same layout as the CLI's JSON files.
"""

import json

import numpy as np

from ._core import (
    DEFAULT_RANK_TOL,
    DEFAULT_TOLERANCE,
    InputError,
    InvalidCertificate,
    NotAlmostRegular,
    NotEuclidean,
    NotSimplex,
    TorusEmbedError,
    TrivialInput,
    VerificationFailed,
    __version__,
    centered_gram,
    check_almost_regular,
    chord,
    embed_regular_simplex,
    generate,
    is_simplex,
    materialize,
    one_dim_params,
    product_embed,
    realize,
    realize_almost_regular,
    regular_simplex,
    schoenberg_decompose,
    squared_distances,
    torus_distance,
)
from . import _core


def embed(points=None, squared_distances=None, tolerance=DEFAULT_TOLERANCE, uniform_m=False,
          alpha_fraction=1.0):
    """Embed a simplex given by points or by its squared distance matrix."""
    if (points is None) == (squared_distances is None):
        raise InputError("pass exactly one of points or squared_distances")
    squared = points is None
    data = np.asarray(squared_distances if squared else points, dtype=float)
    if data.ndim != 2:
        raise InputError("expected a two-dimensional array")
    text = _core._embed(data, squared, tolerance, uniform_m, alpha_fraction)
    return json.loads(text)


def _as_text(certificate):
    if isinstance(certificate, str):
        return certificate
    return json.dumps(certificate)


def verify(certificate, tolerance=DEFAULT_TOLERANCE):
    """Check a certificate from its torus and assignment alone."""
    return json.loads(_core._verify(_as_text(certificate), tolerance))


def inspect(certificate):
    return json.loads(_core._inspect(_as_text(certificate)))


def dumps(certificate):
    """Canonical text form, identical to what the CLI writes."""
    return _core._canonical(_as_text(certificate))


def load(path):
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def save(certificate, path):
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(certificate))
