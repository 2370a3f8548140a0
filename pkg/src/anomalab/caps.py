"""Resource caps, overridable through the ANOMALAB_CAPS environment variable.

ANOMALAB_CAPS holds a JSON object merged over the defaults, e.g.
``ANOMALAB_CAPS='{"cohomology_cells": 500000}'``.
"""

import json
import os

from .errors import CapError, DomainError

DEFAULT_CAPS = {
    # group_from_generators closure size
    "closure_order": 10_000,
    # full associativity validation is exhaustive up to this order
    "assoc_exhaustive": 256,
    # max cochain degree for cohomology_group
    "cohomology_degree": 4,
    # (|G|-1)**(k+1) bound for the bar differential out of degree k
    "cohomology_cells": 200_000,
    # exhaustive double-algebra associativity up to this |G|; sampled above
    "double_exhaustive": 24,
    # phi(N) bound for cyclotomic levels
    "phi_level": 64,
    # largest coefficient modulus accepted by the Z/m linear algebra
    "modulus": 4096,
}


def get_caps() -> dict:
    caps = dict(DEFAULT_CAPS)
    raw = os.environ.get("ANOMALAB_CAPS")
    if raw:
        try:
            override = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise DomainError(f"ANOMALAB_CAPS is not valid JSON: {exc}") from exc
        if not isinstance(override, dict):
            raise DomainError("ANOMALAB_CAPS must be a JSON object")
        caps.update(override)
    return caps


def check_cap(name: str, value) -> None:
    limit = get_caps()[name]
    if value > limit:
        raise CapError(name, value, limit)
