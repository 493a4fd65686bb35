"""Certificate reports and their JSON encoding."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

SCHEMA_VERSION = 1


def rational_json(x: Fraction | int) -> dict:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def jsonable(obj: Any) -> Any:
    """Recursively convert report payloads to JSON-ready values.

    Fractions become ``{"num", "den"}`` decimal strings; bare ints stay
    ints; objects with a ``to_json`` method are delegated to.
    """
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int)):
        return obj
    if isinstance(obj, Fraction):
        return rational_json(obj)
    if isinstance(obj, float):
        return obj
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [jsonable(v) for v in items]
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(jsonable(obj), indent=2, sort_keys=True)


@dataclass
class CertificateReport:
    """Outcome of checking one statement on one instance.

    ``verdicts`` carries per-edge or per-subset entries; ``witness`` is set
    whenever ``passed`` is False and holds enough data to re-run the check.
    """

    name: str
    passed: bool
    verdicts: list[dict] = field(default_factory=list)
    values: dict = field(default_factory=dict)
    witness: dict | None = None
    warnings: list[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.passed and self.witness is None:
            raise ValueError(f"{self.name}: a failing report must carry a witness")

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "verdicts": jsonable(self.verdicts),
            "values": jsonable(self.values),
            "witness": jsonable(self.witness),
            "warnings": list(self.warnings),
        }
