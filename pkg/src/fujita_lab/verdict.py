"""Verdicts: an interval for the convex Fujita number plus the reasons for it."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping

from .errors import InconsistentVerdictError
from .lattice import DivisorClass, encode_number

Witness = DivisorClass | tuple[DivisorClass, ...] | Mapping[str, Any] | None

UNKNOWN_PER_PAPER = "unknown-per-paper"


def _normalize(value: Any) -> Any:
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Fraction):
        return encode_number(value)
    if isinstance(value, DivisorClass):
        return value
    if isinstance(value, Mapping):
        return {str(k): _normalize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_normalize(v) for v in value]
    raise TypeError(f"cannot store {type(value).__name__} in a witness record")


def record(**fields: Any) -> dict:
    """A JSON-native witness record; rationals become ints or ``'p/q'`` strings."""
    return _normalize(fields)


def _encode_value(value: Any) -> Any:
    if isinstance(value, DivisorClass):
        return {"__class__": value.to_dict()}
    if isinstance(value, dict):
        return {k: _encode_value(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_encode_value(v) for v in value]
    return value


def _decode_value(value: Any) -> Any:
    if isinstance(value, dict):
        if set(value) == {"__class__"}:
            return DivisorClass.from_dict(value["__class__"])
        return {k: _decode_value(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_decode_value(v) for v in value]
    return value


def encode_witness(w: Witness) -> Any:
    if w is None:
        return None
    if isinstance(w, DivisorClass):
        return {"class": w.to_dict()}
    if isinstance(w, tuple):
        return {"classes": [c.to_dict() for c in w]}
    return {"record": _encode_value(dict(w))}


def decode_witness(data: Any) -> Witness:
    if data is None:
        return None
    if "class" in data:
        return DivisorClass.from_dict(data["class"])
    if "classes" in data:
        return tuple(DivisorClass.from_dict(c) for c in data["classes"])
    return _decode_value(data["record"])


@dataclass(frozen=True)
class TraceEntry:
    rule: str
    cite: str
    witness: Witness = None

    def __post_init__(self):
        w = self.witness
        if isinstance(w, list):
            w = tuple(w)
        if isinstance(w, Mapping):
            w = _normalize(w)
        object.__setattr__(self, "witness", w)

    def to_dict(self) -> dict:
        return {"rule": self.rule, "cite": self.cite, "witness": encode_witness(self.witness)}

    @classmethod
    def from_dict(cls, data: Mapping) -> "TraceEntry":
        return cls(data["rule"], data["cite"], decode_witness(data.get("witness")))


@dataclass(frozen=True)
class FujitaVerdict:
    """``lower ≤ conFN ≤ upper`` together with the trace that justifies it.

    ``dimension`` is 2 for surfaces; projective bundles ``ℙ(E)`` of higher
    rank report their own dimension, which raises the a-priori ceiling to
    ``dimension + 1``.
    """

    lower: int
    upper: int
    trace: tuple[TraceEntry, ...] = ()
    conditional_on: tuple[str, ...] = ()
    dimension: int = 2

    def __post_init__(self):
        object.__setattr__(self, "trace", tuple(self.trace))
        object.__setattr__(self, "conditional_on", tuple(self.conditional_on))
        if not (0 <= self.lower <= self.upper <= self.dimension + 1):
            raise InconsistentVerdictError(
                f"invalid interval [{self.lower}, {self.upper}] in dimension {self.dimension}"
            )

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def value(self) -> int | None:
        return self.lower if self.exact else None

    @property
    def rules(self) -> list[str]:
        return [t.rule for t in self.trace]

    def interval(self) -> tuple[int, int]:
        return self.lower, self.upper

    def with_entries(self, entries: Iterable[TraceEntry]) -> "FujitaVerdict":
        return FujitaVerdict(self.lower, self.upper, self.trace + tuple(entries),
                             self.conditional_on, self.dimension)

    def to_dict(self) -> dict:
        out = {
            "lower": self.lower,
            "upper": self.upper,
            "exact": self.exact,
            "trace": [t.to_dict() for t in self.trace],
            "conditional_on": list(self.conditional_on),
        }
        if self.dimension != 2:
            out["dimension"] = self.dimension
        return out

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, **kwargs)

    @classmethod
    def from_dict(cls, data: Mapping) -> "FujitaVerdict":
        v = cls(
            lower=data["lower"],
            upper=data["upper"],
            trace=tuple(TraceEntry.from_dict(t) for t in data.get("trace", [])),
            conditional_on=tuple(data.get("conditional_on", [])),
            dimension=data.get("dimension", 2),
        )
        if "exact" in data and data["exact"] != v.exact:
            raise InconsistentVerdictError("'exact' flag disagrees with the interval")
        return v

    @classmethod
    def from_json(cls, text: str) -> "FujitaVerdict":
        return cls.from_dict(json.loads(text))


@dataclass
class Interval:
    """Mutable accumulator used while rules fire; frozen into a verdict at the end."""

    lower: int = 0
    upper: int = 3
    trace: list[TraceEntry] = field(default_factory=list)
    conditional_on: list[str] = field(default_factory=list)

    def raise_lower(self, value: int, entry: TraceEntry) -> None:
        self.trace.append(entry)
        if value > self.lower:
            self.lower = value
        self._check(entry)

    def lower_upper(self, value: int, entry: TraceEntry) -> None:
        self.trace.append(entry)
        if value < self.upper:
            self.upper = value
        self._check(entry)

    def pin(self, value: int, entry: TraceEntry) -> None:
        self.trace.append(entry)
        self.lower = max(self.lower, value)
        self.upper = min(self.upper, value)
        self._check(entry)

    def note(self, entry: TraceEntry) -> None:
        self.trace.append(entry)

    def _check(self, entry: TraceEntry) -> None:
        if self.lower > self.upper:
            raise InconsistentVerdictError(
                f"rule {entry.rule!r} produced an empty interval [{self.lower}, {self.upper}]"
            )

    def freeze(self, dimension: int = 2) -> FujitaVerdict:
        return FujitaVerdict(self.lower, self.upper, tuple(self.trace),
                             tuple(dict.fromkeys(self.conditional_on)), dimension)
