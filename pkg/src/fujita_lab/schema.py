"""JSON surface descriptions: ``{"family": ..., "params": {...}}`` or ``{"batch": [...]}``.

Validation is done with :mod:`jsonschema`; every failure is turned into a
:class:`SchemaError` whose ``field`` is the dotted path of the offending value.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Mapping

import jsonschema

from .bundles import SlopeProfile, fujita_number_PE
from .catalog import (
    AbelianData,
    BiellipticType,
    EllFibData,
    EnriquesData,
    Family,
    GenusOneFibration,
    K3Data,
    SurfaceModel,
    make_abelian,
    make_bielliptic,
    make_custom,
    make_double_cover_ppav,
    make_elliptic_kod1,
    make_enriques,
    make_godeaux,
    make_hirzebruch,
    make_hypersurface,
    make_isotrivial_example,
    make_k3,
    make_pencil_blowup,
    make_product_of_curves,
    make_projective_plane,
    make_ruled_surface,
    make_sym_square,
)
from .engine import classify
from .errors import DomainError, SchemaError
from .lattice import IntersectionLattice
from .verdict import FujitaVerdict

_RATIONAL = {"oneOf": [
    {"type": "integer"},
    {"type": "string", "pattern": r"^\s*-?\d+\s*(/\s*\d+\s*)?$"},
]}
_NAT = {"type": "integer", "minimum": 0}
_POS = {"type": "integer", "minimum": 1}


def _obj(properties: dict | None = None, required: tuple[str, ...] = ()) -> dict:
    return {
        "type": "object",
        "properties": properties or {},
        "required": list(required),
        "additionalProperties": False,
    }


_FIBRATION = {"oneOf": [
    {"type": "string", "pattern": r"\|"},
    _obj({
        "singular_nonmultiple": {"type": "array", "items": {"type": "string"}},
        "half_fibers": {"type": "array", "items": {"type": "string"}},
        "has_allcomponent_bisection": {"type": "boolean"},
    }),
]}

PARAM_SCHEMAS: dict[Family, dict] = {
    Family.PROJECTIVE_PLANE: _obj(),
    Family.HIRZEBRUCH: _obj({"n": _NAT}, ("n",)),
    Family.PROJ_BUNDLE_CURVE: _obj({
        "rank": _POS,
        "degree": {"type": "integer"},
        "hn_slopes": {"type": "array", "minItems": 1, "items": {
            "type": "array", "prefixItems": [_RATIONAL, _POS], "minItems": 2, "maxItems": 2,
        }},
        "stable": {"type": "boolean"},
        "sym_powers_stable": {"type": "boolean"},
        "genus": _NAT,
    }, ("rank", "degree")),
    Family.ABELIAN: _obj({
        "min_ample_selfint": _POS,
        "product_of_elliptic": {"type": "boolean"},
        "isogeny_from_ppav_order": _POS,
    }),
    Family.BIELLIPTIC: _obj({"group": {"type": "string"}}, ("group",)),
    Family.K3: _obj({"has_special_fibration": {"type": "boolean"}}, ("has_special_fibration",)),
    Family.ENRIQUES: _obj({
        "fibrations": {"type": "array", "minItems": 1, "items": _FIBRATION},
        "unnodal": {"type": "boolean"},
    }),
    Family.ELLIPTIC_KOD1: _obj({
        "has_section": {"type": "boolean"},
        "all_fibers_irreducible_reduced": {"type": "boolean"},
        "chi_O_even": {"type": "boolean"},
        "multiple_fibers": {"type": "array", "items": {"type": "integer", "minimum": 2}},
        "base_genus": _NAT,
        "chi_O": _NAT,
    }, ("has_section", "all_fibers_irreducible_reduced", "chi_O_even")),
    Family.ISOTRIVIAL_EXAMPLE: _obj(),
    Family.PRODUCT_OF_CURVES: _obj({"g1": _NAT, "g2": _NAT}, ("g1", "g2")),
    Family.GODEAUX: _obj(),
    Family.HYPERSURFACE: _obj({"d": {"type": "integer", "minimum": 5}, "very_general": {"type": "boolean"}},
                              ("d",)),
    Family.DOUBLE_COVER_PPAV: _obj({"assume_picard_number_one": {"type": "boolean"}}),
    Family.SYM_SQUARE: _obj({"g": _NAT}, ("g",)),
    Family.PENCIL_BLOWUP: _obj({"d": {"type": "integer", "minimum": 3}}, ("d",)),
    Family.LATTICE: _obj({
        "basis": {"type": "array", "minItems": 1, "items": {"type": "string"}},
        "gram": {"type": "array", "minItems": 1, "items": {"type": "array", "items": {"type": "integer"}}},
        "canonical": {"type": "array", "items": _RATIONAL},
        "chi_O": {"type": "integer"},
        "kodaira_dimension": {"type": "integer", "minimum": -1, "maximum": 2},
        "num_complete": {"type": "boolean"},
    }, ("basis", "gram", "canonical", "chi_O")),
}

SUPPORTED_FAMILIES = tuple(f.value for f in Family)

_ENTRY = _obj({"family": {"type": "string"}, "params": {"type": "object"}}, ("family",))


def _path(prefix: str, parts) -> str:
    out = prefix
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else (f".{p}" if out else str(p))
    return out


def _raise_from(err: jsonschema.ValidationError, prefix: str) -> None:
    where = _path(prefix, err.absolute_path)
    if err.validator == "required":
        missing = [k for k in err.validator_value if k not in err.instance]
        name = _path(where, missing[:1])
        raise SchemaError(f"{name}: required field is missing", field=name)
    if err.validator == "additionalProperties":
        allowed = set(err.schema.get("properties", {}))
        extra = sorted(k for k in err.instance if k not in allowed)
        name = _path(where, extra[:1])
        raise SchemaError(f"{name}: unexpected field; allowed: {', '.join(sorted(allowed)) or 'none'}",
                          field=name)
    raise SchemaError(f"{where or '<root>'}: {err.message}", field=where or None)


def _validate(instance: Any, schema: dict, prefix: str) -> None:
    validator = jsonschema.Draft202012Validator(schema)
    err = jsonschema.exceptions.best_match(validator.iter_errors(instance))
    if err is not None:
        _raise_from(err, prefix)


@dataclass(frozen=True)
class SurfaceDescription:
    """A validated description.  Projective bundles of rank other than 2 carry only a profile."""

    family: Family
    params: Mapping[str, Any]
    model: SurfaceModel | None = None
    profile: SlopeProfile | None = None
    where: str = field(default="", compare=False)

    def classify(self) -> FujitaVerdict:
        if self.model is not None:
            return classify(self.model)
        assert self.profile is not None
        return fujita_number_PE(self.profile)

    def to_dict(self) -> dict:
        return {"family": self.family.value, "params": dict(self.params)}


def _profile(params: Mapping[str, Any]) -> SlopeProfile:
    kw = {
        "sym_powers_stable": params.get("sym_powers_stable", False),
        "genus": params.get("genus", 2),
    }
    if "stable" in params:
        kw["stable"] = params["stable"]
    if "hn_slopes" in params:
        p = SlopeProfile.from_blocks([tuple(b) for b in params["hn_slopes"]], **kw)
        if p.rank != params["rank"] or p.degree != params["degree"]:
            raise DomainError(f"hn_slopes give rank {p.rank} and degree {p.degree}, "
                              f"not {params['rank']} and {params['degree']}")
        return p
    return SlopeProfile.semistable(params["rank"], params["degree"], **kw)


def _fibration(item: str | Mapping) -> GenusOneFibration:
    if isinstance(item, str):
        return EnriquesData.from_rows([item]).fibrations[0]
    return GenusOneFibration(tuple(item.get("singular_nonmultiple", ())), tuple(item.get("half_fibers", ())),
                             item.get("has_allcomponent_bisection"))


def _build(family: Family, p: Mapping[str, Any]) -> SurfaceModel | SlopeProfile:
    if family is Family.PROJECTIVE_PLANE:
        return make_projective_plane()
    if family is Family.HIRZEBRUCH:
        return make_hirzebruch(p["n"])
    if family is Family.PROJ_BUNDLE_CURVE:
        profile = _profile(p)
        return make_ruled_surface(profile) if profile.rank == 2 else profile
    if family is Family.ABELIAN:
        return make_abelian(AbelianData(p.get("min_ample_selfint"), p.get("product_of_elliptic", False),
                                        p.get("isogeny_from_ppav_order")))
    if family is Family.BIELLIPTIC:
        return make_bielliptic(BiellipticType.parse(p["group"]))
    if family is Family.K3:
        return make_k3(K3Data(p["has_special_fibration"]))
    if family is Family.ENRIQUES:
        if p.get("unnodal"):
            if "fibrations" in p:
                raise DomainError("give either unnodal or fibrations, not both")
            return make_enriques(EnriquesData.unnodal())
        if "fibrations" not in p:
            raise SchemaError("params.fibrations: required unless unnodal is true", field="params.fibrations")
        return make_enriques(EnriquesData(tuple(_fibration(f) for f in p["fibrations"])))
    if family is Family.ELLIPTIC_KOD1:
        return make_elliptic_kod1(EllFibData(
            p["has_section"], p["all_fibers_irreducible_reduced"], p["chi_O_even"],
            tuple(p.get("multiple_fibers", ())), p.get("base_genus", 0), p.get("chi_O"),
        ))
    if family is Family.ISOTRIVIAL_EXAMPLE:
        return make_isotrivial_example()
    if family is Family.PRODUCT_OF_CURVES:
        return make_product_of_curves(p["g1"], p["g2"])
    if family is Family.GODEAUX:
        return make_godeaux()
    if family is Family.HYPERSURFACE:
        return make_hypersurface(p["d"], p.get("very_general", True))
    if family is Family.DOUBLE_COVER_PPAV:
        return make_double_cover_ppav(p.get("assume_picard_number_one", True))
    if family is Family.SYM_SQUARE:
        return make_sym_square(p["g"])
    if family is Family.PENCIL_BLOWUP:
        return make_pencil_blowup(p["d"])
    if family is Family.LATTICE:
        lat = IntersectionLattice(p["basis"], p["gram"])
        if len(p["canonical"]) != lat.rank:
            raise SchemaError(f"params.canonical: expected {lat.rank} coordinates", field="params.canonical")
        return make_custom(lat, p["canonical"], p["chi_O"], p.get("kodaira_dimension"),
                           p.get("num_complete", True))
    raise AssertionError(family)


def parse_entry(data: Any, where: str = "") -> SurfaceDescription:
    """Validate and build one ``{"family", "params"}`` description."""
    _validate(data, _ENTRY, where)
    name = data["family"]
    try:
        family = Family(name)
    except ValueError:
        f = _path(where, ["family"])
        raise SchemaError(f"{f}: unknown family {name!r}; supported families: "
                          + ", ".join(SUPPORTED_FAMILIES), field=f) from None
    params = data.get("params", {})
    prefix = _path(where, ["params"])
    _validate(params, PARAM_SCHEMAS[family], prefix)
    try:
        built = _build(family, params)
    except SchemaError as e:
        if where and e.field:
            raise SchemaError(f"{where}.{e}", field=f"{where}.{e.field}") from None
        raise
    except (DomainError, KeyError) as e:
        raise SchemaError(f"{prefix}: {e}", field=prefix) from None
    if isinstance(built, SlopeProfile):
        return SurfaceDescription(family, params, profile=built, where=where)
    return SurfaceDescription(family, params, model=built, where=where)


def parse_document(data: Any) -> list[SurfaceDescription]:
    """A single description or a batch, always returned as a list."""
    if isinstance(data, dict) and "batch" in data:
        extra = sorted(set(data) - {"batch"})
        if extra:
            raise SchemaError(f"{extra[0]}: unexpected field next to batch", field=extra[0])
        if not isinstance(data["batch"], list) or not data["batch"]:
            raise SchemaError("batch: expected a nonempty array", field="batch")
        return [parse_entry(item, f"batch[{i}]") for i, item in enumerate(data["batch"])]
    return [parse_entry(data)]


def load_document(path: str) -> list[SurfaceDescription]:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e.strerror}", field=None) from None
    except json.JSONDecodeError as e:
        raise SchemaError(f"invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}", field=None) from None
    return parse_document(data)
