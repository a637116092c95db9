"""JSON form of bound reports.

Integers are written as decimal strings, and every bound carries its
factorization alongside, so reports survive any JSON reader unchanged.
Apart from the ``timing`` block, the output is a deterministic function of
the configuration and the tool version.
"""

from __future__ import annotations

import json
import time
from datetime import datetime, timezone
from importlib import resources

import jsonschema

from . import __version__
from .arith import Factorization
from .bounds import BoundReport, Claim, GenusBound
from .curves import TorsionFieldData
from .numfield import PlaceSet

FORMAT = "brgenus-report/1"


def load_schema(name: str) -> dict:
    text = resources.files("brgenus").joinpath("schemas", name).read_text(encoding="utf-8")
    return json.loads(text)


def fact_to_json(f: Factorization) -> dict:
    return {
        "value": str(f.value),
        "sign": f.sign,
        "factors": [[str(p), e] for p, e in f.factors],
        "text": str(f),
    }


def fact_from_json(data: dict) -> Factorization:
    f = Factorization(int(data["sign"]), tuple((int(p), int(e)) for p, e in data["factors"]))
    if str(f.value) != data["value"]:
        raise ValueError(f"factorization sidecar does not match value {data['value']}")
    return f


def _genus_to_json(g: GenusBound) -> dict:
    return {
        "phi": str(g.phi),
        "brauer": fact_to_json(g.brauer),
        "r": None if g.r is None else str(g.r),
        "r_provenance": g.r_provenance,
        "value": None if g.value is None else fact_to_json(g.value),
        "text": str(g),
    }


def _genus_from_json(data: dict) -> GenusBound:
    r = None if data["r"] is None else int(data["r"])
    return GenusBound(int(data["phi"]), fact_from_json(data["brauer"]), r, data["r_provenance"])


def _places_to_json(S: PlaceSet) -> dict:
    data = S.to_dict()
    data["finite"] = [[str(p), e, f, g] for p, e, f, g in data["finite"]]
    return data


def report_to_json(rep: BoundReport) -> dict:
    return {
        "inputs": rep.inputs,
        "route": rep.route,
        "S": _places_to_json(rep.S),
        "S_overridden": rep.S_overridden,
        "torsion": None if rep.torsion is None else rep.torsion.to_dict(),
        "S_ell": None if rep.S_ell is None else _places_to_json(rep.S_ell),
        "a": str(rep.a),
        "b": str(rep.b),
        "c": str(rep.c),
        "g": str(rep.g),
        "w": str(rep.w),
        "h_k": str(rep.h_k),
        "h_ell": str(rep.h_ell),
        "provenance": rep.provenance,
        "values": {k: fact_to_json(v) for k, v in rep.values.items()},
        "claims": [
            {
                "divides": [c.lhs, c.rhs],
                "lhs": fact_to_json(c.lhs_value),
                "rhs": fact_to_json(c.rhs_value),
                "holds": c.holds(),
            }
            for c in rep.claims
        ],
        "genus": None if rep.genus is None else _genus_to_json(rep.genus),
        "notes": rep.notes,
    }


def report_from_json(data: dict) -> BoundReport:
    rep = BoundReport(
        inputs=data["inputs"],
        route=data["route"],
        S=PlaceSet.from_dict(data["S"]),
        S_overridden=data["S_overridden"],
        torsion=None if data["torsion"] is None else TorsionFieldData.from_dict(data["torsion"]),
        S_ell=None if data["S_ell"] is None else PlaceSet.from_dict(data["S_ell"]),
        a=int(data["a"]),
        b=int(data["b"]),
        c=int(data["c"]),
        g=int(data["g"]),
        w=int(data["w"]),
        h_k=int(data["h_k"]),
        h_ell=int(data["h_ell"]),
        provenance=dict(data["provenance"]),
        values={k: fact_from_json(v) for k, v in data["values"].items()},
        claims=[
            Claim(c["divides"][0], c["divides"][1], fact_from_json(c["lhs"]), fact_from_json(c["rhs"]))
            for c in data["claims"]
        ],
        genus=None if data["genus"] is None else _genus_from_json(data["genus"]),
        notes=list(data["notes"]),
    )
    rep.audit()
    return rep


def envelope(rep: BoundReport, seed: int, elapsed: float) -> dict:
    return {
        "format": FORMAT,
        "tool": "brgenus",
        "version": __version__,
        "seed": seed,
        "report": report_to_json(rep),
        "timing": {
            "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
            "elapsed_seconds": round(elapsed, 6),
        },
    }


def dumps(doc: dict) -> str:
    jsonschema.validate(doc, load_schema("report.schema.json"))
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def loads(text: str) -> tuple[BoundReport, dict]:
    doc = json.loads(text)
    jsonschema.validate(doc, load_schema("report.schema.json"))
    return report_from_json(doc["report"]), doc


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
