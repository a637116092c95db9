"""Append-only JSON-lines cache of factorizations and prime splittings.

The cache is advisory: every entry is checked on load, and lines that fail
to parse, come from another tool version, or fail the check are ignored.
Its location comes from ``BRGENUS_CACHE``; without it nothing is cached.
"""

from __future__ import annotations

import json
import os
import threading
from pathlib import Path

from . import __version__
from .arith import Factorization, is_prime, set_factor_store
from .numfield import NumberField, set_split_store

ENV_VAR = "BRGENUS_CACHE"


def _field_key(nf: NumberField) -> str:
    return json.dumps(nf.to_dict(), sort_keys=True)


class Cache:
    def __init__(self, path):
        self.path = Path(path)
        self.factors: dict[int, Factorization] = {}
        self.splits: dict[tuple[str, int], tuple] = {}
        self.rejected = 0
        self._lock = threading.Lock()
        self._load()

    def _load(self):
        if not self.path.exists():
            return
        with open(self.path, encoding="utf-8", errors="replace") as fh:
            for line in fh:
                try:
                    entry = json.loads(line)
                    if entry.get("version") != __version__:
                        continue
                    if entry["kind"] == "factor":
                        self._accept_factor(entry)
                    elif entry["kind"] == "split":
                        self._accept_split(entry)
                    else:
                        self.rejected += 1
                except (ValueError, KeyError, TypeError):
                    self.rejected += 1

    def _accept_factor(self, entry):
        n = int(entry["n"])
        fact = Factorization(1, tuple((int(p), int(e)) for p, e in entry["factors"]))
        if fact.value != n or not all(is_prime(p) for p in fact.primes()):
            raise ValueError("inconsistent factorization")
        self.factors[n] = fact

    def _accept_split(self, entry):
        nf = NumberField.from_dict(entry["field"])
        p = int(entry["p"])
        pieces = tuple(tuple(int(v) for v in row) for row in entry["pieces"])
        if sum(e * f * g for e, f, g in pieces) != nf.degree:
            raise ValueError("splitting data does not add up to the degree")
        self.splits[(_field_key(nf), p)] = pieces

    def _append(self, entry):
        entry["version"] = __version__
        line = json.dumps(entry, sort_keys=True) + "\n"
        with self._lock:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(line)

    def lookup(self, n: int):
        return self.factors.get(n)

    def record(self, n: int, fact: Factorization):
        if n in self.factors:
            return
        self.factors[n] = fact
        self._append({"kind": "factor", "n": str(n), "factors": [[str(p), e] for p, e in fact.factors]})

    def lookup_split(self, nf: NumberField, p: int):
        return self.splits.get((_field_key(nf), p))

    def record_split(self, nf: NumberField, p: int, pieces):
        key = (_field_key(nf), p)
        if key in self.splits:
            return
        self.splits[key] = tuple(pieces)
        self._append({"kind": "split", "field": nf.to_dict(), "p": p, "pieces": [list(r) for r in pieces]})


def activate(path=None) -> Cache | None:
    """Open the cache (argument, else the environment variable) and install it."""
    path = path or os.environ.get(ENV_VAR)
    if not path:
        return None
    cache = Cache(path)
    set_factor_store(cache)
    set_split_store(cache)
    return cache


def deactivate():
    set_factor_store(None)
    set_split_store(None)
