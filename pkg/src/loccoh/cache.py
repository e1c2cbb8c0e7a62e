"""Persistent cache for reduced Groebner bases, keyed by content digest.

A hit requires an exact digest match, and the digest includes the engine
version tag, so results can never leak across engine revisions.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

ENGINE_VERSION = "loccoh-gb-1"


def default_cache_dir() -> Path:
    env = os.environ.get("LOCCOH_CACHE_DIR")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME", os.path.join(os.path.expanduser("~"), ".cache"))
    return Path(base) / "loccoh"


class GroebnerCache:
    def __init__(self, directory=None):
        self.directory = Path(directory) if directory else default_cache_dir()
        self.directory.mkdir(parents=True, exist_ok=True)
        self.hits = 0
        self.misses = 0

    def digest(self, ring, rank: int, gen_strs, degree_cap: int) -> str:
        payload = json.dumps(
            {
                "version": ENGINE_VERSION,
                "ring": ring.key(),
                "rank": rank,
                "gens": sorted(gen_strs),
                "cap": degree_cap,
            },
            sort_keys=True,
        )
        return hashlib.sha256(payload.encode()).hexdigest()

    def _path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def get(self, key: str):
        path = self._path(key)
        if not path.exists():
            self.misses += 1
            return None
        try:
            doc = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError):
            self.misses += 1
            return None
        if doc.get("version") != ENGINE_VERSION:
            self.misses += 1
            return None
        self.hits += 1
        out = []
        for vec in doc["basis"]:
            out.append({(comp, tuple(mono)): coeff for comp, mono, coeff in vec})
        return out

    def put(self, key: str, basis) -> None:
        doc = {
            "version": ENGINE_VERSION,
            "basis": [
                [[comp, list(mono), int(coeff)] for (comp, mono), coeff in sorted(vec.items())]
                for vec in basis
            ],
        }
        tmp = self._path(key).with_suffix(".tmp")
        tmp.write_text(json.dumps(doc))
        tmp.replace(self._path(key))
