"""On-disk certificate cache: one JSON certificate per (p, candidate model, version)."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import asdict, replace
from pathlib import Path

from .certify import VERSION, Certificate
from .pencil import Pencil, Provenance


def cache_key(p: int, provenance: Provenance, a4, a6) -> str:
    payload = json.dumps([VERSION, p, asdict(provenance), list(a4), list(a6)], sort_keys=True)
    return f"p{p}_{hashlib.sha256(payload.encode()).hexdigest()[:24]}"


class CertificateCache:
    """Directory of certificates; safe to share between processes (writes are atomic renames)."""

    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def path_for(self, P: Pencil) -> Path:
        return self.directory / f"{cache_key(P.p, P.provenance, P.a4, P.a6)}.json"

    def get(self, P: Pencil) -> Certificate | None:
        try:
            data = json.loads(self.path_for(P).read_text(encoding="utf-8"))
        except (FileNotFoundError, json.JSONDecodeError):
            return None
        cert = Certificate.from_dict(data)
        # the stored file does not carry the provenance kind; restore it from the request
        return replace(cert, provenance=P.provenance)

    def put(self, cert: Certificate) -> Path:
        path = self.directory / f"{cache_key(cert.p, cert.provenance, cert.a4, cert.a6)}.json"
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(cert.to_dict(), fh, indent=2)
        os.replace(tmp, path)
        return path
