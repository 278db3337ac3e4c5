"""Versioned workspace files: matrices, pairs, keys and reports.

All files are JSON text with a ``kind`` and ``version`` field.  Writers
are deterministic (sorted keys, fixed separators) and atomic (temp file
in the target directory, then rename), so identical inputs always produce
byte-identical files.  Loaders refuse unknown kinds and versions.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from .disguise import DisguiseKey
from .errors import FileFormatError, KeyFileMismatch
from .euclid import CoprimePair, QuotientSequence, quotient_sequence
from .hiding import HiddenPair
from .matrix import ExactMatrix

__all__ = [
    "FORMAT_VERSION",
    "WORKSPACE_ENV",
    "resolve_path",
    "atomic_write_text",
    "save_matrix",
    "load_matrix",
    "save_hidden_pair",
    "load_hidden_pair",
    "save_key",
    "load_key",
    "save_disguise_key",
    "load_disguise_key",
    "save_report",
]

FORMAT_VERSION = 1
WORKSPACE_ENV = "COPRIMAT_WORKSPACE"


def resolve_path(path: str | Path) -> Path:
    """Resolve relative paths under the workspace directory, if one is set."""
    p = Path(path)
    if p.is_absolute():
        return p
    base = os.environ.get(WORKSPACE_ENV)
    return Path(base) / p if base else p


def atomic_write_text(path: str | Path, text: str) -> Path:
    """Write-temp-then-rename so readers never observe partial files."""
    target = resolve_path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=target.parent, prefix=target.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp_name, target)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    return target


def _dump(payload: dict) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _load(path: str | Path, expected_kind: str) -> dict:
    target = resolve_path(path)
    try:
        payload = json.loads(target.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise FileFormatError(f"cannot read {target}: {exc}") from exc
    if not isinstance(payload, dict):
        raise FileFormatError(f"{target}: expected a JSON object")
    if payload.get("version") != FORMAT_VERSION:
        raise FileFormatError(
            f"{target}: unsupported version {payload.get('version')!r}"
        )
    if payload.get("kind") != expected_kind:
        raise FileFormatError(
            f"{target}: expected kind {expected_kind!r}, got {payload.get('kind')!r}"
        )
    return payload


def _matrix_body(m: ExactMatrix) -> dict:
    return {"dim": m.dim, "rows": m.rows_as_strings()}


def _matrix_from_body(body: dict, where: str) -> ExactMatrix:
    try:
        dim = body["dim"]
        rows = body["rows"]
        m = ExactMatrix(rows)
    except Exception as exc:
        raise FileFormatError(f"{where}: bad matrix body: {exc}") from exc
    if m.dim != dim:
        raise FileFormatError(f"{where}: dim field {dim} does not match rows")
    return m


def save_matrix(path: str | Path, m: ExactMatrix) -> Path:
    payload = {"kind": "matrix", "version": FORMAT_VERSION, **_matrix_body(m)}
    return atomic_write_text(path, _dump(payload))


def load_matrix(path: str | Path) -> ExactMatrix:
    payload = _load(path, "matrix")
    return _matrix_from_body(payload, str(path))


def save_hidden_pair(path: str | Path, hp: HiddenPair) -> Path:
    payload = {
        "kind": "hidden-pair",
        "version": FORMAT_VERSION,
        "c": _matrix_body(hp.c),
        "d": _matrix_body(hp.d),
    }
    return atomic_write_text(path, _dump(payload))


def load_hidden_pair(path: str | Path) -> HiddenPair:
    payload = _load(path, "hidden-pair")
    return HiddenPair(
        _matrix_from_body(payload["c"], str(path)),
        _matrix_from_body(payload["d"], str(path)),
    )


def save_key(path: str | Path, pair: CoprimePair, quotients: QuotientSequence | None = None) -> Path:
    if quotients is None:
        quotients = quotient_sequence(pair)
    payload = {
        "kind": "key",
        "version": FORMAT_VERSION,
        "k1": str(pair.k1),
        "k2": str(pair.k2),
        "quotients": list(quotients),
    }
    return atomic_write_text(path, _dump(payload))


def load_key(path: str | Path) -> CoprimePair:
    payload = _load(path, "key")
    try:
        pair = CoprimePair(int(payload["k1"]), int(payload["k2"]))
    except KeyError as exc:
        raise FileFormatError(f"{path}: missing field {exc}") from exc
    quotients = payload.get("quotients")
    if quotients is not None:
        actual = list(quotient_sequence(pair))
        if list(quotients) != actual:
            raise KeyFileMismatch(
                f"{path}: quotients {quotients} disagree with pair "
                f"({pair.k1}, {pair.k2}) whose quotients are {actual}"
            )
    return pair


def save_disguise_key(path: str | Path, key: DisguiseKey) -> Path:
    payload = {
        "kind": "disguise-key",
        "version": FORMAT_VERSION,
        "k1": str(key.k1),
        "k2": str(key.k2),
        "m": str(key.m),
        "l": str(key.l),
        "catalog_c": str(key.catalog_c),
        "catalog_d": str(key.catalog_d),
    }
    return atomic_write_text(path, _dump(payload))


def load_disguise_key(path: str | Path) -> DisguiseKey:
    payload = _load(path, "disguise-key")
    try:
        return DisguiseKey(
            k1=int(payload["k1"]),
            k2=int(payload["k2"]),
            m=int(payload["m"]),
            l=int(payload["l"]),
            catalog_c=int(payload["catalog_c"]),
            catalog_d=int(payload["catalog_d"]),
        )
    except KeyError as exc:
        raise FileFormatError(f"{path}: missing field {exc}") from exc


def save_report(path: str | Path, body: dict) -> Path:
    payload = {"kind": "report", "version": FORMAT_VERSION, **body}
    return atomic_write_text(path, _dump(payload))
