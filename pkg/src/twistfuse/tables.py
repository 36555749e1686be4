"""
Versioned JSON fusion-table documents.

A document holds both canonical bases, the fundamental untwisted matrices
and the module matrices of the exterior powers (evaluation route), plus a
checksum of the basis lists. Writes go to a temp file in the target
directory and are moved into place with `os.replace`; output bytes depend
only on (N, level).
"""

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

from .characters import exterior_power
from .config import LevelContext, default_cache_dir
from .fusion import (
    basis_twisted,
    basis_untwisted,
    fundamental_matrix_untwisted,
    module_matrix_routeB,
)

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1


def basis_checksum(basis_untwisted_keys: list[str], basis_twisted_keys: list[str]) -> str:
    """sha256 over the two basis lists in canonical order."""
    payload = json.dumps([basis_untwisted_keys, basis_twisted_keys], separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def build_tables(ctx: LevelContext) -> dict:
    """Assemble the fusion-table document for one (N, level)."""
    untwisted = [f.key() for f in basis_untwisted(ctx)]
    twisted = [h.key() for h in basis_twisted(ctx)]
    fundamentals = range(1, ctx.rank)
    return {
        "format": FORMAT_VERSION,
        "N": ctx.n,
        "level": ctx.level,
        "basisUntwisted": untwisted,
        "basisTwisted": twisted,
        "fundamentalMatrices": {
            str(k): fundamental_matrix_untwisted(k, ctx).to_json() for k in fundamentals
        },
        "moduleMatrices": {
            str(k): module_matrix_routeB(exterior_power(k, ctx), ctx).to_json()
            for k in fundamentals
        },
        "checksum": basis_checksum(untwisted, twisted),
    }


def render_tables(document: dict) -> str:
    return json.dumps(document, sort_keys=True, indent=2) + "\n"


def is_valid_document(document: dict, ctx: LevelContext) -> bool:
    """True when `document` is a current-format table for ctx with a matching checksum."""
    try:
        if document["format"] != FORMAT_VERSION:
            return False
        if (document["N"], document["level"]) != (ctx.n, ctx.level):
            return False
        expected_untwisted = [f.key() for f in basis_untwisted(ctx)]
        expected_twisted = [h.key() for h in basis_twisted(ctx)]
        if (document["basisUntwisted"], document["basisTwisted"]) != (
            expected_untwisted,
            expected_twisted,
        ):
            return False
        return document["checksum"] == basis_checksum(
            document["basisUntwisted"], document["basisTwisted"]
        )
    except (KeyError, TypeError):
        return False


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise


def load_tables(path: Path) -> dict | None:
    """Parsed document at `path`, or None if missing or not valid JSON."""
    path = Path(path)
    if not path.exists():
        return None
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        logger.warning("Unreadable fusion table %s: %s", path, exc)
        return None


def export_tables(ctx: LevelContext, path: Path | str) -> Path:
    """
    Write the fusion-table document for ctx to `path`.

    An existing valid document at `path` is reused untouched; a stale or
    corrupt one is recomputed and replaced.

    Raises:
        OSError: If the file cannot be written (message names the path)
    """
    path = Path(path)
    existing = load_tables(path)
    if existing is not None:
        if is_valid_document(existing, ctx):
            logger.info("Reusing fusion table %s", path)
            return path
        logger.warning("Checksum or format mismatch in %s; recomputing", path)
    else:
        logger.info("No fusion table at %s; computing", path)

    text = render_tables(build_tables(ctx))
    try:
        _atomic_write(path, text)
    except OSError as exc:
        raise OSError(f"cannot write fusion table to {path}: {exc}") from exc
    return path


def default_table_path(ctx: LevelContext, cache_dir: Path | str | None = None) -> Path:
    """Cache location for ctx: <cache_dir>/fusion_N<n>_level<level>.json."""
    base = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    if base is None:
        base = Path.cwd()
    return base / f"fusion_N{ctx.n}_level{ctx.level}.json"
