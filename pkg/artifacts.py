"""
Artifacts
Writes job outputs (reports, matrices, alist files) into the output directory
and reads scheme/code descriptions back from JSON.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional

from block_codes import BlockCode
from errors import SchemeError
from field_matrix import Mat
from unit_scheme import UnitScheme, make_scaled, make_scheme

logger = logging.getLogger(__name__)


class ArtifactWriter:
    """File output with error management; JSON is written with sorted keys."""

    def __init__(self, output_dir: str):
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(exist_ok=True, parents=True)

    def save_json(self, data: Any, filename: str) -> Optional[Path]:
        filepath = self.output_dir / filename
        try:
            with open(filepath, "w", encoding="utf-8") as f:
                json.dump(data, f, ensure_ascii=False, indent=2, sort_keys=True)
                f.write("\n")
            logger.info(f"JSON saved: {filepath}")
            return filepath
        except OSError as e:
            logger.error(f"Error saving JSON {filepath}: {e}")
            return None

    def save_text(self, text: str, filename: str) -> Optional[Path]:
        filepath = self.output_dir / filename
        try:
            with open(filepath, "w", encoding="utf-8") as f:
                f.write(text)
            logger.info(f"Text file saved: {filepath}")
            return filepath
        except OSError as e:
            logger.error(f"Error saving text file {filepath}: {e}")
            return None


def load_json(path: str) -> Dict[str, Any]:
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def scheme_from_payload(payload: Dict[str, Any]) -> UnitScheme:
    """{"U": ..., "V": ...} gives a scaled scheme; U alone is inverted."""
    if "U" not in payload:
        raise SchemeError("scheme description needs a 'U' matrix")
    U = Mat.from_json(payload["U"])
    if payload.get("V") is None:
        return make_scheme(U)
    return make_scaled(U, Mat.from_json(payload["V"]))


def load_scheme(path: str) -> UnitScheme:
    scheme = scheme_from_payload(load_json(path))
    logger.debug(f"loaded {scheme.n}x{scheme.n} scheme over {scheme.spec} from {path}")
    return scheme


def load_block_code(path: str) -> BlockCode:
    """A code JSON ({"generator", "control"}) or a bare matrix used as generator."""
    payload = load_json(path)
    if "generator" in payload:
        return BlockCode.from_json(payload)
    return BlockCode.from_generator(Mat.from_json(payload))
