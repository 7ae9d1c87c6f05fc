"""Utility functions for runners."""

import json
import logging
from pathlib import Path
from typing import Any, Optional

from dotenv import dotenv_values

logger = logging.getLogger(__name__)


def save_result(output_dir: Path, result_data: dict, filename: str = "result.json") -> Path:
    """
    Save result data to JSON file.

    Args:
        output_dir: Output directory
        result_data: Result dictionary
        filename: Output filename

    Returns:
        Path to saved file
    """
    output_dir.mkdir(parents=True, exist_ok=True)
    output_path = output_dir / filename

    with open(output_path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(result_data, f, indent=2, sort_keys=True)
        f.write("\n")

    logger.info(f"Result saved to {output_path}")
    return output_path


def log_step(logger_instance: logging.Logger, step: str, details: Optional[str] = None) -> None:
    """Log a step in pipeline execution."""
    message = step
    if details:
        message += f": {details}"
    logger_instance.info(message)


def load_config_file(path: Path) -> dict[str, str]:
    """
    Read a key=value config file (dotenv syntax).

    Keys are lower-cased and dashes become underscores so that `MAX_LAG`,
    `max-lag` and `max_lag` all name the same field.

    Raises:
        FileNotFoundError: If the file does not exist
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Config file not found: {path}")
    raw = dotenv_values(path)
    return {
        key.strip().lower().replace("-", "_"): value
        for key, value in raw.items()
        if value is not None and value.strip() != ""
    }


def merge_config(*layers: Optional[dict[str, Any]]) -> dict[str, Any]:
    """
    Merge configuration layers, later layers overriding earlier ones.

    None values never override.
    """
    merged: dict[str, Any] = {}
    for layer in layers:
        if not layer:
            continue
        merged.update({k: v for k, v in layer.items() if v is not None})
    return merged


def parse_int_list(value: Any) -> Optional[list[int]]:
    """Accept '16,32,64', '16 32 64' or a sequence of ints."""
    if value is None:
        return None
    if isinstance(value, str):
        tokens = value.replace(",", " ").split()
        return [int(t) for t in tokens]
    return [int(v) for v in value]
