"""
YAML configuration loading shared by module workflows and the CLI.
"""
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml

logger = logging.getLogger(__name__)

MODULES_ROOT = Path(__file__).parent.parent / "modules"


def load_yaml_config(path: Union[str, Path]) -> Dict[str, Any]:
    """
    Load a YAML mapping from disk.

    Args:
        path: Path to the YAML file

    Returns:
        Parsed mapping, or an empty dict when the file is missing or unreadable.
    """
    path = Path(path)
    if not path.exists():
        logger.warning(f"Config not found at {path}, using defaults")
        return {}
    try:
        with open(path, "r", encoding="utf-8") as f:
            loaded = yaml.safe_load(f)
    except (OSError, yaml.YAMLError) as e:
        logger.warning(f"Failed to load config from {path}: {e}")
        return {}
    if loaded is None:
        return {}
    if not isinstance(loaded, dict):
        logger.warning(f"Config at {path} is not a mapping, ignoring it")
        return {}
    return loaded


def load_module_config(module_name: str, config_path: Optional[Union[str, Path]] = None) -> Dict[str, Any]:
    """
    Load modules/<module_name>/config.yaml, or an explicit override path.
    """
    path = Path(config_path) if config_path else MODULES_ROOT / module_name / "config.yaml"
    return load_yaml_config(path)


def config_section(config: Dict[str, Any], *keys: str) -> Dict[str, Any]:
    """Walk nested mapping keys, returning {} when any level is absent."""
    section: Any = config
    for key in keys:
        if not isinstance(section, dict):
            return {}
        section = section.get(key, {})
    return section if isinstance(section, dict) else {}
