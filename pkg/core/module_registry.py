"""
Module Registry and Discovery System

Discovers the simulator modules under modules/ and registers the ones that
expose an HTTP router. Module metadata (description, version) is read from
each module's config.yaml.
"""
import importlib
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Set

from fastapi import APIRouter

from core.config_loader import config_section, load_yaml_config

logger = logging.getLogger(__name__)


@dataclass
class ModuleInfo:
    """Metadata about a discovered module."""
    name: str
    prefix: str
    tags: List[str]
    router: Optional[APIRouter] = None
    enabled: bool = True
    description: Optional[str] = None
    version: Optional[str] = None
    config: Dict = field(default_factory=dict)

    @property
    def has_router(self) -> bool:
        return self.router is not None


class ModuleRegistry:
    """Registry for auto-discovering and managing modules."""

    def __init__(self, modules_base_path: Optional[Path] = None):
        """
        Initialize module registry.

        Args:
            modules_base_path: Path to modules directory. Defaults to project modules/.
        """
        if modules_base_path is None:
            # core/module_registry.py -> core/ -> project_root/ -> project_root/modules/
            modules_base_path = Path(__file__).parent.parent / "modules"

        self.modules_base_path = modules_base_path
        self._modules: Dict[str, ModuleInfo] = {}
        self._discovered = False

    def discover_modules(self, enabled_modules: Optional[Set[str]] = None) -> Dict[str, ModuleInfo]:
        """
        Discover all module packages, importing routers where present.

        Args:
            enabled_modules: Set of module names to enable. None or a set
                             containing "all" enables everything.

        Returns:
            Dictionary mapping module names to ModuleInfo objects.
        """
        if self._discovered:
            return self._modules

        if not self.modules_base_path.exists():
            logger.warning(f"Modules directory not found at {self.modules_base_path}")
            return {}

        enabled_set = enabled_modules or {"all"}
        enable_all = "all" in enabled_set

        for module_dir in sorted(self.modules_base_path.iterdir()):
            if not module_dir.is_dir() or module_dir.name.startswith("_"):
                continue
            if not (module_dir / "__init__.py").exists():
                continue

            module_name = module_dir.name
            if not enable_all and module_name not in enabled_set:
                continue

            config = load_yaml_config(module_dir / "config.yaml") if (module_dir / "config.yaml").exists() else {}
            metadata = config_section(config, "module")

            router = None
            routers_dir = module_dir / "routers"
            if (routers_dir / "__init__.py").exists():
                try:
                    router_module = importlib.import_module(f"modules.{module_name}.routers")
                    router = getattr(router_module, "router", None)
                    if router is None:
                        logger.warning(f"Module {module_name} has routers/ but no 'router' export")
                except ImportError as e:
                    logger.warning(f"Could not import router for module {module_name}: {e}")

            self._modules[module_name] = ModuleInfo(
                name=module_name,
                prefix=f"/api/{self._generate_prefix(module_name)}",
                tags=[metadata.get("name", self._generate_prefix(module_name))],
                router=router,
                enabled=True,
                description=metadata.get("description"),
                version=metadata.get("version"),
                config=config,
            )
            logger.info(f"Discovered module: {module_name} (router: {'yes' if router else 'no'})")

        self._discovered = True
        return self._modules

    def _generate_prefix(self, module_name: str) -> str:
        """Generate API prefix from module name (snake_case -> kebab-case)."""
        return module_name.replace("_", "-")

    def get_all_modules(self) -> Dict[str, ModuleInfo]:
        """Get all discovered modules."""
        if not self._discovered:
            self.discover_modules()
        return self._modules

    def routed_modules(self) -> Dict[str, ModuleInfo]:
        """Modules that contribute HTTP routes."""
        return {name: info for name, info in self.get_all_modules().items() if info.has_router}


_registry: Optional[ModuleRegistry] = None


def get_registry() -> ModuleRegistry:
    """Get or create global module registry instance."""
    global _registry
    if _registry is None:
        _registry = ModuleRegistry()
    return _registry
