"""Plugin scanner -- lists estimator plugins by reading their PLUGIN_META.

Metadata is read from source with ast.literal_eval, so `bbx estimators`
never imports numpy or scipy. A module whose PLUGIN_META is computed
rather than literal is imported instead.
"""

from __future__ import annotations

import ast
import importlib
import logging
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ValidationError

logger = logging.getLogger(__name__)

PLUGINS_ROOT = Path(__file__).resolve().parent.parent / "plugins"

CATEGORY_LABELS = {"estimator": "Estimators"}

_NOT_LITERAL = object()


class PluginInfo(BaseModel):
    """One discovered plugin."""

    name: str
    display_name: str
    description: str = ""
    category: str = "unknown"
    class_name: str = ""
    module_path: str  # plugins.estimators.bearing_box
    state_dim: int = 0
    requires_attitude: bool = False

    @property
    def category_label(self) -> str:
        return CATEGORY_LABELS.get(self.category, self.category)


def _module_path(filepath: Path, plugins_root: Path) -> str:
    return ".".join(filepath.relative_to(plugins_root.parent).with_suffix("").parts)


def _source_meta(filepath: Path) -> Any:
    """PLUGIN_META as a literal, None if absent or unreadable, _NOT_LITERAL if computed."""
    try:
        tree = ast.parse(filepath.read_text(encoding="utf-8"), filename=str(filepath))
    except (OSError, SyntaxError, UnicodeDecodeError) as e:
        logger.debug("Skipping %s: %s", filepath, e)
        return None
    for node in tree.body:
        if isinstance(node, ast.Assign) and any(
            isinstance(t, ast.Name) and t.id == "PLUGIN_META" for t in node.targets
        ):
            try:
                return ast.literal_eval(node.value)
            except ValueError:
                return _NOT_LITERAL
    return None


def _imported_meta(module_path: str) -> Any:
    try:
        return getattr(importlib.import_module(module_path), "PLUGIN_META", None)
    except Exception:
        logger.debug("Could not import %s", module_path, exc_info=True)
        return None


def read_plugin(filepath: Path, plugins_root: Path = PLUGINS_ROOT) -> PluginInfo | None:
    """PluginInfo for one plugin file, or None if it declares no usable metadata."""
    module_path = _module_path(filepath, plugins_root)
    meta = _source_meta(filepath)
    if meta is _NOT_LITERAL:
        meta = _imported_meta(module_path)
    if not isinstance(meta, dict):
        return None
    name = meta.get("name", filepath.stem)
    try:
        return PluginInfo.model_validate({
            "display_name": name,
            **meta,
            "name": name,
            "module_path": module_path,
        })
    except ValidationError as e:
        logger.warning("Ignoring %s: bad PLUGIN_META (%s)", filepath, e.error_count())
        return None


def discover_plugins(plugins_dir: Path | None = None) -> dict[str, list[PluginInfo]]:
    """Category -> plugins, in file-name order. Files and packages starting with `_` are skipped."""
    root = plugins_dir or PLUGINS_ROOT
    found: dict[str, list[PluginInfo]] = {}
    for filepath in sorted(root.glob("*/*.py")):
        if filepath.name.startswith("_") or filepath.parent.name.startswith("_"):
            continue
        info = read_plugin(filepath, root)
        if info is not None:
            found.setdefault(info.category, []).append(info)
    return found


def discover_estimators(plugins_dir: Path | None = None) -> list[PluginInfo]:
    return discover_plugins(plugins_dir).get("estimator", [])
