"""
Report Templates
Text blocks printed by latin-bound, share-audit and the number commands,
kept in config/templates.yaml so the output layout lives in one place
"""

import yaml
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple
from string import Formatter

logger = logging.getLogger(__name__)

DEFAULT_LANGUAGE = 'en'


def _flatten(tree: Dict[str, Any], prefix: str = '') -> Dict[str, Dict[str, str]]:
    """Nested categories -> {'category.name': {language: text}}"""
    flat: Dict[str, Dict[str, str]] = {}
    for name, node in tree.items():
        key = f"{prefix}{name}"
        if not isinstance(node, dict):
            logger.warning(f"Skipping template entry '{key}': expected a mapping")
            continue
        if all(isinstance(text, str) for text in node.values()):
            flat[key] = dict(node)
        else:
            flat.update(_flatten(node, f"{key}."))
    return flat


def _field_names(text: str) -> Tuple[str, ...]:
    names = []
    for _, field, _, _ in Formatter().parse(text):
        if field and field not in names:
            names.append(field)
    return tuple(names)


def _as_text(value: Any) -> Any:
    # reports print lowercase booleans and '-' for an empty list
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, (list, tuple)):
        return " ".join(str(x) for x in value) or '-'
    return value


class TemplateEngine:
    """Report catalog loaded from a templates.yaml file"""

    def __init__(self, template_path: str):
        self.template_path = template_path
        self.templates: Dict[str, Dict[str, str]] = {}
        self._load_templates()

    def _load_templates(self):
        template_file = Path(self.template_path)
        if not template_file.exists():
            logger.error(f"Template file not found: {self.template_path}")
            return
        try:
            data = yaml.safe_load(template_file.read_text()) or {}
        except yaml.YAMLError as e:
            logger.error(f"Failed to load templates from {self.template_path}: {e}", exc_info=True)
            return

        self.templates = _flatten(data.get('templates') or {})
        logger.debug(f"Loaded {len(self.templates)} report templates from {self.template_path}")

    def _lookup(self, template_key: str, language: str) -> Optional[str]:
        variants = self.templates.get(template_key)
        if variants is None:
            logger.warning(f"Template not found: {template_key}")
            return None
        text = variants.get(language)
        if text is None:
            logger.warning(f"Language '{language}' not found for template: {template_key}")
        return text

    def render(self, template_key: str, context: Dict[str, Any], language: str = DEFAULT_LANGUAGE) -> Optional[str]:
        """
        Fill one report template

        Args:
            template_key: Dot-separated key, e.g. "bound_report.summary"
            context: Values for the template's fields
            language: Language code

        Returns:
            The rendered block, or None when the template is unknown or a
            field has no value in context
        """
        text = self._lookup(template_key, language)
        if text is None:
            return None
        missing = [name for name in _field_names(text) if name not in context]
        if missing:
            logger.error(f"Template {template_key} is missing values for: {', '.join(missing)}")
            return None
        return text.format(**{name: _as_text(value) for name, value in context.items()})

    def get_template_vars(self, template_key: str, language: str = DEFAULT_LANGUAGE) -> List[str]:
        """Field names of a template in order of first use"""
        text = self._lookup(template_key, language)
        return list(_field_names(text)) if text is not None else []


_template_engine: Optional[TemplateEngine] = None


def get_template_engine() -> Optional[TemplateEngine]:
    return _template_engine


def set_template_engine(engine: Optional[TemplateEngine]):
    global _template_engine
    _template_engine = engine


def render_template(template_key: str, context: Dict[str, Any], language: str = DEFAULT_LANGUAGE) -> Optional[str]:
    """Render with the engine installed by set_template_engine, None if there is none"""
    engine = get_template_engine()
    if engine is None:
        logger.warning("Template engine not initialized")
        return None
    return engine.render(template_key, context, language)
