"""
Solver Configuration
Defines the size guards of the exact solvers, the default seed and logging settings
"""

import os
import logging
from typing import Dict, Any, Optional
from dataclasses import dataclass

from gds_errors import CapabilityError

logger = logging.getLogger(__name__)


@dataclass
class SizeGuard:
    """A named upper limit on the instance size an exact solver accepts"""
    name: str
    limit: int
    description: str

    def allows(self, value: int) -> bool:
        """Check if an instance of the given size is within the guard"""
        return value <= self.limit

    def check(self, value: int):
        """
        Raise CapabilityError when value exceeds the guard

        Args:
            value: Instance size (vertices, order, set count, ...)
        """
        if not self.allows(value):
            logger.warning(f"Size guard '{self.name}' exceeded: {value} > {self.limit}")
            raise CapabilityError(self.name, self.limit, value)


# env var -> (default, description)
GUARD_DEFAULTS: Dict[str, Any] = {
    'GDS_CHROMATIC_MAX_VERTICES': (24, "exact chromatic number backtracking"),
    'GDS_HITTING_SET_MAX_UNIVERSE': (64, "minimum hitting set universe size"),
    'GDS_HITTING_SET_MAX_SETS': (10000, "minimum hitting set member count"),
    'GDS_VERTEX_COVER_MAX_VERTICES': (40, "exact minimum vertex cover"),
    'GDS_GDN_MAX_VERTICES': (12, "coloring enumeration per component in gdn"),
    'GDS_ORACLE_MAX_VERTICES': (9, "brute-force GDN oracle"),
    'GDS_LATIN_EXACT_MAX_ORDER': (6, "exact minimum Latin square GDS"),
    'GDS_G_NUMBER_MAX_ORDER': (4, "exhaustive g(n) over all Latin squares"),
    'GDS_BOUND_EXACT_MAX_ORDER': (8, "exact cover of E(L) in the bound report"),
}


def _int_from_env(var: str, default: int) -> int:
    raw = os.getenv(var)
    if raw is None or raw.strip() == '':
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer {var}={raw!r}, using {default}")
        return default
    if value < 1:
        logger.warning(f"Ignoring non-positive {var}={value}, using {default}")
        return default
    return value


class SolverConfig:
    """Configuration for the exact solvers and the CLI"""

    def __init__(self):
        """Initialize solver configuration from environment variables"""
        self.guards: Dict[str, SizeGuard] = {}
        for var, (default, description) in GUARD_DEFAULTS.items():
            self.guards[var] = SizeGuard(
                name=var,
                limit=_int_from_env(var, default),
                description=description
            )

        try:
            self.default_seed = int(os.getenv('GDS_DEFAULT_SEED', '0'))
        except ValueError:
            logger.warning("Ignoring non-integer GDS_DEFAULT_SEED, using 0")
            self.default_seed = 0

        self.log_level = os.getenv('GDS_LOG_LEVEL', 'WARNING').upper()
        self.log_file = os.getenv('GDS_LOG_FILE') or None
        self.template_path = os.getenv(
            'GDS_TEMPLATE_PATH',
            os.path.join(os.path.dirname(__file__), 'config', 'templates.yaml')
        )

        logger.debug(f"Solver config initialized: {self.to_dict()}")

    def guard(self, name: str) -> SizeGuard:
        """
        Get a size guard by its environment variable name

        Args:
            name: e.g. 'GDS_GDN_MAX_VERTICES'

        Returns:
            The configured SizeGuard
        """
        return self.guards[name]

    def check(self, name: str, value: int):
        """Shorthand for guard(name).check(value)"""
        self.guard(name).check(value)

    def limit(self, name: str) -> int:
        return self.guards[name].limit

    def to_dict(self) -> Dict[str, Any]:
        """Convert config to dictionary"""
        return {
            'guards': {name: g.limit for name, g in self.guards.items()},
            'default_seed': self.default_seed,
            'log_level': self.log_level,
            'log_file': self.log_file,
            'template_path': self.template_path
        }


# Global instance
_solver_config: Optional[SolverConfig] = None


def get_solver_config() -> SolverConfig:
    """Get or create global solver config instance"""
    global _solver_config
    if _solver_config is None:
        _solver_config = SolverConfig()
    return _solver_config


def set_solver_config(config: Optional[SolverConfig]):
    """Set global solver config instance (None resets to environment defaults)"""
    global _solver_config
    _solver_config = config
