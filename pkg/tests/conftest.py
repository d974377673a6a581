"""
Shared fixtures
"""

import pytest
from hypothesis import HealthCheck, settings

from report_templates import set_template_engine
from solver_config import set_solver_config

settings.register_profile("gds", suppress_health_check=[HealthCheck.function_scoped_fixture])
settings.load_profile("gds")

GUARD_VARS = [
    'GDS_CHROMATIC_MAX_VERTICES', 'GDS_HITTING_SET_MAX_UNIVERSE', 'GDS_HITTING_SET_MAX_SETS',
    'GDS_VERTEX_COVER_MAX_VERTICES', 'GDS_GDN_MAX_VERTICES', 'GDS_ORACLE_MAX_VERTICES',
    'GDS_LATIN_EXACT_MAX_ORDER', 'GDS_G_NUMBER_MAX_ORDER', 'GDS_BOUND_EXACT_MAX_ORDER',
    'GDS_DEFAULT_SEED', 'GDS_LOG_LEVEL', 'GDS_LOG_FILE', 'GDS_TEMPLATE_PATH',
]


@pytest.fixture(autouse=True)
def clean_config(monkeypatch):
    """Every test starts from default configuration"""
    for var in GUARD_VARS:
        monkeypatch.delenv(var, raising=False)
    set_solver_config(None)
    yield
    set_solver_config(None)
    set_template_engine(None)
