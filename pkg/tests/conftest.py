"""Pytest configuration and fixtures."""

import shutil
import tempfile
from pathlib import Path

import pytest

from app.models.config import AppConfig, CeleryConfig, ForcingConfig, SchemeConfig, VerifyConfig
from app.services.ordinal_metrics import MetricView
from app.services.scheme_engine import SchemeView
from app.services.type_core import builtin_type


@pytest.fixture
def temp_dir():
    """Create a temporary directory for tests."""
    temp_path = Path(tempfile.mkdtemp())
    yield temp_path
    shutil.rmtree(temp_path, ignore_errors=True)


@pytest.fixture
def test_config(temp_dir):
    """Small windows, in-memory broker and eager tasks."""
    return AppConfig(
        scheme=SchemeConfig(element_budget=200_000),
        verify=VerifyConfig(
            metric_window=12,
            countryman_window=10,
            chain_window=8,
            family_window=8,
            aronszajn_window=8,
            coloring_window=8,
            max_level=3,
            cofinality_exhaustive_limit=8,
            cofinality_samples=200,
        ),
        forcing=ForcingConfig(session_dir=temp_dir / "session", scan_budget=50_000),
        celery=CeleryConfig(
            broker_url="memory://",
            result_backend="cache+memory://",
            task_always_eager=True,
        ),
    )


@pytest.fixture
def tstar():
    """Scheme view of T★ (m = 1, 2, 4, 8, 14, 27, 51)."""
    return SchemeView(builtin_type("tstar"))


@pytest.fixture
def t2():
    """Scheme view of T₂ (m = 1, 2, 3, 6, 10, 19, 35, 70)."""
    return SchemeView(builtin_type("t2"))


@pytest.fixture
def tstar_metrics(tstar):
    return MetricView(tstar)


@pytest.fixture
def t2_metrics(t2):
    return MetricView(t2)


@pytest.fixture
def eager_celery(test_config):
    """Run Celery tasks inline against the in-memory broker."""
    from app.tasks.worker import celery_app

    keys = ("broker_url", "result_backend", "task_always_eager")
    previous = {key: celery_app.conf[key] for key in keys}
    celery_app.conf.update(
        broker_url=test_config.celery.broker_url,
        result_backend=test_config.celery.result_backend,
        task_always_eager=True,
        task_eager_propagates=True,
    )
    yield celery_app
    celery_app.conf.update(previous)
