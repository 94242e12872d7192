import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from cuspdet import backend_name


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "slow: heavy resolvent-pipeline tests")


def pytest_collection_modifyitems(config, items):
    if backend_name() == "cython" or os.environ.get("CUSPDET_RUN_SLOW") == "1":
        return
    skip = pytest.mark.skip(
        reason="pure-Python kernel active; set CUSPDET_RUN_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)
