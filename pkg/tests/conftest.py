import warnings

import pytest

from gupqm.errors import OrderValidityWarning, ToleranceWarning


@pytest.fixture(autouse=True)
def _quiet_advisory_warnings():
    """Advisory warnings are exercised by dedicated tests; keep the rest quiet."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", OrderValidityWarning)
        warnings.simplefilter("ignore", ToleranceWarning)
        yield
