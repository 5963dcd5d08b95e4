import pytest

from qgraph import kernels


@pytest.fixture(params=kernels.available_backends())
def backend(request):
    """Runs a test once per kernel backend present in this build."""
    return request.param
