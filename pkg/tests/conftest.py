import pytest

from econarch import load_bundled


@pytest.fixture(scope="session")
def stations():
    """Bundled crewed-station program: two architectures, itemized costs."""
    return load_bundled("stations_baseline")


@pytest.fixture(scope="session")
def example_program():
    """Bundled stylized program: transfers-only vs purchases + infrastructure."""
    return load_bundled("program_example")
