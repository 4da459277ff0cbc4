import pytest

from qbattery import TransmonParams, transmon_spectrum


@pytest.fixture
def spectrum():
    # E_C = 0.25, E_J = 12.5: Delta = 4.75, Delta' = 4.5, Delta_max = 9.25
    return transmon_spectrum(TransmonParams(0.25, 12.5))
