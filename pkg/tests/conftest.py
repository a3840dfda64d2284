import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from casimir_metal import PlasmaModel


@pytest.fixture(scope="session")
def al_model():
    return PlasmaModel(98e-9)


@pytest.fixture(scope="session")
def cu_model():
    return PlasmaModel(132e-9)


@pytest.fixture
def drude_table():
    """Synthetic narrow-relaxation table whose dispersion transform should
    reproduce the plasma model to better than a percent."""
    from casimir_metal import PermittivityTable

    model = PlasmaModel(98e-9)
    wp = model.omega_p
    gamma = 5e-4 * wp
    w = np.geomspace(1e-3 * gamma, 1e3 * wp, 400)
    eps_imag = wp**2 * gamma / (w * (w**2 + gamma**2))
    return PermittivityTable(w, eps_imag)
