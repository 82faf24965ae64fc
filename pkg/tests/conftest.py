import pytest

from emkdv.model import InitialProfile, ModelParams
from emkdv.pde import SpectralGrid, evolve
from emkdv.scattering import compute_scattering

SECH = InitialProfile("sech", 0.3)


@pytest.fixture(scope="session")
def sech_data():
    return compute_scattering(SECH)


@pytest.fixture(scope="session")
def oscillatory_run():
    """alpha = beta = 1 reference run; shared by the convergence, decay and conservation checks."""
    ev = evolve(SECH, ModelParams(1.0, 1.0), SpectralGrid(512.0, 16384), t_out=(50.0, 100.0, 200.0, 400.0))
    return {s.t: s for s in ev.snapshots}


@pytest.fixture(scope="session")
def painleve_run():
    """alpha = 0 run; every wave moves right so a 256 half-width suffices."""
    ev = evolve(SECH, ModelParams(0.0, 1.0), SpectralGrid(256.0, 8192), t_out=(100.0, 400.0))
    return {s.t: s for s in ev.snapshots}
