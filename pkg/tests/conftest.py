import pytest

from mfcev import ModelParams


@pytest.fixture
def fig_params():
    """The benchmark parameter point: sigma0 = 20%, r = 5%, s0 = 50."""
    def make(alpha=0.0, beta=0.5, hurst=0.8, s0=50.0, r=0.05, sigma0=0.2):
        return ModelParams(r=r, sigma0=sigma0, alpha=alpha, beta=beta,
                           hurst=hurst, s0=s0)
    return make
