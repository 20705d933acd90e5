"""Named simulation designs."""

from .params import SimulationConfig

SIGMA_Y_GRID = (2.0**-4, 2.0**-2, 2.0**0)
BETA_U_GRID = (2.0**0, 2.0**2, 2.0**4)
CONSISTENT_SIGMA_A = (2.0**-4, 2.0**-2)
INCONSISTENT_SIGMA_A = (2.0**0, 2.0**2)
TOY_SIGMA_A = tuple(2.0 ** (1 + 0.5 * k) for k in range(9))


def toy_config(sigma_a: float = 2.0, seed: int = 0) -> SimulationConfig:
    """Introductory toy design.

    n=256, p=3, d=1, beta_x=(1,3,5), beta_u=16, beta_v=1, sigma_y^2=2^-4 and
    v = 0.5 u + noise. sigma_a is the swept parameter.
    """
    return SimulationConfig(
        n=256,
        p=3,
        d=1.0,
        beta_x=(1.0, 3.0, 5.0),
        beta_u=16.0,
        beta_v=1.0,
        sigma_a=sigma_a,
        sigma_y=2.0**-2,
        v_mixing=0.5,
        seed=seed,
    )


def panel_base(seed: int = 0) -> SimulationConfig:
    """Base design of the regime panels: n=2^8, d=1, beta_v=1."""
    return toy_config(seed=seed).with_(beta_u=1.0, sigma_y=1.0, sigma_a=1.0)
