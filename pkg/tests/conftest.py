import math

from scatter1d.potential import PotentialSpec


def make_spec(a: complex, m: int, L: float = math.pi) -> PotentialSpec:
    """Spec whose dimensionless coupling sqrt(z)/k0 equals ``a`` exactly."""
    k0 = m * math.pi / L
    return PotentialSpec(coupling=(a * k0) ** 2, m=m, L=L)
