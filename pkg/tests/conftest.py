import pytest

from caustica import (
    elliptic_umbilic,
    family_a,
    family_d,
    family_e6,
    family_e7,
    family_e8,
    hyperbolic_umbilic,
)


def all_family_ids():
    """The 21 catalog instances exercised by the acceptance suite:
    A_2..A_8 (upper signs), D_4..D_8 both signs, E6 both signs, E7, E8,
    and the two umbilic lensing maps."""
    fams = [family_a(n) for n in range(2, 9)]
    fams += [family_d(n, s) for n in range(4, 9) for s in (1, -1)]
    fams += [family_e6(1), family_e6(-1), family_e7(), family_e8()]
    fams += [elliptic_umbilic(), hyperbolic_umbilic()]
    return fams


@pytest.fixture(scope="session")
def family_ids():
    return all_family_ids()
