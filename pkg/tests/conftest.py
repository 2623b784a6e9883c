import pytest

from cak import RingPresentation, parse_poly, parse_poly_list

R1_WEIGHTS = (6, 11, 16, 26)
R1_RELATIONS = "X^7 - Z*W; Y^2 - X*Z; Z^2 - X*W; W^2 - X^6*Z"


@pytest.fixture
def kxy():
    return RingPresentation(["x", "y"], [1, 1])


@pytest.fixture
def kxyz():
    return RingPresentation(["x", "y", "z"], [1, 1, 1])


@pytest.fixture
def r1_ambient():
    return RingPresentation(["X", "Y", "Z", "W"], R1_WEIGHTS)


@pytest.fixture
def r1_ring(r1_ambient):
    return r1_ambient.extend_relations(parse_poly_list(R1_RELATIONS, r1_ambient))


def P(ring, text):
    return parse_poly(text, ring)


def PL(ring, text):
    return parse_poly_list(text, ring)
