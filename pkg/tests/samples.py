"""Shared worked presentations used across the test suite."""

from npicheck import parse_presentation

SAMPLE_A_TEXT = (
    "gens: a b c\n"
    "rel: a^-1 b\n"
    "rel: c^-1 b^-1 c a b a^-1 c^-1 b^-1 c^2\n"
)

SAMPLE_B_TEXT = (
    "gens: a b c\n"
    "rel: a^-1 c^-1 a a a b^-1 b^-1 c^-1 a b\n"
    "rel: c^-1 b^-1 c b^-1 c a b a^-1 b a^-1\n"
)

SAMPLE_BRAID_TEXT = (
    "gens: x y z\n"
    "rel: x^-1 z^4 x z^-3 y z y^-1 z^-1 y^-1\n"
    "rel: y^-1 x^-1 y^-1 z^-1 x z y z x z^-1\n"
)

TORSION_TEXT = "gens: a\nrel: a^2\n"

LOT_SINGLE_EDGE_TEXT = "vertices: a b c\nedge: a b c\n"


def sample_a():
    return parse_presentation(SAMPLE_A_TEXT)


def sample_b():
    return parse_presentation(SAMPLE_B_TEXT)


def sample_braid():
    return parse_presentation(SAMPLE_BRAID_TEXT)


def torsion_presentation():
    return parse_presentation(TORSION_TEXT)


# B4 defining relators as sigma-words: x-z commute, x-y braid, y-z braid.
B4_RELATORS = [
    (1, 3, -1, -3),
    (1, 2, 1, -2, -1, -2),
    (2, 3, 2, -3, -2, -3),
]
