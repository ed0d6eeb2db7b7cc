"""Golden data shared by the unit and acceptance suites."""

from fractions import Fraction

from denumerant.stepquasi import ONE, atom_canon

F = Fraction
HALF = atom_canon(F(1, 2))
TWO_THIRDS = atom_canon(F(2, 3))

# E_m((2,3,3,6); t) as printed with the worked example
EXAMPLE_2336 = {
    3: ONE.scale(F(1, 648)),
    2: F(1, 24) - TWO_THIRDS / 36,
    1: F(13, 36) - HALF ** 2 / 6 + TWO_THIRDS ** 2 / 6 - TWO_THIRDS / 2,
    0: (HALF ** 3).scale(F(2, 3)) + HALF ** 2 * TWO_THIRDS - TWO_THIRDS ** 3 / 3
    - (HALF ** 2).scale(F(3, 2)) + (TWO_THIRDS ** 2).scale(F(3, 2)) - HALF / 6
    - TWO_THIRDS.scale(F(13, 6)) + 1,
}

EMF_2336_F3 = {
    1: F(49, 144) - TWO_THIRDS / 2 + TWO_THIRDS ** 2 / 6,
    2: F(1, 24) - TWO_THIRDS / 36,
}

CORPUS = {
    "Sel1": (8, 12, 11),
    "Sel2": (5, 13, 2, 8, 3),
    "Sel3": (5, 3, 1, 4, 2),
    "Sel4": (9, 11, 14, 5, 12),
    "Sel5": (9, 10, 17, 5, 2),
    "Sel6": (1, 2, 3, 4, 5, 6),
    "Sel7": (12223, 12224, 36674, 61119, 85569),
    "Sel8": (12137, 24269, 36405, 36407, 48545, 60683),
    "Sel9": (20601, 40429, 40429, 45415, 53725, 61919, 64470, 69340, 78539, 95043),
    "Sma1": (11, 9, 5, 3, 14, 10),
    "Lar1": (75541, 29386, 12347),
    "Lar2": (66958, 75047, 71820, 69631),
}
