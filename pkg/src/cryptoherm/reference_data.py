"""Published reference values: sample spectra and explicitly listed metric elements.

Element entries map ``(j, N, m, m')`` to a function of ``a``; ``N`` is the
dimension at which the value applies (boundary elements depend on it,
bulk elements are taken at a dimension large enough to be cutoff-free).
"""
from __future__ import annotations

from .scalars import rising_product as Pi

# (N, a) -> (E_0, E_1, E_{N-2}, E_{N-1})
SPECTRA = {
    (6, 1.0): (0.5276681217, 1.796299810, 11.23461043, 17.64596355),
    (6, 2.0): (0.8899410156, 2.433144232, 12.60041387, 19.26204255),
    (6, 3.0): (1.296419203, 3.093998381, 13.94134537, 20.83985455),
    (9, 1.0): (0.3681784529, 1.243357962, 20.38218199, 28.11834338),
    (9, 2.0): (0.6318537723, 1.712163195, 21.90120660, 29.82533613),
    (9, 3.0): (0.9343511232, 2.208578822, 23.39499254, 31.50012806),
}

BULK_N = 10

ELEMENTS = {
    # diagonal metric
    (0, BULK_N, 1, 1): lambda a: 1 + 0 * a,
    (0, BULK_N, 2, 2): lambda a: 1 / (a + 1),
    (0, BULK_N, 3, 3): lambda a: 2 / Pi(a, 2),
    # tridiagonal pseudometric
    (1, BULK_N, 1, 2): lambda a: 1 + 0 * a,
    (1, BULK_N, 2, 2): lambda a: -2 / (a + 1),
    (1, BULK_N, 3, 3): lambda a: -8 / Pi(a, 2),
    (1, BULK_N, 4, 4): lambda a: -36 / Pi(a, 3),
    (1, BULK_N, 2, 3): lambda a: 2 / (a + 1),
    (1, BULK_N, 3, 4): lambda a: 6 / Pi(a, 2),
    (1, BULK_N, 4, 5): lambda a: 24 / Pi(a, 3),
    (1, BULK_N, 5, 5): lambda a: -192 / Pi(a, 4),
    (1, BULK_N, 5, 6): lambda a: 120 / Pi(a, 4),
    (1, BULK_N, 6, 6): lambda a: -1200 / Pi(a, 5),
    # pentadiagonal pseudometric
    (2, BULK_N, 2, 2): lambda a: (a + 2) / (a + 1),
    (2, BULK_N, 3, 3): lambda a: 4 * (a + 5) / Pi(a, 2),
    (2, BULK_N, 4, 4): lambda a: 18 * (a + 8) / Pi(a, 3),
    (2, BULK_N, 5, 5): lambda a: 96 * (a + 11) / Pi(a, 4),
    (2, BULK_N, 2, 3): lambda a: -4 / (a + 1),
    (2, BULK_N, 3, 4): lambda a: -24 / Pi(a, 2),
    (2, BULK_N, 4, 5): lambda a: -144 / Pi(a, 3),
    (2, BULK_N, 1, 3): lambda a: 1 + 0 * a,
    (2, BULK_N, 2, 4): lambda a: 3 / (a + 1),
    (2, BULK_N, 3, 5): lambda a: 12 / Pi(a, 2),
    (2, 5, 5, 5): lambda a: 36 * (a + 21) / Pi(a, 4),
    (2, 9, 9, 9): lambda a: 141120 * (a + 41) / Pi(a, 8),
    # heptadiagonal pseudometric
    (3, BULK_N, 3, 3): lambda a: -8 * (a + 3) / Pi(a, 2),
    (3, BULK_N, 4, 4): lambda a: -24 * (3 * a + 14) / Pi(a, 3),
    (3, BULK_N, 5, 5): lambda a: -192 * (3 * a + 19) / Pi(a, 4),
    (3, BULK_N, 6, 6): lambda a: -4800 * (a + 8) / Pi(a, 5),
    (3, BULK_N, 2, 3): lambda a: (a + 3) / (a + 1),
    (3, BULK_N, 3, 4): lambda a: 6 * (a + 8) / Pi(a, 2),
    (3, BULK_N, 4, 5): lambda a: 36 * (a + 13) / Pi(a, 3),
    (3, BULK_N, 5, 6): lambda a: 240 * (a + 18) / Pi(a, 4),
    (3, BULK_N, 2, 4): lambda a: -6 / (a + 1),
    (3, BULK_N, 3, 5): lambda a: -48 / Pi(a, 2),
    (3, BULK_N, 4, 6): lambda a: -360 / Pi(a, 3),
    (3, BULK_N, 1, 4): lambda a: 1 + 0 * a,
    (3, BULK_N, 2, 5): lambda a: 4 / (a + 1),
    (3, BULK_N, 3, 6): lambda a: 20 / Pi(a, 2),
    (3, 4, 4, 4): lambda a: -16 * (a + 7) / Pi(a, 3),
    (3, 5, 5, 5): lambda a: -16 * (11 * a + 103) / Pi(a, 4),
    (3, 6, 6, 6): lambda a: -240 * (7 * a + 82) / Pi(a, 5),
    (3, 7, 7, 7): lambda a: -960 * (17 * a + 239) / Pi(a, 6),
    (3, 9, 9, 9): lambda a: -80640 * (23 * a + 431) / Pi(a, 8),
    (3, 4, 3, 4): lambda a: 2 * (a + 16) / Pi(a, 2),
    (3, 5, 4, 5): lambda a: 16 * (a + 23) / Pi(a, 3),
    (3, 6, 5, 6): lambda a: 120 * (a + 30) / Pi(a, 4),
    (3, 7, 6, 7): lambda a: 960 * (a + 37) / Pi(a, 5),
    (3, 8, 7, 8): lambda a: 8400 * (a + 44) / Pi(a, 6),
    (3, 9, 8, 9): lambda a: 80640 * (a + 51) / Pi(a, 7),
}

# uncorrected diagonal forms that disagree with the listed elements, kept for comparison
def uncorrected_p1_diagonal(n, a):
    from math import factorial

    return factorial(n - 1) / Pi(a, n - 1)


def uncorrected_p3_diagonal(n, a):
    from math import factorial

    return -2 * (n - 1) * (n - 2) * factorial(n - 1) * (a + 5 * n - 6) / (3 * Pi(a, n - 1))
