"""Reference comparison table: s such that P(S <= s) = p, by method and equity ratio."""

PROBABILITIES = (0.01, 0.05, 0.10, 0.30, 0.50, 0.80, 0.90, 0.95, 0.99)

SIMULATION = {
    0.25: (0.8589, 0.9063, 0.9327, 0.9906, 1.0322, 1.1061, 1.1463, 1.1811, 1.2498),
    0.50: (0.8202, 0.8778, 0.9108, 0.9861, 1.0434, 1.1463, 1.2063, 1.2591, 1.3683),
    0.75: (0.7536, 0.8280, 0.8721, 0.9735, 1.0530, 1.1982, 1.2840, 1.3605, 1.5198),
}
MOMENT_MATCHED = {
    0.25: (0.8568, 0.9052, 0.9321, 0.9908, 1.0336, 1.1062, 1.1462, 1.1802, 1.2469),
    0.50: (0.8084, 0.8718, 0.9077, 0.9871, 1.0461, 1.1483, 1.2057, 1.2552, 1.3536),
    0.75: (0.7407, 0.8218, 0.8685, 0.9747, 1.0558, 1.2002, 1.2834, 1.3565, 1.5049),
}
MGF1 = {
    0.25: (0.8569, 0.9053, 0.9322, 0.9908, 1.0336, 1.1062, 1.1461, 1.1801, 1.2468),
    0.50: (0.8093, 0.8725, 0.9082, 0.9873, 1.0462, 1.1480, 1.2051, 1.2544, 1.3524),
    0.75: (0.7418, 0.8226, 0.8693, 0.9751, 1.0559, 1.1997, 1.2826, 1.3553, 1.5029),
}
MGF2 = MOMENT_MATCHED
