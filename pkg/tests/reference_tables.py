"""Reference values the analyses must reproduce"""

# (t, sigma, m*, expected loss / 10^6)
BAYES_OPTIMA = [
    (0.0002, 0.001, 2, 0.316),
    (0.0004, 0.001, 3, 0.738),
    (0.0008, 0.001, 6, 1.567),
    (0.0016, 0.001, 10, 3.002),
]

# (L_c, m*, 10^3 h_hat)
INFOGAP_OPTIMA = [
    (0.5e6, 2, 0.207),
    (1.0e6, 4, 0.426),
    (1.5e6, 5, 0.661),
    (2.0e6, 6, 0.912),
    (2.5e6, 8, 1.184),
    (3.0e6, 10, 1.479),
    (3.5e6, 11, 1.803),
    (4.0e6, 13, 2.163),
]

# rounded robustness values, the column labels of the maximality scores
HORIZON_LABELS = [0.207e-3, 0.426e-3, 0.661e-3, 0.912e-3, 1.184e-3, 1.479e-3, 1.803e-3, 2.163e-3]

# maximality scores in 10^3 utiles, rows m = 0..15, columns as HORIZON_LABELS
MAXIMALITY_SCORES = [
    [-0.9, -0.9, -0.9, -0.9, -0.9, -0.9, -0.9, -0.9],
    [1.1, 1.1, 1.1, 1.1, 1.1, 1.1, 1.1, 1.1],
    [1.4, 3.1, 3.1, 3.1, 3.1, 3.1, 3.1, 3.1],
    [-0.6, 2.1, 4.9, 5.1, 5.1, 5.1, 5.1, 5.1],
    [-3.1, 0.1, 2.9, 5.9, 7.1, 7.1, 7.1, 7.1],
    [-7.7, -1.9, 0.9, 3.9, 7.0, 9.1, 9.1, 9.1],
    [-14.3, -5.8, -1.1, 1.8, 5.0, 8.4, 11.1, 11.1],
    [-22.9, -11.8, -4.3, -0.2, 2.9, 6.3, 9.9, 13.1],
    [-33.4, -19.7, -9.5, -2.4, 0.9, 4.2, 7.9, 11.8],
    [-46.0, -29.7, -16.6, -6.7, -1.1, 2.2, 5.8, 9.7],
    [-60.6, -41.7, -25.9, -13.0, -4.3, 0.1, 3.7, 7.6],
    [-77.2, -55.6, -37.1, -21.3, -9.5, -1.9, 1.7, 5.6],
    [-95.8, -71.6, -50.3, -31.6, -16.8, -5.9, -0.4, 3.5],
    [-116.4, -89.6, -65.6, -44.0, -26.1, -11.9, -2.9, 1.4],
    [-139.1, -109.7, -82.9, -58.4, -37.4, -20.0, -7.4, -0.7],
    [-163.7, -131.7, -102.2, -74.8, -50.8, -30.1, -14.1, -3.5],
]

# Pr(L >= 182 000) for m = 10; rows s, columns t
EXCEEDANCE_MEANS = [0.0002, 0.0004, 0.0008, 0.0016, 0.0032]
EXCEEDANCE_STRENGTHS = [200.0, 400.0, 800.0, 1600.0, 3200.0]
EXCEEDANCE_PROBABILITIES = [
    [0.030, 0.058, 0.113, 0.211, 0.371],
    [0.036, 0.070, 0.135, 0.249, 0.428],
    [0.040, 0.079, 0.150, 0.276, 0.466],
    [0.043, 0.084, 0.160, 0.292, 0.489],
    [0.045, 0.087, 0.166, 0.301, 0.501],
]
