"""Published benchmark results for side-by-side display in reports.

Mean and standard deviation of test MSE, TPR and TNR from the original
simulation study of these estimators (100 replications, MSE estimated on
1,000 test draws), keyed by (case, k, n, sigma). "aspcr"/"spcr" are the
adaptive and plain one-stage estimators; "spls", "pls" and "pcr" are the
comparison methods reported alongside them (not implemented here).
"""

# (case, k, n, sigma) -> method -> (mse_mean, mse_sd)
MSE = {
    ("1a", 1, 50, 0.1): {"aspcr": (1.095e-2, 9.906e-4), "spcr": (1.654e-1, 8.799e-1),
                         "spls": (2.952e-1, 3.919e-1), "pls": (8.877e-1, 3.885e-1),
                         "pcr": (4.643, 6.325e-1)},
    ("1a", 1, 200, 0.1): {"aspcr": (1.019e-2, 5.088e-4), "spcr": (5.735e-2, 4.702e-1),
                          "spls": (3.167e-2, 3.095e-2), "pls": (2.249e-1, 9.559e-2),
                          "pcr": (4.605, 5.240e-1)},
    ("1a", 10, 50, 0.1): {"aspcr": (1.156e-2, 1.072e-3), "spcr": (1.162e-2, 1.107e-3),
                          "spls": (1.118e-2, 1.304e-3), "pls": (1.283e-2, 1.380e-3),
                          "pcr": (1.282e-2, 1.379e-3)},
    ("1a", 10, 200, 0.1): {"aspcr": (1.029e-2, 5.063e-4), "spcr": (1.031e-2, 5.628e-4),
                           "spls": (1.021e-2, 5.120e-4), "pls": (1.054e-2, 5.216e-4),
                           "pcr": (1.054e-2, 5.218e-4)},
    ("1b", 1, 50, 0.1): {"aspcr": (1.250e-2, 2.220e-3), "spcr": (1.465e-2, 2.778e-3),
                         "spls": (4.043e1, 1.869e1), "pls": (4.595e1, 1.148e1),
                         "pcr": (6.650e1, 4.517)},
    ("1b", 1, 200, 0.1): {"aspcr": (1.131e-2, 7.155e-4), "spcr": (1.186e-2, 7.808e-4),
                          "spls": (3.975e1, 1.531e1), "pls": (4.532e1, 5.048),
                          "pcr": (6.457e1, 2.919)},
    ("1b", 10, 50, 0.1): {"aspcr": (1.140e-2, 1.132e-3), "spcr": (1.156e-2, 1.222e-3),
                          "spls": (1.126e-2, 1.508e-3), "pls": (1.284e-2, 1.395e-3),
                          "pcr": (1.282e-2, 1.379e-3)},
    ("1b", 10, 200, 0.1): {"aspcr": (1.029e-2, 5.258e-4), "spcr": (1.026e-2, 5.526e-4),
                           "spls": (1.023e-2, 4.955e-4), "pls": (1.054e-2, 5.223e-4),
                           "pcr": (1.054e-2, 5.218e-4)},
    ("2", 1, 50, 0.1): {"aspcr": (1.241e-2, 1.738e-3), "spcr": (1.614e-2, 3.601e-3),
                        "spls": (1.978e1, 1.909), "pls": (1.979e1, 1.851),
                        "pcr": (2.038e1, 1.272)},
    ("2", 1, 200, 0.1): {"aspcr": (1.051e-2, 6.754e-4), "spcr": (1.102e-2, 8.276e-4),
                         "spls": (1.418e1, 4.475), "pls": (1.571e1, 2.938),
                         "pcr": (1.967e1, 8.374e-1)},
    ("2", 5, 50, 0.1): {"aspcr": (1.313e-2, 2.207e-3), "spcr": (1.548e-2, 3.708e-3),
                        "spls": (3.946e-1, 6.452e-1), "pls": (1.946, 1.337),
                        "pcr": (2.118e1, 1.426)},
    ("2", 5, 200, 0.1): {"aspcr": (1.077e-2, 7.140e-4), "spcr": (1.091e-2, 7.768e-4),
                         "spls": (1.667e-2, 1.274e-2), "pls": (8.268e-2, 4.039e-2),
                         "pcr": (1.978e1, 8.926e-1)},
    ("3a", 10, 50, 0.1): {"aspcr": (1.831e-2, 4.842e-3), "spcr": (2.191e-2, 6.641e-3),
                          "spls": (3.438e-1, 4.319e-1), "pls": (8.493e-1, 6.014e-1),
                          "pcr": (2.839e1, 5.090)},
    ("3a", 10, 200, 0.1): {"aspcr": (1.158e-2, 8.208e-4), "spcr": (1.166e-2, 8.225e-4),
                           "spls": (1.247e-2, 1.597e-3), "pls": (2.407e-2, 7.115e-3),
                           "pcr": (2.172e1, 1.463e-1)},
    ("3b", 10, 50, 0.1): {"aspcr": (1.721e-2, 5.311e-3), "spcr": (2.180e-2, 6.390e-3),
                          "spls": (4.852e-1, 6.966e-1), "pls": (1.295, 9.401e-1),
                          "pcr": (3.676e1, 2.676)},
    ("3b", 10, 200, 0.1): {"aspcr": (1.185e-2, 9.778e-4), "spcr": (1.167e-2, 8.533e-4),
                           "spls": (1.201e-2, 1.710e-3), "pls": (2.972e-2, 1.030e-2),
                           "pcr": (3.373e1, 1.605)},
    ("1a", 1, 50, 1.0): {"aspcr": (1.266, 8.134e-1), "spcr": (1.638, 1.361),
                         "spls": (1.475, 4.789e-1), "pls": (1.999, 4.331e-1),
                         "pcr": (5.663, 6.464e-1)},
    ("1a", 1, 200, 1.0): {"aspcr": (1.159, 8.267e-1), "spcr": (1.333, 1.169),
                          "spls": (1.031, 5.665e-2), "pls": (1.256, 1.225e-1),
                          "pcr": (5.598, 5.593e-1)},
    ("1a", 10, 50, 1.0): {"aspcr": (1.123, 1.163e-1), "spcr": (1.194, 1.142e-1),
                          "spls": (1.122, 1.357e-1), "pls": (1.283, 1.388e-1),
                          "pcr": (1.282, 1.377e-2)},
    ("1a", 10, 200, 1.0): {"aspcr": (1.023, 4.983e-2), "spcr": (1.034, 5.214e-2),
                           "spls": (1.021, 5.136e-2), "pls": (1.054, 5.208e-2),
                           "pcr": (1.054, 5.218e-2)},
    ("1b", 1, 50, 1.0): {"aspcr": (1.191, 1.260e-1), "spcr": (1.283, 1.383e-1),
                         "spls": (4.144e1, 1.871e1), "pls": (4.711e1, 1.137e1),
                         "pcr": (6.748e1, 4.646)},
    ("1b", 1, 200, 1.0): {"aspcr": (1.030, 5.226e-2), "spcr": (1.062, 5.493e-2),
                          "spls": (4.050e1, 1.565e1), "pls": (4.629e1, 5.246),
                          "pcr": (6.560e1, 3.078)},
    ("1b", 10, 50, 1.0): {"aspcr": (1.139, 1.450e-1), "spcr": (1.194, 1.569e-1),
                          "spls": (1.149, 1.626e-1), "pls": (1.315, 1.662e-1),
                          "pcr": (1.314, 1.658e-1)},
    ("1b", 10, 200, 1.0): {"aspcr": (1.023, 5.204e-2), "spcr": (1.035, 5.573e-2),
                           "spls": (1.023, 5.238e-2), "pls": (1.054, 5.221e-2),
                           "pcr": (1.054, 5.218e-2)},
    ("2", 1, 50, 1.0): {"aspcr": (1.284, 2.522e-1), "spcr": (1.583, 3.245e-1),
                        "spls": (2.079e1, 1.788), "pls": (2.084e1, 2.012),
                        "pcr": (2.140e1, 1.295)},
    ("2", 1, 200, 1.0): {"aspcr": (1.058, 5.566e-2), "spcr": (1.120, 6.347e-2),
                         "spls": (1.568e1, 4.475), "pls": (1.695e1, 2.981),
                         "pcr": (2.086e1, 8.458e-1)},
    ("2", 5, 50, 1.0): {"aspcr": (1.279, 2.434e-1), "spcr": (1.576, 3.221e-1),
                        "spls": (2.017, 1.048), "pls": (3.398, 1.442),
                        "pcr": (2.224e1, 1.476)},
    ("2", 5, 200, 1.0): {"aspcr": (1.060, 5.671e-2), "spcr": (1.119, 6.323e-2),
                         "spls": (1.075, 5.837e-2), "pls": (1.175, 7.427e-2),
                         "pcr": (2.097e1, 8.876e-1)},
    ("3a", 10, 50, 1.0): {"aspcr": (1.607, 4.250e-1), "spcr": (2.274, 6.044e-1),
                          "spls": (2.403, 8.958e-1), "pls": (2.724, 7.205e-1),
                          "pcr": (2.961e1, 5.070)},
    ("3a", 10, 200, 1.0): {"aspcr": (1.088, 7.104e-2), "spcr": (1.162, 7.882e-2),
                           "spls": (1.156, 2.621e-1), "pls": (1.187, 7.714e-2),
                           "pcr": (2.277e1, 1.539)},
    ("3b", 10, 50, 1.0): {"aspcr": (1.482, 3.094e-1), "spcr": (2.180, 5.990e-1),
                          "spls": (2.364, 9.068e-1), "pls": (3.081, 8.959e-1),
                          "pcr": (3.793e1, 2.835)},
    ("3b", 10, 200, 1.0): {"aspcr": (1.085, 6.686e-2), "spcr": (1.165, 7.719e-2),
                           "spls": (1.158, 4.742e-1), "pls": (1.192, 7.631e-2),
                           "pcr": (3.482e1, 1.698)},
}

# (case, k, n, sigma) -> method -> (tpr_mean, tpr_sd, tnr_mean, tnr_sd)
SUPPORT = {
    ("1a", 1, 50, 0.1): {"aspcr": (1.0, 0.0, 1.0, 0.0),
                         "spcr": (0.970, 0.171, 0.615, 0.285),
                         "spls": (0.930, 0.174, 0.982, 0.053)},
    ("1a", 1, 200, 0.1): {"aspcr": (1.0, 0.0, 1.0, 0.0),
                          "spcr": (0.990, 0.100, 0.631, 0.318),
                          "spls": (1.0, 0.0, 1.0, 0.0)},
    ("1a", 10, 50, 0.1): {"aspcr": (1.0, 0.0, 0.693, 0.368),
                          "spcr": (1.0, 0.0, 0.496, 0.287),
                          "spls": (1.0, 0.0, 0.930, 0.130)},
    ("1a", 10, 200, 0.1): {"aspcr": (1.0, 0.0, 0.562, 0.316),
                           "spcr": (1.0, 0.0, 0.528, 0.265),
                           "spls": (1.0, 0.0, 0.911, 0.160)},
    ("1b", 1, 50, 0.1): {"aspcr": (1.0, 0.0, 1.0, 0.0),
                         "spcr": (1.0, 0.0, 0.061, 0.158),
                         "spls": (0.870, 0.220, 0.926, 0.158)},
    ("1b", 1, 200, 0.1): {"aspcr": (1.0, 0.0, 1.0, 0.0),
                          "spcr": (1.0, 0.0, 0.070, 0.089),
                          "spls": (0.905, 0.197, 0.963, 0.087)},
    ("1b", 10, 50, 0.1): {"aspcr": (1.0, 0.0, 0.773, 0.349),
                          "spcr": (1.0, 0.0, 0.541, 0.324),
                          "spls": (1.0, 0.0, 0.912, 0.195)},
    ("1b", 10, 200, 0.1): {"aspcr": (1.0, 0.0, 0.698, 0.329),
                           "spcr": (1.0, 0.0, 0.688, 0.341),
                           "spls": (1.0, 0.0, 0.897, 0.156)},
    ("2", 1, 50, 0.1): {"aspcr": (1.0, 0.0, 1.0, 0.0),
                        "spcr": (1.0, 0.0, 0.267, 0.172),
                        "spls": (0.548, 0.285, 0.718, 0.312)},
    ("2", 1, 200, 0.1): {"aspcr": (1.0, 0.0, 1.0, 0.0),
                         "spcr": (1.0, 0.0, 0.336, 0.166),
                         "spls": (0.861, 0.174, 0.817, 0.213)},
    ("2", 5, 50, 0.1): {"aspcr": (1.0, 0.0, 0.859, 0.111),
                        "spcr": (1.0, 0.0, 0.304, 0.196),
                        "spls": (0.995, 0.028, 0.775, 0.135)},
    ("2", 5, 200, 0.1): {"aspcr": (1.0, 0.0, 0.905, 0.075),
                         "spcr": (1.0, 0.0, 0.387, 0.252),
                         "spls": (1.0, 0.0, 0.931, 0.073)},
    ("3a", 10, 50, 0.1): {"aspcr": (1.0, 0.0, 0.862, 0.102),
                          "spcr": (1.0, 0.0, 0.289, 0.168),
                          "spls": (1.0, 0.0, 0.503, 0.146)},
    ("3a", 10, 200, 0.1): {"aspcr": (1.0, 0.0, 0.903, 0.062),
                           "spcr": (1.0, 0.0, 0.316, 0.216),
                           "spls": (1.0, 0.0, 0.816, 0.079)},
    ("3b", 10, 50, 0.1): {"aspcr": (1.0, 0.0, 0.854, 0.092),
                          "spcr": (1.0, 0.0, 0.271, 0.155),
                          "spls": (0.998, 0.014, 0.516, 0.165)},
    ("3b", 10, 200, 0.1): {"aspcr": (1.0, 0.0, 0.916, 0.061),
                           "spcr": (1.0, 0.0, 0.294, 0.182),
                           "spls": (1.0, 0.0, 0.822, 0.083)},
    ("1a", 1, 50, 1.0): {"aspcr": (0.970, 0.171, 0.791, 0.247),
                         "spcr": (0.910, 0.287, 0.258, 0.277),
                         "spls": (0.910, 0.193, 0.953, 0.128)},
    ("1a", 1, 200, 1.0): {"aspcr": (0.970, 0.171, 0.870, 0.183),
                          "spcr": (0.940, 0.238, 0.250, 0.255),
                          "spls": (1.0, 0.0, 0.998, 0.012)},
    ("1a", 10, 50, 1.0): {"aspcr": (1.0, 0.0, 0.802, 0.334),
                          "spcr": (0.990, 0.100, 0.227, 0.168),
                          "spls": (1.0, 0.0, 0.931, 0.141)},
    ("1a", 10, 200, 1.0): {"aspcr": (1.0, 0.0, 0.737, 0.353),
                           "spcr": (1.0, 0.0, 0.318, 0.204),
                           "spls": (1.0, 0.0, 0.911, 0.164)},
    ("1b", 1, 50, 1.0): {"aspcr": (1.0, 0.0, 0.550, 0.219),
                         "spcr": (1.0, 0.0, 0.012, 0.057),
                         "spls": (0.870, 0.220, 0.915, 0.166)},
    ("1b", 1, 200, 1.0): {"aspcr": (1.0, 0.0, 0.728, 0.185),
                          "spcr": (1.0, 0.0, 0.007, 0.029),
                          "spls": (0.900, 0.201, 0.966, 0.083)},
    ("1b", 10, 50, 1.0): {"aspcr": (1.0, 0.0, 0.860, 0.278),
                          "spcr": (1.0, 0.0, 0.542, 0.305),
                          "spls": (1.0, 0.0, 0.895, 0.187)},
    ("1b", 10, 200, 1.0): {"aspcr": (1.0, 0.0, 0.831, 0.366),
                           "spcr": (1.0, 0.0, 0.525, 0.349),
                           "spls": (1.0, 0.0, 0.900, 0.174)},
    ("2", 1, 50, 1.0): {"aspcr": (1.0, 0.0, 0.865, 0.182),
                        "spcr": (1.0, 0.0, 0.172, 0.139),
                        "spls": (0.543, 0.313, 0.726, 0.317)},
    ("2", 1, 200, 1.0): {"aspcr": (1.0, 0.0, 0.930, 0.122),
                         "spcr": (1.0, 0.0, 0.202, 0.153),
                         "spls": (0.860, 0.215, 0.775, 0.253)},
    ("2", 5, 50, 1.0): {"aspcr": (1.0, 0.0, 0.872, 0.191),
                        "spcr": (1.0, 0.0, 0.176, 0.145),
                        "spls": (0.993, 0.032, 0.648, 0.200)},
    ("2", 5, 200, 1.0): {"aspcr": (1.0, 0.0, 0.892, 0.190),
                         "spcr": (1.0, 0.0, 0.205, 0.150),
                         "spls": (1.0, 0.0, 0.896, 0.111)},
    ("3a", 10, 50, 1.0): {"aspcr": (0.999, 0.008, 0.885, 0.148),
                          "spcr": (1.0, 0.0, 0.142, 0.101),
                          "spls": (0.998, 0.011, 0.423, 0.220)},
    ("3a", 10, 200, 1.0): {"aspcr": (1.0, 0.0, 0.901, 0.164),
                           "spcr": (1.0, 0.0, 0.165, 0.122),
                           "spls": (0.999, 0.008, 0.846, 0.163)},
    ("3b", 10, 50, 1.0): {"aspcr": (1.0, 0.0, 0.880, 0.130),
                          "spcr": (1.0, 0.0, 0.184, 0.128),
                          "spls": (0.999, 0.010, 0.430, 0.202)},
    ("3b", 10, 200, 1.0): {"aspcr": (1.0, 0.0, 0.875, 0.203),
                           "spcr": (1.0, 0.0, 0.223, 0.162),
                           "spls": (0.998, 0.020, 0.864, 0.148)},
}


def reference_for(case_id: str, k: int, n: int, sigma: float) -> dict:
    """Published values matching a benchmark setting, {} when none exist."""
    key = (case_id, k, n, float(sigma))
    out = {}
    if key in MSE:
        out["mse"] = {m: {"mean": v[0], "sd": v[1]} for m, v in MSE[key].items()}
    if key in SUPPORT:
        out["support"] = {
            m: {"tpr_mean": v[0], "tpr_sd": v[1], "tnr_mean": v[2], "tnr_sd": v[3]}
            for m, v in SUPPORT[key].items()
        }
    return out
