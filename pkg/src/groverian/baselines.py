"""Published evolution-of-entanglement tables used by ``evolve --paper-compare``.

Values are copied verbatim, one entry per half-step starting from the uniform
state, marked item all-ones.  Entropy is informational: several published
entries are inconsistent with a direct computation, so it carries no
tolerance and is never flagged.
"""

REFERENCE_TABLES = {
    3: {
        "groverian": (0.0, 0.38, 0.27, 0.29, 0.15),
        "entropy": (0.08, 0.84, 0.31, 0.54, 0.19),
        "tangle": (0.0, 0.25, 0.0625, 0.1406, 0.0224),
    },
    5: {
        "groverian": (0.0, 0.24, 0.23, 0.57, 0.34, 0.38, 0.22, 0.21, 0.03),
        "entropy": (0.14, 0.39, 0.31, 0.49, 0.47, 0.49, 0.25, 0.31, 0.0),
    },
}

TOLERANCES = {
    "groverian": {3: 0.005, 5: 0.01},
    "tangle": {3: 0.0005},
}

NOTES = {
    3: [
        "reference tangle after iteration 2 (0.0224) disagrees with direct evaluation of the d-term formula",
        "reference entropy column is informational; it disagrees with the partial-trace value at several rows",
    ],
    5: [
        "reference table labels its final row 'state after 2nd iteration'; it is the state after iteration 4",
        "reference entropy column is informational; it disagrees with the partial-trace value at several rows",
    ],
}
