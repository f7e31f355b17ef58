"""Phase and norm retrieval certificates for vector and subspace families.

Families travel as plain dicts with the same shape the CLI uses:

    {"ambient_dim": 2, "kind": "vectors", "backend": "exact",
     "entries": [["1", "0"], ["1", "1"]]}

Rational entries are "p/q" strings; verdicts come back as certificate dicts
with a machine-checkable witness.
"""

from ._core import (
    DataError,
    FramecertError,
    certify,
    falsify,
    fixture,
    fixture_names,
    generate_full_spark,
    generate_two_basis,
    is_full_spark,
    neighborhood_scan,
    reconstruct_norm_sq_three_hyperplanes,
    reconstruct_norm_three_hyperplanes,
    reconstruct_norm_tight,
    spark,
    verify_witness,
)

__all__ = [
    "DataError",
    "FramecertError",
    "certify",
    "falsify",
    "fixture",
    "fixture_names",
    "generate_full_spark",
    "generate_two_basis",
    "is_full_spark",
    "neighborhood_scan",
    "reconstruct_norm_sq_three_hyperplanes",
    "reconstruct_norm_three_hyperplanes",
    "reconstruct_norm_tight",
    "spark",
    "verify_witness",
]
