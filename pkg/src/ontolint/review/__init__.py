from .stats import (
    AgreementReport,
    DegenerateCategoriesError,
    NoVariationError,
    compute_agreement,
    fleiss_kappa,
    krippendorff_alpha,
    majority_verdict,
)
from .store import (
    InvalidCategoryError,
    InvalidScoreError,
    ReviewItem,
    ReviewStore,
    UnknownItemError,
    Verdict,
)

__all__ = [
    "AgreementReport",
    "DegenerateCategoriesError",
    "NoVariationError",
    "compute_agreement",
    "fleiss_kappa",
    "krippendorff_alpha",
    "majority_verdict",
    "InvalidCategoryError",
    "InvalidScoreError",
    "ReviewItem",
    "ReviewStore",
    "UnknownItemError",
    "Verdict",
]
