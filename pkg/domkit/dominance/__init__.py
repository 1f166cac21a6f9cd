from .certificate import (
    DominanceCertificate,
    VerificationResult,
    build_dominance_certificate,
    dissipativity_matrix,
    verify_dissipativity_certificate,
    verify_dominance_certificate,
)
from .kyp import KypReport, kyp_frequency_test, supply_form
from .passivity import admissible_passivity_degrees, passivity_degree_candidates
from .scans import RateScanRow, passivity_rate_scan, pointwise_gain_stability_scan, positive_window, scan_loop_gain
from .supply import (
    Supply,
    passive_supply,
    sector_supply,
    strictly_input_passive_supply,
    strictly_output_passive_supply,
    supply_admits_slope,
    transformed_sector_supply,
    zero_supply,
)

__all__ = [
    "DominanceCertificate",
    "VerificationResult",
    "build_dominance_certificate",
    "dissipativity_matrix",
    "verify_dissipativity_certificate",
    "verify_dominance_certificate",
    "KypReport",
    "kyp_frequency_test",
    "supply_form",
    "admissible_passivity_degrees",
    "passivity_degree_candidates",
    "RateScanRow",
    "passivity_rate_scan",
    "pointwise_gain_stability_scan",
    "positive_window",
    "scan_loop_gain",
    "Supply",
    "passive_supply",
    "sector_supply",
    "strictly_input_passive_supply",
    "strictly_output_passive_supply",
    "supply_admits_slope",
    "transformed_sector_supply",
    "zero_supply",
]
