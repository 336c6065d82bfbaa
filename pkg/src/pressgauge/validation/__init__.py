from pressgauge.validation.sampling import StratificationSpec, sample_validation_batch
from pressgauge.validation.metrics import AgreementReport, agreement_report, cluster_prf, confusion_matrix
from pressgauge.validation.corrections import apply_corrections

__all__ = [
    "AgreementReport",
    "StratificationSpec",
    "agreement_report",
    "apply_corrections",
    "cluster_prf",
    "confusion_matrix",
    "sample_validation_batch",
]
